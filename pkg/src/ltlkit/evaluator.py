"""Evaluation of formulas on lasso paths.

``eval_lasso`` labels every subformula bottom-up with a truth vector over the
stored lasso positions.  Vectors are packed into Python integers (bit ``i`` is
position ``i``) so that Next and the Boolean connective cost one big-integer
operation each; only Until walks positions one by one.

``oracle_eval`` is a deliberately different implementation used to
cross-check the first one.
"""
from __future__ import annotations

from dataclasses import dataclass

from .formula import (
    FALSUM, TOP, Falsum, Formula, Implies, Next, Until, Var, closure, count_vars,
)
from .kripke import KripkeModel, LassoPath, check_path

__all__ = ["TruthTable", "truth_table", "eval_lasso", "oracle_eval", "reduce_closed"]


@dataclass(frozen=True)
class TruthTable:
    """Truth of every closure member at every stored lasso position."""

    members: tuple[Formula, ...]
    rows: dict[Formula, int]
    width: int

    def row(self, f: Formula) -> list[bool]:
        bits = self.rows[f]
        return [bool(bits >> i & 1) for i in range(self.width)]

    def value(self, f: Formula, position: int) -> bool:
        return bool(self.rows[f] >> position & 1)


def _until_row(lhs: int, rhs: int, prefix_len: int, width: int) -> int:
    a = [bool(lhs >> i & 1) for i in range(width)]
    b = [bool(rhs >> i & 1) for i in range(width)]
    u = [False] * width
    # loop part: the first backward pass assumes the value at the loop start is
    # false; its result there is exact, and the second pass propagates it.
    seed = False
    for _ in range(2):
        nxt = seed
        for i in range(width - 1, prefix_len - 1, -1):
            u[i] = b[i] or (a[i] and nxt)
            nxt = u[i]
        seed = u[prefix_len]
    nxt = u[prefix_len]
    for i in range(prefix_len - 1, -1, -1):
        u[i] = b[i] or (a[i] and nxt)
        nxt = u[i]
    return sum(1 << i for i, v in enumerate(u) if v)


def truth_table(m: KripkeModel, path: LassoPath, f: Formula, *, validate: bool = True) -> TruthTable:
    if validate:
        check_path(m, path)
    states = path.states()
    width = len(states)
    prefix_len = len(path.prefix)
    full = (1 << width) - 1
    last = width - 1
    members = closure(f)
    rows: dict[Formula, int] = {}
    for g in members:
        if isinstance(g, Var):
            true_at = m.valuation.get(g.index, frozenset())
            rows[g] = sum(1 << i for i, s in enumerate(states) if s in true_at)
        elif isinstance(g, Falsum):
            rows[g] = 0
        elif isinstance(g, Implies):
            rows[g] = (~rows[g.lhs] | rows[g.rhs]) & full
        elif isinstance(g, Next):
            body = rows[g.body]
            rows[g] = (body >> 1) | ((body >> prefix_len & 1) << last)
        else:
            rows[g] = _until_row(rows[g.lhs], rows[g.rhs], prefix_len, width)
    return TruthTable(members, rows, width)


def eval_lasso(m: KripkeModel, path: LassoPath, f: Formula, *, validate: bool = True) -> bool:
    """Decide whether ``f`` holds on the infinite unrolling of ``path`` in ``m``."""
    return truth_table(m, path, f, validate=validate).value(f, 0)


def oracle_eval(m: KripkeModel, path: LassoPath, f: Formula) -> bool:
    """Reference semantics by recursive descent on (position, subformula).

    Until scans forward at most ``|prefix| + 2 * |loop|`` positions, which is
    enough because every truth value is periodic with the loop length once the
    prefix has been left behind.
    """
    check_path(m, path)
    bound = len(path.prefix) + 2 * len(path.loop)
    memo: dict[tuple[int, Formula], bool] = {}

    def holds(i: int, g: Formula) -> bool:
        i = path.canonical(i)
        key = (i, g)
        if key in memo:
            return memo[key]
        match g:
            case Var(index):
                result = m.holds(index, path.states()[i])
            case Falsum():
                result = False
            case Implies(lhs, rhs):
                result = not holds(i, lhs) or holds(i, rhs)
            case Next(body):
                result = holds(i + 1, body)
            case Until(lhs, rhs):
                result = False
                for j in range(i, i + bound):
                    if holds(j, rhs):
                        result = True
                        break
                    if not holds(j, lhs):
                        break
            case _:
                raise TypeError(f"not a formula: {g!r}")
        memo[key] = result
        return result

    return holds(0, f)


def reduce_closed(f: Formula) -> Formula:
    """Collapse a variable-free formula to ``TOP`` or ``FALSUM`` in one pass.

    Without variables every subformula has the same truth value at every
    position of every path, so ``X a`` is ``a`` and ``a U b`` is ``b``.
    """
    if count_vars(f):
        raise ValueError("reduce_closed requires a variable-free formula")
    value: dict[Formula, bool] = {}
    for g in closure(f):
        if isinstance(g, Falsum):
            value[g] = False
        elif isinstance(g, Implies):
            value[g] = not value[g.lhs] or value[g.rhs]
        elif isinstance(g, Next):
            value[g] = value[g.body]
        else:
            value[g] = value[g.rhs]
    return TOP if value[f] else FALSUM
