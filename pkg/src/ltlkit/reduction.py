"""Compile a space-bounded machine run into a one-variable model, path and formula.

One configuration of the machine is one *cycle* of ``L`` consecutive path
positions::

    b0 b1 b2 | s0 u(m,1) .. u(m,k) s1 | ... | s0 u(m',1) .. u(m',k) s1 |
    marker     cell 1                           cell S

``p`` holds on the three marker states and, inside cell block ``j``, only on
``u(m, m)``: a path that takes chain ``m`` through block ``j`` says that cell
``j`` holds content number ``m``.  Contents are the ``k = n2 * (n1 + 1)``
symbols and (state, symbol) pairs.

All formulas are anchored at a cycle start, so "cell ``j`` holds content
``i``" is a conjunction of ``X^(off(j) + i') p`` literals.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .formula import (
    P, Formula, Implies, always, and_, conj, count_vars, eventually, neg, next_power,
)
from .kripke import KripkeModel, LassoPath, check_path
from .turing import (
    Configuration, RunResult, TMError, TMSpec, check_tm, initial_configuration, simulate,
    space_bound,
)

__all__ = [
    "Layout", "ReductionOutput", "layout_for", "symbol_index", "contents",
    "successor_content", "window_count", "windows", "build_model", "sym_formula", "begin_formula",
    "build_psi_start", "build_psi_positive", "build_psi_delta", "run_lasso", "build_psi",
    "psi_tree_size", "format_layout", "read_layout",
]

@dataclass(frozen=True)
class Layout:
    n1: int
    n2: int
    S: int

    def __post_init__(self):
        if min(self.n1, self.n2, self.S) < 1:
            raise ValueError("n1, n2 and S must be positive")

    @property
    def k(self) -> int:
        return self.n2 * (self.n1 + 1)

    @property
    def cell_block(self) -> int:
        return self.k + 2

    def off(self, j: int) -> int:
        if not 1 <= j <= self.S:
            raise ValueError(f"cell {j} outside 1..{self.S}")
        return 3 + (j - 1) * self.cell_block

    @property
    def L(self) -> int:
        return 3 + self.S * self.cell_block

    @property
    def state_count(self) -> int:
        return 3 + self.S * (2 + self.k ** 2)

    # state numbering of the model
    def s0(self, j: int) -> int:
        return 3 + (j - 1) * (2 + self.k ** 2)

    def chain(self, j: int, m: int, c: int) -> int:
        return self.s0(j) + 1 + (m - 1) * self.k + (c - 1)

    def s1(self, j: int) -> int:
        return self.s0(j) + 1 + self.k ** 2


def layout_for(t: TMSpec, n: int) -> Layout:
    return Layout(t.n1, t.n2, space_bound(t, n))


def symbol_index(t: TMSpec, content) -> int:
    """Number a cell content: symbols first (1..n2), then pairs ordered by state."""
    if isinstance(content, tuple):
        q, a = content
        if q not in t.states or a not in t.alphabet:
            raise ValueError(f"unknown cell content {content!r}")
        return t.n2 + t.states.index(q) * t.n2 + t.alphabet.index(a) + 1
    if content not in t.alphabet:
        raise ValueError(f"unknown symbol {content!r}")
    return t.alphabet.index(content) + 1


def contents(t: TMSpec) -> list:
    """All cell contents in numbering order."""
    return list(t.alphabet) + [(q, a) for q in t.states for a in t.alphabet]


def successor_content(t: TMSpec, left, center, right):
    """Content of a cell one step later, given its neighbours (``None`` past the tape end).

    A head leaving the tape simply disappears here; the simulator reports that
    case as an error instead.
    """
    if isinstance(center, tuple):
        q2, a2, move = t.rules[center]
        return (q2, a2) if move == "S" else a2
    if isinstance(left, tuple):
        q2, _, move = t.rules[left]
        if move == "R":
            return (q2, center)
    if isinstance(right, tuple):
        q2, _, move = t.rules[right]
        if move == "L":
            return (q2, center)
    return center


def window_count(t: TMSpec, layout: Layout, j: int) -> int:
    cells = sum(1 for c in (j - 1, j, j + 1) if 1 <= c <= layout.S)
    return t.n2 ** cells * (1 + cells * t.n1)


def windows(t: TMSpec, layout: Layout, j: int):
    """Realizable neighbourhoods of cell ``j``: at most one scanned cell.

    Yields ``(cells, contents)`` where ``cells`` lists the cell numbers
    (``j-1``, ``j``, ``j+1`` clipped to the tape) and ``contents`` the matching
    contents.
    """
    cells = [c for c in (j - 1, j, j + 1) if 1 <= c <= layout.S]
    for combo in itertools.product(contents(t), repeat=len(cells)):
        if sum(isinstance(c, tuple) for c in combo) <= 1:
            yield tuple(cells), combo


def build_model(t: TMSpec, n: int) -> tuple[KripkeModel, Layout]:
    check_tm(t)
    layout = layout_for(t, n)
    k, S = layout.k, layout.S
    edges = [(0, 1), (1, 2), (2, layout.s0(1))]
    p_true = [0, 1, 2]
    labels = {0: "B.0", 1: "B.1", 2: "B.2"}
    for j in range(1, S + 1):
        s0, s1 = layout.s0(j), layout.s1(j)
        labels[s0] = f"C[{j}].s0"
        labels[s1] = f"C[{j}].s1"
        for m in range(1, k + 1):
            edges.append((s0, layout.chain(j, m, 1)))
            for c in range(1, k + 1):
                state = layout.chain(j, m, c)
                labels[state] = f"C[{j}].N[{m}].{c}"
                edges.append((state, layout.chain(j, m, c + 1) if c < k else s1))
            p_true.append(layout.chain(j, m, m))
        edges.append((s1, layout.s0(j + 1) if j < S else 0))
    model = KripkeModel(layout.state_count, frozenset(edges), {1: frozenset(p_true)}, labels)
    return model, layout


def begin_formula() -> Formula:
    """Three consecutive p-states: only the marker block has them."""
    return and_(P, and_(next_power(1, P), next_power(2, P)))


@lru_cache(maxsize=4096)
def sym_formula(layout: Layout, j: int, i: int) -> Formula:
    """From a cycle start: cell ``j`` holds content number ``i``."""
    if not 1 <= i <= layout.k:
        raise ValueError(f"content index {i} outside 1..{layout.k}")
    base = layout.off(j)
    literals = [next_power(base + i, P)]
    literals += [neg(next_power(base + other, P)) for other in range(1, layout.k + 1) if other != i]
    return conj(literals)


def _input_symbols(t: TMSpec, x: Sequence[str]) -> None:
    for a in x:
        if a not in t.alphabet or a == t.left_marker:
            raise TMError(f"input symbol {a!r} is not in the input alphabet")


def build_psi_start(t: TMSpec, x: Sequence[str], layout: Layout) -> Formula:
    _input_symbols(t, x)
    c0 = initial_configuration(t, x)
    if len(c0.tape) != layout.S:
        raise ValueError("layout does not match the input length")
    return conj([begin_formula()] + [sym_formula(layout, j, symbol_index(t, c0.cell(j)))
                                     for j in range(1, layout.S + 1)])


def build_psi_positive(t: TMSpec, layout: Layout) -> Formula:
    parts = [begin_formula(), sym_formula(layout, 1, symbol_index(t, (t.accept, t.blank)))]
    parts += [sym_formula(layout, j, symbol_index(t, t.blank)) for j in range(2, layout.S + 1)]
    return conj(parts)


def _delta_clauses(t: TMSpec, layout: Layout):
    for j in range(1, layout.S + 1):
        for cells, combo in windows(t, layout, j):
            by_cell = dict(zip(cells, combo))
            new = successor_content(t, by_cell.get(j - 1), by_cell[j], by_cell.get(j + 1))
            yield j, cells, combo, new


def build_psi_delta(t: TMSpec, layout: Layout) -> Formula:
    """At every cycle start, the next cycle encodes the successor configuration."""
    L = layout.L
    begin = begin_formula()
    clauses = [next_power(L, begin)]
    shifted: dict[tuple[int, int], Formula] = {}
    for j, cells, combo, new in _delta_clauses(t, layout):
        guard = conj(sym_formula(layout, c, symbol_index(t, content))
                     for c, content in zip(cells, combo))
        key = (j, symbol_index(t, new))
        if key not in shifted:
            shifted[key] = next_power(L, sym_formula(layout, *key))
        clauses.append(Implies(guard, shifted[key]))
    return Implies(begin, conj(clauses))


def _walk(t: TMSpec, layout: Layout, c: Configuration) -> list[int]:
    walk = [0, 1, 2]
    for j in range(1, layout.S + 1):
        m = symbol_index(t, c.cell(j))
        walk.append(layout.s0(j))
        walk += [layout.chain(j, m, pos) for pos in range(1, layout.k + 1)]
        walk.append(layout.s1(j))
    return walk


def run_lasso(t: TMSpec, x: Sequence[str], run: RunResult | None = None,
              layout: Layout | None = None) -> LassoPath:
    """The path through the model that spells out the machine's run on ``x``."""
    run = run or simulate(t, x)
    layout = layout or layout_for(t, len(x))
    prefix = [s for c in run.prefix for s in _walk(t, layout, c)]
    loop = [s for c in run.cycle for s in _walk(t, layout, c)]
    return LassoPath(tuple(prefix), tuple(loop))


@dataclass(frozen=True, eq=False)
class ReductionOutput:
    model: KripkeModel
    run: LassoPath
    psi: Formula
    psi_start: Formula
    psi_delta: Formula
    psi_positive: Formula
    layout: Layout
    result: RunResult


def build_psi(t: TMSpec, x: Sequence[str]) -> ReductionOutput:
    """Build model, run path and ``(start & G delta) -> F positive`` for ``t`` on ``x``."""
    check_tm(t)
    _input_symbols(t, x)
    model, layout = build_model(t, len(x))
    result = simulate(t, x)
    path = run_lasso(t, x, result, layout)
    check_path(model, path)
    start = build_psi_start(t, x, layout)
    delta = build_psi_delta(t, layout)
    positive = build_psi_positive(t, layout)
    psi = Implies(and_(start, always(delta)), eventually(positive))
    if count_vars(psi) != 1:
        raise AssertionError("reduction formula must use exactly one variable")
    return ReductionOutput(model, path, psi, start, delta, positive, layout, result)


def psi_tree_size(t: TMSpec, layout: Layout) -> int:
    """Tree node count of the reduction formula, computed from the layout alone.

    Sizes of the builders: a literal tower ``X^e p`` has ``e + 1`` nodes,
    negation adds 2, a binary conjunction adds 5 on top of its operands, ``G``
    adds 8 and ``F`` adds 4.  A cell formula for cell ``j`` does not depend on
    the content it names.
    """
    k, S, L = layout.k, layout.S, layout.L

    def cell(j: int) -> int:
        towers = k * layout.off(j) + k * (k + 1) // 2 + k
        return towers + 2 * (k - 1) + 5 * (k - 1)

    begin = 16
    start = begin + sum(cell(j) for j in range(1, S + 1)) + 5 * S
    positive = start
    clauses = [L + begin]
    for j in range(1, S + 1):
        cells = [c for c in (j - 1, j, j + 1) if 1 <= c <= S]
        count = window_count(t, layout, j)
        guard = sum(cell(c) for c in cells) + 5 * (len(cells) - 1)
        clauses += [guard + L + cell(j) + 1] * count
    delta = 1 + begin + sum(clauses) + 5 * (len(clauses) - 1)
    return 1 + (start + (delta + 8) + 5) + (positive + 4)


def format_layout(layout: Layout) -> str:
    lines = [f"n1 {layout.n1}", f"n2 {layout.n2}", f"k {layout.k}", f"S {layout.S}",
             f"L {layout.L}"]
    lines += [f"off {j} {layout.off(j)}" for j in range(1, layout.S + 1)]
    return "\n".join(lines) + "\n"


def read_layout(text: str) -> Layout:
    values: dict[str, int] = {}
    offsets: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        try:
            if line[0] == "off" and len(line) == 3:
                offsets[int(line[1])] = int(line[2])
            elif len(line) == 2 and line[0] in ("n1", "n2", "k", "S", "L"):
                values[line[0]] = int(line[1])
            else:
                raise ValueError
        except ValueError:
            raise ValueError(f"line {lineno}: bad layout entry {raw!r}") from None
    layout = Layout(values["n1"], values["n2"], values["S"])
    if values.get("k", layout.k) != layout.k or values.get("L", layout.L) != layout.L:
        raise ValueError("layout file is inconsistent: k or L disagrees with n1, n2, S")
    if any(layout.off(j) != o for j, o in offsets.items()):
        raise ValueError("layout file is inconsistent: bad offsets")
    return layout
