"""Satisfiability and validity by an on-the-fly atom-graph search.

An atom assigns a truth value to every member of the working closure such
that Implies and Until are locally coherent (``a U b`` holds iff ``b`` holds,
or ``a`` and ``X(a U b)`` hold).  Atom ``B`` may follow atom ``A`` when every
``X g`` true (false) in ``A`` has ``g`` true (false) in ``B``.  A formula is
satisfiable iff an atom containing it reaches a strongly connected set of
atoms in which every asserted Until is fulfilled.

Before the search, Next is pushed through Implies and falsum, so the only
formulas under X are variables and Until.  Atoms then cannot make independent
claims about the future of a compound formula and its parts, which keeps the
graph small for formulas built from long X-towers.

Atoms are enumerated by a small DPLL procedure: constraints inherited from
the predecessor are propagated through the Implies/Until gates, and only the
unconstrained Var/Next members are branched on.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .evaluator import eval_lasso
from .formula import (
    FALSUM, Falsum, Formula, Implies, Next, Until, Var, closure, neg, next_power,
)
from .kripke import KripkeModel, LassoPath

__all__ = ["DEFAULT_ATOM_BUDGET", "Inconclusive", "Verdict", "push_next", "sat", "valid"]

log = logging.getLogger(__name__)

DEFAULT_ATOM_BUDGET = 1 << 20

_IMP, _UNTIL, _FALSE = 0, 1, 2


class Inconclusive(Exception):
    """The atom budget ran out before the search could decide."""

    def __init__(self, atoms: int, budget: int):
        self.atoms = atoms
        self.budget = budget
        super().__init__(f"atom budget exhausted ({atoms} atoms > budget {budget})")


@dataclass(frozen=True, eq=False)
class Verdict:
    satisfiable: bool
    witness: tuple[KripkeModel, LassoPath] | None = None
    atoms: int = 0


def push_next(f: Formula) -> Formula:
    """Equivalent formula in which X only applies to variables and Until formulas."""
    memo: dict[tuple[int, Formula], Formula] = {}

    def deps(n: int, g: Formula) -> list[tuple[int, Formula]]:
        if isinstance(g, Implies):
            return [(n, g.lhs), (n, g.rhs)]
        if isinstance(g, Next):
            return [(n + 1, g.body)]
        if isinstance(g, Until):
            return [(0, g.lhs), (0, g.rhs)]
        return []

    stack = [(0, f)]
    while stack:
        key = stack[-1]
        if key in memo:
            stack.pop()
            continue
        n, g = key
        missing = [d for d in deps(n, g) if d not in memo]
        if missing:
            stack.extend(missing)
            continue
        stack.pop()
        if isinstance(g, Var):
            memo[key] = next_power(n, g)
        elif isinstance(g, Falsum):
            memo[key] = FALSUM
        elif isinstance(g, Implies):
            memo[key] = Implies(memo[(n, g.lhs)], memo[(n, g.rhs)])
        elif isinstance(g, Next):
            memo[key] = memo[(n + 1, g.body)]
        else:
            memo[key] = next_power(n, Until(memo[(0, g.lhs)], memo[(0, g.rhs)]))
    return memo[(0, f)]


class _Conflict(Exception):
    pass


class _Tableau:
    def __init__(self, f: Formula, budget: int):
        self.formula = f
        self.budget = budget
        g = push_next(f)
        members = list(closure(g))
        present = set(members)
        for m in list(members):
            if isinstance(m, Until) and Next(m) not in present:
                members.append(Next(m))
                present.add(Next(m))
        self.members = members
        index = {m: i for i, m in enumerate(members)}
        self.root = index[g]
        self.elementary = [i for i, m in enumerate(members) if isinstance(m, (Var, Next))]
        self.next_pairs = [(i, index[m.body]) for i, m in enumerate(members) if isinstance(m, Next)]
        self.untils = [(i, index[m.rhs]) for i, m in enumerate(members) if isinstance(m, Until)]
        self.var_bits = [(m.index, i) for i, m in enumerate(members) if isinstance(m, Var)]

        self.gates: list[tuple] = []
        self.watch: list[list[int]] = [[] for _ in members]
        for i, m in enumerate(members):
            if isinstance(m, Falsum):
                gate = (_FALSE, i)
            elif isinstance(m, Implies):
                gate = (_IMP, i, index[m.lhs], index[m.rhs])
            elif isinstance(m, Until):
                gate = (_UNTIL, i, index[m.lhs], index[m.rhs], index[Next(m)])
            else:
                continue
            for v in set(gate[1:]):
                self.watch[v].append(len(self.gates))
            self.gates.append(gate)

        self.values = [-1] * len(members)
        self.trail: list[int] = []
        self.queue: deque[int] = deque()

        self.ids: dict[int, int] = {}
        self.masks: list[int] = []
        self.succ: list[list[int] | None] = []

    # -- atom enumeration -------------------------------------------------

    def _assign(self, var: int, value: int) -> None:
        current = self.values[var]
        if current == -1:
            self.values[var] = value
            self.trail.append(var)
            self.queue.extend(self.watch[var])
        elif current != value:
            raise _Conflict

    def _propagate(self) -> None:
        values, queue, assign = self.values, self.queue, self._assign
        while queue:
            gate = self.gates[queue.popleft()]
            kind = gate[0]
            if kind == _IMP:
                _, o, a, b = gate
                va, vb, vo = values[a], values[b], values[o]
                if va == 0 or vb == 1:
                    assign(o, 1)
                elif va == 1 and vb == 0:
                    assign(o, 0)
                vo = values[o]
                if vo == 0:
                    assign(a, 1)
                    assign(b, 0)
                elif vo == 1:
                    if values[a] == 1:
                        assign(b, 1)
                    if values[b] == 0:
                        assign(a, 0)
            elif kind == _UNTIL:
                _, o, a, b, x = gate
                va, vb, vx = values[a], values[b], values[x]
                if vb == 1 or (va == 1 and vx == 1):
                    assign(o, 1)
                elif vb == 0 and (va == 0 or vx == 0):
                    assign(o, 0)
                vo = values[o]
                if vo == 0:
                    assign(b, 0)
                    if values[a] == 1:
                        assign(x, 0)
                    if values[x] == 1:
                        assign(a, 0)
                elif vo == 1:
                    if values[b] == 0:
                        assign(a, 1)
                        assign(x, 1)
                    if values[a] == 0 or values[x] == 0:
                        assign(b, 1)
            else:
                assign(gate[1], 0)

    def _undo(self, mark: int) -> None:
        values, trail = self.values, self.trail
        while len(trail) > mark:
            values[trail.pop()] = -1
        self.queue.clear()

    def _atoms(self, constraints: list[tuple[int, int]]) -> Iterator[int]:
        """All atoms satisfying ``constraints`` (member index, value), in a fixed order."""
        self._undo(0)
        try:
            for gate in range(len(self.gates)):
                if self.gates[gate][0] == _FALSE:
                    self.queue.append(gate)
            for var, value in constraints:
                self._assign(var, value)
            self._propagate()
        except _Conflict:
            self._undo(0)
            return
        yield from self._branch(0)
        self._undo(0)

    def _branch(self, pos: int) -> Iterator[int]:
        elementary, values = self.elementary, self.values
        while pos < len(elementary) and values[elementary[pos]] != -1:
            pos += 1
        if pos == len(elementary):
            if -1 in values:
                raise AssertionError("atom left partially assigned")
            yield sum(1 << i for i, v in enumerate(values) if v)
            return
        var = elementary[pos]
        for value in (0, 1):
            mark = len(self.trail)
            try:
                self._assign(var, value)
                self._propagate()
            except _Conflict:
                self._undo(mark)
                continue
            yield from self._branch(pos + 1)
            self._undo(mark)

    # -- graph ------------------------------------------------------------

    def _node(self, mask: int) -> int:
        node = self.ids.get(mask)
        if node is None:
            node = len(self.masks)
            if node >= self.budget:
                raise Inconclusive(node + 1, self.budget)
            self.ids[mask] = node
            self.masks.append(mask)
            self.succ.append(None)
        return node

    def successors(self, node: int) -> list[int]:
        found = self.succ[node]
        if found is None:
            mask = self.masks[node]
            constraints = [(body, mask >> i & 1) for i, body in self.next_pairs]
            found = [self._node(m) for m in list(self._atoms(constraints))]
            self.succ[node] = found
        return found

    def initial(self) -> list[int]:
        return [self._node(m) for m in list(self._atoms([(self.root, 1)]))]

    # -- acceptance -------------------------------------------------------

    def _sccs(self, nodes: set[int]) -> list[list[int]]:
        """Tarjan on the already explored subgraph induced by ``nodes``."""
        index: dict[int, int] = {}
        low: dict[int, int] = {}
        stack: list[int] = []
        on_stack: set[int] = set()
        result = []
        for start in sorted(nodes):
            if start in index:
                continue
            index[start] = low[start] = len(index)
            stack.append(start)
            on_stack.add(start)
            work = [(start, iter(self.succ[start]))]
            while work:
                v, it = work[-1]
                for w in it:
                    if w not in nodes:
                        continue
                    if w not in index:
                        index[w] = low[w] = len(index)
                        stack.append(w)
                        on_stack.add(w)
                        work.append((w, iter(self.succ[w])))
                        break
                    if w in on_stack:
                        low[v] = min(low[v], index[w])
                else:
                    work.pop()
                    if work:
                        low[work[-1][0]] = min(low[work[-1][0]], low[v])
                    if low[v] == index[v]:
                        component = []
                        while True:
                            w = stack.pop()
                            on_stack.discard(w)
                            component.append(w)
                            if w == v:
                                break
                        result.append(component)
        return result

    def _cyclic(self, component: list[int] | set[int]) -> bool:
        if len(component) > 1:
            return True
        (v,) = component
        return v in self.succ[v]

    def _fulfilling(self, component: set[int]) -> set[int] | None:
        """A strongly connected subset of ``component`` fulfilling its Untils, if any."""
        if not self._cyclic(component):
            return None
        masks = self.masks
        union = 0
        for v in component:
            union |= masks[v]
        pending = [u for u, rhs in self.untils if union >> u & 1 and not union >> rhs & 1]
        if not pending:
            return component
        keep = {v for v in component if not any(masks[v] >> u & 1 for u in pending)}
        for sub in self._sccs(keep):
            found = self._fulfilling(set(sub))
            if found:
                return found
        return None

    def _path(self, source: int, targets: set[int], within: set[int],
              nonempty: bool = False) -> list[int]:
        """Shortest path from ``source`` to some member of ``targets`` inside ``within``.

        With ``nonempty`` the path has at least one edge, so ``source`` itself
        only counts when it is reached again.
        """
        parent: dict[int, int | None] = {}
        queue: deque[int] = deque()
        if nonempty:
            for w in self.succ[source]:
                if w in within and w not in parent:
                    parent[w] = None
                    queue.append(w)
        else:
            parent[source] = None
            queue.append(source)
        while queue:
            v = queue.popleft()
            if v in targets:
                path = [v]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                path.reverse()
                return [source] + path if nonempty else path
            for w in self.succ[v]:
                if w in within and w not in parent:
                    parent[w] = v
                    queue.append(w)
        raise AssertionError("no path inside a strongly connected set")

    def _lasso(self, stem: list[int], component: set[int], good: set[int]) -> tuple[list[int], list[int]]:
        # stem ends in the component; walk inside it to the fulfilling subset
        entry_path = self._path(stem[-1], good, component)
        prefix = stem[:-1] + entry_path[:-1]
        entry = entry_path[-1]
        union = 0
        for v in good:
            union |= self.masks[v]
        targets = []
        for u, rhs in self.untils:
            if union >> u & 1:
                t = min(v for v in good if self.masks[v] >> rhs & 1)
                if t not in targets:
                    targets.append(t)
        loop = [entry]
        current = entry
        for t in targets:
            if t != current:
                loop += self._path(current, {t}, good)[1:]
                current = t
        loop += self._path(current, {entry}, good, nonempty=True)[1:-1]
        return prefix, loop

    def witness(self, prefix: list[int], loop: list[int]) -> tuple[KripkeModel, LassoPath]:
        order: dict[int, int] = {}
        for v in prefix + loop:
            order.setdefault(v, len(order))
        seq = [order[v] for v in prefix + loop]
        edges = set(zip(seq, seq[1:]))
        edges.add((seq[-1], order[loop[0]]))
        valuation: dict[int, set[int]] = {}
        for atom, state in order.items():
            for var, bit in self.var_bits:
                if self.masks[atom] >> bit & 1:
                    valuation.setdefault(var, set()).add(state)
        model = KripkeModel(len(order), frozenset(edges),
                            {k: frozenset(v) for k, v in valuation.items()})
        return model, LassoPath(tuple(seq[:len(prefix)]), tuple(seq[len(prefix):]))

    def search(self) -> Verdict:
        index: dict[int, int] = {}
        low: dict[int, int] = {}
        stack: list[int] = []
        on_stack: set[int] = set()
        for start in self.initial():
            if start in index:
                continue
            index[start] = low[start] = len(index)
            stack.append(start)
            on_stack.add(start)
            work = [(start, iter(self.successors(start)))]
            while work:
                v, it = work[-1]
                for w in it:
                    if w not in index:
                        index[w] = low[w] = len(index)
                        stack.append(w)
                        on_stack.add(w)
                        work.append((w, iter(self.successors(w))))
                        break
                    if w in on_stack:
                        low[v] = min(low[v], index[w])
                else:
                    work.pop()
                    if work:
                        low[work[-1][0]] = min(low[work[-1][0]], low[v])
                    if low[v] != index[v]:
                        continue
                    component = set()
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        component.add(w)
                        if w == v:
                            break
                    good = self._fulfilling(component)
                    if good is not None:
                        stem = [u for u, _ in work] + [v]
                        prefix, loop = self._lasso(stem, component, good)
                        return Verdict(True, self.witness(prefix, loop), len(self.masks))
        return Verdict(False, None, len(self.masks))


def sat(f: Formula, atom_budget: int = DEFAULT_ATOM_BUDGET) -> Verdict:
    """Decide satisfiability of ``f``.

    Returns a :class:`Verdict` whose witness (a model and a lasso in it) has
    been re-checked with the evaluator.  Raises :class:`Inconclusive` when more
    than ``atom_budget`` atoms would be needed.
    """
    tableau = _Tableau(f, atom_budget)
    verdict = tableau.search()
    log.debug("sat: %d closure members, %d atoms, satisfiable=%s",
              len(tableau.members), verdict.atoms, verdict.satisfiable)
    if verdict.satisfiable:
        model, path = verdict.witness
        if not eval_lasso(model, path, f):
            raise AssertionError("tableau witness does not satisfy the formula")
    return verdict


def valid(f: Formula, atom_budget: int = DEFAULT_ATOM_BUDGET) -> bool:
    return not sat(neg(f), atom_budget).satisfiable
