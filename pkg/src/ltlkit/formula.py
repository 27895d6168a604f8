"""LTL formula trees.

Only five node kinds exist: ``Var``, ``Falsum``, ``Implies``, ``Next`` and
``Until``.  Every other connective is a builder that expands into these.

Nodes are hash-consed: constructing a node that is structurally equal to a
live node returns the existing object.  Equality is therefore identity, hashing
is O(1), and large formulas are stored as DAGs with maximal sharing even though
they denote trees.
"""
from __future__ import annotations

import threading
import weakref
from typing import Iterable, Iterator

__all__ = [
    "Formula", "Var", "Falsum", "Implies", "Next", "Until",
    "FALSUM", "TOP", "P",
    "neg", "and_", "or_", "iff", "conj", "disj", "eventually", "always",
    "next_power", "is_top", "children", "closure", "count_vars", "variables",
    "tree_size", "dag_size",
]

_table: "weakref.WeakValueDictionary[tuple, Formula]" = weakref.WeakValueDictionary()
_lock = threading.Lock()


def _intern(cls, key: tuple, fields: dict) -> "Formula":
    with _lock:
        node = _table.get(key)
        if node is None:
            node = object.__new__(cls)
            for name, value in fields.items():
                object.__setattr__(node, name, value)
            _table[key] = node
        return node


class Formula:
    __slots__ = ("__weakref__",)

    def __setattr__(self, name, value):
        raise AttributeError("formulas are immutable")

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __reduce__(self):
        return (type(self), self._args())

    def _args(self) -> tuple:
        raise NotImplementedError

    def __repr__(self) -> str:
        # bounded output; deep towers would otherwise produce megabytes
        from .syntax import format_formula
        text = format_formula(self)
        if len(text) > 200:
            text = text[:197] + "..."
        return f"<{type(self).__name__} {text}>"

    def __str__(self) -> str:
        from .syntax import format_formula
        return format_formula(self)


class Var(Formula):
    __slots__ = ("index",)
    __match_args__ = ("index",)

    def __new__(cls, index: int):
        if not isinstance(index, int) or isinstance(index, bool) or index < 1:
            raise ValueError(f"variable index must be a positive integer, got {index!r}")
        return _intern(cls, (cls, index), {"index": index})

    def _args(self):
        return (self.index,)


class Falsum(Formula):
    __slots__ = ()
    __match_args__ = ()

    def __new__(cls):
        return _intern(cls, (cls,), {})

    def _args(self):
        return ()


class Implies(Formula):
    __slots__ = ("lhs", "rhs")
    __match_args__ = ("lhs", "rhs")

    def __new__(cls, lhs: Formula, rhs: Formula):
        _check(lhs)
        _check(rhs)
        return _intern(cls, (cls, id(lhs), id(rhs)), {"lhs": lhs, "rhs": rhs})

    def _args(self):
        return (self.lhs, self.rhs)


class Next(Formula):
    __slots__ = ("body",)
    __match_args__ = ("body",)

    def __new__(cls, body: Formula):
        _check(body)
        return _intern(cls, (cls, id(body)), {"body": body})

    def _args(self):
        return (self.body,)


class Until(Formula):
    __slots__ = ("lhs", "rhs")
    __match_args__ = ("lhs", "rhs")

    def __new__(cls, lhs: Formula, rhs: Formula):
        _check(lhs)
        _check(rhs)
        return _intern(cls, (cls, id(lhs), id(rhs)), {"lhs": lhs, "rhs": rhs})

    def _args(self):
        return (self.lhs, self.rhs)


def _check(f) -> None:
    if not isinstance(f, Formula):
        raise TypeError(f"expected a Formula, got {type(f).__name__}")


FALSUM = Falsum()
TOP = Implies(FALSUM, FALSUM)
P = Var(1)


def is_top(f: Formula) -> bool:
    return f is TOP


def neg(f: Formula) -> Formula:
    return Implies(f, FALSUM)


def and_(a: Formula, b: Formula) -> Formula:
    return neg(Implies(a, neg(b)))


def or_(a: Formula, b: Formula) -> Formula:
    return Implies(neg(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    return and_(Implies(a, b), Implies(b, a))


def eventually(f: Formula) -> Formula:
    return Until(TOP, f)


def always(f: Formula) -> Formula:
    return neg(eventually(neg(f)))


def _balanced(items: list[Formula], op) -> Formula:
    # balanced folding keeps the tree depth logarithmic for long conjunctions
    while len(items) > 1:
        paired = [op(items[i], items[i + 1]) for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            paired.append(items[-1])
        items = paired
    return items[0]


def conj(items: Iterable[Formula]) -> Formula:
    """Conjunction of ``items``; the empty conjunction is ``TOP``."""
    items = list(items)
    return _balanced(items, and_) if items else TOP


def disj(items: Iterable[Formula]) -> Formula:
    """Disjunction of ``items``; the empty disjunction is ``FALSUM``."""
    items = list(items)
    return _balanced(items, or_) if items else FALSUM


def next_power(n: int, f: Formula) -> Formula:
    """Wrap ``f`` in ``n`` Next operators (``n = 0`` returns ``f``)."""
    if n < 0:
        raise ValueError("exponent must be non-negative")
    for _ in range(n):
        f = Next(f)
    return f


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (Implies, Until)):
        return (f.lhs, f.rhs)
    if isinstance(f, Next):
        return (f.body,)
    return ()


def _postorder(f: Formula) -> Iterator[Formula]:
    seen = set()
    stack = [(f, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            yield node
            continue
        if node in seen:
            continue
        seen.add(node)
        stack.append((node, True))
        for child in reversed(children(node)):
            if child not in seen:
                stack.append((child, False))


def closure(f: Formula) -> tuple[Formula, ...]:
    """All distinct subformulas of ``f``, children before parents.

    Order is the post-order of first occurrence (left operand first), so the
    result is deterministic and ``f`` itself is the last member.
    """
    return tuple(_postorder(f))


def variables(f: Formula) -> list[int]:
    return sorted({g.index for g in _postorder(f) if isinstance(g, Var)})


def count_vars(f: Formula) -> int:
    return len(variables(f))


def tree_size(f: Formula) -> int:
    """Number of nodes of ``f`` viewed as a tree (shared subterms counted each time)."""
    size: dict[Formula, int] = {}
    for g in _postorder(f):
        size[g] = 1 + sum(size[c] for c in children(g))
    return size[f]


def dag_size(f: Formula) -> int:
    """Number of distinct subformulas, i.e. nodes of the shared representation."""
    return sum(1 for _ in _postorder(f))
