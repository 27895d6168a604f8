"""Finite serial Kripke models and lasso-shaped paths, plus their text format.

Model file format (one directive per line, ``#`` comments)::

    states 3
    edge 0 1
    edge 1 2
    edge 2 0
    label p1 0 2
    path 0 : 1 2
    name 0 start
"""
from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

__all__ = [
    "KripkeModel", "LassoPath", "ModelError", "ModelSyntaxError",
    "validate_model", "validate_path", "check_model", "check_path", "path_at",
    "read_model", "format_model",
]


class ModelError(ValueError):
    """A model or path violates the structural requirements."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ModelSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


@dataclass(frozen=True, eq=False)
class KripkeModel:
    state_count: int
    edges: frozenset[tuple[int, int]]
    valuation: Mapping[int, frozenset[int]] = field(default_factory=dict)
    labels: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset((int(a), int(b)) for a, b in self.edges))
        object.__setattr__(self, "valuation",
                           {int(k): frozenset(v) for k, v in sorted(self.valuation.items())})
        object.__setattr__(self, "labels", dict(sorted(self.labels.items())))

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        succ: list[list[int]] = [[] for _ in range(max(self.state_count, 0))]
        for a, b in sorted(self.edges):
            if 0 <= a < self.state_count:
                succ[a].append(b)
        return tuple(tuple(s) for s in succ)

    def holds(self, var: int, state: int) -> bool:
        return state in self.valuation.get(var, ())

    def label(self, state: int) -> str:
        return self.labels.get(state, str(state))


@dataclass(frozen=True)
class LassoPath:
    """``prefix`` followed by ``loop`` repeated forever."""

    prefix: tuple[int, ...]
    loop: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "loop", tuple(self.loop))
        if not self.loop:
            raise ValueError("the loop of a lasso must be nonempty")

    def __len__(self) -> int:
        return len(self.prefix) + len(self.loop)

    def states(self) -> tuple[int, ...]:
        return self.prefix + self.loop

    def successor_position(self, i: int) -> int:
        """Position following ``i`` inside the stored window (wraps to the loop start)."""
        return i + 1 if i + 1 < len(self) else len(self.prefix)

    def canonical(self, i: int) -> int:
        if i < len(self):
            return i
        return len(self.prefix) + (i - len(self.prefix)) % len(self.loop)

    def advance(self, steps: int = 1) -> "LassoPath":
        """The suffix path starting ``steps`` positions later."""
        path = self
        for _ in range(steps):
            if path.prefix:
                path = LassoPath(path.prefix[1:], path.loop)
            else:
                path = LassoPath((), path.loop[1:] + path.loop[:1])
        return path


def path_at(path: LassoPath, i: int) -> int:
    if i < 0:
        raise IndexError("negative path position")
    if i < len(path.prefix):
        return path.prefix[i]
    return path.loop[(i - len(path.prefix)) % len(path.loop)]


def validate_model(m: KripkeModel) -> list[str]:
    """Return every violation of the model invariants; an empty list means ok."""
    problems = []
    if m.state_count < 1:
        return [f"model must have at least one state, got {m.state_count}"]
    for a, b in sorted(m.edges):
        if not (0 <= a < m.state_count and 0 <= b < m.state_count):
            problems.append(f"edge ({a},{b}) references a missing state")
    for s, succ in enumerate(m.successors):
        if not any(0 <= t < m.state_count for t in succ):
            problems.append(f"state {s} is not serial (no outgoing edge)")
    for var, states in m.valuation.items():
        if var < 1:
            problems.append(f"valuation uses invalid variable index {var}")
        for s in sorted(states):
            if not 0 <= s < m.state_count:
                problems.append(f"valuation of p{var} references missing state {s}")
    return problems


def validate_path(m: KripkeModel, path: LassoPath) -> list[str]:
    problems = []
    seq = path.states()
    for pos, s in enumerate(seq):
        if not 0 <= s < m.state_count:
            problems.append(f"position {pos}: state {s} does not exist")
    if problems:
        return problems
    for pos in range(len(seq)):
        nxt = path.successor_position(pos)
        a, b = seq[pos], seq[nxt]
        if (a, b) not in m.edges:
            if nxt == len(path.prefix) and pos == len(seq) - 1:
                where = "wrap"
            elif pos == len(path.prefix) - 1:
                where = "seam"
            else:
                where = f"position {pos}"
            problems.append(f"{where}: ({a},{b}) is not an edge")
    return problems


def check_model(m: KripkeModel) -> None:
    problems = validate_model(m)
    if problems:
        raise ModelError(problems)


def check_path(m: KripkeModel, path: LassoPath) -> None:
    problems = validate_model(m) + validate_path(m, path)
    if problems:
        raise ModelError(problems)


def _ints(words: Iterable[str], lineno: int) -> list[int]:
    try:
        return [int(w) for w in words]
    except ValueError:
        raise ModelSyntaxError("expected integers", lineno) from None


def read_model(text: str) -> tuple[KripkeModel, LassoPath | None]:
    """Parse the model file format; returns the model and the optional ``path``."""
    state_count = None
    edges: set[tuple[int, int]] = set()
    valuation: dict[int, set[int]] = {}
    labels: dict[int, str] = {}
    path = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        head, rest = words[0], words[1:]
        if state_count is None and head != "states":
            raise ModelSyntaxError("the first directive must be 'states <n>'", lineno)
        if head == "states":
            if state_count is not None:
                raise ModelSyntaxError("duplicate 'states' directive", lineno)
            if len(rest) != 1:
                raise ModelSyntaxError("usage: states <n>", lineno)
            (state_count,) = _ints(rest, lineno)
        elif head == "edge":
            if len(rest) != 2:
                raise ModelSyntaxError("usage: edge <i> <j>", lineno)
            a, b = _ints(rest, lineno)
            edges.add((a, b))
        elif head == "label":
            if not rest or not rest[0].startswith("p"):
                raise ModelSyntaxError("usage: label p<k> <states...>", lineno)
            digits = rest[0][1:]
            var = int(digits) if digits.isdigit() else (1 if digits == "" else None)
            if var is None or var < 1:
                raise ModelSyntaxError(f"bad variable name {rest[0]!r}", lineno)
            valuation.setdefault(var, set()).update(_ints(rest[1:], lineno))
        elif head == "path":
            if path is not None:
                raise ModelSyntaxError("duplicate 'path' directive", lineno)
            if rest.count(":") != 1:
                raise ModelSyntaxError("usage: path <prefix...> : <loop...>", lineno)
            cut = rest.index(":")
            loop = _ints(rest[cut + 1:], lineno)
            if not loop:
                raise ModelSyntaxError("path loop must be nonempty", lineno)
            path = LassoPath(tuple(_ints(rest[:cut], lineno)), tuple(loop))
        elif head == "name":
            if len(rest) < 2:
                raise ModelSyntaxError("usage: name <i> <string>", lineno)
            (state,) = _ints(rest[:1], lineno)
            labels[state] = " ".join(shlex.split(line)[2:])
        else:
            raise ModelSyntaxError(f"unknown directive {head!r}", lineno)
    if state_count is None:
        raise ModelSyntaxError("empty model file", 1)
    model = KripkeModel(state_count, frozenset(edges),
                        {k: frozenset(v) for k, v in valuation.items()}, labels)
    return model, path


def format_model(m: KripkeModel, path: LassoPath | None = None) -> str:
    lines = [f"states {m.state_count}"]
    lines += [f"edge {a} {b}" for a, b in sorted(m.edges)]
    for var, states in m.valuation.items():
        lines.append(" ".join(["label", f"p{var}", *map(str, sorted(states))]))
    if path is not None:
        lines.append(" ".join(["path", *map(str, path.prefix), ":", *map(str, path.loop)]))
    for state, text in m.labels.items():
        lines.append(f"name {state} {shlex.quote(text)}")
    return "\n".join(lines) + "\n"
