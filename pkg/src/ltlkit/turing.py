"""Deterministic space-bounded Turing machines and a direct simulator.

Tape cells are numbered from 1.  A run on input ``x`` of length ``n`` starts in
the start state with the head on cell 1, which holds the left marker; ``x``
occupies cells 2..n+1 and the remaining cells up to the space bound are blank.
The machine answers yes when it reaches the accepting configuration: accept
state, head on cell 1, every cell blank.

TM file format (``#`` comments)::

    states q0 q1
    alphabet B <
    start q0
    accept q1
    blank B
    leftmarker <
    space 2
    rule q0 < q1 B S
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

__all__ = [
    "TMSpec", "Configuration", "RunResult", "TMError", "TMSyntaxError",
    "validate_tm", "check_tm", "space_bound", "initial_configuration", "step",
    "simulate", "is_accepting", "read_tm", "format_tm", "split_word",
]

MOVES = ("L", "R", "S")


class TMError(ValueError):
    """Invalid machine, invalid input, or a run that leaves its tape."""


class TMSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


@dataclass(frozen=True)
class TMSpec:
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    start: str
    accept: str
    blank: str
    left_marker: str
    rules: Mapping[tuple[str, str], tuple[str, str, str]]
    space: tuple[int, ...] = (1, 1)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "space", tuple(self.space))
        object.__setattr__(self, "rules", dict(self.rules))

    @property
    def n1(self) -> int:
        return len(self.states)

    @property
    def n2(self) -> int:
        return len(self.alphabet)


@dataclass(frozen=True)
class Configuration:
    state: str
    head: int
    tape: tuple[str, ...]

    def cell(self, j: int) -> str | tuple[str, str]:
        """Content of cell ``j``: the symbol, or ``(state, symbol)`` under the head."""
        symbol = self.tape[j - 1]
        return (self.state, symbol) if j == self.head else symbol


@dataclass(frozen=True)
class RunResult:
    answer: str
    trace: tuple[Configuration, ...]
    cycle_start: int

    @property
    def prefix(self) -> tuple[Configuration, ...]:
        return self.trace[:self.cycle_start]

    @property
    def cycle(self) -> tuple[Configuration, ...]:
        return self.trace[self.cycle_start:]


def validate_tm(t: TMSpec) -> list[str]:
    problems = []
    states, alphabet = set(t.states), set(t.alphabet)
    if len(states) != len(t.states):
        problems.append("duplicate state names")
    if len(alphabet) != len(t.alphabet):
        problems.append("duplicate alphabet symbols")
    for name, value, pool in (("start", t.start, states), ("accept", t.accept, states),
                              ("blank", t.blank, alphabet), ("leftmarker", t.left_marker, alphabet)):
        if value not in pool:
            problems.append(f"{name} {value!r} is not declared")
    if t.start == t.accept:
        problems.append("start and accept states must differ")
    if t.blank == t.left_marker:
        problems.append("blank and left marker must differ")
    for (q, a), (q2, a2, move) in sorted(t.rules.items()):
        if q not in states or a not in alphabet or q2 not in states or a2 not in alphabet:
            problems.append(f"rule ({q},{a}) -> ({q2},{a2},{move}) uses undeclared names")
        if move not in MOVES:
            problems.append(f"rule ({q},{a}) has bad move {move!r}")
        if a == t.left_marker and move == "L":
            problems.append(f"left escape: rule ({q},{a}) moves left off the marker cell")
    for q in t.states:
        for a in t.alphabet:
            rule = t.rules.get((q, a))
            if q == t.accept:
                if rule != (q, a, "S"):
                    problems.append(f"final state not self-perpetuating on {a!r}: "
                                    f"expected ({q},{a},S), got {rule}")
            elif rule is None:
                problems.append(f"missing rule for ({q},{a})")
    if not t.space or any(not isinstance(c, int) for c in t.space):
        problems.append("space polynomial needs integer coefficients")
    return problems


def check_tm(t: TMSpec) -> None:
    problems = validate_tm(t)
    if problems:
        raise TMError("; ".join(problems))


def space_bound(t: TMSpec, n: int) -> int:
    s = sum(c * n ** i for i, c in enumerate(t.space))
    if s < n + 1:
        raise TMError(f"space bound S({n}) = {s} is smaller than n + 1 = {n + 1}")
    return s


def initial_configuration(t: TMSpec, x: Sequence[str]) -> Configuration:
    for a in x:
        if a not in t.alphabet or a == t.left_marker:
            raise TMError(f"input symbol {a!r} is not in the input alphabet")
    s = space_bound(t, len(x))
    tape = (t.left_marker, *x) + (t.blank,) * (s - len(x) - 1)
    return Configuration(t.start, 1, tape)


def step(t: TMSpec, c: Configuration) -> Configuration:
    symbol = c.tape[c.head - 1]
    try:
        state, written, move = t.rules[(c.state, symbol)]
    except KeyError:
        raise TMError(f"no rule for ({c.state},{symbol})") from None
    head = c.head + {"L": -1, "R": 1, "S": 0}[move]
    if not 1 <= head <= len(c.tape):
        raise TMError(f"head leaves the tape: ({c.state},{symbol}) moves {move} from cell {c.head}")
    tape = c.tape[:c.head - 1] + (written,) + c.tape[c.head:]
    return Configuration(state, head, tape)


def is_accepting(t: TMSpec, c: Configuration) -> bool:
    return c.state == t.accept and c.head == 1 and all(a == t.blank for a in c.tape)


def simulate(t: TMSpec, x: Sequence[str]) -> RunResult:
    """Run ``t`` on ``x`` until a configuration repeats.

    Memory grows with the number of distinct configurations visited.
    """
    check_tm(t)
    c = initial_configuration(t, x)
    seen: dict[Configuration, int] = {}
    trace: list[Configuration] = []
    while c not in seen:
        seen[c] = len(trace)
        trace.append(c)
        c = step(t, c)
    answer = "yes" if any(is_accepting(t, d) for d in trace) else "no"
    return RunResult(answer, tuple(trace), seen[c])


def split_word(word: str) -> list[str]:
    """Input words are single-character symbols, or whitespace-separated names."""
    return word.split() if any(ch.isspace() for ch in word) else list(word)


def read_tm(text: str) -> TMSpec:
    fields: dict[str, list[str]] = {}
    rules: dict[tuple[str, str], tuple[str, str, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "rule":
            if len(rest) != 5:
                raise TMSyntaxError("usage: rule <q> <a> <q'> <a'> <L|R|S>", lineno)
            q, a, q2, a2, move = rest
            if move not in MOVES:
                raise TMSyntaxError(f"move must be one of L, R, S, got {move!r}", lineno)
            if (q, a) in rules:
                raise TMSyntaxError(f"second rule for ({q},{a}): machine must be deterministic", lineno)
            rules[(q, a)] = (q2, a2, move)
        elif head in ("states", "alphabet", "start", "accept", "blank", "leftmarker", "space"):
            if head in fields:
                raise TMSyntaxError(f"duplicate {head!r} directive", lineno)
            single = head in ("start", "accept", "blank", "leftmarker")
            if not rest or (single and len(rest) != 1):
                raise TMSyntaxError(f"bad {head!r} directive", lineno)
            if head == "space":
                try:
                    [int(w) for w in rest]
                except ValueError:
                    raise TMSyntaxError("space coefficients must be integers", lineno) from None
            fields[head] = rest
        else:
            raise TMSyntaxError(f"unknown directive {head!r}", lineno)
    missing = [k for k in ("states", "alphabet", "start", "accept", "blank", "leftmarker")
               if k not in fields]
    if missing:
        raise TMSyntaxError(f"missing directive(s): {', '.join(missing)}", 0)
    return TMSpec(
        states=tuple(fields["states"]),
        alphabet=tuple(fields["alphabet"]),
        start=fields["start"][0],
        accept=fields["accept"][0],
        blank=fields["blank"][0],
        left_marker=fields["leftmarker"][0],
        rules=rules,
        space=tuple(int(w) for w in fields.get("space", ["1", "1"])),
    )


def format_tm(t: TMSpec) -> str:
    lines = [
        "states " + " ".join(t.states),
        "alphabet " + " ".join(t.alphabet),
        f"start {t.start}",
        f"accept {t.accept}",
        f"blank {t.blank}",
        f"leftmarker {t.left_marker}",
        "space " + " ".join(map(str, t.space)),
    ]
    order = {q: i for i, q in enumerate(t.states)}, {a: i for i, a in enumerate(t.alphabet)}
    for (q, a), rhs in sorted(t.rules.items(), key=lambda kv: (order[0].get(kv[0][0], -1),
                                                               order[1].get(kv[0][1], -1))):
        lines.append(" ".join(["rule", q, a, *rhs]))
    return "\n".join(lines) + "\n"
