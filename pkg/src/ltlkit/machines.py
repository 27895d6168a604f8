"""Small machines used by the tests, the acceptance suite and the README.

``B`` is the blank and ``<`` the left marker in all of them; the start state is
listed first and the accept state second, so the cell-content numbering of the
reduction starts with the blank.
"""
from __future__ import annotations

from .turing import TMSpec, read_tm

# accepts immediately: erases the marker and stops on it
T_YES = """\
states q0 q1
alphabet B <
start q0
accept q1
blank B
leftmarker <
space {space}
rule q0 B q0 B S
rule q0 < q1 B S
rule q1 B q1 B S
rule q1 < q1 < S
"""

# steps right off the marker and back, forever
T_LOOP = """\
states q0 q1 q2
alphabet B <
start q0
accept q1
blank B
leftmarker <
space {space}
rule q0 B q0 B S
rule q0 < q2 < R
rule q1 B q1 B S
rule q1 < q1 < S
rule q2 B q0 B L
rule q2 < q2 < S
"""

# even number of 1s: erase the input left to right while tracking parity, then
# walk back to the marker and erase it; odd parity spins in r
T_PARITY = """\
states q0 q1 e o b r
alphabet B < 1
start q0
accept q1
blank B
leftmarker <
space {space}
rule q0 B r B S
rule q0 < e < R
rule q0 1 r 1 S
rule q1 B q1 B S
rule q1 < q1 < S
rule q1 1 q1 1 S
rule e 1 o B R
rule e B b B L
rule e < r < S
rule o 1 e B R
rule o B r B S
rule o < r < S
rule b B b B L
rule b < q1 B S
rule b 1 r 1 S
rule r B r B S
rule r < r < S
rule r 1 r 1 S
"""


def _load(template: str, space: tuple[int, ...]) -> TMSpec:
    return read_tm(template.format(space=" ".join(map(str, space))))


def t_yes(space: tuple[int, ...] = (2,)) -> TMSpec:
    return _load(T_YES, space)


def t_loop(space: tuple[int, ...] = (2,)) -> TMSpec:
    return _load(T_LOOP, space)


def t_parity(space: tuple[int, ...] = (2, 1)) -> TMSpec:
    return _load(T_PARITY, space)
