import random

import pytest

from ltlkit.kripke import (
    KripkeModel, LassoPath, ModelError, ModelSyntaxError, check_model, check_path,
    format_model, path_at, read_model, validate_model, validate_path,
)

from .oracles import random_instance


def test_single_state_model_is_valid():
    m = KripkeModel(1, frozenset({(0, 0)}), {1: frozenset({0})})
    assert validate_model(m) == []
    assert m.holds(1, 0) and not m.holds(2, 0)


def test_non_serial_state_is_reported():
    m = KripkeModel(2, frozenset({(0, 1)}))
    problems = validate_model(m)
    assert len(problems) == 1 and "state 1" in problems[0]
    with pytest.raises(ModelError):
        check_model(m)


def test_model_violations():
    m = KripkeModel(2, frozenset({(0, 1), (1, 5), (1, 0)}), {1: frozenset({7})})
    problems = validate_model(m)
    assert any("(1,5)" in p for p in problems)
    assert any("missing state 7" in p for p in problems)
    assert validate_model(KripkeModel(0, frozenset())) != []


def test_path_validation():
    m = KripkeModel(2, frozenset({(0, 1), (1, 1)}))
    assert validate_path(m, LassoPath((0,), (1,))) == []
    assert validate_path(m, LassoPath((0,), (1, 1))) == []
    problems = validate_path(m, LassoPath((), (0, 0)))
    assert any(p.startswith("wrap") for p in problems)
    problems = validate_path(m, LassoPath((1,), (0, 1)))
    assert any(p.startswith("seam") for p in problems)
    problems = validate_path(m, LassoPath((), (0, 3)))
    assert problems == ["position 1: state 3 does not exist"]
    with pytest.raises(ModelError):
        check_path(m, LassoPath((), (0,)))


def test_loop_must_be_nonempty():
    with pytest.raises(ValueError):
        LassoPath((0,), ())


def test_path_positions():
    path = LassoPath((5, 6), (7, 8, 9))
    assert [path_at(path, i) for i in range(9)] == [5, 6, 7, 8, 9, 7, 8, 9, 7]
    assert path.successor_position(4) == 2
    assert path.canonical(8) == 2
    assert path.advance(3) == LassoPath((), (8, 9, 7))
    with pytest.raises(IndexError):
        path_at(path, -1)


def test_valid_paths_follow_edges():
    rng = random.Random(7)
    for _ in range(200):
        m, path = random_instance(rng)
        assert validate_model(m) == [] and validate_path(m, path) == []
        for i in range(len(path.prefix) + 3 * len(path.loop)):
            assert (path_at(path, i), path_at(path, i + 1)) in m.edges


@pytest.mark.parametrize("steps", [0, 1, 2, 5, 11])
def test_advance_matches_path_at(steps):
    path = LassoPath((1, 2), (3, 4, 5))
    moved = path.advance(steps)
    for i in range(12):
        assert path_at(moved, i) == path_at(path, i + steps)


def test_file_round_trip():
    text = """# two states
states 3
edge 0 1
edge 1 2
edge 2 1
label p 1
label p3 0 2
path 0 : 1 2
name 1 'C[1].s0'
name 2 "two words"
"""
    m, path = read_model(text)
    assert m.state_count == 3
    assert m.valuation == {1: frozenset({1}), 3: frozenset({0, 2})}
    assert path == LassoPath((0,), (1, 2))
    assert m.label(1) == "C[1].s0" and m.label(2) == "two words" and m.label(0) == "0"
    again, path2 = read_model(format_model(m, path))
    assert path2 == path
    assert format_model(again, path2) == format_model(m, path)


@pytest.mark.parametrize("text, line", [
    ("", 1),
    ("edge 0 1", 1),
    ("states 2\nstates 2", 2),
    ("states 1\nedge 0", 2),
    ("states 1\nedge 0 x", 2),
    ("states 1\nlabel q 0", 2),
    ("states 1\nlabel p0 0", 2),
    ("states 1\npath 0 0", 2),
    ("states 1\npath 0 :", 2),
    ("states 1\n\n# c\nfrobnicate", 4),
])
def test_syntax_errors(text, line):
    with pytest.raises(ModelSyntaxError) as info:
        read_model(text)
    assert info.value.line == line


def test_read_does_not_validate_semantics():
    m, path = read_model("states 2\nedge 0 1\npath : 0")
    assert path is not None
    assert validate_model(m) and validate_path(m, path)
