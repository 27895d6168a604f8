"""Acceptance checks, one test per criterion.

Each test prints a ``PASS``/``FAIL`` line with its measurements before
asserting, so ``pytest tests/test_acceptance.py -v`` doubles as a report.
"""
import random
import time
from pathlib import Path

import pytest

from ltlkit.cli import run
from ltlkit.evaluator import eval_lasso, oracle_eval, reduce_closed, truth_table
from ltlkit.formula import (
    FALSUM, TOP, Next, Until, always, and_, count_vars, dag_size, eventually, neg, or_,
)
from ltlkit.kripke import LassoPath, validate_model
from ltlkit.machines import t_loop, t_parity, t_yes
from ltlkit.reduction import build_model, build_psi
from ltlkit.satisfiability import Inconclusive, sat, valid
from ltlkit.turing import simulate, split_word

from .oracles import bounded_witness, formulas_up_to, random_formula, random_instance

MACHINES = Path(__file__).resolve().parent.parent / "machines"


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}")
    return emit


def test_criterion_1_variable_free_fragment(report):
    start = time.perf_counter()
    rng = random.Random(1)
    paths = [random_instance(rng) for _ in range(5)]
    closed = formulas_up_to(7, closed=True)
    bad = []
    for f in closed:
        value = reduce_closed(f)
        truth = value is TOP
        if any(eval_lasso(m, path, f) != truth for m, path in paths) or sat(f).satisfiable != truth:
            bad.append(f)
    witnesses = reduce_closed(Until(TOP, TOP)) is TOP and reduce_closed(Until(TOP, FALSUM)) is FALSUM
    elapsed = time.perf_counter() - start
    ok = not bad and witnesses and len(closed) >= 100 and elapsed < 10
    report(1, ok, f"{len(closed)} closed formulas, {len(bad)} mismatches, "
                  f"T U T / T U F witnesses {'ok' if witnesses else 'wrong'}, {elapsed:.1f}s (< 10s)")
    assert ok


def test_criterion_2_semantics_differential(report):
    start = time.perf_counter()
    rng = random.Random(2)
    mismatches = 0
    count = 1000
    for _ in range(count):
        m, path = random_instance(rng, max_states=6, max_len=8)
        f = random_formula(rng, max_nodes=10)
        mismatches += eval_lasso(m, path, f) != oracle_eval(m, path, f)
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 60
    report(2, ok, f"{count} instances, {mismatches} mismatches, {elapsed:.1f}s (< 60s)")
    assert ok


def test_criterion_3_semantic_laws(report):
    rng = random.Random(3)
    failures = {"until-expansion": 0, "next-suffix": 0, "loop-doubling": 0, "duality": 0}
    count = 500
    for _ in range(count):
        m, path = random_instance(rng)
        a, b = random_formula(rng, 5), random_formula(rng, 5)
        u = Until(a, b)
        if eval_lasso(m, path, u) != eval_lasso(m, path, or_(b, and_(a, Next(u)))):
            failures["until-expansion"] += 1
        f = random_formula(rng)
        if eval_lasso(m, path, Next(f)) != eval_lasso(m, path.advance(1), f):
            failures["next-suffix"] += 1
        small = truth_table(m, path, f)
        big = truth_table(m, LassoPath(path.prefix, path.loop * 2), f)
        if any(big.row(g)[:small.width] != small.row(g) for g in small.members):
            failures["loop-doubling"] += 1
        if eval_lasso(m, path, eventually(f)) == eval_lasso(m, path, always(neg(f))):
            failures["duality"] += 1
    ok = not any(failures.values())
    report(3, ok, f"{count} instances per law, failures {failures}")
    assert ok


def test_criterion_4_satisfiability(report):
    start = time.perf_counter()
    fs = formulas_up_to(8)
    unsound = incomplete = contradictions = tautology_misses = satisfiable = 0
    for f in fs:
        verdict = sat(f)
        if verdict.satisfiable:
            satisfiable += 1
            unsound += not eval_lasso(*verdict.witness, f)
        elif bounded_witness(f) is not None:
            incomplete += 1
        contradictions += sat(and_(f, neg(f))).satisfiable
        tautology_misses += not sat(or_(f, neg(f))).satisfiable
    elapsed = time.perf_counter() - start
    ok = not (unsound or incomplete or contradictions or tautology_misses) and elapsed < 300
    report(4, ok, f"{len(fs)} formulas ({satisfiable} sat), unsound {unsound}, "
                  f"missed bounded witnesses {incomplete}, f&!f sat {contradictions}, "
                  f"f|!f unsat {tautology_misses}, {elapsed:.1f}s (< 300s)")
    assert ok


def _marker_starts(m):
    p = m.valuation.get(1, frozenset())
    return {a for a in range(m.state_count) if a in p
            for b in m.successors[a] if b in p
            for c in m.successors[b] if c in p}


def test_criterion_5_reduction_structure(report):
    start = time.perf_counter()
    rows = []
    ok = True
    for s in (1, 2, 3):
        m, layout = build_model(t_yes((s,)), 0)
        good = (layout.n1, layout.n2, layout.k) == (2, 2, 6)
        good &= m.state_count == 3 + s * (2 + 36)
        good &= validate_model(m) == []
        good &= layout.L == 3 + s * 8
        good &= _marker_starts(m) == {0}
        ok &= good
        rows.append(f"S={s}: {m.state_count} states, L={layout.L}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 10
    report(5, ok, "; ".join(rows) + f"; marker only at B.0; {elapsed:.1f}s (< 10s)")
    assert ok


CASES = [("t_yes.tm", ""), ("t_loop.tm", ""), ("t_parity.tm", "1"), ("t_parity.tm", "11"),
         ("t_parity.tm", "111"), ("t_parity.tm", "1111")]


def test_criterion_6_simulator_correspondence(report, capsys):
    start = time.perf_counter()
    lines = []
    for machine, word in CASES:
        code = run(["verify", "--tm", str(MACHINES / machine), "--input", word])
        out = capsys.readouterr().out.strip()
        lines.append((machine, word, code, out))
    elapsed = time.perf_counter() - start
    machines = {"t_yes.tm": t_yes(), "t_loop.tm": t_loop(), "t_parity.tm": t_parity()}
    sizes = [dag_size(build_psi(machines[m], split_word(w)).psi) for m, w in CASES]
    ok = all(code == 0 and out.endswith("consistent=yes") for *_, code, out in lines)
    ok &= elapsed < 120 and max(sizes) <= 10 ** 5
    detail = ", ".join(f"{m[:-3]}({w!r}) {out}" for m, w, _, out in lines)
    report(6, ok, f"{detail}; largest DAG {max(sizes)} nodes; {elapsed:.1f}s (< 120s)")
    assert ok


def test_criterion_7_single_variable(report):
    counts = {}
    for name, t, word in [("t_yes", t_yes((1,)), ""), ("t_yes", t_yes((3,)), ""), ("t_loop", t_loop(), ""),
                          ("t_parity", t_parity(), "11"), ("t_parity", t_parity(), "111")]:
        out = build_psi(t, split_word(word))
        counts[f"{name}/S={out.layout.S}/{word!r}"] = [
            count_vars(g) for g in (out.psi, out.psi_start, out.psi_delta, out.psi_positive)]
    ok = all(c == [1, 1, 1, 1] for c in counts.values())
    report(7, ok, f"count_vars of (psi, start, delta, positive): {counts}")
    assert ok


def test_criterion_8_validity_micro_scale(report):
    t = t_yes((1,))
    out = build_psi(t, [])
    expected = simulate(t, []).answer == "yes"
    start = time.perf_counter()
    try:
        verdict = "valid" if valid(out.psi) else "not-valid"
    except Inconclusive as exc:
        verdict = f"inconclusive ({exc})"
    elapsed = time.perf_counter() - start
    ok = (verdict.startswith("inconclusive") or (verdict == "valid" and expected)) and elapsed < 600
    report(8, ok, f"T_yes S=1: simulator yes={expected}, valid(psi) -> {verdict}, "
                  f"DAG {dag_size(out.psi)} nodes, {elapsed:.1f}s (< 600s)")
    assert ok


def test_criterion_9_determinism(report, tmp_path, capsys):
    outputs = []
    for attempt in range(2):
        d = tmp_path / str(attempt)
        d.mkdir()
        code = run(["reduce", "--tm", str(MACHINES / "t_parity.tm"), "--input", "1",
                    "--out-model", str(d / "m"), "--out-formula", str(d / "f"),
                    "--out-layout", str(d / "l")])
        capsys.readouterr()
        outputs.append((code, [(d / name).read_bytes() for name in "mfl"]))
    ok = outputs[0] == outputs[1] and outputs[0][0] == 0
    sizes = [len(b) for b in outputs[0][1]]
    report(9, ok, f"two reduce runs byte-identical: {ok}; model/formula/layout bytes {sizes}")
    assert ok
