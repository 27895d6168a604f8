import io
import subprocess
import sys
from pathlib import Path

import pytest

from ltlkit.cli import run
from ltlkit.evaluator import eval_lasso
from ltlkit.kripke import read_model
from ltlkit.syntax import parse

MACHINES = Path(__file__).resolve().parent.parent / "machines"


def ltl(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


@pytest.fixture
def all_p(tmp_path):
    path = tmp_path / "all_p.model"
    path.write_text("states 1\nedge 0 0\nlabel p 0\npath : 0\n")
    return str(path)


def test_eval_always(capsys, tmp_path, all_p):
    formula = tmp_path / "f.ltl"
    formula.write_text("G p\n")
    assert ltl(capsys, "eval", "--model", all_p, "--formula", str(formula))[:2] == (0, "true")
    assert ltl(capsys, "eval", "--model", all_p, "--expr", "F !p")[:2] == (0, "false")


def test_parse_prints_canonical_form(capsys, tmp_path):
    f = tmp_path / "f.ltl"
    f.write_text("(p -> X p)  # comment\n")
    assert ltl(capsys, "parse", str(f))[:2] == (0, "p -> X p")


def test_parse_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("F p"))
    assert ltl(capsys, "parse", "-")[:2] == (0, "true U p")


def test_sat_and_valid(capsys):
    assert ltl(capsys, "sat", "--expr", "p & !p")[:2] == (0, "unsat")
    assert ltl(capsys, "sat", "--expr", "p & X !p")[:2] == (0, "sat")
    assert ltl(capsys, "valid", "--expr", "p -> p")[:2] == (0, "valid")
    assert ltl(capsys, "valid", "--expr", "p")[:2] == (0, "not-valid")


def test_sat_witness_file(capsys, tmp_path):
    out = tmp_path / "w.model"
    assert ltl(capsys, "sat", "--expr", "p U (X X !p)", "--witness", str(out))[:2] == (0, "sat")
    m, path = read_model(out.read_text())
    assert eval_lasso(m, path, parse("p U (X X !p)"))


def test_inconclusive(capsys):
    code, out, _ = ltl(capsys, "sat", "--expr", "G F p & G F p2", "--atom-budget", "2")
    assert (code, out) == (4, "inconclusive")
    code, out, _ = ltl(capsys, "valid", "--expr", "G F p & G F p2", "--atom-budget", "2")
    assert (code, out) == (4, "inconclusive")


def test_syntax_errors_exit_2(capsys, tmp_path, all_p):
    code, _, err = ltl(capsys, "sat", "--expr", "p &")
    assert code == 2 and "line 1" in err
    bad = tmp_path / "bad.model"
    bad.write_text("edge 0 0\n")
    assert ltl(capsys, "eval", "--model", str(bad), "--expr", "p")[0] == 2
    bad_tm = tmp_path / "bad.tm"
    bad_tm.write_text("states q0\nrule q0\n")
    assert ltl(capsys, "verify", "--tm", str(bad_tm))[0] == 2


def test_semantic_errors_exit_3(capsys, tmp_path):
    model = tmp_path / "m.model"
    model.write_text("states 2\nedge 0 1\npath : 0 1\n")
    code, _, err = ltl(capsys, "eval", "--model", str(model), "--expr", "p")
    assert code == 3 and "not serial" in err
    nopath = tmp_path / "n.model"
    nopath.write_text("states 1\nedge 0 0\n")
    assert ltl(capsys, "eval", "--model", str(nopath), "--expr", "p")[0] == 3
    tm = (MACHINES / "t_yes.tm").read_text().replace("rule q1 B q1 B S\n", "")
    bad_tm = tmp_path / "t.tm"
    bad_tm.write_text(tm)
    code, _, err = ltl(capsys, "verify", "--tm", str(bad_tm))
    assert code == 3 and "self-perpetuating" in err
    assert ltl(capsys, "verify", "--tm", str(MACHINES / "t_parity.tm"), "--input", "1<")[0] == 3


def test_missing_file_exits_1(capsys, tmp_path):
    assert ltl(capsys, "parse", str(tmp_path / "nope.ltl"))[0] == 1


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        run(["eval", "--expr", "p"])
    assert info.value.code == 2


@pytest.mark.parametrize("machine, word, answer, formula", [
    ("t_yes.tm", "", "yes", "true"),
    ("t_loop.tm", "", "no", "false"),
    ("t_parity.tm", "11", "yes", "true"),
    ("t_parity.tm", "1", "no", "false"),
])
def test_verify(capsys, machine, word, answer, formula):
    code, out, _ = ltl(capsys, "verify", "--tm", str(MACHINES / machine), "--input", word)
    assert code == 0
    assert out == f"answer={answer} formula={formula} consistent=yes"


def test_reduce_outputs_round_trip(capsys, tmp_path):
    names = {k: tmp_path / f"out.{k}" for k in ("model", "ltl", "layout")}
    argv = ["reduce", "--tm", str(MACHINES / "t_yes.tm"), "--input", "",
            "--out-model", str(names["model"]), "--out-formula", str(names["ltl"]),
            "--out-layout", str(names["layout"])]
    assert ltl(capsys, *argv)[0] == 0
    first = {k: p.read_bytes() for k, p in names.items()}
    assert ltl(capsys, *argv)[0] == 0
    assert {k: p.read_bytes() for k, p in names.items()} == first
    assert "L 19" in first["layout"].decode()
    code, out, _ = ltl(capsys, "eval", "--model", str(names["model"]), "--formula", str(names["ltl"]))
    assert (code, out) == (0, "true")
    code, out, _ = ltl(capsys, "parse", str(names["ltl"]))
    assert out + "\n" == first["ltl"].decode()


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ltlkit.cli", "sat", "--expr", "p & !p"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "unsat\n"
