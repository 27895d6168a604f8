"""``ltl`` command-line front end.

Results go to stdout as one line; diagnostics go to stderr.  Exit codes:
0 success, 1 internal error, 2 syntax error in an input file, 3 semantic
validation failure, 4 inconclusive (atom budget exhausted).
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .evaluator import eval_lasso
from .formula import Formula, dag_size, tree_size
from .kripke import ModelError, ModelSyntaxError, check_path, format_model, read_model
from .reduction import build_psi, format_layout
from .satisfiability import DEFAULT_ATOM_BUDGET, Inconclusive, sat, valid
from .syntax import ParseError, format_formula, parse, write_formula
from .turing import TMError, TMSyntaxError, read_tm, split_word

EXIT_OK, EXIT_INTERNAL, EXIT_SYNTAX, EXIT_SEMANTIC, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4

log = logging.getLogger("ltlkit")


def _read(name: str) -> str:
    if name == "-":
        return sys.stdin.read()
    return Path(name).read_text(encoding="utf-8")


def _formula(args) -> Formula:
    if args.expr is not None:
        return parse(args.expr)
    return parse(_read(args.formula))


def _write(name: str, text: str) -> None:
    Path(name).write_text(text, encoding="utf-8")


def cmd_parse(args) -> int:
    print(format_formula(parse(_read(args.file))))
    return EXIT_OK


def cmd_eval(args) -> int:
    model, path = read_model(_read(args.model))
    if path is None:
        raise ModelError(["model file has no 'path' line"])
    f = _formula(args)
    check_path(model, path)
    print("true" if eval_lasso(model, path, f) else "false")
    return EXIT_OK


def cmd_sat(args) -> int:
    verdict = sat(_formula(args), args.atom_budget)
    log.info("explored %d atoms", verdict.atoms)
    print("sat" if verdict.satisfiable else "unsat")
    if args.witness and verdict.satisfiable:
        _write(args.witness, format_model(*verdict.witness))
    return EXIT_OK


def cmd_valid(args) -> int:
    print("valid" if valid(_formula(args), args.atom_budget) else "not-valid")
    return EXIT_OK


def _reduce(args):
    tm = read_tm(_read(args.tm))
    return build_psi(tm, split_word(args.input))


def cmd_reduce(args) -> int:
    out = _reduce(args)
    _write(args.out_model, format_model(out.model, out.run))
    with open(args.out_formula, "w", encoding="utf-8") as fh:
        write_formula(out.psi, fh)
        fh.write("\n")
    if args.out_layout:
        _write(args.out_layout, format_layout(out.layout))
    log.info("psi: %d nodes as a tree, %d as a DAG; model: %d states; run: %d + %d positions",
             tree_size(out.psi), dag_size(out.psi), out.model.state_count,
             len(out.run.prefix), len(out.run.loop))
    return EXIT_OK


def cmd_verify(args) -> int:
    out = _reduce(args)
    answer = out.result.answer
    holds = eval_lasso(out.model, out.run, out.psi)
    consistent = (answer == "yes") == holds
    print(f"answer={answer} formula={'true' if holds else 'false'} "
          f"consistent={'yes' if consistent else 'no'}")
    return EXIT_OK if consistent else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ltl", description="LTL toolkit")
    parser.add_argument("-v", "--verbose", action="store_true", help="diagnostics on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="print a formula in canonical form")
    p.add_argument("file", help="formula file, or - for stdin")
    p.set_defaults(func=cmd_parse)

    def formula_options(p):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--formula", help="formula file, or - for stdin")
        group.add_argument("--expr", help="formula text given inline")

    p = sub.add_parser("eval", help="model-check a formula on the model's path")
    p.add_argument("--model", required=True)
    formula_options(p)
    p.set_defaults(func=cmd_eval)

    for name, func, text in (("sat", cmd_sat, "decide satisfiability"),
                             ("valid", cmd_valid, "decide validity")):
        p = sub.add_parser(name, help=text)
        formula_options(p)
        p.add_argument("--atom-budget", type=int, default=DEFAULT_ATOM_BUDGET)
        if name == "sat":
            p.add_argument("--witness", help="write a satisfying model and path here")
        p.set_defaults(func=func)

    p = sub.add_parser("reduce", help="write the model, formula and layout for a machine run")
    p.add_argument("--tm", required=True)
    p.add_argument("--input", default="")
    p.add_argument("--out-model", required=True)
    p.add_argument("--out-formula", required=True)
    p.add_argument("--out-layout")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="compare the simulator with the reduction formula")
    p.add_argument("--tm", required=True)
    p.add_argument("--input", default="")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s: %(message)s")
    # the parser recurses once per parenthesis level
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    try:
        return args.func(args)
    except (ParseError, ModelSyntaxError, TMSyntaxError) as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    except (ModelError, TMError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except Inconclusive as exc:
        print("inconclusive")
        print(exc, file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - last-resort report
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
