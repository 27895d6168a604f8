"""LTL semantics, satisfiability, and a one-variable encoding of space-bounded machine runs."""
from .evaluator import eval_lasso, oracle_eval, reduce_closed, truth_table
from .formula import (
    FALSUM, P, TOP, Falsum, Formula, Implies, Next, Until, Var,
    always, and_, closure, conj, count_vars, dag_size, disj, eventually, iff, neg,
    next_power, or_, tree_size,
)
from .kripke import (
    KripkeModel, LassoPath, format_model, path_at, read_model, validate_model, validate_path,
)
from .reduction import Layout, ReductionOutput, build_model, build_psi, run_lasso, symbol_index
from .satisfiability import Inconclusive, Verdict, sat, valid
from .syntax import ParseError, format_formula, parse
from .turing import TMSpec, read_tm, simulate, space_bound, validate_tm

__version__ = "0.1.0"
