"""Exact fuzzy MaxSAT over Łukasiewicz logic with rational truth degrees."""

from .encoders import encode_dlr, encode_milp, encode_wcsp, linearize
from .forms import BooleanCnf, FormClass, classify, read_dimacs, reduce_boolean, write_dimacs
from .logic import Instance, check_model, count_satisfied, evaluate, is_satisfied
from .parser import format_formula, format_instance, parse_formula, parse_instance
from .solvers import (
    HARD_UNSAT,
    OPTIMAL,
    SearchStrategy,
    Solution,
    solve_bruteforce,
    solve_dlr,
    solve_maxdegree,
    solve_milp,
    solve_simple_iterative,
    solve_wcsp,
)

__all__ = [
    "BooleanCnf",
    "FormClass",
    "HARD_UNSAT",
    "Instance",
    "OPTIMAL",
    "SearchStrategy",
    "Solution",
    "check_model",
    "classify",
    "count_satisfied",
    "encode_dlr",
    "encode_milp",
    "encode_wcsp",
    "evaluate",
    "format_formula",
    "format_instance",
    "is_satisfied",
    "linearize",
    "parse_formula",
    "parse_instance",
    "read_dimacs",
    "reduce_boolean",
    "solve_bruteforce",
    "solve_dlr",
    "solve_maxdegree",
    "solve_milp",
    "solve_simple_iterative",
    "solve_wcsp",
    "write_dimacs",
]
