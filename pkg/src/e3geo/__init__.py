"""Formal system E for Euclidean geometry: surface language, rule library,
SMT-backed proof checking, and the theorem equivalence engine."""

from .ast import (
    Clause,
    Literal,
    Sort,
    TheoremStatement,
    Var,
    well_formed,
)
from .equiv import (
    ApproxReport,
    EquivalenceReport,
    approx_equivalence,
    check_equivalence,
    check_implication,
    contradiction_check,
    rank_unifications,
)
from .parser import ParseError, parse_proof, parse_theorem, render_proof, render_statement
from .proof import CheckReport, check_proof
from .rules import Mode, RuleKind, RuleSet, background_for, builtin_rules, register_theorem
from .smt import SolverConfig, SolverNotFound, run_solver
from .sugar import desugar_literal, desugar_theorem, syntactic_eq

__all__ = [
    "ApproxReport",
    "CheckReport",
    "Clause",
    "EquivalenceReport",
    "Literal",
    "Mode",
    "ParseError",
    "RuleKind",
    "RuleSet",
    "SolverConfig",
    "SolverNotFound",
    "Sort",
    "TheoremStatement",
    "Var",
    "approx_equivalence",
    "background_for",
    "builtin_rules",
    "check_equivalence",
    "check_implication",
    "check_proof",
    "contradiction_check",
    "desugar_literal",
    "desugar_theorem",
    "parse_proof",
    "parse_theorem",
    "rank_unifications",
    "register_theorem",
    "render_proof",
    "render_statement",
    "run_solver",
    "syntactic_eq",
    "well_formed",
]

__version__ = "0.1.0"
