"""The formula language: syntax, parsing, printing, semantics, reduction, falsification."""

from .falsify import Bounds, Counterexample, search_counterexample
from .formula import (
    And,
    Atom,
    Box,
    D,
    Dhat,
    Formula,
    Iff,
    Implies,
    K,
    Not,
    Or,
    atom,
    conj,
    disj,
    neg,
)
from .parser import parse_formula
from .printer import format_formula
from .reduction import ReductionLimit, reduce_formula
from .semantics import KripkeEvaluator, SimplicialEvaluator, eval_kripke, eval_simplicial, valid_on

__all__ = [
    "And",
    "Atom",
    "Bounds",
    "Box",
    "Counterexample",
    "D",
    "Dhat",
    "Formula",
    "Iff",
    "Implies",
    "K",
    "KripkeEvaluator",
    "Not",
    "Or",
    "ReductionLimit",
    "SimplicialEvaluator",
    "atom",
    "conj",
    "disj",
    "eval_kripke",
    "eval_simplicial",
    "format_formula",
    "neg",
    "parse_formula",
    "reduce_formula",
    "search_counterexample",
    "valid_on",
]
