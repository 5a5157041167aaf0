"""Communication pattern logic: epistemic and simplicial models, pattern updates,
collective bisimulation and a model checker for distributed knowledge."""

from .bisim import (
    BisimWitness,
    collective_bisim_kripke,
    collective_bisim_simplicial,
    distinguishing_formula,
    standard_bisim_kripke,
    standard_bisim_simplicial,
)
from .duality import to_kripke, to_simplicial
from .model import EpistemicModel, LocalAtom, Signature, build_model, check_locality, group_related
from .pattern import (
    CommGraph,
    CommPattern,
    build_graph,
    build_pattern,
    gen_pattern,
    group_view_equal,
    in_neighbourhood,
)
from .simplicial import SimplicialModel, build_simplicial, face_valuation, intersection_colours
from .update import update_kripke, update_simplicial

__version__ = "0.1.0"

__all__ = [
    "BisimWitness",
    "CommGraph",
    "CommPattern",
    "EpistemicModel",
    "LocalAtom",
    "Signature",
    "SimplicialModel",
    "build_graph",
    "build_model",
    "build_pattern",
    "build_simplicial",
    "check_locality",
    "collective_bisim_kripke",
    "collective_bisim_simplicial",
    "distinguishing_formula",
    "face_valuation",
    "gen_pattern",
    "group_related",
    "group_view_equal",
    "in_neighbourhood",
    "intersection_colours",
    "standard_bisim_kripke",
    "standard_bisim_simplicial",
    "to_kripke",
    "to_simplicial",
    "update_kripke",
    "update_simplicial",
]
