"""Worked examples: small models and patterns used throughout the docs and tests.

Kripke fixtures return :class:`EpistemicModel`; simplicial ones return
:class:`SimplicialModel` with named facets.  ``KRIPKE_FIXTURES`` and
``SIMPLICIAL_FIXTURES`` map a file stem to a builder; ``cplogic examples``
writes them out.
"""

from __future__ import annotations

from .model import EpistemicModel, build_model
from .pattern import CommPattern, build_graph, gen_pattern
from .simplicial import SimplicialModel, build_simplicial

ABC = ["a", "b", "c"]
ATOMS_ABC = {"a": ["p"], "b": ["p"], "c": ["p"]}


def anne_bill() -> EpistemicModel:
    """Square model: a knows p_a, b knows p_b; s=∅, t=p_b, v=p_a, u=p_a p_b."""
    return build_model(
        ["a", "b"],
        {"a": ["p"], "b": ["p"]},
        ["s", "t", "u", "v"],
        {"a": [["s", "t"], ["u", "v"]], "b": [["s", "v"], ["t", "u"]]},
        {"s": [], "t": ["p_b"], "u": ["p_a", "p_b"], "v": ["p_a"]},
    )


def line_model() -> EpistemicModel:
    """Two worlds differing in p_c, joined by an a,b link; w has p_c."""
    return build_model(
        ABC,
        ATOMS_ABC,
        ["v", "w"],
        {"a": [["v", "w"]], "b": [["v", "w"]]},
        {"w": ["p_a", "p_b", "p_c"], "v": ["p_a", "p_b"]},
    )


def square_model() -> EpistemicModel:
    """Four worlds, alternating a and b links; w1 has p_c, its neighbours do not."""
    return build_model(
        ABC,
        ATOMS_ABC,
        ["w1", "w2", "w3", "w4"],
        {"a": [["w1", "w2"], ["w3", "w4"]], "b": [["w1", "w4"], ["w2", "w3"]]},
        {
            "w1": ["p_a", "p_b", "p_c"],
            "w2": ["p_a", "p_b"],
            "w3": ["p_a", "p_b", "p_c"],
            "w4": ["p_a", "p_b"],
        },
    )


def byzantine_base() -> EpistemicModel:
    """w1 has p_a, w2 does not; only b confuses them."""
    return build_model(["a", "b"], {"a": ["p"]}, ["w1", "w2"], {"b": [["w1", "w2"]]}, {"w1": ["p_a"]})


def byzantine_updated_expected() -> EpistemicModel:
    """The four-world result, hand-coded with independent world names."""
    return build_model(
        ["a", "b"],
        {"a": ["p"]},
        ["1i", "1r", "2i", "2r"],
        {"a": [["1i", "1r"], ["2i", "2r"]], "b": [["1i", "2i"], ["1r"], ["2r"]]},
        {"1i": ["p_a"], "1r": ["p_a"]},
    )


def byzantine_pattern() -> CommPattern:
    return gen_pattern("byzantine", ["a", "b"], {"sender": "a", "receiver": "b"})


def triangle_pair() -> SimplicialModel:
    """Two triangles sharing their a,b edge; X has p_c, Y does not."""
    return build_simplicial(
        ABC,
        ATOMS_ABC,
        {
            "a1": ("a", ["p_a"]),
            "b1": ("b", ["p_b"]),
            "c1": ("c", ["p_c"]),
            "c0": ("c", []),
        },
        [["a1", "b1", "c1"], ["a1", "b1", "c0"]],
        {"X": ["a1", "b1", "c1"], "Y": ["a1", "b1", "c0"]},
    )


def triangle_cycle() -> SimplicialModel:
    """Four triangles in a ring, consecutive ones sharing only an a- or b-vertex."""
    return build_simplicial(
        ABC,
        ATOMS_ABC,
        {
            "a1": ("a", ["p_a"]),
            "a2": ("a", ["p_a"]),
            "b1": ("b", ["p_b"]),
            "b2": ("b", ["p_b"]),
            "c1": ("c", ["p_c"]),
            "c2": ("c", ["p_c"]),
            "c3": ("c", []),
            "c4": ("c", []),
        },
        [["a1", "b1", "c1"], ["a1", "b2", "c3"], ["a2", "b2", "c2"], ["a2", "b1", "c4"]],
        {
            "X1": ["a1", "b1", "c1"],
            "Y1": ["a1", "b2", "c3"],
            "X2": ["a2", "b2", "c2"],
            "Y2": ["a2", "b1", "c4"],
        },
    )


def share_a() -> SimplicialModel:
    """Model (i): X={v,w,y}, Y={w,x,z} share only the a-vertex w."""
    return build_simplicial(
        ABC,
        ATOMS_ABC,
        {
            "v": ("b", ["p_b"]),
            "w": ("a", []),
            "x": ("b", []),
            "y": ("c", ["p_c"]),
            "z": ("c", ["p_c"]),
        },
        [["v", "w", "y"], ["w", "x", "z"]],
        {"X": ["v", "w", "y"], "Y": ["w", "x", "z"]},
    )


def share_ac() -> SimplicialModel:
    """Model (ii): X={v,w,y}, Y={w,x,y} share the a,c edge."""
    return build_simplicial(
        ABC,
        ATOMS_ABC,
        {"v": ("b", ["p_b"]), "w": ("a", []), "x": ("b", []), "y": ("c", ["p_c"])},
        [["v", "w", "y"], ["w", "x", "y"]],
        {"X": ["v", "w", "y"], "Y": ["w", "x", "y"]},
    )


def single_triangle() -> SimplicialModel:
    """Model (iii): one facet with ~p_a, p_b, p_c."""
    return build_simplicial(
        ABC,
        ATOMS_ABC,
        {"w": ("a", []), "v": ("b", ["p_b"]), "y": ("c", ["p_c"])},
        [["v", "w", "y"]],
        {"X": ["v", "w", "y"]},
    )


def share_a_kripke() -> EpistemicModel:
    return build_model(
        ABC, ATOMS_ABC, ["X", "Y"], {"a": [["X", "Y"]]}, {"X": ["p_b", "p_c"], "Y": ["p_c"]}
    )


def share_ac_kripke() -> EpistemicModel:
    return build_model(
        ABC, ATOMS_ABC, ["X", "Y"], {"a": [["X", "Y"]], "c": [["X", "Y"]]}, {"X": ["p_b", "p_c"], "Y": ["p_c"]}
    )


def single_kripke() -> EpistemicModel:
    return build_model(ABC, ATOMS_ABC, ["X"], {}, {"X": ["p_b", "p_c"]})


def share_a_told_all_expected() -> SimplicialModel:
    """Model (i) after everyone tells everything: two disjoint triangles, w duplicated."""
    return build_simplicial(
        ABC,
        ATOMS_ABC,
        {
            "vX": ("b", ["p_b"]),
            "wX": ("a", []),
            "yX": ("c", ["p_c"]),
            "wY": ("a", []),
            "xY": ("b", []),
            "zY": ("c", ["p_c"]),
        },
        [["vX", "wX", "yX"], ["wY", "xY", "zY"]],
    )


def rbc_graph():
    return build_graph(ABC, [("b", "c")])


def rbc_pattern() -> CommPattern:
    return CommPattern(tuple(ABC), frozenset([rbc_graph()]))


def universal_pattern(agents=ABC) -> CommPattern:
    return gen_pattern("public_announcement", agents)


def example_patterns() -> dict:
    ab, abc, abcd = ["a", "b"], ABC, ["a", "b", "c", "d"]
    return {
        "byzantine_ab": byzantine_pattern(),
        "immediate_snapshot_ab": gen_pattern("immediate_snapshot", ab),
        "immediate_snapshot_abc": gen_pattern("immediate_snapshot", abc),
        "full_async_ab": gen_pattern("full_async", ab),
        "silent_abc": gen_pattern("silent", abc),
        "public_announcement_abc": gen_pattern("public_announcement", abc),
        "public_announcement_ab": gen_pattern("public_announcement", ab),
        "group_announcement_ab_in_abc": gen_pattern("group_announcement", abc, {"group": ["a", "b"]}),
        "gossip_pushpull_sync_abcd": gen_pattern("gossip", abcd, {"mode": "pushpull", "timing": "sync"}),
        "gossip_push_async_abc": gen_pattern("gossip", abc, {"mode": "push", "timing": "async"}),
        "rbc_abc": rbc_pattern(),
    }


KRIPKE_FIXTURES = {
    "anne_bill": anne_bill,
    "line": line_model,
    "square": square_model,
    "byzantine": byzantine_base,
    "byzantine_updated": byzantine_updated_expected,
    "share_a_kripke": share_a_kripke,
    "share_ac_kripke": share_ac_kripke,
    "single_kripke": single_kripke,
}

SIMPLICIAL_FIXTURES = {
    "triangle_pair": triangle_pair,
    "triangle_cycle": triangle_cycle,
    "share_a_told_all": share_a_told_all_expected,
    "share_a": share_a,
    "share_ac": share_ac,
    "single_triangle": single_triangle,
}
