"""JSON file formats for models, simplicial models and patterns."""

from __future__ import annotations

import json
from collections.abc import Mapping
from pathlib import Path

from .errors import ParseError, ValidationError
from .model import EpistemicModel, build_model
from .pattern import CommPattern, build_graph, build_pattern, gen_pattern
from .simplicial import SimplicialModel, build_simplicial

KRIPKE = "kripke"
SIMPLICIAL = "simplicial"


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _atoms_by_agent(signature):
    out = {a: [] for a in signature.agents}
    for p in sorted(signature.atoms):
        out[p.owner].append(p.name)
    return out


def _atom_list(atoms):
    return sorted(str(p) for p in atoms)


# -- epistemic models --------------------------------------------------------------


def model_to_json(model: EpistemicModel, patterns=None) -> dict:
    out = {
        "agents": list(model.agents),
        "atoms": _atoms_by_agent(model.signature),
        "worlds": list(model.worlds),
        "valuation": {w: _atom_list(model.valuation[w]) for w in model.worlds},
        "relations": {a: [sorted(b) for b in model.partitions[a]] for a in model.agents},
    }
    if patterns:
        out["patterns"] = {name: pattern_to_json(p) for name, p in sorted(patterns.items())}
    return out


def model_from_json(data: Mapping) -> EpistemicModel:
    _require(data, ("agents", "worlds", "relations"), "epistemic model")
    return build_model(
        data["agents"],
        data.get("atoms", {}),
        data["worlds"],
        data["relations"],
        data.get("valuation", {}),
    )


# -- simplicial models ---------------------------------------------------------------


def simplicial_to_json(model: SimplicialModel) -> dict:
    out = {
        "agents": list(model.agents),
        "atoms": _atoms_by_agent(model.signature),
        "vertices": {
            v: {"colour": spec.colour, "atoms": _atom_list(spec.atoms)} for v, spec in sorted(model.vertices.items())
        },
        "facets": [sorted(f) for f in model.facets],
    }
    if model.facet_names:
        out["facet_names"] = {n: sorted(f) for n, f in sorted(model.facet_names.items())}
    return out


def simplicial_from_json(data: Mapping) -> SimplicialModel:
    _require(data, ("agents", "vertices", "facets"), "simplicial model")
    return build_simplicial(
        data["agents"],
        data.get("atoms"),
        data["vertices"],
        data["facets"],
        data.get("facet_names"),
    )


# -- patterns ------------------------------------------------------------------------


def pattern_to_json(pattern: CommPattern) -> dict:
    return {"agents": list(pattern.agents), "graphs": [[list(e) for e in g.key()] for g in pattern.graphs]}


def pattern_from_json(data: Mapping) -> CommPattern:
    if not isinstance(data, Mapping) or "agents" not in data:
        raise ValidationError("a pattern needs an 'agents' list")
    agents = data["agents"]
    if "gen" in data:
        return gen_pattern(data["gen"], agents, data.get("params"))
    if "graphs" not in data:
        raise ValidationError("a pattern needs 'graphs' or 'gen'")
    graphs = []
    for g in data["graphs"]:
        try:
            pairs = [tuple(e) for e in g]
        except TypeError:
            raise ValidationError(f"malformed graph {g!r}") from None
        if any(len(e) != 2 for e in pairs):
            raise ValidationError(f"malformed edge in graph {g!r}")
        graphs.append(build_graph(agents, pairs, auto_reflexive=False))
    return build_pattern(agents, graphs)


# -- files ---------------------------------------------------------------------------


def _require(data, keys, what):
    if not isinstance(data, Mapping):
        raise ValidationError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise ValidationError(f"{what} is missing key(s) {missing}")


def read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def detect_kind(data) -> str:
    if isinstance(data, Mapping):
        if "relations" in data:
            return KRIPKE
        if "facets" in data:
            return SIMPLICIAL
    raise ValidationError("cannot tell the model kind: expected a 'relations' or 'facets' key")


def structure_from_json(data, kind=None):
    kind = kind or detect_kind(data)
    if kind == KRIPKE:
        return model_from_json(data)
    if kind == SIMPLICIAL:
        return simplicial_from_json(data)
    raise ValidationError(f"unknown model kind {kind!r}")


def structure_to_json(model) -> dict:
    if isinstance(model, EpistemicModel):
        return model_to_json(model)
    return simplicial_to_json(model)


def embedded_patterns(data) -> dict:
    """Patterns stored under a model file's optional ``patterns`` key."""
    if not isinstance(data, Mapping):
        return {}
    return {name: pattern_from_json(p) for name, p in data.get("patterns", {}).items()}


def load_structure(path, kind=None):
    return structure_from_json(read_json(path), kind)


def load_pattern(path) -> CommPattern:
    return pattern_from_json(read_json(path))


def save(path, data):
    Path(path).write_text(dumps(data))
