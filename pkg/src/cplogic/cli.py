"""Command-line front end: ``cplogic <command> ...``.

Exit status: 0 success (or true / related / nothing found), 1 negative
answer (false / not related / counterexample / failed suite), 2 usage or
parse error, 3 validation error.  The default output format comes from the
``CPLOGIC_FORMAT`` environment variable (``text`` or ``json``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import fixtures, io
from .axioms import run_axiom_suite
from .bisim import COLLECTIVE, STANDARD, Refinement
from .duality import to_kripke, to_simplicial
from .errors import CPLError, ParseError, ValidationError
from .logic.falsify import KRIPKE, SIMPLICIAL, Bounds, search_counterexample
from .logic.parser import parse_formula
from .logic.printer import format_formula
from .logic.reduction import ReductionLimit, reduce_formula
from .logic.semantics import check_signature, evaluator_for
from .model import EpistemicModel
from .pattern import FAMILIES, gen_pattern
from .simplicial import SimplicialModel, facet_label
from .update import update_kripke, update_simplicial

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3


class _Usage(ParseError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: {message}")


# -- helpers -------------------------------------------------------------------


def _emit(out, args, data, text):
    if args.format == "json":
        out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def _pattern_env(args, data=None):
    env = io.embedded_patterns(data) if data is not None else {}
    for binding in args.pattern or []:
        name, sep, path = binding.partition("=")
        if not sep or not name or not path:
            raise _Usage(f"--pattern expects name=file, got {binding!r}")
        env[name] = io.load_pattern(path)
    return env


def _load(path, kind):
    data = io.read_json(path)
    return io.structure_from_json(data, kind), data


def _resolve_point(model, point):
    if point is None:
        return None
    if isinstance(model, EpistemicModel):
        model._check_world(point)
        return point
    if point in model.facet_names:
        return model.facet_names[point]
    for f in model.facets:
        if facet_label(f) == point:
            return f
    return model.facet(frozenset(v.strip() for v in point.strip("{}").split(",")))


def _point_text(point):
    return facet_label(point) if isinstance(point, frozenset) else point


def _split_ref(ref):
    """``file:point`` where the file part is the longest existing path prefix."""
    cuts = [k for k, ch in enumerate(ref) if ch == ":"]
    for k in reversed(cuts):
        if Path(ref[:k]).is_file():
            return ref[:k], ref[k + 1 :]
    raise _Usage(f"cannot split {ref!r} into an existing file and a point")


# -- commands ------------------------------------------------------------------


def cmd_check(args, out):
    model, data = _load(args.model, args.kind)
    env = _pattern_env(args, data)
    phi = parse_formula(args.formula, model.signature, env)
    check_signature(phi, model.signature)
    ev = evaluator_for(model)
    ext = ev.extension(phi)
    point = _resolve_point(model, args.world or args.facet)
    if point is None:
        holds_at = [_point_text(p) for p in ev.truth_set(phi)]
        valid = ext == ev.full
        data = {"formula": format_formula(phi, env), "valid": valid, "holds_at": sorted(holds_at)}
        _emit(out, args, data, f"{'valid' if valid else 'not valid'}; holds at: {', '.join(sorted(holds_at))}")
        return EXIT_OK if valid else EXIT_NO
    holds = bool(ext >> model.index[point] & 1)
    data = {"formula": format_formula(phi, env), "point": _point_text(point), "holds": holds}
    _emit(out, args, data, "true" if holds else "false")
    return EXIT_OK if holds else EXIT_NO


def cmd_update(args, out):
    model, _ = _load(args.model, args.kind)
    pattern = io.load_pattern(args.pattern)
    if isinstance(model, EpistemicModel):
        updated = update_kripke(model, pattern)
    else:
        updated = update_simplicial(model, pattern)
    return _write_model(args, out, io.structure_to_json(updated))


def _write_model(args, out, data):
    if args.out:
        io.save(args.out, data)
    else:
        out.write(io.dumps(data))
    return EXIT_OK


def cmd_convert(args, out):
    model, _ = _load(args.model, args.kind)
    point = _resolve_point(model, args.world or args.facet)
    if args.to == "simplicial":
        if not isinstance(model, EpistemicModel):
            raise ValidationError("convert --to simplicial needs an epistemic model")
        result, world_map = to_simplicial(model)
        data = io.simplicial_to_json(result)
        meta = {"point_map": {w: facet_label(f) for w, f in world_map.items()}}
        if point is not None:
            meta["point"] = facet_label(world_map[point])
    else:
        if not isinstance(model, SimplicialModel):
            raise ValidationError("convert --to kripke needs a simplicial model")
        result, facet_map = to_kripke(model)
        data = io.model_to_json(result)
        meta = {"point_map": {facet_label(f): w for f, w in facet_map.items()}}
        if point is not None:
            meta["point"] = facet_map[point]
    data["meta"] = meta
    return _write_model(args, out, data)


def cmd_bisim(args, out):
    lpath, lref = _split_ref(args.left)
    rpath, rref = _split_ref(args.right)
    left, _ = _load(lpath, args.kind)
    right, _ = _load(rpath, args.kind)
    lp, rp = _resolve_point(left, lref), _resolve_point(right, rref)
    # compare across kinds on the simplicial side
    if isinstance(left, EpistemicModel) and isinstance(right, SimplicialModel):
        left, wm = to_simplicial(left)
        lp = wm[lp]
    elif isinstance(left, SimplicialModel) and isinstance(right, EpistemicModel):
        right, wm = to_simplicial(right)
        rp = wm[rp]
    kind = STANDARD if args.standard else COLLECTIVE
    ref = Refinement(left, right, kind)
    i, j = ref.left.locate(lp), ref.right.locate(rp)
    if ref.related_index(i, j):
        pairs = sorted((_point_text(a), _point_text(b)) for a, b in ref.pairs())
        data = {"kind": kind, "verdict": "related", "relation": [list(p) for p in pairs]}
        text = "related\n" + "\n".join(f"{a} ~ {b}" for a, b in pairs)
        _emit(out, args, data, text)
        return EXIT_OK
    phi = ref.certified_formula(i, j)
    data = {"kind": kind, "verdict": "not-related", "formula": format_formula(phi)}
    _emit(out, args, data, f"not-related\n{format_formula(phi)}")
    return EXIT_NO


def cmd_reduce(args, out):
    sig = None
    data = None
    if args.model:
        model, data = _load(args.model, args.kind)
        sig = model.signature
    agents = args.agents.split(",") if args.agents else None
    env = _pattern_env(args, data)
    phi = parse_formula(args.formula, sig, env, agents)
    reduced = reduce_formula(phi)
    _emit(out, args, {"formula": format_formula(phi, env), "reduced": format_formula(reduced)}, format_formula(reduced))
    return EXIT_OK


def cmd_gen_pattern(args, out):
    params = {}
    if args.params:
        try:
            params = json.loads(args.params)
        except json.JSONDecodeError as exc:
            raise _Usage(f"--params is not JSON: {exc.msg}") from None
    for item in args.param or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise _Usage(f"--param expects key=value, got {item!r}")
        params[key] = value.split(",") if key == "group" else value
    pattern = gen_pattern(args.family, args.agents.split(","), params)
    return _write_model(args, out, io.pattern_to_json(pattern))


def cmd_falsify(args, out):
    env = _pattern_env(args)
    phi = parse_formula(args.formula, None, env, args.agents.split(",") if args.agents else None)
    bounds = Bounds(args.max_worlds, args.max_agents, args.atoms_per_agent, args.trials)
    found = search_counterexample(phi, bounds, seed=args.seed, semantics=args.semantics)
    if found is None:
        _emit(out, args, {"formula": format_formula(phi, env), "counterexample": None}, "none found")
        return EXIT_OK
    data = {
        "formula": format_formula(phi, env),
        "counterexample": {
            "model": io.structure_to_json(found.model),
            "point": _point_text(found.point),
            "exhaustive_stage": found.exhaustive,
        },
    }
    text = f"counterexample at {_point_text(found.point)}\n{io.dumps(io.structure_to_json(found.model))}"
    _emit(out, args, data, text)
    return EXIT_NO


def cmd_axioms(args, out):
    report = run_axiom_suite(seed=args.seed, trials=args.trials)
    rows = [
        {"name": r.name, "passed": r.passed, "instances": r.instances, "expect_valid": r.expect_valid}
        for r in report.results
    ]
    _emit(out, args, {"passed": report.passed, "results": rows}, report.table())
    return EXIT_OK if report.passed else EXIT_NO


def cmd_examples(args, out):
    target = Path(args.out)
    target.mkdir(parents=True, exist_ok=True)
    written = []

    def put(name, data):
        io.save(target / f"{name}.json", data)
        written.append(f"{name}.json")

    byz = {"byz": fixtures.byzantine_pattern()}
    for name, build in fixtures.KRIPKE_FIXTURES.items():
        put(name, io.model_to_json(build(), byz if name == "byzantine" else None))
    put("byz", io.model_to_json(fixtures.byzantine_base(), byz))
    for name, build in fixtures.SIMPLICIAL_FIXTURES.items():
        put(name, io.simplicial_to_json(build()))
    for name, pattern in fixtures.example_patterns().items():
        put(f"pattern_{name}", io.pattern_to_json(pattern))
    put("pa", io.pattern_to_json(fixtures.universal_pattern()))
    _emit(out, args, {"written": written}, "\n".join(written))
    return EXIT_OK


# -- argument parsing ------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=os.environ.get("CPLOGIC_FORMAT", "text"))
    common.add_argument("--error-json", action="store_true", help="report errors as JSON on stderr")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = _Parser(prog="cplogic", description="Communication pattern logic toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def model_opts(p, point=True):
        p.add_argument("--model", required=True)
        p.add_argument("--kind", choices=(KRIPKE, SIMPLICIAL))
        if point:
            g = p.add_mutually_exclusive_group()
            g.add_argument("--world")
            g.add_argument("--facet")

    p = sub.add_parser("check", parents=[common], help="evaluate a formula")
    model_opts(p)
    p.add_argument("--formula", required=True)
    p.add_argument("--pattern", action="append", metavar="NAME=FILE")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("update", parents=[common], help="apply a communication pattern")
    model_opts(p, point=False)
    p.add_argument("--pattern", required=True, metavar="FILE")
    p.add_argument("--out")
    p.set_defaults(run=cmd_update)

    p = sub.add_parser("convert", parents=[common], help="translate between the two model kinds")
    model_opts(p)
    p.add_argument("--to", required=True, choices=("simplicial", "kripke"))
    p.add_argument("--out")
    p.set_defaults(run=cmd_convert)

    p = sub.add_parser("bisim", parents=[common], help="decide bisimilarity of two pointed models")
    p.add_argument("--left", required=True, metavar="FILE:POINT")
    p.add_argument("--right", required=True, metavar="FILE:POINT")
    p.add_argument("--kind", choices=(KRIPKE, SIMPLICIAL))
    g = p.add_mutually_exclusive_group()
    g.add_argument("--collective", action="store_true")
    g.add_argument("--standard", action="store_true")
    p.set_defaults(run=cmd_bisim)

    p = sub.add_parser("reduce", parents=[common], help="eliminate pattern modalities")
    p.add_argument("--formula", required=True)
    p.add_argument("--model", help="model file supplying the signature and embedded patterns")
    p.add_argument("--agents", help="comma-separated agents for pattern literals")
    p.add_argument("--kind", choices=(KRIPKE, SIMPLICIAL))
    p.add_argument("--pattern", action="append", metavar="NAME=FILE")
    p.set_defaults(run=cmd_reduce)

    p = sub.add_parser("gen-pattern", parents=[common], help="emit a named pattern family")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--agents", required=True)
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--params", help="parameters as a JSON object")
    p.add_argument("--out")
    p.set_defaults(run=cmd_gen_pattern)

    p = sub.add_parser("falsify", parents=[common], help="search for a validity counterexample")
    p.add_argument("--formula", required=True)
    p.add_argument("--pattern", action="append", metavar="NAME=FILE")
    p.add_argument("--agents", help="comma-separated agents for pattern literals")
    p.add_argument("--max-worlds", type=int, default=3)
    p.add_argument("--max-agents", type=int, default=2)
    p.add_argument("--atoms-per-agent", type=int, default=1)
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--semantics", choices=(KRIPKE, SIMPLICIAL), default=KRIPKE)
    p.set_defaults(run=cmd_falsify)

    p = sub.add_parser("axioms", parents=[common], help="run the axiom falsification suite")
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(run=cmd_axioms)

    p = sub.add_parser("examples", parents=[common], help="write the worked examples as JSON files")
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(run=cmd_examples)
    return parser


def _fail(args_error_json, exc, code, err):
    if args_error_json:
        payload = {"error": type(exc).__name__, "message": str(exc), "exit": code}
        if getattr(exc, "position", None) is not None:
            payload["position"] = exc.position
        err.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        err.write(f"error: {exc}\n")
    return code


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    error_json = "--error-json" in argv
    try:
        args = build_parser().parse_args(argv)
        return args.run(args, out)
    except ParseError as exc:
        return _fail(error_json, exc, EXIT_USAGE, err)
    except (CPLError, ReductionLimit, ValueError) as exc:
        return _fail(error_json, exc, EXIT_INVALID, err)


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
