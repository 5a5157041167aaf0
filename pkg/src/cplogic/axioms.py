"""Instances of the axiomatization, checked by bounded falsification.

Each schema is instantiated with sampled formulas, groups and pointed
patterns.  The exhaustive stage checks every instance on every small local
model (models in the outer loop so updates are shared per model); the random
stage draws a fresh model and fresh instances per trial.  Rules are checked
as validity preservation on premises that are themselves valid instances.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Optional

from .logic.falsify import (
    KRIPKE,
    SIMPLICIAL,
    Bounds,
    enumerate_models,
    enumerate_simplicial,
    search_counterexample,
)
from .logic.formula import (
    And,
    Atom,
    Box,
    D,
    Iff,
    Implies,
    K,
    Not,
    Or,
    agents_of,
    atoms_of,
    conj,
    patterns_of,
    substitute,
)
from .logic.reduction import reduce_formula
from .logic.semantics import evaluator_for
from .model import LocalAtom, Signature, nonempty_groups
from .pattern import CommPattern, group_view_equal, in_neighbourhood, iter_full_async
from .sampling import random_formula, random_model, random_pattern, random_simplicial, random_signature

AXIOMS = ("P", "L", "K^D", "T^D", "4^D", "5^D", "W", "C1", "C2", "C3", "C4")
RULES = ("N^D", "N[]", "RE")


@dataclass
class SchemaResult:
    name: str
    instances: int = 0
    counterexample: Optional[Any] = None
    expect_valid: bool = True

    @property
    def passed(self) -> bool:
        found = self.counterexample is not None
        return found != self.expect_valid


@dataclass
class SuiteReport:
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def table(self) -> str:
        width = max(len(r.name) for r in self.results)
        lines = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            want = "valid" if r.expect_valid else "invalid"
            found = "counterexample" if r.counterexample is not None else "none found"
            lines.append(f"{r.name:<{width}}  {status}  expect {want:<7}  {r.instances:>5} instances  {found}")
        return "\n".join(lines)


# -- schemas -------------------------------------------------------------------


def axiom_p(phi, psi, chi):
    return [
        Implies(phi, Implies(psi, phi)),
        Implies(Implies(phi, Implies(psi, chi)), Implies(Implies(phi, psi), Implies(phi, chi))),
        Implies(Implies(Not(phi), Not(psi)), Implies(psi, phi)),
        Or(phi, Not(phi)),
    ]


def axiom_l(atom: LocalAtom):
    a = atom.owner
    return Or(K(a, Atom(atom)), K(a, Not(Atom(atom))))


def axiom_k(group, phi, psi):
    return Implies(D(group, Implies(phi, psi)), Implies(D(group, phi), D(group, psi)))


def axiom_t(group, phi):
    return Implies(D(group, phi), phi)


def axiom_4(group, phi):
    return Implies(D(group, phi), D(group, D(group, phi)))


def axiom_5(group, phi):
    return Implies(Not(D(group, phi)), D(group, Not(D(group, phi))))


def axiom_w(small, big, phi):
    return Implies(D(small, phi), D(big, phi))


def axiom_c1(pattern, graph, atom):
    return Iff(Box(pattern, graph, Atom(atom)), Atom(atom))


def axiom_c2(pattern, graph, phi):
    return Iff(Box(pattern, graph, Not(phi)), Not(Box(pattern, graph, phi)))


def axiom_c3(pattern, graph, phi, psi):
    return Iff(Box(pattern, graph, And(phi, psi)), And(Box(pattern, graph, phi), Box(pattern, graph, psi)))


def axiom_c4(pattern: CommPattern, graph, group, phi):
    heard = in_neighbourhood(graph, group)
    right = conj(D(heard, Box(pattern, other, phi)) for other in pattern.graphs if group_view_equal(other, graph, group))
    return Iff(Box(pattern, graph, D(group, phi)), right)


def invalid_controls(agents):
    """Formulas that must have counterexamples: K_a p_b | K_a ~p_b, and D_B p <-> p for B ⊂ A."""
    a, b = agents[0], agents[1]
    pb = Atom(LocalAtom("p", b))
    return [
        ("K_a p_b | K_a ~p_b", Or(K(a, pb), K(a, Not(pb)))),
        ("D_B phi <-> phi, B < A", Iff(D(frozenset([a]), pb), pb)),
    ]


def all_pointed_patterns(agents):
    """Every nonempty set of graphs over ``agents`` with each member as the point."""
    graphs = list(iter_full_async(agents))
    for r in range(1, len(graphs) + 1):
        for combo in itertools.combinations(graphs, r):
            pat = CommPattern(tuple(agents), frozenset(combo))
            for g in pat.graphs:
                yield pat, g


def _instances(rng, signature, pointed, n_formulas=2, boxes=1):
    """Map schema name to a list of instances over ``signature``."""
    agents = signature.agents
    groups = nonempty_groups(agents)

    def f():
        return random_formula(rng, signature, depth=2, max_boxes=boxes)

    out = {name: [] for name in AXIOMS}
    out["P"] = [x for _ in range(n_formulas) for x in axiom_p(f(), f(), f())]
    out["L"] = [axiom_l(p) for p in sorted(signature.atoms)]
    for g in groups:
        for _ in range(n_formulas):
            phi, psi = f(), f()
            out["K^D"].append(axiom_k(g, phi, psi))
            out["T^D"].append(axiom_t(g, phi))
            out["4^D"].append(axiom_4(g, phi))
            out["5^D"].append(axiom_5(g, psi))
    for small, big in itertools.product(groups, repeat=2):
        if small <= big:
            out["W"].append(axiom_w(small, big, f()))
    for pat, g in pointed:
        for p in sorted(signature.atoms):
            out["C1"].append(axiom_c1(pat, g, p))
        phi, psi = f(), f()
        out["C2"].append(axiom_c2(pat, g, phi))
        out["C3"].append(axiom_c3(pat, g, phi, psi))
        for grp in groups:
            out["C4"].append(axiom_c4(pat, g, grp, f()))
    return out


def _rule_instances(rng, signature, premises, pointed):
    """Conclusions of N^D, N[] and RE drawn from valid premises."""
    out = {"N^D": [], "N[]": [], "RE": []}
    groups = nonempty_groups(signature.agents)
    atoms = sorted(signature.atoms)
    for k, phi in enumerate(premises):
        out["N^D"].append(D(groups[k % len(groups)], phi))
        pat, g = pointed[k % len(pointed)]
        out["N[]"].append(Box(pat, g, phi))
    # RE: phi <-> reduce(phi) is valid, so chi[phi/p] <-> chi[reduce(phi)/p] must be
    for _ in range(len(premises)):
        chi = random_formula(rng, signature, depth=2, max_boxes=1)
        target = rng.choice(sorted(atoms_of(chi)))
        pat, g = rng.choice(pointed)
        phi = Box(pat, g, random_formula(rng, signature, depth=2, max_boxes=0))
        out["RE"].append(Iff(substitute(chi, target, phi), substitute(chi, target, reduce_formula(phi))))
    return out


def _check_models(models, schemas, results):
    for model in models:
        ev = evaluator_for(model)
        for name, formulas in schemas.items():
            res = results[name]
            if res.counterexample is not None:
                continue
            for phi in formulas:
                bad = ev.full & ~ev.extension(phi)
                if bad:
                    i = (bad & -bad).bit_length() - 1
                    points = getattr(model, "worlds", None) or model.facets
                    res.counterexample = (model, points[i], phi)
                    break


def run_axiom_suite(seed=0, trials=1000, semantics=(KRIPKE, SIMPLICIAL), max_worlds=4, max_agents=3) -> SuiteReport:
    """Falsify every axiom and rule instance; controls must be falsified."""
    rng = random.Random(seed)
    sig = Signature.make(["a", "b"], [LocalAtom("p", "a"), LocalAtom("p", "b")])
    pointed = list(all_pointed_patterns(sig.agents))
    schemas = _instances(rng, sig, pointed)
    premises = [phi for name in ("T^D", "C2", "C4", "L") for phi in schemas[name][:4]]
    rules = _rule_instances(rng, sig, premises, pointed)
    every = {**schemas, **rules}
    results = {name: SchemaResult(name, instances=len(fs)) for name, fs in every.items()}

    enums = {KRIPKE: enumerate_models, SIMPLICIAL: enumerate_simplicial}
    for sem in semantics:
        for sub in (Signature.make(["a"], [LocalAtom("p", "a")]), sig):
            usable = {n: [f for f in fs if _fits(f, sub)] for n, fs in every.items()}
            _check_models(enums[sem](sub), usable, results)

    for sem in semantics:
        for _ in range(trials):
            sub = random_signature(rng, max_agents=max_agents, atoms_per_agent=1)
            pts = [(p, rng.choice(p.graphs)) for p in (random_pattern(rng, sub.agents) for _ in range(3))]
            fresh = _instances(rng, sub, pts, n_formulas=1)
            if sem == KRIPKE:
                model = random_model(rng, sub, max_worlds)
            else:
                model = random_simplicial(rng, sub, max_worlds)
            for name, fs in fresh.items():
                results[name].instances += len(fs)
            _check_models([model], fresh, results)

    report = SuiteReport([results[n] for n in AXIOMS + RULES])
    core = Bounds(max_worlds=3, max_agents=2, atoms_per_agent=1, trials=0)
    for label, phi in invalid_controls(list(sig.agents)):
        for sem in semantics:
            found = search_counterexample(phi, core, semantics=sem)
            report.results.append(SchemaResult(f"control ({sem}): {label}", 1, found, expect_valid=False))
    return report


def _fits(phi, signature) -> bool:
    return agents_of(phi) <= set(signature.agents) and all(
        p.agents == signature.agents for p in patterns_of(phi)
    ) and atoms_of(phi) <= signature.atoms
