"""Desk-scale acceptance suites.

Every suite is seeded and returns a JSON-serializable dict with a
``passed`` flag; no timings or other run-dependent data go into the
report, so two runs produce byte-identical output.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from itertools import combinations
from typing import Callable

from .characterization import every_max_matching_acyclic, every_max_matching_induced
from .cograph import mwam_p4free
from .generators import (
    gnp,
    random_2p3free,
    random_cograph,
    random_restricted_formula,
    random_weights,
)
from .graph import Graph, MatchingKind, is_kind_matching, matched_subgraph
from .oracles import (
    enumerate_kind_matchings,
    every_maximum_matching_is,
    matching_numbers,
    max_restricted_matching,
    maximum_matching,
)
from .reduction import (
    CnfFormula,
    assignment_to_matching,
    build_reduction,
    canonical_matching,
    decide_via_assignments,
    truth_table_satisfiable,
    verify_instance,
)
from .errors import VerificationError
from .twop3 import classify_component, mwam_2p3free_explained

SCHEMA = "acyclic-matching/selftest/1"
MAX_FAILURES = 5

DENSITIES = (0.15, 0.3, 0.5, 0.7, 0.9)
TWOP3_DENSITIES = (0.15, 0.2, 0.3, 0.5, 0.7, 0.85)

UNSAT_2VAR = CnfFormula.of(2, [[1, 2], [-1, 2], [1, -2], [-1, -2]])


def _report(ident: int, name: str, checked: int, failures: list, **details) -> dict:
    return {
        "id": ident,
        "name": name,
        "passed": not failures,
        "checked": checked,
        "failures": failures[:MAX_FAILURES],
        "n_failures": len(failures),
        **details,
    }


def chain_inequality(count: int = 1000, seed: int = 1) -> dict:
    rng = random.Random(seed)
    failures = []
    for k in range(count):
        g = gnp(rng, rng.randint(1, 12), rng.choice(DENSITIES))
        nums = matching_numbers(g)
        if not nums["induced"] <= nums["acyclic"] <= nums["unique"] <= nums["matching"]:
            failures.append({"graph": repr(g), "numbers": nums})
    return _report(1, "chain nu_s <= nu_ac <= nu_ur <= nu", count, failures)


def cograph_solver(count: int = 200, seed: int = 2) -> dict:
    rng = random.Random(seed)
    failures = []
    for _ in range(count):
        g = random_weights(rng, random_cograph(rng, rng.randint(1, 12)), -3, 9)
        got = mwam_p4free(g)
        want = max_restricted_matching(g, MatchingKind.ACYCLIC, weighted=True).value
        if got.value != want or not is_kind_matching(g, got.witness, MatchingKind.ACYCLIC):
            failures.append({"graph": repr(g), "solver": got.value, "oracle": want})
    return _report(2, "P4-free solver equals weighted oracle", count, failures)


def twop3_solver(count: int = 200, seed: int = 3) -> dict:
    rng = random.Random(seed)
    failures = []
    winners: Counter[str] = Counter()
    for _ in range(count):
        g = random_2p3free(rng, rng.randint(4, 11), rng.choice(TWOP3_DENSITIES))
        g = random_weights(rng, g, 1, 9)
        res, winner = mwam_2p3free_explained(g)
        value, witness = res.value, res.witness
        winners[winner or "empty"] += 1
        want = max_restricted_matching(g, MatchingKind.ACYCLIC, weighted=True).value
        if value != want or not is_kind_matching(g, witness, MatchingKind.ACYCLIC):
            failures.append({"graph": repr(g), "solver": value, "oracle": want})
    return _report(
        3, "2P3-free solver equals weighted oracle", count, failures,
        winning_candidate_types=dict(sorted(winners.items())),
    )


def component_shapes(count: int = 60, seed: int = 4) -> dict:
    rng = random.Random(seed)
    failures = []
    shapes: Counter[str] = Counter()
    matchings = 0
    for _ in range(count):
        g = random_2p3free(rng, rng.randint(4, 10), rng.choice(TWOP3_DENSITIES))
        for m in enumerate_kind_matchings(g, MatchingKind.ACYCLIC):
            matchings += 1
            sub, labels = matched_subgraph(g, m)
            index = {v: i for i, v in enumerate(labels)}
            local = [(index[u], index[v]) for u, v in m]
            big = [c for c in sub.components() if len(c) > 2]
            if len(big) > 1:
                failures.append({"graph": repr(g), "matching": m, "problem": "two non-K2 components"})
                continue
            for comp in big:
                t, tl = sub.induced_subgraph(comp)
                back = {v: i for i, v in enumerate(tl)}
                shape = classify_component(t, [(back[u], back[v]) for u, v in local if u in back])
                shapes[shape.name] += 1
                if not shape.valid:
                    failures.append({"graph": repr(g), "matching": m, "problem": "invalid shape"})
    return _report(
        4, "G(M) component shapes on 2P3-free graphs", count, failures,
        acyclic_matchings=matchings, shapes=dict(sorted(shapes.items())),
    )


def all_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph(n, [p for k, p in enumerate(pairs) if bits >> k & 1])


def characterization(max_n: int = 6, random_count: int = 2000, seed: int = 5) -> dict:
    rng = random.Random(seed)
    failures = []
    graphs = (g for n in range(max_n + 1) for g in all_graphs(n))
    checked = 0

    def check(g: Graph) -> None:
        for kind, recognizer in (
            (MatchingKind.ACYCLIC, every_max_matching_acyclic),
            (MatchingKind.INDUCED, every_max_matching_induced),
        ):
            if recognizer(g) != every_maximum_matching_is(g, kind):
                failures.append({"graph": repr(g), "kind": kind.value})

    for g in graphs:
        check(g)
        checked += 1
    for _ in range(random_count):
        check(gnp(rng, rng.choice((7, 8)), rng.choice(DENSITIES)))
        checked += 1
    return _report(5, "recognizers agree with enumeration", checked, failures)


def _formulas(rng: random.Random, count: int, max_vars: int = 5) -> list[CnfFormula]:
    out = []
    while len(out) < count:
        nv = rng.randint(1, max_vars)
        nc = 0 if nv == 1 else rng.randint(1, min(2 * nv, 6))
        out.append(random_restricted_formula(rng, nv, nc))
    return out


def reduction_structure(count: int = 25, seed: int = 6) -> dict:
    rng = random.Random(seed)
    failures = []
    for f in _formulas(rng, count):
        try:
            verify_instance(build_reduction(f))
        except VerificationError as exc:
            failures.append({"formula": [list(c) for c in f.clauses], "claim": exc.claim})
    return _report(6, "reduction instances are bipartite, max degree 4, nu = |A|", count, failures)


def forward_direction(count: int = 12, seed: int = 7) -> dict:
    rng = random.Random(seed)
    failures = []
    found = 0
    while found < count:
        f = _formulas(rng, 1)[0]
        assignment = truth_table_satisfiable(f)
        if assignment is None:
            continue
        found += 1
        inst = build_reduction(f)
        m = assignment_to_matching(inst, assignment)
        ok = (
            len(m) == len(inst.side_a) == maximum_matching(inst.graph).value
            and is_kind_matching(inst.graph, m, MatchingKind.ACYCLIC)
            and decide_via_assignments(inst)
        )
        if not ok:
            failures.append({"formula": [list(c) for c in f.clauses]})
    return _report(7, "satisfying assignments give acyclic maximum matchings", count, failures)


SINGLE_CLAUSES = (
    CnfFormula.of(2, [[1, 2]]),
    CnfFormula.of(2, [[1, -2]]),
    CnfFormula.of(2, [[-1, 2]]),
    CnfFormula.of(2, [[-1, -2]]),
    CnfFormula.of(3, [[1, 2, 3]]),
    CnfFormula.of(3, [[1, -2, -3]]),
    CnfFormula.of(3, [[-1, -2, -3]]),
)

SMALL_EXTRA = (
    CnfFormula.of(2, [[1, 2], [-1, -2]]),
    UNSAT_2VAR,
)


def reverse_direction() -> dict:
    failures = []
    if decide_via_assignments(build_reduction(UNSAT_2VAR)):
        failures.append({"formula": "unsat 2-variable", "problem": "assignment sweep found an acyclic matching"})
    rows = []
    for f in SINGLE_CLAUSES + SMALL_EXTRA:
        g = build_reduction(f).graph
        nu = maximum_matching(g).value
        nu_ac = max_restricted_matching(g, MatchingKind.ACYCLIC, guard=None).value
        sat = truth_table_satisfiable(f) is not None
        rows.append({"formula": [list(c) for c in f.clauses], "nu": nu, "nu_ac": nu_ac, "satisfiable": sat})
        if (nu_ac == nu) != sat:
            failures.append(rows[-1])
    return _report(8, "nu_ac = nu exactly for satisfiable formulas (exact oracle)", len(rows) + 1, failures, instances=rows)


def uniquely_restricted(count: int = 25, seed: int = 6) -> dict:
    rng = random.Random(seed)
    failures = []
    for f in _formulas(rng, count):
        inst = build_reduction(f)
        if not is_kind_matching(inst.graph, canonical_matching(inst), MatchingKind.UNIQUELY_RESTRICTED):
            failures.append({"formula": [list(c) for c in f.clauses]})
    return _report(9, "canonical maximum matching is uniquely restricted", count, failures)


SUITES: tuple[Callable[[], dict], ...] = (
    chain_inequality,
    cograph_solver,
    twop3_solver,
    component_shapes,
    characterization,
    reduction_structure,
    forward_direction,
    reverse_direction,
    uniquely_restricted,
)


def run_all(progress: Callable[[dict], None] | None = None) -> dict:
    results = []
    for suite in SUITES:
        res = suite()
        results.append(res)
        if progress:
            progress(res)
    return {"schema": SCHEMA, "passed": all(r["passed"] for r in results), "criteria": results}


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
