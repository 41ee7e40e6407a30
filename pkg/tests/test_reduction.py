import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from acyclic_matching import MatchingKind, ValidationError, VerificationError
from acyclic_matching.generators import random_restricted_formula
from acyclic_matching.graph import Graph, is_bipartite, is_kind_matching
from acyclic_matching.oracles import max_restricted_matching, maximum_matching
from acyclic_matching.reduction import (
    GADGET_CYCLES,
    CnfFormula,
    Verdict,
    assignment_to_matching,
    build_gadget,
    build_reduction,
    canonical_matching,
    decide_via_assignments,
    find_acyclic_assignment,
    normalize_cnf,
    truth_table_satisfiable,
    verify_instance,
)

XOR = CnfFormula.of(2, [[1, 2], [-1, -2]])
UNSAT = CnfFormula.of(2, [[1, 2], [-1, 2], [1, -2], [-1, -2]])
SINGLE = CnfFormula.of(1, [])


def labeled_graph(i: int):
    names, edges = build_gadget(i)
    index = {name: k for k, name in enumerate(names)}
    return names, Graph(len(names), [(index[a], index[b]) for a, b in edges]), index


class TestGadget:
    def test_counts(self):
        names, g, _ = labeled_graph(1)
        assert g.n == 32 and g.m == 38
        assert sum(1 for v in range(g.n) if g.degree(v) == 1) == 10
        leaves = {names[v] for v in range(g.n) if g.degree(v) == 1}
        assert leaves == {f"z(1,{j})" for j in range(1, 9)} | {"x(1,1)", "x(1,2)"}

    def test_role_order(self):
        names, _, _ = labeled_graph(3)
        assert names[:6] == ["u(3,1)", "u(3,2)", "u(3,3)", "u(3,4)", "w(3,1)", "w(3,2)"]
        assert names[-1] == "f(3,4)"

    @pytest.mark.parametrize(
        "cycle",
        [
            "u(2,1) t(2,1) y(2,1) f(2,2) u(2,2) w(2,1)",
            "u(2,2) t(2,2) y(2,5) f(2,3) u(2,3) w(2,2) u(2,4) f(2,4) y(2,7) t(2,1) u(2,1) w(2,1)",
            "f(2,1) y(2,2) t(2,2) u(2,2) w(2,1) u(2,1)",
        ],
    )
    def test_contains_cycle(self, cycle):
        _, g, index = labeled_graph(2)
        ids = [index[name] for name in cycle.split()]
        assert len(set(ids)) == len(ids)
        assert all(g.has_edge(ids[k], ids[(k + 1) % len(ids)]) for k in range(len(ids)))

    def test_cycle_constants_match_examples(self):
        assert len(GADGET_CYCLES) == 3 and [len(c) for c in GADGET_CYCLES] == [6, 12, 6]

    def test_gadget_is_bipartite_with_max_degree_four(self):
        _, g, index = labeled_graph(1)
        assert is_bipartite(g) is not None and g.max_degree() <= 4


class TestNormalize:
    def test_unit_then_pure(self):
        res = normalize_cnf(CnfFormula.of(2, [[1], [-1, 2]]))
        assert isinstance(res, Verdict) and res.satisfiable

    def test_tautology_alone(self):
        res = normalize_cnf(CnfFormula.of(2, [[1, -1, 2]]))
        assert isinstance(res, Verdict) and res.satisfiable

    def test_restricted_formula_unchanged(self):
        assert normalize_cnf(XOR) == XOR

    def test_empty_clause_is_unsat(self):
        res = normalize_cnf(CnfFormula.of(1, [[1], [-1]]))
        assert isinstance(res, Verdict) and not res.satisfiable

    def test_renumbering_keeps_origin(self):
        f = CnfFormula.of(4, [[2, 4], [-2, -4], [1, 3]])
        out = normalize_cnf(f)
        assert out == XOR and out.var_origin == (2, 4)

    @given(st.integers(1, 5), st.integers(0, 6), st.integers(0, 2**32))
    def test_preserves_satisfiability(self, nv, nc, seed):
        rng = random.Random(seed)
        clauses = [
            [rng.choice((1, -1)) * rng.randint(1, nv) for _ in range(rng.randint(1, 3))] for _ in range(nc)
        ]
        f = CnfFormula.of(nv, clauses)
        res = normalize_cnf(f)
        sat = truth_table_satisfiable(f) is not None
        if isinstance(res, Verdict):
            assert res.satisfiable == sat
        else:
            assert (truth_table_satisfiable(res) is not None) == sat


class TestBuild:
    def test_xor_instance(self):
        inst = build_reduction(XOR)
        g = inst.graph
        assert g.n == 72 and is_bipartite(g) is not None and g.max_degree() <= 4
        assert len(inst.side_a) == 14 * 2 + 4

    def test_empty_formula(self):
        inst = build_reduction(CnfFormula.of(0, []))
        assert inst.graph.n == 0 and inst.side_a == frozenset()

    def test_rejects_unrestricted(self):
        with pytest.raises(ValidationError):
            build_reduction(CnfFormula.of(2, [[1]]))
        with pytest.raises(ValidationError):
            build_reduction(CnfFormula.of(3, [[1, 2], [1, 3], [1, -2]]))

    @given(st.integers(1, 5), st.integers(0, 2**32))
    @settings(max_examples=60)
    def test_sizes_and_sides(self, nv, seed):
        rng = random.Random(seed)
        f = random_restricted_formula(rng, nv, rng.randint(1, min(2 * nv, 6)) if nv > 1 else 0)
        inst = build_reduction(f)
        literals = sum(len(c) for c in f.clauses)
        assert inst.graph.n == 32 * nv + 2 * literals <= 32 * nv + 6 * f.num_clauses
        assert len(inst.side_a) == 14 * nv + literals
        for i in range(1, nv + 1):
            for role, count in (("u", 4), ("w", 2), ("x", 2), ("y", 8), ("z", 8), ("t", 4), ("f", 4)):
                for j in range(1, count + 1):
                    assert (inst.role(role, i, j) in inst.side_a) == (role in "uxy")
        for r, clause in enumerate(f.clauses, 1):
            for lit in clause:
                name = (f"x{lit}" if lit > 0 else f"~x{-lit}") + f"({r},1)"
                assert inst.vertex(name) in inst.side_a
        report = verify_instance(inst)
        assert report["matching_number"] == report["size_A"]

    def test_vertex_numbering(self):
        inst = build_reduction(XOR)
        assert inst.role("u", 1, 1) == 0 and inst.role("f", 2, 4) == 63
        assert inst.vertex("x1(1,1)") == 64 and inst.vertex("~x2(2,2)") == 71


class TestVerify:
    def test_xor_report(self):
        report = verify_instance(build_reduction(XOR))
        assert report["matching_number"] == report["size_A"] == 32
        assert all(report["checks"].values())

    def test_single_gadget(self):
        assert verify_instance(build_reduction(SINGLE))["matching_number"] == 14

    def test_corrupted_instance_fails(self):
        inst = build_reduction(XOR)
        a, b = inst.role("y", 1, 1), inst.role("t", 1, 1)
        broken = inst.with_graph(inst.graph.without_edges([(min(a, b), max(a, b))]))
        with pytest.raises(VerificationError) as info:
            verify_instance(broken)
        assert info.value.claim == "gadget.counts"

    def test_wrong_sides_fail(self):
        inst = build_reduction(XOR)
        swapped = type(inst)(inst.graph, inst.side_b, inst.side_a, inst.labels, inst.formula)
        with pytest.raises(VerificationError) as info:
            verify_instance(swapped)
        assert info.value.claim == "sides"

    def test_canonical_matching_is_uniquely_restricted(self):
        inst = build_reduction(XOR)
        m = canonical_matching(inst)
        assert len(m) == 32 and is_kind_matching(inst.graph, m, MatchingKind.UNIQUELY_RESTRICTED)


class TestAssignments:
    def test_every_assignment_gives_a_maximum_matching(self):
        inst = build_reduction(XOR)
        for bits in product((False, True), repeat=2):
            m = assignment_to_matching(inst, bits)
            assert len(m) == 32 and is_kind_matching(inst.graph, m, MatchingKind.UNRESTRICTED)
            assert is_kind_matching(inst.graph, m, MatchingKind.ACYCLIC) == XOR.evaluate(bits)

    def test_satisfying_assignment_is_acyclic(self):
        inst = build_reduction(XOR)
        assert is_kind_matching(inst.graph, assignment_to_matching(inst, (True, False)), MatchingKind.ACYCLIC)

    def test_falsified_two_clause_is_cyclic(self):
        f = CnfFormula.of(2, [[1, 2], [-1, -2]])
        inst = build_reduction(f)
        assert not is_kind_matching(inst.graph, assignment_to_matching(inst, (False, False)), MatchingKind.ACYCLIC)

    def test_single_gadget(self):
        inst = build_reduction(SINGLE)
        m = assignment_to_matching(inst, (True,))
        assert len(m) == 14 and is_kind_matching(inst.graph, m, MatchingKind.ACYCLIC)
        assert decide_via_assignments(inst)

    def test_decide_examples(self):
        assert decide_via_assignments(build_reduction(XOR))
        assert not decide_via_assignments(build_reduction(UNSAT))

    def test_wrong_length_rejected(self):
        with pytest.raises(ValidationError):
            assignment_to_matching(build_reduction(XOR), (True,))

    @given(st.integers(2, 8), st.integers(0, 2**32))
    @settings(max_examples=40)
    def test_decide_equals_truth_table(self, nv, seed):
        rng = random.Random(seed)
        f = random_restricted_formula(rng, nv, rng.randint(1, min(2 * nv, 8)))
        inst = build_reduction(f)
        found = find_acyclic_assignment(inst)
        assert (found is not None) == (truth_table_satisfiable(f) is not None)
        if found is not None:
            assert f.evaluate(found)


class TestExactOracle:
    @pytest.mark.parametrize(
        "f",
        [
            CnfFormula.of(2, [[1, 2]]),
            CnfFormula.of(2, [[-1, 2]]),
            CnfFormula.of(3, [[1, -2, 3]]),
            XOR,
            UNSAT,
        ],
        ids=["pos2", "mixed2", "mixed3", "xor", "unsat"],
    )
    def test_acyclic_number_matches_satisfiability(self, f):
        g = build_reduction(f).graph
        nu = maximum_matching(g).value
        nu_ac = max_restricted_matching(g, MatchingKind.ACYCLIC, guard=None).value
        assert (nu_ac == nu) == (truth_table_satisfiable(f) is not None)
        assert nu_ac <= nu
