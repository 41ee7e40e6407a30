import random

import pytest
from hypothesis import given, strategies as st

from acyclic_matching import Graph, MatchingKind, NotTwoP3FreeError, ValidationError
from acyclic_matching.generators import (
    cycle_graph,
    disjoint_union,
    path_graph,
    random_2p3free,
    random_weights,
    star_graph,
)
from acyclic_matching.graph import is_kind_matching, matched_subgraph, matching_weight
from acyclic_matching.oracles import enumerate_kind_matchings, max_restricted_matching
from acyclic_matching.twop3 import (
    ShapeClass,
    classify_component,
    mwam_2p3free,
    mwam_2p3free_explained,
    mwim,
)

# x=0 x'=1 y1=2 y1'=3 y2=4 y2'=5
SPIDER_EDGES = [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5)]
SPIDER_M = [(0, 1), (2, 3), (4, 5)]


def spider(k: int) -> tuple[Graph, list]:
    edges, m = [(0, 1)], [(0, 1)]
    for i in range(k):
        y, y2 = 2 + 2 * i, 3 + 2 * i
        edges += [(0, y), (y, y2)]
        m.append((y, y2))
    return Graph(2 + 2 * k, edges), m


def double_spider_iii(k: int, l: int) -> tuple[Graph, list]:
    edges, m, nxt = [(0, 1)], [(0, 1)], 2
    for hub, count in ((0, k), (1, l)):
        for _ in range(count):
            edges += [(hub, nxt), (nxt, nxt + 1)]
            m.append((nxt, nxt + 1))
            nxt += 2
    return Graph(nxt, edges), m


def double_spider_iv(k: int, l: int) -> tuple[Graph, list]:
    # x=0 y=1 x'=2 y'=3
    edges, m, nxt = [(0, 1), (0, 2), (1, 3)], [(0, 2), (1, 3)], 4
    for hub, count in ((0, k), (1, l)):
        for _ in range(count):
            edges += [(hub, nxt), (nxt, nxt + 1)]
            m.append((nxt, nxt + 1))
            nxt += 2
    return Graph(nxt, edges), m


class TestClassify:
    def test_k2(self):
        assert classify_component(path_graph(2), [(0, 1)]) == ShapeClass("K2")

    def test_p4(self):
        assert classify_component(path_graph(4), [(0, 1), (2, 3)]) == ShapeClass("P4")

    def test_spider_with_two_legs(self):
        assert classify_component(Graph(6, SPIDER_EDGES), SPIDER_M) == ShapeClass("spider", 2)

    def test_triangle_has_no_perfect_matching(self):
        with pytest.raises(ValidationError):
            classify_component(cycle_graph(3), [(0, 1)])

    def test_disconnected_rejected(self):
        with pytest.raises(ValidationError):
            classify_component(Graph(4, [(0, 1), (2, 3)]), [(0, 1), (2, 3)])

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_spiders(self, k):
        assert classify_component(*spider(k)) == ShapeClass("spider", k)

    @pytest.mark.parametrize("k, l", [(1, 1), (1, 2), (3, 1), (2, 2)])
    def test_double_spiders(self, k, l):
        lo, hi = sorted((k, l))
        assert classify_component(*double_spider_iii(k, l)) == ShapeClass("double-spider-iii", lo, hi)
        assert classify_component(*double_spider_iv(k, l)) == ShapeClass("double-spider-iv", lo, hi)

    def test_invalid_shapes(self):
        assert not classify_component(path_graph(8), [(0, 1), (2, 3), (4, 5), (6, 7)]).valid
        assert not classify_component(cycle_graph(4), [(0, 1), (2, 3)]).valid
        # one leg only: the tree is a P4
        g, m = spider(1)
        assert classify_component(g, m) == ShapeClass("P4")
        # a leg of length two is not a pendant P2
        g = Graph(8, [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 7)])
        assert not classify_component(g, [(0, 1), (2, 3), (4, 5), (6, 7)]).valid


class TestMwim:
    def test_c6(self):
        assert mwim(cycle_graph(6)).value == 2

    def test_p4(self):
        assert mwim(path_graph(4)).value == 1

    def test_negative_edge_dropped(self):
        res = mwim(Graph(2, [(0, 1)], {(0, 1): -1}))
        assert res.value == 0 and res.witness == ()

    def test_custom_backend_is_used(self):
        calls = []

        def backend(g):
            calls.append(g.n)
            return max_restricted_matching(g, MatchingKind.INDUCED, weighted=True, guard=None)

        assert mwam_2p3free(Graph(6, SPIDER_EDGES), backend).value == 3
        assert calls


class TestSolver:
    def test_spider_host_beats_induced(self):
        g = Graph(6, SPIDER_EDGES)
        assert mwim(g).value == 2
        res, winner = mwam_2p3free_explained(g)
        assert res.value == 3 and res.witness == tuple(SPIDER_M)
        assert winner == "type3"

    def test_claw(self):
        assert mwam_2p3free(star_graph(3)).value == 1

    def test_edgeless(self):
        res = mwam_2p3free(Graph(5))
        assert res.value == 0 and res.witness == ()

    def test_rejects_two_p3(self):
        with pytest.raises(NotTwoP3FreeError) as info:
            mwam_2p3free(disjoint_union(path_graph(3), path_graph(3)))
        assert info.value.witness == (0, 1, 2, 3, 4, 5)

    @pytest.mark.parametrize(
        "g, winner",
        [
            (path_graph(4), "type2"),
            (double_spider_iii(1, 1)[0], "type4"),
            (double_spider_iv(1, 1)[0], "type5"),
        ],
    )
    def test_each_shape_family_is_reachable(self, g, winner):
        res, got = mwam_2p3free_explained(g)
        assert got == winner
        assert res.value == max_restricted_matching(g, MatchingKind.ACYCLIC).value == g.n // 2

    @given(st.integers(4, 10), st.sampled_from([0.2, 0.3, 0.5, 0.8]), st.integers(0, 2**32))
    def test_equals_weighted_oracle(self, n, p, seed):
        rng = random.Random(seed)
        g = random_weights(rng, random_2p3free(rng, n, p), 1, 9)
        res = mwam_2p3free(g)
        assert res.value == max_restricted_matching(g, MatchingKind.ACYCLIC, weighted=True).value
        assert res.value == matching_weight(g, res.witness)
        assert is_kind_matching(g, res.witness, MatchingKind.ACYCLIC)

    @given(st.integers(4, 9), st.integers(0, 2**32))
    def test_matched_subgraph_shapes(self, n, seed):
        g = random_2p3free(random.Random(seed), n, 0.4)
        for m in enumerate_kind_matchings(g, MatchingKind.ACYCLIC):
            sub, labels = matched_subgraph(g, m)
            index = {v: i for i, v in enumerate(labels)}
            local = [(index[u], index[v]) for u, v in m]
            big = [c for c in sub.components() if len(c) > 2]
            assert len(big) <= 1
            for comp in big:
                t, tl = sub.induced_subgraph(comp)
                back = {v: i for i, v in enumerate(tl)}
                assert classify_component(t, [(back[u], back[v]) for u, v in local if u in back]).valid
