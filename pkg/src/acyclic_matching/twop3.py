"""Maximum weight acyclic matching on 2P3-free graphs.

For an acyclic matching ``M`` of a 2P3-free graph, G(M) has at most one
component other than K2, and that component is a P4 or one of three spider
shapes (see :func:`classify_component`).  The solver seeds each shape with a
constant number of vertices, removes everything the seed forbids, and fills
the rest with a maximum weight induced matching in which edges between two
hub neighbors are reweighted to -1 (so they are never chosen).

The induced matching subroutine is pluggable; the default is the exact
exhaustive oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import NotTwoP3FreeError, ValidationError
from .graph import (
    Edge,
    Graph,
    MatchingKind,
    edge_key,
    find_2p3,
    is_kind_matching,
    normalize_matching,
)
from .oracles import SolveResult, max_restricted_matching

MwimBackend = Callable[[Graph], SolveResult]

SENTINEL = -1


@dataclass(frozen=True)
class ShapeClass:
    """Label of the non-K2 component of G(M).

    ``name`` is one of ``K2``, ``P4``, ``spider`` (one hub, ``k >= 2``
    pendant P2s), ``double-spider-iii`` (hub edge in M, ``k`` legs on one
    end and ``l`` on the other), ``double-spider-iv`` (hub edge not in M)
    or ``invalid``.  Leg counts are reported with ``k <= l``.
    """

    name: str
    k: int = 0
    l: int = 0

    @property
    def valid(self) -> bool:
        return self.name != "invalid"


K2 = ShapeClass("K2")
P4_SHAPE = ShapeClass("P4")
INVALID = ShapeClass("invalid")

# candidate families, in the order they are tried
TYPE1_INDUCED, TYPE2_P4, TYPE3, TYPE4, TYPE5 = "type1", "type2", "type3", "type4", "type5"


def _legs(t: Graph, mate: dict[int, int], hub: int, skip: set[int]) -> list[tuple[int, int]] | None:
    """Pendant P2s hanging off ``hub``: neighbors (other than ``skip``) of
    degree 2 whose partner is a leaf.  ``None`` if any neighbor fails."""
    legs = []
    for y in t.neighbors(hub):
        if y in skip:
            continue
        y2 = mate[y]
        if t.degree(y) != 2 or t.degree(y2) != 1 or not t.has_edge(y, y2):
            return None
        legs.append((y, y2))
    return legs


def classify_component(t: Graph, m_edges: Sequence[Sequence[int]]) -> ShapeClass:
    """Match a tree with a perfect matching against the allowed shapes.

    The shape is accepted only if the edge set it generates equals
    ``E(t)`` exactly.
    """
    edges = normalize_matching(t, m_edges)
    if t.n == 0 or not t.is_connected():
        raise ValidationError("component must be a nonempty connected graph")
    if 2 * len(edges) != t.n:
        raise ValidationError("matching is not a perfect matching of the component")
    mate = {}
    for u, v in edges:
        mate[u], mate[v] = v, u
    actual = set(t.edges)
    if t.n == 2:
        return K2
    if t.m != t.n - 1:
        return INVALID
    if t.n == 4:
        return P4_SHAPE

    found: list[ShapeClass] = []
    for x, xp in edges:
        for a, b in ((x, xp), (xp, x)):
            # (ii): hub a, leaf partner b, k >= 2 legs
            if t.degree(b) == 1:
                legs = _legs(t, mate, a, {b})
                if legs is not None and len(legs) >= 2:
                    expected = {edge_key(a, b)}
                    for y, y2 in legs:
                        expected |= {edge_key(a, y), edge_key(y, y2)}
                    if expected == actual:
                        found.append(ShapeClass("spider", len(legs)))
        # (iii): legs on both ends of the matched hub edge
        left = _legs(t, mate, x, {xp})
        right = _legs(t, mate, xp, {x})
        if left and right:
            expected = {edge_key(x, xp)}
            for hub, legs in ((x, left), (xp, right)):
                for y, y2 in legs:
                    expected |= {edge_key(hub, y), edge_key(y, y2)}
            if expected == actual:
                k, l = sorted((len(left), len(right)))
                found.append(ShapeClass("double-spider-iii", k, l))
    # (iv): hub edge xy outside M, both hubs matched to leaves
    for x, y in t.edges:
        if mate[x] == y:
            continue
        xp, yp = mate[x], mate[y]
        if t.degree(xp) != 1 or t.degree(yp) != 1:
            continue
        left = _legs(t, mate, x, {xp, y})
        right = _legs(t, mate, y, {yp, x})
        if left and right:
            expected = {edge_key(x, y), edge_key(x, xp), edge_key(y, yp)}
            for hub, legs in ((x, left), (y, right)):
                for w, w2 in legs:
                    expected |= {edge_key(hub, w), edge_key(w, w2)}
            if expected == actual:
                k, l = sorted((len(left), len(right)))
                found.append(ShapeClass("double-spider-iv", k, l))
    if not found:
        return INVALID
    assert len(set(found)) == 1, f"ambiguous shape {found}"
    return found[0]


def default_mwim(g: Graph) -> SolveResult:
    return max_restricted_matching(g, MatchingKind.INDUCED, weighted=True, guard=None)


def mwim(g: Graph, backend: MwimBackend | None = None) -> SolveResult:
    """Maximum weight induced matching via the configured backend."""
    result = (backend or default_mwim)(g)
    witness = tuple(e for e in result.witness if g.weight(*e) > 0)
    return SolveResult(sum(g.weight(*e) for e in witness), witness, MatchingKind.INDUCED)


def _embeddings(g: Graph, parents: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Ordered vertex tuples inducing the rooted tree given by ``parents``.

    ``parents[i]`` is the index of the pattern vertex adjacent to vertex
    ``i`` (``-1`` for the root); parents precede children.  Each new vertex
    must be adjacent to its parent and to no other chosen vertex.
    """
    masks = g.masks()
    k = len(parents)
    chosen: list[int] = []

    def extend(used: int) -> Iterator[tuple[int, ...]]:
        i = len(chosen)
        if i == k:
            yield tuple(chosen)
            return
        if parents[i] < 0:
            pool = ((1 << g.n) - 1) & ~used
        else:
            others = 0
            for j, c in enumerate(chosen):
                if j != parents[i]:
                    others |= masks[c]
            pool = masks[chosen[parents[i]]] & ~used & ~others
        while pool:
            low = pool & -pool
            pool ^= low
            chosen.append(low.bit_length() - 1)
            yield from extend(used | low)
            chosen.pop()

    yield from extend(0)


# (parents, symmetry filter) per seeded family; tuples use pattern order
_P4 = ((-1, 0, 1, 2), lambda s: s[0] < s[3])  # a b c d
_SPIDER = ((-1, 0, 0, 2, 0, 4), lambda s: s[2] < s[4])  # x x' y1 y1' y2 y2'
_DOUBLE_III = ((-1, 0, 0, 2, 1, 4), lambda s: s[0] < s[1])  # x x' y1 y1' z1 z1'
_DOUBLE_IV = ((-1, 0, 0, 1, 0, 4, 1, 6), lambda s: s[0] < s[1])  # x y x' y' w1 w1' z1 z1'


class _Solver:
    def __init__(self, g: Graph, backend: MwimBackend | None):
        self.g = g
        self.backend = backend
        self.cache: dict[tuple[frozenset[int], frozenset[int]], SolveResult] = {}
        self.best: tuple[int, tuple[Edge, ...]] = (0, ())
        self.best_type: str | None = None

    def fill(self, removed: set[int], hubs_nbrs: set[int]) -> tuple[SolveResult, tuple[int, ...], set[int]]:
        """mwim of g - removed with edges inside ``hubs_nbrs`` set to -1."""
        keep = frozenset(v for v in range(self.g.n) if v not in removed)
        sentinel = frozenset(hubs_nbrs & keep)
        sub, labels = self.g.induced_subgraph(keep)
        key = (keep, sentinel)
        if key not in self.cache:
            if sentinel:
                inside = {i for i, v in enumerate(labels) if v in sentinel}
                sub = sub.with_weights(
                    {(u, v): SENTINEL for u, v in sub.edges if u in inside and v in inside}
                )
            self.cache[key] = mwim(sub, self.backend)
        return self.cache[key], labels, set(sentinel)

    def offer(self, base: Sequence[Edge], res: SolveResult | None, labels: tuple[int, ...], kind: str) -> None:
        extra = [] if res is None else [edge_key(labels[a], labels[b]) for a, b in res.witness]
        witness = tuple(sorted([edge_key(*e) for e in base] + extra))
        value = sum(self.g.weight(*e) for e in witness)
        if not (value > self.best[0] or (value == self.best[0] and witness < self.best[1])):
            return
        if not is_kind_matching(self.g, witness, MatchingKind.ACYCLIC):
            return
        self.best = (value, witness)
        self.best_type = kind

    def candidate(self, base: list[Edge], removed: set[int], hubs: Sequence[int], kind: str) -> None:
        g = self.g
        hub_nbrs: set[int] = set()
        for h in hubs:
            hub_nbrs.update(g.neighbors(h))
        res, labels, sentinel = self.fill(removed, hub_nbrs)
        for a, b in res.witness:
            assert not (labels[a] in sentinel and labels[b] in sentinel), "sentinel edge entered the fill"
        self.offer(base, res, labels, kind)

    def run(self) -> None:
        g = self.g
        res = mwim(g, self.backend)
        self.offer(res.witness, None, (), TYPE1_INDUCED)
        N = g.neighbors
        closed = g.closed_neighborhood

        parents, keep = _P4
        for a, b, c, d in _embeddings(g, parents):
            if keep((a, b, c, d)):
                self.candidate([(a, b), (c, d)], closed((a, b, c, d)), (), TYPE2_P4)

        parents, keep = _SPIDER
        for s in _embeddings(g, parents):
            if keep(s):
                x, xp, y1, y1p, y2, y2p = s
                removed = closed((xp, y1, y1p, y2, y2p))
                self.candidate([(x, xp), (y1, y1p), (y2, y2p)], removed, (x,), TYPE3)

        parents, keep = _DOUBLE_III
        for s in _embeddings(g, parents):
            if keep(s):
                x, xp, y1, y1p, z1, z1p = s
                removed = closed((y1, y1p, z1, z1p)) | (set(N(x)) & set(N(xp)))
                self.candidate([(x, xp), (y1, y1p), (z1, z1p)], removed, (x, xp), TYPE4)

        parents, keep = _DOUBLE_IV
        for s in _embeddings(g, parents):
            if keep(s):
                x, y, xp, yp, w1, w1p, z1, z1p = s
                removed = closed((xp, yp, w1, w1p, z1, z1p)) | (set(N(x)) & set(N(y)))
                self.candidate([(x, xp), (y, yp), (w1, w1p), (z1, z1p)], removed, (x, y), TYPE5)


def mwam_2p3free_explained(g: Graph, mwim_backend: MwimBackend | None = None) -> tuple[SolveResult, str | None]:
    """Like :func:`mwam_2p3free`, also naming the candidate family that won
    (``None`` when the empty matching is optimal)."""
    witness = find_2p3(g)
    if witness is not None:
        raise NotTwoP3FreeError(f"graph contains an induced 2P3 on {witness}", witness)
    solver = _Solver(g, mwim_backend)
    solver.run()
    value, edges = solver.best
    return SolveResult(value, edges, MatchingKind.ACYCLIC), solver.best_type


def mwam_2p3free(g: Graph, mwim_backend: MwimBackend | None = None) -> SolveResult:
    """Maximum weight acyclic matching of a 2P3-free graph."""
    return mwam_2p3free_explained(g, mwim_backend)[0]
