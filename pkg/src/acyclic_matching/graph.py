"""Graph and matching data model plus the feasibility predicates.

Vertices are dense ids ``0..n-1``.  Edges are stored as sorted pairs
``(u, v)`` with ``u < v``; every edge carries an integer weight (default 1).
Graphs are immutable once built.
"""

from __future__ import annotations

import enum
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ResourceLimitError, ValidationError
from .matching import maximum_mate, two_coloring

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class MatchingKind(enum.Enum):
    UNRESTRICTED = "matching"
    INDUCED = "induced"
    ACYCLIC = "acyclic"
    UNIQUELY_RESTRICTED = "unique"

    @classmethod
    def parse(cls, name: "str | MatchingKind") -> "MatchingKind":
        if isinstance(name, cls):
            return name
        try:
            return cls(name)
        except ValueError:
            raise ValidationError(f"unknown matching kind {name!r}") from None


class Graph:
    """Undirected simple graph with integer edge weights."""

    __slots__ = ("_n", "_edges", "_weights", "_adj", "_masks")

    def __init__(
        self,
        n: int,
        edges: Iterable[Sequence[int]] = (),
        weights: Mapping[Edge, int] | None = None,
    ):
        if not isinstance(n, int) or n < 0:
            raise ValidationError(f"vertex count must be a nonnegative integer, got {n!r}")
        seen: set[Edge] = set()
        for edge in edges:
            if len(edge) != 2:
                raise ValidationError(f"edge {edge!r} must have two endpoints")
            u, v = edge
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge {(u, v)} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            key = edge_key(u, v)
            if key in seen:
                raise ValidationError(f"parallel edge {key}")
            seen.add(key)
        self._n = n
        self._edges = tuple(sorted(seen))
        self._weights = {e: 1 for e in self._edges}
        for (u, v), w in (weights or {}).items():
            key = edge_key(u, v)
            if key not in seen:
                raise ValidationError(f"weight given for non-edge {key}")
            if isinstance(w, bool) or not isinstance(w, int):
                raise ValidationError(f"weight of {key} must be an integer, got {w!r}")
            self._weights[key] = w
        adj: list[list[int]] = [[] for _ in range(n)]
        masks = [0] * n
        for u, v in self._edges:
            adj[u].append(v)
            adj[v].append(u)
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._masks = tuple(masks)

    @classmethod
    def from_weighted_edges(cls, n: int, triples: Iterable[tuple[int, int, int]]) -> "Graph":
        triples = list(triples)
        return cls(n, [(u, v) for u, v, _ in triples], {edge_key(u, v): w for u, v, w in triples})

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def weights(self) -> dict[Edge, int]:
        return dict(self._weights)

    def weight(self, u: int, v: int) -> int:
        return self._weights[edge_key(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._masks[u] >> v & 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def mask(self, v: int) -> int:
        """Neighborhood of ``v`` as a bitmask."""
        return self._masks[v]

    def masks(self) -> tuple[int, ...]:
        return self._masks

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def neighborhood(self, vertices: Iterable[int]) -> set[int]:
        out: set[int] = set()
        for v in vertices:
            out.update(self._adj[v])
        return out

    def closed_neighborhood(self, vertices: Iterable[int]) -> set[int]:
        vertices = set(vertices)
        return vertices | self.neighborhood(vertices)

    def is_unit_weighted(self) -> bool:
        return all(w == 1 for w in self._weights.values())

    def weighted_edges(self) -> list[tuple[int, int, int]]:
        return [(u, v, self._weights[(u, v)]) for u, v in self._edges]

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph relabeled to ``0..k-1`` in ascending id order.

        Returns the subgraph and the tuple mapping new ids to old ids.
        """
        old = tuple(sorted(set(vertices)))
        new = {v: i for i, v in enumerate(old)}
        edges = []
        weights = {}
        for u, v in self._edges:
            if u in new and v in new:
                e = (new[u], new[v])
                edges.append(e)
                weights[e] = self._weights[(u, v)]
        return Graph(len(old), edges, weights), old

    def without_vertices(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        drop = set(vertices)
        return self.induced_subgraph(v for v in range(self._n) if v not in drop)

    def without_edges(self, edges: Iterable[Edge]) -> "Graph":
        drop = {edge_key(u, v) for u, v in edges}
        keep = [e for e in self._edges if e not in drop]
        return Graph(self._n, keep, {e: self._weights[e] for e in keep})

    def with_weights(self, weights: Mapping[Edge, int]) -> "Graph":
        merged = dict(self._weights)
        merged.update({edge_key(u, v): w for (u, v), w in weights.items()})
        return Graph(self._n, self._edges, merged)

    def unweighted(self) -> "Graph":
        return Graph(self._n, self._edges)

    def complement(self) -> "Graph":
        return Graph(
            self._n,
            [(u, v) for u, v in combinations(range(self._n), 2) if not self.has_edge(u, v)],
        )

    def components(self, vertices: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components of the subgraph induced by ``vertices``.

        Components are sorted lists, ordered by their smallest vertex.
        """
        allowed = 0
        for v in range(self._n) if vertices is None else vertices:
            allowed |= 1 << v
        comps = []
        remaining = allowed
        while remaining:
            low = remaining & -remaining
            comp = low
            frontier = low
            while frontier:
                reach = 0
                for v in iter_bits(frontier):
                    reach |= self._masks[v]
                frontier = reach & allowed & ~comp
                comp |= frontier
            remaining &= ~comp
            comps.append(list(iter_bits(comp)))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges and self._weights == other._weights

    def __hash__(self) -> int:
        return hash((self._n, self._edges, tuple(self._weights[e] for e in self._edges)))

    def __repr__(self) -> str:
        if self.is_unit_weighted():
            return f"Graph({self._n}, {list(self._edges)})"
        return f"Graph.from_weighted_edges({self._n}, {self.weighted_edges()})"


def normalize_matching(g: Graph, m: Iterable[Sequence[int]]) -> tuple[Edge, ...]:
    """Validate ``m`` against ``g`` and return its edges sorted."""
    used: set[int] = set()
    out = []
    for u, v in m:
        if not (0 <= u < g.n and 0 <= v < g.n) or u == v or not g.has_edge(u, v):
            raise ValidationError(f"{(u, v)} is not an edge of the graph")
        if u in used or v in used:
            raise ValidationError(f"matching edges overlap at {(u, v)}")
        used.update((u, v))
        out.append(edge_key(u, v))
    return tuple(sorted(out))


def matching_vertices(m: Iterable[Edge]) -> list[int]:
    return sorted(v for e in m for v in e)


def matching_weight(g: Graph, m: Iterable[Edge]) -> int:
    return sum(g.weight(u, v) for u, v in m)


def matched_subgraph(g: Graph, m: Iterable[Sequence[int]]) -> tuple[Graph, tuple[int, ...]]:
    """G(M): the subgraph induced by the matched vertices.

    Returns the relabeled subgraph and the map from its ids back to ``g``.
    """
    edges = normalize_matching(g, m)
    return g.induced_subgraph(matching_vertices(edges))


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(g.components())


def _is_induced(sub: Graph) -> bool:
    return all(sub.degree(v) == 1 for v in range(sub.n))


def _has_perfect_matching(g: Graph) -> bool:
    if g.n % 2:
        return False
    mate = maximum_mate(g.adjacency())
    return all(w != -1 for w in mate)


def _is_uniquely_restricted(sub: Graph, labels: tuple[int, ...], m: tuple[Edge, ...]) -> bool:
    # Another perfect matching of G(M) exists iff some non-matching edge uv
    # extends a perfect matching of G(M) - u - v.
    index = {v: i for i, v in enumerate(labels)}
    inside = {edge_key(index[u], index[v]) for u, v in m}
    for u, v in sub.edges:
        if (u, v) in inside:
            continue
        rest, _ = sub.without_vertices((u, v))
        if _has_perfect_matching(rest):
            return False
    return True


def is_kind_matching(g: Graph, m: Iterable[Sequence[int]], kind: MatchingKind | str) -> bool:
    kind = MatchingKind.parse(kind)
    edges = normalize_matching(g, m)
    if kind is MatchingKind.UNRESTRICTED:
        return True
    sub, labels = g.induced_subgraph(matching_vertices(edges))
    if kind is MatchingKind.INDUCED:
        return _is_induced(sub)
    if kind is MatchingKind.ACYCLIC:
        return is_forest(sub)
    return _is_uniquely_restricted(sub, labels, edges)


def is_bipartite(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Return sides ``(A, B)`` of a 2-coloring, or ``None``.

    BFS from the lowest unvisited vertex, which lands on side A.
    """
    color = two_coloring(g.adjacency())
    if color is None:
        return None
    return (
        frozenset(v for v in range(g.n) if color[v] == 0),
        frozenset(v for v in range(g.n) if color[v] == 1),
    )


def is_p4_free(g: Graph) -> bool:
    from .cograph import find_cotree_obstruction

    return find_cotree_obstruction(g) is None


def induced_p3s(g: Graph) -> list[tuple[int, int, int]]:
    """All induced paths ``(a, center, b)`` with ``a < b``."""
    out = []
    for c in range(g.n):
        for a, b in combinations(g.neighbors(c), 2):
            if not g.has_edge(a, b):
                out.append((a, c, b))
    return out


def find_2p3(g: Graph) -> tuple[int, ...] | None:
    """Six vertices inducing two disjoint P3s, or ``None``.

    Scans pairs of induced P3s; the first hit in scan order is returned as
    ``(a, c, b, a', c', b')``.
    """
    masks = g.masks()
    p3s = []
    for p in induced_p3s(g):
        vm = (1 << p[0]) | (1 << p[1]) | (1 << p[2])
        nm = masks[p[0]] | masks[p[1]] | masks[p[2]]
        p3s.append((p, vm, nm))
    for i, (p, vm, nm) in enumerate(p3s):
        for q, wm, _ in p3s[i + 1:]:
            if not (vm & wm) and not (nm & wm):
                return p + q
    return None


def is_2p3_free(g: Graph) -> bool:
    return find_2p3(g) is None


def count_perfect_matchings(g: Graph, guard: int | None = 24) -> int:
    """Exact number of perfect matchings (branch on the lowest vertex)."""
    if guard is not None and g.n > guard:
        raise ResourceLimitError(f"counting perfect matchings is limited to {guard} vertices, got {g.n}")
    if g.n % 2:
        return 0
    masks = g.masks()
    memo: dict[int, int] = {0: 1}

    def count(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        total = 0
        for w in iter_bits(masks[v] & rest):
            total += count(rest & ~(1 << w))
        memo[mask] = total
        return total

    return count((1 << g.n) - 1)
