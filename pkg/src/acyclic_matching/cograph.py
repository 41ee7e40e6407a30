"""Cotrees and maximum weight acyclic matching on P4-free graphs.

A P4-free graph on two or more vertices is disconnected or the join of
smaller P4-free graphs.  Splitting along components of the graph and of its
complement gives the cotree; the solver works bottom-up on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import NotCographError
from .graph import Edge, Graph, MatchingKind, edge_key, iter_bits
from .oracles import SolveResult

LEAF, UNION, JOIN = "leaf", "union", "join"


@dataclass(frozen=True)
class CotreeNode:
    kind: str
    vertex: int | None = None
    children: tuple["CotreeNode", ...] = ()

    @classmethod
    def leaf(cls, v: int) -> "CotreeNode":
        return cls(LEAF, v)

    def vertices(self) -> list[int]:
        if self.kind == LEAF:
            return [self.vertex]
        return sorted(v for c in self.children for v in c.vertices())

    def __repr__(self) -> str:
        if self.kind == LEAF:
            return f"L{self.vertex}"
        name = "Union" if self.kind == UNION else "Join"
        return f"{name}({', '.join(map(repr, self.children))})"


def _co_components(g: Graph, vertices: list[int]) -> list[list[int]]:
    allowed = 0
    for v in vertices:
        allowed |= 1 << v
    masks = g.masks()
    comps = []
    remaining = allowed
    while remaining:
        low = remaining & -remaining
        comp = frontier = low
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= allowed & ~masks[v] & ~(1 << v)
            frontier = reach & ~comp
            comp |= frontier
        remaining &= ~comp
        comps.append(list(iter_bits(comp)))
    return comps


def _induced_p4(g: Graph, vertices: Iterable[int]) -> tuple[int, int, int, int]:
    for quad in combinations(sorted(vertices), 4):
        pairs = [(a, b) for a, b in combinations(quad, 2) if g.has_edge(a, b)]
        if len(pairs) != 3:
            continue
        deg = {v: 0 for v in quad}
        for a, b in pairs:
            deg[a] += 1
            deg[b] += 1
        ends = sorted(v for v in quad if deg[v] == 1)
        if sorted(deg.values()) != [1, 1, 2, 2]:
            continue
        path = [ends[0]]
        while len(path) < 4:
            path.append(next(w for w in quad if w not in path and g.has_edge(path[-1], w)))
        return tuple(path)
    raise AssertionError("connected graph with connected complement must contain an induced P4")


def _decompose(g: Graph, vertices: list[int]) -> CotreeNode:
    if len(vertices) == 1:
        return CotreeNode.leaf(vertices[0])
    comps = g.components(vertices)
    if len(comps) > 1:
        return CotreeNode(UNION, children=tuple(_decompose(g, c) for c in comps))
    cocomps = _co_components(g, vertices)
    if len(cocomps) > 1:
        return CotreeNode(JOIN, children=tuple(_decompose(g, c) for c in cocomps))
    witness = _induced_p4(g, vertices)
    raise NotCographError(f"graph contains the induced P4 {witness}", witness)


def build_cotree(g: Graph) -> CotreeNode | None:
    """Canonical cotree of ``g`` (``None`` for the empty graph).

    Raises NotCographError carrying an induced P4 when ``g`` has one.
    """
    if g.n == 0:
        return None
    return _decompose(g, list(range(g.n)))


def find_cotree_obstruction(g: Graph) -> tuple[int, int, int, int] | None:
    try:
        build_cotree(g)
    except NotCographError as exc:
        return exc.witness
    return None


def cotree_to_graph(node: CotreeNode | None, n: int | None = None) -> Graph:
    """Evaluate a cotree back into a graph on ``max leaf + 1`` vertices."""
    if node is None:
        return Graph(n or 0)
    edges: list[Edge] = []

    def walk(t: CotreeNode) -> list[int]:
        if t.kind == LEAF:
            return [t.vertex]
        parts = [walk(c) for c in t.children]
        if t.kind == JOIN:
            for i, j in combinations(range(len(parts)), 2):
                edges.extend(edge_key(a, b) for a in parts[i] for b in parts[j])
        return [v for p in parts for v in p]

    verts = walk(node)
    return Graph(n if n is not None else max(verts) + 1, edges)


def _better(a: tuple[int, tuple[Edge, ...]], b: tuple[int, tuple[Edge, ...]]) -> bool:
    return a[0] > b[0] or (a[0] == b[0] and a[1] < b[1])


def mwam_p4free(g: Graph) -> SolveResult:
    """Maximum weight acyclic matching of a P4-free graph."""
    root = build_cotree(g)
    if root is None:
        return SolveResult(0, (), MatchingKind.ACYCLIC)

    def solve(t: CotreeNode) -> tuple[int, tuple[Edge, ...]]:
        if t.kind == LEAF:
            return 0, ()
        subs = [solve(c) for c in t.children]
        if t.kind == UNION:
            return sum(s[0] for s in subs), tuple(sorted(e for s in subs for e in s[1]))
        # join: any two matching edges touching different sides span a C4,
        # so the matching stays inside one child or is one cross edge
        best: tuple[int, tuple[Edge, ...]] = (0, ())
        for s in subs:
            if _better(s, best):
                best = s
        parts = [c.vertices() for c in t.children]
        for i, j in combinations(range(len(parts)), 2):
            for a in parts[i]:
                for b in parts[j]:
                    w = g.weight(a, b)
                    if w > 0:
                        cand = (w, (edge_key(a, b),))
                        if _better(cand, best):
                            best = cand
        assert len(best[1]) <= 1 or any(
            set(v for e in best[1] for v in e) <= set(p) for p in parts
        ), "join solution spans two children with more than one edge"
        return best

    value, witness = solve(root)
    return SolveResult(value, witness, MatchingKind.ACYCLIC)
