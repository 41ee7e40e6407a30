"""Exact reference solvers.

``maximum_matching`` is polynomial (Hopcroft-Karp on bipartite graphs,
Edmonds' blossom algorithm otherwise).  The kind-restricted solver and the
enumeration of maximum matchings are exhaustive searches and refuse inputs
above a configurable vertex guard.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import ResourceLimitError
from .graph import Edge, Graph, MatchingKind, is_kind_matching, iter_bits
from .matching import maximum_mate, mate_to_edges

RESTRICTED_GUARD = 16
ENUMERATION_GUARD = 14


@dataclass(frozen=True)
class SolveResult:
    value: int
    witness: tuple[Edge, ...]
    kind: MatchingKind

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "edges": [list(e) for e in self.witness],
            "kind": self.kind.value,
        }


def _check_guard(g: Graph, guard: int | None, what: str) -> None:
    if guard is not None and g.n > guard:
        raise ResourceLimitError(f"{what} is limited to {guard} vertices, got {g.n}")


def maximum_matching(g: Graph) -> SolveResult:
    """A maximum cardinality matching; ``value`` is the matching number."""
    witness = tuple(mate_to_edges(maximum_mate(g.adjacency())))
    return SolveResult(len(witness), witness, MatchingKind.UNRESTRICTED)


class _RollbackDSU:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.history: list[tuple[int, int]] = []

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]
        self.history.append((a, b))
        return True

    def checkpoint(self) -> int:
        return len(self.history)

    def rollback(self, mark: int) -> None:
        while len(self.history) > mark:
            a, b = self.history.pop()
            self.parent[b] = b
            self.size[a] -= self.size[b]


class _Search:
    """Depth-first branch and bound over matchings.

    Branching takes the lowest undecided vertex ``v`` and tries ``v``
    matched to each undecided partner in ascending order, then ``v`` left
    unmatched.  This visits edge sets in lexicographic order, so keeping
    only strict improvements yields the lexicographically smallest optimum.
    Feasibility is hereditary for every kind, so infeasible partial
    matchings are cut immediately.
    """

    def __init__(self, g: Graph, kind: MatchingKind, weighted: bool):
        self.kind = kind
        self.weighted = weighted
        self.full = g.masks()
        n = g.n
        self.partners = [0] * n
        self.wrow: list[dict[int, int]] = [{} for _ in range(n)]
        for u, v, w in g.weighted_edges():
            if weighted and w <= 0:
                continue
            w = w if weighted else 1
            self.partners[u] |= 1 << v
            self.partners[v] |= 1 << u
            self.wrow[u][v] = w
            self.wrow[v][u] = w
        self.cap: int | None = None
        # the counting bound is used while it is at most this; above it the
        # matching number of the undecided part is computed instead
        self.nu_bound_from = 6
        if not weighted:
            adj = [list(iter_bits(self.partners[v])) for v in range(n)]
            self.cap = len(mate_to_edges(maximum_mate(adj)))
        self.dsu = _RollbackDSU(n)
        self.pm_memo: dict[int, bool] = {0: True}
        self.best_value = 0
        self.best: tuple[Edge, ...] = ()
        self.done = False

    def run(self) -> tuple[int, tuple[Edge, ...]]:
        if self.cap != 0:
            self._dfs((1 << len(self.partners)) - 1, 0, 0, [])
        return self.best_value, self.best

    def _bound(self, live: int, avail: int) -> int:
        if not self.weighted:
            cheap = bin(live).count("1") // 2
            if cheap <= self.nu_bound_from:
                return cheap
            # matching number of the undecided part
            verts = list(iter_bits(live))
            index = {v: i for i, v in enumerate(verts)}
            adj = [[index[u] for u in iter_bits(self.partners[v] & live)] for v in verts]
            return len(mate_to_edges(maximum_mate(adj)))
        total = 0
        for v in iter_bits(live):
            row = self.wrow[v]
            total += max(row[u] for u in iter_bits(self.partners[v] & avail))
        return total // 2

    def _dfs(self, avail: int, covered: int, value: int, chosen: list[Edge]) -> None:
        if value > self.best_value:
            self.best_value = value
            self.best = tuple(sorted(chosen))
            if self.cap is not None and value >= self.cap:
                self.done = True
                return
        live = 0
        for v in iter_bits(avail):
            if self.partners[v] & avail:
                live |= 1 << v
        if not live or value + self._bound(live, live) <= self.best_value:
            return
        avail = live
        low = avail & -avail
        v = low.bit_length() - 1
        rest = avail ^ low
        for u in iter_bits(self.partners[v] & rest):
            nxt = self._extend(v, u, rest & ~(1 << u), covered)
            if nxt is None:
                continue
            new_avail, mark = nxt
            chosen.append((v, u))
            self._dfs(new_avail, covered | low | (1 << u), value + self.wrow[v][u], chosen)
            chosen.pop()
            if mark is not None:
                self.dsu.rollback(mark)
            if self.done:
                return
        self._dfs(rest, covered, value, chosen)

    def _extend(self, v: int, u: int, avail: int, covered: int) -> tuple[int, int | None] | None:
        """Feasibility of adding ``vu``; returns the pruned undecided set."""
        kind = self.kind
        full = self.full
        if kind is MatchingKind.UNRESTRICTED:
            return avail, None
        if kind is MatchingKind.INDUCED:
            return avail & ~(full[v] | full[u]), None
        if kind is MatchingKind.ACYCLIC:
            dsu = self.dsu
            mark = dsu.checkpoint()
            dsu.union(v, u)
            for w in iter_bits(full[v] & covered):
                if not dsu.union(v, w):
                    dsu.rollback(mark)
                    return None
            for w in iter_bits(full[u] & covered):
                if not dsu.union(u, w):
                    dsu.rollback(mark)
                    return None
            covered |= (1 << v) | (1 << u)
            # a vertex with two neighbors in one tree of G(M) can never join
            for a in iter_bits(avail):
                nb = full[a] & covered
                if nb & (nb - 1):
                    roots = set()
                    for w in iter_bits(nb):
                        r = dsu.find(w)
                        if r in roots:
                            avail &= ~(1 << a)
                            break
                        roots.add(r)
            return avail, mark
        # uniquely restricted: any new alternating cycle runs through vu,
        # hence through a non-matching edge vx of the new G(M)
        covered |= (1 << v) | (1 << u)
        for x in iter_bits(full[v] & covered & ~(1 << u)):
            if self._has_pm(covered & ~((1 << v) | (1 << x))):
                return None
        return avail, None

    def _has_pm(self, mask: int) -> bool:
        memo = self.pm_memo
        if mask in memo:
            return memo[mask]
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        result = False
        for w in iter_bits(self.full[v] & rest):
            if self._has_pm(rest & ~(1 << w)):
                result = True
                break
        memo[mask] = result
        return result


def max_restricted_matching(
    g: Graph,
    kind: MatchingKind | str = MatchingKind.ACYCLIC,
    weighted: bool = False,
    guard: int | None = RESTRICTED_GUARD,
) -> SolveResult:
    """Exact maximum (weight) matching of the given kind.

    In weighted mode edges of weight <= 0 are never used; the empty
    matching is always feasible so the value is never negative.
    """
    kind = MatchingKind.parse(kind)
    _check_guard(g, guard, f"exhaustive {kind.value} matching")
    value, witness = _Search(g, kind, weighted).run()
    return SolveResult(value, witness, kind)


def enumerate_maximum_matchings(g: Graph, guard: int | None = ENUMERATION_GUARD) -> Iterator[tuple[Edge, ...]]:
    """Yield every maximum matching once, in lexicographic edge-set order."""
    _check_guard(g, guard, "enumerating maximum matchings")
    target = maximum_matching(g).value
    masks = g.masks()
    chosen: list[Edge] = []

    def walk(avail: int, size: int) -> Iterator[tuple[Edge, ...]]:
        if size == target:
            yield tuple(chosen)
            return
        live = 0
        for v in iter_bits(avail):
            if masks[v] & avail:
                live |= 1 << v
        if size + bin(live).count("1") // 2 < target:
            return
        low = live & -live
        v = low.bit_length() - 1
        rest = live ^ low
        for u in iter_bits(masks[v] & rest):
            chosen.append((v, u))
            yield from walk(rest & ~(1 << u), size + 1)
            chosen.pop()
        yield from walk(rest, size)

    yield from walk((1 << g.n) - 1, 0)


def every_maximum_matching_is(
    g: Graph, kind: MatchingKind | str, guard: int | None = ENUMERATION_GUARD
) -> bool:
    kind = MatchingKind.parse(kind)
    return all(is_kind_matching(g, m, kind) for m in enumerate_maximum_matchings(g, guard))


def matching_numbers(g: Graph, guard: int | None = RESTRICTED_GUARD) -> dict[str, int]:
    """The four matching numbers keyed by kind name."""
    out = {"matching": maximum_matching(g).value}
    for kind in (MatchingKind.INDUCED, MatchingKind.ACYCLIC, MatchingKind.UNIQUELY_RESTRICTED):
        out[kind.value] = max_restricted_matching(g, kind, guard=guard).value
    return out


def enumerate_kind_matchings(
    g: Graph, kind: MatchingKind | str, guard: int | None = ENUMERATION_GUARD
) -> Iterator[tuple[Edge, ...]]:
    """Yield every matching of the given kind (including the empty one)
    in lexicographic edge-set order."""
    kind = MatchingKind.parse(kind)
    _check_guard(g, guard, f"enumerating {kind.value} matchings")
    masks = g.masks()
    chosen: list[Edge] = []

    def walk(avail: int) -> Iterator[tuple[Edge, ...]]:
        yield tuple(chosen)
        for v in iter_bits(avail):
            # v is the smallest vertex matched from here on
            for u in iter_bits(masks[v] & avail & ~((1 << (v + 1)) - 1)):
                chosen.append((v, u))
                if is_kind_matching(g, chosen, kind):
                    yield from walk(avail & ~((1 << (v + 1)) - 1) & ~(1 << u))
                chosen.pop()

    yield from walk((1 << g.n) - 1)
