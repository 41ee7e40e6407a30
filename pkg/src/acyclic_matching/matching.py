"""Maximum cardinality matching on plain adjacency lists.

Bipartite inputs go through Hopcroft-Karp; everything else through
Edmonds' blossom algorithm.  Both return a mate array (``-1`` for exposed
vertices).
"""

from __future__ import annotations

from collections import deque
from typing import Sequence


def two_coloring(adj: Sequence[Sequence[int]]) -> list[int] | None:
    """BFS 2-coloring, lowest unvisited vertex first and colored 0."""
    n = len(adj)
    color = [-1] * n
    for start in range(n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def hopcroft_karp(adj: Sequence[Sequence[int]], color: Sequence[int]) -> list[int]:
    """Maximum matching of a bipartite graph given its 2-coloring."""
    n = len(adj)
    mate = [-1] * n
    left = [v for v in range(n) if color[v] == 0]
    inf = n + 1

    while True:
        dist = [inf] * n
        queue = deque()
        for v in left:
            if mate[v] == -1:
                dist[v] = 0
                queue.append(v)
        found = False
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                u = mate[w]
                if u == -1:
                    found = True
                elif dist[u] == inf:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        if not found:
            return mate

        def augment(v: int) -> bool:
            for w in adj[v]:
                u = mate[w]
                if u == -1 or (dist[u] == dist[v] + 1 and augment(u)):
                    mate[v] = w
                    mate[w] = v
                    return True
            dist[v] = inf
            return False

        for v in left:
            if mate[v] == -1:
                augment(v)


def edmonds(adj: Sequence[Sequence[int]]) -> list[int]:
    """Maximum matching of a general graph (Edmonds, O(n^3))."""
    n = len(adj)
    mate = [-1] * n

    # greedy warm start
    for v in range(n):
        if mate[v] == -1:
            for w in adj[v]:
                if mate[w] == -1:
                    mate[v], mate[w] = w, v
                    break

    def find_augmenting(root: int) -> int:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if mate[a] == -1:
                    break
                a = parent[mate[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[mate[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[mate[v]]] = True
                parent[v] = child
                child = mate[v]
                v = parent[mate[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        return _flip(to, parent)
                    used[mate[to]] = True
                    queue.append(mate[to])
        return -1

    def _flip(v: int, parent: list[int]) -> int:
        end = v
        while v != -1:
            pv = parent[v]
            nxt = mate[pv]
            mate[v] = pv
            mate[pv] = v
            v = nxt
        return end

    for root in range(n):
        if mate[root] == -1 and adj[root]:
            find_augmenting(root)
    return mate


def maximum_mate(adj: Sequence[Sequence[int]]) -> list[int]:
    color = two_coloring(adj)
    if color is not None:
        return hopcroft_karp(adj, color)
    return edmonds(adj)


def mate_to_edges(mate: Sequence[int]) -> list[tuple[int, int]]:
    return [(v, w) for v, w in enumerate(mate) if w > v]
