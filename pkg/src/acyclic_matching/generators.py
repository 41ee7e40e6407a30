"""Deterministic graph and formula generators.

All randomness comes from an explicit ``random.Random`` (Mersenne Twister)
instance; the same seed reproduces the same output on every platform.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .errors import GenerationError, ValidationError
from .graph import Graph, edge_key, is_2p3_free
from .reduction import CnfFormula, build_reduction

MODELS = ("gnp", "tree", "cycle", "path", "star", "complete", "cograph", "twop3free", "reduction")


def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValidationError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with center 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges, weights, offset = [], {}, 0
    for g in graphs:
        for u, v, w in g.weighted_edges():
            e = (u + offset, v + offset)
            edges.append(e)
            weights[e] = w
        offset += g.n
    return Graph(offset, edges, weights)


def gnp(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_tree(rng: random.Random, n: int) -> Graph:
    """Each vertex attaches to a uniformly chosen earlier vertex, then ids are shuffled."""
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph(n, [(perm[v], perm[rng.randrange(v)]) for v in range(1, n)])


def random_cograph(rng: random.Random, n: int) -> Graph:
    """Evaluate a random cotree with alternating union/join levels."""
    verts = list(range(n))
    rng.shuffle(verts)
    edges: list[tuple[int, int]] = []

    def build(part: list[int], join: bool) -> None:
        if len(part) <= 1:
            return
        k = rng.randint(2, min(3, len(part)))
        cuts = sorted(rng.sample(range(1, len(part)), k - 1))
        pieces = [part[a:b] for a, b in zip([0, *cuts], [*cuts, len(part)])]
        if join:
            for x, y in combinations(range(len(pieces)), 2):
                edges.extend(edge_key(a, b) for a in pieces[x] for b in pieces[y])
        for piece in pieces:
            build(piece, not join)

    build(verts, rng.random() < 0.5)
    return Graph(n, edges)


def random_2p3free(rng: random.Random, n: int, p: float, max_tries: int = 10000) -> Graph:
    for _ in range(max_tries):
        g = gnp(rng, n, p)
        if is_2p3_free(g):
            return g
    raise GenerationError(f"no 2P3-free G({n}, {p}) sample in {max_tries} tries")


def random_weights(rng: random.Random, g: Graph, lo: int, hi: int) -> Graph:
    return g.with_weights({e: rng.randint(lo, hi) for e in g.edges})


def random_restricted_formula(
    rng: random.Random, num_vars: int, num_clauses: int, max_tries: int = 1000
) -> CnfFormula:
    """Random formula in restricted form (clauses of 2-3 distinct
    variables, every literal at most twice)."""
    if num_clauses and num_vars < 2:
        raise GenerationError("clauses need at least two variables")
    if 4 * num_vars < 2 * num_clauses:
        raise GenerationError(f"{num_vars} variables cannot fill {num_clauses} clauses")
    for _ in range(max_tries):
        room = {lit: 2 for v in range(1, num_vars + 1) for lit in (v, -v)}
        clauses = []
        for _ in range(num_clauses):
            open_vars = [v for v in range(1, num_vars + 1) if room[v] or room[-v]]
            size = rng.choice((2, 3)) if len(open_vars) >= 3 else 2
            if len(open_vars) < size:
                break
            clause = []
            for v in sorted(rng.sample(open_vars, size)):
                lit = rng.choice([l for l in (v, -v) if room[l]])
                room[lit] -= 1
                clause.append(lit)
            clauses.append(clause)
        else:
            return CnfFormula.of(num_vars, clauses)
    raise GenerationError(f"no restricted formula with {num_vars} variables and {num_clauses} clauses")


@dataclass(frozen=True)
class GenSpec:
    model: str
    n: int
    seed: int = 0
    p: float = 0.5
    clauses: int | None = None


def generate(spec: GenSpec) -> Graph:
    if spec.model not in MODELS:
        raise ValidationError(f"unknown model {spec.model!r}; choose from {', '.join(MODELS)}")
    rng = random.Random(spec.seed)
    if spec.model == "gnp":
        return gnp(rng, spec.n, spec.p)
    if spec.model == "tree":
        return random_tree(rng, spec.n)
    if spec.model == "cycle":
        return cycle_graph(spec.n)
    if spec.model == "path":
        return path_graph(spec.n)
    if spec.model == "star":
        return star_graph(spec.n - 1)
    if spec.model == "complete":
        return complete_graph(spec.n)
    if spec.model == "cograph":
        return random_cograph(rng, spec.n)
    if spec.model == "twop3free":
        return random_2p3free(rng, spec.n, spec.p)
    clauses = spec.clauses if spec.clauses is not None else spec.n
    return build_reduction(random_restricted_formula(rng, spec.n, clauses)).graph
