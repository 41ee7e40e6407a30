from itertools import combinations

import pytest
from hypothesis import settings, strategies as st

from acyclic_matching import Graph

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=8, weights=None):
    """Small simple graphs; ``weights=(lo, hi)`` draws integer edge weights."""
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = [p for p in pairs if draw(st.booleans())]
    if weights is None:
        return Graph(n, chosen)
    lo, hi = weights
    return Graph(n, chosen, {e: draw(st.integers(lo, hi)) for e in chosen})


def all_matchings(g: Graph):
    """Every matching of g, by plain subset enumeration."""
    edges = g.edges
    out = [()]
    for r in range(1, g.n // 2 + 1):
        for sub in combinations(edges, r):
            verts = [v for e in sub for v in e]
            if len(set(verts)) == len(verts):
                out.append(sub)
    return out


@pytest.fixture
def tmp_file(tmp_path):
    def make(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return make
