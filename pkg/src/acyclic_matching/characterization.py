"""Linear-time recognizers for "every maximum matching is acyclic/induced".

Every maximum matching is acyclic exactly when each component is a tree or
an odd cycle, and induced exactly when each component is a star or a
triangle.  K1 and K2 count as stars.
"""

from __future__ import annotations

import enum

from .graph import Graph


class ComponentShape(enum.Enum):
    STAR = "star"
    TREE = "tree"
    TRIANGLE = "triangle"
    ODD_CYCLE = "odd-cycle"
    OTHER = "other"


def classify_components(g: Graph) -> list[tuple[list[int], ComponentShape]]:
    out = []
    for comp in g.components():
        order = len(comp)
        size = sum(g.degree(v) for v in comp) // 2
        if size == order - 1:
            centers = sum(1 for v in comp if g.degree(v) == order - 1)
            shape = ComponentShape.STAR if order <= 2 or centers == 1 else ComponentShape.TREE
        elif size == order and all(g.degree(v) == 2 for v in comp) and order % 2:
            shape = ComponentShape.TRIANGLE if order == 3 else ComponentShape.ODD_CYCLE
        else:
            shape = ComponentShape.OTHER
        out.append((comp, shape))
    return out


def every_max_matching_acyclic(g: Graph) -> bool:
    return all(shape is not ComponentShape.OTHER for _, shape in classify_components(g))


def every_max_matching_induced(g: Graph) -> bool:
    ok = (ComponentShape.STAR, ComponentShape.TRIANGLE)
    return all(shape in ok for _, shape in classify_components(g))


def first_offending_component(g: Graph, induced: bool = False) -> list[int] | None:
    ok = (
        (ComponentShape.STAR, ComponentShape.TRIANGLE)
        if induced
        else (ComponentShape.STAR, ComponentShape.TREE, ComponentShape.TRIANGLE, ComponentShape.ODD_CYCLE)
    )
    for comp, shape in classify_components(g):
        if shape not in ok:
            return comp
    return None
