"""Reduction from restricted SAT to "does G have an acyclic maximum matching".

Restricted form: every clause has two or three literals over distinct
variables, and each literal occurs in at most two clauses.  Each variable
``i`` contributes a 32-vertex gadget; each literal occurrence in clause
``r`` contributes a K2 ``l(r,1) l(r,2)`` whose first vertex is wired into
the gadgets of the *other* variables of the clause (for 2-clauses, into
both gadgets).

Vertex numbering: gadget ``i`` (1-based) occupies ids ``32(i-1)..32i-1`` in
the role order u1-u4, w1-w2, x1-x2, y1-y8, z1-z8, t1-t4, f1-f4.  Literal
pairs follow in clause order, literals inside a clause ordered by
variable; ``l(r,1)`` precedes ``l(r,2)``.

A true variable is encoded by matching u(i,j)t(i,j), which leaves the
f-vertices (the slots of clauses containing the positive literal)
unmatched.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .errors import ResourceLimitError, ValidationError, VerificationError
from .graph import Edge, Graph, MatchingKind, edge_key, is_bipartite, is_kind_matching, normalize_matching
from .oracles import maximum_matching

ROLE_COUNTS = (("u", 4), ("w", 2), ("x", 2), ("y", 8), ("z", 8), ("t", 4), ("f", 4))
GADGET_ORDER = 32
GADGET_SIZE = 38
SIDE_A_ROLES = ("u", "x", "y")

_OFFSETS: dict[str, int] = {}
_pos = 0
for _role, _count in ROLE_COUNTS:
    _OFFSETS[_role] = _pos
    _pos += _count
del _pos, _role, _count

# role edges of one gadget, as ((role, j), (role, j))
GADGET_EDGES: tuple[tuple[tuple[str, int], tuple[str, int]], ...] = (
    *((("y", j), ("z", j)) for j in range(1, 9)),
    *((("u", j), ("t", j)) for j in range(1, 5)),
    *((("u", j), ("f", j)) for j in range(1, 5)),
    (("w", 1), ("u", 1)), (("w", 1), ("u", 2)),
    (("w", 2), ("u", 3)), (("w", 2), ("u", 4)),
    (("x", 1), ("w", 1)), (("x", 2), ("w", 2)),
    (("y", 1), ("t", 1)), (("y", 1), ("f", 2)),
    (("y", 5), ("t", 2)), (("y", 5), ("f", 3)),
    (("y", 3), ("t", 3)), (("y", 3), ("f", 4)),
    (("y", 7), ("t", 1)), (("y", 7), ("f", 4)),
    (("y", 2), ("f", 1)), (("y", 2), ("t", 2)),
    (("y", 6), ("f", 2)), (("y", 6), ("t", 3)),
    (("y", 4), ("f", 3)), (("y", 4), ("t", 4)),
    (("y", 8), ("f", 1)), (("y", 8), ("t", 4)),
)

# cycles that rule out mixed t/f choices inside a gadget
GADGET_CYCLES: tuple[tuple[tuple[str, int], ...], ...] = (
    (("u", 1), ("t", 1), ("y", 1), ("f", 2), ("u", 2), ("w", 1)),
    (("u", 2), ("t", 2), ("y", 5), ("f", 3), ("u", 3), ("w", 2),
     ("u", 4), ("f", 4), ("y", 7), ("t", 1), ("u", 1), ("w", 1)),
    (("f", 1), ("y", 2), ("t", 2), ("u", 2), ("w", 1), ("u", 1)),
)


def role_label(role: str, i: int, j: int) -> str:
    return f"{role}({i},{j})"


def literal_name(lit: int) -> str:
    return f"x{lit}" if lit > 0 else f"~x{-lit}"


def literal_label(lit: int, r: int, k: int) -> str:
    return f"{literal_name(lit)}({r},{k})"


def _lit_key(lit: int) -> tuple[int, bool]:
    return (abs(lit), lit < 0)


@dataclass(frozen=True)
class CnfFormula:
    """CNF over variables ``1..num_vars``; literals are signed ints.

    ``var_origin`` maps each variable to its index in the formula it was
    normalized from, when there is one.
    """

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]
    var_origin: tuple[int, ...] | None = field(default=None, compare=False)

    @classmethod
    def of(cls, num_vars: int, clauses: Iterable[Iterable[int]], **kw) -> "CnfFormula":
        canon = []
        for clause in clauses:
            lits = set(clause)
            for lit in lits:
                if lit == 0 or abs(lit) > num_vars:
                    raise ValidationError(f"literal {lit} outside variables 1..{num_vars}")
            canon.append(tuple(sorted(lits, key=_lit_key)))
        return cls(num_vars, tuple(canon), **kw)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def tautologies(self) -> list[int]:
        """Indices of clauses containing a variable and its negation."""
        return [r for r, c in enumerate(self.clauses) if any(-lit in c for lit in c)]

    def occurrences(self, lit: int) -> list[int]:
        """0-based indices of clauses containing ``lit``, ascending."""
        return [r for r, c in enumerate(self.clauses) if lit in c]

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)

    def restriction_problems(self) -> list[str]:
        problems = []
        for r, clause in enumerate(self.clauses, 1):
            if not 2 <= len(clause) <= 3:
                problems.append(f"clause {r} has {len(clause)} literals")
            if len({abs(l) for l in clause}) != len(clause):
                problems.append(f"clause {r} repeats a variable")
        for v in range(1, self.num_vars + 1):
            for lit in (v, -v):
                if len(self.occurrences(lit)) > 2:
                    problems.append(f"literal {literal_name(lit)} occurs more than twice")
        return problems

    def is_restricted(self) -> bool:
        return not self.restriction_problems()


@dataclass(frozen=True)
class Verdict:
    satisfiable: bool
    reason: str = ""


class NotNormalizableError(ValidationError):
    pass


def normalize_cnf(f: CnfFormula) -> CnfFormula | Verdict:
    """Apply tautology removal, unit elimination and pure-literal
    elimination until none applies, then renumber the surviving variables.

    Returns a Verdict when the formula is decided along the way.
    """
    clauses = [set(c) for c in f.clauses]
    while True:
        clauses = [c for c in clauses if not any(-l in c for l in c)]
        if any(not c for c in clauses):
            return Verdict(False, "empty clause derived")
        if not clauses:
            return Verdict(True, "all clauses eliminated")
        unit = next((c for c in clauses if len(c) == 1), None)
        if unit is not None:
            (lit,) = unit
            clauses = [c - {-lit} for c in clauses if lit not in c]
            continue
        present = {l for c in clauses for l in c}
        pure = sorted((l for l in present if -l not in present), key=_lit_key)
        if pure:
            clauses = [c for c in clauses if not c & set(pure)]
            continue
        break
    used = sorted({abs(l) for c in clauses for l in c})
    renumber = {v: i for i, v in enumerate(used, 1)}
    origin = tuple(f.var_origin[v - 1] if f.var_origin else v for v in used)
    out = CnfFormula.of(
        len(used),
        ([renumber[abs(l)] * (1 if l > 0 else -1) for l in c] for c in clauses),
        var_origin=origin,
    )
    problems = out.restriction_problems()
    if problems:
        raise NotNormalizableError("; ".join(problems))
    return out


def truth_table_satisfiable(f: CnfFormula) -> tuple[bool, ...] | None:
    """First satisfying assignment in binary counting order (False first)."""
    for bits in product((False, True), repeat=f.num_vars):
        if f.evaluate(bits):
            return bits
    return None


def build_gadget(i: int) -> tuple[list[str], list[tuple[str, str]]]:
    """Role labels (in id order) and the 38 labeled edges of gadget ``i``."""
    labels = [role_label(role, i, j) for role, count in ROLE_COUNTS for j in range(1, count + 1)]
    edges = [(role_label(a, i, ja), role_label(b, i, jb)) for (a, ja), (b, jb) in GADGET_EDGES]
    return labels, edges


@dataclass(frozen=True)
class ReductionInstance:
    graph: Graph
    side_a: frozenset[int]
    side_b: frozenset[int]
    labels: dict[str, int]
    formula: CnfFormula

    def vertex(self, label: str) -> int:
        return self.labels[label]

    def role(self, role: str, i: int, j: int) -> int:
        return self.labels[role_label(role, i, j)]

    def gadget_vertices(self, i: int) -> list[int]:
        start = GADGET_ORDER * (i - 1)
        return list(range(start, start + GADGET_ORDER))

    def literal_pairs(self) -> list[tuple[int, int]]:
        out = []
        for r, clause in enumerate(self.formula.clauses, 1):
            for lit in clause:
                out.append((self.labels[literal_label(lit, r, 1)], self.labels[literal_label(lit, r, 2)]))
        return out

    def with_graph(self, graph: Graph) -> "ReductionInstance":
        return ReductionInstance(graph, self.side_a, self.side_b, self.labels, self.formula)


def _cycle_present(g: Graph, cycle: Sequence[int]) -> bool:
    return len(set(cycle)) == len(cycle) and all(
        g.has_edge(cycle[k], cycle[(k + 1) % len(cycle)]) for k in range(len(cycle))
    )


def build_reduction(f: CnfFormula) -> ReductionInstance:
    """Build the reduction graph for a restricted formula."""
    problems = f.restriction_problems()
    if problems:
        raise ValidationError("formula is not in restricted form: " + "; ".join(problems))
    labels: dict[str, int] = {}
    edges: list[Edge] = []
    side_a: set[int] = set()
    for i in range(1, f.num_vars + 1):
        names, gadget_edges = build_gadget(i)
        for name in names:
            labels[name] = len(labels)
        for role in SIDE_A_ROLES:
            for j in range(1, dict(ROLE_COUNTS)[role] + 1):
                side_a.add(labels[role_label(role, i, j)])
        edges.extend((labels[a], labels[b]) for a, b in gadget_edges)
    for r, clause in enumerate(f.clauses, 1):
        for lit in clause:
            first = len(labels)
            labels[literal_label(lit, r, 1)] = first
            labels[literal_label(lit, r, 2)] = first + 1
            side_a.add(first)
            edges.append((first, first + 1))
    for i in range(1, f.num_vars + 1):
        for lit, slot_role in ((i, "f"), (-i, "t")):
            for idx, r0 in enumerate(f.occurrences(lit)):
                r = r0 + 1
                clause = f.clauses[r0]
                wired = clause if len(clause) == 2 else tuple(l for l in clause if abs(l) != i)
                for pos, other in enumerate(sorted(wired, key=_lit_key)):
                    slot = labels[role_label(slot_role, i, 2 * idx + pos + 1)]
                    edges.append((labels[literal_label(other, r, 1)], slot))
    g = Graph(len(labels), edges)
    for i in range(1, f.num_vars + 1):
        for cycle in GADGET_CYCLES:
            ids = [labels[role_label(role, i, j)] for role, j in cycle]
            assert _cycle_present(g, ids), f"gadget {i} lost cycle {cycle}"
    side_a_f = frozenset(side_a)
    return ReductionInstance(g, side_a_f, frozenset(range(g.n)) - side_a_f, labels, f)


def canonical_matching(inst: ReductionInstance) -> tuple[Edge, ...]:
    """All edges at endvertices plus every u(i,j)t(i,j)."""
    g = inst.graph
    edges = {edge_key(u, v) for u, v in g.edges if g.degree(u) == 1 or g.degree(v) == 1}
    for i in range(1, inst.formula.num_vars + 1):
        for j in range(1, 5):
            edges.add(edge_key(inst.role("u", i, j), inst.role("t", i, j)))
    return tuple(sorted(edges))


def verify_instance(inst: ReductionInstance) -> dict:
    """Check the structural claims that can be decided in polynomial time.

    Returns a report on success; raises VerificationError naming the first
    claim that fails.
    """
    g = inst.graph
    a, b = inst.side_a, inst.side_b

    def require(ok: bool, claim: str, message: str) -> None:
        if not ok:
            raise VerificationError(claim, message)

    require(a | b == frozenset(range(g.n)) and not a & b, "bipartite", "A and B do not partition V")
    require(
        all((u in a) != (v in a) for u, v in g.edges) and is_bipartite(g) is not None,
        "bipartite",
        "an edge lies inside a partite set",
    )
    require(len(a) <= len(b), "sides", f"|A| = {len(a)} exceeds |B| = {len(b)}")
    require(g.max_degree() <= 4, "max_degree", f"maximum degree {g.max_degree()} exceeds 4")
    nu = maximum_matching(g).value
    require(nu == len(a), "matching_number", f"matching number {nu} differs from |A| = {len(a)}")

    for i in range(1, inst.formula.num_vars + 1):
        verts = inst.gadget_vertices(i)
        inside = set(verts)
        size = sum(1 for u, v in g.edges if u in inside and v in inside)
        ends = sum(1 for v in verts if g.degree(v) == 1)
        require(
            (len(verts), size, ends) == (GADGET_ORDER, GADGET_SIZE, 10),
            "gadget.counts",
            f"gadget {i} has {len(verts)} vertices, {size} edges, {ends} endvertices",
        )
        for cycle in GADGET_CYCLES:
            ids = [inst.role(role, i, j) for role, j in cycle]
            require(_cycle_present(g, ids), "gadget.cycles", f"gadget {i} misses cycle {cycle}")

    canon = canonical_matching(inst)
    try:
        canon = normalize_matching(g, canon)
    except ValidationError as exc:
        raise VerificationError("canonical_matching", str(exc)) from None
    require(len(canon) == len(a), "canonical_matching", f"canonical matching has {len(canon)} edges")
    require(
        is_kind_matching(g, canon, MatchingKind.UNIQUELY_RESTRICTED),
        "uniquely_restricted",
        "canonical maximum matching has an alternating cycle",
    )
    return {
        "n_vertices": g.n,
        "n_edges": g.m,
        "size_A": len(a),
        "size_B": len(b),
        "max_degree": g.max_degree(),
        "matching_number": nu,
        "checks": {
            name: True
            for name in (
                "bipartite",
                "sides",
                "max_degree",
                "matching_number",
                "gadget.counts",
                "gadget.cycles",
                "canonical_matching",
                "uniquely_restricted",
            )
        },
    }


def assignment_to_matching(inst: ReductionInstance, assignment: Sequence[bool]) -> tuple[Edge, ...]:
    """Maximum matching encoding ``assignment``: pendant edges plus
    u(i,j)t(i,j) for true variables and u(i,j)f(i,j) for false ones."""
    nvars = inst.formula.num_vars
    if len(assignment) != nvars:
        raise ValidationError(f"assignment has {len(assignment)} values for {nvars} variables")
    edges = []
    for i, value in enumerate(assignment, 1):
        for j in range(1, 9):
            edges.append(edge_key(inst.role("y", i, j), inst.role("z", i, j)))
        for j in (1, 2):
            edges.append(edge_key(inst.role("x", i, j), inst.role("w", i, j)))
        side = "t" if value else "f"
        for j in range(1, 5):
            edges.append(edge_key(inst.role("u", i, j), inst.role(side, i, j)))
    edges.extend(edge_key(p, q) for p, q in inst.literal_pairs())
    return tuple(sorted(edges))


ASSIGNMENT_GUARD = 20


def find_acyclic_assignment(inst: ReductionInstance, guard: int | None = ASSIGNMENT_GUARD) -> tuple[bool, ...] | None:
    nvars = inst.formula.num_vars
    if guard is not None and nvars > guard:
        raise ResourceLimitError(f"assignment sweep is limited to {guard} variables, got {nvars}")
    for bits in product((False, True), repeat=nvars):
        if is_kind_matching(inst.graph, assignment_to_matching(inst, bits), MatchingKind.ACYCLIC):
            return bits
    return None


def decide_via_assignments(inst: ReductionInstance, guard: int | None = ASSIGNMENT_GUARD) -> bool:
    """Whether some truth assignment yields an acyclic maximum matching."""
    return find_acyclic_assignment(inst, guard) is not None
