"""Text formats: DIMACS-style edge files, DIMACS CNF, and label sidecars.

Files use 1-based vertex ids; everything in memory is 0-based.

Graph files::

    c comment
    p edge <n> <m>
    e <u> <v> [<weight>]

Label sidecars list ``<role> -> <id>`` lines followed by ``A:`` and ``B:``
membership lines.
"""

from __future__ import annotations

from typing import Iterable

from .errors import ParseError, ValidationError
from .graph import Graph, edge_key
from .reduction import CnfFormula, ReductionInstance


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} {token!r} is not an integer", line) from None


def parse_graph(text: str) -> Graph:
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    weights: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if header is not None:
                raise ParseError("second problem line", lineno)
            if len(parts) != 4 or parts[1] != "edge":
                raise ParseError("expected 'p edge <n> <m>'", lineno)
            header = (_int(parts[2], lineno, "vertex count"), _int(parts[3], lineno, "edge count"))
            if header[0] < 0 or header[1] < 0:
                raise ParseError("negative count in problem line", lineno)
        elif tag == "e":
            if header is None:
                raise ParseError("edge line before the problem line", lineno)
            if len(parts) not in (3, 4):
                raise ParseError("expected 'e <u> <v> [<weight>]'", lineno)
            u = _int(parts[1], lineno, "vertex")
            v = _int(parts[2], lineno, "vertex")
            for x in (u, v):
                if not 1 <= x <= header[0]:
                    raise ParseError(f"vertex {x} outside 1..{header[0]}", lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            key = edge_key(u - 1, v - 1)
            if key in weights:
                raise ParseError(f"duplicate edge {u} {v}", lineno)
            weights[key] = _int(parts[3], lineno, "weight") if len(parts) == 4 else 1
            edges.append(key)
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if header is None:
        raise ParseError("missing problem line 'p edge <n> <m>'")
    if len(edges) != header[1]:
        raise ParseError(f"problem line declares {header[1]} edges, found {len(edges)}")
    return Graph(header[0], edges, weights)


def emit_graph(g: Graph) -> str:
    """Canonical text: edges sorted, weights written unless all are 1."""
    lines = [f"p edge {g.n} {g.m}"]
    plain = g.is_unit_weighted()
    for u, v, w in g.weighted_edges():
        lines.append(f"e {u + 1} {v + 1}" if plain else f"e {u + 1} {v + 1} {w}")
    return "\n".join(lines) + "\n"


def parse_cnf(text: str) -> CnfFormula:
    """DIMACS CNF.  The problem line is optional; without it the variable
    count is the largest variable seen."""
    declared: tuple[int, int] | None = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "%":
            break
        if parts[0] == "p":
            if declared is not None or clauses or current:
                raise ParseError("problem line must come first and only once", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("expected 'p cnf <vars> <clauses>'", lineno)
            declared = (_int(parts[2], lineno, "variable count"), _int(parts[3], lineno, "clause count"))
            continue
        for token in parts:
            lit = _int(token, lineno, "literal")
            if declared is not None and abs(lit) > declared[0]:
                raise ParseError(f"literal {lit} exceeds declared variable count {declared[0]}", lineno)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if current:
        raise ParseError("last clause is not terminated by 0")
    if declared is not None and declared[1] != len(clauses):
        raise ParseError(f"problem line declares {declared[1]} clauses, found {len(clauses)}")
    num_vars = declared[0] if declared else max((abs(l) for c in clauses for l in c), default=0)
    return CnfFormula.of(num_vars, clauses)


def emit_cnf(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {f.num_clauses}"]
    lines.extend(" ".join([*map(str, c), "0"]) for c in f.clauses)
    return "\n".join(lines) + "\n"


def emit_labels(inst: ReductionInstance) -> str:
    lines = ["c role -> vertex id (1-based)"]
    for label, v in sorted(inst.labels.items(), key=lambda kv: kv[1]):
        lines.append(f"{label} -> {v + 1}")
    lines.append("A: " + " ".join(str(v + 1) for v in sorted(inst.side_a)))
    lines.append("B: " + " ".join(str(v + 1) for v in sorted(inst.side_b)))
    return "\n".join(line.rstrip() for line in lines) + "\n"


def parse_labels(text: str) -> tuple[dict[str, int], frozenset[int], frozenset[int]]:
    labels: dict[str, int] = {}
    sides: dict[str, frozenset[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c "):
            continue
        if line[:2] in ("A:", "B:"):
            ids = [_int(t, lineno, "vertex") - 1 for t in line[2:].split()]
            sides[line[0]] = frozenset(ids)
            continue
        label, sep, vid = line.partition("->")
        if not sep:
            raise ParseError("expected '<role> -> <id>'", lineno)
        labels[label.strip()] = _int(vid.strip(), lineno, "vertex") - 1
    if set(sides) != {"A", "B"}:
        raise ParseError("label file needs both 'A:' and 'B:' lines")
    return labels, sides["A"], sides["B"]


def one_based(items: Iterable[Iterable[int]]) -> list[list[int]]:
    return [[v + 1 for v in item] for item in items]


def read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
