"""Bipartite graphs with two distinguished parts, eta (size a) and kappa (size b).

Vertices on each side are dense 0-based indices; an edge (i, j) joins eta
vertex i to kappa vertex j.

Text format::

    # comment lines and blank lines are ignored
    bipartite <a> <b>
    e <i> <j>
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import product
from typing import Iterable

from utils.errors import DuplicateEdge, OutOfRange, ParseError

# Set up logger
logger = logging.getLogger(__name__)

Edge = tuple[int, int]


class Side(str, Enum):
    ETA = "eta"
    KAPPA = "kappa"


@dataclass(frozen=True)
class BiGraph:
    a: int
    b: int
    edges: frozenset[Edge]

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        """Sorted kappa-neighbors of each eta vertex."""
        rows: list[list[int]] = [[] for _ in range(self.a)]
        for i, j in self.sorted_edges:
            rows[i].append(j)
        return tuple(tuple(r) for r in rows)

    @cached_property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        """Sorted eta-neighbors of each kappa vertex."""
        cols: list[list[int]] = [[] for _ in range(self.b)]
        for i, j in self.sorted_edges:
            cols[j].append(i)
        return tuple(tuple(c) for c in cols)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def new_bigraph(a: int, b: int, edges: Iterable[Edge]) -> BiGraph:
    if a < 1 or b < 1:
        raise ValueError(f"both parts need at least one vertex, got a={a}, b={b}")
    seen: set[Edge] = set()
    for i, j in edges:
        if not (0 <= i < a and 0 <= j < b):
            raise OutOfRange(f"edge ({i}, {j}) outside {a}x{b}")
        if (i, j) in seen:
            raise DuplicateEdge(f"edge ({i}, {j}) listed twice")
        seen.add((i, j))
    return BiGraph(a=a, b=b, edges=frozenset(seen))


def complement(g: BiGraph) -> BiGraph:
    everything = product(range(g.a), range(g.b))
    return BiGraph(a=g.a, b=g.b, edges=frozenset(e for e in everything if e not in g.edges))


def transpose(g: BiGraph) -> BiGraph:
    return BiGraph(a=g.b, b=g.a, edges=frozenset((j, i) for i, j in g.edges))


def graph_product(g1: BiGraph, g2: BiGraph) -> BiGraph:
    """Edge (x1, x2)-(y1, y2) iff both coordinate pairs are edges.

    Vertex (x1, x2) gets index x1 * size2 + x2 on its side.
    """
    edges = frozenset(
        (i1 * g2.a + i2, j1 * g2.b + j2)
        for (i1, j1), (i2, j2) in product(g1.sorted_edges, g2.sorted_edges)
    )
    return BiGraph(a=g1.a * g2.a, b=g1.b * g2.b, edges=edges)


def neighbors(g: BiGraph, side: Side, v: int) -> list[int]:
    side = Side(side)
    size = g.a if side is Side.ETA else g.b
    if not 0 <= v < size:
        raise OutOfRange(f"{side.value} vertex {v} outside 0..{size - 1}")
    return list(g.rows[v] if side is Side.ETA else g.columns[v])


def degree_profile(g: BiGraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Sorted degree multisets of eta and kappa."""
    return (
        tuple(sorted(len(r) for r in g.rows)),
        tuple(sorted(len(c) for c in g.columns)),
    )


def is_biregular(g: BiGraph, r_eta: int, r_kappa: int) -> bool:
    return all(len(r) == r_eta for r in g.rows) and all(len(c) == r_kappa for c in g.columns)


def serialize(g: BiGraph) -> str:
    lines = [f"bipartite {g.a} {g.b}"]
    lines.extend(f"e {i} {j}" for i, j in g.sorted_edges)
    return "\n".join(lines) + "\n"


def parse(text: str) -> BiGraph:
    header: tuple[int, int] | None = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if fields[0] != "bipartite" or len(fields) != 3:
                raise ParseError(number, f"expected 'bipartite <a> <b>', got {line!r}")
            header = (_parse_int(fields[1], number), _parse_int(fields[2], number))
            if header[0] < 1 or header[1] < 1:
                raise ParseError(number, "part sizes must be positive")
            continue
        if fields[0] != "e" or len(fields) != 3:
            raise ParseError(number, f"expected 'e <i> <j>', got {line!r}")
        edge = (_parse_int(fields[1], number), _parse_int(fields[2], number))
        if not (0 <= edge[0] < header[0] and 0 <= edge[1] < header[1]):
            raise ParseError(number, f"edge {edge} outside {header[0]}x{header[1]}")
        if edge in seen:
            raise ParseError(number, f"duplicate edge {edge}")
        seen.add(edge)
        edges.append(edge)
    if header is None:
        raise ParseError(0, "missing 'bipartite' header")
    logger.debug(f"Parsed {header[0]}x{header[1]} graph with {len(edges)} edges")
    return BiGraph(a=header[0], b=header[1], edges=frozenset(edges))


def _parse_int(field: str, number: int) -> int:
    try:
        return int(field)
    except ValueError:
        raise ParseError(number, f"not an integer: {field!r}") from None


def to_dot(g: BiGraph) -> str:
    lines = ["graph G {"]
    lines.extend(f"  h{i};" for i in range(g.a))
    lines.extend(f"  k{j};" for j in range(g.b))
    lines.extend(f"  h{i} -- k{j};" for i, j in g.sorted_edges)
    lines.append("}")
    return "\n".join(lines) + "\n"
