"""Side-preserving automorphisms of bipartite graphs.

One individualization-refinement search serves three purposes: it finds a
generating set of Aut(g), it yields the canonical labeling used for
isomorph rejection, and its generators give the edge orbits. Internally the
eta vertices are 0..a-1 and the kappa vertices a..a+b-1; the two sides start
in different cells, so every labeling the search produces keeps them apart.
"""

import hashlib
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from constants import BRUTE_FORCE_MAX_SIDE, DEFAULT_GROUP_CAP, DEFAULT_SEARCH_BUDGET
from utils.bigraph import BiGraph, Edge, serialize
from utils.errors import DegreeMismatch, SearchBudgetExceeded
from utils.permgroup import Perm, closure

# Set up logger
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BiAut:
    eta_perm: Perm
    kappa_perm: Perm

    @classmethod
    def identity(cls, a: int, b: int) -> "BiAut":
        return cls(Perm.identity(a), Perm.identity(b))

    def to_perm(self) -> Perm:
        """The same map as one permutation of a+b points, kappa shifted by a."""
        a = self.eta_perm.degree
        return Perm(self.eta_perm.images + tuple(a + j for j in self.kappa_perm.images))

    @classmethod
    def from_perm(cls, perm: Perm, a: int) -> "BiAut":
        images = perm.images
        return cls(Perm(images[:a]), Perm(tuple(x - a for x in images[a:])))


@dataclass(frozen=True, order=True)
class CanonicalCertificate:
    data: bytes

    def digest(self) -> str:
        return hashlib.sha256(self.data).hexdigest()


def relabel(g: BiGraph, f: BiAut) -> BiGraph:
    _check_sizes(g, f)
    edges = frozenset((f.eta_perm(i), f.kappa_perm(j)) for i, j in g.edges)
    return BiGraph(a=g.a, b=g.b, edges=edges)


def is_automorphism(g: BiGraph, f: BiAut) -> bool:
    return relabel(g, f).edges == g.edges


def _check_sizes(g: BiGraph, f: BiAut) -> None:
    if f.eta_perm.degree != g.a or f.kappa_perm.degree != g.b:
        raise DegreeMismatch(
            f"map of sizes {f.eta_perm.degree}x{f.kappa_perm.degree} on a {g.a}x{g.b} graph"
        )


def _refine(adj: list[list[int]], cells: list[list[int]], n: int) -> list[list[int]]:
    """Split cells by neighbor counts per cell until the partition is equitable.

    Split pieces stay in place, ordered by their count signature, so the
    result depends only on the graph and the incoming ordered partition.
    """
    while True:
        cell_of = [0] * n
        for index, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = index
        k = len(cells)
        refined: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            pieces: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                counts = [0] * k
                for w in adj[v]:
                    counts[cell_of[w]] += 1
                pieces.setdefault(tuple(counts), []).append(v)
            refined.extend(pieces[key] for key in sorted(pieces))
        if len(refined) == len(cells):
            return cells
        cells = refined


@dataclass(frozen=True)
class _SearchResult:
    generators: tuple[tuple[int, ...], ...]
    canonical_edges: tuple[Edge, ...]
    nodes: int


class _Search:
    def __init__(self, g: BiGraph, budget: int):
        self.g = g
        self.a = g.a
        self.n = g.a + g.b
        self.budget = budget
        self.adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in g.sorted_edges:
            self.adj[i].append(g.a + j)
            self.adj[g.a + j].append(i)
        self.first: tuple[list[int], tuple[Edge, ...]] | None = None
        self.best: tuple[tuple[Edge, ...], list[int]] | None = None
        self.automorphisms: list[tuple[int, ...]] = []
        self.nodes = 0

    def run(self) -> _SearchResult:
        root = [list(range(self.a)), list(range(self.a, self.n))]
        self._visit(_refine(self.adj, root, self.n), ())
        logger.debug(
            f"Automorphism search on {self.g.a}x{self.g.b} graph: {self.nodes} nodes, "
            f"{len(self.automorphisms)} generators"
        )
        return _SearchResult(tuple(self.automorphisms), self.best[0], self.nodes)

    def _visit(self, cells: list[list[int]], prefix: tuple[int, ...]) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(self.budget)
        target = None
        for index, cell in enumerate(cells):
            if len(cell) > 1 and (target is None or len(cell) < len(cells[target])):
                target = index
        if target is None:
            self._leaf(cells)
            return
        explored: list[int] = []
        for v in cells[target]:
            if explored and self._equivalent(v, explored, prefix):
                continue
            explored.append(v)
            rest = [w for w in cells[target] if w != v]
            child = cells[:target] + [[v], rest] + cells[target + 1 :]
            self._visit(_refine(self.adj, child, self.n), prefix + (v,))

    def _equivalent(self, v: int, explored: list[int], prefix: tuple[int, ...]) -> bool:
        """Whether a known automorphism fixing the prefix maps v onto an explored sibling."""
        gens = [g for g in self.automorphisms if all(g[x] == x for x in prefix)]
        if not gens:
            return False
        orbit = {v}
        frontier = [v]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = g[x]
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        return any(w in orbit for w in explored)

    def _leaf(self, cells: list[list[int]]) -> None:
        order = [cell[0] for cell in cells]
        label = [0] * self.n
        for position, v in enumerate(order):
            label[v] = position
        a = self.a
        key = tuple(sorted((label[i], label[a + j] - a) for i, j in self.g.edges))
        if self.first is None:
            self.first = (order, key)
            self.best = (key, order)
            return
        for ref_order, ref_key in ((self.first[0], self.first[1]), (self.best[1], self.best[0])):
            if key == ref_key:
                gamma = tuple(ref_order[label[v]] for v in range(self.n))
                if gamma not in self.automorphisms:
                    self.automorphisms.append(gamma)
                break
        if key < self.best[0]:
            self.best = (key, order)


@lru_cache(maxsize=4096)
def _search(g: BiGraph, budget: int) -> _SearchResult:
    return _Search(g, budget).run()


def automorphism_generators(g: BiGraph, budget: int = DEFAULT_SEARCH_BUDGET) -> list[BiAut]:
    return [BiAut.from_perm(Perm(gamma), g.a) for gamma in _search(g, budget).generators]


def aut_order(
    g: BiGraph, budget: int = DEFAULT_SEARCH_BUDGET, cap: int = DEFAULT_GROUP_CAP
) -> int:
    gens = [f.to_perm() for f in automorphism_generators(g, budget)]
    return closure(g.a + g.b, gens, cap=cap).order


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            # smaller edge stays the root
            if y < x:
                x, y = y, x
            self.parent[y] = x


def edge_orbits(g: BiGraph, budget: int = DEFAULT_SEARCH_BUDGET) -> list[list[Edge]]:
    """Orbits of Aut(g) on edges, each sorted, ordered by least representative."""
    a = g.a
    uf = _UnionFind(g.sorted_edges)
    for gamma in _search(g, budget).generators:
        for i, j in g.sorted_edges:
            uf.union((i, j), (gamma[i], gamma[a + j] - a))
    orbits: dict[Edge, list[Edge]] = {}
    for e in g.sorted_edges:
        orbits.setdefault(uf.find(e), []).append(e)
    return sorted(orbits.values())


def is_edge_transitive(g: BiGraph, budget: int = DEFAULT_SEARCH_BUDGET) -> bool:
    if not g.edges:
        return False
    return len(edge_orbits(g, budget)) == 1


def canonical_form(g: BiGraph, budget: int = DEFAULT_SEARCH_BUDGET) -> BiGraph:
    edges = _search(g, budget).canonical_edges
    return BiGraph(a=g.a, b=g.b, edges=frozenset(edges))


def canonical_certificate(
    g: BiGraph, budget: int = DEFAULT_SEARCH_BUDGET
) -> CanonicalCertificate:
    return CanonicalCertificate(serialize(canonical_form(g, budget)).encode())


def brute_force_aut(g: BiGraph) -> list[BiAut]:
    """Every automorphism, found by walking all a!·b! pairs of side permutations."""
    if g.a > BRUTE_FORCE_MAX_SIDE or g.b > BRUTE_FORCE_MAX_SIDE:
        raise ValueError(
            f"brute force is limited to {BRUTE_FORCE_MAX_SIDE}x{BRUTE_FORCE_MAX_SIDE}, "
            f"got {g.a}x{g.b}"
        )
    columns = [frozenset(c) for c in g.columns]
    found = []
    for sigma in permutations(range(g.a)):
        # kappa vertex j must go to a vertex whose column is sigma(column j)
        moved = [frozenset(sigma[i] for i in c) for c in columns]
        for tau in permutations(range(g.b)):
            if all(moved[j] == columns[tau[j]] for j in range(g.b)):
                found.append(BiAut(Perm(sigma), Perm(tau)))
    return found
