"""From groups to graphs: coset intersection graphs and the witness families."""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from sympy import GF
from sympy.polys.matrices import DomainMatrix

from constants import DEFAULT_GROUP_CAP
from utils.bigraph import BiGraph, Edge, complement
from utils.errors import CapExceeded, DivisibilityViolated, InvariantViolated, NonPrimeField
from utils.numtheory import binomial, is_prime, q_binomial
from utils.permgroup import (
    GroupTriple,
    Perm,
    PermGroup,
    compose,
    induced_action_on_ksubsets,
    ksubset_index,
    stabilizer,
    subgroup_generated,
    subgroup_intersection,
    symmetric_group,
)

# Set up logger
logger = logging.getLogger(__name__)

# Subspace graphs larger than this are not built explicitly.
MAX_SUBSPACES = 5_000


@dataclass(frozen=True)
class LabeledCIG:
    """A coset intersection graph together with the coset each vertex and edge stands for.

    edge_labels[k] is the representative x of the H∩K coset mapped to
    graph.sorted_edges[k], i.e. x lies in both cosets the edge joins.
    """

    graph: BiGraph
    eta_labels: tuple[Perm, ...]
    kappa_labels: tuple[Perm, ...]
    edge_labels: tuple[Perm, ...]


def _left_cosets(G: PermGroup, H: PermGroup) -> tuple[dict[Perm, int], list[Perm]]:
    """Index every element by its left coset xH; the least unseen element represents each coset."""
    index: dict[Perm, int] = {}
    reps: list[Perm] = []
    for x in G.elements:
        if x in index:
            continue
        i = len(reps)
        reps.append(x)
        for h in H.elements:
            index[compose(x, h)] = i
    return index, reps


def coset_intersection_graph(t: GroupTriple) -> LabeledCIG:
    """Bipartite graph on G/H and G/K, joining two cosets when they meet.

    x(H∩K) -> (xH, xK) is a bijection onto the edges; the edge count and the
    degrees [H:H∩K], [K:H∩K] are checked, not assumed.
    """
    G, H, K = t.G, t.H, t.K
    meet = subgroup_intersection(H, K)
    eta_index, eta_reps = _left_cosets(G, H)
    kappa_index, kappa_reps = _left_cosets(G, K)
    _, meet_reps = _left_cosets(G, meet)

    edge_label: dict[Edge, Perm] = {}
    for x in G.elements:
        edge_label.setdefault((eta_index[x], kappa_index[x]), x)

    if len(edge_label) != len(meet_reps):
        raise InvariantViolated(
            f"{len(edge_label)} edges but {len(meet_reps)} cosets of H∩K"
        )
    graph = BiGraph(a=len(eta_reps), b=len(kappa_reps), edges=frozenset(edge_label))
    r_eta, r_kappa = H.order // meet.order, K.order // meet.order
    if any(len(r) != r_eta for r in graph.rows) or any(len(c) != r_kappa for c in graph.columns):
        raise InvariantViolated(f"coset graph is not ({r_eta}, {r_kappa})-biregular")
    logger.debug(
        f"Coset intersection graph: {graph.a}x{graph.b}, {graph.edge_count} edges, |G|={G.order}"
    )
    return LabeledCIG(
        graph=graph,
        eta_labels=tuple(eta_reps),
        kappa_labels=tuple(kappa_reps),
        edge_labels=tuple(edge_label[e] for e in graph.sorted_edges),
    )


def complete_bipartite(a: int, b: int) -> BiGraph:
    if a < 1 or b < 1:
        raise ValueError(f"complete bipartite graph needs a, b >= 1, got ({a}, {b})")
    return BiGraph(a=a, b=b, edges=frozenset(product(range(a), range(b))))


def diagonal_matching(f: int) -> BiGraph:
    """The f×f perfect matching, the graph of (Z/f, 1, 1)."""
    if f < 1:
        raise ValueError(f"matching needs f >= 1, got {f}")
    return BiGraph(a=f, b=f, edges=frozenset((i, i) for i in range(f)))


def matching_complement(n: int) -> BiGraph:
    """K_{n,n} minus the matching {(i, i)}; realizes (n, n, n(n-1))."""
    if n < 2:
        raise ValueError(f"matching complement needs n >= 2, got {n}")
    return complement(diagonal_matching(n))


def pair_block_complement(n: int, l: int) -> BiGraph:
    """Complement of the incidence graph of the multigraph on n points with
    2l/(n-1) parallel edges between every pair.

    Kappa vertex pair_index * m + copy stands for one copy of a pair; the
    result has eta-degree (n-2)l and kappa-degree n-2.
    """
    if n < 3:
        raise ValueError(f"pair block construction needs n >= 3, got {n}")
    if l < 1:
        raise ValueError(f"l must be positive, got {l}")
    if (2 * l) % (n - 1):
        raise DivisibilityViolated(f"{n - 1} does not divide 2l = {2 * l}")
    m = 2 * l // (n - 1)
    incidence = set()
    for index, (i, j) in enumerate(combinations(range(n), 2)):
        for copy in range(m):
            k = index * m + copy
            incidence.add((i, k))
            incidence.add((j, k))
    return complement(BiGraph(a=n, b=n * l, edges=frozenset(incidence)))


def subset_incidence_graph(n: int, p: int, m: int) -> BiGraph:
    """Points against every p-subset of an n-set, each subset repeated m times."""
    if not 1 <= p <= n or m < 1:
        raise ValueError(f"need 1 <= p <= n and m >= 1, got n={n}, p={p}, m={m}")
    edges = set()
    for index, subset in enumerate(combinations(range(n), p)):
        for copy in range(m):
            k = index * m + copy
            edges.update((i, k) for i in subset)
    return BiGraph(a=n, b=binomial(n, p) * m, edges=frozenset(edges))


Subspace = tuple[tuple[int, ...], ...]


@lru_cache(maxsize=64)
def subspaces(q: int, n: int, d: int) -> tuple[Subspace, ...]:
    """Every d-dimensional subspace of F_q^n, once each, as its reduced row-echelon basis."""
    if not is_prime(q):
        raise NonPrimeField(f"only prime fields are supported, got q={q}")
    if not 0 <= d <= n:
        raise ValueError(f"need 0 <= d <= n, got n={n}, d={d}")
    found = []
    for pivots in combinations(range(n), d):
        free = [(r, j) for r, pivot in enumerate(pivots) for j in range(pivot + 1, n) if j not in pivots]
        for values in product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(d)]
            for r, pivot in enumerate(pivots):
                rows[r][pivot] = 1
            for (r, j), value in zip(free, values):
                rows[r][j] = value
            found.append(tuple(tuple(row) for row in rows))
    return tuple(found)


def _rank_mod(rows: list[tuple[int, ...]], q: int, n: int) -> int:
    field = GF(q)
    matrix = DomainMatrix([[field(x) for x in row] for row in rows], (len(rows), n), field)
    return matrix.rank()


def are_complements(h: Subspace, k: Subspace, q: int, n: int) -> bool:
    """Dimensions add up to n, so trivial intersection is the same as spanning F_q^n."""
    return _rank_mod(list(h) + list(k), q, n) == n


def subspace_complement_graph(q: int, n: int, d: int) -> BiGraph:
    """d-subspaces against (n-d)-subspaces of F_q^n, joined when complementary."""
    if not is_prime(q):
        raise NonPrimeField(f"only prime fields are supported, got q={q}")
    if not 0 < d < n:
        raise ValueError(f"need 0 < d < n, got n={n}, d={d}")
    size = q_binomial(n, d, q)
    if size > MAX_SUBSPACES:
        raise CapExceeded(f"{size} subspaces", MAX_SUBSPACES)
    eta = subspaces(q, n, d)
    kappa = subspaces(q, n, n - d)
    edges = frozenset(
        (i, j)
        for i, h in enumerate(eta)
        for j, k in enumerate(kappa)
        if are_complements(h, k, q, n)
    )
    logger.debug(f"Subspace complement graph for (q, n, d) = ({q}, {n}, {d}): {len(edges)} edges")
    return BiGraph(a=len(eta), b=len(kappa), edges=edges)


def s4_sylow_pair(cap: int = DEFAULT_GROUP_CAP) -> GroupTriple:
    """S_4 with two distinct subgroups of order 3; indices (8, 8, 24)."""
    G = symmetric_group(4, cap=cap)
    H = subgroup_generated(G, [Perm.from_cycles(4, (0, 1, 2))])
    K = subgroup_generated(G, [Perm.from_cycles(4, (0, 1, 3))])
    return GroupTriple(G=G, H=H, K=K)


def s5_pair_stabilizers(cap: int = DEFAULT_GROUP_CAP) -> GroupTriple:
    """S_5 acting on 2-subsets with the stabilizers of {0,1} and {2,3}; indices (10, 10, 30)."""
    G = induced_action_on_ksubsets(symmetric_group(5, cap=cap), 2, cap=cap)
    H = stabilizer(G, ksubset_index(5, (0, 1)))
    K = stabilizer(G, ksubset_index(5, (2, 3)))
    return GroupTriple(G=G, H=H, K=K)
