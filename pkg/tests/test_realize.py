import pytest

from utils.autgraph import canonical_certificate, is_edge_transitive
from utils.bigraph import is_biregular
from utils.errors import CapExceeded, DivisibilityViolated, NonPrimeField
from utils.numtheory import q_binomial
from utils.permgroup import (
    GroupTriple,
    compose,
    cyclic_group,
    semidirect_affine,
    stabilizer,
    symmetric_group,
    trivial_subgroup,
)
from utils.realize import (
    are_complements,
    complete_bipartite,
    coset_intersection_graph,
    diagonal_matching,
    matching_complement,
    pair_block_complement,
    s4_sylow_pair,
    s5_pair_stabilizers,
    subset_incidence_graph,
    subspace_complement_graph,
    subspaces,
)


def _parameters(g):
    return g.a, g.b, g.edge_count


@pytest.mark.parametrize(
    "build, expected",
    [
        (s4_sylow_pair, (8, 8, 24)),
        (s5_pair_stabilizers, (10, 10, 30)),
        (lambda: semidirect_affine(7, 3), (7, 7, 21)),
        (lambda: semidirect_affine(9, 2), (9, 9, 18)),
    ],
)
def test_coset_graphs(build, expected):
    cig = coset_intersection_graph(build())
    assert _parameters(cig.graph) == expected
    assert is_edge_transitive(cig.graph)


def test_edge_labels_lie_in_both_cosets():
    t = s4_sylow_pair()
    cig = coset_intersection_graph(t)
    for (i, j), x in zip(cig.graph.sorted_edges, cig.edge_labels):
        assert compose(cig.eta_labels[i].inverse(), x) in t.H
        assert compose(cig.kappa_labels[j].inverse(), x) in t.K


def test_regular_action_gives_a_star():
    G = cyclic_group(5)
    cig = coset_intersection_graph(GroupTriple(G=G, H=trivial_subgroup(G), K=G))
    assert _parameters(cig.graph) == (5, 1, 5)


def test_small_families():
    assert _parameters(complete_bipartite(2, 3)) == (2, 3, 6)
    assert _parameters(diagonal_matching(4)) == (4, 4, 4)
    cycle = matching_complement(3)
    assert _parameters(cycle) == (3, 3, 6)
    assert is_biregular(cycle, 2, 2)
    with pytest.raises(ValueError):
        matching_complement(1)


def test_pair_block_complement():
    g = pair_block_complement(5, 2)
    assert _parameters(g) == (5, 10, 30)
    assert is_biregular(g, 6, 3)
    assert is_edge_transitive(g)
    assert _parameters(pair_block_complement(3, 1)) == (3, 3, 3)
    with pytest.raises(DivisibilityViolated):
        pair_block_complement(5, 1)


def test_subset_incidence_graph():
    g = subset_incidence_graph(5, 3, 1)
    assert _parameters(g) == (5, 10, 30)
    assert is_edge_transitive(g)
    doubled = subset_incidence_graph(4, 2, 2)
    assert _parameters(doubled) == (4, 12, 24)
    assert is_biregular(doubled, 6, 2)


@pytest.mark.parametrize("q, n, d", [(2, 3, 1), (2, 4, 2), (3, 3, 2), (3, 4, 2), (5, 2, 1)])
def test_subspace_counts(q, n, d):
    found = subspaces(q, n, d)
    assert len(found) == q_binomial(n, d, q)
    assert len(set(found)) == len(found)


def test_complements():
    line = ((1, 0, 0), (0, 1, 0))
    assert are_complements(((0, 0, 1),), line, 2, 3)
    assert not are_complements(((1, 1, 0),), line, 2, 3)


@pytest.mark.parametrize(
    "q, n, d, degree",
    [(2, 2, 1, 2), (2, 3, 1, 4), (3, 2, 1, 3), (2, 4, 1, 8), (2, 4, 2, 16)],
)
def test_subspace_complement_degrees(q, n, d, degree):
    g = subspace_complement_graph(q, n, d)
    assert is_biregular(g, degree, degree)


def test_fano_complement_graph():
    g = subspace_complement_graph(2, 3, 1)
    assert _parameters(g) == (7, 7, 28)
    assert is_edge_transitive(g)


def test_subspace_errors():
    with pytest.raises(NonPrimeField):
        subspaces(4, 2, 1)
    with pytest.raises(CapExceeded):
        subspace_complement_graph(13, 6, 3)


@pytest.mark.parametrize("n", range(2, 7))
def test_matching_complement_is_the_point_stabilizer_graph(n):
    G = symmetric_group(n)
    cig = coset_intersection_graph(GroupTriple(G=G, H=stabilizer(G, 0), K=stabilizer(G, 1)))
    assert _parameters(cig.graph) == (n, n, n * (n - 1))
    assert canonical_certificate(cig.graph) == canonical_certificate(matching_complement(n))
