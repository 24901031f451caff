import random
from itertools import combinations_with_replacement

import pytest

from constants import DEFAULT_GROUP_CAP
from utils.errors import CapExceeded, DegreeMismatch, NoSuchUnit, OutOfRange
from utils.numtheory import euler_phi, is_prime
from utils.permgroup import (
    GroupTriple,
    Perm,
    affine_group,
    closure,
    compose,
    cyclic_group,
    direct_product,
    induced_action_on_ksubsets,
    ksubset_index,
    orbit,
    semidirect_affine,
    stabilizer,
    subgroup_generated,
    subgroup_intersection,
    symmetric_group,
    triple_indices,
    trivial_subgroup,
)
from utils.selfcheck import group_corpus
from utils.triple import Triple


def test_perm_basics():
    p = Perm.from_cycles(4, (0, 1, 2))
    assert p.images == (1, 2, 0, 3)
    assert str(p) == "(0 1 2)"
    assert str(Perm.identity(3)) == "()"
    assert compose(p, p.inverse()).is_identity()
    with pytest.raises(ValueError):
        Perm((0, 0, 1))


def test_compose_applies_right_factor_first():
    p = Perm.from_cycles(3, (0, 1))
    q = Perm.from_cycles(3, (1, 2))
    pq = compose(p, q)
    assert pq(1) == 2
    assert pq(2) == 0
    with pytest.raises(DegreeMismatch):
        compose(p, Perm.identity(4))


def test_symmetric_and_cyclic_orders():
    assert symmetric_group(1).order == 1
    assert symmetric_group(4).order == 24
    assert symmetric_group(5).order == 120
    assert cyclic_group(6).order == 6
    with pytest.raises(CapExceeded):
        symmetric_group(9)


def test_closure_cap():
    gens = symmetric_group(5).generators
    with pytest.raises(CapExceeded):
        closure(5, list(gens), cap=10)


def test_closure_order_is_reproducible():
    gens = [Perm.from_cycles(4, (0, 1)), Perm.from_cycles(4, (0, 1, 2, 3))]
    assert closure(4, gens).elements == closure(4, gens).elements


def test_subgroups_and_intersection():
    G = symmetric_group(4)
    H = stabilizer(G, 0)
    K = stabilizer(G, 1)
    meet = subgroup_intersection(H, K)
    assert (H.order, K.order, meet.order) == (6, 6, 2)
    assert meet.issubgroup(H) and meet.issubgroup(G)
    assert trivial_subgroup(G).order == 1
    with pytest.raises(ValueError):
        subgroup_generated(cyclic_group(4), [Perm.from_cycles(4, (0, 1))])


def test_orbit_stabilizer():
    G = symmetric_group(4)
    for point in range(4):
        assert len(orbit(G, point)) * stabilizer(G, point).order == G.order
    with pytest.raises(OutOfRange):
        stabilizer(G, 4)


def test_affine_groups():
    assert affine_group(7, 3).order == 21
    assert affine_group(9, 3).order == 27
    assert triple_indices(semidirect_affine(7, 3)) == Triple.of(7, 7, 21)
    assert triple_indices(semidirect_affine(5, 2)) == Triple.of(5, 5, 10)
    with pytest.raises(NoSuchUnit):
        affine_group(8, 3)


def test_direct_product_multiplies_indices():
    t = direct_product(semidirect_affine(5, 2), semidirect_affine(3, 2))
    assert triple_indices(t) == Triple.of(15, 15, 60)


def test_group_triple_rejects_non_subgroups():
    G = cyclic_group(4)
    with pytest.raises(ValueError):
        GroupTriple(G=G, H=symmetric_group(4), K=G)


def test_induced_action_on_pairs():
    G = induced_action_on_ksubsets(symmetric_group(4), 2)
    assert G.degree == 6
    assert G.order == 24
    assert ksubset_index(5, (0, 1)) == 0
    assert ksubset_index(5, (4, 3)) == 9


@pytest.mark.parametrize(
    "G",
    [symmetric_group(4), affine_group(5, 2), affine_group(7, 3)],
    ids=["S4", "affine(5,2)", "affine(7,3)"],
)
def test_generated_subgroup_orders_divide_the_group_order(G):
    rng = random.Random(11)
    for _ in range(40):
        gens = rng.sample(G.elements, rng.randint(1, 3))
        assert G.order % subgroup_generated(G, gens).order == 0


def test_semidirect_affine_indices_for_every_admissible_pair():
    checked = 0
    for n in range(2, 31):
        for p in range(2, n):
            if not is_prime(p) or euler_phi(n) % p or n * p > 1000:
                continue
            t = semidirect_affine(n, p)
            assert t.G.order == n * p
            assert subgroup_intersection(t.H, t.K).order == 1
            assert triple_indices(t) == Triple.of(n, n, n * p)
            checked += 1
    assert checked > 20


@pytest.mark.slow
def test_direct_product_indices_over_the_group_corpus():
    corpus = [t for _, t in group_corpus(DEFAULT_GROUP_CAP)]
    for t1, t2 in combinations_with_replacement(corpus, 2):
        if t1.G.order * t2.G.order > 5000:
            continue
        expected = triple_indices(t1) * triple_indices(t2)
        assert triple_indices(direct_product(t1, t2)) == expected
