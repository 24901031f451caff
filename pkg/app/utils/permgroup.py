"""Explicit finite permutation groups, small enough to list every element.

Groups are built by breadth-first closure from their generators. Every group
the decider builds explicitly stays below a configurable element cap, so no
stabilizer-chain machinery is needed.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

from constants import DEFAULT_GROUP_CAP
from utils.errors import CapExceeded, DegreeMismatch, NoSuchUnit, OutOfRange
from utils.numtheory import euler_phi, smallest_unit_of_order
from utils.triple import Triple

# Set up logger
logger = logging.getLogger(__name__)

MAX_SYMMETRIC_DEGREE = 8


@dataclass(frozen=True, slots=True)
class Perm:
    """A permutation of {0, ..., degree-1}, stored as its image list."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Perm":
        images = list(range(degree))
        for cycle in cycles:
            for i, x in enumerate(cycle):
                images[x] = cycle[(i + 1) % len(cycle)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def __str__(self) -> str:
        seen = set()
        cycles = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cycle.append(x)
                seen.add(x)
                x = self.images[x]
            cycles.append("(" + " ".join(map(str, cycle)) + ")")
        return "".join(cycles) or "()"


def compose(p: Perm, q: Perm) -> Perm:
    """Return p∘q, the permutation x -> p(q(x))."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"cannot compose degrees {p.degree} and {q.degree}")
    pi = p.images
    return Perm(tuple(pi[x] for x in q.images))


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...]

    @cached_property
    def element_set(self) -> frozenset[Perm]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Perm) -> bool:
        return g in self.element_set

    def issubgroup(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and self.element_set <= other.element_set


@dataclass(frozen=True)
class GroupTriple:
    """A group G with two subgroups H and K, all acting on the same points."""

    G: PermGroup
    H: PermGroup
    K: PermGroup

    def __post_init__(self):
        if not (self.G.degree == self.H.degree == self.K.degree):
            raise DegreeMismatch("G, H and K must act on the same points")
        if not self.H.issubgroup(self.G):
            raise ValueError("H is not a subgroup of G")
        if not self.K.issubgroup(self.G):
            raise ValueError("K is not a subgroup of G")


def _from_elements(degree: int, elements: Iterable[Perm]) -> PermGroup:
    """Wrap an already closed element list; non-identity elements double as generators."""
    elements = tuple(elements)
    generators = tuple(g for g in elements if not g.is_identity())
    return PermGroup(degree=degree, generators=generators, elements=elements)


def closure(degree: int, gens: Sequence[Perm], cap: int = DEFAULT_GROUP_CAP) -> PermGroup:
    """Breadth-first closure of gens starting from the identity.

    New elements are g∘x for x in discovery order and g in generator order,
    so the element list is reproducible. In a finite group, closure under
    products already gives closure under inverses.
    """
    if cap < 1:
        raise ValueError(f"cap must be positive, got {cap}")
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(f"generator {g} does not act on {degree} points")
    identity = Perm.identity(degree)
    elements = [identity]
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(g, x)
            if y in seen:
                continue
            if len(elements) >= cap:
                raise CapExceeded("group closure", cap)
            seen.add(y)
            elements.append(y)
            queue.append(y)
    logger.debug(f"Closure of {len(gens)} generators on {degree} points: order {len(elements)}")
    return PermGroup(degree=degree, generators=tuple(gens), elements=tuple(elements))


def subgroup_generated(G: PermGroup, gens: Sequence[Perm]) -> PermGroup:
    for g in gens:
        if g not in G:
            raise ValueError(f"generator {g} is not in the group")
    return closure(G.degree, gens, cap=G.order)


def subgroup_intersection(H: PermGroup, K: PermGroup) -> PermGroup:
    if H.degree != K.degree:
        raise DegreeMismatch(f"cannot intersect groups of degrees {H.degree} and {K.degree}")
    return _from_elements(H.degree, (g for g in H.elements if g in K.element_set))


def triple_indices(t: GroupTriple) -> Triple:
    meet = subgroup_intersection(t.H, t.K)
    order = t.G.order
    return Triple(a=order // t.H.order, b=order // t.K.order, c=order // meet.order)


def symmetric_group(n: int, cap: int = DEFAULT_GROUP_CAP) -> PermGroup:
    if n < 1:
        raise ValueError(f"symmetric group needs n >= 1, got {n}")
    if n > MAX_SYMMETRIC_DEGREE:
        raise CapExceeded(f"S_{n}", cap)
    gens = []
    if n >= 2:
        gens.append(Perm.from_cycles(n, (0, 1)))
    if n >= 3:
        gens.append(Perm.from_cycles(n, tuple(range(n))))
    return closure(n, gens, cap=cap)


def cyclic_group(n: int) -> PermGroup:
    if n < 1:
        raise ValueError(f"cyclic group needs n >= 1, got {n}")
    gens = [Perm.from_cycles(n, tuple(range(n)))] if n > 1 else []
    return closure(n, gens, cap=n)


def trivial_subgroup(G: PermGroup) -> PermGroup:
    return _from_elements(G.degree, [Perm.identity(G.degree)])


def _direct_sum(p: Perm, q: Perm) -> Perm:
    shift = p.degree
    return Perm(p.images + tuple(shift + y for y in q.images))


def _group_product(A: PermGroup, B: PermGroup, cap: int) -> PermGroup:
    if A.order * B.order > cap:
        raise CapExceeded("direct product", cap)
    elements = tuple(_direct_sum(x, y) for x, y in product(A.elements, B.elements))
    id_a, id_b = Perm.identity(A.degree), Perm.identity(B.degree)
    generators = tuple(_direct_sum(g, id_b) for g in A.generators) + tuple(
        _direct_sum(id_a, g) for g in B.generators
    )
    return PermGroup(degree=A.degree + B.degree, generators=generators, elements=elements)


def direct_product(t1: GroupTriple, t2: GroupTriple, cap: int = DEFAULT_GROUP_CAP) -> GroupTriple:
    """(G×G', H×H', K×K') acting on the disjoint union of the two point sets."""
    return GroupTriple(
        G=_group_product(t1.G, t2.G, cap),
        H=_group_product(t1.H, t2.H, cap),
        K=_group_product(t1.K, t2.K, cap),
    )


def stabilizer(G: PermGroup, point: int) -> PermGroup:
    if not 0 <= point < G.degree:
        raise OutOfRange(f"point {point} outside 0..{G.degree - 1}")
    return _from_elements(G.degree, (g for g in G.elements if g(point) == point))


def orbit(G: PermGroup, point: int) -> frozenset[int]:
    if not 0 <= point < G.degree:
        raise OutOfRange(f"point {point} outside 0..{G.degree - 1}")
    return frozenset(g(point) for g in G.elements)


def affine_group(n: int, p: int, cap: int = DEFAULT_GROUP_CAP) -> PermGroup:
    """All maps x -> u^i x + j on Z/n, u the smallest unit of order p."""
    if p < 2 or euler_phi(n) % p:
        raise NoSuchUnit(f"{p} does not divide phi({n}) = {euler_phi(n)}")
    u = smallest_unit_of_order(n, p)
    if u is None:
        raise NoSuchUnit(f"no unit of order {p} modulo {n}")
    translation = Perm(tuple((x + 1) % n for x in range(n)))
    scaling = Perm(tuple((u * x) % n for x in range(n)))
    return closure(n, [translation, scaling], cap=cap)


def semidirect_affine(n: int, p: int, cap: int = DEFAULT_GROUP_CAP) -> GroupTriple:
    """Z/n ⋊ Z/p with H = Stab(0) and K = Stab(1), indices (n, n, np)."""
    G = affine_group(n, p, cap=cap)
    return GroupTriple(G=G, H=stabilizer(G, 0), K=stabilizer(G, 1))


def ksubsets(degree: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations(range(degree), k))


def ksubset_index(degree: int, subset: Iterable[int]) -> int:
    key = tuple(sorted(subset))
    return ksubsets(degree, len(key)).index(key)


def induced_action_on_ksubsets(G: PermGroup, k: int, cap: int = DEFAULT_GROUP_CAP) -> PermGroup:
    """The action of G on the sorted list of k-subsets of its points."""
    if not 1 <= k <= G.degree:
        raise OutOfRange(f"k={k} outside 1..{G.degree}")
    subsets = ksubsets(G.degree, k)
    if len(subsets) > cap:
        raise CapExceeded(f"{len(subsets)} {k}-subsets", cap)
    position = {s: i for i, s in enumerate(subsets)}
    gens = [
        Perm(tuple(position[tuple(sorted(g(x) for x in s))] for s in subsets))
        for g in G.generators
    ]
    return closure(len(subsets), gens, cap=cap)
