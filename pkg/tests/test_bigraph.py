import random
from itertools import product

import pytest

from utils.bigraph import (
    BiGraph,
    Side,
    complement,
    degree_profile,
    graph_product,
    is_biregular,
    neighbors,
    new_bigraph,
    parse,
    serialize,
    to_dot,
    transpose,
)
from utils.errors import DuplicateEdge, OutOfRange, ParseError

PATH = new_bigraph(2, 2, [(0, 0), (0, 1), (1, 1)])


def test_new_bigraph_validates():
    with pytest.raises(OutOfRange):
        new_bigraph(2, 2, [(2, 0)])
    with pytest.raises(DuplicateEdge):
        new_bigraph(2, 2, [(0, 0), (0, 0)])
    with pytest.raises(ValueError):
        new_bigraph(0, 2, [])


def test_rows_columns_and_degrees():
    assert PATH.rows == ((0, 1), (1,))
    assert PATH.columns == ((0,), (0, 1))
    assert degree_profile(PATH) == ((1, 2), (1, 2))
    assert neighbors(PATH, Side.KAPPA, 1) == [0, 1]
    assert neighbors(PATH, "eta", 1) == [1]
    with pytest.raises(OutOfRange):
        neighbors(PATH, Side.ETA, 2)
    assert not is_biregular(PATH, 1, 1)


def test_serialize_format():
    assert serialize(PATH) == "bipartite 2 2\ne 0 0\ne 0 1\ne 1 1\n"


def test_parse_accepts_comments_and_blank_lines():
    text = "# a path\n\nbipartite 2 2\ne 1 1\n  e 0 0\n# trailing\ne 0 1\n"
    assert parse(text) == PATH


@pytest.mark.parametrize(
    "text, line",
    [
        ("graph 2 2\n", 1),
        ("bipartite 2 x\n", 1),
        ("bipartite 2 2\ne 0 2\n", 2),
        ("bipartite 2 2\ne 0 0\n\ne 0 0\n", 4),
        ("bipartite 2 2\nf 0 0\n", 2),
        ("# only a comment\n", 0),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == line


def test_to_dot():
    g = new_bigraph(1, 2, [(0, 1)])
    assert to_dot(g) == "graph G {\n  h0;\n  k0;\n  k1;\n  h0 -- k1;\n}\n"


def test_complement_and_transpose():
    full = new_bigraph(3, 3, [(i, j) for i in range(3) for j in range(3)])
    assert complement(full).edge_count == 0
    assert complement(complement(PATH)) == PATH
    t = transpose(new_bigraph(1, 3, [(0, 0), (0, 2)]))
    assert (t.a, t.b) == (3, 1)
    assert t.edges == frozenset({(0, 0), (2, 0)})


def test_graph_product():
    edge = new_bigraph(1, 1, [(0, 0)])
    star = new_bigraph(1, 3, [(0, 0), (0, 1), (0, 2)])
    assert graph_product(edge, star) == star
    g = graph_product(PATH, star)
    assert (g.a, g.b, g.edge_count) == (2, 6, 9)
    assert (1 * 1 + 0, 1 * 3 + 2) in g.edges


def test_bigraph_is_hashable_value():
    assert hash(BiGraph(a=2, b=2, edges=PATH.edges)) == hash(PATH)


def test_complement_is_an_involution_that_partitions_the_cells():
    rng = random.Random(5)
    for a, b in product(range(1, 6), repeat=2):
        cells = list(product(range(a), range(b)))
        samples = [
            BiGraph(a=a, b=b, edges=frozenset()),
            BiGraph(a=a, b=b, edges=frozenset(cells)),
            BiGraph(a=a, b=b, edges=frozenset((i, i % b) for i in range(a))),
        ]
        samples += [BiGraph(a=a, b=b, edges=frozenset(rng.sample(cells, rng.randint(0, len(cells))))) for _ in range(10)]
        for g in samples:
            h = complement(g)
            assert complement(h) == g
            assert g.edges.isdisjoint(h.edges)
            assert g.edge_count + h.edge_count == a * b
