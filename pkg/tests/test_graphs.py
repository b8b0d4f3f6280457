import pytest
from hypothesis import given
from hypothesis import strategies as st

from matchbook.graphs import (
    Graph,
    adjacency,
    bipartition,
    cartesian_product,
    complete,
    complete_bipartite,
    cycle,
    degrees,
    delete_edge,
    hypercube,
    is_connected,
    is_regular,
    kpcq,
    max_degree,
    path,
    product_labels,
    vertex_labels,
)
from oracles import check_odd_cycle, product_edges_by_definition
from strategies import graphs


def test_complete_basic():
    assert complete(1).n == 1 and complete(1).m == 0
    k4 = complete(4)
    assert k4.m == 6 and is_regular(k4) == 3
    assert complete(5).m == 10
    with pytest.raises(ValueError):
        complete(0)


def test_k5_minus_edge():
    k5e = delete_edge(complete(5), (0, 1))
    assert k5e.m == 9
    assert max_degree(k5e) == 4 and is_regular(k5e) is None


def test_cycle_basic():
    c3 = cycle(3)
    assert c3.m == 3 and not bipartition(c3).is_bipartite
    assert bipartition(cycle(4)).is_bipartite
    with pytest.raises(ValueError):
        cycle(2)


def test_path_basic():
    p3 = path(3)
    assert p3.m == 2
    assert set(p3.edges[0]) & set(p3.edges[1]) == {1}
    assert is_regular(p3) is None
    with pytest.raises(ValueError):
        path(0)


def test_complete_bipartite_and_hypercube():
    k33 = complete_bipartite(3, 3)
    assert k33.m == 9 and is_regular(k33) == 3 and bipartition(k33).is_bipartite
    q3 = hypercube(3)
    assert q3.m == 12 and is_regular(q3) == 3
    assert hypercube(0).n == 1
    with pytest.raises(ValueError):
        complete_bipartite(0, 3)
    with pytest.raises(ValueError):
        hypercube(-1)


def test_graph_canonicalisation_and_rejects():
    g = Graph(3, ((2, 1), (0, 1)))
    assert g.edges == ((0, 1), (1, 2))
    with pytest.raises(ValueError, match="duplicate edge"):
        Graph(3, ((0, 1), (1, 0)))
    with pytest.raises(ValueError, match="self-loop"):
        Graph(3, ((1, 1),))
    with pytest.raises(ValueError, match="out of range"):
        Graph(2, ((0, 5),))


def test_structural_equality_ignores_name():
    assert Graph(3, ((0, 1),), name="a") == Graph(3, ((0, 1),), name="b")
    assert cartesian_product(complete(1), cycle(4)) == cycle(4)


def test_product_k5_c3():
    g = cartesian_product(complete(5), cycle(3))
    assert g.n == 15
    assert g.m == 45 and is_regular(g) == 6
    # cross-check against brute-force adjacency enumeration
    oracle = product_edges_by_definition(5, complete(5).edges, 3, cycle(3).edges)
    assert set(g.edges) == oracle


def test_product_degrees():
    assert max_degree(kpcq(5, 3)) == 6
    assert is_regular(kpcq(6, 3)) == 7


def test_bipartition_certificates():
    col = bipartition(cycle(4)).coloring
    assert col[0] == col[2] != col[1] == col[3]

    res = bipartition(kpcq(3, 3))
    assert not res.is_bipartite
    assert check_odd_cycle(kpcq(3, 3), res.odd_cycle)

    q3 = hypercube(3)
    col = bipartition(q3).coloring
    parity = tuple(bin(v).count("1") % 2 for v in range(8))
    assert col == parity or col == tuple(1 - c for c in parity)


def test_delete_edge():
    assert delete_edge(complete(5), (0, 1)).m == 9
    p = delete_edge(cycle(3), (0, 1))
    assert sorted(degrees(p)) == [1, 1, 2] and is_connected(p)
    k = delete_edge(complete(4), (2, 3))
    assert max_degree(k) == 3 and is_regular(k) is None
    with pytest.raises(ValueError):
        delete_edge(cycle(4), (0, 2))


def test_product_labels_bijection():
    labs = product_labels(5, 3)
    assert len(labs) == 15
    assert {(l.left, l.right) for l in labs} == {(x, y) for x in range(5) for y in range(3)}
    for vid, lab in enumerate(labs):
        assert lab.right * 5 + lab.left == vid


def test_vertex_labels():
    assert vertex_labels(kpcq(3, 3))[0] == "u1v1"
    assert vertex_labels(kpcq(3, 3))[3] == "u2v1"
    assert vertex_labels(hypercube(3))[5] == "101"
    assert vertex_labels(path(2)) == ("0", "1")


FACTORS = [complete(3), complete(4), cycle(3), cycle(4), path(2), path(4), complete_bipartite(2, 2)]


@pytest.mark.parametrize("g", FACTORS)
@pytest.mark.parametrize("b", FACTORS)
def test_product_edge_count_formula(g, b):
    prod = cartesian_product(g, b)
    assert prod.n <= 50
    assert prod.m == g.m * b.n + g.n * b.m
    oracle = product_edges_by_definition(g.n, g.edges, b.n, b.edges)
    assert set(prod.edges) == oracle


@pytest.mark.parametrize("g", FACTORS)
@pytest.mark.parametrize("b", FACTORS)
def test_product_commutes_up_to_isomorphism(g, b):
    ab = cartesian_product(g, b)
    ba = cartesian_product(b, g)
    assert ab.n == ba.n and ab.m == ba.m
    assert sorted(degrees(ab)) == sorted(degrees(ba))


@pytest.mark.parametrize("g", FACTORS)
@pytest.mark.parametrize("b", FACTORS)
def test_product_regular_iff_both_factors_regular(g, b):
    prod = cartesian_product(g, b)
    rg, rb = is_regular(g), is_regular(b)
    if rg is not None and rb is not None:
        assert is_regular(prod) == rg + rb
    else:
        assert is_regular(prod) is None


@given(graphs(max_n=9))
def test_bipartition_is_sound(g):
    res = bipartition(g)
    if res.is_bipartite:
        assert all(res.coloring[u] != res.coloring[v] for u, v in g.edges)
    else:
        assert check_odd_cycle(g, res.odd_cycle)


@given(graphs(max_n=9))
def test_adjacency_matches_edges(g):
    adj = adjacency(g)
    listed = {(min(u, v), max(u, v)) for u in range(g.n) for v in adj[u]}
    assert listed == set(g.edges)
