import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchbook.graphs import (
    Graph,
    complete,
    complete_bipartite,
    cycle,
    delete_edge,
    hypercube,
    is_regular,
    kpcq,
    max_degree,
    path,
)
from matchbook.layout import validate
from matchbook.solver import (
    FOUND,
    INFEASIBLE,
    UNKNOWN,
    BoundCertificate,
    SolveOptions,
    color_graph,
    conflict_masks,
    edge_chromatic_exact,
    endpoint_conflict_masks,
    exact_mbt,
    feasible_pages,
    first_fit_pages,
    lower_bound,
    spine_orders,
)
from oracles import brute_chromatic_index, brute_feasible, check_odd_cycle
from strategies import graphs


def check_certificate(g, cert: BoundCertificate) -> None:
    assert cert.max_degree == max_degree(g)
    if cert.reason == "regular-nonbipartite":
        assert is_regular(g) == cert.regular_degree
        assert check_odd_cycle(g, cert.odd_cycle)
        assert cert.value == cert.max_degree + 1
    elif cert.reason == "chromatic-index":
        assert cert.value == cert.chromatic_index > cert.max_degree
        coloring = cert.edge_coloring
        assert len(coloring) == g.m
        assert len(set(coloring)) == cert.chromatic_index
        for i in range(g.m):
            for j in range(i + 1, g.m):
                if set(g.edges[i]) & set(g.edges[j]):
                    assert coloring[i] != coloring[j]
        # one fewer colour was exhaustively refuted
        out = color_graph(endpoint_conflict_masks(g), cert.value - 1)
        assert out.status == INFEASIBLE
    else:
        assert cert.reason == "max-degree"
        assert cert.value == cert.max_degree


def test_lower_bound_examples():
    cert = lower_bound(kpcq(3, 3))
    assert cert.value == 5 and cert.reason == "regular-nonbipartite"
    check_certificate(kpcq(3, 3), cert)

    cert = lower_bound(cycle(4))
    assert cert.value == 2 and cert.reason == "max-degree"
    check_certificate(cycle(4), cert)

    # odd cycles are 2-regular with an odd cycle, so the structural bound
    # already gives 3 = chromatic index
    cert = lower_bound(cycle(5))
    assert cert.value == 3
    check_certificate(cycle(5), cert)

    cert = lower_bound(delete_edge(complete(5), (0, 1)))
    assert cert.value == 5 and cert.reason == "chromatic-index"
    check_certificate(delete_edge(complete(5), (0, 1)), cert)


def test_lower_bound_requires_connected():
    with pytest.raises(ValueError):
        lower_bound(Graph(4, ((0, 1),)))


def test_edge_chromatic_examples():
    assert edge_chromatic_exact(cycle(3)).value == 3
    assert edge_chromatic_exact(complete(4)).value == brute_chromatic_index(complete(4).edges) == 3
    k33 = complete_bipartite(3, 3)
    assert edge_chromatic_exact(k33).value == brute_chromatic_index(k33.edges) == 3
    assert edge_chromatic_exact(cycle(5)).value == brute_chromatic_index(cycle(5).edges) == 3


def test_edge_chromatic_budget_unknown():
    assert edge_chromatic_exact(complete(6), node_budget=1) is None


def test_feasible_pages_examples():
    c4 = cycle(4)
    out = feasible_pages(c4, (0, 1, 2, 3), 2)
    assert out.status == FOUND
    emb = validate_pages(c4, (0, 1, 2, 3), out.pages)
    assert emb

    for spine in spine_orders(3):
        assert feasible_pages(cycle(3), spine, 2).status == INFEASIBLE

    snake = snake_spine(5, 3)
    out = feasible_pages(kpcq(5, 3), snake, 7)
    assert out.status == FOUND
    assert validate_pages(kpcq(5, 3), snake, out.pages)


def validate_pages(g, spine, pages) -> bool:
    from matchbook.layout import BookEmbedding

    count = max(pages) + 1 if pages else 0
    return validate(BookEmbedding(g, tuple(spine), tuple(pages), count)).valid


def snake_spine(p, q):
    from matchbook.constructions import _snake_spine

    return _snake_spine(p, q)


def test_feasible_pages_unknown_distinct_from_infeasible():
    # k is generous so an assignment exists, but five nodes cannot reach it
    out = feasible_pages(kpcq(4, 4), tuple(range(16)), 12, node_budget=5)
    assert out.status == UNKNOWN and out.pages is None


def test_feasible_pages_rejects_bad_spine():
    with pytest.raises(ValueError):
        feasible_pages(cycle(3), (0, 1), 2)


@given(graphs(min_n=2, max_n=6), st.integers(1, 3))
@settings(max_examples=60)
def test_feasible_pages_agrees_with_brute_force(g, k):
    if g.m > 10:
        return
    spine = tuple(range(g.n))
    out = feasible_pages(g, spine, k)
    assert out.status in (FOUND, INFEASIBLE)
    assert (out.status == FOUND) == brute_feasible(g.edges, spine, k)
    if out.status == FOUND:
        assert validate_pages(g, spine, out.pages)
        assert max(out.pages, default=-1) < k


@given(graphs(min_n=2, max_n=7))
@settings(max_examples=40)
def test_feasible_pages_monotone(g):
    spine = tuple(range(g.n))
    for k in range(1, 5):
        if feasible_pages(g, spine, k).status == FOUND:
            assert feasible_pages(g, spine, k + 1).status == FOUND
            break


def test_first_fit_is_valid():
    for g in [complete(6), kpcq(4, 4), hypercube(3)]:
        pages = first_fit_pages(g, tuple(range(g.n)))
        assert validate_pages(g, range(g.n), pages)


def test_spine_order_counts():
    assert list(spine_orders(1)) == [(0,)]
    assert list(spine_orders(2)) == [(0, 1)]
    assert len(list(spine_orders(4))) == 3  # (n-1)!/2
    assert len(list(spine_orders(5, symmetry=False))) == 120
    for order in spine_orders(5):
        assert order[0] == 0 and order[1] < order[-1]


def test_exact_mbt_basics():
    res = exact_mbt(complete(4))
    assert res.value == 4 and res.exhaustive
    assert validate(res.witness).valid and res.witness.page_count == 4

    assert exact_mbt(cycle(4)).value == 2
    assert exact_mbt(path(3)).value == 2
    assert exact_mbt(path(2)).value == 1
    assert exact_mbt(path(1)).value == 0
    assert exact_mbt(cycle(3)).value == 3


def test_exact_mbt_rejects_disconnected():
    with pytest.raises(ValueError):
        exact_mbt(Graph(3, ((0, 1),)))


def test_sandwich_lower_bound_vs_value():
    for g in [complete(4), cycle(5), complete_bipartite(2, 3), path(4), hypercube(2)]:
        res = exact_mbt(g)
        assert lower_bound(g).value <= res.value


@pytest.mark.parametrize(
    "g",
    [complete(4), complete(5), cycle(3), cycle(4), cycle(5), path(4), complete_bipartite(2, 2)],
)
def test_symmetry_quotient_loses_nothing(g):
    with_sym = exact_mbt(g, SolveOptions(symmetry=True))
    without = exact_mbt(g, SolveOptions(symmetry=False))
    assert with_sym.value == without.value
    assert with_sym.exhaustive and without.exhaustive


def test_parallel_scan_is_deterministic():
    g = complete_bipartite(3, 3)
    serial = exact_mbt(g, SolveOptions(jobs=1))
    parallel = exact_mbt(g, SolveOptions(jobs=2, chunk_size=8))
    assert serial.value == parallel.value == 3
    assert serial.exhaustive == parallel.exhaustive
    assert serial.witness.spine == parallel.witness.spine
    assert serial.witness.pages == parallel.witness.pages


def test_max_pages_cap():
    res = exact_mbt(complete(4), SolveOptions(max_pages=3))
    assert res.value is None and res.witness is None and not res.exhaustive


def test_timeout_returns_upper_bound():
    res = exact_mbt(complete_bipartite(3, 3), SolveOptions(timeout_s=0.0))
    assert res.stats.timed_out and not res.exhaustive
    assert res.value is not None
    assert validate(res.witness).valid


def test_witness_page_count_matches_value():
    for g in [complete(5), cycle(5), complete_bipartite(3, 3)]:
        res = exact_mbt(g)
        assert res.witness.page_count == res.value


def test_starved_order_budget_never_claims_exactness():
    # with a 3-node budget every order scan is unknown, so the result can
    # only be the greedy upper bound, flagged non-exhaustive
    res = exact_mbt(complete_bipartite(3, 3), SolveOptions(order_nodes=3))
    assert not res.exhaustive
    assert res.value is not None and validate(res.witness).valid
    assert res.value >= 3


def test_parallel_matches_serial_on_q3():
    g = hypercube(3)
    serial = exact_mbt(g, SolveOptions(jobs=1))
    parallel = exact_mbt(g, SolveOptions(jobs=3, chunk_size=16))
    assert serial.value == parallel.value == 3
    assert serial.exhaustive and parallel.exhaustive
    assert serial.witness.spine == parallel.witness.spine


@pytest.mark.parametrize("p,q", [(4, 3), (3, 4)])
def test_solver_confirms_grid_closed_form(p, q):
    # independent exhaustive proof that the construction's page count is
    # optimal on instances one step past the smallest one
    g = kpcq(p, q)
    res = exact_mbt(g)
    assert res.exhaustive
    assert res.value == p + 2 == max_degree(g) + 1
    assert validate(res.witness).valid
