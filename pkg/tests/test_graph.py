import math
from itertools import combinations, permutations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oneround.graph import (
    INFINITE,
    DuplicateEdgeError,
    EliminationOrder,
    GraphError,
    LabelledGraph,
    MalformedLineError,
    SelfLoopError,
    VertexRangeError,
    all_graphs,
    degeneracy,
    degeneracy_order,
    diameter,
    gen_fixed_bipartite,
    gen_k_degenerate,
    gen_planar,
    gen_square_free,
    generalized_degeneracy_order,
    has_square,
    has_triangle,
    is_bipartite_with_parts,
    parse_edge_list,
    write_edge_list,
)


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(1, n + 1), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return LabelledGraph(n, chosen)


def floyd_warshall_diameter(g):
    n = g.n
    d = [[0 if i == j else math.inf for j in range(n + 1)] for i in range(n + 1)]
    for u, v in g.edges:
        d[u][v] = d[v][u] = 1
    for m in range(1, n + 1):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if d[i][m] + d[m][j] < d[i][j]:
                    d[i][j] = d[i][m] + d[m][j]
    return max(d[i][j] for i in range(1, n + 1) for j in range(1, n + 1))


def min_k_by_permutations(g):
    """Degeneracy straight from the definition: best permutation over all orders."""
    best = math.inf
    for order in permutations(g.vertices()):
        seen, worst = set(), 0
        for r in order:
            worst = max(worst, len(g.neighbors(r) & seen))
            seen.add(r)
        best = min(best, worst)
    return best


# -- the value type ----------------------------------------------------------


def test_neighbors_and_edges_are_canonical():
    g = LabelledGraph(4, [(2, 1), (3, 2), (1, 2)])
    assert g.edges == {(1, 2), (2, 3)}
    assert g.neighbors(2) == {1, 3}
    assert g.neighbors(4) == frozenset()
    assert g == LabelledGraph(4, [(1, 2), (2, 3)])
    assert hash(g) == hash(LabelledGraph(4, [(2, 3), (1, 2)]))


@pytest.mark.parametrize("edges", [[(1, 1)], [(0, 1)], [(1, 5)]])
def test_rejects_invalid_edges(edges):
    with pytest.raises(GraphError):
        LabelledGraph(4, edges)


def test_rejects_empty_vertex_set():
    with pytest.raises(GraphError):
        LabelledGraph(0)


def test_complement_of_complete_is_empty():
    assert LabelledGraph.complete(5).complement() == LabelledGraph.empty(5)


# -- degeneracy --------------------------------------------------------------


def test_path_has_order_for_k1():
    order = degeneracy_order(LabelledGraph.path(3), 1)
    assert order is not None
    assert order.is_valid_for(LabelledGraph.path(3))


def test_k4_orders():
    k4 = LabelledGraph.complete(4)
    assert degeneracy_order(k4, 2) is None
    order = degeneracy_order(k4, 3)
    assert order is not None and order.is_valid_for(k4)


def test_order_is_deterministic_lowest_id_first():
    # star centred on 1: after leaves 2..4 go, the centre has degree 1 and wins on ID
    order = degeneracy_order(LabelledGraph.star(5), 1)
    assert order.removal_sequence == (2, 3, 4, 1, 5)
    assert order.order == (5, 1, 4, 3, 2)


def test_invalid_order_detected():
    assert not EliminationOrder((1, 2, 3, 4), 2).is_valid_for(LabelledGraph.complete(4))
    assert not EliminationOrder((1, 2), 1).is_valid_for(LabelledGraph.path(3))


@pytest.mark.parametrize(
    "g, expected",
    [
        (LabelledGraph(1), 0),
        (LabelledGraph.cycle(4), 2),
        (LabelledGraph.path(6), 1),
        (LabelledGraph.complete(6), 5),
        (LabelledGraph.empty(3), 0),
    ],
)
def test_degeneracy_values(g, expected):
    assert degeneracy(g) == expected


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6))
def test_degeneracy_matches_definition(g):
    assert degeneracy(g) == min_k_by_permutations(g)


@settings(max_examples=150, deadline=None)
@given(graphs(), st.integers(0, 5))
def test_returned_orders_validate_by_recount(g, k):
    order = degeneracy_order(g, k)
    assert (order is not None) == (degeneracy(g) <= k)
    if order is not None:
        assert order.is_valid_for(g)


def test_degeneracy_agrees_with_networkx_core_number():
    for seed in range(5):
        g = gen_k_degenerate(80, 3, seed)
        nxg = nx.Graph(list(g.edges))
        nxg.add_nodes_from(g.vertices())
        assert degeneracy(g) == max(nx.core_number(nxg).values())


def test_generalized_order_accepts_complete_graph():
    order = generalized_degeneracy_order(LabelledGraph.complete(7), 1)
    assert order is not None
    assert degeneracy_order(LabelledGraph.complete(7), 1) is None


# -- oracles -----------------------------------------------------------------


def test_oracles_on_small_graphs():
    c4 = LabelledGraph.cycle(4)
    assert has_square(c4) and not has_triangle(c4) and diameter(c4) == 2
    p3 = LabelledGraph.path(3)
    assert not has_square(p3) and diameter(p3) == 2
    assert has_triangle(LabelledGraph.complete(3))
    assert diameter(LabelledGraph(1)) == 0
    assert diameter(LabelledGraph(3, [(1, 2)])) == INFINITE
    assert INFINITE > 10**9


def test_square_is_not_required_to_be_induced():
    assert has_square(LabelledGraph.complete(4))


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=8))
def test_diameter_bfs_matches_floyd_warshall(g):
    assert diameter(g) == floyd_warshall_diameter(g)


def test_diameter_exhaustive_n5_against_floyd_warshall():
    for g in all_graphs(5):
        assert diameter(g) == floyd_warshall_diameter(g)


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=8))
def test_square_and_triangle_against_networkx(g):
    nxg = nx.Graph(list(g.edges))
    nxg.add_nodes_from(g.vertices())
    assert has_triangle(g) == (sum(nx.triangles(nxg).values()) > 0)
    c4 = nx.cycle_graph(4)
    matcher = nx.algorithms.isomorphism.GraphMatcher(nxg, c4)
    assert has_square(g) == matcher.subgraph_is_monomorphic()


# -- generators --------------------------------------------------------------


def test_gen_k_degenerate_small_cases():
    g = gen_k_degenerate(5, 1, 11)
    assert nx.is_forest(nx.Graph(list(g.edges)) if g.m else nx.empty_graph(1))
    assert gen_k_degenerate(1, 0, 3) == LabelledGraph(1)
    assert degeneracy(gen_k_degenerate(50, 3, 7)) <= 3


@pytest.mark.parametrize("k", [0, 1, 2, 3, 5])
@pytest.mark.parametrize("n", [1, 2, 10, 60])
def test_gen_k_degenerate_bound_and_determinism(n, k):
    for seed in range(3):
        g = gen_k_degenerate(n, k, seed)
        assert degeneracy(g) <= k
        assert g == gen_k_degenerate(n, k, seed)


def test_planar_generator_output_is_planar_with_degeneracy_at_most_5():
    for seed in range(10):
        g = gen_planar(120, seed)
        nxg = nx.Graph(list(g.edges))
        assert nx.check_planarity(nxg)[0]
        assert degeneracy(g) <= 5


def test_square_free_and_bipartite_generators():
    for seed in range(5):
        assert not has_square(gen_square_free(25, seed))
        assert is_bipartite_with_parts(gen_fixed_bipartite(10, 0.5, seed))


def test_all_graphs_counts():
    assert sum(1 for _ in all_graphs(4)) == 64
    assert len(set(all_graphs(3))) == 8


# -- edge-list format --------------------------------------------------------


def test_write_format_is_exact():
    g = LabelledGraph(4, [(3, 4), (1, 2), (1, 3)])
    assert write_edge_list(g) == "n 4\n1 2\n1 3\n3 4\n"
    assert write_edge_list(LabelledGraph(2)) == "n 2\n"


def test_parse_skips_blank_lines():
    assert parse_edge_list("n 3\n1 2\n\n2 3\n") == LabelledGraph.path(3)


@pytest.mark.parametrize(
    "text, error",
    [
        ("3\n1 2\n", MalformedLineError),
        ("n 3\n1  2\n", MalformedLineError),
        ("n 3\n1 x\n", MalformedLineError),
        ("n 3\n2 1\n", MalformedLineError),
        ("n 3\n1 2 3\n", MalformedLineError),
        ("n 3\n1 4\n", VertexRangeError),
        ("n 3\n0 2\n", VertexRangeError),
        ("n 3\n1 2\n1 2\n", DuplicateEdgeError),
        ("n 3\n2 2\n", SelfLoopError),
    ],
)
def test_parse_errors_are_distinct(text, error):
    with pytest.raises(error) as info:
        parse_edge_list(text)
    assert type(info.value) is error


def test_parse_error_reports_line_number():
    with pytest.raises(DuplicateEdgeError) as info:
        parse_edge_list("n 4\n1 2\n2 3\n1 2\n")
    assert info.value.line == 4


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=12))
def test_edge_list_round_trip(g):
    assert parse_edge_list(write_edge_list(g)) == g
