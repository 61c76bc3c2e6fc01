import os
import random
import sys
from itertools import combinations

import networkx as nx
import pytest

sys.path.append(os.path.join(os.path.dirname(__file__), ".."))
from src.errors import EdgeListParseError, Graph6ParseError, PreconditionError, SizeLimitError
from src.graphs import (
    Graph,
    canonical_form,
    canonical_graph,
    complete_graph,
    connected_components,
    disjoint_union,
    emit_graph6,
    enumerate_connected_graphs,
    is_connected,
    is_simplicial,
    iv,
    labels_of,
    net_graph,
    non_simplicial_vertices,
    ohtani_delete,
    ohtani_saturate,
    parse_edge_list,
    parse_graph,
    parse_graph6,
    path_graph,
    read_graphs,
    relabel,
    star,
    star_graph,
    to_networkx,
    vertex_set,
)


def _connected(max_n: int):
    for n in range(2, max_n + 1):
        yield from enumerate_connected_graphs(n)


# graph6 ---------------------------------------------------------------------


def test_parse_graph6_k2():
    graph = parse_graph6("A_")
    assert graph.n == 2
    assert graph.labeled_edges() == [(1, 2)]


def test_parse_graph6_triangle():
    assert parse_graph6("Bw") == complete_graph(3)


def test_parse_graph6_empty_graph():
    graph = parse_graph6("B?")
    assert graph.n == 3
    assert graph.edge_count == 0


def test_parse_graph6_accepts_header():
    assert parse_graph6(">>graph6<<A_") == complete_graph(2)


@pytest.mark.parametrize(
    "text, offset",
    [
        ("", 0),
        ("A", 1),  # n=2 needs one data byte
        ("A_?", 2),
        ("A`", 1),  # padding bit set
        ("~??", 0),  # long-form header
        ("A\x7f", 1),
    ],
)
def test_parse_graph6_errors_name_the_offset(text, offset):
    with pytest.raises(Graph6ParseError) as info:
        parse_graph6(text)
    assert info.value.offset == offset
    assert f"byte {offset}" in str(info.value)


def test_parse_graph6_non_ascii():
    with pytest.raises(Graph6ParseError):
        parse_graph6("Aé")


def test_parse_graph6_size_limit():
    with pytest.raises(SizeLimitError):
        parse_graph6(chr(63 + 32) + "?" * 83)


def test_graph6_round_trip_small():
    for graph in _connected(6):
        assert parse_graph6(emit_graph6(graph)) == graph


@pytest.mark.slow
def test_graph6_round_trip_up_to_eight():
    for n in (7, 8):
        for graph in enumerate_connected_graphs(n):
            assert parse_graph6(emit_graph6(graph)) == graph


def test_emit_graph6_matches_networkx():
    graph = net_graph()
    assert emit_graph6(graph) == nx.to_graph6_bytes(to_networkx(graph), header=False).decode().strip()


# edge lists -----------------------------------------------------------------


def test_parse_edge_list_net():
    assert parse_edge_list("6; 1 2; 2 3; 3 4; 2 5; 3 5; 5 6") == net_graph()


def test_parse_graph_dispatches_on_semicolon():
    assert parse_graph("2; 1 2") == parse_graph("A_")


@pytest.mark.parametrize("text", ["x; 1 2", "3; 1 4", "3; 1 1", "3; 1 2 3", "3; a b"])
def test_parse_edge_list_errors(text):
    with pytest.raises(EdgeListParseError):
        parse_edge_list(text)


def test_read_graphs_skips_blank_lines_and_headers():
    graphs = list(read_graphs([">>graph6<<", "A_", "", "3; 1 2; 2 3\n"]))
    assert graphs == [complete_graph(2), path_graph(3)]


# structure ------------------------------------------------------------------


def test_graph_rejects_asymmetric_adjacency():
    with pytest.raises(PreconditionError):
        Graph(2, (0b10, 0))


def test_graph_rejects_loops():
    with pytest.raises(PreconditionError):
        Graph.from_edges(2, [(1, 1)])


def test_graph_size_limit():
    with pytest.raises(SizeLimitError):
        Graph(32, tuple([0] * 32))


def test_edge_count_matches_popcount():
    graph = net_graph()
    assert graph.edge_count == len(graph.edges()) == 6


def test_connected_components_net_without_5():
    assert connected_components(net_graph(), vertex_set([5])) == [vertex_set([1, 2, 3, 4]), vertex_set([6])]


def test_connected_components_complete():
    assert connected_components(complete_graph(5)) == [vertex_set(range(1, 6))]


def test_connected_components_path_cut_vertex():
    assert connected_components(path_graph(3), vertex_set([2])) == [vertex_set([1]), vertex_set([3])]


def test_is_simplicial_net():
    net = net_graph()
    assert is_simplicial(net, 0)
    assert not is_simplicial(net, 4)


def test_is_simplicial_complete():
    graph = complete_graph(4)
    assert all(is_simplicial(graph, v) for v in range(4))


def test_iv():
    assert iv(complete_graph(5)) == 0
    assert iv(net_graph()) == 3
    assert labels_of(sum(1 << v for v in non_simplicial_vertices(net_graph()))) == [2, 3, 5]
    assert iv(star_graph(3)) == 1


def test_iv_is_additive():
    graph = disjoint_union(net_graph(), star_graph(3))
    assert iv(graph) == iv(net_graph()) + iv(star_graph(3))


def test_star_net():
    edges = star(net_graph(), 4).edges()
    assert [(u + 1, v + 1) for u, v in edges] == [(2, 5), (3, 5), (5, 6)]


def test_star_of_star_graph_centre():
    assert len(star(star_graph(4), 0).edges()) == 4


def test_star_path_middle():
    subgraph = star(path_graph(3), 1)
    assert subgraph.to_graph() == path_graph(3)
    assert subgraph.vertex_support == 0b111


def test_star_needs_two_neighbours():
    with pytest.raises(PreconditionError):
        star(path_graph(3), 0)


def test_ohtani_saturate_net():
    saturated = ohtani_saturate(net_graph(), 4)
    added = set(saturated.labeled_edges()) - set(net_graph().labeled_edges())
    assert added == {(2, 6), (3, 6)}


def test_ohtani_saturate_complete_is_unchanged():
    assert ohtani_saturate(complete_graph(4), 2) == complete_graph(4)


def test_ohtani_delete_net():
    deleted, mapping = ohtani_delete(net_graph(), 4)
    assert deleted.n == 5
    assert mapping == {0: 0, 1: 1, 2: 2, 3: 3, 5: 4}
    assert deleted.labeled_edges() == [(1, 2), (2, 3), (3, 4)]


def test_ohtani_operations_lower_iv():
    for graph in _connected(6):
        for v in non_simplicial_vertices(graph):
            saturated = ohtani_saturate(graph, v)
            assert iv(ohtani_delete(graph, v)[0]) < iv(graph)
            assert iv(saturated) < iv(graph)
            assert iv(ohtani_delete(saturated, v)[0]) < iv(graph)


def test_saturated_vertex_is_simplicial():
    for graph in _connected(6):
        for v in range(graph.n):
            assert is_simplicial(ohtani_saturate(graph, v), v)


# canonical form and enumeration ---------------------------------------------


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112)])
def test_enumeration_counts(n, count):
    assert len(list(enumerate_connected_graphs(n))) == count


def test_enumeration_matches_atlas():
    atlas = [g for g in nx.graph_atlas_g() if 2 <= g.number_of_nodes() <= 6 and nx.is_connected(g)]
    ours = list(_connected(6))
    assert len(ours) == len(atlas)


def test_enumeration_is_isomorph_free():
    graphs = [to_networkx(g) for g in enumerate_connected_graphs(5)]
    for first, second in combinations(graphs, 2):
        assert not nx.is_isomorphic(first, second)


def test_enumeration_outputs_are_canonical_fixed_points():
    for graph in _connected(6):
        assert canonical_graph(graph) == graph
        assert is_connected(graph)


def test_enumeration_range():
    with pytest.raises(SizeLimitError):
        list(enumerate_connected_graphs(9))
    with pytest.raises(SizeLimitError):
        list(enumerate_connected_graphs(0))


def test_canonical_form_is_labelling_invariant():
    rng = random.Random(7)
    for graph in _connected(6):
        permutation = list(range(graph.n))
        rng.shuffle(permutation)
        assert canonical_form(relabel(graph, permutation)) == canonical_form(graph)


def test_canonical_form_separates_non_isomorphic():
    assert canonical_form(path_graph(4)) != canonical_form(star_graph(3))


def test_relabel_rejects_non_permutation():
    with pytest.raises(PreconditionError):
        relabel(path_graph(3), [0, 0, 1])
