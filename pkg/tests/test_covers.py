import os
import sys
from itertools import combinations

import networkx as nx
import pytest

sys.path.append(os.path.join(os.path.dirname(__file__), ".."))
from src.covers import (
    CoverSolution,
    StarMember,
    clique_count,
    clique_disjoint_edge_set,
    eta,
    maximal_cliques,
    mixed_cover_number,
)
from src.errors import PreconditionError
from src.graphs import (
    Graph,
    complete_graph,
    enumerate_connected_graphs,
    labels_of,
    net_graph,
    path_graph,
    star_graph,
    to_networkx,
    vertex_set,
)
from src.primes import height


def _connected(max_n: int):
    for n in range(2, max_n + 1):
        yield from enumerate_connected_graphs(n)


def test_maximal_cliques_net():
    assert [labels_of(c) for c in maximal_cliques(net_graph())] == [[1, 2], [2, 3, 5], [3, 4], [5, 6]]


def test_maximal_cliques_complete_and_star():
    assert len(maximal_cliques(complete_graph(5))) == 1
    for m in range(2, 7):
        assert clique_count(star_graph(m)) == m


def test_maximal_cliques_isolated_vertices():
    graph = Graph.from_edges(3, [(0, 1)])
    assert clique_count(graph) == 1
    assert [labels_of(c) for c in maximal_cliques(graph, include_isolated=True)] == [[1, 2], [3]]


def test_maximal_cliques_match_networkx():
    for graph in _connected(6):
        ours = sorted(labels_of(c) for c in maximal_cliques(graph))
        theirs = sorted(sorted(v + 1 for v in c) for c in nx.find_cliques(to_networkx(graph)))
        assert ours == theirs


def test_mixed_cover_complete():
    for n in range(2, 7):
        solution = mixed_cover_number(complete_graph(n))
        assert (solution.value, solution.p, solution.q) == (1, 1, 0)


def test_mixed_cover_star_prefers_the_star():
    for m in range(3, 7):
        solution = mixed_cover_number(star_graph(m))
        assert (solution.value, solution.p, solution.q) == (2, 0, 1)
        assert solution.stars == [StarMember(center=1, leaves=list(range(2, m + 2)))]


def test_mixed_cover_net():
    solution = mixed_cover_number(net_graph())
    assert solution.value == 4
    assert solution.cliques == [[1, 2], [2, 3, 5], [3, 4], [5, 6]]
    assert solution.stars == []


def test_mixed_cover_edgeless():
    assert mixed_cover_number(Graph.from_edges(3, [])).value == 0


def test_mixed_cover_at_most_clique_count_and_valid():
    for graph in _connected(6):
        solution = mixed_cover_number(graph)
        solution.verify(graph)
        assert solution.value <= clique_count(graph)


def test_cover_verify_rejects_uncovered_edges():
    solution = CoverSolution(cliques=[[1, 2]], stars=[], p=1, q=0, value=1)
    with pytest.raises(PreconditionError):
        solution.verify(path_graph(3))


def test_cover_verify_rejects_non_clique():
    solution = CoverSolution(cliques=[[1, 2, 3]], stars=[], p=1, q=0, value=1)
    with pytest.raises(PreconditionError):
        solution.verify(path_graph(3))


def test_cover_verify_rejects_small_star():
    solution = CoverSolution(cliques=[[2, 3]], stars=[StarMember(center=1, leaves=[2])], p=1, q=1, value=3)
    with pytest.raises(PreconditionError):
        solution.verify(path_graph(3))


def test_mixed_cover_json_shape():
    dumped = mixed_cover_number(star_graph(3)).model_dump(by_alias=True)
    assert dumped == {"cliques": [], "stars": [{"center": 1, "leaves": [2, 3, 4]}], "p": 0, "q": 1, "value": 2}


def test_eta_examples():
    assert eta(net_graph()) == 4
    for m in range(3, 7):
        assert eta(star_graph(m)) == m
    for n in range(2, 7):
        assert eta(complete_graph(n)) == 1


def test_eta_and_height_are_incomparable():
    assert eta(net_graph()) == 4 < height(net_graph()) == 5
    for m in range(3, 7):
        assert height(star_graph(m)) == 2 < eta(star_graph(m)) == m


def test_clique_disjoint_edge_set_is_clique_disjoint():
    for graph in _connected(5):
        edges = clique_disjoint_edge_set(graph)
        assert len(edges) == eta(graph)
        for (a, b), (c, d) in combinations(edges, 2):
            assert not graph.is_clique(vertex_set({a, b, c, d}))
