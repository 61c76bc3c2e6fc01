"""
Bounds Oracle Module

Upper bounds for reg(R/J_G) obtained from the short exact sequence
0 -> R/J_G -> R/J_{G_v} (+) R/J_{G∖v} -> R/J_{G_v∖v} -> 0 at a non-simplicial
vertex v, the aggregate bounds report, and the decomposition checker for
V(G) = A ⊔ B ⊔ C with B a clique.
"""

from functools import lru_cache
from itertools import product
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from src.covers import clique_count, eta, mixed_cover_number
from src.errors import PreconditionError
from src.graphs import (
    Graph,
    VertexSet,
    bits,
    canonical_form,
    connected_components,
    emit_graph6,
    graph_from_code,
    induced_subgraph,
    is_complete,
    is_connected,
    is_simplicial,
    labels_of,
    non_simplicial_vertices,
    ohtani_delete,
    ohtani_saturate,
    popcount,
    relabel,
)
from src.groebner import initial_ideal, minimalize
from src.homology import MAX_REG_VERTICES, reg_binomial_edge
from src.primes import height, minimising_sets


def _without_isolated(graph: Graph) -> Graph:
    keep = 0
    for v in range(graph.n):
        if graph.adj[v]:
            keep |= 1 << v
    return induced_subgraph(graph, keep)[0]


def _ohtani_recursion(n: int, code: int) -> int:
    graph = graph_from_code(n, code)
    candidates = non_simplicial_vertices(graph)
    if not candidates:
        return sum(1 for component in connected_components(graph) if popcount(component) > 1)
    return min(_ohtani_step(graph, v) for v in candidates)


def _ohtani_step(graph: Graph, v: int) -> int:
    saturated = ohtani_saturate(graph, v)
    return max(
        ohtani_bound(ohtani_delete(graph, v)[0]),
        ohtani_bound(saturated),
        ohtani_bound(ohtani_delete(saturated, v)[0]) + 1,
    )


_ohtani_memo = lru_cache(maxsize=65536)(_ohtani_recursion)


def ohtani_bound(graph: Graph) -> int:
    """
    min over non-simplicial v of max{b(G∖v), b(G_v), b(G_v∖v) + 1}; when every
    component is complete, the number of components with an edge.
    Memoised on the canonical form of G without its isolated vertices.
    """
    return _ohtani_memo(*canonical_form(_without_isolated(graph)))


def _proof_recursion(n: int, code: int) -> int:
    graph = graph_from_code(n, code)
    if is_complete(graph):
        return 1
    subset = minimising_sets(graph)[0]
    components = connected_components(graph, subset)
    blocks = [c for c in components if popcount(c) > 1]
    open_blocks = [c for c in blocks if not graph.is_clique(c)]
    if not open_blocks:
        # cliques G_i plus the star at every vertex of S
        return len(blocks) + 2 * popcount(subset)
    v = next(u for u in bits(open_blocks[0]) if not is_simplicial(graph, u))
    saturated = ohtani_saturate(graph, v)
    return max(
        proof_strategy_bound(ohtani_delete(graph, v)[0]),
        proof_strategy_bound(saturated),
        proof_strategy_bound(ohtani_delete(saturated, v)[0]) + 1,
    )


_proof_memo = lru_cache(maxsize=65536)(_proof_recursion)


def proof_strategy_bound(graph: Graph) -> int:
    """
    Follows the height argument literally: pick a set S attaining b_G; if
    G∖S is a union of cliques, cover G by them and the stars at S; otherwise
    recurse at a non-simplicial vertex of a non-complete component of G∖S.
    """
    total = 0
    for component in connected_components(graph):
        if popcount(component) > 1:
            total += _proof_memo(*canonical_form(induced_subgraph(graph, component)[0]))
    return total


def set_memo_size(size: int) -> None:
    global _ohtani_memo, _proof_memo
    _ohtani_memo = lru_cache(maxsize=size)(_ohtani_recursion)
    _proof_memo = lru_cache(maxsize=size)(_proof_recursion)


class BoundsReport(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    graph6: str
    reg: int
    height: int
    c: int
    mixed_cover: int = Field(serialization_alias="mixedCover")
    eta: int
    ohtani: int
    proof_bound: int = Field(serialization_alias="proofBound")
    vertex_bound: int = Field(serialization_alias="vertexBound")
    verdicts: dict[str, bool]

    @property
    def holds(self) -> bool:
        return all(self.verdicts.values())


def bounds_report(graph: Graph, p: int = 2, max_vertices: int = MAX_REG_VERTICES) -> BoundsReport:
    reg = reg_binomial_edge(graph, p, max_vertices)
    values = {
        "height": height(graph),
        "c": clique_count(graph),
        "mixedCover": mixed_cover_number(graph).value,
        "eta": eta(graph),
        "ohtani": ohtani_bound(graph),
        "proofBound": proof_strategy_bound(graph),
        "vertexBound": graph.n - len(connected_components(graph)),
    }
    verdicts = {name: reg <= value for name, value in values.items()}
    verdicts["ohtaniLeHeight"] = values["ohtani"] <= values["height"]
    verdicts["proofBoundLeHeight"] = values["proofBound"] <= values["height"]
    verdicts["mixedCoverLeC"] = values["mixedCover"] <= values["c"]
    return BoundsReport(
        graph6=emit_graph6(graph),
        reg=reg,
        height=values["height"],
        c=values["c"],
        mixed_cover=values["mixedCover"],
        eta=values["eta"],
        ohtani=values["ohtani"],
        proof_bound=values["proofBound"],
        vertex_bound=values["vertexBound"],
        verdicts=verdicts,
    )


# decompositions --------------------------------------------------------------


class DecompositionCase(BaseModel):
    """A candidate V(G) = A ⊔ B ⊔ C; the conclusions are None when a hypothesis fails."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    graph6: str
    a: list[int] = Field(serialization_alias="A")
    b: list[int] = Field(serialization_alias="B")
    c: list[int] = Field(serialization_alias="C")
    valid: bool
    violations: list[str]
    init_sum_equal: Optional[bool] = Field(default=None, serialization_alias="initSumEqual")
    reg_inequality_holds: Optional[bool] = Field(default=None, serialization_alias="regInequalityHolds")
    reg_g: Optional[int] = Field(default=None, serialization_alias="regG")
    reg_h1: Optional[int] = Field(default=None, serialization_alias="regH1")
    reg_h2: Optional[int] = Field(default=None, serialization_alias="regH2")

    @property
    def holds(self) -> bool:
        """False only when the hypotheses hold and a conclusion fails."""
        return not self.valid or bool(self.init_sum_equal and self.reg_inequality_holds)


def _hypothesis_violations(graph: Graph, a: VertexSet, b: VertexSet, c: VertexSet) -> list[str]:
    violations = []
    if not graph.is_clique(b):
        violations.append("B not complete")
    if not is_connected(induced_subgraph(graph, b)[0]):
        violations.append("B not connected")
    if a | b | c != graph.vertex_mask:
        violations.append("union != V(G)")
    if any(graph.adj[v] & c for v in bits(a)):
        violations.append("A-C edge present")
    if not is_connected(graph):
        violations.append("G not connected")
    return violations


def _spanning(graph: Graph, keep: VertexSet) -> Graph:
    """The induced subgraph on keep, left inside the full vertex set."""
    return Graph.from_edges(graph.n, [(u, v) for u, v in graph.edges() if keep >> u & 1 and keep >> v & 1])


def decomp_check(
    graph: Graph, a: VertexSet, b: VertexSet, c: VertexSet, p: int = 2, max_vertices: int = MAX_REG_VERTICES
) -> DecompositionCase:
    """
    Checks the hypotheses individually; when they hold, relabels so that A < B < C,
    compares init(G) with init(H_1) + init(H_2) in the common 2n variables and
    tests reg(G) <= reg(H_1) + reg(H_2).
    """
    if not (a and b and c):
        raise PreconditionError("A, B and C must be nonempty")
    if a & b or a & c or b & c:
        raise PreconditionError("A, B and C must be pairwise disjoint")
    if (a | b | c) & ~graph.vertex_mask:
        raise PreconditionError("A, B and C must be vertex sets of G")
    violations = _hypothesis_violations(graph, a, b, c)
    base = dict(graph6=emit_graph6(graph), a=labels_of(a), b=labels_of(b), c=labels_of(c))
    if violations:
        return DecompositionCase(**base, valid=False, violations=violations)

    order = list(bits(a)) + list(bits(b)) + list(bits(c))
    permutation = [0] * graph.n
    for position, v in enumerate(order):
        permutation[v] = position
    ordered = relabel(graph, permutation)
    h1 = _spanning(ordered, sum(1 << permutation[v] for v in bits(a | b)))
    h2 = _spanning(ordered, sum(1 << permutation[v] for v in bits(b | c)))

    combined = minimalize(initial_ideal(h1).generators + initial_ideal(h2).generators)
    reg_g = reg_binomial_edge(graph, p, max_vertices)
    reg_h1 = reg_binomial_edge(h1, p, max_vertices)
    reg_h2 = reg_binomial_edge(h2, p, max_vertices)
    return DecompositionCase(
        **base,
        valid=True,
        violations=[],
        init_sum_equal=list(initial_ideal(ordered).generators) == combined,
        reg_inequality_holds=reg_g <= reg_h1 + reg_h2,
        reg_g=reg_g,
        reg_h1=reg_h1,
        reg_h2=reg_h2,
    )


def enumerate_decompositions(graph: Graph) -> list[tuple[VertexSet, VertexSet, VertexSet]]:
    """Every (A, B, C) satisfying the hypotheses, ordered by (B, A) masks."""
    if not is_connected(graph):
        return []
    found = []
    for b in range(1, 1 << graph.n):
        if not graph.is_clique(b):
            continue
        rest = list(bits(graph.vertex_mask & ~b))
        for choice in product((0, 1), repeat=len(rest)):
            a = sum(1 << v for v, side in zip(rest, choice) if side == 0)
            c = sum(1 << v for v, side in zip(rest, choice) if side == 1)
            if a and c and not any(graph.adj[v] & c for v in bits(a)):
                found.append((a, b, c))
    return sorted(found, key=lambda t: (t[1], t[0]))
