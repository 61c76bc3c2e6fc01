"""
Primes & Height Module

Cut sets, the invariant b_G(S) = 2#S + sum(#G_i - 1) over the components G_i
of G∖S, the minimal primes P_G(S) of J_G (kept combinatorially as S plus the
component partition) and hgt(J_G) = min_S b_G(S).
"""

from itertools import combinations

from pydantic import BaseModel, ConfigDict, Field

from src.graphs import Graph, VertexSet, bits, connected_components, induced_subgraph, labels_of, popcount


class CutSetRecord(BaseModel):
    """Defining data of P_G(S); JSON shape {S, c, b, cut, height}."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    subset: list[int] = Field(serialization_alias="S")
    component_count: int = Field(serialization_alias="c")
    b_value: int = Field(serialization_alias="b")
    is_cut_set: bool = Field(serialization_alias="cut")
    height: int
    components: list[list[int]] = Field(default_factory=list, exclude=True)
    component: list[int] = Field(default_factory=list, exclude=True)


def component_count(graph: Graph, subset: VertexSet) -> int:
    return len(connected_components(graph, subset))


def b_value(graph: Graph, subset: VertexSet) -> int:
    """b_G(S) = 2#S + sum over components of G∖S of (#G_i - 1); isolated vertices add 0."""
    size = popcount(subset)
    return 2 * size + (graph.n - size) - component_count(graph, subset)


def is_cut_set(graph: Graph, subset: VertexSet) -> bool:
    """S = ∅, or every i in S satisfies c(S∖{i}) < c(S)."""
    if not subset:
        return True
    count = component_count(graph, subset)
    return all(component_count(graph, subset & ~(1 << i)) < count for i in bits(subset))


def _connected_height(graph: Graph) -> int:
    # b_G(S) >= 2#S, so sizes with 2k >= best cannot improve it
    best = graph.n - 1
    for size in range(1, graph.n + 1):
        if 2 * size >= best:
            break
        for chosen in combinations(range(graph.n), size):
            mask = 0
            for v in chosen:
                mask |= 1 << v
            best = min(best, b_value(graph, mask))
    return best


def height(graph: Graph) -> int:
    """hgt(J_G) = b_G, summed over connected components."""
    total = 0
    for component in connected_components(graph):
        if popcount(component) > 1:
            total += _connected_height(induced_subgraph(graph, component)[0])
    return total


def minimising_sets(graph: Graph) -> list[VertexSet]:
    """Every S with b_G(S) = b_G, in increasing mask order."""
    values = [b_value(graph, mask) for mask in range(1 << graph.n)]
    least = min(values)
    return [mask for mask, value in enumerate(values) if value == least]


def _record(graph: Graph, subset: VertexSet, component: VertexSet, to_parent: dict[int, int]) -> CutSetRecord:
    def lift(mask: VertexSet) -> list[int]:
        return sorted(to_parent[v] + 1 for v in bits(mask))

    components = connected_components(graph, subset)
    value = b_value(graph, subset)
    return CutSetRecord(
        subset=lift(subset),
        component_count=len(components),
        b_value=value,
        is_cut_set=is_cut_set(graph, subset),
        height=value,
        components=[lift(c) for c in components],
        component=labels_of(component),
    )


def minimal_primes(graph: Graph) -> list[CutSetRecord]:
    """
    Cut sets of G with their heights, sorted by (height, S). Disconnected graphs
    are handled per component; each record names the component it belongs to.
    """
    records = []
    for component in connected_components(graph):
        sub, mapping = induced_subgraph(graph, component)
        to_parent = {new: old for old, new in mapping.items()}
        for mask in range(1 << sub.n):
            if is_cut_set(sub, mask):
                records.append(_record(sub, mask, component, to_parent))
    return sorted(records, key=lambda r: (r.height, r.subset, r.component))
