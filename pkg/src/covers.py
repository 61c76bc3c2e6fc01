"""
Covers Module

Maximal cliques (pivoting Bron-Kerbosch on bitmasks), the clique count c(G),
the mixed clique/star cover number min(#A + 2#B) and eta(G), the largest
edge set no two of whose edges lie in a common clique.
"""

from typing import Optional

from pydantic import BaseModel, ConfigDict

from src.errors import PreconditionError
from src.graphs import Graph, VertexSet, bits, labels_of, popcount, vertex_set


def maximal_cliques(graph: Graph, include_isolated: bool = False) -> list[VertexSet]:
    """
    All maximal cliques as vertex masks, ordered by their label lists.
    Isolated vertices (maximal cliques of size one) are left out unless asked for.
    """
    found: list[VertexSet] = []

    def expand(clique: int, candidates: int, excluded: int) -> None:
        if not candidates and not excluded:
            found.append(clique)
            return
        pivot = max(bits(candidates | excluded), key=lambda u: popcount(candidates & graph.adj[u]))
        for v in bits(candidates & ~graph.adj[pivot]):
            expand(clique | 1 << v, candidates & graph.adj[v], excluded & graph.adj[v])
            candidates &= ~(1 << v)
            excluded |= 1 << v

    if graph.n:
        expand(0, graph.vertex_mask, 0)
    cliques = [c for c in found if include_isolated or popcount(c) >= 2]
    return sorted(cliques, key=labels_of)


def clique_count(graph: Graph) -> int:
    """c(G): maximal cliques with at least one edge."""
    return len(maximal_cliques(graph))


class StarMember(BaseModel):
    model_config = ConfigDict(frozen=True)

    center: int
    leaves: list[int]


class CoverSolution(BaseModel):
    """Cliques (cost 1) and stars with >= 2 leaves (cost 2) covering every edge; labels are 1-based."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    cliques: list[list[int]]
    stars: list[StarMember]
    p: int
    q: int
    value: int

    def verify(self, graph: Graph) -> None:
        """Raises PreconditionError unless this is a valid clique/star edge cover of graph."""
        covered: set[tuple[int, int]] = set()
        for clique in self.cliques:
            mask = vertex_set(clique)
            if len(clique) < 2 or not graph.is_clique(mask):
                raise PreconditionError(f"cover member {clique} is not a clique of size >= 2")
            covered.update((a, b) for a in clique for b in clique if a < b)
        for member in self.stars:
            if len(member.leaves) < 2:
                raise PreconditionError(f"star at {member.center} has fewer than two leaves")
            for leaf in member.leaves:
                if not graph.has_edge(member.center - 1, leaf - 1):
                    raise PreconditionError(f"star edge {{{member.center}, {leaf}}} is not in the graph")
                covered.add((min(member.center, leaf), max(member.center, leaf)))
        missing = [e for e in graph.labeled_edges() if e not in covered]
        if missing:
            raise PreconditionError(f"edges {missing} are not covered")
        if self.value != self.p + 2 * self.q or self.p != len(self.cliques) or self.q != len(self.stars):
            raise PreconditionError("cover value does not match its members")


def _edge_mask(graph: Graph, edge_index: dict[tuple[int, int], int], vertices: VertexSet) -> int:
    mask = 0
    for u in bits(vertices):
        for v in bits(graph.adj[u] & vertices):
            if u < v:
                mask |= 1 << edge_index[(u, v)]
    return mask


def mixed_cover_number(graph: Graph) -> CoverSolution:
    """
    Exact minimum of #cliques + 2 #stars over edge covers, by branch and bound over
    maximal cliques, single edges and the full star at every vertex of degree >= 2.
    Among optimal covers the one with the least (cliques, stars) label lists wins.
    """
    edges = graph.edges()
    edge_index = {e: k for k, e in enumerate(edges)}
    full = (1 << len(edges)) - 1

    # (cost, covered edges, kind, payload)
    pool: list[tuple[int, int, str, int]] = []
    cliques = maximal_cliques(graph)
    for clique in cliques:
        pool.append((1, _edge_mask(graph, edge_index, clique), "clique", clique))
    maximal_edges = {c for c in cliques if popcount(c) == 2}
    for u, v in edges:
        if (1 << u | 1 << v) not in maximal_edges:
            pool.append((1, 1 << edge_index[(u, v)], "clique", 1 << u | 1 << v))
    for v in range(graph.n):
        if graph.degree(v) >= 2:
            star_edges = 0
            for u in bits(graph.adj[v]):
                star_edges |= 1 << edge_index[(min(u, v), max(u, v))]
            pool.append((2, star_edges, "star", v))

    covering = [[k for k, member in enumerate(pool) if member[1] >> e & 1] for e in range(len(edges))]
    best_value = len(edges) + 1
    best_key: Optional[tuple] = None
    best_choice: list[int] = []

    def key_of(choice: list[int]) -> tuple:
        clique_labels = sorted(labels_of(pool[k][3]) for k in choice if pool[k][2] == "clique")
        star_labels = sorted((pool[k][3], labels_of(graph.adj[pool[k][3]])) for k in choice if pool[k][2] == "star")
        return clique_labels, star_labels

    def search(covered: int, cost: int, choice: list[int]) -> None:
        nonlocal best_value, best_key, best_choice
        if covered == full:
            key = key_of(choice)
            if cost < best_value or (cost == best_value and (best_key is None or key < best_key)):
                best_value, best_key, best_choice = cost, key, list(choice)
            return
        uncovered = full & ~covered
        # every remaining member costs >= 1 and covers at most max_cover new edges
        max_cover = max(popcount(pool[k][1] & uncovered) for k in range(len(pool)))
        if cost + -(-popcount(uncovered) // max_cover) > best_value:
            return
        edge = min(bits(uncovered), key=lambda e: len(covering[e]))
        for k in covering[edge]:
            if k in choice:
                continue
            choice.append(k)
            search(covered | pool[k][1], cost + pool[k][0], choice)
            choice.pop()

    search(0, 0, [])
    chosen_cliques, chosen_stars = key_of(best_choice)
    solution = CoverSolution(
        cliques=chosen_cliques,
        stars=[StarMember(center=center + 1, leaves=leaves) for center, leaves in chosen_stars],
        p=len(chosen_cliques),
        q=len(chosen_stars),
        value=best_value if edges else 0,
    )
    solution.verify(graph)
    return solution


def _conflict_rows(graph: Graph) -> list[int]:
    """Edges e, f conflict iff the union of their endpoints induces a clique."""
    edges = graph.edges()
    rows = [0] * len(edges)
    for a, (u, v) in enumerate(edges):
        for b in range(a + 1, len(edges)):
            x, y = edges[b]
            if graph.is_clique(1 << u | 1 << v | 1 << x | 1 << y):
                rows[a] |= 1 << b
                rows[b] |= 1 << a
    return rows


def _maximum_independent_set(rows: list[int]) -> int:
    best = 0

    def search(chosen: int, candidates: int) -> None:
        nonlocal best
        if popcount(chosen) + popcount(candidates) <= popcount(best):
            return
        if not candidates:
            best = chosen
            return
        v = max(bits(candidates), key=lambda u: popcount(rows[u] & candidates))
        if not rows[v] & candidates:
            # no conflicts left: take everything
            best = chosen | candidates
            return
        search(chosen | 1 << v, candidates & ~rows[v] & ~(1 << v))
        search(chosen, candidates & ~(1 << v))

    search(0, (1 << len(rows)) - 1)
    return best


def clique_disjoint_edge_set(graph: Graph) -> list[tuple[int, int]]:
    """A maximum clique-disjoint edge set, as 1-based label pairs."""
    edges = graph.labeled_edges()
    return [edges[k] for k in bits(_maximum_independent_set(_conflict_rows(graph)))]


def eta(graph: Graph) -> int:
    return len(clique_disjoint_edge_set(graph))
