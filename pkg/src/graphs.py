"""
Graph Core Module

Simple graphs on at most 31 vertices stored as per-vertex neighbour bitmasks,
graph6 / edge-list ingestion, isomorph-free enumeration of connected graphs,
and the vertex operations used by the regularity bounds: neighbourhoods,
stars, simplicial vertices, deletion G∖v and neighbourhood completion G_v.

Vertices are 0-indexed internally; vertex v carries the label v + 1 in every
report. Vertex sets are int bitmasks (bit v = vertex v).
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

import networkx as nx

from src.errors import EdgeListParseError, Graph6ParseError, PreconditionError, SizeLimitError

MAX_VERTICES = 31
MAX_ENUMERATION_VERTICES = 8

VertexSet = int


def bits(mask: int) -> Iterator[int]:
    """Yields the set bit positions of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


def vertex_set(labels: Iterable[int]) -> VertexSet:
    """Mask of the 1-based vertex labels."""
    mask = 0
    for label in labels:
        if label < 1:
            raise PreconditionError(f"vertex labels start at 1, got {label}")
        mask |= 1 << (label - 1)
    return mask


def labels_of(mask: VertexSet) -> list[int]:
    """1-based labels of the vertices in mask, increasing."""
    return [v + 1 for v in bits(mask)]


@dataclass(frozen=True, slots=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise SizeLimitError(f"graphs are limited to {MAX_VERTICES} vertices, got {self.n}")
        if len(self.adj) != self.n:
            raise PreconditionError("adjacency must have one row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise PreconditionError(f"row {v} references vertices outside the graph")
            if row >> v & 1:
                raise PreconditionError(f"loop at vertex {v + 1}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise PreconditionError(f"adjacency not symmetric at {{{u + 1}, {v + 1}}}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Graph on vertices 0..n-1 from 0-based edge pairs."""
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"loop at vertex {u + 1}")
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge {{{u + 1}, {v + 1}}} outside 1..{n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def from_labeled_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Graph on labels 1..n from 1-based edge pairs."""
        return cls.from_edges(n, [(u - 1, v - 1) for u, v in edges])

    @property
    def vertex_mask(self) -> VertexSet:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges (u, v) with u < v, ordered by (u, v)."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def is_clique(self, mask: VertexSet) -> bool:
        return all(mask & ~(self.adj[v] | 1 << v) == 0 for v in bits(mask))

    def labeled_edges(self) -> list[tuple[int, int]]:
        return [(u + 1, v + 1) for u, v in self.edges()]


@dataclass(frozen=True, slots=True)
class EdgeSubgraph:
    """Spanning subgraph of parent given by an edge bitmask over parent.edges()."""

    parent: Graph
    edge_mask: int

    def __post_init__(self) -> None:
        if self.edge_mask >> self.parent.edge_count:
            raise PreconditionError("edge mask references edges outside the parent graph")

    def edges(self) -> list[tuple[int, int]]:
        all_edges = self.parent.edges()
        return [all_edges[k] for k in bits(self.edge_mask)]

    @property
    def vertex_support(self) -> VertexSet:
        support = 0
        for u, v in self.edges():
            support |= 1 << u | 1 << v
        return support

    def to_graph(self) -> Graph:
        """Graph on the parent's vertex set carrying only the selected edges."""
        return Graph.from_edges(self.parent.n, self.edges())


# graph6 --------------------------------------------------------------------


def parse_graph6(text: str) -> Graph:
    """
    Parses a short-form graph6 line (n <= 62 header; graphs above 31 vertices
    are rejected). Byte-level problems raise Graph6ParseError naming the offset.
    """
    line = text.strip()
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    try:
        data = line.encode("ascii")
    except UnicodeEncodeError as e:
        raise Graph6ParseError(e.start, "non-ASCII byte") from e
    if not data:
        raise Graph6ParseError(0, "empty input")
    header = data[0]
    if header == 126:
        raise Graph6ParseError(0, "long-form header (n > 62) is not supported")
    if not 63 <= header <= 125:
        raise Graph6ParseError(0, f"invalid header byte {header}")
    n = header - 63
    if n > MAX_VERTICES:
        raise SizeLimitError(f"graph6 encodes {n} vertices; limit is {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    expected = 1 + (nbits + 5) // 6
    for offset in range(1, len(data)):
        if not 63 <= data[offset] <= 126:
            raise Graph6ParseError(offset, f"invalid data byte {data[offset]}")
    if len(data) != expected:
        raise Graph6ParseError(min(len(data), expected), f"expected {expected} bytes for n={n}, got {len(data)}")
    padding = (6 - nbits % 6) % 6
    if padding and (data[-1] - 63) & ((1 << padding) - 1):
        raise Graph6ParseError(len(data) - 1, "nonzero padding bits")
    return from_networkx(nx.from_graph6_bytes(data))


def emit_graph6(graph: Graph) -> str:
    return nx.to_graph6_bytes(to_networkx(graph), header=False).decode("ascii").strip()


def parse_edge_list(text: str) -> Graph:
    """Parses "n; i j; i j; ..." with 1-based labels."""
    parts = [part.strip() for part in text.strip().strip(";").split(";")]
    try:
        n = int(parts[0])
    except ValueError as e:
        raise EdgeListParseError(f"vertex count {parts[0]!r} is not an integer") from e
    if not 0 <= n <= MAX_VERTICES:
        raise SizeLimitError(f"edge list declares {n} vertices; limit is {MAX_VERTICES}")
    edges = []
    for part in parts[1:]:
        if not part:
            continue
        fields = part.split()
        if len(fields) != 2 or not all(field.lstrip("-").isdigit() for field in fields):
            raise EdgeListParseError(f"edge {part!r} is not a pair of integers")
        u, v = int(fields[0]), int(fields[1])
        if not (1 <= u <= n and 1 <= v <= n) or u == v:
            raise EdgeListParseError(f"edge {part!r} is not a pair of distinct labels in 1..{n}")
        edges.append((u, v))
    return Graph.from_labeled_edges(n, edges)


def parse_graph(text: str) -> Graph:
    """Edge-list text if it contains ';', graph6 otherwise."""
    return parse_edge_list(text) if ";" in text else parse_graph6(text)


def read_graphs(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        stripped = line.strip()
        if not stripped or stripped == ">>graph6<<":
            continue
        yield parse_graph(stripped)


def to_networkx(graph: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(graph.n))
    g.add_edges_from(graph.edges())
    return g


def from_networkx(g: nx.Graph) -> Graph:
    index = {node: i for i, node in enumerate(sorted(g.nodes()))}
    return Graph.from_edges(len(index), [(index[u], index[v]) for u, v in g.edges()])


# structure -----------------------------------------------------------------


def connected_components(graph: Graph, removed: VertexSet = 0) -> list[VertexSet]:
    """Components of G minus removed, ordered by least vertex."""
    remaining = graph.vertex_mask & ~removed
    components = []
    while remaining:
        component = frontier = remaining & -remaining
        while frontier:
            reached = 0
            for v in bits(frontier):
                reached |= graph.adj[v]
            frontier = reached & remaining & ~component
            component |= frontier
        components.append(component)
        remaining &= ~component
    return components


def is_connected(graph: Graph) -> bool:
    return len(connected_components(graph)) <= 1


def is_complete(graph: Graph) -> bool:
    return graph.is_clique(graph.vertex_mask)


def is_simplicial(graph: Graph, v: int) -> bool:
    """True iff the closed neighbourhood N[v] induces a complete graph."""
    nbrs = graph.adj[v]
    return all(nbrs & ~(graph.adj[u] | 1 << u) == 0 for u in bits(nbrs))


def iv(graph: Graph) -> int:
    """Number of non-simplicial vertices."""
    return sum(1 for v in range(graph.n) if not is_simplicial(graph, v))


def non_simplicial_vertices(graph: Graph) -> list[int]:
    return [v for v in range(graph.n) if not is_simplicial(graph, v)]


def star(graph: Graph, v: int) -> EdgeSubgraph:
    """The star St_G(v): all edges at v. Requires at least two neighbours."""
    if graph.degree(v) < 2:
        raise PreconditionError(f"star needs deg({v + 1}) >= 2, got {graph.degree(v)}")
    mask = 0
    for k, (a, b) in enumerate(graph.edges()):
        if a == v or b == v:
            mask |= 1 << k
    return EdgeSubgraph(graph, mask)


def induced_subgraph(graph: Graph, keep: VertexSet) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced on keep, relabelled order-preservingly; returns it with the old->new map."""
    mapping = {old: new for new, old in enumerate(bits(keep))}
    adj = []
    for old in bits(keep):
        row = 0
        for u in bits(graph.adj[old] & keep):
            row |= 1 << mapping[u]
        adj.append(row)
    return Graph(len(mapping), tuple(adj)), mapping


def ohtani_delete(graph: Graph, v: int) -> tuple[Graph, dict[int, int]]:
    """G∖v with the old->new vertex map."""
    return induced_subgraph(graph, graph.vertex_mask & ~(1 << v))


def ohtani_saturate(graph: Graph, v: int) -> Graph:
    """G_v: N_G(v) completed to a clique, v retained."""
    nbrs = graph.adj[v]
    adj = list(graph.adj)
    for u in bits(nbrs):
        adj[u] |= nbrs & ~(1 << u)
    return Graph(graph.n, tuple(adj))


def relabel(graph: Graph, permutation: Sequence[int]) -> Graph:
    """Graph with vertex v renamed to permutation[v]."""
    if sorted(permutation) != list(range(graph.n)):
        raise PreconditionError("relabelling must be a permutation of the vertices")
    return Graph.from_edges(graph.n, [(permutation[u], permutation[v]) for u, v in graph.edges()])


def disjoint_union(first: Graph, second: Graph) -> Graph:
    shifted = [(u + first.n, v + first.n) for u, v in second.edges()]
    return Graph.from_edges(first.n + second.n, first.edges() + shifted)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


def star_graph(m: int) -> Graph:
    """K_{1,m} with centre label 1."""
    return Graph.from_edges(m + 1, [(0, v) for v in range(1, m + 1)])


def net_graph() -> Graph:
    """The net: triangle 2-3-5 with pendant vertices 1, 4, 6."""
    return Graph.from_labeled_edges(6, [(1, 2), (2, 3), (3, 4), (2, 5), (3, 5), (5, 6)])


# canonical form ------------------------------------------------------------


def canonical_order(graph: Graph) -> tuple[int, list[int]]:
    """
    Lexicographically least upper-triangle bit string over all vertex orders.

    Bits are read column-major ((0,1), (0,2), (1,2), (0,3), ...) with the first
    bit most significant, so the least string is the least integer. Position k
    only ever takes a vertex whose column against the placed prefix is minimal,
    and of two interchangeable twins only one is tried.
    Returns (code, order) where order[k] is the vertex placed at position k.
    """
    n, adj = graph.n, graph.adj
    if n <= 1:
        return 0, list(range(n))
    total_bits = n * (n - 1) // 2
    best_code: Optional[int] = None
    best_order: list[int] = []

    def extend(order: list[int], placed: int, code: int) -> None:
        nonlocal best_code, best_order
        k = len(order)
        if k == n:
            if best_code is None or code < best_code:
                best_code, best_order = code, list(order)
            return
        columns: dict[int, list[int]] = {}
        for v in bits(graph.vertex_mask & ~placed):
            column = 0
            for u in order:
                column = column << 1 | (adj[v] >> u & 1)
            columns.setdefault(column, []).append(v)
        column = min(columns)
        prefix = code << k | column
        if best_code is not None:
            rest = total_bits - k * (k + 1) // 2
            if prefix > best_code >> rest:
                return
        tried: list[int] = []
        for v in columns[column]:
            if any(adj[u] & ~(1 << v) == adj[v] & ~(1 << u) for u in tried):
                continue
            tried.append(v)
            order.append(v)
            extend(order, placed | 1 << v, prefix)
            order.pop()

    extend([], 0, 0)
    assert best_code is not None
    return best_code, best_order


def canonical_form(graph: Graph) -> tuple[int, int]:
    """Isomorphism-class key (n, code)."""
    return graph.n, canonical_order(graph)[0]


def graph_from_code(n: int, code: int) -> Graph:
    adj = [0] * n
    position = n * (n - 1) // 2
    for j in range(1, n):
        for i in range(j):
            position -= 1
            if code >> position & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(n, tuple(adj))


def canonical_graph(graph: Graph) -> Graph:
    return graph_from_code(graph.n, canonical_order(graph)[0])


@lru_cache(maxsize=None)
def _connected_codes(n: int) -> tuple[int, ...]:
    if n == 1:
        return (0,)
    found = set()
    for code in _connected_codes(n - 1):
        base = graph_from_code(n - 1, code)
        # every connected graph has a vertex whose removal leaves it connected
        for nbrs in range(1, 1 << (n - 1)):
            adj = list(base.adj)
            for u in bits(nbrs):
                adj[u] |= 1 << (n - 1)
            adj.append(nbrs)
            found.add(canonical_order(Graph(n, tuple(adj)))[0])
    return tuple(sorted(found))


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """One canonical representative per isomorphism class of connected graphs on n vertices."""
    if not 1 <= n <= MAX_ENUMERATION_VERTICES:
        raise SizeLimitError(f"enumeration supports 1 <= n <= {MAX_ENUMERATION_VERTICES}, got {n}")
    for code in _connected_codes(n):
        yield graph_from_code(n, code)
