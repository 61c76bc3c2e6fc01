"""
Homology & Regularity Module

Reduced simplicial homology over GF(p) and Hochster's formula

    beta_{i,j}(S/I) = sum_{|sigma| = j} dim H~_{j-i-1}(Delta|_sigma; GF(p))

for squarefree monomial ideals I with Stanley-Reisner complex Delta. Composed
with the initial ideal this gives reg(R/J_G), since init_< J_G is squarefree
and squarefree degenerations preserve regularity.

Only subsets sigma that are unions of generator supports are visited: any
other sigma has a vertex lying in no minimal non-face inside sigma, which makes
Delta|_sigma a cone.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict
from sympy import isprime

from src.errors import InvalidPrimeError, SizeLimitError
from src.graphs import (
    Graph,
    bits,
    canonical_form,
    connected_components,
    graph_from_code,
    induced_subgraph,
    popcount,
)
from src.groebner import MonomialIdeal, ideal_sum, initial_ideal, minimalize

MAX_HOMOLOGY_VERTICES = 20
MAX_REG_VERTICES = MAX_HOMOLOGY_VERTICES // 2


@dataclass(frozen=True, slots=True)
class SimplicialComplex:
    """Faces are the subsets of vertices containing no minimal non-face; a non-face of 0 makes it void."""

    vertices: int
    minimal_nonfaces: tuple[int, ...]

    @classmethod
    def from_nonfaces(cls, vertices: int, nonfaces: Iterable[int]) -> "SimplicialComplex":
        return cls(vertices, tuple(minimalize(nf & vertices for nf in nonfaces if nf & ~vertices == 0)))

    @classmethod
    def from_facets(cls, vertices: int, facets: Iterable[int]) -> "SimplicialComplex":
        facets = list(facets)
        k = popcount(vertices)
        positions = list(bits(vertices))
        nonfaces = []
        for local in range(1 << k):
            mask = sum(1 << positions[b] for b in bits(local))
            if not any(mask & ~f == 0 for f in facets):
                nonfaces.append(mask)
        return cls(vertices, tuple(minimalize(nonfaces)))

    @property
    def is_void(self) -> bool:
        return 0 in self.minimal_nonfaces

    def is_face(self, mask: int) -> bool:
        return mask & ~self.vertices == 0 and not any(nf & mask == nf for nf in self.minimal_nonfaces)

    def faces(self) -> list[int]:
        if self.is_void:
            return []
        positions = list(bits(self.vertices))
        local = _face_table(len(positions), [_compress(nf, positions) for nf in self.minimal_nonfaces])
        return sorted(_expand(int(m), positions) for m in local)


def stanley_reisner_complex(ideal: MonomialIdeal) -> SimplicialComplex:
    return SimplicialComplex((1 << ideal.nvars) - 1, ideal.generators)


class BettiTable(BaseModel):
    """Graded Betti numbers of S/I as nonzero (i, j, beta_{i,j}) triples."""

    model_config = ConfigDict(frozen=True)

    p: int
    betti: list[tuple[int, int, int]]
    reg: int

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return next((value for a, b, value in self.betti if a == i and b == j), 0)

    @property
    def projective_dimension(self) -> int:
        return max(i for i, _, _ in self.betti)

    def __str__(self) -> str:
        """Macaulay2 layout: column i, row j - i."""
        columns = self.projective_dimension + 1
        table = np.zeros((self.reg + 1, columns), dtype=int)
        for i, j, value in self.betti:
            table[j - i, i] = value
        cells = [[""] + [str(i) for i in range(columns)], ["total:"] + [str(v) for v in table.sum(axis=0)]]
        for row in range(table.shape[0]):
            cells.append([f"{row}:"] + [str(v) if v else "." for v in table[row]])
        widths = [max(len(line[c]) for line in cells) for c in range(columns + 1)]
        return "\n".join(" ".join(cell.rjust(w) for cell, w in zip(line, widths)) for line in cells)


def _check_prime(p: int) -> None:
    if not isprime(p):
        raise InvalidPrimeError(f"homology needs a prime field characteristic, got {p}")


def _compress(mask: int, positions: list[int]) -> int:
    return sum(1 << k for k, v in enumerate(positions) if mask >> v & 1)


def _expand(mask: int, positions: list[int]) -> int:
    return sum(1 << positions[k] for k in bits(mask))


def _face_table(k: int, nonfaces: list[int]) -> np.ndarray:
    """All faces of the complex on k vertices with the given non-faces, as int64 masks."""
    masks = np.arange(1 << k, dtype=np.int64)
    keep = np.ones(masks.shape, dtype=bool)
    for nf in nonfaces:
        keep &= (masks & nf) != nf
    return masks[keep]


def _popcounts(masks: np.ndarray) -> np.ndarray:
    counts = np.zeros(masks.shape, dtype=np.int64)
    work = masks.copy()
    while work.any():
        counts += work & 1
        work >>= 1
    return counts


def _rank_gf2(rows: list[int]) -> int:
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = row
                break
            row ^= pivots[lead]
    return len(pivots)


def _rank_mod_p(matrix: np.ndarray, p: int) -> int:
    work = matrix % p
    rows, cols = work.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nonzero = np.nonzero(work[rank:, col])[0]
        if not nonzero.size:
            continue
        pivot = rank + nonzero[0]
        if pivot != rank:
            work[[rank, pivot]] = work[[pivot, rank]]
        work[rank] = work[rank] * pow(int(work[rank, col]), -1, p) % p
        factors = work[rank + 1:, col].copy()
        if factors.any():
            work[rank + 1:] = (work[rank + 1:] - np.outer(factors, work[rank])) % p
        rank += 1
    return rank


def _boundary_rank(upper: list[int], lower: list[int], p: int) -> int:
    """Rank of the boundary map from the faces in upper to the faces in lower (one size smaller)."""
    if not upper or not lower:
        return 0
    index = {face: k for k, face in enumerate(lower)}
    if p == 2:
        rows = []
        for face in upper:
            row = 0
            for b in bits(face):
                row |= 1 << index[face ^ 1 << b]
            rows.append(row)
        return _rank_gf2(rows)
    matrix = np.zeros((len(upper), len(lower)), dtype=np.int64)
    for r, face in enumerate(upper):
        for position, b in enumerate(bits(face)):
            matrix[r, index[face ^ 1 << b]] = 1 if position % 2 == 0 else p - 1
    return _rank_mod_p(matrix, p)


def _by_size(faces: Iterable[int]) -> dict[int, list[int]]:
    grouped: dict[int, list[int]] = {}
    for face in faces:
        grouped.setdefault(popcount(face), []).append(face)
    return grouped


def _homology_dims(grouped: dict[int, list[int]], p: int) -> list[int]:
    """dim H~_d for d = -1 .. top; index 0 is degree -1."""
    if not grouped:
        return [0]
    top = max(grouped)
    ranks = [_boundary_rank(grouped.get(size, []), grouped.get(size - 1, []), p) for size in range(top + 2)]
    return [len(grouped.get(size, [])) - ranks[size] - ranks[size + 1] for size in range(top + 1)]


def _top_homology_degree(grouped: dict[int, list[int]], p: int, floor: int) -> Optional[int]:
    """Largest d >= floor with H~_d != 0, scanning down from the top dimension."""
    top = max(grouped)
    rank_above = 0
    for size in range(top, floor, -1):
        rank_here = _boundary_rank(grouped.get(size, []), grouped.get(size - 1, []), p)
        if len(grouped.get(size, [])) - rank_here - rank_above:
            return size - 1
        rank_above = rank_here
    return None


def reduced_homology_dims(complex_: SimplicialComplex, p: int = 2) -> list[int]:
    """
    dim H~_d(K; GF(p)) for d = -1, 0, 1, ... (list index d + 1).
    The void complex has all zeros; {∅} has H~_{-1} = 1.
    """
    _check_prime(p)
    if popcount(complex_.vertices) > MAX_HOMOLOGY_VERTICES:
        raise SizeLimitError(f"homology supports at most {MAX_HOMOLOGY_VERTICES} vertices")
    return _homology_dims(_by_size(complex_.faces()), p)


class _HochsterData:
    """Face table and candidate subsets of an ideal, in compressed coordinates of its support."""

    def __init__(self, ideal: MonomialIdeal):
        positions = list(bits(ideal.support))
        if len(positions) > MAX_HOMOLOGY_VERTICES:
            raise SizeLimitError(
                f"effective support has {len(positions)} variables; limit is {MAX_HOMOLOGY_VERTICES}"
            )
        gens = [_compress(g, positions) for g in ideal.generators]
        self.faces = _face_table(len(positions), gens)
        self.face_sizes = _popcounts(self.faces)
        sigmas = np.arange(1 << len(positions), dtype=np.int64)
        covered = np.zeros(sigmas.shape, dtype=np.int64)
        for g in gens:
            covered |= np.where((sigmas & g) == g, g, 0)
        candidates = sigmas[covered == sigmas]
        sizes = _popcounts(candidates)
        order = np.lexsort((candidates, -sizes))
        self.sigmas = candidates[order]
        self.sigma_sizes = sizes[order]

    def faces_in(self, sigma: int) -> tuple[np.ndarray, np.ndarray]:
        inside = (self.faces & ~sigma) == 0
        return self.faces[inside], self.face_sizes[inside]


def betti_table(ideal: MonomialIdeal, p: int = 2) -> BettiTable:
    """Exact graded Betti numbers of S/I via Hochster's formula."""
    _check_prime(p)
    data = _HochsterData(ideal)
    table: dict[tuple[int, int], int] = {}
    for sigma, size in zip(data.sigmas.tolist(), data.sigma_sizes.tolist()):
        faces, _ = data.faces_in(sigma)
        dims = _homology_dims(_by_size(faces.tolist()), p)
        for index, dim in enumerate(dims):
            if dim:
                key = (size - index, size)
                table[key] = table.get(key, 0) + dim
    entries = sorted((i, j, v) for (i, j), v in table.items())
    return BettiTable(p=p, betti=entries, reg=max(j - i for i, j, _ in entries))


def regularity(ideal: MonomialIdeal, p: int = 2) -> int:
    """reg(S/I) = max{d + 1 : H~_d(Delta|_sigma) != 0}, 0 for the zero ideal."""
    _check_prime(p)
    if not ideal.generators:
        return 0
    data = _HochsterData(ideal)
    best = 0
    for sigma, size in zip(data.sigmas.tolist(), data.sigma_sizes.tolist()):
        # sigma != ∅ only contributes d <= |sigma| - 2
        if size - 1 <= best:
            break
        faces, face_sizes = data.faces_in(sigma)
        if int(face_sizes.max()) <= best:
            continue
        degree = _top_homology_degree(_by_size(faces.tolist()), p, best)
        if degree is not None:
            best = degree + 1
    return best


def monomial_subadditivity_holds(first: MonomialIdeal, second: MonomialIdeal, p: int = 2) -> bool:
    """reg(S/(I+J)) <= reg(S/I) + reg(S/J), the known monomial case of subadditivity."""
    return regularity(ideal_sum(first, second), p) <= regularity(first, p) + regularity(second, p)


# binomial edge ideals --------------------------------------------------------


def _connected_regularity(n: int, code: int, p: int) -> int:
    return regularity(initial_ideal(graph_from_code(n, code)), p)


_regularity_memo = lru_cache(maxsize=65536)(_connected_regularity)


def set_memo_size(size: int) -> None:
    """Resizes (and clears) the per-process regularity memo."""
    global _regularity_memo
    _regularity_memo = lru_cache(maxsize=size)(_connected_regularity)


def reg_binomial_edge(graph: Graph, p: int = 2, max_vertices: int = MAX_REG_VERTICES) -> int:
    """reg(R/J_G), summed over connected components, memoised on canonical form."""
    _check_prime(p)
    if graph.n > max_vertices:
        raise SizeLimitError(
            f"regularity engine supports n <= {max_vertices} (2n <= {2 * max_vertices} variables), got n={graph.n}"
        )
    total = 0
    for component in connected_components(graph):
        if popcount(component) > 1:
            sub = induced_subgraph(graph, component)[0]
            total += _regularity_memo(*canonical_form(sub), p)
    return total


def betti_table_binomial_edge(graph: Graph, p: int = 2, max_vertices: int = MAX_REG_VERTICES) -> BettiTable:
    """Betti table of R/init_< J_G in the labelling given (extremal entries match R/J_G)."""
    if graph.n > max_vertices:
        raise SizeLimitError(
            f"regularity engine supports n <= {max_vertices} (2n <= {2 * max_vertices} variables), got n={graph.n}"
        )
    return betti_table(initial_ideal(graph), p)
