"""
Groebner Initial Ideal Module

The lex initial ideal of J_G for x_1 > ... > x_n > y_1 > ... > y_n, generated by
the leading monomials u_P x_i y_j of the admissible paths P of G.

A squarefree monomial in the 2n variables is an int mask: bit v is x_{v+1},
bit n+v is y_{v+1}.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence

from src.errors import NotSquarefreeError
from src.graphs import Graph, bits, popcount

Monomial = int


@dataclass(frozen=True, slots=True)
class MonomialIdeal:
    """Squarefree monomial ideal by its minimal generators, sorted by (degree, mask)."""

    nvars: int
    generators: tuple[Monomial, ...]

    @classmethod
    def from_monomials(cls, nvars: int, monomials: Iterable[Monomial]) -> "MonomialIdeal":
        gens = tuple(minimalize(monomials))
        if any(g >> nvars for g in gens):
            raise NotSquarefreeError(f"generator uses a variable beyond the {nvars} ambient variables")
        return cls(nvars, gens)

    @classmethod
    def from_exponent_vectors(cls, vectors: Sequence[Sequence[int]]) -> "MonomialIdeal":
        nvars = len(vectors[0]) if vectors else 0
        monomials = []
        for vector in vectors:
            if len(vector) != nvars:
                raise NotSquarefreeError("exponent vectors must share one length")
            if any(e not in (0, 1) for e in vector):
                raise NotSquarefreeError(f"generator {list(vector)} is not squarefree")
            mask = sum(1 << k for k, e in enumerate(vector) if e)
            if not mask:
                raise NotSquarefreeError("the unit monomial is not a proper generator")
            monomials.append(mask)
        return cls.from_monomials(nvars, monomials)

    @property
    def support(self) -> int:
        support = 0
        for g in self.generators:
            support |= g
        return support

    def __len__(self) -> int:
        return len(self.generators)


def minimalize(monomials: Iterable[Monomial]) -> list[Monomial]:
    """Drops every monomial divisible by another, sweeping in degree order."""
    kept: list[Monomial] = []
    for m in sorted(set(monomials), key=lambda m: (popcount(m), m)):
        if not any(g & m == g for g in kept):
            kept.append(m)
    return kept


def ideal_sum(first: MonomialIdeal, second: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal.from_monomials(max(first.nvars, second.nvars), first.generators + second.generators)


@dataclass(frozen=True, slots=True)
class AdmissiblePath:
    """Induced path i = i_0, ..., i_l = j with i < j and every interior vertex < i or > j."""

    vertices: tuple[int, ...]

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def interior(self) -> tuple[int, ...]:
        return self.vertices[1:-1]


def admissible_paths(graph: Graph) -> list[AdmissiblePath]:
    """Every admissible path, by DFS from each start vertex i with chord and interval pruning."""
    paths = []
    for i in range(graph.n):
        _extend(graph, [i], 1 << i, 0, graph.n, paths)
    return paths


def _extend(graph: Graph, path: list[int], visited: int, earlier: int, upper: int, out: list) -> None:
    """
    earlier: neighbourhood of every path vertex except the current end (new
    vertices must avoid it, so the path stays induced).
    upper: least interior vertex above i; an endpoint j must satisfy i < j < upper.
    """
    i, end = path[0], path[-1]
    for w in bits(graph.adj[end] & ~visited & ~earlier):
        if i < w < upper:
            out.append(AdmissiblePath(tuple(path) + (w,)))
        next_upper = min(upper, w) if w > i else upper
        if next_upper - i <= 1:
            continue
        path.append(w)
        _extend(graph, path, visited | 1 << w, earlier | graph.adj[end] | 1 << end, next_upper, out)
        path.pop()


def path_leading_monomial(path: AdmissiblePath, n: int) -> Monomial:
    """u_P x_i y_j with u_P = prod_{i_k > j} x_{i_k} * prod_{i_k < i} y_{i_k}."""
    i, j = path.start, path.end
    monomial = 1 << i | 1 << (n + j)
    for k in path.interior:
        monomial |= 1 << k if k > j else 1 << (n + k)
    return monomial


def initial_ideal(graph: Graph) -> MonomialIdeal:
    """init_< J_G in the 2n-variable ambient ring; no generators when G has no edges."""
    return MonomialIdeal.from_monomials(
        2 * graph.n, (path_leading_monomial(p, graph.n) for p in admissible_paths(graph))
    )


def variable_name(index: int, n: int) -> str:
    return f"x{index + 1}" if index < n else f"y{index - n + 1}"


def monomial_text(monomial: Monomial, n: int) -> str:
    """E.g. "x2*y1*y3": x variables first, each block increasing."""
    if not monomial:
        return "1"
    return "*".join(variable_name(k, n) for k in bits(monomial))


def ideal_text(ideal: MonomialIdeal, n: int) -> str:
    return "(" + ", ".join(monomial_text(g, n) for g in ideal.generators) + ")"
