"""Structural classifiers: pyramids, prisms, small vertex counts, nonsimple cores."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .catalogue import polygon, pyramid_over, simplicial_prism, tetragonal_antiwedge
from .core import (
    Graph,
    VertexFacetIncidence,
    are_equivalent,
    build_lattice,
    graph_of,
    graphs_isomorphic,
    stats,
)
from .errors import ExcessTooLarge, HypothesisViolated, LemmaViolated, Unrecognized


@dataclass(frozen=True)
class PyramidDecomposition:
    """Result of peeling apexes off a polytope.

    ``apexes`` are in original labels, in peeling order.  ``base`` is
    relabelled to ``0..m-1``; ``base_labels[i]`` is the original label of
    base vertex ``i``.
    """

    apexes: tuple
    base: object
    fold: int
    base_labels: tuple = ()


@dataclass(frozen=True)
class NonsimpleCore:
    vertices: frozenset
    kind: str  # empty | single | simplex-face | quadrilateral | other


def pyramid_apex(vfi: VertexFacetIncidence) -> Optional[int]:
    """Lowest-index vertex lying in every facet but exactly one, if any."""
    for v in range(vfi.n):
        missing = sum(1 for f in vfi.facets if v not in f)
        if missing == 1:
            return v
    return None


def pyramid_base(vfi: VertexFacetIncidence, apex: int) -> tuple:
    """Base of the pyramid at ``apex`` as (relabelled incidence, original labels)."""
    base_facet = next(f for f in vfi.facets if apex not in f)
    labels = tuple(sorted(base_facet))
    index = {v: i for i, v in enumerate(labels)}
    ridges = [frozenset(index[v] for v in f if v != apex) for f in vfi.facets if apex in f]
    return VertexFacetIncidence(vfi.d - 1, len(labels), tuple(ridges)), labels


def pyramid_decompose(vfi: VertexFacetIncidence) -> PyramidDecomposition:
    apexes = []
    labels = tuple(range(vfi.n))
    current = vfi
    while current.d >= 3:
        apex = pyramid_apex(current)
        if apex is None:
            break
        apexes.append(labels[apex])
        current, sub = pyramid_base(current, apex)
        labels = tuple(labels[i] for i in sub)
    return PyramidDecomposition(tuple(apexes), current, len(apexes), labels)


def apex_from_graph(g: Graph, d: int) -> Optional[int]:
    """A universal vertex, which is an apex when fewer than d vertices are nonsimple."""
    s = stats(g, d)
    if len(s.nonsimple) >= d:
        raise HypothesisViolated(
            f"{len(s.nonsimple)} nonsimple vertices (>= d={d}); a universal vertex "
            "need not be an apex")
    for v, deg in enumerate(g.degrees):
        if deg == g.n - 1:
            return v
    return None


def is_prism_or_pyramid(vfi: VertexFacetIncidence) -> str:
    if vfi.n == 2 * vfi.d and are_equivalent(vfi, simplicial_prism(vfi.d)) is not None:
        return "prism"
    if pyramid_apex(vfi) is not None:
        return "pyramid"
    return "neither"


_D_PLUS_3_BASES = None


def _d_plus_3_bases() -> list:
    global _D_PLUS_3_BASES
    if _D_PLUS_3_BASES is None:
        _D_PLUS_3_BASES = [
            ("prism-pyramid", graph_of(build_lattice(simplicial_prism(3)))),
            ("antiwedge-pyramid", graph_of(build_lattice(tetragonal_antiwedge()))),
            ("pentagon-pyramid", graph_of(build_lattice(pyramid_over(polygon(5))))),
        ]
    return _D_PLUS_3_BASES


def classify_d_plus_3(g: Graph, d: int) -> str:
    """Type of a d-polytope graph with d + 3 vertices and at most d - 1 nonsimple ones.

    Returns ``"prism-pyramid"`` ((d-3)-fold pyramid over a triangular prism),
    ``"antiwedge-pyramid"`` (over the tetragonal antiwedge) or
    ``"pentagon-pyramid"`` ((d-2)-fold pyramid over a pentagon).
    """
    if g.n != d + 3:
        raise HypothesisViolated(f"expected d+3={d + 3} vertices, got {g.n}")
    s = stats(g, d)
    if len(s.nonsimple) >= d:
        raise HypothesisViolated(f"{len(s.nonsimple)} nonsimple vertices (>= d={d})")
    if d == 2:
        if all(deg == 2 for deg in g.degrees) and len(g.edges) == 5:
            return "pentagon-pyramid"
        raise Unrecognized("not a pentagon")
    current, dim = g, d
    while dim > 3:
        apex = next((v for v, deg in enumerate(current.degrees) if deg == current.n - 1), None)
        if apex is None:
            raise Unrecognized("no universal vertex to peel; not a polytope graph")
        current, dim = current.remove_vertex(apex), dim - 1
    for tag, base in _d_plus_3_bases():
        if graphs_isomorphic(current, base) is not None:
            return tag
    raise Unrecognized("remainder matches none of the three 3-dimensional types")


@dataclass
class BasicExcessReport:
    non_ridge_pairs: list = field(default_factory=list)  # (i, j, intersection)
    checked_simple_in_facet: int = 0
    checked_outside_neighbours: int = 0


def verify_basic_excess(vfi: VertexFacetIncidence) -> BasicExcessReport:
    """Check the three basic facts relating facet intersections and nonsimple vertices.

    Raises :class:`LemmaViolated` with a witness on the first failure.
    """
    lat = build_lattice(vfi)
    g = graph_of(lat)
    d = vfi.d
    nonsimple = {v for v, deg in enumerate(g.degrees) if deg > d}
    rank = lat.rank_of
    facets = list(vfi.facets)
    report = BasicExcessReport()

    def is_ridge(face):
        return rank[lat.face_closure(face)] == d - 2

    non_ridge = {}
    for (i, a), (j, b) in combinations(enumerate(facets), 2):
        inter = a & b
        if inter and not is_ridge(inter):
            non_ridge[(i, j)] = inter
            report.non_ridge_pairs.append((i, j, inter))
            bad = inter - nonsimple
            if bad:
                raise LemmaViolated(
                    f"facets {i} and {j} meet in a non-ridge containing simple vertices {sorted(bad)}",
                    witness=(i, j))

    for i, f in enumerate(facets):
        for v in f:
            simple_in_f = len(g.neighbors(v) & f) == d - 1
            if simple_in_f and v in nonsimple:
                report.checked_simple_in_facet += 1
                if not any(v in facets[j] and (min(i, j), max(i, j)) in non_ridge
                           for j in range(len(facets)) if j != i):
                    raise LemmaViolated(
                        f"vertex {v} is simple in facet {i} but nonsimple, and no facet "
                        f"through it meets facet {i} outside a ridge", witness=(i, v))
            if v in nonsimple:
                outside = g.neighbors(v) - f
                for w in outside:
                    if w not in nonsimple:
                        report.checked_outside_neighbours += 1
                        if not outside - {w}:
                            raise LemmaViolated(
                                f"nonsimple vertex {v} has only one neighbour {w} outside facet {i}",
                                witness=(i, v, w))
    return report


def nonsimple_core(g: Graph, d: int) -> NonsimpleCore:
    """Classify the nonsimple vertices of a graph with excess at most d - 1."""
    s = stats(g, d)
    if s.xi >= d:
        raise ExcessTooLarge(f"excess {s.xi} >= d={d}")
    R = s.nonsimple
    deg = g.degrees
    if not R:
        return NonsimpleCore(R, "empty")
    if len(R) == 1:
        return NonsimpleCore(R, "single")
    clique = all(g.has_edge(u, v) for u, v in combinations(R, 2))
    if s.xi == d - 2 and len(R) == d - 2 and clique and all(deg[v] == d + 1 for v in R):
        return NonsimpleCore(R, "simplex-face")
    if d == 5 and s.xi == 4:
        if len(R) == 2 and clique and all(deg[v] == 7 for v in R):
            return NonsimpleCore(R, "simplex-face")
        if len(R) == 4 and all(deg[v] == 6 for v in R):
            inner = [len(g.neighbors(v) & R) for v in R]
            edges = sum(inner) // 2
            if edges == 4 and all(x == 2 for x in inner):
                return NonsimpleCore(R, "quadrilateral")
    return NonsimpleCore(R, "other")
