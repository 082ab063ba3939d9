"""Constructors and fixed fixtures for the polytope families used in tests and the CLI.

Labelling conventions (stable across runs):

* ``simplex(d)``: vertices ``0..d``; facet ``i`` omits vertex ``i``.
* ``prism_over(base)``: base copy keeps its labels ``0..m-1``, the top copy
  is ``m..2m-1`` (vertex ``i`` on the bottom matches ``m + i`` on top).
* ``pyramid_over(base)``: the apex gets the next free label ``base.n``.
* ``bipyramid_over_simplex(d)``: base ``0..d-1``, apexes ``d`` and ``d + 1``.

The pentasm, tetragonal antiwedge and seven-vertex 3-polytope data were
produced once by the oracles in ``tests/oracles.py`` (exact convex hull and
3-connected planar graph enumeration) and are regenerated with
``python tests/oracles.py``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import VertexFacetIncidence
from .errors import BadDimension, BadIndex, InvalidBase, UnknownFixture


@dataclass(frozen=True)
class FixtureRecord:
    name: str
    vfi: VertexFacetIncidence
    provenance: str  # paper-table | constructor | derived-oracle


def _vfi(d, n, facets):
    return VertexFacetIncidence(d, n, tuple(frozenset(f) for f in facets))


def simplex(d: int) -> VertexFacetIncidence:
    if d < 1:
        raise BadDimension(f"simplex needs d >= 1, got {d}")
    verts = range(d + 1)
    facets = [[v for v in verts if v != i] for i in verts]
    return _vfi(d, d + 1, facets)


def polygon(m: int) -> VertexFacetIncidence:
    if m < 3:
        raise BadDimension(f"a polygon needs at least 3 vertices, got {m}")
    return _vfi(2, m, [(i, (i + 1) % m) for i in range(m)])


def prism_over(base: VertexFacetIncidence) -> VertexFacetIncidence:
    m = base.n
    facets = [range(m), range(m, 2 * m)]
    for f in base.facets:
        facets.append(sorted(f) + [m + v for v in sorted(f)])
    return _vfi(base.d + 1, 2 * m, facets)


def simplicial_prism(d: int) -> VertexFacetIncidence:
    """Prism over a (d-1)-simplex; bottom ``0..d-1``, top ``d..2d-1``."""
    if d < 2:
        raise BadDimension(f"simplicial prism needs d >= 2, got {d}")
    return prism_over(simplex(d - 1))


def cube(d: int) -> VertexFacetIncidence:
    if d < 2:
        raise BadDimension(f"cube needs d >= 2, got {d}")
    out = polygon(4)
    for _ in range(d - 2):
        out = prism_over(out)
    return out


def pyramid_over(base: VertexFacetIncidence) -> VertexFacetIncidence:
    if not isinstance(base, VertexFacetIncidence):
        raise InvalidBase("base must be a VertexFacetIncidence")
    apex = base.n
    facets = [range(base.n)] + [sorted(f) + [apex] for f in base.facets]
    return _vfi(base.d + 1, base.n + 1, facets)


def iterated_pyramid(base: VertexFacetIncidence, r: int) -> VertexFacetIncidence:
    out = base
    for _ in range(r):
        out = pyramid_over(out)
    return out


def _bipyramid(d: int) -> VertexFacetIncidence:
    base = range(d)
    facets = []
    for s in combinations(base, d - 1):
        facets.append(list(s) + [d])
        facets.append(list(s) + [d + 1])
    return _vfi(d, d + 2, facets)


def bipyramid_over_simplex(d: int) -> VertexFacetIncidence:
    if d < 3:
        raise BadDimension(f"bipyramid over a simplex needs d >= 3, got {d}")
    return _bipyramid(d)


def pyramid_over_bipyramid(d: int) -> VertexFacetIncidence:
    """Pyramid over a bipyramid over a (d-2)-simplex (for d = 3 the base is a quadrilateral)."""
    if d < 3:
        raise BadDimension(f"pyramid over a bipyramid needs d >= 3, got {d}")
    return pyramid_over(_bipyramid(d - 1))


_PENTASM = {
    3: (7, [[0, 1, 2, 4, 5], [0, 1, 3], [0, 2, 3], [1, 3, 4, 6], [2, 3, 5, 6], [4, 5, 6]]),
    4: (9, [[0, 1, 2, 3, 5, 6, 7], [0, 1, 2, 4, 5, 6, 8], [0, 1, 3, 4], [0, 2, 3, 4],
            [1, 3, 4, 5, 7, 8], [2, 3, 4, 6, 7, 8], [5, 6, 7, 8]]),
    5: (11, [[0, 1, 2, 3, 4, 6, 7, 8, 9], [0, 1, 2, 3, 5, 6, 7, 8, 10],
             [0, 1, 2, 4, 5, 6, 7, 9, 10], [0, 1, 3, 4, 5], [0, 2, 3, 4, 5],
             [1, 3, 4, 5, 6, 8, 9, 10], [2, 3, 4, 5, 7, 8, 9, 10], [6, 7, 8, 9, 10]]),
}


def pentasm(d: int) -> VertexFacetIncidence:
    if d not in _PENTASM:
        raise BadDimension(f"pentasm fixtures exist for d in 3..5, got {d}")
    n, facets = _PENTASM[d]
    return _vfi(d, n, facets)


def pentasm_prism() -> VertexFacetIncidence:
    """Prism over pentasm(4): a 5-polytope with excess 4 whose nonsimple vertices form a 4-cycle."""
    return prism_over(pentasm(4))


def apex_prism() -> VertexFacetIncidence:
    """Prism over the pyramid over prism(3): excess 4 in dimension 5, two adjacent nonsimple vertices."""
    return prism_over(pyramid_over(simplicial_prism(3)))


def tetragonal_antiwedge() -> VertexFacetIncidence:
    return _vfi(3, 6, [[0, 1, 2], [0, 1, 5], [0, 2, 4, 5], [1, 2, 3], [1, 3, 4, 5], [2, 3, 4]])


_SEVEN_VERTEX = [
    [[0, 1, 5, 6], [0, 2, 4, 6], [0, 4, 5], [1, 2, 3, 4, 5], [1, 3, 6], [2, 3, 6]],
    [[0, 1, 2, 3], [0, 1, 4], [0, 2, 5], [0, 4, 5, 6], [1, 3, 4, 6], [2, 3, 5, 6]],
    [[0, 2, 3, 4], [0, 3, 6], [0, 4, 6], [1, 2, 4, 5, 6], [1, 3, 5], [1, 3, 6], [2, 3, 5]],
    [[0, 2, 4, 5], [0, 4, 6], [0, 5, 6], [1, 2, 3, 5], [1, 3, 6], [1, 5, 6], [2, 3, 4, 6]],
    [[0, 1, 2, 3, 4, 5], [0, 1, 6], [0, 5, 6], [1, 2, 6], [2, 3, 6], [3, 4, 6], [4, 5, 6]],
]


def seven_vertex_3polytopes() -> list:
    """The 3-polytopes with seven vertices, at most two of them nonsimple."""
    return [_vfi(3, 7, f) for f in _SEVEN_VERTEX]


# Vertex-facet incidences of the nonpyramidal-captioned 4-polytopes with
# seven vertices and four nonsimple vertices, transcribed row by row.
_TABLE1 = {
    1: [[2, 3, 4, 5, 6], [1, 3, 4, 5, 6], [1, 2, 5, 6], [1, 2, 4, 6], [1, 2, 3, 5],
        [0, 2, 3, 4], [0, 1, 3, 4], [0, 1, 2, 4], [0, 1, 2, 3]],
    2: [[2, 3, 4, 5, 6], [1, 3, 4, 5, 6], [0, 1, 2, 5, 6], [1, 2, 4, 6], [0, 2, 3, 5],
        [0, 1, 3, 5], [1, 2, 3, 4], [0, 1, 2, 3]],
    3: [[1, 2, 3, 4, 5, 6], [0, 3, 4, 5, 6], [0, 2, 5, 6], [0, 2, 4, 6], [0, 2, 3, 5],
        [0, 1, 3, 4], [0, 1, 2, 4], [0, 1, 2, 3]],
    4: [[2, 3, 4, 5, 6], [1, 3, 4, 5, 6], [0, 1, 2, 5, 6], [0, 1, 2, 3, 4], [1, 2, 4, 6],
        [0, 2, 3, 5], [0, 1, 3, 5]],
}


def table1(i: int) -> VertexFacetIncidence:
    if i not in _TABLE1:
        raise BadIndex(f"table1 index must be 1..4, got {i}")
    return _vfi(4, 7, _TABLE1[i])


# ---------------------------------------------------------------------------
# named access (CLI and verification suites)

CONSTRUCTORS = {
    "simplex": (simplex, 1),
    "simplicial_prism": (simplicial_prism, 1),
    "prism": (simplicial_prism, 1),
    "cube": (cube, 1),
    "polygon": (polygon, 1),
    "bipyramid_over_simplex": (bipyramid_over_simplex, 1),
    "pyramid_over_bipyramid": (pyramid_over_bipyramid, 1),
    "pentasm": (pentasm, 1),
    "pentasm_prism": (pentasm_prism, 0),
    "apex_prism": (apex_prism, 0),
    "tetragonal_antiwedge": (tetragonal_antiwedge, 0),
    "table1": (table1, 1),
    "seven_vertex": (lambda i: seven_vertex_3polytopes()[_seven_index(i)], 1),
}


def _seven_index(i: int) -> int:
    if not 1 <= i <= len(_SEVEN_VERTEX):
        raise BadIndex(f"seven_vertex index must be 1..{len(_SEVEN_VERTEX)}, got {i}")
    return i - 1


def by_name(name: str, *params: int, pyramids: int = 0) -> VertexFacetIncidence:
    """Build a catalogue member from its name and integer parameters."""
    key = name.replace("-", "_")
    if key not in CONSTRUCTORS:
        raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(sorted(CONSTRUCTORS))}")
    fn, arity = CONSTRUCTORS[key]
    if len(params) != arity:
        raise BadDimension(f"{name} takes {arity} integer parameter(s), got {len(params)}")
    return iterated_pyramid(fn(*params), pyramids)


def all_fixtures() -> list:
    """Every catalogue member used by the verification suites."""
    recs = []

    def add(name, build, provenance="constructor"):
        recs.append(FixtureRecord(name, build(), provenance))

    for d in range(2, 7):
        add(f"simplex({d})", lambda d=d: simplex(d))
    for d in range(2, 6):
        add(f"simplicial_prism({d})", lambda d=d: simplicial_prism(d))
    add("cube(3)", lambda: cube(3))
    add("cube(4)", lambda: cube(4))
    add("pentagon", lambda: polygon(5))
    add("hexagon", lambda: polygon(6))
    for d in range(3, 6):
        add(f"bipyramid_over_simplex({d})", lambda d=d: bipyramid_over_simplex(d))
    for d in range(3, 6):
        add(f"pyramid_over_bipyramid({d})", lambda d=d: pyramid_over_bipyramid(d))
    for d in (3, 4, 5):
        add(f"pentasm({d})", lambda d=d: pentasm(d), "derived-oracle")
    add("pentasm_prism", pentasm_prism, "derived-oracle")
    add("apex_prism", apex_prism)
    add("tetragonal_antiwedge", tetragonal_antiwedge, "derived-oracle")
    for i, p in enumerate(seven_vertex_3polytopes(), 1):
        add(f"seven_vertex({i})", lambda p=p: p, "derived-oracle")
    for i in range(1, 5):
        add(f"table1({i})", lambda i=i: table1(i), "paper-table")
    bases = {
        "pentagon": lambda: polygon(5),
        "simplicial_prism(3)": lambda: simplicial_prism(3),
        "tetragonal_antiwedge": tetragonal_antiwedge,
        "quadrilateral": lambda: polygon(4),
    }
    for bname, b in bases.items():
        for r in range(1, 4):
            add(f"pyramid^{r}({bname})", lambda b=b, r=r: iterated_pyramid(b(), r))
    add("pyramid(pentasm(3))", lambda: pyramid_over(pentasm(3)))
    add("pyramid(simplicial_prism(4))", lambda: pyramid_over(simplicial_prism(4)))
    for i in (1, 2):
        add(f"pyramid(seven_vertex({i}))", lambda i=i: pyramid_over(seven_vertex_3polytopes()[i - 1]))
    return recs
