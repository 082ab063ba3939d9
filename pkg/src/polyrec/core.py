"""Combinatorial representation of polytopes.

A polytope is given by its dimension and the vertex sets of its facets
(:class:`VertexFacetIncidence`).  Everything else (the face lattice, the
graph, the k-skeleta, degree statistics) is derived from that.  Vertex sets
are frozensets of 0-based indices throughout; internally the hot loops work
on integer bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Optional

import networkx as nx

from .errors import DegenerateInput, DegreeTooLow, NotPolytopal, RankMismatch, RankOutOfRange


# ---------------------------------------------------------------------------
# bitmask helpers

def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def from_mask(mask: int) -> frozenset:
    return frozenset(bits(mask))


def is_connected_mask(adj, mask: int) -> bool:
    if not mask:
        return False
    seen = mask & -mask
    frontier = seen
    while frontier:
        nb = 0
        for v in bits(frontier):
            nb |= adj[v]
        nb &= mask & ~seen
        seen |= nb
        frontier = nb
    return seen == mask


def is_k_connected_mask(adj, mask: int, k: int) -> bool:
    """True iff the subgraph induced on ``mask`` is k-connected.

    Uses the textbook definition: more than k vertices, and deleting any
    k - 1 of them leaves a connected graph.  Brute force over the deleted
    sets, which is cheap for the sizes this package handles.
    """
    members = list(bits(mask))
    if k <= 0:
        return bool(members)
    if len(members) <= k:
        return False
    for removed in combinations(members, k - 1):
        if not is_connected_mask(adj, mask & ~to_mask(removed)):
            return False
    return True


# ---------------------------------------------------------------------------
# types

def _normalize_edges(n: int, edges) -> frozenset:
    out = set()
    for e in edges:
        i, j = (int(x) for x in e)
        if i == j:
            raise ValueError(f"loop at vertex {i}")
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge {(i, j)} out of range for n={n}")
        out.add((min(i, j), max(i, j)))
    return frozenset(out)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "edges", _normalize_edges(self.n, self.edges))

    @cached_property
    def adj(self) -> tuple:
        masks = [0] * self.n
        for i, j in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return tuple(masks)

    @cached_property
    def degrees(self) -> tuple:
        return tuple(m.bit_count() for m in self.adj)

    def neighbors(self, v: int) -> frozenset:
        return from_mask(self.adj[v])

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def induced(self, vertices) -> "Graph":
        """Induced subgraph, relabelled to ``0..len(vertices)-1`` in sorted order."""
        order = sorted(vertices)
        index = {v: i for i, v in enumerate(order)}
        return Graph(len(order), {(index[i], index[j]) for i, j in self.edges
                                  if i in index and j in index})

    def remove_vertex(self, v: int) -> "Graph":
        return self.induced(u for u in range(self.n) if u != v)

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.edges)
        return G


@dataclass(frozen=True)
class VertexFacetIncidence:
    """A combinatorial polytope: dimension plus the vertex set of every facet.

    Construction checks the cheap invariants (no nested facets, every vertex
    in at least ``d`` facets, every facet with at least ``d`` vertices); the
    lattice-level checks happen in :func:`build_lattice`.
    """

    d: int
    n: int
    facets: tuple

    def __post_init__(self):
        facets = tuple(frozenset(int(v) for v in f) for f in self.facets)
        object.__setattr__(self, "facets", facets)
        d, n = self.d, self.n
        if d < 1:
            raise DegenerateInput(f"dimension must be positive, got {d}")
        if n < d + 1 or len(facets) < d + 1:
            raise DegenerateInput(
                f"a {d}-polytope needs at least {d + 1} vertices and facets "
                f"(got n={n}, {len(facets)} facets)")
        if len(set(facets)) != len(facets):
            raise NotPolytopal("duplicate facet")
        for f in facets:
            if any(not 0 <= v < n for v in f):
                raise NotPolytopal(f"facet {sorted(f)} has a vertex outside 0..{n - 1}")
            if len(f) < d:
                raise NotPolytopal(f"facet {sorted(f)} has fewer than d={d} vertices")
        for a, b in combinations(facets, 2):
            if a <= b or b <= a:
                raise NotPolytopal(f"facets {sorted(a)} and {sorted(b)} are nested")
        counts = [0] * n
        for f in facets:
            for v in f:
                counts[v] += 1
        for v, c in enumerate(counts):
            if c < d:
                raise NotPolytopal(f"vertex {v} lies in only {c} facets (< d={d})")

    def relabel(self, perm) -> "VertexFacetIncidence":
        """Apply the vertex map ``v -> perm[v]``."""
        return VertexFacetIncidence(self.d, self.n,
                                    tuple(frozenset(perm[v] for v in f) for f in self.facets))

    def canonical_facets(self) -> list:
        return sorted(sorted(f) for f in self.facets)


@dataclass(frozen=True)
class FaceLattice:
    """Graded lattice of faces.

    ``faces`` is sorted by (rank, sorted vertex tuple); the empty face has rank
    -1 and comes first, the whole polytope has rank ``d`` and comes last.
    ``covers`` holds index pairs ``(lower, upper)`` of the Hasse diagram.
    """

    d: int
    n: int
    faces: tuple
    covers: tuple

    @cached_property
    def rank_of(self) -> dict:
        return {s: r for r, s in self.faces}

    def faces_of_rank(self, r: int) -> list:
        return [s for rr, s in self.faces if rr == r]

    @property
    def facets(self) -> list:
        return self.faces_of_rank(self.d - 1)

    @property
    def f_vector(self) -> tuple:
        return tuple(len(self.faces_of_rank(r)) for r in range(self.d))

    def face_closure(self, vertices) -> frozenset:
        """Smallest face containing ``vertices``."""
        vs = frozenset(vertices)
        best = None
        for _, s in self.faces:
            if vs <= s and (best is None or len(s) < len(best)):
                best = s
        return best

    def to_incidence(self) -> VertexFacetIncidence:
        return VertexFacetIncidence(self.d, self.n, tuple(self.facets))


@dataclass(frozen=True)
class Skeleton:
    k: int
    faces: tuple

    @cached_property
    def n(self) -> int:
        return len([1 for r, _ in self.faces if r == 0])


@dataclass(frozen=True)
class PolytopeStats:
    d: int
    f: tuple
    degrees: tuple
    xi: int
    nonsimple: frozenset


# ---------------------------------------------------------------------------
# operations

def build_lattice(vfi: VertexFacetIncidence) -> FaceLattice:
    """Close the facet vertex sets under intersection and rank the result.

    Raises :class:`NotPolytopal` when the resulting poset is not graded of
    rank ``d + 1`` (counting the empty face), when some vertex is not a
    face on its own, or when the diamond property fails.
    """
    d, n = vfi.d, vfi.n
    facet_masks = [to_mask(f) for f in vfi.facets]
    faces = set(facet_masks)
    frontier = list(facet_masks)
    while frontier:
        new = []
        for a in frontier:
            for b in facet_masks:
                c = a & b
                if c and c not in faces:
                    faces.add(c)
                    new.append(c)
        frontier = new
    top = (1 << n) - 1
    faces.discard(top)
    singletons = {1 << v for v in range(n)}
    missing = singletons - faces
    if missing:
        raise NotPolytopal(f"vertices {sorted(v.bit_length() - 1 for v in missing)} "
                           "are not intersections of facets")

    masks = [0] + sorted(faces, key=lambda m: (m.bit_count(), m)) + [top]
    index = {m: i for i, m in enumerate(masks)}
    # upper covers: minimal strict supersets
    uppers = []
    for a in masks:
        above = [b for b in masks if b != a and a & ~b == 0]
        minimal = [b for b in above if not any(c != b and c & ~b == 0 for c in above)]
        uppers.append(minimal)
    rank = {0: -1}
    for a in masks[1:]:
        lowers = [b for b, ups in zip(masks, uppers) if a in ups]
        rank[a] = max(rank[b] for b in lowers) + 1
    for a, ups in zip(masks, uppers):
        for b in ups:
            if rank[b] != rank[a] + 1:
                raise NotPolytopal("face poset is not graded")
    if rank[top] != d:
        raise NotPolytopal(f"face lattice has rank {rank[top] + 1}, expected {d + 1}")
    for a in masks:
        if a and a & (a - 1) == 0 and rank[a] != 0:
            raise NotPolytopal("a vertex is not an atom")
    for a, ups in zip(masks, uppers):
        middles = {}
        for b in ups:
            for c in uppers[index[b]]:
                middles[c] = middles.get(c, 0) + 1
        for c, count in middles.items():
            if count != 2:
                raise NotPolytopal(
                    f"diamond property fails between {sorted(bits(a))} and {sorted(bits(c))}")

    order = sorted(masks, key=lambda m: (rank[m], sorted(bits(m))))
    pos = {m: i for i, m in enumerate(order)}
    faces_out = tuple((rank[m], from_mask(m)) for m in order)
    covers = tuple(sorted((pos[a], pos[b]) for a, ups in zip(masks, uppers) for b in ups))
    return FaceLattice(d, n, faces_out, covers)


def graph_of(lat: FaceLattice) -> Graph:
    return Graph(lat.n, {tuple(sorted(s)) for s in lat.faces_of_rank(1)})


def incidence_graph(vfi: VertexFacetIncidence) -> Graph:
    return graph_of(build_lattice(vfi))


def k_skeleton(lat: FaceLattice, k: int) -> Skeleton:
    if not 0 <= k <= lat.d - 1:
        raise RankOutOfRange(f"k={k} outside 0..{lat.d - 1}")
    return Skeleton(k, tuple((r, s) for r, s in lat.faces if 0 <= r <= k))


def stats(g: Graph, d: int) -> PolytopeStats:
    """Degree statistics of a graph read as the graph of a d-polytope."""
    low = [v for v, deg in enumerate(g.degrees) if deg < d]
    if low:
        raise DegreeTooLow(f"vertices {low} have degree below d={d}")
    xi = sum(deg - d for deg in g.degrees)
    assert xi == 2 * len(g.edges) - d * g.n
    return PolytopeStats(
        d=d,
        f=(g.n, len(g.edges)),
        degrees=g.degrees,
        xi=xi,
        nonsimple=frozenset(v for v, deg in enumerate(g.degrees) if deg > d),
    )


def lattice_stats(lat: FaceLattice) -> PolytopeStats:
    s = stats(graph_of(lat), lat.d)
    return PolytopeStats(lat.d, lat.f_vector, s.degrees, s.xi, s.nonsimple)


def balinski_check(g: Graph, d: int) -> bool:
    """True iff the graph is d-connected (minimum vertex cut at least d)."""
    if g.n <= d:
        return False
    return nx.node_connectivity(g.to_networkx()) >= d


# ---------------------------------------------------------------------------
# isomorphism

def _refine(n: int, blocks: list) -> list:
    """Colour vertices by iterated incidence signatures (1-WL on the hypergraph)."""
    member_of = [[] for _ in range(n)]
    for b in blocks:
        for v in b:
            member_of[v].append(b)
    colours = [tuple(sorted(len(b) for b in member_of[v])) for v in range(n)]
    for _ in range(3):
        colours = [
            (colours[v], tuple(sorted(
                (len(b), tuple(sorted(colours[u] for u in b if u != v))) for b in member_of[v])))
            for v in range(n)
        ]
    return colours


def find_isomorphism(n_a: int, blocks_a, n_b: int, blocks_b) -> Optional[tuple]:
    """Vertex bijection mapping the set system ``blocks_a`` onto ``blocks_b``.

    Backtracking over candidates restricted by refined incidence colours.
    Vertices of ``a`` are assigned in index order and candidates are tried in
    index order, so the result is deterministic.  Returns a tuple ``phi`` with
    ``phi[v]`` the image of ``v``, or None.
    """
    A = [frozenset(b) for b in blocks_a]
    B = [frozenset(b) for b in blocks_b]
    if n_a != n_b or len(A) != len(B) or len(set(A)) != len(set(B)):
        return None
    n = n_a
    if sorted(map(len, A)) != sorted(map(len, B)):
        return None
    # colours must be comparable across both sides, so refine jointly
    ca = _refine(n, A)
    cb = _refine(n, B)
    if sorted(ca) != sorted(cb):
        return None
    a_masks = [to_mask(b) for b in A]
    b_set = set(to_mask(b) for b in B)
    b_masks = [to_mask(b) for b in B]
    candidates = [[u for u in range(n) if cb[u] == ca[v]] for v in range(n)]
    phi = [-1] * n
    used = [False] * n

    def consistent(k: int) -> bool:
        # traces of blocks on the first k assigned vertices must match
        dom = (1 << k) - 1
        img = 0
        for v in range(k):
            img |= 1 << phi[v]
        tr_a = {}
        for m in a_masks:
            t = 0
            for v in bits(m & dom):
                t |= 1 << phi[v]
            key = (t, m.bit_count())
            tr_a[key] = tr_a.get(key, 0) + 1
        tr_b = {}
        for m in b_masks:
            key = (m & img, m.bit_count())
            tr_b[key] = tr_b.get(key, 0) + 1
        return tr_a == tr_b

    def search(k: int) -> bool:
        if k == n:
            return all(_image(m) in b_set for m in a_masks)
        for u in candidates[k]:
            if used[u]:
                continue
            phi[k] = u
            used[u] = True
            if consistent(k + 1) and search(k + 1):
                return True
            used[u] = False
        phi[k] = -1
        return False

    def _image(m: int) -> int:
        t = 0
        for v in bits(m):
            t |= 1 << phi[v]
        return t

    if search(0):
        return tuple(phi)
    return None


def graphs_isomorphic(a: Graph, b: Graph) -> Optional[tuple]:
    if a.n != b.n or len(a.edges) != len(b.edges):
        return None
    if sorted(a.degrees) != sorted(b.degrees):
        return None
    return find_isomorphism(a.n, a.edges, b.n, b.edges)


def are_equivalent(a: VertexFacetIncidence, b: VertexFacetIncidence) -> Optional[tuple]:
    """Vertex bijection inducing a bijection between facet sets, if any."""
    if a.d != b.d or a.n != b.n or len(a.facets) != len(b.facets):
        return None
    return find_isomorphism(a.n, a.facets, b.n, b.facets)


def skeletons_isomorphic(a: Skeleton, b: Skeleton) -> bool:
    if a.k != b.k:
        raise RankMismatch(f"cannot compare a {a.k}-skeleton with a {b.k}-skeleton")
    ra = sorted((r, len(s)) for r, s in a.faces)
    rb = sorted((r, len(s)) for r, s in b.faces)
    if ra != rb:
        return False
    blocks_a = [s for r, s in a.faces if r >= 1]
    blocks_b = [s for r, s in b.faces if r >= 1]
    return find_isomorphism(a.n, blocks_a, b.n, blocks_b) is not None
