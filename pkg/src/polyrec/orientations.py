"""Acyclic orientations of polytope graphs and the objectives minimised over them.

Two ways of searching orientations live here:

* :func:`enumerate_acyclic` walks every acyclic orientation satisfying the
  given constraints (DFS over edge directions with incremental reachability).
* :func:`order_dp` minimises any objective of the form
  ``sum_v cost(v, predecessors(v))`` exactly.  Every acyclic orientation is
  induced by a vertex order and each vertex's in-neighbourhood is its
  neighbourhood intersected with the set placed before it, so the minimum
  is a shortest path over the lattice of initial vertex sets.  Constraints
  of the form "these sets are initial" become restrictions on which
  intermediate sets may be visited.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb
from typing import Callable, Iterable, Iterator, Optional

from .core import FaceLattice, Graph, bits, from_mask, graph_of, is_k_connected_mask, to_mask
from .errors import (
    AmbiguousCompletion,
    BudgetExceeded,
    GraphMismatch,
    InconsistentConstraints,
    NoCompletion,
    RNotClique,
)

INF = float("inf")


@dataclass(frozen=True)
class Orientation:
    graph: Graph
    arcs: frozenset  # (tail, head) pairs

    @cached_property
    def out_mask(self) -> tuple:
        out = [0] * self.graph.n
        for u, v in self.arcs:
            out[u] |= 1 << v
        return tuple(out)

    @cached_property
    def in_mask(self) -> tuple:
        inn = [0] * self.graph.n
        for u, v in self.arcs:
            inn[v] |= 1 << u
        return tuple(inn)

    def indegree(self, v: int) -> int:
        return self.in_mask[v].bit_count()

    def sinks_within(self, vertices) -> list:
        m = to_mask(vertices)
        return [v for v in bits(m) if not self.out_mask[v] & m]

    def redirect(self, other: "Orientation", vertices) -> "Orientation":
        """Replace the arcs inside ``vertices`` by those of ``other`` (same labels)."""
        vs = frozenset(vertices)
        kept = {(u, v) for u, v in self.arcs if not (u in vs and v in vs)}
        new = {(u, v) for u, v in other.arcs if u in vs and v in vs}
        return Orientation(self.graph, frozenset(kept | new))

    @classmethod
    def from_order(cls, g: Graph, order) -> "Orientation":
        pos = {v: i for i, v in enumerate(order)}
        return cls(g, frozenset((i, j) if pos[i] < pos[j] else (j, i) for i, j in g.edges))


@dataclass(frozen=True)
class IndegreeHistogram:
    counts: tuple  # counts[k] = simple vertices with indegree k

    def __getitem__(self, k: int) -> int:
        return self.counts[k] if 0 <= k < len(self.counts) else 0


@dataclass(frozen=True)
class Frame:
    root: int
    leaves: frozenset


# ---------------------------------------------------------------------------
# enumeration

def _constraint_arcs(g: Graph, forced_initial, forced_edges) -> dict:
    fixed = {}

    def force(u, v):
        if not g.has_edge(u, v):
            raise InconsistentConstraints(f"forced arc {(u, v)} is not an edge")
        key = (min(u, v), max(u, v))
        if fixed.get(key, (u, v)) != (u, v):
            raise InconsistentConstraints(f"edge {key} forced in both directions")
        fixed[key] = (u, v)

    S = to_mask(forced_initial)
    for u in bits(S):
        for v in bits(g.adj[u] & ~S):
            force(u, v)
    for u, v in forced_edges:
        force(u, v)
    return fixed


def _edge_order(g: Graph) -> list:
    # closing edges early (by larger endpoint) exposes cycles near the top of the tree
    return sorted(g.edges, key=lambda e: (e[1], e[0]))


def _acyclic_arcs(g: Graph, forced_initial=(), forced_edges=()) -> Iterator[tuple]:
    n = g.n
    fixed = _constraint_arcs(g, forced_initial, forced_edges)
    desc = [0] * n

    def add(desc, u, v) -> bool:
        if desc[v] >> u & 1 or u == v:
            return False
        new = desc[v] | (1 << v)
        for x in range(n):
            if x == u or desc[x] >> u & 1:
                desc[x] |= new
        return True

    for u, v in fixed.values():
        if not add(desc, u, v):
            raise InconsistentConstraints("forced arcs contain a directed cycle")
    base = tuple(fixed.values())
    free = [e for e in _edge_order(g) if e not in fixed]
    m = len(free)
    chosen = [None] * m
    saved = [None] * (m + 1)
    nxt = [0] * (m + 1)
    saved[0] = desc
    i = 0
    while i >= 0:
        if i == m:
            yield base + tuple(chosen)
            i -= 1
            continue
        c = nxt[i]
        if c == 2:
            i -= 1
            continue
        nxt[i] = c + 1
        a, b = free[i]
        if c:
            a, b = b, a
        state = saved[i]
        if state[b] >> a & 1:
            continue
        new = state[b] | (1 << b)
        child = [x | new if (x >> a & 1 or k == a) else x for k, x in enumerate(state)]
        chosen[i] = (a, b)
        saved[i + 1] = child
        nxt[i + 1] = 0
        i += 1


def enumerate_acyclic(g: Graph, forced_initial: Iterable[int] = (),
                      forced_edges: Iterable[tuple] = ()) -> Iterator[Orientation]:
    """Yield every acyclic orientation meeting the constraints, each exactly once.

    ``forced_initial`` is a vertex set that must be initial (all its boundary
    edges point outwards); ``forced_edges`` are arcs ``(tail, head)`` that
    must appear.  The order is deterministic, so the search can be split by
    fixing a prefix of edge directions (see :func:`prefix_partitions`).
    """
    for arcs in _acyclic_arcs(g, tuple(forced_initial), tuple(forced_edges)):
        yield Orientation(g, frozenset(arcs))


def count_acyclic(g: Graph, forced_initial=(), forced_edges=()) -> int:
    return sum(1 for _ in _acyclic_arcs(g, tuple(forced_initial), tuple(forced_edges)))


def prefix_partitions(g: Graph, depth: int, forced_initial=(), forced_edges=()) -> list:
    """Arc prefixes splitting the enumeration into disjoint, independent parts.

    Passing each returned tuple as extra ``forced_edges`` to
    :func:`enumerate_acyclic` yields a partition of the full enumeration.
    """
    fixed = _constraint_arcs(g, forced_initial, forced_edges)
    free = [e for e in _edge_order(g) if e not in fixed][:depth]
    sub = Graph(g.n, list(fixed) + free)
    out = []
    for arcs in _acyclic_arcs(sub, forced_edges=list(fixed.values())):
        prefix = tuple(a for a in arcs if (min(a), max(a)) not in fixed)
        out.append(tuple(fixed.values()) + prefix)
    return out


# ---------------------------------------------------------------------------
# predicates and objectives

def is_good(o: Orientation, lat: FaceLattice, all_faces: bool = False) -> bool:
    """Unique sink on every facet (or on every face of rank >= 1, P included, with ``all_faces``)."""
    if o.graph != graph_of(lat):
        raise GraphMismatch("orientation is not over the lattice's graph")
    if all_faces:
        faces = [s for r, s in lat.faces if r >= 1]
    else:
        faces = lat.facets
    return all(len(o.sinks_within(f)) == 1 for f in faces)


def is_initial(o: Orientation, subset) -> bool:
    m = to_mask(subset)
    return all(not o.in_mask[v] & ~m for v in bits(m))


def indegree_histogram(o: Orientation, d: int) -> IndegreeHistogram:
    degs = o.graph.degrees
    top = max(degs, default=0)
    counts = [0] * (top + 1)
    for v in range(o.graph.n):
        if degs[v] == d:
            counts[o.indegree(v)] += 1
    return IndegreeHistogram(tuple(counts))


def f_R_objective(h: IndegreeHistogram, d: int) -> int:
    return h[d - 1] + d * h[d]


def kalai_objective(o: Orientation) -> int:
    return sum(2 ** o.indegree(v) for v in range(o.graph.n))


def is_feasible(g: Graph, d: int, subset) -> bool:
    """Induced, (d-1)-connected, and every simple vertex has exactly d-1 neighbours inside."""
    m = to_mask(subset)
    if not m:
        return False
    for v in bits(m):
        if g.degrees[v] == d and (g.adj[v] & m).bit_count() != d - 1:
            return False
    return is_k_connected_mask(g.adj, m, d - 1)


@lru_cache(maxsize=64)
def feasible_family(g: Graph, d: int) -> tuple:
    """Bitmasks of all feasible vertex sets, sorted by size then lexicographically."""
    n = g.n
    adj = g.adj
    simple = [g.degrees[v] == d for v in range(n)]
    need = d - 1
    out = []

    def rec(v, S, undecided):
        # prune: included vertices must still be able to reach d-1 inside;
        # simple ones must not exceed it
        for w in bits(S):
            inside = (adj[w] & S).bit_count()
            if simple[w] and inside > need:
                return
            if (adj[w] & (S | undecided)).bit_count() < need:
                return
        if v == n:
            if S and is_feasible(g, d, from_mask(S)):
                out.append(S)
            return
        rest = undecided & ~(1 << v)
        rec(v + 1, S | (1 << v), rest)
        rec(v + 1, S, rest)

    rec(0, 0, (1 << n) - 1)
    out.sort(key=lambda m: (m.bit_count(), sorted(bits(m))))
    return tuple(out)


def facet_completion(g: Graph, d: int, seed: Frame, nonsimple=None, exclude=()) -> frozenset:
    """The unique inclusion-minimal feasible set containing the frame (and avoiding ``exclude``)."""
    if not seed.leaves <= g.neighbors(seed.root):
        raise NoCompletion("frame leaves are not neighbours of the root")
    if nonsimple is not None and frozenset(nonsimple) != frozenset(
            v for v, deg in enumerate(g.degrees) if deg != d):
        raise ValueError("nonsimple set disagrees with the graph degrees")
    want = to_mask(seed.leaves) | (1 << seed.root)
    avoid = to_mask(exclude)
    cands = [m for m in feasible_family(g, d) if m & want == want and not m & avoid]
    minimal = [m for m in cands if not any(o != m and o & m == o for o in cands)]
    if not minimal:
        raise NoCompletion(f"no feasible set contains frame at {seed.root}")
    if len(minimal) > 1:
        raise AmbiguousCompletion(
            f"{len(minimal)} incomparable minimal completions of frame at {seed.root}",
            candidates=[from_mask(m) for m in minimal])
    return from_mask(minimal[0])


def in_A_R(o: Orientation, d: int, R, require_clique: bool = True) -> Optional[frozenset]:
    """A feasible initial set containing ``R`` with ``R`` itself initial, if one exists."""
    g = o.graph
    R = frozenset(R)
    if require_clique and any(not g.has_edge(u, v) for u in R for v in R if u < v):
        raise RNotClique(f"{sorted(R)} does not span a complete subgraph")
    if not is_initial(o, R):
        return None
    r = to_mask(R)
    for m in feasible_family(g, d):
        if m & r == r and is_initial(o, from_mask(m)):
            return from_mask(m)
    return None


# ---------------------------------------------------------------------------
# exact minimisation over vertex orders

class SearchBudget:
    """Counts search steps and raises :class:`BudgetExceeded` past the cap."""

    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.used = 0

    def spend(self, k: int = 1):
        self.used += k
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"search budget of {self.limit} steps exceeded")


def order_dp(n: int, cost: Callable[[int, int], int], allowed: Optional[Callable[[int], bool]] = None,
             budget: Optional[SearchBudget] = None) -> tuple:
    """Forward and backward minimum costs over initial vertex sets.

    ``fwd[S]`` is the cheapest way to place exactly ``S`` first, visiting only
    allowed intermediate sets; ``bwd[S]`` the cheapest way to place the
    remaining vertices after ``S`` (unconstrained).  ``cost(v, S)`` is the
    cost of placing ``v`` right after the set ``S``.
    """
    full = (1 << n) - 1
    size = 1 << n
    if budget is not None:
        budget.spend(2 * size * max(n, 1))
    fwd = [INF] * size
    fwd[0] = 0
    for S in range(size):
        c = fwd[S]
        if c == INF:
            continue
        for v in bits(full & ~S):
            T = S | (1 << v)
            if allowed is not None and not allowed(T):
                continue
            val = c + cost(v, S)
            if val < fwd[T]:
                fwd[T] = val
    bwd = [INF] * size
    bwd[full] = 0
    for S in range(full - 1, -1, -1):
        best = INF
        for v in bits(full & ~S):
            val = cost(v, S) + bwd[S | (1 << v)]
            if val < best:
                best = val
        bwd[S] = best
    return fwd, bwd


def kalai_cost(g: Graph) -> Callable[[int, int], int]:
    adj = g.adj
    return lambda v, S: 1 << (adj[v] & S).bit_count()


def f_R_cost(g: Graph, d: int) -> Callable[[int, int], int]:
    """Per-vertex share of f_R: simple vertices pay C(indegree, d-1), others nothing."""
    adj = g.adj
    table = [[comb(k, d - 1) for k in range(g.degrees[v] + 1)] if g.degrees[v] == d else None
             for v in range(g.n)]

    def cost(v, S):
        t = table[v]
        return t[(adj[v] & S).bit_count()] if t is not None else 0

    return cost


def min_kalai(g: Graph, budget: Optional[SearchBudget] = None) -> int:
    fwd, _ = order_dp(g.n, kalai_cost(g), budget=budget)
    return fwd[-1]


@dataclass(frozen=True)
class Claim1Result:
    minimum: float
    recognized: tuple  # frozensets of recognised facet vertex sets
    candidates: int


def _chain_allowed(R: int) -> Callable[[int], bool]:
    return lambda T: T & ~R == 0 or T & R == R


def claim1_recognize(g: Graph, d: int, R, budget: Optional[SearchBudget] = None,
                     method: str = "dp") -> Claim1Result:
    """Minimise f_R over orientations in A_R and collect the facets containing R.

    A feasible set H containing R is recognised when some orientation in A_R
    attaining the minimum has H and R initial and a simple sink of H.  With
    ``method="enumerate"`` the minimum is taken over explicitly enumerated
    orientations instead of the order DP.
    """
    R = frozenset(R)
    r = to_mask(R)
    family = [m for m in feasible_family(g, d) if m & r == r]
    if method == "enumerate":
        return _claim1_enumerate(g, d, R, family, budget)
    cost = f_R_cost(g, d)
    fwd, bwd = order_dp(g.n, cost, allowed=_chain_allowed(r), budget=budget)
    best = min((fwd[H] + bwd[H] for H in family), default=INF)
    simple = [deg == d for deg in g.degrees]
    recognized = []
    for H in family:
        for x in bits(H & ~r):
            if not simple[x]:
                continue
            prev = H & ~(1 << x)
            if fwd[prev] + cost(x, prev) + bwd[H] == best:
                recognized.append(from_mask(H))
                break
    return Claim1Result(best, tuple(recognized), len(family))


def _claim1_enumerate(g, d, R, family, budget) -> Claim1Result:
    boundary = [(u, v) for u in R for v in g.neighbors(u) if v not in R]
    simple = [deg == d for deg in g.degrees]
    best = INF
    per_h = {}
    for H in family:
        hs = from_mask(H)
        hbest = INF
        for arcs in _acyclic_arcs(g, tuple(hs), tuple(boundary)):
            if budget is not None:
                budget.spend()
            o = Orientation(g, frozenset(arcs))
            f = f_R_objective(indegree_histogram(o, d), d)
            if f < best:
                best = f
            sinks = [v for v in bits(H) if not o.out_mask[v] & H]
            if len(sinks) == 1 and simple[sinks[0]] and f < hbest:
                hbest = f
        per_h[H] = hbest
    recognized = tuple(from_mask(H) for H in family if per_h[H] == best)
    return Claim1Result(best, recognized, len(family))
