"""Reconstruction of a polytope's facets from its graph.

Dispatch order (earlier wins):

1. excess 0: simple polytope, facets recognised by minimising the
   ``sum 2^indegree`` objective over acyclic orientations;
2. a vertex adjacent to all others with fewer than d nonsimple vertices:
   it is an apex, so reconstruct the base one dimension down and lift;
3. excess at most d - 1 and d >= 4: frame completion around the nonsimple
   core plus recognition of the facets containing it;
4. d <= 3: faces of the (unique) planar embedding.

Anything else returns a :class:`CoverageVerdict` explaining which hypothesis
failed.  Every facet list is validated by rebuilding the face lattice and
comparing its graph with the input before it is returned.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Optional, Union

import networkx as nx

from .core import (
    Graph,
    VertexFacetIncidence,
    are_equivalent,
    balinski_check,
    build_lattice,
    from_mask,
    graph_of,
    graphs_isomorphic,
    stats,
    to_mask,
)
from .errors import (
    AmbiguousCompletion,
    CoreUnrecognized,
    HypothesisViolated,
    InternalValidationFailed,
    NoCompletion,
    NotBalinski,
    NotSimple,
    PolytopeError,
    ValidationFailed,
)
from .orientations import (
    Frame,
    SearchBudget,
    claim1_recognize,
    f_R_cost,
    facet_completion,
    feasible_family,
    kalai_cost,
    order_dp,
)
from .structure import nonsimple_core

log = logging.getLogger(__name__)

DEFAULT_MAX_ORIENTATIONS = 200_000_000


@dataclass(frozen=True)
class Certificate:
    lattice_built: bool = False
    diamond_checked: bool = False
    graph_round_trip: bool = False
    objective_matches: bool = True

    @property
    def ok(self) -> bool:
        return self.lattice_built and self.diamond_checked and self.graph_round_trip \
            and self.objective_matches


@dataclass(frozen=True)
class ReconstructionResult:
    d: int
    n: int
    facets: tuple  # sorted tuples, sorted lexicographically
    method: str  # simple | pyramid-peel | excess | planar
    certificate: Certificate
    details: dict = field(default_factory=dict, compare=False)

    def to_incidence(self) -> VertexFacetIncidence:
        return VertexFacetIncidence(self.d, self.n, tuple(frozenset(f) for f in self.facets))


@dataclass(frozen=True)
class CoverageVerdict:
    covered: bool
    reason: str

    def __post_init__(self):
        if not self.covered and not self.reason:
            raise ValueError("an uncovered verdict needs a reason")


def _canonical(facets) -> tuple:
    return tuple(sorted(tuple(sorted(f)) for f in facets))


# ---------------------------------------------------------------------------
# simple polytopes

def _simple(g: Graph, d: int, budget: Optional[SearchBudget]) -> tuple:
    if any(deg != d for deg in g.degrees):
        raise NotSimple(f"not every vertex has degree d={d}")
    fwd, bwd = order_dp(g.n, kalai_cost(g), budget=budget)
    best = fwd[-1]
    return [from_mask(H) for H in feasible_family(g, d) if fwd[H] + bwd[H] == best], best


def simple_reconstruct(g: Graph, d: int, budget: Optional[SearchBudget] = None) -> list:
    """Facets of a simple polytope: feasible sets initial in some Kalai-minimal orientation."""
    return _simple(g, d, budget)[0]


# ---------------------------------------------------------------------------
# small excess

@dataclass
class ExcessDetails:
    core: object
    class_a: dict  # nonsimple vertex -> list of facets meeting but not containing the core
    class_b: list
    class_c: list
    min_f_R: float
    min_total: float


def _frame_facets(g: Graph, d: int, core) -> dict:
    """Facets through a core vertex ``u`` missing a core neighbour ``v``.

    Such a facet contains every other neighbour of ``u``, so it is the
    completion of the frame rooted at ``u`` on ``N(u) - {v}``.
    """
    R = core.vertices
    out = {}
    for u in sorted(R):
        found = []
        for v in sorted(g.neighbors(u) & R):
            frame = Frame(u, g.neighbors(u) - {v})
            found.append(facet_completion(g, d, frame, exclude={v}))
        out[u] = found
    return out


def _sink_count_cost(g: Graph, d: int, known: list):
    """Number of facets in which ``v`` is a sink, given the set placed before it.

    Simple vertices: C(indegree, d-1).  Nonsimple vertices: counted over the
    already known facets through them.
    """
    base = f_R_cost(g, d)
    per_vertex = {}
    for F in known:
        fm = to_mask(F)
        for v in F:
            if g.degrees[v] != d:
                per_vertex.setdefault(v, []).append(g.adj[v] & fm)
    nbr_masks = [per_vertex.get(v) for v in range(g.n)]

    def cost(v, S):
        masks = nbr_masks[v]
        if masks is None:
            return base(v, S)
        return sum(1 for m in masks if m & ~S == 0)

    return cost


def excess_reconstruct_detailed(g: Graph, d: int, budget: Optional[SearchBudget] = None) -> ExcessDetails:
    s = stats(g, d)
    if d < 4 or not 1 <= s.xi <= d - 1:
        raise HypothesisViolated(f"needs d >= 4 and 1 <= excess <= d-1 (d={d}, excess={s.xi})")
    core = nonsimple_core(g, d)
    if core.kind not in ("single", "simplex-face", "quadrilateral"):
        raise CoreUnrecognized(
            f"nonsimple vertices {sorted(core.vertices)} form no recognised core")
    R = core.vertices
    class_a = _frame_facets(g, d, core) if core.kind != "single" else {}
    claim = claim1_recognize(g, d, R, budget=budget)
    known = {frozenset(F) for fs in class_a.values() for F in fs} | set(claim.recognized)

    cost = _sink_count_cost(g, d, sorted(known, key=sorted))
    fwd, bwd = order_dp(g.n, cost, budget=budget)
    best = fwd[-1]
    rmask = to_mask(R)
    class_c = []
    for H in feasible_family(g, d):
        if H & rmask == 0 and fwd[H] + bwd[H] == best:
            class_c.append(from_mask(H))
    return ExcessDetails(core, class_a, list(claim.recognized), class_c, claim.minimum, best)


def excess_reconstruct(g: Graph, d: int, budget: Optional[SearchBudget] = None) -> list:
    det = excess_reconstruct_detailed(g, d, budget)
    facets = {frozenset(F) for fs in det.class_a.values() for F in fs}
    facets |= set(det.class_b) | set(det.class_c)
    return sorted(facets, key=sorted)


# ---------------------------------------------------------------------------
# dimension <= 3

def planar_reconstruct(g: Graph, d: int) -> list:
    if d == 2:
        return [frozenset(e) for e in g.edges]
    planar, emb = nx.check_planarity(g.to_networkx())
    if not planar:
        raise ValidationFailed("graph is not planar, so not the graph of a 3-polytope")
    faces = set()
    seen = set()
    for u, v in emb.edges():
        if (u, v) in seen:
            continue
        face = emb.traverse_face(u, v, mark_half_edges=seen)
        faces.add(frozenset(face))
    return sorted(faces, key=sorted)


# ---------------------------------------------------------------------------
# dispatch

def _validate(g: Graph, d: int, facets) -> Certificate:
    try:
        vfi = VertexFacetIncidence(d, g.n, tuple(frozenset(f) for f in facets))
        lat = build_lattice(vfi)
    except PolytopeError as exc:
        raise InternalValidationFailed(f"facet list does not form a polytope lattice: {exc}") from exc
    if graph_of(lat).edges != g.edges:
        raise InternalValidationFailed("rebuilt lattice has a different graph")
    return Certificate(lattice_built=True, diamond_checked=True, graph_round_trip=True), lat


def _uncovered(g: Graph, d: int, s) -> CoverageVerdict:
    parts = []
    if s.xi == d:
        parts.append(f"excess = d ({s.xi} = {d})")
    elif s.xi > d:
        parts.append(f"excess > d ({s.xi} > {d})")
    k = len(s.nonsimple)
    if k >= d:
        parts.append(f"nonsimple count ≥ d ({k} ≥ {d})")
    if not parts:
        parts.append(f"excess {s.xi}, {k} nonsimple vertices and {g.n} vertices "
                     "are outside every covered case")
    return CoverageVerdict(False, "; ".join(parts))


def _dispatch(g: Graph, d: int, budget: SearchBudget):
    s = stats(g, d)
    if s.xi == 0:
        facets, best = _simple(g, d, budget)
        return facets, "simple", {"min_kalai": best}
    if len(s.nonsimple) <= d - 1:
        apex = next((v for v, deg in enumerate(g.degrees) if deg == g.n - 1), None)
        if apex is not None:
            labels = [v for v in range(g.n) if v != apex]
            base = g.induced(labels)
            sub = _dispatch(base, d - 1, budget)
            if isinstance(sub, CoverageVerdict):
                return CoverageVerdict(False, f"pyramid base not covered: {sub.reason}")
            base_facets, base_method, base_details = sub
            facets = [frozenset(labels)]
            facets += [frozenset(labels[i] for i in R) | {apex} for R in base_facets]
            details = {"apex": apex, "base_method": base_method,
                       "fold": base_details.get("fold", 0) + 1}
            return facets, "pyramid-peel", details
    if s.xi <= d - 1 and d >= 4:
        det = excess_reconstruct_detailed(g, d, budget)
        facets = {frozenset(F) for fs in det.class_a.values() for F in fs}
        facets |= set(det.class_b) | set(det.class_c)
        return sorted(facets, key=sorted), "excess", {"excess": det}
    if d <= 3:
        return planar_reconstruct(g, d), "planar", {}
    return _uncovered(g, d, s)


def reconstruct(g: Graph, d: int, max_orientations: Optional[int] = DEFAULT_MAX_ORIENTATIONS
                ) -> Union[ReconstructionResult, CoverageVerdict]:
    """Reconstruct the facets of the d-polytope whose graph is ``g``.

    Raises :class:`NotBalinski` when ``g`` is not d-connected,
    :class:`BudgetExceeded` when the orientation search exceeds
    ``max_orientations`` steps and :class:`InternalValidationFailed` when a
    candidate facet list does not rebuild ``g``.
    """
    if not balinski_check(g, d):
        raise NotBalinski(f"graph is not {d}-connected")
    budget = SearchBudget(max_orientations)
    try:
        out = _dispatch(g, d, budget)
    except (CoreUnrecognized, AmbiguousCompletion, NoCompletion) as exc:
        raise InternalValidationFailed(str(exc)) from exc
    if isinstance(out, CoverageVerdict):
        return out
    facets, method, details = out
    cert, lat = _validate(g, d, facets)
    if method == "simple":
        # each nonempty face has exactly one sink, so the minimum counts them
        cert = replace(cert, objective_matches=details["min_kalai"] == len(lat.faces) - 1)
    elif method == "excess":
        det = details["excess"]
        cert = replace(cert, objective_matches=det.min_f_R == det.min_total == len(facets))
    if not cert.ok:
        raise InternalValidationFailed(f"objective check failed for method {method}")
    log.debug("reconstructed %d facets via %s", len(facets), method)
    return ReconstructionResult(d, g.n, _canonical(facets), method, cert, details)


def find_graph_ambiguities(fixtures) -> list:
    """Group fixtures by graph isomorphism, then by combinatorial equivalence.

    Returns a list of graph classes; each class is a list of lattice classes,
    each a list of indices into ``fixtures``.
    """
    graphs = [graph_of(build_lattice(v)) for v in fixtures]
    classes = []
    for i, g in enumerate(graphs):
        for cls in classes:
            j = cls[0][0]
            if fixtures[j].d == fixtures[i].d and graphs_isomorphic(graphs[j], g) is not None:
                for sub in cls:
                    if are_equivalent(fixtures[sub[0]], fixtures[i]) is not None:
                        sub.append(i)
                        break
                else:
                    cls.append([i])
                break
        else:
            classes.append([[i]])
    return classes
