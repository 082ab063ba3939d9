"""Property suites run by ``polyrec verify`` and the acceptance tests.

Each suite walks the catalogue, checks one family of structural facts and
returns a :class:`SuiteReport` with a witness for every failure.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .catalogue import FixtureRecord, all_fixtures, simplex, simplicial_prism
from .core import (
    Graph,
    bits,
    are_equivalent,
    build_lattice,
    graph_of,
    stats,
)
from .errors import LemmaViolated, UnknownSuite
from .orientations import (
    _acyclic_arcs,
    claim1_recognize,
    enumerate_acyclic,
    feasible_family,
    is_good,
    to_mask,
)
from .reconstruct import CoverageVerdict, reconstruct
from .structure import (
    is_prism_or_pyramid,
    pyramid_apex,
    pyramid_decompose,
    verify_basic_excess,
)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: str = ""


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, passed, witness=""):
        self.checks.append(Check(name, bool(passed), "" if passed else witness))

    def lines(self) -> list:
        out = []
        for c in self.checks:
            tail = f"  [{c.witness}]" if c.witness and not c.passed else ""
            out.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name}{tail}")
        return out


def thread_count() -> int:
    """Worker count from POLYREC_THREADS (unset means 1, 0 means one per CPU)."""
    raw = os.environ.get("POLYREC_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        n = 1
    if n <= 0:
        n = os.cpu_count() or 1
    return n


def _map(fn, items):
    # ordered merge, so output does not depend on the worker count
    workers = thread_count()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _fixtures(max_vertices=None) -> list:
    recs = all_fixtures()
    if max_vertices is not None:
        recs = [r for r in recs if r.vfi.n <= max_vertices]
    return recs


def _graph(rec: FixtureRecord) -> Graph:
    return graph_of(build_lattice(rec.vfi))


# ---------------------------------------------------------------------------

def suite_basic_excess() -> SuiteReport:
    rep = SuiteReport("basic-excess")
    for rec in _fixtures():
        try:
            r = verify_basic_excess(rec.vfi)
            rep.add(f"{rec.name}: {len(r.non_ridge_pairs)} non-ridge pairs", True)
        except LemmaViolated as exc:
            rep.add(rec.name, False, f"{exc} witness={exc.witness}")
    return rep


def suite_excess_theorem() -> SuiteReport:
    rep = SuiteReport("excess-theorem")
    for rec in _fixtures():
        d = rec.vfi.d
        xi = stats(_graph(rec), d).xi
        rep.add(f"{rec.name}: excess {xi}, d={d}", xi == 0 or xi >= d - 2,
                f"excess {xi} lies strictly between 0 and d-2")
    return rep


def _effective_fold(vfi) -> int:
    # a triangle is a pyramid over a segment; peeling stops at polygons
    dec = pyramid_decompose(vfi)
    return dec.fold + (1 if dec.base.d == 2 and dec.base.n == 3 else 0)


def suite_pyramid_theorems() -> SuiteReport:
    rep = SuiteReport("pyramid-theorems")
    for rec in _fixtures():
        vfi, d, n = rec.vfi, rec.vfi.d, rec.vfi.n
        g = _graph(rec)
        s = stats(g, d)
        k_ns = len(s.nonsimple)
        is_pyr = pyramid_apex(vfi) is not None

        # dichotomy: with at most d-k nonsimple vertices, either a pyramid or
        # each nonsimple vertex has at least k simple nonneighbours
        k = d - k_ns
        if k >= 1 and s.nonsimple:
            simple = set(range(n)) - s.nonsimple
            few = [u for u in s.nonsimple if len(simple - g.neighbors(u)) < k]
            rep.add(f"{rec.name}: pyramid dichotomy (k={k})", is_pyr or not few,
                    f"nonsimple {few} have fewer than {k} simple nonneighbours")

        # a universal vertex is an apex when fewer than d vertices are nonsimple
        if k_ns <= d - 1:
            for u, deg in enumerate(g.degrees):
                if deg == n - 1:
                    missing = sum(1 for f in vfi.facets if u not in f)
                    rep.add(f"{rec.name}: universal vertex {u} is an apex", missing == 1,
                            f"vertex {u} misses {missing} facets")

        if n < 2 * d and k_ns <= d - 1 and d >= 3:
            rep.add(f"{rec.name}: fewer than 2d vertices gives a pyramid", is_pyr, "no apex")

        kk = n - d
        if kk <= d - 1 and k_ns <= d - 1 and d >= 3:
            fold = _effective_fold(vfi)
            rep.add(f"{rec.name}: fold {fold} >= d-k = {d - kk}", fold >= d - kk,
                    f"fold {fold}")

        if n == 2 * d and k_ns <= d - 2 and d >= 2:
            rep.add(f"{rec.name}: 2d vertices gives prism or pyramid",
                    is_prism_or_pyramid(vfi) != "neither", "neither")

        if n <= 2 * d and d >= 2:
            simple_facets = [f for f in vfi.facets if not f & s.nonsimple]
            if simple_facets:
                rep.add(f"{rec.name}: all-simple facet gives prism or pyramid",
                        is_prism_or_pyramid(vfi) != "neither", "neither")

        if s.xi == 0 and n <= 2 * d:
            exp = [simplex(d)] + ([simplicial_prism(d)] if d >= 2 else [])
            rep.add(f"{rec.name}: simple with at most 2d vertices",
                    any(are_equivalent(vfi, e) is not None for e in exp),
                    "neither simplex nor simplicial prism")

    bad = [r.name for r in _fixtures() if r.vfi.d == 4 and r.vfi.n == 8
           and len(_graph(r).edges) == 17]
    rep.add("no 4-polytope with 8 vertices and 17 edges", not bad, ", ".join(bad))
    return rep


def _good_with_initial(lat, g, facet) -> bool:
    return any(is_good(o, lat) for o in enumerate_acyclic(g, forced_initial=facet))


def suite_orientation_existence(max_vertices: int = 8) -> SuiteReport:
    rep = SuiteReport("orientation-existence")
    for rec in _fixtures(max_vertices):
        lat = build_lattice(rec.vfi)
        g = graph_of(lat)
        missing = [sorted(f) for f in lat.facets if not _good_with_initial(lat, g, f)]
        rep.add(f"{rec.name}: every facet initial in a good orientation", not missing,
                f"no good orientation with {missing[:1]} initial")
    return rep


def suite_uniqueness() -> SuiteReport:
    """A feasible set with at most d-2 nonsimple vertices containing a facet is that facet."""
    rep = SuiteReport("uniqueness")
    for rec in _fixtures(12):
        d = rec.vfi.d
        g = _graph(rec)
        ns = to_mask(stats(g, d).nonsimple)
        fam = [h for h in feasible_family(g, d) if (h & ns).bit_count() <= d - 2]
        bad = []
        for f in rec.vfi.facets:
            m = to_mask(f)
            bad += [f"{sorted(f)} inside another feasible set"
                    for h in fam if h != m and h & m == m]
        rep.add(f"{rec.name}: facets are maximal feasible sets", not bad, "; ".join(bad[:2]))
    return rep


def _out_masks(n, arcs) -> list:
    out = [0] * n
    for u, v in arcs:
        out[u] |= 1 << v
    return out


def _strictly_good(out, face_masks) -> bool:
    for m in face_masks:
        sinks = 0
        for v in bits(m):
            if not out[v] & m:
                sinks += 1
                if sinks > 1:
                    return False
        if sinks != 1:
            return False
    return True


def check_composition(vfi) -> tuple:
    """Exhaustive check of orientation composition on one polytope.

    For every face F, every good orientation O with V(F) initial and every
    good orientation of G(F), redirecting O inside F must stay good.  Here
    "good" is the strict notion: a unique sink on every nonempty face.
    The result of redirecting depends on O only through its arcs outside
    G(F), so those are deduplicated first.
    Returns (number of distinct redirected orientations checked, first
    failure or None).
    """
    lat = build_lattice(vfi)
    g = graph_of(lat)
    n = g.n
    faces = [s for r, s in lat.faces if r >= 1]
    face_masks = [to_mask(s) for s in faces]
    good = []
    for arcs in _acyclic_arcs(g):
        out = _out_masks(n, arcs)
        if _strictly_good(out, face_masks):
            good.append(out)
    checked = 0
    for F in faces:
        if len(F) == n:
            continue
        m = to_mask(F)
        sub = Graph(n, [e for e in g.edges if e[0] in F and e[1] in F])
        inner = [fm for fm in face_masks if fm & ~m == 0]
        good_f = []
        for arcs in _acyclic_arcs(sub):
            out = _out_masks(n, arcs)
            if _strictly_good(out, inner):
                good_f.append(out)
        outside = set()
        for out in good:
            # V(F) initial: no arc from outside F into F
            if any(out[v] & m for v in range(n) if not m >> v & 1):
                continue
            outside.add(tuple(x & ~m if m >> v & 1 else x for v, x in enumerate(out)))
        for base in sorted(outside):
            for of in good_f:
                checked += 1
                new = [x | of[v] for v, x in enumerate(base)]
                if not _strictly_good(new, face_masks):
                    return checked, (sorted(F), base, tuple(of))
    return checked, None


def suite_composition(max_vertices: int = 8) -> SuiteReport:
    rep = SuiteReport("composition")
    for rec in _fixtures(max_vertices):
        n, bad = check_composition(rec.vfi)
        rep.add(f"{rec.name}: {n} redirected orientations good", bad is None, str(bad))
    return rep


def suite_claim1(enumerate_up_to: int = 9) -> SuiteReport:
    rep = SuiteReport("claim1-minimum")
    for rec in _fixtures():
        d = rec.vfi.d
        g = _graph(rec)
        s = stats(g, d)
        if d < 4 or not 1 <= s.xi <= d - 1:
            continue
        method = "enumerate" if g.n <= enumerate_up_to else "dp"
        res = claim1_recognize(g, d, s.nonsimple, method=method)
        nf = len(rec.vfi.facets)
        rep.add(f"{rec.name}: min f_R = {res.minimum} ({method})", res.minimum == nf,
                f"facet count {nf}")
        want = {f for f in rec.vfi.facets if s.nonsimple <= f}
        got = set(res.recognized)
        rep.add(f"{rec.name}: recognised sets are the {len(want)} facets containing the core",
                got == want, f"extra {sorted(map(sorted, got - want))} "
                f"missing {sorted(map(sorted, want - got))}")
    return rep


def _roundtrip_one(rec: FixtureRecord) -> Check:
    g = _graph(rec)
    out = reconstruct(g, rec.vfi.d)
    if isinstance(out, CoverageVerdict):
        xi = stats(g, rec.vfi.d).xi
        return Check(f"{rec.name}: refused ({out.reason})", xi >= rec.vfi.d,
                     "refused a graph with excess below d")
    ok = are_equivalent(out.to_incidence(), rec.vfi) is not None
    return Check(f"{rec.name}: {out.method}", ok, "reconstructed lattice not equivalent")


def suite_roundtrip() -> SuiteReport:
    rep = SuiteReport("roundtrip")
    rep.checks.extend(_map(_roundtrip_one, _fixtures()))
    return rep


SUITES = {
    "basic-excess": suite_basic_excess,
    "pyramid-theorems": suite_pyramid_theorems,
    "excess-theorem": suite_excess_theorem,
    "orientation-existence": suite_orientation_existence,
    "uniqueness": suite_uniqueness,
    "composition": suite_composition,
    "claim1-minimum": suite_claim1,
    "roundtrip": suite_roundtrip,
}


def run_suite(name: str) -> SuiteReport:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    return SUITES[name]()
