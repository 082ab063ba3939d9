"""Acceptance criteria 1-8.

Each test records one ``PASS``/``FAIL`` line with its wall time, then
asserts.  The lines are printed in an "acceptance criteria" section at the
end of the pytest run (see conftest.py); ``python tests/test_acceptance.py``
runs just this file.
"""

import itertools
import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import oracles  # noqa: E402
from polyrec.catalogue import (  # noqa: E402
    all_fixtures,
    bipyramid_over_simplex,
    cube,
    iterated_pyramid,
    pentasm,
    polygon,
    pyramid_over_bipyramid,
    simplex,
    simplicial_prism,
    table1,
    tetragonal_antiwedge,
)
from polyrec.cli import dump_incidence, parse_document  # noqa: E402
from polyrec.core import (  # noqa: E402
    are_equivalent,
    build_lattice,
    graph_of,
    graphs_isomorphic,
    incidence_graph,
    k_skeleton,
    skeletons_isomorphic,
    stats,
)
from polyrec.orientations import claim1_recognize, count_acyclic  # noqa: E402
from polyrec.reconstruct import CoverageVerdict, ReconstructionResult, reconstruct  # noqa: E402
from polyrec.structure import nonsimple_core  # noqa: E402
from polyrec.verify import check_composition, run_suite  # noqa: E402


LINES = []


def _emit(line):
    LINES.append(line)


def report(number, title, ok, elapsed, limit, detail=""):
    within = elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    tail = f"  [{detail}]" if detail and status == "FAIL" else ""
    _emit(f"{status}  criterion {number}: {title} ({elapsed:.2f} s, limit {limit:g} s){tail}")
    assert ok, detail
    assert within, f"took {elapsed:.1f} s, limit {limit} s"


def _pairs(xs):
    return itertools.combinations(range(len(xs)), 2)


# 1

def test_criterion_1_table1_ambiguity():
    t = time.perf_counter()
    problems = []
    parsed = []
    for i in range(1, 5):
        kind, vfi, _ = parse_document(dump_incidence(table1(i)))
        assert kind == "incidence"
        parsed.append(vfi)
    lats = [build_lattice(v) for v in parsed]
    graphs = [graph_of(lat) for lat in lats]
    for i, g in enumerate(graphs, 1):
        if sorted(g.degrees) != [4, 4, 4, 5, 5, 6, 6]:
            problems.append(f"polytope {i} degrees {sorted(g.degrees)}")
    if [len(lat.facets) for lat in lats] != [9, 8, 8, 7]:
        problems.append("facet counts")
    for i, j in _pairs(parsed):
        if graphs_isomorphic(graphs[i], graphs[j]) is None:
            problems.append(f"graphs {i + 1},{j + 1} not isomorphic")
        if are_equivalent(parsed[i], parsed[j]) is not None:
            problems.append(f"lattices {i + 1},{j + 1} equivalent")
    report(1, "table1 polytopes share a graph, not a lattice", not problems,
           time.perf_counter() - t, 10, "; ".join(problems))


# 2

def test_criterion_2_skeleton_pair():
    t = time.perf_counter()
    problems = []
    g4 = [incidence_graph(bipyramid_over_simplex(4)), incidence_graph(pyramid_over_bipyramid(4))]
    if graphs_isomorphic(*g4) is None:
        problems.append("d=4 graphs differ")
    l5 = [build_lattice(bipyramid_over_simplex(5)), build_lattice(pyramid_over_bipyramid(5))]
    if not skeletons_isomorphic(k_skeleton(l5[0], 2), k_skeleton(l5[1], 2)):
        problems.append("d=5 2-skeletons differ")
    if skeletons_isomorphic(k_skeleton(l5[0], 3), k_skeleton(l5[1], 3)):
        problems.append("d=5 3-skeletons agree")
    for d in (4, 5):
        for vfi in (bipyramid_over_simplex(d), pyramid_over_bipyramid(d)):
            g = incidence_graph(vfi)
            if stats(g, d).xi != d:
                problems.append(f"excess at d={d}")
            out = reconstruct(g, d)
            if not (isinstance(out, CoverageVerdict) and not out.covered):
                problems.append(f"d={d} graph was reconstructed")
    report(2, "bipyramid pair: same low skeletons, refused", not problems,
           time.perf_counter() - t, 30, "; ".join(problems))


# 3

ROUNDTRIP = (
    [(f"simplex({d})", lambda d=d: simplex(d)) for d in range(3, 7)]
    + [(f"prism({d})", lambda d=d: simplicial_prism(d)) for d in range(3, 6)]
    + [(f"pyramid^{r}({name})", lambda b=b, r=r: iterated_pyramid(b(), r))
       for name, b in [("pentagon", lambda: polygon(5)), ("prism(3)", lambda: simplicial_prism(3)),
                       ("antiwedge", tetragonal_antiwedge)]
       for r in range(0, 4)]
    + [("cube(3)", lambda: cube(3)), ("pentasm(4)", lambda: pentasm(4))]
)


def test_criterion_3_roundtrip():
    t0 = time.perf_counter()
    problems = []
    slowest = 0.0
    for name, build in ROUNDTRIP:
        vfi = build()
        t = time.perf_counter()
        out = reconstruct(incidence_graph(vfi), vfi.d)
        dt = time.perf_counter() - t
        slowest = max(slowest, dt)
        if not isinstance(out, ReconstructionResult):
            problems.append(f"{name}: {out.reason}")
        elif are_equivalent(out.to_incidence(), vfi) is None:
            problems.append(f"{name}: not equivalent")
        if dt >= 300:
            problems.append(f"{name}: {dt:.0f} s")
    total = time.perf_counter() - t0
    report(3, f"{len(ROUNDTRIP)} round trips in {total:.2f} s, slowest case", not problems,
           slowest, 300, "; ".join(problems))


# 4

def test_criterion_4_claim1():
    t = time.perf_counter()
    vfi = pentasm(4)
    g = incidence_graph(vfi)
    K = nonsimple_core(g, 4).vertices
    res = claim1_recognize(g, 4, K, method="enumerate")
    want = {f for f in vfi.facets if K <= f}
    ok = res.minimum == len(vfi.facets) and set(res.recognized) == want
    report(4, f"min f_R = {res.minimum} = facet count on pentasm(4)", ok,
           time.perf_counter() - t, 600,
           f"minimum {res.minimum}, recognised {sorted(map(sorted, res.recognized))}")


# 5

def test_criterion_5_excess_theorem():
    t = time.perf_counter()
    bad = []
    for rec in all_fixtures():
        d = rec.vfi.d
        xi = stats(incidence_graph(rec.vfi), d).xi
        if not (xi == 0 or xi >= d - 2):
            bad.append(f"{rec.name}: {xi}")
    report(5, "every fixture has excess 0 or at least d-2", not bad,
           time.perf_counter() - t, 10, "; ".join(bad))


# 6

def test_criterion_6_structure_suite():
    t = time.perf_counter()
    reps = [run_suite("pyramid-theorems"), run_suite("basic-excess")]
    fails = [line for r in reps for line in r.lines() if line.startswith("FAIL")]
    names = " ".join(c.name for r in reps for c in r.checks)
    if "8 vertices and 17 edges" not in names:
        fails.append("eight-vertex 4-polytope edge check missing")
    report(6, f"{sum(len(r.checks) for r in reps)} structural checks", not fails,
           time.perf_counter() - t, 60, "; ".join(fails[:3]))


# 7

def test_criterion_7_orientations():
    t = time.perf_counter()
    problems = []
    small = [r for r in all_fixtures() if r.vfi.n <= 9]
    for rec in small:
        g = incidence_graph(rec.vfi)
        if count_acyclic(g) != oracles.chromatic_at_minus_one(g.n, g.edges):
            problems.append(f"{rec.name}: count")
    existence = run_suite("orientation-existence")
    problems += [line for line in existence.lines() if line.startswith("FAIL")]
    composed = 0
    for vfi in (simplicial_prism(3), simplex(4)):
        n, bad = check_composition(vfi)
        composed += n
        if bad is not None:
            problems.append(f"composition {bad}")
    report(7, f"{len(small)} chromatic counts, {len(existence.checks)} existence checks, "
              f"{composed} compositions", not problems, time.perf_counter() - t, 600,
           "; ".join(problems[:3]))


# 8

def test_criterion_8_refusals():
    t = time.perf_counter()
    problems = []
    cases = [(table1(1), "nonsimple count ≥ d"), (bipyramid_over_simplex(4), "excess = d"),
             (pyramid_over_bipyramid(4), "excess = d")]
    for vfi, reason in cases:
        out = reconstruct(incidence_graph(vfi), vfi.d)
        if not isinstance(out, CoverageVerdict) or out.covered or reason not in out.reason:
            problems.append(f"{reason}: got {out!r}")
    report(8, "ambiguous graphs refused with the right reason", not problems,
           time.perf_counter() - t, 10, "; ".join(problems))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
