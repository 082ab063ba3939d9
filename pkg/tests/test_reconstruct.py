import pytest

from polyrec.catalogue import (
    all_fixtures,
    apex_prism,
    bipyramid_over_simplex,
    cube,
    iterated_pyramid,
    pentasm,
    pentasm_prism,
    polygon,
    pyramid_over_bipyramid,
    simplex,
    simplicial_prism,
    table1,
    tetragonal_antiwedge,
)
from polyrec.core import Graph, are_equivalent, incidence_graph, stats
from polyrec.errors import (
    BudgetExceeded,
    HypothesisViolated,
    InternalValidationFailed,
    NotBalinski,
    NotSimple,
    ValidationFailed,
)
from polyrec.reconstruct import (
    CoverageVerdict,
    ReconstructionResult,
    excess_reconstruct,
    excess_reconstruct_detailed,
    find_graph_ambiguities,
    planar_reconstruct,
    reconstruct,
    simple_reconstruct,
)


def canon(facets):
    return sorted(sorted(f) for f in facets)


def roundtrip(vfi):
    out = reconstruct(incidence_graph(vfi), vfi.d)
    assert isinstance(out, ReconstructionResult)
    assert out.certificate.ok
    assert are_equivalent(out.to_incidence(), vfi) is not None
    return out


def test_prism4():
    out = roundtrip(simplicial_prism(4))
    assert out.method == "simple" and len(out.facets) == 6


def test_pentasm4_exact_labels():
    out = roundtrip(pentasm(4))
    assert out.method == "excess"
    assert [list(f) for f in out.facets] == canon(pentasm(4).facets)


def test_bipyramid_refused():
    out = reconstruct(incidence_graph(bipyramid_over_simplex(4)), 4)
    assert isinstance(out, CoverageVerdict) and not out.covered
    assert out.reason.startswith("excess = d")


def test_verdict_needs_reason():
    with pytest.raises(ValueError):
        CoverageVerdict(False, "")


def test_table1_refused():
    out = reconstruct(incidence_graph(table1(1)), 4)
    assert isinstance(out, CoverageVerdict)
    assert "nonsimple count ≥ d" in out.reason


def test_not_balinski():
    with pytest.raises(NotBalinski):
        reconstruct(Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]), 3)


# simple

def test_simple_simplex3():
    got = simple_reconstruct(incidence_graph(simplex(3)), 3)
    assert len(got) == 4 and all(len(f) == 3 for f in got)


def test_simple_prism3():
    got = simple_reconstruct(incidence_graph(simplicial_prism(3)), 3)
    assert sorted(len(f) for f in got) == [3, 3, 4, 4, 4]


def test_simple_cube():
    got = simple_reconstruct(incidence_graph(cube(3)), 3)
    assert set(got) == set(cube(3).facets)


def test_simple_rejects_nonsimple():
    with pytest.raises(NotSimple):
        simple_reconstruct(incidence_graph(pentasm(4)), 4)


def test_simple_min_kalai_recorded():
    out = roundtrip(cube(3))
    assert out.details["min_kalai"] == 27  # 8 + 12 + 6 + 1


# excess

def test_excess_classes_pentasm4():
    det = excess_reconstruct_detailed(incidence_graph(pentasm(4)), 4)
    assert det.core.kind == "simplex-face"
    assert all(len(fs) == 4 - 3 for fs in det.class_a.values())
    assert set(det.class_b) == {f for f in pentasm(4).facets if {3, 4} <= f}
    assert det.min_f_R == det.min_total == len(pentasm(4).facets)


def test_excess_classes_pentasm5():
    det = excess_reconstruct_detailed(incidence_graph(pentasm(5)), 5)
    assert len(det.core.vertices) == 3
    assert all(len(fs) == 5 - 3 for fs in det.class_a.values())
    assert det.min_f_R == len(pentasm(5).facets)


def test_excess_quadrilateral_core():
    det = excess_reconstruct_detailed(incidence_graph(pentasm_prism()), 5)
    assert det.core.kind == "quadrilateral"
    assert all(len(fs) == 2 for fs in det.class_a.values())
    got = {F for fs in det.class_a.values() for F in fs} | set(det.class_b) | set(det.class_c)
    assert got == set(pentasm_prism().facets)


def test_excess_adjacent_pair():
    out = roundtrip(apex_prism())
    assert out.method == "excess"


def test_excess_hypotheses():
    with pytest.raises(HypothesisViolated):
        excess_reconstruct(incidence_graph(tetragonal_antiwedge()), 3)
    with pytest.raises(HypothesisViolated):
        excess_reconstruct(incidence_graph(simplex(4)), 4)


def test_uncovered_core_surfaces_as_validation_failure():
    # 4-regular-ish graph with two nonadjacent degree-5 vertices: no recognised core
    edges = {(i, (i + k) % 10) for i in range(10) for k in (1, 2)}
    edges = {tuple(sorted(e)) for e in edges} - {(2, 3)} | {(0, 3), (2, 5)}
    with pytest.raises(InternalValidationFailed):
        reconstruct(Graph(10, sorted(edges)), 4)


# pyramids and planar

@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("base", [polygon(5), simplicial_prism(3), tetragonal_antiwedge()],
                         ids=["pentagon", "prism3", "antiwedge"])
def test_peel_depth_equals_fold(base, r):
    src = iterated_pyramid(base, r)
    out = roundtrip(src)
    assert out.method == "pyramid-peel" and out.details["fold"] == r


def test_peel_lifts_labels():
    out = roundtrip(iterated_pyramid(polygon(5), 1))
    assert out.details["apex"] == 5
    assert [list(f) for f in out.facets] == canon(iterated_pyramid(polygon(5), 1).facets)


def test_planar_faces():
    assert set(planar_reconstruct(incidence_graph(tetragonal_antiwedge()), 3)) \
        == set(tetragonal_antiwedge().facets)
    assert set(planar_reconstruct(incidence_graph(polygon(6)), 2)) == set(polygon(6).facets)


def test_planar_rejects_k33():
    k33 = Graph(6, [(i, j) for i in range(3) for j in range(3, 6)])
    with pytest.raises(ValidationFailed):
        planar_reconstruct(k33, 3)


def test_budget():
    with pytest.raises(BudgetExceeded):
        reconstruct(incidence_graph(cube(4)), 4, max_orientations=1000)


def test_result_deterministic():
    a = reconstruct(incidence_graph(pentasm(4)), 4)
    b = reconstruct(incidence_graph(pentasm(4)), 4)
    assert a.facets == b.facets and a.method == b.method


# ambiguities

def test_ambiguities_table1():
    assert find_graph_ambiguities([table1(i) for i in range(1, 5)]) == [[[0], [1], [2], [3]]]


def test_ambiguities_bipyramid_pair():
    pair = [bipyramid_over_simplex(4), pyramid_over_bipyramid(4)]
    assert find_graph_ambiguities(pair) == [[[0], [1]]]


def test_ambiguities_trivial():
    assert find_graph_ambiguities([simplex(4), simplex(4)]) == [[[0, 1]]]


def test_ambiguities_separate_graphs():
    assert find_graph_ambiguities([simplex(3), cube(3), simplex(3)]) == [[[0, 2]], [[1]]]


# every covered fixture

COVERED = [r for r in all_fixtures()
           if stats(incidence_graph(r.vfi), r.vfi.d).xi < r.vfi.d and r.vfi.n <= 12]


@pytest.mark.parametrize("rec", COVERED, ids=[r.name for r in COVERED])
def test_roundtrip_catalogue(rec):
    roundtrip(rec.vfi)
