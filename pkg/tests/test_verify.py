import pytest

from polyrec.catalogue import simplex, simplicial_prism
from polyrec.errors import UnknownSuite
from polyrec.verify import SUITES, Check, SuiteReport, check_composition, run_suite, thread_count


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes(name):
    rep = run_suite(name)
    assert rep.checks
    assert rep.passed, "\n".join(line for line in rep.lines() if line.startswith("FAIL"))


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("everything")


def test_report_lines():
    rep = SuiteReport("x")
    rep.add("good", True, "unused")
    rep.add("bad", False, "witness")
    assert rep.lines() == ["PASS  good", "FAIL  bad  [witness]"]
    assert not rep.passed
    assert rep.checks[0] == Check("good", True, "")


def test_composition_counts():
    n, bad = check_composition(simplex(3))
    assert bad is None and n > 0
    assert check_composition(simplicial_prism(3))[1] is None


@pytest.mark.parametrize("raw, want", [(None, 1), ("3", 3), ("junk", 1)])
def test_thread_count(monkeypatch, raw, want):
    if raw is None:
        monkeypatch.delenv("POLYREC_THREADS", raising=False)
    else:
        monkeypatch.setenv("POLYREC_THREADS", raw)
    assert thread_count() == want


def test_thread_count_auto(monkeypatch):
    monkeypatch.setenv("POLYREC_THREADS", "0")
    assert thread_count() >= 1


def test_parallel_output_matches_serial(monkeypatch):
    monkeypatch.setenv("POLYREC_THREADS", "1")
    serial = run_suite("roundtrip").lines()
    monkeypatch.setenv("POLYREC_THREADS", "2")
    assert run_suite("roundtrip").lines() == serial
