import pytest

from detmorph.errors import UnknownName
from detmorph.instance import load_instance
from detmorph.suites import run_suite, suite_names


@pytest.fixture
def tube():
    return load_instance('{"kind": "tube", "field": 2}')


@pytest.fixture
def a2():
    return load_instance('{"kind": "quiver", "field": 2, "quiver": "A2"}')


def test_suite_names_end_with_all():
    names = suite_names()
    assert names[-1] == "all"
    assert {"serre-dim", "auslander-tables", "infrastructure"} <= set(names)


def test_unknown_suite(tube):
    with pytest.raises(UnknownName):
        run_suite(tube, "nothing")


@pytest.mark.parametrize("name", ["serre-dim", "almost-split", "dualizing-contrast",
                                  "proj-trivial", "infrastructure"])
def test_tube_suites_pass_on_small_bounds(tube, name):
    run = run_suite(tube, name, 2)
    assert run.passed, run.to_json()
    assert run.checks > 0


@pytest.mark.parametrize("name", ["almost-split", "proj-trivial", "auslander-tables",
                                  "dualizing-contrast"])
def test_quiver_suites_pass_on_a2(a2, name):
    run = run_suite(a2, name, 2)
    assert run.passed, run.to_json()
    assert run.checks > 0


def test_tube_only_suite_is_skipped_on_a_quiver(a2):
    run = run_suite(a2, "serre-dim")
    assert run.passed
    assert run.results[0].status == "skipped"
    assert run.to_json()["vacuous"] is True


def test_dualizing_contrast_records_exact_verdicts(a2):
    details = run_suite(a2, "dualizing-contrast", 2).results[0].details
    assert details["exact_verdicts"] > 0
    assert "0" in details["minimal_determiners"]


def test_almost_split_middles_on_the_tube(tube):
    details = run_suite(tube, "almost-split", 3).results[0].details
    assert [row["middle"] for row in details["sequences"]] == [[2], [3, 1], [4, 2]]


@pytest.mark.parametrize("kind,verdict", [("tube", "true-up-to-bound"), ("a2", "true")])
def test_right_equivalence_runs_on_both_instances(request, kind, verdict):
    run = run_suite(request.getfixturevalue(kind), "right-equivalence")
    assert run.passed, run.to_json()
    details = run.results[0].details
    assert details["pairs"] == 200
    assert set(details["verdicts"]) == {verdict}


def test_epi_dichotomy_on_the_tube_at_its_default_bound(tube):
    run = run_suite(tube, "epi-dichotomy")
    assert run.passed, run.to_json()
    assert run.results[0].details["bound"] == 3


def test_auslander_tables_on_the_tube_match_the_oracle(tube):
    run = run_suite(tube, "auslander-tables")
    assert run.passed, run.to_json()
    tables = run.results[0].details["tables"]
    assert [t["rows"] for t in tables] == [2, 3, 4]
    assert all(t["oracle"] == t["rows"] for t in tables)


@pytest.mark.parametrize("kind", ["tube", "a2"])
def test_infrastructure_reruns_give_the_same_report(request, kind):
    inst = request.getfixturevalue(kind)
    first = run_suite(inst, "infrastructure", 2).results[0].details
    second = run_suite(inst, "infrastructure", 2).results[0].details
    assert len(first["report_sha256"]) == 64
    assert first == second
