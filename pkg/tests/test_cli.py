import io
import json

import pytest

from detmorph import cli
from detmorph.cli import main
from detmorph.suites import SuiteResult, SuiteRun

TUBE = '{"kind": "tube", "field": 2}\n'
A2 = '{"kind": "quiver", "field": 2, "quiver": "A2"}\n'


@pytest.fixture
def tube_file(tmp_path):
    path = tmp_path / "tube.json"
    path.write_text(TUBE)
    return str(path)


@pytest.fixture
def a2_file(tmp_path):
    path = tmp_path / "a2.json"
    path.write_text(A2)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_hom_dimension_between_blocks(capsys, tube_file):
    code, rep = report(capsys, "hom", tube_file, "J2", "J1")
    assert code == 0
    assert rep["status"] == "pass"
    assert rep["results"]["dim"] == 1
    assert rep["instance"]["kind"] == "tube"
    assert rep["artifact"]["name"] == "detmorph"
    assert "wall_clock_seconds" not in rep


def test_hom_on_a2(capsys, a2_file):
    code, rep = report(capsys, "hom", a2_file, "P1", "S1")
    assert code == 0 and rep["results"]["dim"] == 1


def test_determined_projection_is_bounded_with_warning(capsys, tube_file):
    code, rep = report(capsys, "determined", tube_file, "proj:J2:J1", "J1")
    assert code == 0
    assert rep["results"]["verdict"] == "true-up-to-bound"
    assert any("pool up to length" in w for w in rep["warnings"])


def test_false_verdict_is_not_an_error(capsys, tube_file):
    code, rep = report(capsys, "determined", tube_file, "zero:0:J1", "J1")
    assert code == 0
    assert rep["results"]["verdict"] == "false"
    assert rep["results"]["witness"]["object"] == "J2"


def test_left_determined_inclusion(capsys, tube_file):
    code, rep = report(capsys, "determined", tube_file, "incl:J1:J2", "J1", "--left")
    assert code == 0
    assert rep["results"]["side"] == "left"
    assert rep["results"]["verdict"] != "false"


def test_quiver_verdict_is_exact(capsys, a2_file):
    code, rep = report(capsys, "--bound", "2", "determined", a2_file, "hom:P1:S1:0", "S1")
    assert code == 0
    assert rep["results"]["verdict"] == "true"
    assert rep["bounds"]["L"] == 2


def test_table_rows(capsys, tube_file):
    code, rep = report(capsys, "table", tube_file, "J2", "J2")
    assert code == 0
    assert [r["dim_H"] for r in rep["results"]["rows"]] == [0, 1, 2]


def test_table_as_tsv(capsys, tube_file):
    code, out, _ = run(capsys, "--tsv", "table", tube_file, "J1", "J1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "dim_H\tcarrier\tsource\tverdict\tchecks"
    assert len(lines) == 3


def test_ext_and_almost_split(capsys, tube_file):
    code, rep = report(capsys, "ext", tube_file, "J1", "J1")
    assert code == 0 and rep["results"]["dim"] == 1
    assert rep["results"]["classes"][0]["middle"] == ["J2"]
    code, rep = report(capsys, "almost-split", tube_file, "J2")
    assert code == 0
    assert rep["results"]["middle"]["summands"] == ["J1", "J3"]


def test_tau_on_a2(capsys, a2_file):
    code, rep = report(capsys, "tau", a2_file, "S1")
    assert code == 0
    assert rep["results"]["tau"]["name"] == "S2"
    assert rep["results"]["tau_inverse"]["dim"] == 0


def test_decompose_and_kernel(capsys, tube_file):
    code, rep = report(capsys, "decompose", tube_file, "J2+J1+J1")
    assert [(p["summand"], p["multiplicity"]) for p in rep["results"]["parts"]] == \
        [("J2", 1), ("J1", 2)]
    code, rep = report(capsys, "kernel", tube_file, "proj:J3:J1")
    assert rep["results"]["kernel"]["summands"] == ["J2"]
    assert rep["results"]["is_epi"] and not rep["results"]["is_mono"]


def test_represent_and_minimize(capsys, tube_file):
    code, rep = report(capsys, "represent", tube_file, "J1", "J1")
    assert code == 0
    assert rep["results"]["dim_H"] == 0
    assert rep["results"]["source"] == ["J2"]
    code, rep = report(capsys, "minimize", tube_file, "id:J1")
    assert code == 0 and rep["results"]["dropped"] == []


def test_serre_pairing(capsys, tube_file, a2_file):
    code, rep = report(capsys, "serre-pairing", tube_file, "J2", "J3")
    assert code == 0
    assert rep["results"]["nondegenerate"] and rep["results"]["rank"] == 2
    code, rep = report(capsys, "serre-pairing", a2_file, "S1", "S2")
    assert code == 2
    assert rep["status"] == "not-applicable"


def test_input_errors_exit_2(capsys, tube_file, tmp_path):
    code, rep = report(capsys, "hom", tube_file, "J2", "Q")
    assert code == 2
    assert rep["error"]["kind"] == "unknown-name"
    code, rep = report(capsys, "hom", str(tmp_path / "missing.json"), "J1", "J1")
    assert code == 2
    code, out, err = run(capsys, "hom", tube_file)
    assert code == 2 and "Missing" in err
    code, out, err = run(capsys)
    assert code == 2 and out == ""
    code, out, err = run(capsys, "--field", "x", "hom")
    assert code == 2


def test_limit_exceeded_exit_3(capsys, tube_file):
    code, rep = report(capsys, "--limit", "1", "table", tube_file, "J2", "J2")
    assert code == 3
    assert rep["status"] == "limit"
    assert rep["bounds"]["limits"]["enumeration_limit"] == 1


def test_counterexample_exit_1(capsys, tube_file, monkeypatch):
    def failing(inst, name, bound):
        return SuiteRun(name, [SuiteResult(name, "fail", reason="broken")])

    monkeypatch.setattr(cli, "run_suite", failing)
    code, rep = report(capsys, "verify", tube_file, "serre-dim")
    assert code == 1
    assert rep["status"] == "counterexample"
    assert rep["results"]["passed"] is False


def test_verify_right_equivalence_completes_on_the_tube(capsys, tube_file):
    code, rep = report(capsys, "verify", tube_file, "right-equivalence")
    assert code == 0, rep
    assert rep["status"] == "pass"
    assert rep["results"]["results"][0]["details"]["pairs"] == 200


def test_verify_on_empty_instance_is_vacuous(capsys, tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("{}")
    code, rep = report(capsys, "verify", str(path), "all")
    assert code == 0
    assert rep["results"]["vacuous"] is True
    assert {r["status"] for r in rep["results"]["results"]} == {"skipped"}
    assert any("vacuous" in w for w in rep["warnings"])


def test_instance_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(TUBE))
    code, rep = report(capsys, "hom", "-", "J3", "J3")
    assert code == 0 and rep["results"]["dim"] == 3


def test_reports_are_byte_identical(capsys, tube_file):
    _, first, _ = run(capsys, "table", tube_file, "J1+J2", "J2")
    _, second, _ = run(capsys, "table", tube_file, "J1+J2", "J2")
    assert first == second
    assert first.endswith("}\n")


def test_timing_and_quiet(capsys, tube_file):
    code, out, err = run(capsys, "--timing", "--quiet", "hom", tube_file, "J1", "J1")
    assert code == 0
    assert "wall_clock_seconds" in json.loads(out)
    assert err == ""


def test_help_lists_commands(capsys):
    code, out, err = run(capsys, "help")
    assert code == 0
    assert "almost-split" in err and "--field" in err
