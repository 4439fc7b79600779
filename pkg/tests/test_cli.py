"""The verification harness: task catalog, reports and exit codes."""

import json

import pytest

from vlplus import cli, reference as ref


def test_unknown_task_and_bad_params():
    with pytest.raises(cli.TaskError):
        cli.run("no-such-task")
    with pytest.raises(cli.TaskError):
        cli.run("roots-g", params=[1, 2])
    with pytest.raises(cli.TaskError):
        cli.run("lattice-ortho", {"gram": [[1, 0], [0, 2]], "lambda": [1, 0]})
    with pytest.raises(cli.TaskError):
        cli._parse_grid("4,6")


def test_grid_parsing():
    assert cli._parse_grid("4,6;0,1") == ((4, 6), (0, 1))
    assert cli._parse_grid(None) == cli.DEFAULT_GRID


def test_empty_report():
    assert json.loads(cli.emit_report([])) == {"status": "pass", "tasks": []}


@pytest.mark.parametrize("task", ["roots-g", "lattice-ortho", "commutators", "epsilon-table", "zhu-lambda",
                                  "vacuum-chain", "verify-null"])
def test_quick_tasks_pass(task):
    rep = cli.run(task)
    assert rep.passed and rep.first_difference is None and rep.anchor


def test_reports_are_deterministic():
    a = json.loads(cli.emit_report([cli.run("roots-g"), cli.run("lattice-ortho")]))
    b = json.loads(cli.emit_report([cli.run("roots-g"), cli.run("lattice-ortho")]))
    assert cli.strip_timing(a) == cli.strip_timing(b)


def test_failure_names_first_differing_coefficient(monkeypatch):
    (null, shift), terms = ref.TERMINAL["Q4"]
    coef, left, c, right = terms[0]
    bumped = ((f"{coef} + t", left, c, right),) + tuple(terms[1:])
    monkeypatch.setitem(ref.TERMINAL, "Q4", ((null, shift), bumped))
    rep = cli.run("derive-terminal", {"names": ["Q4"]})
    assert not rep.passed
    assert rep.first_difference["item"] == "Q4" and rep.first_difference["key"]


def test_main_writes_report_and_exit_code(tmp_path, capsys):
    params = tmp_path / "p.json"
    params.write_text(json.dumps({"gram": [[4, 0], [0, 6]], "lambda": [1, 0]}))
    out = tmp_path / "r.json"
    assert cli.main(["--task", "lattice-ortho", "--params", str(params), "--report", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["status"] == "pass" and data["tasks"][0]["computed"]
    assert cli.main(["--task", "bogus"]) == 2


def test_generators_list(capsys):
    assert cli.main(["generators", "list"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert any(line.startswith("sv8H\t") for line in lines)


def test_full_suite_has_one_entry_per_task():
    rep = cli.run("full-suite")
    subs = rep.details["reports"]
    assert [r["task"] for r in subs] == [t for t in cli.CATALOG if t != "full-suite"]
    assert rep.passed, [r["task"] for r in subs if r["status"] != "pass"]
