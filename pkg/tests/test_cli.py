import json
import subprocess
import sys

import pytest

from shadowlab.cli import emit, main
from shadowlab.scenarios import REGISTRY, Report, run_scenario
from shadowlab.systems import system_to_json, tent_map


REQUIRED_SCENARIOS = {
    "cantor-2.8", "tent-ball-2.9", "slimit-3", "iterate-3.8", "hshadow-4.3",
    "pl-region-5.2", "logistic-5.4", "kneading-5.6", "odometer-6.1", "sft-6.4",
}


def test_registry_contains_required_names():
    assert REQUIRED_SCENARIOS <= set(REGISTRY)


def test_unknown_scenario_raises():
    with pytest.raises(KeyError):
        run_scenario("no-such-scenario")


def make_report():
    report = Report("demo", {"seed": 1})
    report.add("alpha", "1/2", "1/2", "constant")
    report.add("beta", 3, 3, "oracle")
    return report


def test_emit_json_bit_stable(tmp_path):
    r1, r2 = make_report(), make_report()
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    emit(r1, "json", p1)
    emit(r2, "json", p2)
    assert p1.read_bytes() == p2.read_bytes()
    data = json.loads(p1.read_text())
    assert data["status"] == "pass"
    assert str(p1) in r1.artifacts


def test_emit_csv_matches_json_checks(tmp_path):
    report = make_report()
    pj, pc = tmp_path / "r.json", tmp_path / "r.csv"
    emit(report, "json", pj)
    emit(report, "csv", pc)
    rows = pc.read_text().strip().splitlines()[1:]
    labels_csv = sorted(row.split(",")[0] for row in rows)
    labels_json = sorted(c["label"] for c in json.loads(pj.read_text())["checks"])
    assert labels_csv == labels_json


def test_emit_empty_report(tmp_path):
    report = Report("empty", {})
    path = tmp_path / "e.csv"
    emit(report, "csv", path)
    assert path.read_text().strip() == "label,status,expected,actual,provenance"


def test_report_status_semantics():
    report = make_report()
    assert report.status == "pass"
    report.add("gamma", 1, 2, "oracle")
    assert report.status == "fail"
    report2 = Report("u", {})
    report2.add_undetermined("delta", "no verdict", "oracle")
    assert report2.status == "undetermined"


def test_cli_scenario_list_and_run(tmp_path, capsys):
    assert main(["scenario", "list"]) == 0
    out = capsys.readouterr().out
    for name in REQUIRED_SCENARIOS:
        assert name in out

    target = tmp_path / "slimit.json"
    code = main(["scenario", "run", "slimit-3", "--out", str(target)])
    assert code == 0
    assert json.loads(target.read_text())["status"] == "pass"


def test_cli_scenario_reruns_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["scenario", "run", "slimit-3", "--out", str(a)]) == 0
    assert main(["scenario", "run", "slimit-3", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_cli_shadow_solve_round_trip(tmp_path, capsys):
    system = tent_map(2)
    sys_path = tmp_path / "system.json"
    sys_path.write_text(json.dumps(system_to_json(system)))
    orbit_path = tmp_path / "orbit.csv"
    orbit_path.write_text("1/4\n1/2\n1/1\n")
    code = main(["shadow", "oracle", "--system", str(sys_path),
                 "--orbit", str(orbit_path), "--epsilon", "1/8"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["feasible"] is True
    assert data["witness"] == "7/32"


def test_cli_expansivity_check(tmp_path, capsys):
    sys_path = tmp_path / "system.json"
    sys_path.write_text(json.dumps(system_to_json(tent_map(2))))
    code = main(["expansivity", "check", "--property", "ball", "--system", str(sys_path),
                 "--mu", "2", "--nu", "1/4"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["holds"] == "certified"
    code = main(["expansivity", "check", "--property", "expanding", "--system", str(sys_path),
                 "--delta", "1/10", "--mu", "2"])
    assert code == 1
    data = json.loads(capsys.readouterr().out)
    assert data["counterexample"]["inequality"]


def test_cli_kneading_search(capsys):
    code = main(["kneading", "search", "--horizon", "15", "--steps", "40"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["achieved"] == "RLLRRLRRRLRRRRL"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "shadowlab.cli", "scenario", "list"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "kneading-5.6" in proc.stdout
