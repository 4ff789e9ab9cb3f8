import hashlib
import json
import subprocess
import sys
from pathlib import Path

import pytest

from epivv.cli import build_parser, execute, main, render_machine, render_text
from support import project

DEMOS = Path(__file__).resolve().parent.parent / "demos"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def machine(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "machine")
    return code, json.loads(out.out)


def test_golden_check_passes(capsys):
    code, doc = machine(capsys, "check", str(DEMOS / "golden.json"))
    assert code == 0 and doc["exit_code"] == 0
    assert all(s["ok"] for s in doc["sections"].values())
    assert doc["source"]["sha256"] == hashlib.sha256((DEMOS / "golden.json").read_bytes()).hexdigest()
    assert "timing" not in doc


def test_ftl_check_fails_with_feasibility_warning(capsys):
    code, doc = machine(capsys, "check", str(DEMOS / "ftl.json"))
    assert code == 1
    needs = doc["sections"]["validity.needs->goals"]
    assert not needs["ok"]
    assert "infeasible" in {w["code"] for w in needs["warnings"]}


def test_malformed_document_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"needs": ')
    code, doc = machine(capsys, "check", str(bad))
    assert code == 2 and doc["error"]["kind"] == "ProjectError"


def test_schema_error_names_artifact_and_location(tmp_path, capsys):
    d = project()
    d["requirements"][0]["formula"] = "r1 &"
    p = tmp_path / "p.json"
    p.write_text(json.dumps(d))
    code, doc = machine(capsys, "check", str(p))
    assert code == 2
    assert doc["error"]["artifact"] == "r1"
    assert doc["error"]["location"] == "requirements[0].formula"


def test_missing_file_exit_2(tmp_path, capsys):
    code, _ = run(capsys, "check", str(tmp_path / "nope.json"))
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["check"],
    ["bogus", "x.json"],
    ["check", "x.json", "--tau", "1.5"],
    ["check", "x.json", "--max-worlds", "0"],
    ["check", "x.json", "--budget", "-3"],
    ["check", "x.json", "--format", "xml"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_budget_exceeded_exit_3(capsys):
    code, doc = machine(capsys, "check", str(DEMOS / "golden.json"), "--budget", "10")
    assert code == 3 and doc["error"]["kind"] == "BudgetExceeded"


def test_minimize_reports(capsys):
    code, doc = machine(capsys, "minimize", str(DEMOS / "redundant_need.json"), "--set", "needs")
    assert code == 0
    sec = doc["sections"]["minimize.needs"]
    assert sec["minimal"] == ["n1"] and [r["id"] for r in sec["removed"]] == ["n2"]
    code, out = run(capsys, "minimize", str(DEMOS / "golden.json"))
    assert code == 0 and "input minimal" in out.out


def test_minimize_invalid_exit_1(capsys):
    code, doc = machine(capsys, "minimize", str(DEMOS / "inconsistent_needs.json"), "--set", "needs")
    assert code == 1
    sec = doc["sections"]["minimize.needs"]
    assert not sec["input_valid"] and not sec["verdict"]["valid"]


def test_classify(capsys):
    code, doc = machine(capsys, "classify", str(DEMOS / "golden.json"))
    sec = doc["sections"]["classify"]
    assert code == 0 and sec["quadrant"] == "sufficient_and_necessary"
    assert (sec["verification_serves_validation"], sec["validation_serves_verification"]) == (True, True)
    code, doc = machine(capsys, "classify", str(DEMOS / "necessity_only.json"))
    sec = doc["sections"]["classify"]
    assert code == 0 and sec["quadrant"] == "necessary_only"
    assert (sec["verification_serves_validation"], sec["validation_serves_verification"]) == (False, True)
    code, doc = machine(capsys, "classify", str(DEMOS / "inconsistent_needs.json"))
    assert code == 1 and doc["sections"]["classify"]["refused"]
    assert doc["warnings"][0]["code"] == "vacuous-basis"


def test_frames(capsys):
    code, doc = machine(capsys, "frames", str(DEMOS / "models.json"))
    assert code == 1
    assert doc["sections"]["frames.two_worlds"]["axioms"]["holds"]
    bad = doc["sections"]["frames.no_belief_successor"]["frames"]
    assert bad["violations"] == [{"relation": "rel_B", "property": "serial", "witness": ["w2"]}]


def test_frames_rejects_non_model_document(tmp_path, capsys):
    p = tmp_path / "m.json"
    p.write_text('{"worlds": []}')
    assert run(capsys, "frames", str(p))[0] == 2


def test_sat(tmp_path, capsys):
    code, doc = machine(capsys, "sat", str(DEMOS / "formulas.txt"))
    assert code == 0 and doc["sections"]["sat"]["status"] == "satisfiable"
    p = tmp_path / "f.txt"
    p.write_text("B(p)\nB(!p)\n")
    code, doc = machine(capsys, "sat", str(p))
    assert code == 1 and doc["sections"]["sat"]["status"] == "unsatisfiable-proved"
    code, doc = machine(capsys, "sat", str(p), "--max-worlds", "1")
    assert code == 1 and doc["sections"]["sat"]["status"] == "unsatisfiable-within-bound"
    p.write_text("p\nq &\n")
    code, doc = machine(capsys, "sat", str(p))
    assert code == 2 and doc["error"]["location"] == "line 2"


def test_out_file_and_timing(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _ = run(capsys, "check", str(DEMOS / "golden.json"), "--format", "machine",
                  "--out", str(out), "--timing")
    doc = json.loads(out.read_text())
    assert code == 0 and doc["timing"]["seconds"] >= 0


def test_tau_override(capsys):
    code, doc = machine(capsys, "check", str(DEMOS / "golden.json"), "--tau", "0.5")
    assert code == 0


@pytest.mark.parametrize("name,cmd", [("golden.json", "check"), ("ftl.json", "check"),
                                      ("golden.json", "minimize"), ("golden.json", "classify")])
def test_machine_output_byte_stable(name, cmd, capsys):
    _, a = run(capsys, cmd, str(DEMOS / name), "--format", "machine")
    _, b = run(capsys, cmd, str(DEMOS / name), "--format", "machine")
    assert a.out == b.out


def test_text_and_machine_share_one_report():
    args = build_parser().parse_args(["check", str(DEMOS / "ftl.json")])
    report = execute(args)
    doc = json.loads(render_machine(report))
    text = render_text(report)
    for name in doc["sections"]:
        assert name in text
    for w in doc["warnings"]:
        assert w["code"] in text
    assert text.rstrip().endswith(f"exit {report.exit_code}")


def test_exit_code_depends_only_on_sections():
    args = build_parser().parse_args(["check", str(DEMOS / "golden.json")])
    report = execute(args)
    assert report.exit_code == 0
    next(iter(report.sections.values()))["ok"] = False
    assert report.exit_code == 1


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "epivv", "check", str(DEMOS / "golden.json")],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "exit 0" in r.stdout
