from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from spectra_lab.cli import main
from spectra_lab.cli.reports import schema

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_CASES = {
    "classify_Z12": ["classify", "Z/12"],
    "decompose_Z12": ["decompose", "Z/12"],
    "kernel_x_F2xy": ["kernel", "--at=x", "F2[x,y]/(x^3,x^2*y)"],
}


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run_cli(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
@pytest.mark.parametrize("fmt", ["txt", "json"])
def test_golden_files(capsys, name, fmt):
    argv = GOLDEN_CASES[name] + (["--json"] if fmt == "json" else [])
    code, out, _ = run_cli(capsys, *argv)
    assert code == 0
    assert out == (GOLDEN / f"{name}.{fmt}").read_text(encoding="utf-8")


REPORT_COMMANDS = [
    ["classify", "Z/12"],
    ["classify", "F2[x,y]/(x^2, x*y)"],
    ["classify", "poset{a<b, a<c}"],
    ["decompose", "Z/12"],
    ["decompose", "--kind=fields", "Z/4"],
    ["decompose", "--kind=domains", "Z/2 x Z/3"],
    ["kernel", "--at=x", "F2[x,y]/(x^3,x^2*y)"],
    ["kernel", "--at=(2)", "Z/12"],
    ["star", "--ideal=4", "Z/12"],
    ["star", "Z/12"],
    ["poset", "Z/6"],
    ["poset", "poset{p<m1, p<m2}"],
    ["verify", "poset-duality", "--size=4"],
    ["search", "lessened && !reduced", "--corpus=zmod:2..20"],
    ["search", "!lessened", "--corpus=zmod:2..30"],
    ["classify", "Z/"],
]


@pytest.mark.parametrize("argv", REPORT_COMMANDS, ids=" ".join)
def test_json_reports_validate_and_cover_every_claim(capsys, argv):
    from spectra_lab.cli.reports import Report, uncovered_claims

    _, report = run_json(capsys, *argv)
    jsonschema.validate(report, schema())
    rebuilt = Report(report["subject"], report["kind"], report["body"], report["witnesses"])
    assert uncovered_claims(rebuilt) == []


def test_json_keys_are_sorted(capsys):
    _, out, _ = run_cli(capsys, "classify", "Z/6", "--json")
    data = json.loads(out)
    assert out == json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


@pytest.mark.parametrize("argv,code", [
    (["classify", "Z/12"], 0),
    (["decompose", "--kind=fields", "Z/4"], 2),
    (["decompose", "--kind=domains", "Z/8"], 2),
    (["kernel", "--at=x", "--element=x", "F2[x,y]/(x*y^9)"], 3),
    (["kernel", "--at=x", "--degree-bound=9", "F2[x,y]/(x*y^9)"], 0),
    (["classify", "Z/4 x"], 1),
    (["kernel", "--at=5", "Z/12"], 1),
    (["verify", "no-such-suite"], 1),
    (["search", "bogus_flag"], 1),
    (["search", "lessened &&"], 1),
    (["classify", "Z/5000"], 1),
    (["classify", "Z/100", "--size-cap=50"], 1),
])
def test_exit_codes(capsys, argv, code):
    assert run_cli(capsys, *argv)[0] == code


def test_refusal_prints_witness(capsys):
    code, out, _ = run_cli(capsys, "decompose", "--kind=fields", "Z/4")
    assert code == 2
    assert "nilpotent" in out and "(2)" in out


def test_unknown_prints_bound(capsys):
    code, out, _ = run_cli(capsys, "kernel", "--at=x", "F2[x,y]/(x*y^9)")
    assert code == 3
    assert "degree bound 8" in out and "degree 9" in out


def test_syntax_error_points_at_position(capsys):
    code, _, err = run_cli(capsys, "classify", "Z/4 x Q/3")
    assert code == 1
    assert "position 6" in err


def test_classify_z12_claims(capsys):
    _, report = run_json(capsys, "classify", "Z/12")
    flags = report["body"]["flags"]
    assert flags["gelfand"] and flags["mp"] and flags["clean"] and flags["lessened"]
    assert not flags["reduced"]


def test_kernel_report_membership(capsys):
    _, report = run_json(capsys, "kernel", "--at=x", "F2[x,y]/(x^3,x^2*y)")
    verdicts = {m["element"]: m["verdict"] for m in report["body"]["membership"]}
    assert verdicts == {"x": "out", "x^2": "in"}


def test_search_examples(capsys):
    _, found = run_json(capsys, "search", "lessened && !reduced", "--corpus=zmod:2..20")
    assert found["body"]["match"] == "Z/4"
    _, vee = run_json(capsys, "search", "!gelfand_shape && mp_shape", "--posets=3")
    assert vee["body"]["match"] == "poset{p0<p1, p0<p2}"
    _, none = run_json(capsys, "search", "!lessened", "--corpus=zmod:2..100")
    assert none["body"]["exhausted"] and none["body"]["examined"] == 99


def test_verify_examples(capsys):
    code, report = run_json(capsys, "verify", "mp-equivalences", "--corpus=zmod:2..60")
    assert code == 0 and report["body"]["passed"] == 59
    code, report = run_json(capsys, "verify", "poset-duality", "--size=5")
    assert code == 0 and report["body"]["passed"] == 87
    code, report = run_json(capsys, "verify", "monomial-examples")
    assert code == 0 and report["body"]["failed"] == 0


def test_env_size_cap(monkeypatch, capsys):
    monkeypatch.setenv("SPECTRA_LAB_SIZE_CAP", "10")
    assert run_cli(capsys, "classify", "Z/12")[0] == 1
    assert run_cli(capsys, "classify", "Z/12", "--size-cap=20")[0] == 0


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "spectra_lab.cli.app", "classify", "Z/6"],
                          capture_output=True, text=True, encoding="utf-8")
    assert proc.returncode == 0
    assert "mp" in proc.stdout and "✓" in proc.stdout
