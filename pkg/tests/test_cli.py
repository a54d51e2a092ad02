import json
import subprocess
import sys
from pathlib import Path

import pytest

from rpog.bundles import BUNDLES
from rpog.cli import main

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("ex", sorted(BUNDLES))
def test_every_example_matches(capsys, ex):
    code, out, _ = run(capsys, "example", ex)
    assert code == 0
    assert out.rstrip().endswith(f"{ex}: matches")


def test_example_3_lines(capsys):
    _, out, _ = run(capsys, "example", "Ex3")
    assert out.splitlines()[:3] == ["schreier: NO (witness (5,1/2)-(1,1/2)=(5,1) not in cone)",
                                    "category: YES (sampled)", "groupoid: YES (sampled)"]


def test_s4_counterexample_line(capsys):
    _, out, _ = run(capsys, "example", "S4_counterexample")
    assert "preordered: NO (witness (13)(12)(34)(13)=(32)(14))" in out.splitlines()


def test_example_list_and_unknown(capsys):
    code, out, _ = run(capsys, "example", "list")
    assert code == 0 and len(out.splitlines()) == len(BUNDLES)
    code, _, err = run(capsys, "example", "Ex9")
    assert code == 2 and "unknown example" in err


def test_example_all_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "example", "all")
    data = json.loads(out)
    assert code == 0 and data["ok"] and len(data["examples"]) == len(BUNDLES)


def test_modular_on_sample(capsys):
    code, out, _ = run(capsys, "check", "modular", str(SAMPLES / "S4_A4.json"))
    assert code == 0 and out == "modular: YES (4-element lattice)\n"


def test_expect_flag_sets_exit_code(capsys):
    code, out, _ = run(capsys, "check", "preordered", "S4_12_34", "--expect", "yes")
    assert code == 1 and "<-- expected YES" in out
    code, _, _ = run(capsys, "check", "preordered", "S4_12_34", "--expect", "no")
    assert code == 0
    code, _, _ = run(capsys, "check", "preordered", "S4_12_34")
    assert code == 0


def test_guards(capsys):
    code, _, err = run(capsys, "census", "16")
    assert code == 3 and "guard" in err
    code, _, _ = run(capsys, "check", "preordered", "S4_A4", "--max-order", "12")
    assert code == 3
    code, _, _ = run(capsys, "check", "action-rep", "C12/full", "C12/full")
    assert code == 3


def test_precondition_and_parse_exit_codes(capsys, tmp_path):
    code, _, err = run(capsys, "check", "groupoid", "S4_A4")
    assert code == 4 and "needs a reflexive graph" in err
    bad = tmp_path / "bad.json"
    bad.write_text('{"order": 2, "table": [[0, 1], [1, 7]]}')
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2 and "table[1][1]" in err
    code, _, err = run(capsys, "check", "smith", "C2/full", "C2/full", "C2/full")
    assert code == 2 and "at most two" in err


def test_failed_validation_exits_one(capsys, tmp_path):
    f = tmp_path / "c3.json"
    f.write_text(json.dumps({"name": "C3", "order": 3, "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]], "cone": [0, 1]}))
    code, out, _ = run(capsys, "validate", str(f))
    assert code == 1 and "cone-closure" not in out and "NO" in out


@pytest.mark.parametrize("argv", [
    ("check", "smith", str(SAMPLES / "S3_relations.json")),
    ("check", "huq", str(SAMPLES / "S3_subobjects.json")),
    ("check", "axioms", str(SAMPLES / "C3_triv_model.json")),
    ("check", "category", str(SAMPLES / "C2_indiscrete_graph.json")),
    ("check", "groupoid", str(SAMPLES / "C2_indiscrete_graph.json")),
    ("check", "effective", str(SAMPLES / "C2_indiscrete_graph.json")),
    ("check", "lattice", str(SAMPLES / "S4_A4.json")),
    ("check", "action-rep", "C3/triv", "C2/full"),
    ("check", "s-center", "C4/full"),
    ("check", "schreier", "Ex2"),
    ("validate", *sorted(str(p) for p in SAMPLES.glob("*.json"))),
])
def test_checks_on_samples_hold(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0, out
    assert "NO" not in out


def test_s_center_refusal_is_a_verdict(capsys):
    code, out, _ = run(capsys, "check", "s-center", "Z_N", "--expect", "no")
    assert code == 0 and out.startswith("s-center: NO (witness cone is not a group")


def test_json_mirrors_verdicts(capsys):
    code, out, _ = run(capsys, "--format", "json", "check", "preordered", "S4_12_34")
    data = json.loads(out)
    v = data["results"][0]["verdict"]
    assert v["holds"] is False and v["law"] == "preordered"
    assert v["witness"] == {"x": "(23)", "p": "(12)(34)", "x+p-x": "(13)(24)"}


@pytest.mark.parametrize("argv", [("example", "all"), ("check", "schreier", "Ex1", "--seed", "3"),
                                  ("census", "6"), ("--format", "json", "check", "category", "Ex4")])
def test_output_is_deterministic(capsys, argv):
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b and a


def test_console_script_bytes_are_stable():
    cmd = [sys.executable, "-m", "rpog.cli", "example", "Ex1"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and b"Ex1: matches" in a


def test_census_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "census", "4")
    rows = json.loads(out)["rows"]
    assert code == 0 and rows[3] == {"order": 4, "groups": 2, "cones": 8, "rpo_classes": 6, "preordered": 6,
                                     "points": 42, "schreier": 42, "graphs": 56, "categories": 56,
                                     "groupoids": 56}
