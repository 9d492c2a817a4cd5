import json
import subprocess
import sys
from pathlib import Path

import pytest

from hochcalc.cli import emit_document, main, parse_input
from hochcalc.errors import InputError

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run_cli(args, tmp_path):
    out = tmp_path / "report.json"
    code = main(["--out", str(out)] + list(args))
    return code, json.loads(out.read_text())


def test_parse_minimal_document():
    doc = parse_input(json.dumps({
        "field": {"type": "Q"},
        "algebra": {"basis": [{"name": "1", "degree": 0}], "unit": "1"},
    }))
    assert doc.algebra.dim == 1


def test_parse_rejects_non_prime():
    with pytest.raises(InputError) as err:
        parse_input(json.dumps({"field": {"type": "F", "p": 4},
                                "algebra": {"basis": [{"name": "1", "degree": 0}], "unit": "1"}}))
    assert "field.p" in str(err.value)


def test_parse_rejects_duplicate_names():
    with pytest.raises(InputError):
        parse_input(json.dumps({
            "field": {"type": "Q"},
            "algebra": {"basis": [{"name": "1", "degree": 0}, {"name": "1", "degree": 1}],
                         "unit": "1"},
        }))


def test_parse_rejects_degree_mismatch_in_maps():
    base = {
        "field": {"type": "F", "p": 2},
        "algebra": {"basis": [{"name": "1", "degree": 0}, {"name": "u", "degree": 1}],
                     "unit": "1", "products": {"u": {"u": {}}}},
        "structure": {"k": 4, "maps": {"m3": [
            {"args": ["u", "u", "u"], "out": {"u": 1}},
        ]}},
    }
    with pytest.raises(InputError) as err:
        parse_input(json.dumps(base))
    assert "structure.maps.m3" in str(err.value)


def test_parse_rejects_non_normalized_maps():
    base = {
        "field": {"type": "F", "p": 2},
        "algebra": {"basis": [{"name": "1", "degree": 0}, {"name": "u", "degree": 1}],
                     "unit": "1", "products": {"u": {"u": {}}}},
        "structure": {"k": 4, "maps": {"m3": [
            {"args": ["1", "1", "1"], "out": {"u": 1}},
        ]}},
    }
    with pytest.raises(InputError):
        parse_input(json.dumps(base))


def test_roundtrip_fixture_documents():
    for fx in sorted(FIXTURES.glob("*.json")):
        if fx.name == "section8_generators.json":
            continue  # reference tables, not an input document
        text = fx.read_text()
        doc = parse_input(text)
        emitted = emit_document(doc)
        again = parse_input(json.dumps(emitted))
        assert emit_document(again) == emitted


def test_validate_exit_codes(tmp_path):
    code, report = run_cli(["--in", str(FIXTURES / "dual_numbers_q.json"), "validate"], tmp_path)
    assert code == 0
    assert report["results"]["algebra_violations"] == []
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "field": {"type": "Q"},
        "algebra": {"basis": [{"name": "1", "degree": 0}, {"name": "u", "degree": 1}],
                     "unit": "1", "products": {"u": {"u": {"u": "1"}}}},
    }))
    code, report = run_cli(["--in", str(bad), "validate"], tmp_path)
    assert code == 1
    assert report["results"]["algebra_violations"]


def test_input_error_exit_code(tmp_path):
    f = tmp_path / "x.json"
    f.write_text("{\"field\": {\"type\": \"F\", \"p\": 4}}")
    code, report = run_cli(["--in", str(f), "validate"], tmp_path)
    assert code == 1
    assert report["error"]["kind"] == "input"
    assert report["error"]["path"] == "field.p"


def test_hh_command(tmp_path):
    code, report = run_cli(
        ["--in", str(FIXTURES / "dual_numbers_f3.json"), "hh", "--p-max", "3"], tmp_path
    )
    assert code == 0
    spaces = report["results"]["spaces"]
    assert spaces["0,0"]["dim"] == 2
    assert spaces["2,0"]["dim"] == 1
    assert spaces["2,0"]["dim_cocycles"] - spaces["2,0"]["dim_coboundaries"] == 1


def test_props_command_deterministic(tmp_path):
    args = ["--in", str(FIXTURES / "exterior_line_q.json"), "--seed", "42",
            "props", "--trials", "10"]
    code1, rep1 = run_cli(args, tmp_path)
    code2, rep2 = run_cli(args, tmp_path)
    assert code1 == code2 == 0
    assert rep1 == rep2
    assert rep1["seed"] == 42
    assert rep1["timing_ms"] is None


def test_byte_determinism(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["--in", str(FIXTURES / "tower_f2_a4_extendable.json"), "obstruct", "--page", "2"]
    main(["--out", str(out1)] + argv)
    main(["--out", str(out2)] + argv)
    assert out1.read_bytes() == out2.read_bytes()


def test_obstruct_exit_codes(tmp_path):
    code, rep = run_cli(
        ["--in", str(FIXTURES / "tower_f2_a4_extendable.json"), "obstruct", "--page", "2"],
        tmp_path,
    )
    assert code == 0 and rep["results"]["class"]["coords"] == {}
    code, rep = run_cli(
        ["--in", str(FIXTURES / "tower_f2_a4_obstructed.json"), "obstruct", "--page", "2"],
        tmp_path,
    )
    assert code == 2
    assert rep["results"]["class"]["coords"]
    assert rep["results"]["certificate"]["kind"] == "rank"
    code, rep = run_cli(
        ["--in", str(FIXTURES / "tower_f2_a4_obstructed.json"), "obstruct", "--page", "1"],
        tmp_path,
    )
    assert code == 2


def test_extend_command(tmp_path):
    code, rep = run_cli(
        ["--in", str(FIXTURES / "tower_f2_a4_extendable.json"), "extend", "--to", "6"],
        tmp_path,
    )
    assert code == 0
    assert rep["results"]["revalidated"] is True
    assert [s["k"] for s in rep["results"]["steps"]] == [4, 5]


def test_e_page_command(tmp_path):
    code, rep = run_cli(
        ["--in", str(FIXTURES / "tower_f2_a5_valid.json"), "e-page", "--page", "2",
         "--window", "0:3,0:3", "--grid"],
        tmp_path,
    )
    assert code == 0
    cells = rep["results"]["cells"]
    assert cells["0,0"]["kind"] == "predicate"
    assert cells["1,1"]["kind"] == "vector"
    assert any("P*" in line for line in rep["results"]["grid"])


def test_collapse_check_command(tmp_path):
    code, rep = run_cli(
        ["--in", str(FIXTURES / "tower_f2_a5_valid.json"), "collapse-check",
         "--window", "2:4,6:8"],
        tmp_path,
    )
    assert code == 0
    assert rep["results"]["sq_vanishes"] is True
    assert rep["results"]["e3_vanishes_on_window"] is True


def test_section8_cli_char2(tmp_path):
    code, rep = run_cli(["section8", "--char", "2", "--max-poly-degree", "2"], tmp_path)
    assert code == 0
    assert rep["results"]["all_passed"] is True


def test_console_entry_point(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run(
        [sys.executable, "-m", "hochcalc.cli", "--in",
         str(FIXTURES / "dual_numbers_q.json"), "--out", str(out), "validate"],
        capture_output=True,
    )
    assert proc.returncode == 0


def test_obstruct_page3_undecided_over_q(tmp_path):
    code, rep = run_cli(
        ["--in", str(FIXTURES / "tower_q_a4_undecided.json"), "obstruct", "--page", "3"],
        tmp_path,
    )
    assert code == 3
    assert rep["results"]["status"] == "undecided"
    assert "kernel" in rep["results"]["reason"]


def test_threads_flag_is_scheduling_independent(tmp_path):
    base = ["--in", str(FIXTURES / "dual_numbers_f3.json")]
    _, rep1 = run_cli(base + ["hh", "--p-max", "4"], tmp_path)
    _, rep4 = run_cli(["--threads", "4"] + base + ["hh", "--p-max", "4"], tmp_path)
    assert rep1["results"] == rep4["results"]


def test_e_page_differentials(tmp_path):
    code, rep = run_cli(
        ["--in", str(FIXTURES / "tower_f2_a5_valid.json"), "e-page", "--page", "2",
         "--window", "0:3,0:3", "--differentials"],
        tmp_path,
    )
    assert code == 0
    diffs = rep["results"]["differentials"]
    assert diffs["0,1"] == {"kind": "quadratic"}
    assert diffs["1,1"]["undefined"] == "NotProvidedError"
    assert "rank" in diffs["2,2"]


def test_e_page_1_command(tmp_path):
    code, rep = run_cli(
        ["--in", str(FIXTURES / "exterior_line_q.json"), "e-page", "--page", "1",
         "--window", "0:2,0:2", "--differentials"],
        tmp_path,
    )
    assert code == 0
    assert rep["results"]["cells"]["0,0"]["kind"] == "vector"
    assert "rank" in rep["results"]["differentials"]["1,1"]


def test_hh_single_cell_and_full_pipeline(tmp_path):
    code, rep = run_cli(
        ["--in", str(FIXTURES / "exterior_line_q.json"), "hh", "--p", "1", "--q", "0",
         "--bases", "--full"],
        tmp_path,
    )
    assert code == 0
    space = rep["results"]["spaces"]["1,0"]
    assert space["dim"] == 1 and rep["results"]["pipeline"] == "full"
    assert space["representatives"]


def test_section8_byte_determinism(tmp_path):
    out1, out2 = tmp_path / "s1.json", tmp_path / "s2.json"
    argv = ["section8", "--char", "2", "--max-poly-degree", "2"]
    main(["--out", str(out1)] + argv)
    main(["--out", str(out2)] + argv)
    assert out1.read_bytes() == out2.read_bytes()


def test_props_seed_after_subcommand(tmp_path):
    code, rep = run_cli(
        ["--in", str(FIXTURES / "exterior_line_q.json"), "props", "--trials", "5",
         "--seed", "42"],
        tmp_path,
    )
    assert code == 0 and rep["seed"] == 42


def test_e_page_3_command(tmp_path):
    code, rep = run_cli(
        ["--in", str(FIXTURES / "tower_f2_a5_valid.json"), "e-page", "--page", "3",
         "--window", "0:3,0:3"],
        tmp_path,
    )
    assert code == 0
    cells = rep["results"]["cells"]
    assert cells["1,1"]["kind"] == "predicate"
    assert cells["3,2"]["kind"] == "undefined"
    assert cells["2,2"]["kind"] == "vector"
