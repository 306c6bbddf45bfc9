import json
import subprocess
import sys
from pathlib import Path

import pytest

import autz
from autz import casefile, cli

CASES = Path(autz.__file__).parent / "cases"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_z3mu3_h2(capsys):
    code, out, _ = run(capsys, "analyze", str(CASES / "z3mu3_h2.json"))
    assert code == 0
    assert "Aut_Z(S)    Z/3  [Exact]" in out


def test_analyze_z2mu4_h2_machine(capsys):
    code, out, _ = run(capsys, "analyze", str(CASES / "z2mu4_h2.json"), "--format=machine")
    assert code == 0
    r = json.loads(out)
    assert r["h1_S"] == {"free_rank": 4, "torsion": []}
    assert r["aut_z"]["structure"] == "Z/2" and r["aut_z"]["certainty"] == "Exact"
    assert all(c["ok"] for c in r["checks"].values())


def test_analyze_z2mu2_four_points(capsys):
    code, out, _ = run(capsys, "analyze", str(CASES / "z2mu2_four_points.json"), "--format=machine")
    r = json.loads(out)
    assert code == 0 and r["h1_S"] == {"free_rank": 2, "torsion": [2, 4]} and r["K_order"] == 1


def test_machine_output_is_stable(capsys):
    path = str(CASES / "sporadic_III4.json")
    _, a, _ = run(capsys, "analyze", path, "--format=machine")
    _, b, _ = run(capsys, "analyze", path, "--format=machine")
    assert a == b


def test_degenerate_lattice_exit_1(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"group": {"r": 2, "lattice": [[1, 2], [2, 4]]}, "h": 1,
                             "ab_images": ["e", "1"]}))
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 1 and "DegenerateLattice" in err


@pytest.mark.parametrize("obj,field", [
    ({"h": 1, "ab_images": []}, "group"),
    ({"group": "Nope", "h": 1, "ab_images": []}, "group"),
    ({"group": "Z3xMu3", "h": -1, "ab_images": []}, "h"),
    ({"group": "Z3xMu3", "h": 1, "ab_images": ["e", "q"]}, "ab_images[1]"),
    ({"group": "Z3xMu3", "h": 1, "ab_images": ["e", "1"], "expected": {"foo": 1}}, "expected"),
])
def test_case_file_errors_name_the_field(obj, field):
    with pytest.raises(casefile.CaseFileError) as exc:
        casefile.case_from_dict(obj)
    assert exc.value.field == field


def test_invalid_json_exit_1(tmp_path, capsys):
    f = tmp_path / "x.json"
    f.write_text("{not json")
    assert run(capsys, "analyze", str(f))[0] == 1
    assert run(capsys, "analyze", str(tmp_path / "missing.json"))[0] == 1


def test_expected_mismatch_exit_1(tmp_path, capsys):
    obj = json.loads((CASES / "z3mu3_h2.json").read_text())
    obj["expected"]["K_order"] = 3
    f = tmp_path / "wrong.json"
    f.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "analyze", str(f))
    assert code == 1 and "FAIL" in out


def test_internal_error_exit_2(capsys, monkeypatch):
    def boom(case):
        raise RuntimeError("boom")

    monkeypatch.setattr(casefile, "analyze", boom)
    code, _, err = run(capsys, "analyze", str(CASES / "z3mu3_h2.json"))
    assert code == 2 and "boom" in err


def test_explicit_group_and_elements(tmp_path, capsys):
    obj = {"group": {"r": 4, "lattice": [[1, 1], [-1, 1]], "names": {"t": [1, 0]}}, "h": 1,
           "ab_images": [{"t": [0, 0], "k": 1}, {"t": [0, 0], "k": 0}],
           "gamma_images": [[[1, 0], 0], "t"], "monE": ["e", "t*e", "t*e^2"],
           "expected": {"K_order": 2, "h1_S": {"torsion": [2, 2]}}}
    f = tmp_path / "c.json"
    f.write_text(json.dumps(obj))
    assert run(capsys, "analyze", str(f))[0] == 0


@pytest.mark.parametrize("which,rows", [("a1", 20), ("a2", 11)])
def test_reproduce(which, rows, capsys):
    code, out, _ = run(capsys, "reproduce", which)
    assert code == 0
    lines = [l for l in out.splitlines() if l.endswith(" ok")]
    assert len(lines) == rows


def test_reproduce_machine_parallel_matches_serial(capsys, monkeypatch):
    _, serial, _ = run(capsys, "reproduce", "a2", "--format=machine")
    monkeypatch.setenv("AUTZ_JOBS", "2")
    _, parallel, _ = run(capsys, "reproduce", "a2", "--format=machine")
    assert serial == parallel
    data = json.loads(serial)
    assert [c["name"] for c in data["cases"]][:2] == ["Sporadic16 IV-2", "Sporadic16 V-1"]


def test_simplify_chain(capsys):
    code, out, _ = run(capsys, "simplify", str(CASES / "sporadic_III4.json"))
    assert code == 0
    assert out.strip().splitlines()[-1] == "minimal (e, 0; t, t)  [IV-2]  (2 steps)"


def test_simplify_minimal_input(capsys):
    code, out, _ = run(capsys, "simplify", str(CASES / "z3mu3_h2.json"))
    assert code == 0 and "(0 steps)" in out


def test_simplify_invalid_input(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"group": "Z3xMu3", "h": 1, "ab_images": ["e", "1"], "gamma_images": ["t", "t"]}))
    assert run(capsys, "simplify", str(f))[0] == 1


def test_catalog_roundtrip(tmp_path, capsys):
    code, out, _ = run(capsys, "catalog", "--list", "1", "--out", str(tmp_path))
    assert code == 0 and len(out.splitlines()) == 20
    files = sorted(tmp_path.glob("*.json"))
    assert len(files) == 20
    for f in files[:5]:
        report = casefile.analyze(casefile.load_case(f))
        assert casefile.report_passed(report)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "autz", "catalog", "--list", "2"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "VII*" in out.stdout
