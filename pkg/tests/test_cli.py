import json

import numpy as np
import pytest

from gemqec.cli import main, render
from gemqec.statevec import GeneralCode
from gemqec.zoo import pi_code


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def test_distance_shor(capsys):
    code, data = run_json(capsys, "distance", "shor:3")
    assert code == 0 and data["d"] == 3 and len(data["subset"]) == 3


def test_distance_pi_uses_kl(capsys):
    code, data = run_json(capsys, "distance", "pi:6")
    assert code == 0 and data["d"] == 2 and data["method"] == "knill-laflamme" and data["exact"]


def test_distance_five(capsys):
    assert run_json(capsys, "distance", "five")[1]["d"] == 3


def test_distance_lower_bound_verdict(capsys):
    code, data = run_json(capsys, "distance", "shor:3", "--w-max", "2")
    assert code == 0 and data["d"] == 3 and not data["exact"]


def test_gem_shor_plus_is_tight(capsys):
    code, data = run_json(capsys, "gem", "shor:3", "--state", "plus", "--restarts", "32")
    assert code == 0
    assert data["overlap"] == pytest.approx(0.25, abs=1e-9) and data["e0_upper"] == pytest.approx(2, abs=1e-9)
    thm2 = next(b for b in data["bounds"] if b["name"] == "theorem2")
    assert thm2["bound"] == 2 and thm2["note"] == "tight"


def test_gem_pi_and_dicke(capsys):
    assert run_json(capsys, "gem", "pi:8", "--state", "zero")[1]["overlap"] >= 0.75 - 1e-12
    assert run_json(capsys, "gem", "dicke:3", "--state", "plus")[1]["overlap"] >= 0.27808 - 1e-5


def test_gem_unknown_state(capsys):
    code, _, err = run(capsys, "gem", "shor:3", "--state", "sideways")
    assert code == 2 and "sideways" in err


def test_concat_commands(capsys):
    code, data = run_json(capsys, "concat", "--schedule", "4,4")
    assert code == 0 and data["F"] == 0.03125 and data["explicit_check"]
    code, data = run_json(capsys, "concat", "--M", "10", "--l", "3")
    assert code == 0 and data["F"] >= 0.729 and data["bound"] == 0.729 and data["N"] == 20**7
    code, data = run_json(capsys, "concat", "--M", "2", "--l", "1")
    assert data["F"] == 0.5 and data["N"] == 4 and data["explicit_check"]


def test_concat_usage_errors(capsys):
    assert run(capsys, "concat", "--M", "1", "--l", "2")[0] == 2
    assert run(capsys, "concat", "--M", "3")[0] == 2
    assert run(capsys, "concat", "--schedule", "4,x")[0] == 2


def test_kl_check_exit_codes(capsys):
    code, data = run_json(capsys, "kl-check", "pi:4", "--d", "2")
    assert code == 0 and data["passed"]
    code, data = run_json(capsys, "kl-check", "pi:4", "--d", "3")
    assert code == 1 and not data["passed"] and data["witness"].count("I") == 2


def test_bounds_command(capsys):
    code, data = run_json(capsys, "bounds", "--n", "9", "--k", "1", "--d", "3", "--s", "6")
    assert code == 0
    assert data["theorem2"] == 2 and data["theorem3_overlap"] == pytest.approx(0.9683, abs=1e-4)
    assert data["K"] == 1332 and data["theorem1_hypothesis"] == "unmet"


def test_unknown_code_and_resource_errors(capsys):
    assert run(capsys, "distance", "nope")[0] == 2
    assert run(capsys, "gem", "shor:3", "--max-qubits", "4")[0] == 3
    with pytest.raises(SystemExit) as info:
        main(["gem", "shor:3", "--max-qubits", "30"])
    assert info.value.code == 2


def test_stabilizer_file_spec(tmp_path, capsys):
    path = tmp_path / "five.txt"
    path.write_text("n=5 k=1\nXZZXI\nIXZZX\nXIXZZ\nZXIXZ\n")
    code, data = run_json(capsys, "distance", str(path))
    assert code == 0 and data["d"] == 3
    code, data = run_json(capsys, "gem", str(path), "--state", "zero")
    assert code == 0 and data["overlap"] <= 0.25 + 1e-9


def test_parse_error_reports_line(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("n=3 k=1\nZZI\nIZQ\n")
    code, _, err = run(capsys, "distance", str(path))
    assert code == 2 and "line 3" in err


def test_json_file_spec_and_export(tmp_path, capsys):
    path = tmp_path / "pi4.json"
    code, out, _ = run(capsys, "export", "pi:4", "--out", str(path))
    assert code == 0 and out == ""
    loaded = GeneralCode.from_json(path.read_text())
    assert np.allclose(loaded.basis, pi_code(4).basis, atol=1e-12) and loaded.claimed_distance == 2
    code, data = run_json(capsys, "kl-check", str(path))
    assert code == 0 and data["d"] == 2
    code, out, _ = run(capsys, "export", "five", "--as", "stabilizer")
    assert out.startswith("n=5 k=1\n")
    assert run(capsys, "export", "pi:4", "--as", "stabilizer")[0] == 2


def test_formats(capsys):
    code, out, _ = run(capsys, "distance", "five", "--format", "csv")
    assert out.splitlines()[0] == "key,value" and "d,3" in out
    code, out, _ = run(capsys, "distance", "five", "--format", "pretty")
    assert "d: 3" in out


def test_twelve_significant_digits():
    text = render({"x": 1 / 3, "y": [2 / 3], "z": float("inf")}, "json")
    data = json.loads(text)
    assert data["x"] == 0.333333333333 and data["y"] == [0.666666666667] and data["z"] == "inf"


def test_verify_suite_deterministic(capsys):
    first = run(capsys, "verify", "ldpc", "--seed", "7")
    second = run(capsys, "verify", "ldpc", "--seed", "7")
    assert first[0] == 0 and first[1] == second[1]
    data = json.loads(first[1])
    assert data["passed"] and all(r["provenance"] in {"paper", "derived", "trivial"} for r in data["reports"])
    assert run(capsys, "verify", "bogus")[0] == 2


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "stabilizer", "--format", "csv")
    assert code == 0 and out.startswith("name,bound,measured,slack,satisfied,provenance,inputs")
