import json
import subprocess
import sys

import numpy as np


def run_cli(*args, cwd):
    return subprocess.run(
        [sys.executable, "-m", "monalg", *args],
        capture_output=True, text=True, cwd=cwd,
    )


def test_lambda_command(tmp_path):
    out = tmp_path / "lam.json"
    res = run_cli("lambda", "--fixture", "A5", "--frame", "harmonic",
                  "--radius", "1", "--nodes", "4096", "--out", str(out), cwd=tmp_path)
    assert res.returncode == 0, res.stderr
    report = json.loads(out.read_text())
    lam = np.array([complex(re, im) for re, im in report["lambda"]])
    assert abs(lam[0] - 2j * np.pi) <= 1e-10
    assert report["is_2pi_i"] is True
    assert report["node_count"] == 4096


def test_lambda_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        res = run_cli("lambda", "--fixture", "J71", "--nodes", "1024",
                      "--seed", "7", "--out", str(out), cwd=tmp_path)
        assert res.returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_classify_command(tmp_path):
    out = tmp_path / "cls.json"
    res = run_cli("classify", "--fixture", "J69", "--out", str(out), cwd=tmp_path)
    assert res.returncode == 0
    report = json.loads(out.read_text())
    assert report["theorem8"] is True
    assert report["predicted_2pi_i"] is True


def test_validate_commands(tmp_path):
    out = tmp_path / "val.json"
    res = run_cli("validate", "--fixture", "A5", "--out", str(out), cwd=tmp_path)
    assert res.returncode == 0
    assert json.loads(out.read_text())["violations"] == []

    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps({
        "n": 5, "m": 1, "u_map": [1, 1, 1, 1],
        "gamma": [[2, 3, 4, 1.0, 0.0], [3, 2, 4, 0.0, 0.0]],
        "name": "broken",
    }))
    res = run_cli("validate", "--algebra", str(broken), "--out", str(out), cwd=tmp_path)
    assert res.returncode == 2
    assert any("symmetry" in v for v in json.loads(out.read_text())["violations"])


def test_invert_command(tmp_path):
    out = tmp_path / "inv.json"
    res = run_cli("invert", "--fixture", "A5", "--frame", "harmonic",
                  "--point", "0.5,0.3,-0.4", "--out", str(out), cwd=tmp_path)
    assert res.returncode == 0
    report = json.loads(out.read_text())
    assert report["relative_mismatch"] <= 1e-9


def test_verify_cauchy_command(tmp_path):
    out = tmp_path / "vc.json"
    res = run_cli("verify-cauchy", "--fixture", "C2", "--nodes", "1024",
                  "--out", str(out), cwd=tmp_path)
    assert res.returncode == 0
    report = json.loads(out.read_text())
    assert all(v <= 1e-7 for v in report["residuals"].values())


def test_verify_formula_command(tmp_path):
    out = tmp_path / "vf.json"
    res = run_cli("verify-formula", "--fixture", "A5", "--nodes", "1024",
                  "--out", str(out), cwd=tmp_path)
    assert res.returncode == 0
    report = json.loads(out.read_text())
    assert all(v <= 1e-6 for v in report["residuals"].values())


def test_bad_input_exit_codes(tmp_path):
    res = run_cli("lambda", "--algebra", "does_not_exist.json", cwd=tmp_path)
    assert res.returncode == 2
    res = run_cli("lambda", "--fixture", "A5", "--nodes", "8", cwd=tmp_path)
    assert res.returncode == 2
    res = run_cli("invert", "--fixture", "A5", "--point", "1,2", cwd=tmp_path)
    assert res.returncode == 2


def test_verify_all_command(tmp_path):
    out = tmp_path / "all.json"
    res = run_cli("verify-all", "--nodes", "512", "--seed", "1", "--out", str(out),
                  cwd=tmp_path)
    assert res.returncode == 0, res.stderr
    report = json.loads(out.read_text())
    assert report["ok"] is True
    assert sorted(report["fixtures"]) == [
        "A12_plus_A01sq", "A12_plus_A12", "A2_radical", "A3", "A5", "C2", "J69", "J71",
    ]
    for rec in report["fixtures"].values():
        assert rec["validation"] == []
        assert rec["prediction_sound"] is True
