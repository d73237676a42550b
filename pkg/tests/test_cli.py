"""CLI contract: flags, exit codes, formats, determinism."""

import json
import math
import subprocess
import sys

import pytest


def run_cli(*args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "harmonic_embed", *args],
        capture_output=True,
        text=True,
        **kwargs,
    )


def without_runtime(doc: dict) -> str:
    doc = dict(doc)
    doc.pop("runtime_ms")
    return json.dumps(doc, sort_keys=True)


def test_constants_json_contract():
    out = run_cli("constants", "--n", "4", "--k", "3/2", "--format", "json")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["schema"] == "harmonic-embed/1"
    assert doc["constants"]["derived"] == {
        "lambda": "-3",
        "c": "1/3",
        "c_lambda": "-1",
        "b": "1",
    }
    assert doc["constants"]["printed"]["c"] == "1"
    names = {c["name"]: c["status"] for c in doc["checks"]}
    assert names["derived.passes_all_consistency_checks"] == "pass"
    assert names["printed.fails_some_consistency_check"] == "pass"
    assert doc["overall"] == "pass"


def test_constants_accepts_decimal_rationals():
    out = run_cli("constants", "--n", "4", "--k", "1.5")
    assert out.returncode == 0
    assert json.loads(out.stdout)["constants"]["derived"]["c"] == "1/3"


def test_lemma2_default_triple():
    out = run_cli("lemma2")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    det = next(c for c in doc["checks"] if c["name"] == "triple.matches_closed_form")
    closed = -2.0 * math.sinh(1.0) * (math.cosh(1.0) - 1.0)
    assert det["value"] == pytest.approx(closed, abs=1e-12)


def test_lemma2_near_degenerate_triple_fails_with_exit_1():
    out = run_cli("lemma2", "--s", "0", "1e-15", "2e-15")
    assert out.returncode == 1
    doc = json.loads(out.stdout)
    assert doc["overall"] == "fail"


def test_density_table_is_sinh_squared():
    out = run_cli("density", "--n", "3", "--k", "2", "--r-max", "2", "--step", "0.125")
    assert out.returncode == 0
    lines = out.stdout.strip().split("\n")
    assert lines[0] == "r,theta,log_theta_prime"
    assert len(lines) == 17
    for line in lines[1:]:
        r, theta, _ = (float(x) for x in line.split(","))
        assert abs(theta - math.sinh(r) ** 2) <= 1e-13 * math.sinh(r) ** 2


def test_density_b_zero_log_derivative():
    out = run_cli("density", "--n", "5", "--k", "1", "--r-max", "1", "--step", "0.5")
    rows = out.stdout.strip().split("\n")
    last = rows[-1].split(",")
    assert float(last[0]) == 1.0
    assert float(last[2]) == pytest.approx(2.0 / math.tanh(0.5), rel=1e-15)


def test_density_rejects_bad_grid():
    assert run_cli("density", "--step", "0").returncode == 2
    assert run_cli("density", "--r-max", "-1").returncode == 2
    assert run_cli("density", "--format", "text").returncode == 2


def test_gram_hyperboloid_payload():
    out = run_cli(
        "gram", "--model", "hyperboloid", "--n", "3", "--points", "12",
        "--seed", "42", "--c-override", "0",
    )
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    gram = doc["payload"]["gram"]
    assert gram["m"] == 12
    assert gram["rank"] == 4
    assert gram["signature"] == [1, 3, 8]
    assert gram["tolerance"] == 1e-8


def test_gram_line_default_uses_derived_c():
    out = run_cli("gram", "--model", "line")
    assert out.returncode == 0
    gram = json.loads(out.stdout)["payload"]["gram"]
    assert gram["c"] == pytest.approx(1.0 / 3.0, rel=1e-15)
    assert gram["rank"] == 3 and gram["signature"][:2] == [2, 1]


def test_ode_check_command():
    out = run_cli("ode-check", "--n", "8", "--k", "4")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["overall"] == "pass"
    names = {c["name"] for c in doc["checks"]}
    assert {"ledger.pole_zero", "ode.eigen_residual", "ode.step_halving"} <= names


def test_na_single_entry():
    out = run_cli("na", "--p", "2", "--q", "1")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["info"]["catalog"][0]["b"] == "1"
    assert run_cli("na", "--p", "2").returncode == 2


def test_output_file_and_byte_determinism(tmp_path):
    path_a = tmp_path / "a.json"
    path_b = tmp_path / "b.json"
    assert run_cli("report", "--seed", "7", "--output", str(path_a)).returncode == 0
    assert run_cli("report", "--seed", "7", "--output", str(path_b)).returncode == 0
    doc_a = json.loads(path_a.read_text())
    doc_b = json.loads(path_b.read_text())
    assert without_runtime(doc_a) == without_runtime(doc_b)
    # runtime_ms is the only field allowed to differ
    assert doc_a["overall"] == "pass"


def test_output_write_failure_is_exit_1(tmp_path):
    out = run_cli("constants", "--output", str(tmp_path / "missing" / "x.json"))
    assert out.returncode == 1
    assert "error" in out.stderr.lower()


def test_usage_errors_name_the_flag():
    out = run_cli("constants", "--n", "1")
    assert out.returncode == 2
    assert "--n" in out.stderr
    out = run_cli("constants", "--k", "0")
    assert out.returncode == 2
    assert "--k" in out.stderr or "--n/--k" in out.stderr


def test_embed_check_command():
    out = run_cli("embed-check", "--n", "3", "--seed", "42", "--format", "text")
    assert out.returncode == 0
    assert "overall: pass" in out.stdout
