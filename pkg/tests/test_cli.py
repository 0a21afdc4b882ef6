import os
import sys
import json
import pytest
from hyperjet import hyperjet_eval, hyperjet_coeffs, hyperjet_norm, hyperjet_poincare, hyperjet_kernel, hyperjet_info, \
    hyperjet_verify


def run_main(monkeypatch, capsys, module, *argv):
    """Run the main function of a command, return (exit code, stdout, last stderr line)."""
    monkeypatch.setattr(sys, "argv", [module.__name__.split(".")[-1], *argv])
    code = 0
    try:
        module.main()
    except SystemExit as ex:
        code = ex.code if ex.code is not None else 0
    out, err = capsys.readouterr()
    lines = [line for line in err.splitlines() if line.strip()]
    return code, out, lines[-1] if lines else ""


def test_eval_examples(monkeypatch, capsys):
    code, out, _ = run_main(monkeypatch, capsys, hyperjet_eval, "--order", "1", "--coeffs", "1", "--z", "0", "--w", "0.5")
    assert code == 0
    data = json.loads(out)
    assert data["order"] == 1
    assert data["convergent"] is True
    assert data["rows"][0]["value_re"] == pytest.approx(0.5, abs=1e-15)
    code, out, _ = run_main(monkeypatch, capsys, hyperjet_eval, "-N", "2", "--coeffs", "0,1", "--z", "0", "--w", "0.5")
    assert json.loads(out)["rows"][0]["value_re"] == pytest.approx(0.0625, abs=1e-15)


def test_eval_points_and_waypoints(monkeypatch, capsys, configs_dir):
    psi = os.path.join(configs_dir, "psi_quadratic.hjson")
    points = os.path.join(configs_dir, "points.csv")
    code, out, _ = run_main(monkeypatch, capsys, hyperjet_eval, "--psi", psi, "--points", points)
    direct = json.loads(out)["rows"]
    assert len(direct) == 3
    code, out, _ = run_main(monkeypatch, capsys, hyperjet_eval, "--psi", psi, "--points", points, "--waypoint", "0.3j")
    bracket = json.loads(out)["rows"]
    for a, b in zip(direct, bracket):
        assert b["value_re"] == pytest.approx(a["value_re"], abs=1e-10)
        assert b["value_im"] == pytest.approx(a["value_im"], abs=1e-10)


def test_eval_csv(monkeypatch, capsys):
    code, out, _ = run_main(monkeypatch, capsys, hyperjet_eval, "-N", "1", "--coeffs", "1", "--z", "0", "--w", "0.5",
                            "--csv")
    lines = out.strip().splitlines()
    assert lines[0] == "z_re,z_im,w_re,w_im,value_re,value_im"
    assert len(lines) == 2


def test_eval_errors(monkeypatch, capsys):
    code, out, err = run_main(monkeypatch, capsys, hyperjet_eval, "-N", "1", "--coeffs", "1,,2", "--z", "0",
                              "--w", "0.5")
    assert code == 2
    assert out == ""
    assert json.loads(err)["error"] == "ConfigError"
    code, out, err = run_main(monkeypatch, capsys, hyperjet_eval, "-N", "1", "--coeffs", "1", "--z", "0", "--w", "1.5")
    assert code == 3
    assert out == ""
    assert json.loads(err)["exit"] == 3
    code, out, err = run_main(monkeypatch, capsys, hyperjet_eval, "--bogus")
    assert code == 2
    assert json.loads(err)["error"] == "UsageError"


def test_coeffs(monkeypatch, capsys):
    code, out, _ = run_main(monkeypatch, capsys, hyperjet_coeffs, "-N", "2", "--coeffs", "0,1", "-M", "3",
                            "--w", "0.5")
    data = json.loads(out)
    assert [r["n"] for r in data["rows"]] == [2, 3, 4, 5]
    assert data["rows"][1]["coeff_re"] == pytest.approx(0.5)
    assert data["series"]["value"][0] == pytest.approx(0.0625)
    code, out, err = run_main(monkeypatch, capsys, hyperjet_coeffs, "-N", "2", "--coeffs", "1", "-M", "-1")
    assert code == 2


def test_norm(monkeypatch, capsys):
    code, out, _ = run_main(monkeypatch, capsys, hyperjet_norm, "--order", "1", "--alpha", "0")
    data = json.loads(out)
    assert data["c_alpha"]["value"] == pytest.approx(1.0, abs=1e-12)
    assert data["extrapolated"] is True
    code, out, err = run_main(monkeypatch, capsys, hyperjet_norm, "--order", "1", "--alpha=-1")
    assert code == 3
    assert "Hardy" in json.loads(err)["message"]
    code, out, _ = run_main(monkeypatch, capsys, hyperjet_norm, "--order", "3", "--alpha=-0.5")
    assert json.loads(out)["agreement"] < 1e-7
    code, out, err = run_main(monkeypatch, capsys, hyperjet_norm, "--alpha", "1")
    assert code == 2


def test_poincare(monkeypatch, capsys):
    code, out, _ = run_main(monkeypatch, capsys, hyperjet_poincare, "-L", "0", "-N", "3", "--z", "0.2", "--w", "0.5")
    data = json.loads(out)
    assert data["shell_sizes"] == [1]
    assert data["rows"][0]["value_re"] == pytest.approx((0.2 - 0.5) ** 3)
    code, out, _ = run_main(monkeypatch, capsys, hyperjet_poincare, "-L", "1", "-N", "1", "--z", "0.2", "--w", "0.5")
    assert json.loads(out)["rows"][0]["convergent"] is False
    tails = []
    for L in ("2", "3"):
        code, out, _ = run_main(monkeypatch, capsys, hyperjet_poincare, "-L", L, "-N", "4", "--tau", "0")
        tails.append(json.loads(out)["rows"][0]["tail"])
    assert tails[1] < tails[0]


def test_kernel(monkeypatch, capsys, configs_dir):
    kernel = os.path.join(configs_dir, "kernel_mock.json")
    points = os.path.join(configs_dir, "points.yaml")
    code, out, _ = run_main(monkeypatch, capsys, hyperjet_kernel, "--kernel", kernel, "--points", points)
    data = json.loads(out)
    assert data["genus"] == 2
    rows = data["rows"]
    assert len(rows) == 4
    assert rows[1]["kernel_re"] == pytest.approx(rows[2]["kernel_re"], abs=1e-14)
    assert rows[1]["kernel_im"] == pytest.approx(-rows[2]["kernel_im"], abs=1e-14)
    assert rows[0]["kernel_im"] == pytest.approx(0.0, abs=1e-14)
    code, out, err = run_main(monkeypatch, capsys, hyperjet_kernel, "--z", "0", "--w", "0.5")
    assert code == 2


def test_verify(monkeypatch, capsys):
    code, out, _ = run_main(monkeypatch, capsys, hyperjet_verify, "--suite", "A2,A4")
    assert code == 0
    report = json.loads(out)
    assert report["status"] == "pass"
    assert [c["name"] for c in report["checks"]] == ["A2", "A4"]
    assert report["config"]["seed"] == 0
    assert "logfile" not in report["config"]
    code, out, _ = run_main(monkeypatch, capsys, hyperjet_verify, "--suite", "A4", "--inject", "norm_ratio=1e-3")
    assert code == 1
    assert json.loads(out)["checks"][0]["status"] == "fail"


def test_verify_usage(monkeypatch, capsys):
    code, out, err = run_main(monkeypatch, capsys, hyperjet_verify, "--suite", "A11")
    assert code == 2
    assert out == ""
    code, out, err = run_main(monkeypatch, capsys, hyperjet_verify, "--inject", "bogus=1")
    assert code == 2
    code, out, err = run_main(monkeypatch, capsys, hyperjet_verify, "--list")
    assert code == 0
    assert out.splitlines()[0].startswith("A1:")
    code, out, err = run_main(monkeypatch, capsys, hyperjet_verify, "--bogus")
    assert code == 2


def test_info(monkeypatch, capsys):
    code, out, _ = run_main(monkeypatch, capsys, hyperjet_info)
    assert code == 0
    assert out.startswith("Package hyperjet:")
    assert "Acceptance checks: A1" in out


def test_same_seed_gives_identical_output(monkeypatch, capsys):
    runs = [run_main(monkeypatch, capsys, hyperjet_verify, "--suite", "A1", "--seed", "7")[1] for _ in range(2)]
    assert runs[0] == runs[1]
    assert json.loads(runs[0])["config"]["seed"] == 7
    argv = ["-N", "3", "--coeffs", "1,0.5j,-0.25", "--z", "0.1-0.2j", "--w", "0.4+0.3j"]
    runs = [run_main(monkeypatch, capsys, hyperjet_eval, *argv)[1] for _ in range(2)]
    assert runs[0] == runs[1]


def test_verify_passes_numerical_settings(monkeypatch, capsys, tmp_path):
    settings = tmp_path / "settings.json"
    settings.write_text(json.dumps({"fd_step": 2e-4, "fd_step_box": 4e-3, "dedup_tol": 1e-8, "ambiguity_floor": 1e-11}))
    seen = []
    monkeypatch.setattr(hyperjet_verify, "run_checks", lambda ctx, names: seen.append(ctx) or [])
    code, out, _ = run_main(monkeypatch, capsys, hyperjet_verify, "--config", str(settings), "--suite", "A6")
    assert code == 0
    ctx = seen[0]
    assert (ctx.fd_step, ctx.fd_step_box, ctx.dedup_tol, ctx.ambiguity_floor) == (2e-4, 4e-3, 1e-8, 1e-11)
    assert json.loads(out)["config"]["fd_step"] == 2e-4
