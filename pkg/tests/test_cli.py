import json
import subprocess
import sys

import pytest

from greedy_lebesgue.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_norm(capsys):
    code, out, _ = run(capsys, "--exact", "norm", "c0_summing", "1:1 2:1 3:1 4:1")
    assert code == 0
    assert json.loads(out)["norm"] == "4"


def test_norm_csv_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "norm", "lp_quasi:1/2", "1:1 2:1", "--format", "csv", "--exact")
    assert code == 0
    assert out.splitlines()[0] == "key,value"
    assert "norm,4" in out.splitlines()


def test_greedy(capsys):
    code, out, _ = run(capsys, "greedy", "c0_sup", "1:1 2:-3 3:2", "--m", "2")
    d = json.loads(out)
    assert code == 0 and d["order"] == [2, 3]
    assert d["residual_norm_float"] == 1.0


def test_chebyshev(capsys):
    code, out, _ = run(capsys, "--exact", "chebyshev", "lp_quasi:1", "1:3 2:1", "--m", "1")
    d = json.loads(out)
    assert code == 0 and d["A"] == [1] and d["residual"] == "1"


def test_param_modes(capsys, tmp_path):
    code, out, _ = run(capsys, "param", "c0_summing", "k_uncond", "--m", "2", "--mode",
                       "windowed", "--window", "4", "--grid", "0,1,-1", "--exact")
    d = json.loads(out)
    assert code == 0 and d["value"] == "2" and d["mode"] == "windowed_exact"
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"search": {"pool_size": 10}}))
    code, out, _ = run(capsys, "param", "lp_quasi:1", "mu", "--m", "3", "--config", str(cfg))
    assert code == 0 and json.loads(out)["value_float"] == 1.0


def test_verify_ok_and_output(capsys, tmp_path):
    cfg = tmp_path / "s.json"
    cfg.write_text(json.dumps({"suite": "summing_remark", "m_range": [1, 3]}))
    dest = tmp_path / "r.csv"
    code, out, _ = run(capsys, "verify", "summing_remark", "--config", str(cfg), "--format",
                       "csv", "--output", str(dest))
    assert code == 0
    assert out == dest.read_text()
    assert out.startswith("# suite: summing_remark\n")


def test_verify_deterministic(capsys):
    cfg = ["verify", "trunc_bound", "--seed", "3"]
    a = run(capsys, *cfg)[1]
    b = run(capsys, *cfg)[1]
    assert a == b and json.loads(a)["config"]["seed"] == 3


def test_ratio(capsys):
    code, out, _ = run(capsys, "ratio", "lp_quasi:1", "mu", "mu_d", "--R", "1", "--m-hi", "3")
    d = json.loads(out)
    assert code == 0 and [r["ratio"] for r in d["rows"]] == [1.0, 1.0, 1.0]


@pytest.mark.parametrize("argv", [
    ["norm", "hilbert", "1:1"],
    ["norm", "c0_sup", "1:x"],
    ["verify", "f1_chain", "--config", "/nonexistent.json"],
    ["param", "c0_sup", "g", "--m", "0"],
])
def test_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_verify_mismatched_suite(capsys, tmp_path):
    cfg = tmp_path / "s.json"
    cfg.write_text(json.dumps({"suite": "f1_chain"}))
    assert run(capsys, "verify", "trunc_bound", "--config", str(cfg))[0] == 2


def test_verify_failure_exit_1(capsys, monkeypatch):
    from greedy_lebesgue import verify

    bad = verify._record("x", "exact", 2, "<=", 1)
    monkeypatch.setitem(verify._RUNNERS, "summing_remark", lambda spec: [bad])
    code, out, _ = run(capsys, "verify", "summing_remark")
    assert code == 1 and json.loads(out)["summary"]["fail"] == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "greedy_lebesgue", "--exact", "norm", "c0_sup",
                          "1:2 5:-3"], capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["norm"] == "3"
