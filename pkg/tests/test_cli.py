import json
import subprocess
import sys

import pytest

from isozeta.cli import JobConfig, UsageError, load_manifest, main, run, validate


def cli(*args, env=None):
    return subprocess.run([sys.executable, "-m", "isozeta", *args], capture_output=True, env=env)


def test_verify_worked_case(capsys):
    assert main(["verify", "--p", "2", "--q", "13", "--N", "1"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("p=2 q=13 N=1: PASS")


@pytest.mark.parametrize("argv,message", [
    (["verify", "--p", "2", "--q", "12", "--N", "1"], "q must be prime ≡ 1 (mod 12)"),
    (["verify", "--p", "13", "--q", "13"], "p and q must be distinct"),
    (["verify", "--p", "2", "--q", "13", "--N", "2"], "p must be prime to qN"),
    (["verify", "--q", "13"], "--p is required"),
    (["brandt", "--q", "13", "--ell", "13"], "ell must be a prime not dividing qN"),
    (["hecke", "--N", "22", "--ell", "11"], "ell must not divide the level"),
    (["graph", "--p", "2", "--q", "13", "--format", "text"], "format 'text' is not available"),
    (["verify", "--p", "2", "--q", "13", "--jobs", "0"], "--jobs must be at least 1"),
])
def test_usage_errors(capsys, argv, message):
    assert main(argv) == 2
    assert message in capsys.readouterr().err


def test_validation_happens_before_field_construction(monkeypatch):
    import isozeta.ffield as ffield
    monkeypatch.setattr(ffield.FieldTower, "__init__", lambda *a, **k: pytest.fail("tower built"))
    with pytest.raises(UsageError):
        validate(JobConfig("verify", p=2, q=12))


def test_brandt_csv(capsys):
    assert main(["brandt", "--q", "37", "--N", "1", "--ell", "2", "--format", "csv"]) == 0
    rows = [list(map(int, line.split(","))) for line in capsys.readouterr().out.splitlines()]
    assert len(rows) == 3 and all(sum(r) == 3 for r in rows)


def test_brandt_json_and_text(capsys):
    assert main(["brandt", "--q", "13", "--N", "2", "--ell", "3", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert all(sum(r) == 4 for r in data["brandt"])
    assert main(["brandt", "--q", "13", "--ell", "2", "--format", "text"]) == 0
    assert capsys.readouterr().out == "3\n"


def test_graph_dot_and_zeta(capsys):
    assert main(["graph", "--p", "2", "--q", "13", "--format", "dot"]) == 0
    assert capsys.readouterr().out.count("v0 -- v0") == 3
    assert main(["zeta", "--p", "2", "--q", "13"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["euler_char_times_2"] == -1
    assert data["denominator"] is not None


def test_hecke_command(capsys):
    assert main(["hecke", "--N", "37", "--ell", "2"]) == 0
    assert json.loads(capsys.readouterr().out) == {"level": 37, "ell": 2, "charpoly": ["0", "2", "1"]}
    assert main(["hecke", "--q", "13", "--N", "2", "--ell", "3", "--format", "text"]) == 0
    assert capsys.readouterr().out.startswith("T_3 on level 26:")


def test_out_file(tmp_path):
    path = tmp_path / "report.json"
    assert run(JobConfig("verify", p=3, q=13, N=1, fmt="json", out=str(path))) == 0
    data = json.loads(path.read_text())
    assert data["passed"] and data["parameters"]["p"] == 3


def test_seed_from_environment(tmp_path):
    env = {"ISOZETA_SEED": "7", "PATH": "", "PYTHONPATH": ":".join(sys.path)}
    r = cli("verify", "--p", "2", "--q", "13", "--format", "json", env=env)
    assert r.returncode == 0
    assert json.loads(r.stdout)["manifest"]["seed"] == 7
    r = cli("verify", "--p", "2", "--q", "13", env=dict(env, ISOZETA_SEED="x"))
    assert r.returncode == 2


def test_verbose_logging_is_json_lines():
    r = cli("-h")
    assert r.returncode == 0
    r = cli("verify", "--p", "2", "--q", "13", "-v")
    assert r.returncode == 0
    lines = [json.loads(line) for line in r.stderr.decode().splitlines()]
    assert any("verified p=2 q=13 N=1" in rec["message"] for rec in lines)


def test_internal_error_exit_code(monkeypatch, capsys):
    import isozeta.graph as graph_mod
    from isozeta.elliptic import ConsistencyError

    def broken(*args, **kwargs):
        raise ConsistencyError("isogeny target matches no vertex")

    monkeypatch.setattr(graph_mod, "build_graph", broken)
    assert main(["graph", "--p", "2", "--q", "13"]) == 3
    assert "isogeny target matches no vertex" in capsys.readouterr().err


def test_verification_failure_exit_code(monkeypatch, capsys):
    import isozeta.verify as verify_mod
    monkeypatch.setattr(verify_mod, "q_new_factor", lambda q, N, p: verify_mod.IntPolynomial((1, 1)))
    assert main(["verify", "--p", "2", "--q", "13"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_manifest_loading(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"tuples": [[5, 37, 1]], "grid": {"p": [2, 3], "q": [13], "N": [1, 2]}}))
    assert load_manifest(str(path)) == [(5, 37, 1), (2, 13, 1), (3, 13, 1), (3, 13, 2)]
    path.write_text("{}")
    with pytest.raises(UsageError):
        load_manifest(str(path))


def test_sweep_rejects_invalid_tuple(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"tuples": [[2, 13, 2]]}))
    assert main(["sweep", "--manifest", str(path)]) == 2


def test_sweep_is_identical_across_job_counts(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"grid": {"p": [2, 3, 5], "q": [13, 37], "N": [1, 2]}}))
    outs = []
    for jobs in ("1", "2"):
        out = tmp_path / f"sweep{jobs}.json"
        assert main(["sweep", "--manifest", str(path), "--jobs", jobs, "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["passed"]
    assert main(["sweep", "--manifest", str(path), "--format", "text"]) == 0
