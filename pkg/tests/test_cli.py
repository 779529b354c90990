import json
import subprocess
import sys


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "thetaschur.cli"] + list(args),
                          capture_output=True, text=True)


def test_enumerate_counts():
    r = run_cli("enumerate", "--set", "xi", "--n", "1", "--d", "1",
                "--format", "json")
    assert r.returncode == 0
    assert len(json.loads(r.stdout)) == 5
    r = run_cli("enumerate", "--set", "ipi", "--n", "1", "--d", "2",
                "--format", "json")
    assert len(json.loads(r.stdout)) == 4


def test_mul_idempotents():
    r = run_cli("mul", "--family", "schur-j", "--n", "1", "--d", "1",
                "--left", "[[1,0,0],[0,1,0],[0,0,1]]",
                "--right", "[[1,0,0],[0,1,0],[0,0,1]]", "--format", "json")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert len(data["terms"]) == 1
    r = run_cli("mul", "--family", "schur-j", "--n", "1", "--d", "1",
                "--left", "[[1,0,0],[0,1,0],[0,0,1]]",
                "--right", "[[0,0,0],[0,3,0],[0,0,0]]", "--format", "json")
    assert json.loads(r.stdout)["terms"] == []


def test_canonical_cache_bit_identical(tmp_path):
    args = ("canonical", "--family", "schur-j", "--n", "1", "--d", "1",
            "--matrix", "[[0,0,1],[0,1,0],[1,0,0]]",
            "--cache-dir", str(tmp_path), "--format", "json")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.returncode == 0 and second.returncode == 0
    assert first.stdout == second.stdout
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert len(manifest) == 1
    data = json.loads(first.stdout)
    assert any(t["coeff"] == [[-1, 1]] for t in data["terms"])


def test_element_round_trip_through_cli_json():
    from thetaschur import schur as sc
    r = run_cli("bar", "--family", "schur-j", "--n", "1", "--d", "1",
                "--matrix", "[[0,0,1],[0,1,0],[1,0,0]]", "--format", "json")
    x = sc.Element.from_json(json.loads(r.stdout))
    assert not x.is_zero()


def test_validation_exit_code():
    r = run_cli("mul", "--family", "schur-j", "--n", "1", "--d", "1",
                "--left", "[[0,1],[1,0]]", "--right", "[[0,1],[1,0]]")
    assert r.returncode == 2
    r = run_cli("mul", "--family", "schur-j", "--n", "1", "--d", "1",
                "--left", "nonsense", "--right", "[[1]]")
    assert r.returncode == 2


def test_bad_label_exit_code():
    # well-formed matrix that is not a legal label: validation failure
    r = run_cli("monomial", "--family", "schur-j", "--n", "1", "--d", "1",
                "--matrix", "[[5,0,0],[0,1,0],[0,0,5]]")
    assert r.returncode == 2


def test_table_csv():
    r = run_cli("table", "--n", "1", "--d", "1", "--q", "3",
                "--kind", "orbits")
    assert r.returncode == 0
    lines = [l for l in r.stdout.strip().splitlines() if l]
    assert lines[0].startswith("matrix")
    assert len(lines) == 6  # header + 5 orbits


def test_verify_suite_exit_codes():
    r = run_cli("verify", "relations", "--n", "1", "--d", "1",
                "--window", "-1", "1", "--format", "json")
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["pass"] and rep["total"] > 0


def test_act_command():
    r = run_cli("act", "--n", "1", "--d", "1",
                "--matrix", "[[0,0,0],[1,1,1],[0,0,0]]", "--word", "1",
                "--format", "json")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["terms"] and data["terms"][0]["word"] == [2]
