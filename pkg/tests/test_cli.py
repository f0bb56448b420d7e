"""Command-line front end: exit codes, determinism, file flows."""

import json
import subprocess
import sys

from torelli_lab.cli import main
from torelli_lab.surfaces import make_with_I2, save_surface


def read_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def without_timestamp(path):
    data = read_json(path)
    data.pop("timestamp", None)
    return data


def test_generate_writes_surface(tmp_path):
    out = tmp_path / "s.json"
    assert main(["generate", "--h", "3", "--seed", "1", "-o", str(out)]) == 0
    data = read_json(out)
    assert data["dL"] == 4 and len(data["g4"]) == 17


def test_generate_gate_is_usage_error(tmp_path, capsys):
    assert main(["generate", "--h", "2", "-o", str(tmp_path / "x.json")]) == 2
    assert "error:usage" in capsys.readouterr().err


def test_generate_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["generate", "--h", "3", "--seed", "9", "-o", str(a)])
    main(["generate", "--h", "3", "--seed", "9", "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_generate_with_i2_points(tmp_path):
    out = tmp_path / "s.json"
    assert main(["generate", "--h", "3", "--seed", "1", "--i2", "0,1",
                 "-o", str(out)]) == 0
    rep = tmp_path / "r.json"
    assert main(["analyze", str(out), "-o", str(rep)]) == 0
    data = read_json(rep)
    assert data["fibers"]["I2_count"] >= 2
    assert data["genericity"]["is_general"] is False
    assert "c" in data["genericity"]["failed_clauses"]


def test_analyze_reports_invariants(tmp_path):
    surf = tmp_path / "s.json"
    main(["generate", "--h", "3", "--seed", "2", "-o", str(surf)])
    rep = tmp_path / "r.json"
    assert main(["analyze", str(surf), "-o", str(rep)]) == 0
    data = read_json(rep)
    assert data["invariants"]["N"] == 38
    assert data["ramification"]["total_degree"] == 38
    assert data["genericity"]["is_general"] is True
    assert data["schottky_degree_ok"] is True


def test_analyze_determinism_modulo_timestamp(tmp_path):
    surf = tmp_path / "s.json"
    main(["generate", "--h", "3", "--seed", "2", "-o", str(surf)])
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["analyze", str(surf), "-o", str(a)])
    main(["analyze", str(surf), "-o", str(b)])
    assert without_timestamp(a) == without_timestamp(b)


def test_analyze_isotrivial_exits_one(tmp_path, capsys):
    # g4 = 3u^2, g6 = u^3 with u of degree 8 makes Delta identically zero
    from fractions import Fraction
    from torelli_lab.binforms import poly_mul, poly_strip
    u = poly_strip([Fraction(1), Fraction(1)])
    u2, u3 = poly_mul(u, u), poly_mul(poly_mul(u, u), u)
    data = {
        "q": 0, "dL": 4,
        "g4": [str(3 * c) for c in u2] + ["0"] * (17 - len(u2)),
        "g6": [str(c) for c in u3] + ["0"] * (25 - len(u3)),
    }
    path = tmp_path / "iso.json"
    path.write_text(json.dumps(data))
    assert main(["analyze", str(path)]) == 1
    assert "isotrivial" in capsys.readouterr().err


def test_ivhs_recover_flow(tmp_path):
    surf = tmp_path / "s.json"
    main(["generate", "--h", "3", "--seed", "3", "-o", str(surf)])
    pres = tmp_path / "ivhs.json"
    truth = tmp_path / "truth.json"
    assert main(["ivhs", str(surf), "--seed", "4", "--emit-truth", str(truth),
                 "-o", str(pres)]) == 0
    assert truth.exists()
    tdata = read_json(truth)
    assert len(tdata["points"]) == 38
    geom = tmp_path / "geom.json"
    assert main(["recover", str(pres), "--seed", "4", "-o", str(geom)]) == 0
    gdata = read_json(geom)
    assert gdata["status"] == "ok"
    assert gdata["quadric_dim"] == 1
    assert gdata["min_confidence"] > 0.999


def test_ivhs_rejects_non_general_surface(tmp_path, capsys):
    s = make_with_I2(3, [0], seed=1)
    surf = tmp_path / "i2.json"
    save_surface(s, surf)
    assert main(["ivhs", str(surf), "-o", str(tmp_path / "p.json")]) == 1
    assert "error:" in capsys.readouterr().err


def test_roundtrip_command(tmp_path):
    rep = tmp_path / "rt.json"
    assert main(["roundtrip", "--h", "3", "--trials", "2", "--seed", "7",
                 "-o", str(rep)]) == 0
    data = read_json(rep)
    assert data["summary"]["all_ok"] is True
    assert data["summary"]["quadric_dims"] == [1]
    assert [t["seed"] for t in data["trials"]] == [7, 8]
    assert all(t["max_chordal"] < 1e-6 for t in data["trials"])


def test_roundtrip_corrupt_span_reports_stage_error(tmp_path):
    rep = tmp_path / "rt.json"
    code = main(["roundtrip", "--h", "3", "--trials", "1", "--seed", "1",
                 "--corrupt-span", "-o", str(rep)])
    assert code == 1
    data = read_json(rep)
    assert data["summary"]["all_ok"] is False
    assert data["trials"][0]["status"] == "error:extract"


def test_roundtrip_thread_determinism(tmp_path, monkeypatch):
    serial, parallel = tmp_path / "a.json", tmp_path / "b.json"
    monkeypatch.setenv("TORELLI_LAB_THREADS", "1")
    main(["roundtrip", "--h", "3", "--trials", "3", "--seed", "11",
          "-o", str(serial)])
    monkeypatch.setenv("TORELLI_LAB_THREADS", "3")
    main(["roundtrip", "--h", "3", "--trials", "3", "--seed", "11",
          "-o", str(parallel)])
    da, db = without_timestamp(serial), without_timestamp(parallel)
    for trial_a, trial_b in zip(da["trials"], db["trials"]):
        trial_a.pop("stage_timings_ms")
        trial_b.pop("stage_timings_ms")
    assert da == db


def test_plumb_verify_low_order(tmp_path):
    rep = tmp_path / "p2.json"
    assert main(["plumb-verify", "--order", "2", "--trials", "5",
                 "-o", str(rep)]) == 0
    assert read_json(rep)["status"] == "ok"


def test_plumb_verify_command(tmp_path):
    rep = tmp_path / "p.json"
    assert main(["plumb-verify", "--trials", "10", "-o", str(rep)]) == 0
    data = read_json(rep)
    assert data["status"] == "ok"
    assert set(data["identities"]) == {
        "closed_forms", "leading_term", "residue_term", "linearity",
        "proportionality"}
    assert all(v["failures"] == 0 for v in data["identities"].values())
    assert data["residue_audit"]


def test_oracle_command_modes(tmp_path):
    built = tmp_path / "b.json"
    assert main(["oracle", "--mode", "built", "-o", str(built)]) == 0
    data = read_json(built)
    assert data["oracle_factors"] == 3 and data["factor_sets_agree"]
    generic = tmp_path / "g.json"
    assert main(["oracle", "--mode", "generic", "-o", str(generic)]) == 0
    data = read_json(generic)
    assert data["oracle_factors"] == 0
    assert data["extractor_status"].startswith("error")


def test_module_entrypoint_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "torelli_lab", "plumb-verify", "--trials", "2"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "ok"
