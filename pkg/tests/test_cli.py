"""Command-line interface: subcommands, wire formats, config, determinism."""

import json
import math

import numpy as np
import pytest

from lieball.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gauge_command(capsys):
    code, out, _ = run_cli(capsys, "gauge", "--z", "0.6,0;0,0.5;0,0")
    assert code == 0
    data = json.loads(out)
    assert data["class"] == "exterior"
    assert data["gauge"] == pytest.approx(1.21, abs=1e-12)


def test_theta_and_inverse_roundtrip(capsys):
    code, out, _ = run_cli(capsys, "theta", "--x", "0.5,0,0", "--v", "0,0.41197960825054114,0")
    assert code == 0
    z = json.loads(out)
    assert z["re"] == pytest.approx([0.4, 0, 0], abs=1e-12)
    assert z["im"] == pytest.approx([0, 0.4, 0], abs=1e-12)
    zarg = ";".join(f"{r},{i}" for r, i in zip(z["re"], z["im"]))
    code, out, _ = run_cli(capsys, "theta-inv", "--z", zarg)
    assert code == 0
    tv = json.loads(out)
    assert tv["x"] == pytest.approx([0.5, 0, 0], abs=1e-10)
    assert tv["v"] == pytest.approx([0, 0.41197960825054114, 0], abs=1e-10)


def test_convert_sphere_golden(capsys):
    r = 0.75 * math.atanh(0.5)
    code, out, _ = run_cli(capsys, "convert-sphere", "--c", "0.5,0,0", "--r", str(r))
    assert code == 0
    data = json.loads(out)
    assert data["c_e"] == pytest.approx([0.4, 0, 0], abs=1e-12)
    assert data["r_e"] == pytest.approx(0.4, abs=1e-12)
    code, out, _ = run_cli(capsys, "convert-sphere", "--c-e", "0.4,0,0", "--r-e", "0.4")
    data = json.loads(out)
    assert data["c"] == pytest.approx([0.5, 0, 0], abs=1e-12)
    assert data["r"] == pytest.approx(r, abs=1e-12)


def test_sphere_conversions(capsys):
    code, out, _ = run_cli(capsys, "sphere", "--z", "0.4,0;0,0.4;0,0")
    sphere = json.loads(out)
    assert sphere["center"] == pytest.approx([0.4, 0, 0])
    assert sphere["radius_vector"] == pytest.approx([0, 0.4, 0])
    code, out, _ = run_cli(
        capsys, "sphere", "--center", "0.4,0,0", "--radius-vector", "0,0.4,0", "--to", "tangent"
    )
    assert code == 0
    tv = json.loads(out)
    assert tv["x"] == pytest.approx([0.5, 0, 0], abs=1e-10)
    code, out, _ = run_cli(capsys, "sphere", "--x", "0.5,0,0", "--v", "0,0.41197960825054114,0")
    sphere = json.loads(out)
    assert sphere["center"] == pytest.approx([0.4, 0, 0], abs=1e-12)


def test_motion_on_point_sphere_tangent(capsys):
    code, out, _ = run_cli(capsys, "motion", "--a", "0.5,0,0", "--point", "0,0;0,-0.5;0,0")
    assert code == 0
    z = json.loads(out)
    assert z["re"] == pytest.approx([0.4, 0, 0], abs=1e-12)
    assert z["im"] == pytest.approx([0, 0.4, 0], abs=1e-12)
    code, out, _ = run_cli(
        capsys,
        "motion",
        "--a",
        "0.5,0,0",
        "--sphere-center",
        "0.4,0,0",
        "--sphere-radius-vector",
        "0,0.4,0",
    )
    sphere = json.loads(out)
    assert sphere["center"] == pytest.approx([0, 0, 0], abs=1e-12)
    assert sphere["radius_vector"] == pytest.approx([0, -0.5, 0], abs=1e-12)
    code, out, _ = run_cli(capsys, "motion", "--a", "0.5,0,0", "--x", "0.5,0,0", "--v", "0,0.3,0")
    tv = json.loads(out)
    assert tv["x"] == pytest.approx([0, 0, 0], abs=1e-12)
    assert tv["v"] == pytest.approx([0, 0.4, 0], abs=1e-12)


def test_motion_json_input(capsys):
    motion = {"orthogonal_part": [-1, 0, 0, -1], "a": [0, 0], "n": 2}
    code, out, _ = run_cli(
        capsys, "motion", "--motion-json", json.dumps(motion), "--point", "0.3,0.1"
    )
    assert code == 0
    z = json.loads(out)
    assert z["re"] == pytest.approx([0.3, 0.1], abs=1e-15)


def test_metric_command(capsys):
    code, out, _ = run_cli(capsys, "metric", "--x", "0,0,0", "--v", "0,0,0")
    data = json.loads(out)
    np.testing.assert_allclose(np.array(data["matrix"]), np.eye(6), atol=0)


def test_geodesic_csv(capsys):
    code, out, _ = run_cli(
        capsys,
        "geodesic",
        "--x", "0,0,0", "--v", "0,0,0",
        "--xdot", "0,0,0", "--vdot", "0,0,1",
        "--length", "0.5", "--steps", "3",
        "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split(",")[:4] == ["x1", "x2", "x3", "v1"]
    assert len(lines) == 5  # header + start + 3 steps


def test_geodesic_jsonl_roundtrip_and_monotone_fiber(capsys):
    code, out, _ = run_cli(
        capsys,
        "geodesic",
        "--x", "0,0,0", "--v", "0,0,0",
        "--xdot", "0,0,0", "--vdot", "0,1,0",
        "--length", "0.5", "--steps", "10",
    )
    assert code == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert len(rows) == 11
    heights = [row["v"][1] for row in rows]
    assert all(b > a for a, b in zip(heights, heights[1:]))
    for row in rows:
        assert np.abs(row["x"]).max() <= 1e-6
    reparsed = json.dumps(rows)
    assert json.loads(reparsed) == rows


def test_verify_suite_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "verify", "qratio", "--trials", "50", "--seed", "7")
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True and report["suite"] == "qratio"


def test_verify_determinism_inprocess(capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run_cli(
            capsys, "verify", "roundtrip", "--trials", "25", "--seed", "9"
        )
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_domain_error_exit_1(capsys):
    code, _, err = run_cli(capsys, "theta", "--x", "2,0,0", "--v", "0,0,0")
    assert code == 1
    assert "error" in err


def test_config_file_and_env(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "lieball.cfg"
    cfg.write_text("# defaults\nn=3\ntol=1e-9\ntrials=10\nseed=4\nformat=json\n")
    code, out, _ = run_cli(capsys, "--config", str(cfg), "verify", "qratio")
    assert code == 0
    assert json.loads(out)["trials"] == 10
    monkeypatch.setenv("LIEBALL_CONFIG", str(cfg))
    code, out, _ = run_cli(capsys, "verify", "qratio")
    assert code == 0
    assert json.loads(out)["seed"] == 4
