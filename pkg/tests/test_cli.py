"""CLI behavior: flags, files, exit codes, determinism."""

import json

import pytest

import minres.cli as cli
from minres.errors import NoConvergence

PAIR = ["--p-plus", "1/(1+u^2)+0.5", "--p-minus", "0.5/(1+u^2)-0.5"]
PARALLEL = ["--p-plus", "newton:1,0", "--p-minus", "zero"]


def run(argv):
    return cli.main(argv)


def test_solve_planar_stdout(capsys):
    rc = run(["solve", "--dim", "2", "--T", "2", "--H", "1"] + PAIR)
    assert rc == 0
    out = capsys.readouterr().out
    assert "FrontTrapezium" in out and "R_total=2.5" in out


def test_solve_report_schema(tmp_path):
    report = tmp_path / "r.json"
    rc = run(["solve", "--dim", "2", "--T", "2", "--H", "1"] + PAIR
             + ["--out-report", str(report)])
    assert rc == 0
    data = json.loads(report.read_text())
    assert data["schema"] == "1"
    assert data["tool"]["name"] == "minres"
    assert data["case"] == "FrontTrapezium"
    assert data["R_total"] == pytest.approx(2.5)
    assert data["problem"]["dim"] == 2
    assert data["U_minus"] is None
    assert data["timing_ms"] is None
    assert data["validation"]["p_plus"]["passed"]
    # lossless round trip
    assert json.loads(json.dumps(data)) == data


def test_solve_flat_disk_parallel(tmp_path):
    report = tmp_path / "r.json"
    rc = run(["solve", "--dim", "3", "--T", "1", "--H", "0"] + PARALLEL
             + ["--out-report", str(report)])
    assert rc == 0
    data = json.loads(report.read_text())
    assert data["case"] == "FlatDisk"
    assert data["R_total"] == pytest.approx(1.0)


def test_solve_classical_d3(tmp_path):
    report = tmp_path / "r.json"
    rc = run(["solve", "--dim", "3", "--T", "1",
              "--H", "1.0845482255552044"] + PARALLEL
             + ["--out-report", str(report)])
    assert rc == 0
    data = json.loads(report.read_text())
    assert data["U_plus"] == pytest.approx(2.0, rel=1e-8)
    assert data["R_total"] == pytest.approx(0.34647228391116736, rel=1e-8)


def test_profile_csv_format(tmp_path):
    csv_path = tmp_path / "p.csv"
    rc = run(["solve", "--dim", "2", "--T", "2", "--H", "1"] + PAIR
             + ["--out-profile", str(csv_path)])
    assert rc == 0
    lines = csv_path.read_text().strip().split("\n")
    assert lines[0] == "t,x_front,x_rear,u_front,u_rear"
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    last = lines[-1].split(",")
    assert float(last[0]) == pytest.approx(2.0)
    assert float(last[1]) == pytest.approx(1.0)  # front reaches H


def test_svg_written(tmp_path):
    svg_path = tmp_path / "p.svg"
    rc = run(["solve", "--dim", "2", "--T", "2", "--H", "1"] + PAIR
             + ["--out-svg", str(svg_path)])
    assert rc == 0
    text = svg_path.read_text()
    assert text.startswith("<svg")
    assert 'viewBox="0 0 800 600"' in text
    assert "FrontTrapezium" in text


def test_determinism_byte_identical(tmp_path):
    pairs = []
    for tag in ("a", "b"):
        report = tmp_path / f"r{tag}.json"
        csv_path = tmp_path / f"p{tag}.csv"
        svg_path = tmp_path / f"s{tag}.svg"
        rc = run(["solve", "--dim", "3", "--T", "1", "--H", "0.8"] + PAIR
                 + ["--out-report", str(report),
                    "--out-profile", str(csv_path),
                    "--out-svg", str(svg_path)])
        assert rc == 0
        pairs.append((report.read_bytes(), csv_path.read_bytes(),
                      svg_path.read_bytes()))
    assert pairs[0] == pairs[1]


def test_timing_flag_populates_field(tmp_path):
    report = tmp_path / "r.json"
    rc = run(["solve", "--dim", "2", "--T", "2", "--H", "1"] + PAIR
             + ["--out-report", str(report), "--timing"])
    assert rc == 0
    data = json.loads(report.read_text())
    assert isinstance(data["timing_ms"], float) and data["timing_ms"] > 0.0


def test_exit_2_on_bad_expression(capsys):
    rc = run(["solve", "--dim", "2", "--T", "2", "--H", "1",
              "--p-plus", "1+*2", "--p-minus", "zero"])
    assert rc == 2
    err = capsys.readouterr().err.strip()
    payload = json.loads(err)
    assert payload["error"] == "ExprSyntaxError"
    assert payload["offset"] == 2
    assert "\n" not in err


def test_exit_2_on_zero_front(capsys):
    rc = run(["solve", "--dim", "2", "--T", "2", "--H", "1",
              "--p-plus", "zero", "--p-minus", "zero"])
    assert rc == 2
    payload = json.loads(capsys.readouterr().err.strip())
    assert payload["error"] == "InvalidParameter"


def test_exit_2_on_swapped_pair(capsys):
    rc = run(["solve", "--dim", "2", "--T", "2", "--H", "1",
              "--p-plus", "0.5/(1+u^2)-0.5", "--p-minus", "1/(1+u^2)+0.5"])
    assert rc == 2
    payload = json.loads(capsys.readouterr().err.strip())
    assert payload["error"] == "AssumptionViolated"


def test_exit_2_on_usage_error(capsys):
    rc = run(["solve", "--dim", "2"])  # missing required flags
    assert rc == 2
    payload = json.loads(capsys.readouterr().err.strip())
    assert payload["error"] == "UsageError"


def test_exit_3_on_solver_nonconvergence(capsys, monkeypatch):
    def explode(spec, n_samples=256):
        raise NoConvergence("synthetic", bracket=(0.0, 1.0), residual=1.0)

    monkeypatch.setattr(cli, "solve", explode)
    rc = run(["solve", "--dim", "2", "--T", "2", "--H", "1"] + PAIR)
    assert rc == 3
    payload = json.loads(capsys.readouterr().err.strip())
    assert payload["error"] == "NoConvergence"


def test_classify_line_format(capsys):
    rc = run(["classify", "--dim", "2", "--T", "2", "--H", "6"] + PAIR)
    assert rc == 0
    line = capsys.readouterr().out.strip()
    assert line == "DoubleTriangle h=3.000 thresholds=[1.000, 1.608, 2.608]"


def test_classify_flat_disk(capsys):
    rc = run(["classify", "--dim", "2", "--T", "2", "--H", "0"] + PAIR)
    assert rc == 0
    line = capsys.readouterr().out.strip()
    assert line.startswith("FlatDisk h=0.000")


def test_classify_fig2_label(capsys):
    rc = run(["classify", "--dim", "2", "--T", "2", "--H", "2"] + PAIR)
    assert rc == 0
    assert capsys.readouterr().out.startswith("FrontTriangle")


def test_classify_zero_rear_prints_inf(capsys):
    rc = run(["classify", "--dim", "2", "--T", "2", "--H", "3"] + PARALLEL)
    assert rc == 0
    line = capsys.readouterr().out.strip()
    assert "thresholds=[1.000, inf, inf]" in line


def test_classify_rejects_d3(capsys):
    rc = run(["classify", "--dim", "3", "--T", "1", "--H", "0.5"] + PAIR)
    assert rc == 2


def test_verify_passes(tmp_path, capsys):
    report = tmp_path / "v.json"
    rc = run(["verify", "--dim", "2", "--T", "2", "--H", "4"] + PAIR
             + ["--out-report", str(report)])
    assert rc == 0
    assert "certificates passed" in capsys.readouterr().out
    data = json.loads(report.read_text())
    assert data["oracle"]["passed"] is True
    front = data["oracle"]["brute_force"]["front"]
    assert front["gap"] <= 0.01 * data["R_total"]
    assert data["oracle"]["maximality"]["front"]["passed"]


def test_verify_classical_parallel(capsys):
    rc = run(["verify", "--dim", "3", "--T", "1", "--H", "0.55"] + PARALLEL)
    assert rc == 0
    assert "certificates passed" in capsys.readouterr().out


def test_verify_custom_grid(capsys):
    rc = run(["verify", "--dim", "2", "--T", "2", "--H", "1",
              "--grid", "100x200", "--maximality-samples", "32x64"] + PAIR)
    assert rc == 0


def test_verify_bad_grid_flag(capsys):
    rc = run(["verify", "--dim", "2", "--T", "2", "--H", "1",
              "--grid", "100by200"] + PAIR)
    assert rc == 2


def test_verify_check_profile_rejects_perturbed(tmp_path, capsys):
    """A hand-perturbed profile must fail certification with a witness."""
    # optimal front for this instance is a straight cone of slope 1;
    # tilt the two halves while keeping the endpoints
    bad = tmp_path / "bad.csv"
    rows = ["t,x_front,x_rear,u_front,u_rear"]
    n = 64
    for k in range(n + 1):
        t = 2.0 * k / n
        if t <= 1.0:
            x = 0.9 * t
        else:
            x = 0.9 + 1.1 * (t - 1.0)
        rows.append(f"{t},{x},0.0,,")
    bad.write_text("\n".join(rows) + "\n")
    rc = run(["verify", "--dim", "2", "--T", "2", "--H", "2"] + PAIR
             + ["--check-profile", str(bad)])
    assert rc == 4
    payload = json.loads(capsys.readouterr().err.strip())
    assert payload["error"] == "CertificateFailure"
    assert "witness" in payload
    assert payload["witness"]["t"] is not None


def test_verify_check_profile_accepts_optimal(tmp_path, capsys):
    """Round trip: solver CSV output re-checked through --check-profile."""
    csv_path = tmp_path / "good.csv"
    rc = run(["solve", "--dim", "2", "--T", "2", "--H", "2"] + PAIR
             + ["--out-profile", str(csv_path)])
    assert rc == 0
    rc2 = run(["verify", "--dim", "2", "--T", "2", "--H", "2"] + PAIR
              + ["--check-profile", str(csv_path)])
    assert rc2 == 0


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["--version"])
    assert exc.value.code == 0
    assert "minres" in capsys.readouterr().out
