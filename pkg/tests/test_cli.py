import json
import math

import numpy as np
import pytest

from lvthermo import cli


def read_csv(path):
    comments = []
    rows = []
    header = None
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.rstrip("\n")
            if line.startswith("#"):
                comments.append(line)
            elif header is None:
                header = line.split(",")
            else:
                rows.append(line.split(","))
    return comments, header, rows


def test_orbit_outputs(tmp_path):
    csv = tmp_path / "orbit.csv"
    summ = tmp_path / "orbit.json"
    rc = cli.main(["orbit", "--alpha", "1", "--h", "2.61", "--n-points",
                   "32", "--out", str(csv), "--summary-out", str(summ)])
    assert rc == 0
    comments, header, rows = read_csv(csv)
    assert comments[0] == "# schema_version: 1"
    assert comments[1] == "# command: orbit"
    cfg = json.loads(comments[2].removeprefix("# config: "))
    assert cfg["alpha"] == 1.0 and cfg["h"] == 2.61
    assert "out" not in cfg
    assert header == ["t", "x", "y"]
    assert len(rows) == 32
    summary = json.loads(summ.read_text())
    assert summary["mean_x"] == pytest.approx(1.0, abs=1e-6)
    assert summary["tau"] == pytest.approx(6.937049, abs=1e-5)


def test_contours_groups_by_level(tmp_path):
    out = tmp_path / "c.csv"
    assert cli.main(["contours", "--alpha", "1", "--h-list", "2.61,2.19",
                     "--n-points", "20", "--out", str(out)]) == 0
    _, header, rows = read_csv(out)
    assert header == ["h", "t", "x", "y"]
    hs = sorted({r[0] for r in rows})
    assert len(hs) == 2
    assert len(rows) == 40
    # each polyline closes on itself
    for hval in hs:
        pts = [(float(r[2]), float(r[3])) for r in rows if r[0] == hval]
        assert math.hypot(pts[0][0] - pts[-1][0],
                          pts[0][1] - pts[-1][1]) < 1e-6


def test_eos_csv(tmp_path):
    out = tmp_path / "eos.csv"
    assert cli.main(["eos", "--alphas", "1.0", "--offsets", "0.5,1.0",
                     "--out", str(out)]) == 0
    _, header, rows = read_csv(out)
    assert header[:3] == ["alpha", "h", "tau"]
    assert len(rows) == 2
    assert float(rows[0][1]) == pytest.approx(2.5)


def test_ssa_reproducible_bytes(tmp_path):
    args = ["ssa", "--alpha", "1", "--omega", "100", "--t-max", "2.0",
            "--seed", "5"]
    f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(args + ["--out", str(f1)]) == 0
    assert cli.main(args + ["--out", str(f2)]) == 0
    assert f1.read_bytes() == f2.read_bytes()
    assert cli.main(args + ["--seed", "6", "--out", str(f2)]) == 0
    assert f1.read_bytes() != f2.read_bytes()


def test_sde_requires_start(tmp_path):
    rc = cli.main(["sde", "--alpha", "1", "--epsilon", "0.01",
                   "--t-max", "0.1", "--seed", "0",
                   "--out", str(tmp_path / "s.csv")])
    assert rc == 2


def test_hdiff_csv(tmp_path):
    out = tmp_path / "hd.csv"
    assert cli.main(["hdiff", "--alpha", "1", "--n-grid", "10",
                     "--tol", "1e-8", "--out", str(out)]) == 0
    _, header, rows = read_csv(out)
    assert header == ["h", "b", "a", "pss"]
    b = [float(r[1]) for r in rows]
    assert all(x < y for x, y in zip(b, b[1:]))


def test_entropy_csv(tmp_path):
    out = tmp_path / "en.csv"
    assert cli.main(["entropy", "--alpha", "1", "--h", "2.61", "--n-times",
                     "3", "--quad-n", "64", "--tol", "1e-9",
                     "--out", str(out)]) == 0
    _, header, rows = read_csv(out)
    assert header == ["t", "S"]
    svals = [float(r[1]) for r in rows]
    assert max(svals) - min(svals) < 1e-4


def test_numerical_failure_exit_code(tmp_path, capsys):
    # h below the minimum raises inside the library; the CLI maps it to
    # exit 1 with the error name on stderr
    rc = cli.main(["orbit", "--alpha", "1", "--h", "1.5",
                   "--out", str(tmp_path / "x.csv")])
    assert rc == 1
    assert "EnergyBelowMinimum" in capsys.readouterr().err


def test_argument_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        cli.main(["orbit", "--alpha", "not-a-number"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-command"])
    assert exc.value.code == 2


def test_config_file_precedence(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"alpha": 1.0, "h": 2.61, "n_points": 8}))
    out1 = tmp_path / "o1.csv"
    assert cli.main(["orbit", "--config", str(cfg), "--out", str(out1),
                     "--summary-out", str(tmp_path / "s1.json")]) == 0
    _, _, rows = read_csv(out1)
    assert len(rows) == 8  # from the config file
    out2 = tmp_path / "o2.csv"
    assert cli.main(["orbit", "--config", str(cfg), "--n-points", "4",
                     "--out", str(out2),
                     "--summary-out", str(tmp_path / "s2.json")]) == 0
    _, _, rows2 = read_csv(out2)
    assert len(rows2) == 4  # flag wins over the file


def test_seventeen_digit_floats(tmp_path):
    out = tmp_path / "o.csv"
    assert cli.main(["orbit", "--alpha", "1", "--h", "2.61", "--n-points",
                     "4", "--out", str(out),
                     "--summary-out", str(tmp_path / "s.json")]) == 0
    _, _, rows = read_csv(out)
    # round-trip exactness: 17 significant digits reconstruct the double
    x = float(rows[1][1])
    assert f"{x:.17g}" == rows[1][1]


def test_check_subcommand_subset(capsys):
    rc = cli.main(["check", "--only", "master"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "master-equation-stationarity" in out
    assert "PASS" in out
    assert "mean-identity" not in out
