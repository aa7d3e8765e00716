import csv
import json

import numpy as np
import pytest

from resonance_sizer import cli
from resonance_sizer.errors import QuadratureDivergence


def write_config(tmp_path, name="config.json", **overrides):
    data = {
        "centers": [[0, 0, 0], [1, 0, 0]],
        "strengths": [[0.0, 0.0], [0.0, 0.0]],
    }
    data.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def run(capsys, *argv):
    rc = cli.main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_validate_ok(tmp_path, capsys):
    path = write_config(tmp_path)
    rc, out, _ = run(capsys, "validate", "--config", path)
    assert rc == 0
    data = json.loads(out)
    assert data == {"valid": True, "n": 2, "min_distance": 1.0}


def test_validate_rejects_coincident(tmp_path, capsys):
    path = write_config(tmp_path, centers=[[0, 0, 0], [0, 0, 0]])
    rc, _, err = run(capsys, "validate", "--config", path)
    assert rc == 2
    assert "coincide" in err


def test_malformed_json_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    rc, _, err = run(capsys, "classify", "--config", str(path))
    assert rc == 2
    assert "malformed" in err


def test_missing_strengths_exits_2(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"centers": [[0, 0, 0], [1, 0, 0]]}))
    rc, _, err = run(capsys, "expand", "--config", str(path))
    assert rc == 2
    assert "strengths" in err


def test_expand_json(tmp_path, capsys):
    path = write_config(tmp_path)
    rc, out, _ = run(capsys, "expand", "--config", path)
    assert rc == 0
    data = json.loads(out)
    assert data["frequencies"] == pytest.approx([0.0, 2.0])
    assert data["effective_size"] == pytest.approx(2.0)
    assert data["terms"][0]["coefficients"] == [[0.0, 0.0], [0.0, 0.0], [-1.0, 0.0]]
    assert data["cancellation"]["cancelled_frequencies"] == []


def test_expand_csv_files(tmp_path, capsys):
    path = write_config(tmp_path)
    out_dir = tmp_path / "out"
    rc, _, _ = run(capsys, "expand", "--config", path, "--csv", "--out", str(out_dir))
    assert rc == 0
    with open(out_dir / "frequencies.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["term_index", "frequency"]
    assert [r[1] for r in rows[1:]] == ["0.0", "2.0"]
    with open(out_dir / "coefficients.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["term_index", "power", "re", "im"]
    assert len(rows) == 1 + 3 + 1  # header + deg-2 polynomial + constant
    values = [(int(r[0]), int(r[1]), float(r[2]), float(r[3])) for r in rows[1:]]
    assert values[2] == (0, 2, -1.0, 0.0)
    assert values[3] == (1, 0, -1.0, 0.0)


def test_classify_pair(tmp_path, capsys):
    path = write_config(tmp_path)
    rc, out, _ = run(capsys, "classify", "--config", path)
    assert rc == 0
    data = json.loads(out)
    assert data["classification"] == "Weyl"
    assert data["b_nu"] == pytest.approx(2.0)
    assert data["v"] == pytest.approx(2.0)
    assert data["is_generic"] is True
    assert data["counts"] is None


def test_classify_random_generic_n4(tmp_path, capsys):
    rng = np.random.default_rng(3)
    centers = rng.uniform(size=(4, 3)).tolist()
    path = write_config(tmp_path, centers=centers, strengths=[[0.1, 0.2]] * 4)
    rc, out, _ = run(capsys, "classify", "--config", path)
    assert rc == 0
    assert json.loads(out)["classification"] == "Weyl"


def test_count_csv(tmp_path, capsys):
    path = write_config(
        tmp_path, counting={"r_min": 5.0, "r_max": 20.0, "steps": 4}
    )
    rc, out, _ = run(capsys, "count", "--config", path)
    assert rc == 0
    rows = list(csv.reader(out.strip().splitlines()))
    assert rows[0] == ["R", "count", "winding_residual"]
    counts = [int(r[1]) for r in rows[1:]]
    assert len(counts) == 4
    assert counts == sorted(counts)
    assert all(float(r[2]) <= 1e-3 for r in rows[1:])


def test_count_requires_grid(tmp_path, capsys):
    path = write_config(tmp_path)
    rc, _, err = run(capsys, "count", "--config", path)
    assert rc == 2
    assert "counting" in err


def test_count_numerical_failure_exits_3(tmp_path, capsys, monkeypatch):
    path = write_config(
        tmp_path, counting={"r_min": 5.0, "r_max": 10.0, "steps": 2}
    )

    def boom(*args, **kwargs):
        raise QuadratureDivergence("no convergence", where=5.0)

    monkeypatch.setattr(cli, "counting_function", boom)
    rc, _, err = run(capsys, "count", "--config", path)
    assert rc == 3
    assert "5.0" in err


def test_resonances_p0_only(tmp_path, capsys):
    path = write_config(
        tmp_path,
        strengths=[[0.0, 1.0], [0.0, 2.0]],
        region={"re_min": 0.0, "re_max": 30.0, "im_min": -1.0, "im_max": 1.0},
    )
    rc, out, _ = run(capsys, "resonances", "--config", path, "--p0-only")
    assert rc == 0
    rows = json.loads(out)["resonances"]
    assert len(rows) == 2
    assert rows[0]["re"] == pytest.approx(4 * np.pi, abs=1e-8)
    assert rows[1]["re"] == pytest.approx(8 * np.pi, abs=1e-8)
    assert all(abs(r["im"]) <= 1e-8 for r in rows)


def test_resonances_full_csv(tmp_path, capsys):
    path = write_config(
        tmp_path,
        region={"re_min": 0.0, "re_max": 8.0, "im_min": -3.0, "im_max": 0.0},
    )
    rc, out, _ = run(capsys, "resonances", "--config", path, "--csv")
    assert rc == 0
    rows = list(csv.reader(out.strip().splitlines()))
    assert rows[0] == ["re", "im", "multiplicity", "residual", "cluster"]
    assert len(rows) > 1
    for row in rows[1:]:
        z = complex(float(row[0]), float(row[1]))
        assert abs(z**2 + np.exp(2j * z)) <= 1e-8


def test_resonances_empty_region(tmp_path, capsys):
    path = write_config(
        tmp_path,
        region={"re_min": 100.0, "re_max": 101.0, "im_min": 100.0, "im_max": 101.0},
    )
    rc, out, _ = run(capsys, "resonances", "--config", path)
    assert rc == 0
    assert json.loads(out)["resonances"] == []


def test_resonances_requires_region(tmp_path, capsys):
    path = write_config(tmp_path)
    rc, _, err = run(capsys, "resonances", "--config", path)
    assert rc == 2
    assert "region" in err


def test_scan_reproducible(capsys):
    rc1, out1, _ = run(capsys, "scan", "--n", "3", "--trials", "20", "--seed", "9")
    rc2, out2, _ = run(capsys, "scan", "--n", "3", "--trials", "20", "--seed", "9")
    assert rc1 == rc2 == 0
    assert out1 == out2
    data = json.loads(out1)
    assert data["fraction_generic"] == 1.0


def test_scan_empty(capsys):
    rc, out, _ = run(capsys, "scan", "--n", "3", "--trials", "0")
    assert rc == 0
    data = json.loads(out)
    assert data["fraction_generic"] is None
    assert data["trials"] == 0


def test_scan_rejects_single_center(capsys):
    rc, _, err = run(capsys, "scan", "--n", "1", "--trials", "5")
    assert rc == 2
    assert "2" in err


def test_scan_rejects_oversized(capsys):
    rc, _, _ = run(capsys, "scan", "--n", "11", "--trials", "1")
    assert rc == 2
