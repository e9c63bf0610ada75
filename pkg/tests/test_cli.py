"""End-to-end command-line behavior on temp directories."""

import json

import numpy as np
import pytest

from andwp.cli import run
from andwp.denoising import FilterParams, denoise
from andwp.pgm import image_to_mask, read_pgm, write_pgm


@pytest.fixture
def clean_path(tmp_path):
    img = np.full((48, 48), 128, np.uint8)
    img[12:36, 12:36] = 60
    img[20:28, 20:28] = 190
    path = tmp_path / "clean.pgm"
    write_pgm(path, img)
    return path


def test_add_noise_writes_noisy_and_mask(tmp_path, clean_path):
    out = tmp_path / "noisy.pgm"
    mask = tmp_path / "mask.pgm"
    code = run([
        "add-noise", "--in", str(clean_path), "--out", str(out),
        "--mask", str(mask), "--kind", "random", "--p", "0.3", "--seed", "1",
    ])
    assert code == 0
    clean = read_pgm(clean_path)
    noisy = read_pgm(out)
    truth = image_to_mask(read_pgm(mask))
    np.testing.assert_array_equal(truth, noisy != clean)
    assert 0.2 < truth.mean() < 0.4


def test_add_noise_default_mask_path(tmp_path, clean_path):
    out = tmp_path / "noisy.pgm"
    assert run(["add-noise", "--in", str(clean_path), "--out", str(out), "--p", "0.2"]) == 0
    assert (tmp_path / "noisy.mask.pgm").exists()


def test_add_noise_p_zero_identity(tmp_path, clean_path):
    out = tmp_path / "noisy.pgm"
    mask = tmp_path / "mask.pgm"
    code = run([
        "add-noise", "--in", str(clean_path), "--out", str(out), "--mask", str(mask),
        "--p", "0",
    ])
    assert code == 0
    assert out.read_bytes() == clean_path.read_bytes()
    assert not image_to_mask(read_pgm(mask)).any()


def test_add_noise_seed_env_fallback(tmp_path, clean_path, monkeypatch):
    out1, out2, out3 = (tmp_path / n for n in ("a.pgm", "b.pgm", "c.pgm"))
    monkeypatch.setenv("ANDWP_SEED", "7")
    run(["add-noise", "--in", str(clean_path), "--out", str(out1), "--p", "0.5"])
    run(["add-noise", "--in", str(clean_path), "--out", str(out2), "--p", "0.5"])
    # explicit flag overrides the environment
    run(["add-noise", "--in", str(clean_path), "--out", str(out3), "--p", "0.5",
         "--seed", "8"])
    assert out1.read_bytes() == out2.read_bytes()
    assert out1.read_bytes() != out3.read_bytes()


def test_denoise_round_trip(tmp_path, clean_path):
    noisy = tmp_path / "noisy.pgm"
    run(["add-noise", "--in", str(clean_path), "--out", str(noisy), "--p", "0.25",
         "--seed", "3"])
    restored = tmp_path / "restored.pgm"
    report = tmp_path / "r.json"
    detected = tmp_path / "det.pgm"
    code = run([
        "denoise", "--in", str(noisy), "--out", str(restored),
        "--iterations", "4", "--threshold", "510", "--decay", "0.8",
        "--report", str(report), "--detected-out", str(detected),
    ])
    assert code == 0
    data = json.loads(report.read_text())
    assert data["params"] == {"iterations": 4, "threshold": 510.0, "decay": 0.8}
    assert len(data["iterations"]) == 4
    assert data["iterations"][1]["threshold"] == pytest.approx(408.0)
    # The detected mask records every pixel the filter ever rewrote.  A pixel
    # can be rewritten twice and land back on its input value, so the mask is
    # a superset of the final differences and must match the library's own.
    result = denoise(read_pgm(noisy), FilterParams(4, 510.0, 0.8))
    mask = image_to_mask(read_pgm(detected))
    np.testing.assert_array_equal(mask, result.ever_changed)
    changed = read_pgm(noisy) != read_pgm(restored)
    assert np.all(mask[changed])


def test_denoise_rejects_bad_params(tmp_path, clean_path, capsys):
    code = run([
        "denoise", "--in", str(clean_path), "--out", str(tmp_path / "x.pgm"),
        "--iterations", "0",
    ])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_missing_input_fails_cleanly(tmp_path, capsys):
    code = run([
        "denoise", "--in", str(tmp_path / "absent.pgm"), "--out", str(tmp_path / "y.pgm"),
    ])
    assert code == 1
    err = capsys.readouterr().err
    assert err.count("\n") == 1  # one-line diagnostic


def test_tune_writes_params_and_trace(tmp_path, clean_path):
    noisy = tmp_path / "noisy.pgm"
    run(["add-noise", "--in", str(clean_path), "--out", str(noisy), "--p", "0.3",
         "--seed", "5"])
    restored = tmp_path / "restored.pgm"
    report = tmp_path / "tune.json"
    code = run([
        "tune", "--in", str(noisy), "--reference", str(clean_path),
        "--out", str(restored), "--report", str(report),
        "--swarm-size", "4", "--pso-iterations", "3", "--seed", "2",
    ])
    assert code == 0
    data = json.loads(report.read_text())
    assert 3 <= data["params"]["iterations"] <= 6
    assert 300.0 <= data["params"]["threshold"] <= 1000.0
    assert 0.6 <= data["params"]["decay"] <= 0.95
    assert len(data["history_db"]) == 4
    assert data["psnr_restored_db"] > data["psnr_noisy_db"]


def test_evaluate_report(tmp_path, clean_path):
    noisy = tmp_path / "noisy.pgm"
    mask = tmp_path / "mask.pgm"
    run(["add-noise", "--in", str(clean_path), "--out", str(noisy), "--mask", str(mask),
         "--p", "0.3", "--seed", "9"])
    restored = tmp_path / "restored.pgm"
    run(["denoise", "--in", str(noisy), "--out", str(restored)])
    report = tmp_path / "eval.json"
    code = run([
        "evaluate", "--clean", str(clean_path), "--noisy", str(noisy),
        "--restored", str(restored), "--mask", str(mask), "--report", str(report),
    ])
    assert code == 0
    data = json.loads(report.read_text())
    for key in ("psnr_noisy_db", "psnr_restored_db", "miss", "false",
                "sensitivity_pct", "specificity_pct"):
        assert key in data
    assert data["psnr_restored_db"] > data["psnr_noisy_db"]
    assert data["params"] is None


def test_benchmark_csv_shape(tmp_path, clean_path):
    out_dir = tmp_path / "bench"
    code = run([
        "benchmark", "--clean", str(clean_path), "--out-dir", str(out_dir),
        "--densities", "0.2,0.4", "--seed", "4",
        "--swarm-size", "3", "--pso-iterations", "2",
    ])
    assert code == 0
    lines = (out_dir / "benchmark.csv").read_text().splitlines()
    assert lines[0] == "density,psnr_noisy,psnr_restored,miss,false,sen,spc"
    assert len(lines) == 3
    assert lines[1].startswith("0.2,")
    assert lines[2].startswith("0.4,")
    for line in lines[1:]:
        assert len(line.split(",")) == 7
    data = json.loads((out_dir / "benchmark.json").read_text())
    assert data["seed"] == 4
    assert [row["density"] for row in data["rows"]] == [0.2, 0.4]


def test_benchmark_rejects_bad_density(tmp_path, clean_path, capsys):
    code = run([
        "benchmark", "--clean", str(clean_path), "--out-dir", str(tmp_path / "b"),
        "--densities", "0.2,1.5",
    ])
    assert code == 1
    assert "density" in capsys.readouterr().err


def test_inputs_never_mutated(tmp_path, clean_path):
    before = clean_path.read_bytes()
    noisy = tmp_path / "noisy.pgm"
    run(["add-noise", "--in", str(clean_path), "--out", str(noisy), "--p", "0.3"])
    run(["denoise", "--in", str(noisy), "--out", str(tmp_path / "r.pgm")])
    assert clean_path.read_bytes() == before
