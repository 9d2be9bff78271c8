import csv
import json
import os

import numpy as np
import pytest

from cpsar.cli import main
from cpsar.formats import read_sarf

BASE_CONFIG = {
    "carrier_freq": 9.0e9,
    "bandwidth": 150.0e6,
    "num_subcarriers": 512,
    "num_range_cells": 96,
    "cp_len": 95,
    "prf": 256.0,
    "platform_velocity": 150.0,
    "platform_height": 5000.0,
    "antenna_length": 1.0,
    "aperture_time": 1.0,
    "swath_center_range": 7071.067811865475,
    "seed": 1,
}


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(BASE_CONFIG))
    return str(path)


def read_rows(path):
    with open(path) as f:
        return list(csv.DictReader(f))


def tree_bytes(root):
    out = {}
    for name in sorted(os.listdir(root)):
        with open(os.path.join(root, name), "rb") as f:
            out[name] = f.read()
    return out


def test_psf_outputs(config_file, tmp_path):
    out = str(tmp_path / "psf")
    assert main(["psf", "--config", config_file, "--out", out]) == 0
    rows = read_rows(os.path.join(out, "range_profile.csv"))
    branches = {r["branch"] for r in rows}
    assert branches == {"cp_ofdm", "lfm", "noise", "conventional_ofdm"}

    by_branch = {
        b: np.array([float(r["db"]) for r in rows if r["branch"] == b])
        for b in branches
    }
    peak_cell = int(np.argmax(by_branch["cp_ofdm"]))
    assert peak_cell == 48
    # leakage-free reconstruction: everything but the peak at the floor
    off = np.delete(by_branch["cp_ofdm"], peak_cell)
    assert off.max() < -250.0
    # correlation baselines keep ordinary sidelobes
    for b in ("lfm", "noise", "conventional_ofdm"):
        assert np.delete(by_branch[b], peak_cell).max() > -40.0

    for b in branches:
        assert os.path.exists(os.path.join(out, f"psf_{b}.pgm"))
    az_rows = read_rows(os.path.join(out, "azimuth_profile.csv"))
    assert {r["branch"] for r in az_rows} == branches


def test_psf_single_branch(config_file, tmp_path):
    out = str(tmp_path / "one")
    assert main(["psf", "--config", config_file, "--out", out,
                 "--branch", "cp_ofdm"]) == 0
    rows = read_rows(os.path.join(out, "range_profile.csv"))
    assert {r["branch"] for r in rows} == {"cp_ofdm"}


def test_psf_deterministic_rerun(config_file, tmp_path):
    out1 = str(tmp_path / "a")
    out2 = str(tmp_path / "b")
    os.environ["SAR_THREADS"] = "1"
    assert main(["psf", "--config", config_file, "--out", out1]) == 0
    os.environ["SAR_THREADS"] = "4"
    assert main(["psf", "--config", config_file, "--out", out2]) == 0
    os.environ.pop("SAR_THREADS")
    assert tree_bytes(out1) == tree_bytes(out2)


def test_rangeline_reproduces_prefix_study(config_file, tmp_path):
    out = str(tmp_path / "rl")
    assert main(["rangeline", "--config", config_file, "--out", out]) == 0

    def mse_of(name):
        rows = read_rows(os.path.join(out, name))
        truth = np.array([float(r["truth_amplitude"]) for r in rows])
        est = 10 ** (np.array([float(r["estimate_db"]) for r in rows]) / 20)
        est *= np.linalg.norm(truth) / np.linalg.norm(est)
        return np.mean((est - truth) ** 2), truth

    mse95, truth = mse_of("rangeline_cp95.csv")
    mse80, _ = mse_of("rangeline_cp80.csv")
    mse0, _ = mse_of("rangeline_cp0.csv")
    mse_conv, _ = mse_of("rangeline_conventional.csv")

    rows = read_rows(os.path.join(out, "rangeline_cp95.csv"))
    empty_db = [float(r["estimate_db"]) for r in rows
                if float(r["truth_amplitude"]) == 0.0]
    assert max(empty_db) < -250.0
    assert np.count_nonzero(truth) == 18

    # sufficient and nearly sufficient prefixes beat the correlation
    # receiver; no prefix at all is worse than it
    assert mse95 < 1e-12
    assert mse80 < mse_conv
    assert mse0 > mse_conv


def test_rangeline_rejects_bad_cp(config_file, tmp_path):
    assert main(["rangeline", "--config", config_file,
                 "--out", str(tmp_path / "x"), "--cp", "96"]) == 2


def test_image_tank_ordering(config_file, tmp_path):
    out = str(tmp_path / "img")
    assert main(["image", "--config", config_file, "--out", out]) == 0
    rows = {r["branch"]: float(r["mse"])
            for r in read_rows(os.path.join(out, "image_mse.csv"))}
    assert rows["cp_ofdm"] < rows["lfm"]
    assert rows["cp_ofdm"] < rows["noise"]
    raster = read_sarf(os.path.join(out, "image_cp_ofdm.sarf"))
    assert raster.shape == (256, 96)


def test_image_point_geometry(config_file, tmp_path):
    cfg = dict(BASE_CONFIG, scene="point")
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    out = str(tmp_path / "img")
    assert main(["image", "--config", str(path), "--out", out,
                 "--branch", "cp_ofdm"]) == 0
    img = read_sarf(os.path.join(out, "image_cp_ofdm.sarf"))
    row, col = np.unravel_index(np.argmax(np.abs(img)), img.shape)
    assert abs(row - 128) <= 1 and abs(col - 48) <= 1


def test_image_empty_scene(config_file, tmp_path):
    doc = {"scatterers": []}
    scene_path = tmp_path / "empty.json"
    scene_path.write_text(json.dumps(doc))
    cfg = dict(BASE_CONFIG, scene=str(scene_path))
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    out = str(tmp_path / "img")
    assert main(["image", "--config", str(path), "--out", out,
                 "--branch", "cp_ofdm"]) == 0
    img = read_sarf(os.path.join(out, "image_cp_ofdm.sarf"))
    assert np.all(img == 0)


def test_mse_cp_curve(config_file, tmp_path):
    out = str(tmp_path / "mse")
    assert main(["mse-cp", "--config", config_file, "--out", out,
                 "--trials", "20", "--cp", "0,48,95"]) == 0
    rows = read_rows(os.path.join(out, "mse_cp.csv"))
    mse = [float(r["mse"]) for r in rows]
    assert [int(r["cp_len"]) for r in rows] == [0, 48, 95]
    assert mse[0] > mse[1] > mse[2]
    assert mse[2] < 1e-18


def test_snr_gain_command(config_file, tmp_path):
    out = str(tmp_path / "snr")
    assert main(["snr-gain", "--config", config_file, "--out", out,
                 "--trials", "120"]) == 0
    rows = {r["branch"]: float(r["gain_db"])
            for r in read_rows(os.path.join(out, "snr_gain.csv"))}
    assert rows["cp_ofdm"] == pytest.approx(10 * np.log10(512), abs=0.5)
    assert rows["lfm"] == pytest.approx(10 * np.log10(607), abs=0.5)


def test_single_trial_smoke_runtime(config_file, tmp_path):
    import time

    start = time.perf_counter()
    assert main(["mse-cp", "--config", config_file,
                 "--out", str(tmp_path / "smoke"), "--trials", "1"]) == 0
    assert main(["snr-gain", "--config", config_file,
                 "--out", str(tmp_path / "smoke2"), "--trials", "1"]) == 0
    assert time.perf_counter() - start < 5.0


def test_malformed_config_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{ nope }")
    assert main(["psf", "--config", str(path), "--out", str(tmp_path)]) == 2
    err = capsys.readouterr().err
    assert "line" in err


def test_missing_field_exit_code(tmp_path):
    cfg = dict(BASE_CONFIG)
    del cfg["bandwidth"]
    path = tmp_path / "short.json"
    path.write_text(json.dumps(cfg))
    assert main(["psf", "--config", str(path), "--out", str(tmp_path)]) == 2


def test_invalid_radar_exit_code(tmp_path):
    cfg = dict(BASE_CONFIG, cp_len=512)
    path = tmp_path / "cp.json"
    path.write_text(json.dumps(cfg))
    assert main(["psf", "--config", str(path), "--out", str(tmp_path)]) == 2


def test_unknown_scene_exit_code(tmp_path):
    cfg = dict(BASE_CONFIG, scene="missing_file.json")
    path = tmp_path / "sc.json"
    path.write_text(json.dumps(cfg))
    assert main(["psf", "--config", str(path), "--out", str(tmp_path)]) == 2
