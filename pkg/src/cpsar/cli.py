"""Experiment runner.

Five subcommands reproduce the toolkit's standard experiments from a JSON
config file: point-spread profiles, single range-line reconstruction,
full scene imaging, Monte Carlo MSE against prefix length, and SNR gain.
Every command is a pure function of (config, flags): reruns write
byte-identical outputs. Exit codes: 0 success, 1 runtime failure,
2 configuration error.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import metrics
from .azimuth import azimuth_compress, range_compress_all, rcmc
from .echo import simulate_echo_line, simulate_raw, weighting_coefficients
from .formats import (
    ConfigError,
    load_config,
    radar_params_from_config,
    write_csv,
    write_pgm,
    write_sarf,
)
from .model import derive_timings, scene_to_range_line, validate_params
from .rangecomp import cp_ofdm_range_compress, matched_filter_compress
from .scenes import BUILTIN_SCENES, builtin_scene, load_scene_file
from .waveform import (
    lfm_pulse,
    noise_pulse,
    ofdm_pulse,
    pn_weights,
    truncated_cp_pulse,
)

ALL_BRANCHES = ("cp_ofdm", "lfm", "noise", "conventional_ofdm")


def _build_branch(branch, params, seed):
    """Pulse (and weights where applicable) for one waveform branch.

    All branches share the same duration and unit mean power so their
    transmit energies match.
    """
    n = params.num_subcarriers
    total = n + params.cp_len
    if branch in ("cp_ofdm", "conventional_ofdm"):
        weights = pn_weights(n, seed)
        return ofdm_pulse(weights, params.cp_len), weights
    if branch == "lfm":
        return lfm_pulse(total, 1.0), None
    if branch == "noise":
        return noise_pulse(total, [seed, 0xA5]), None
    raise ConfigError(f"unknown branch {branch!r}; choose from {ALL_BRANCHES}")


def _compression_method(branch: str) -> str:
    return "cp_ofdm" if branch == "cp_ofdm" else "matched_filter"


class _Run:
    """Validated configuration shared by the subcommands."""

    def __init__(self, args):
        cfg = load_config(args.config)
        if not isinstance(cfg, dict):
            raise ConfigError(f"{args.config}: top level must be a JSON object")
        self.cfg = cfg
        self.params = radar_params_from_config(cfg)
        report = validate_params(self.params)
        if report.errors:
            raise ConfigError(
                "invalid radar parameters: " + "; ".join(report.errors)
            )
        for w in report.warnings:
            print(f"warning: {w}", file=sys.stderr)
        self.timings = derive_timings(self.params)
        self.seed = args.seed if args.seed is not None else int(cfg.get("seed", 0))
        self.out = args.out or cfg.get("output_dir", "out")
        self.noise_sigma = float(cfg.get("noise_sigma", 0.0))
        if args.branch:
            self.branches = (args.branch,)
        else:
            self.branches = tuple(cfg.get("branches", ALL_BRANCHES))
        for b in self.branches:
            if b not in ALL_BRANCHES:
                raise ConfigError(f"unknown branch {b!r}")
        self.trials = args.trials if args.trials is not None else int(
            cfg.get("trials", 200)
        )
        if args.cp is not None:
            self.cp_list = args.cp
        elif "cp_list" in cfg:
            self.cp_list = [int(c) for c in cfg["cp_list"]]
        else:
            self.cp_list = None

    def scene(self, default: str):
        name = self.cfg.get("scene", default)
        if name in BUILTIN_SCENES:
            return builtin_scene(name, self.params, self.timings, self.seed)
        if not os.path.exists(name):
            raise ConfigError(
                f"scene {name!r} is neither a builtin {BUILTIN_SCENES} "
                "nor an existing file"
            )
        return load_scene_file(name, self.params, self.timings)

    def path(self, name: str) -> str:
        return os.path.join(self.out, name)


def _image_one_branch(run: _Run, branch, scene):
    pulse, weights = _build_branch(branch, run.params, run.seed)
    raw = simulate_raw(
        scene,
        pulse,
        run.params,
        run.timings,
        noise_sigma=run.noise_sigma,
        seed=run.seed,
    )
    compressed = range_compress_all(
        raw,
        _compression_method(branch),
        pulse,
        run.params,
        run.timings,
        weights=weights,
    )
    corrected = rcmc(compressed, run.params, run.timings)
    return azimuth_compress(corrected, run.params, run.timings)


def cmd_psf(run: _Run) -> None:
    scene = run.scene("point")
    range_rows, azimuth_rows = [], []
    for branch in run.branches:
        image = _image_one_branch(run, branch, scene)
        rp, ap = metrics.extract_profiles(image)
        range_rows += [(branch, int(i), float(v)) for i, v in zip(rp.index, rp.db)]
        azimuth_rows += [(branch, int(i), float(v)) for i, v in zip(ap.index, ap.db)]
        write_pgm(run.path(f"psf_{branch}.pgm"), image.data)
    write_csv(run.path("range_profile.csv"), ("branch", "index", "db"), range_rows)
    write_csv(
        run.path("azimuth_profile.csv"), ("branch", "index", "db"), azimuth_rows
    )


def cmd_rangeline(run: _Run) -> None:
    params, timings = run.params, run.timings
    m = params.num_range_cells
    cp_list = run.cp_list if run.cp_list is not None else [m - 1, 80, 0]
    for cp in cp_list:
        if not 0 <= cp <= m - 1:
            raise ConfigError(f"cp {cp} out of range 0..{m - 1}")
    scene = run.scene("rangeline18")
    line = scene_to_range_line(scene, 0.0, params, timings)
    d = weighting_coefficients(line, 0.0, params, timings)
    weights = pn_weights(params.num_subcarriers, run.seed)
    truth = np.abs(line.rcs)

    for cp in cp_list:
        pulse = truncated_cp_pulse(weights, m, cp)
        echo = simulate_echo_line(pulse, d, run.noise_sigma, [run.seed, cp])
        est = cp_ofdm_range_compress(echo, weights, m, cp_len=cp).d_hat
        db = metrics.to_db(est)
        rows = [(int(c), float(truth[c]), float(db[c])) for c in range(m)]
        write_csv(
            run.path(f"rangeline_cp{cp}.csv"),
            ("cell", "truth_amplitude", "estimate_db"),
            rows,
        )

    # conventional OFDM: same waveform, correlation receiver
    pulse = ofdm_pulse(weights, m - 1)
    echo = simulate_echo_line(pulse, d, run.noise_sigma, [run.seed, m])
    est = matched_filter_compress(echo, pulse)
    db = metrics.to_db(est)
    rows = [(int(c), float(truth[c]), float(db[c])) for c in range(m)]
    write_csv(
        run.path("rangeline_conventional.csv"),
        ("cell", "truth_amplitude", "estimate_db"),
        rows,
    )


def cmd_image(run: _Run) -> None:
    scene = run.scene("tank")
    mse_rows = []
    truth = None
    for branch in run.branches:
        image = _image_one_branch(run, branch, scene)
        if truth is None:
            truth = metrics.render_scene_reference(
                scene, run.params, run.timings, image.data.shape[0]
            )
            write_pgm(run.path("truth.pgm"), truth)
        write_sarf(run.path(f"image_{branch}.sarf"), image.data)
        write_pgm(run.path(f"image_{branch}.pgm"), image.data)
        mse_rows.append((branch, float(metrics.image_mse(image, truth))))
    write_csv(run.path("image_mse.csv"), ("branch", "mse"), mse_rows)


def cmd_mse_cp(run: _Run) -> None:
    m = run.params.num_range_cells
    cp_list = run.cp_list
    if cp_list is None:
        cp_list = sorted(set(range(0, m - 1, 8)) | {m - 1})
    for cp in cp_list:
        if not 0 <= cp <= m - 1:
            raise ConfigError(f"cp {cp} out of range 0..{m - 1}")
    curve = metrics.mse_vs_cp(
        run.params,
        cp_list,
        trials=run.trials,
        seed=run.seed,
        mode=run.cfg.get("mode", "rangeline"),
    )
    write_csv(
        run.path("mse_cp.csv"),
        ("cp_len", "mse"),
        [(int(c), float(v)) for c, v in zip(curve.cp_lengths, curve.mse)],
    )


def cmd_snr_gain(run: _Run) -> None:
    rows = []
    for branch in ("cp_ofdm", "lfm"):
        gain = metrics.snr_gain(
            run.params, branch=branch, trials=run.trials, seed=run.seed
        )
        rows.append((branch, float(gain)))
    write_csv(run.path("snr_gain.csv"), ("branch", "gain_db"), rows)


_COMMANDS = {
    "psf": cmd_psf,
    "rangeline": cmd_rangeline,
    "image": cmd_image,
    "mse-cp": cmd_mse_cp,
    "snr-gain": cmd_snr_gain,
}


def _parse_cp_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"bad cp list {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpsar",
        description="Cyclic-prefix OFDM SAR experiment runner",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON config file")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--branch", choices=ALL_BRANCHES, default=None)
        p.add_argument("--trials", type=int, default=None)
        p.add_argument("--cp", type=_parse_cp_list, default=None,
                       help="comma-separated CP lengths")
    return parser


def main(argv=None) -> int:
    # SAR_THREADS is informational: results are identical at any setting.
    os.environ.get("SAR_THREADS")
    args = build_parser().parse_args(argv)
    try:
        run = _Run(args)
        _COMMANDS[args.command](run)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # runtime/numeric failure
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
