"""Complex-baseband echo simulation.

A range line's reflectivity is turned into per-pulse weighting
coefficients (azimuth envelope and two-way carrier phase), convolved with
the transmit pulse, and optionally perturbed by receiver noise. The 2-D
raw data stacks one such echo per slow-time instant; whole-line range walk
is modeled as a per-pulse bulk integer sample shift recorded alongside the
data so processing can undo it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (
    SPEED_OF_LIGHT,
    DerivedTimings,
    RadarParams,
    RangeLine,
    Scene,
    bin_to_cell,
    cell_slant_ranges,
    scene_to_range_line,
)
from .waveform import Pulse


@dataclass(frozen=True)
class WeightingCoefficients:
    """Per-cell reflectivity at one slow-time instant: envelope and phase applied."""

    d: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "d", np.asarray(self.d, dtype=complex))

    def __len__(self) -> int:
        return len(self.d)


@dataclass(frozen=True)
class RawData:
    """P x L complex raw samples (slow time x fast time).

    ``bulk_shift[p]`` is the integer fast-time offset applied to row p;
    the un-shifted echo of row p occupies columns
    bulk_shift[p] .. bulk_shift[p] + echo_len - 1.
    """

    pulses: np.ndarray
    slow_time_axis: np.ndarray
    bulk_shift: np.ndarray
    echo_len: int


def slant_range(
    m: int, eta, params: RadarParams, timings: DerivedTimings
):
    """Instantaneous slant range of cell m at relative azimuth time eta."""
    r0 = timings.near_range + m * timings.range_resolution
    return np.hypot(r0, params.platform_velocity * np.asarray(eta, dtype=float))


def azimuth_envelope(eta, closest_range, params: RadarParams):
    """Two-way antenna amplitude pattern seen by a target at ``closest_range``.

    The boresight offset is theta = arctan(v*eta / closest_range); the
    one-way pattern is sin(x)/x with x = 0.886*theta/beamwidth, and the
    envelope is its square.
    """
    lam = SPEED_OF_LIGHT / params.carrier_freq
    beamwidth = 0.866 * lam / params.antenna_length
    theta = np.arctan(
        params.platform_velocity * np.asarray(eta, dtype=float) / closest_range
    )
    x = 0.886 * theta / beamwidth
    pattern = np.sinc(x / np.pi)  # np.sinc is sin(pi t)/(pi t); rescale to sin(x)/x
    return pattern**2


def weighting_coefficients(
    line: RangeLine,
    eta: float,
    params: RadarParams,
    timings: DerivedTimings,
) -> WeightingCoefficients:
    """Apply azimuth envelope and two-way carrier phase to a range line."""
    r_bar = cell_slant_ranges(params, timings)
    r = np.hypot(r_bar, params.platform_velocity * eta)
    env = azimuth_envelope(eta, r_bar, params)
    phase = np.exp(-4j * np.pi * params.carrier_freq * r / SPEED_OF_LIGHT)
    return WeightingCoefficients(line.rcs * env * phase)


def _complex_noise(rng: np.random.Generator, n: int, sigma: float) -> np.ndarray:
    return (
        rng.standard_normal(n) + 1j * rng.standard_normal(n)
    ) * (sigma / np.sqrt(2.0))


def simulate_echo_line(
    pulse: Pulse,
    d: WeightingCoefficients,
    noise_sigma: float = 0.0,
    seed=None,
) -> np.ndarray:
    """One received echo: linear convolution of the pulse with d, plus noise.

    Output length is len(pulse) + len(d) - 1. ``noise_sigma`` is the
    standard deviation of each complex noise sample (0 disables noise).
    """
    coeffs = d.d if isinstance(d, WeightingCoefficients) else np.asarray(d, dtype=complex)
    if len(coeffs) == 0 or len(pulse) == 0:
        raise ValueError("pulse and coefficients must be non-empty")
    u = np.convolve(coeffs, pulse.samples)
    if noise_sigma > 0.0:
        u = u + _complex_noise(np.random.default_rng(seed), len(u), noise_sigma)
    return u


def bulk_range_shift(
    eta, params: RadarParams, timings: DerivedTimings
):
    """Whole-line range walk in integer samples at relative azimuth time eta."""
    r0 = np.hypot(
        timings.near_range,
        params.platform_velocity * np.asarray(eta, dtype=float),
    )
    walk = 2.0 * (r0 - timings.near_range) / (
        SPEED_OF_LIGHT * timings.sample_interval
    )
    return np.round(walk).astype(int)


def simulate_raw(
    scene: Scene,
    pulse: Pulse,
    params: RadarParams,
    timings: DerivedTimings,
    noise_sigma: float = 0.0,
    seed: int = 0,
) -> RawData:
    """Simulate the full 2-D raw data over the synthetic aperture.

    One pulse is fired per PRI across ``aperture_time``; slow time
    eta_p = (p - P/2)/prf is referenced to the scene-center zero-Doppler
    crossing. Each scatterer contributes with the envelope and phase of
    its own relative azimuth time, rows are shifted by the bulk range walk,
    and per-pulse noise streams are seeded by (seed, p) so generation
    order cannot change the result.
    """
    n_pulses = int(round(params.prf * params.aperture_time))
    eta = (np.arange(n_pulses) - n_pulses // 2) / params.prf
    shifts = bulk_range_shift(eta, params, timings)
    m_cells = params.num_range_cells
    echo_len = len(pulse) + m_cells - 1
    width = echo_len + int(shifts.max(initial=0))
    rows = np.zeros((n_pulses, width), dtype=complex)

    # Group scatterers by azimuth position: each group is one range line
    # whose zero-Doppler crossing happens at eta = y / v.
    groups = []
    if len(scene) > 0:
        for y in np.unique(scene.y):
            sel = scene.y == y
            sub = Scene(scene.x[sel], scene.y[sel], scene.g[sel])
            line = scene_to_range_line(sub, y, params, timings)
            groups.append((y / params.platform_velocity, line))

    for p in range(n_pulses):
        d = np.zeros(m_cells, dtype=complex)
        for eta_zero, line in groups:
            d += weighting_coefficients(
                line, eta[p] - eta_zero, params, timings
            ).d
        echo = np.convolve(d, pulse.samples)
        if noise_sigma > 0.0:
            echo = echo + _complex_noise(
                np.random.default_rng([seed, p]), echo_len, noise_sigma
            )
        rows[p, shifts[p] : shifts[p] + echo_len] = echo

    return RawData(
        pulses=rows,
        slow_time_axis=eta,
        bulk_shift=shifts,
        echo_len=echo_len,
    )
