"""Subcarrier weight vectors, transmit pulses, and waveform statistics.

Weight vectors are normalized so their total power equals the number of
subcarriers; a pulse built from them then carries unit mean power over its
core samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


def _splitmix64(seed: int, count: int) -> np.ndarray:
    """SplitMix64 stream, used so PN weights are identical on any platform.

    Reference: seed 1234567 yields 6457827717110365317,
    3203168211198807973, ... as the first outputs.
    """
    state = int(seed) & _MASK64
    out = np.empty(count, dtype=np.uint64)
    for i in range(count):
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        out[i] = z ^ (z >> 31)
    return out


@dataclass(frozen=True)
class WeightVector:
    """N complex subcarrier weights with total power equal to N."""

    S: np.ndarray

    def __post_init__(self):
        S = np.asarray(self.S, dtype=complex)
        if S.ndim != 1 or len(S) == 0:
            raise ValueError("weights must be a non-empty 1-D vector")
        n = len(S)
        power = np.sum(np.abs(S) ** 2)
        if not math.isclose(power, n, rel_tol=1e-9):
            raise ValueError(f"weight power {power:.12g} != N={n}")
        object.__setattr__(self, "S", S)

    def __len__(self) -> int:
        return len(self.S)


@dataclass(frozen=True)
class Pulse:
    """A sampled complex baseband transmit sequence.

    ``kind`` is one of {"cp_ofdm", "lfm", "noise", "conventional_ofdm"}.
    For OFDM kinds ``core_len`` is the subcarrier count and ``cp_len`` the
    guard length; samples[core_len:] replicate samples[:cp_len].
    """

    kind: str
    samples: np.ndarray
    core_len: int
    cp_len: int

    def __post_init__(self):
        object.__setattr__(
            self, "samples", np.asarray(self.samples, dtype=complex)
        )

    def __len__(self) -> int:
        return len(self.samples)


def pn_weights(n: int, seed: int) -> WeightVector:
    """Binary +-1 pseudo-noise weights from a seeded SplitMix64 stream."""
    if n < 1:
        raise ValueError("n must be >= 1")
    bits = (_splitmix64(seed, n) >> np.uint64(63)).astype(float)
    return WeightVector((1.0 - 2.0 * bits).astype(complex))


def zadoff_chu_weights(n: int, root: int) -> WeightVector:
    """Zadoff-Chu weights: constant modulus in both domains.

    Uses exp(-j*pi*root*k(k+1)/n) for odd n and exp(-j*pi*root*k^2/n) for
    even n; ``root`` must be coprime with ``n``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if math.gcd(root, n) != 1:
        raise ValueError(f"root {root} not coprime with N={n}")
    k = np.arange(n, dtype=float)
    if n % 2:
        phase = -np.pi * root * k * (k + 1.0) / n
    else:
        phase = -np.pi * root * k * k / n
    return WeightVector(np.exp(1j * phase))


def constant_weights(n: int) -> WeightVector:
    """All-ones weights; the pulse degenerates to a delta of height sqrt(N)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return WeightVector(np.ones(n, dtype=complex))


def weights_from_signal(samples) -> WeightVector:
    """Weights whose pulse reproduces ``samples`` up to a global scale.

    Any length-N sequence can be embedded: its forward DFT, power
    normalized, is a valid weight vector.
    """
    s = np.asarray(samples, dtype=complex)
    if s.ndim != 1 or len(s) == 0:
        raise ValueError("signal must be a non-empty 1-D vector")
    energy = np.sum(np.abs(s) ** 2)
    if energy == 0:
        raise ValueError("signal has zero energy")
    S = np.fft.fft(s) / np.sqrt(energy)
    return WeightVector(S)


def ofdm_pulse(weights: WeightVector, cp_len: int) -> Pulse:
    """OFDM pulse: N-sample unitary-IDFT core plus periodic extension.

    samples[i] = (1/sqrt(N)) * sum_k S_k exp(j*2*pi*k*i/N) for
    i = 0..N+cp_len-1; the trailing cp_len samples replicate the head, so
    the last N samples form a cyclically shifted core with the first
    cp_len samples as their cyclic prefix.
    """
    n = len(weights)
    if not 0 <= cp_len <= n - 1:
        raise ValueError(f"cp_len {cp_len} out of range 0..{n - 1}")
    core = np.sqrt(n) * np.fft.ifft(weights.S)
    samples = core[np.arange(n + cp_len) % n]
    return Pulse(kind="cp_ofdm", samples=samples, core_len=n, cp_len=cp_len)


def truncated_cp_pulse(
    weights: WeightVector, num_range_cells: int, cp_len: int
) -> Pulse:
    """Transmit sequence for a swath of M cells with a shortened prefix.

    The design-length pulse for M cells carries a cyclic prefix of M-1
    samples ahead of the core. Shortening the prefix to ``cp_len`` removes
    the leading M-1-cp_len samples while the receive window keeps its
    absolute timing, which is what produces inter-range-cell interference
    when cp_len < M-1. For cp_len = M-1 this is exactly
    ``ofdm_pulse(weights, M-1)``.
    """
    n = len(weights)
    m = num_range_cells
    if not 0 <= cp_len <= m - 1:
        raise ValueError(f"cp_len {cp_len} out of range 0..{m - 1}")
    core = np.sqrt(n) * np.fft.ifft(weights.S)
    idx = np.arange(m - 1 - cp_len, n + m - 1) % n
    return Pulse(kind="cp_ofdm", samples=core[idx], core_len=n, cp_len=cp_len)


def lfm_pulse(length_samples: int, bandwidth_fraction: float = 1.0) -> Pulse:
    """Unit-magnitude linear chirp sweeping the given fraction of the band.

    The sweep is centered on zero frequency; no amplitude window is
    applied, so the matched-filter response keeps its natural sidelobes.
    """
    if length_samples < 2:
        raise ValueError("length_samples must be >= 2")
    i = np.arange(length_samples, dtype=float)
    centered = i - (length_samples - 1) / 2.0
    phase = np.pi * bandwidth_fraction * centered**2 / length_samples
    return Pulse(
        kind="lfm",
        samples=np.exp(1j * phase),
        core_len=length_samples,
        cp_len=0,
    )


def noise_pulse(length_samples: int, seed: int) -> Pulse:
    """I.i.d. circular complex Gaussian pulse with unit mean power."""
    if length_samples < 1:
        raise ValueError("length_samples must be >= 1")
    rng = np.random.default_rng(seed)
    samples = (
        rng.standard_normal(length_samples)
        + 1j * rng.standard_normal(length_samples)
    ) / np.sqrt(2.0)
    return Pulse(
        kind="noise", samples=samples, core_len=length_samples, cp_len=0
    )


def papr(samples) -> float:
    """Peak-to-average power ratio of a sample sequence."""
    s = np.asarray(samples, dtype=complex)
    power = np.abs(s) ** 2
    mean = power.mean() if len(s) else 0.0
    if mean == 0:
        raise ValueError("zero-energy sequence has no PAPR")
    return float(power.max() / mean)
