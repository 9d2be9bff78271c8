"""Range compression.

The OFDM route exploits that, once the guard samples are discarded, the
received window is a circular convolution of the reflectivity vector with
a cyclically shifted copy of the core sequence: an FFT, a per-subcarrier
division, and an IFFT recover every range cell with zero leakage when the
prefix covers the swath. Matched-filter correlation is provided as the
baseline route for LFM, noise, and conventional OFDM pulses, and a dense
circulant solver plus two interference oracles back the FFT pipeline in
tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .waveform import Pulse, WeightVector

# Weights below this fraction of the largest are considered non-invertible.
_MIN_WEIGHT_RATIO = 1e-12


@dataclass(frozen=True)
class RangeEstimate:
    """Recovered per-cell reflectivity.

    ``d_hat`` has length M (or N when N < M, where cells alias onto the
    shorter vector). Raw output carries the sqrt(N) processing gain;
    ``gain_normalized`` records whether it was divided out.
    """

    d_hat: np.ndarray
    gain_normalized: bool

    def __len__(self) -> int:
        return len(self.d_hat)


@dataclass(frozen=True)
class CirculantChannel:
    """Dense N x N circulant channel matrix built from a reflectivity vector."""

    H: np.ndarray


def _shifted_weights(S: np.ndarray, m: int) -> np.ndarray:
    """Weights of the demodulation reference: S_k advanced by the M-1 window offset."""
    n = len(S)
    k = np.arange(n)
    return S * np.exp(2j * np.pi * k * (m - 1) / n)


def cp_ofdm_range_compress(
    u,
    weights: WeightVector,
    num_range_cells: int,
    cp_len: int | None = None,
    normalize: bool = False,
) -> RangeEstimate:
    """Reconstruct range cells from one received echo.

    Parameters
    ----------
    u : array_like
        The raw echo, length N + cp_len + M - 1 (its first sample is the
        first arrival of the transmitted pulse from the nearest cell).
    weights : WeightVector
        The N subcarrier weights used on transmit.
    num_range_cells : int
        M, the number of range cells across the swath.
    cp_len : int, optional
        Actual transmitted prefix length; defaults to the sufficient M - 1.
    normalize : bool
        Divide out the sqrt(N) processing gain.

    The first cp_len and last M - 1 samples are discarded, the remaining
    N samples are FFT'd, divided by the shifted weights, and IFFT'd; the
    leading M entries (N entries when N < M) estimate the reflectivity.
    With a sufficient prefix and no noise the estimate is exactly
    sqrt(N) times the true coefficients.
    """
    u = np.asarray(u, dtype=complex)
    n = len(weights)
    m = num_range_cells
    cp = m - 1 if cp_len is None else cp_len
    expected = n + cp + m - 1
    if len(u) != expected:
        raise ValueError(
            f"echo length {len(u)} != N+cp_len+M-1 = {expected}"
        )

    S = weights.S
    mags = np.abs(S)
    if mags.min() < _MIN_WEIGHT_RATIO * mags.max():
        raise ValueError("non-invertible subcarrier weight")

    window = u[cp : cp + n]
    spectrum = np.fft.fft(window) / _shifted_weights(S, m)
    d_hat = np.fft.ifft(spectrum)[: min(m, n)]
    if normalize:
        d_hat = d_hat / np.sqrt(n)
    return RangeEstimate(d_hat=d_hat, gain_normalized=normalize)


def cp_ofdm_fold_oracle(d, n: int) -> np.ndarray:
    """Aliased reflectivity recovered when N < M: cells stack modulo N."""
    d = np.asarray(d, dtype=complex)
    m = len(d)
    if n >= m:
        raise ValueError("fold oracle requires N < M (identity otherwise)")
    folded = np.zeros(n, dtype=complex)
    for i in range(m):
        folded[i % n] += d[i]
    return folded


def irci_oracle(d, weights: WeightVector, cp_len: int) -> np.ndarray:
    """Per-cell interference caused by a prefix shorter than M - 1.

    Computed from the residual between the circular-channel model and the
    actually received samples: the missing leading pulse samples produce a
    residual echo supported on the early window, whose demodulation is the
    interference. Satisfies pipeline_output = sqrt(N)*d - xi for noiseless
    echoes built with :func:`truncated_cp_pulse`.
    """
    d = np.asarray(d, dtype=complex)
    m = len(d)
    n = len(weights)
    if cp_len < 0:
        raise ValueError("cp_len must be >= 0")
    if cp_len >= m - 1:
        # prefix already sufficient: no interference
        return np.zeros(m, dtype=complex)

    core = np.sqrt(n) * np.fft.ifft(weights.S)
    residual = np.zeros(n, dtype=complex)
    # Row r of the receive window loses the cells whose pulse had not yet
    # started; they span the head rows only.
    for r in range(min(m - cp_len - 1, n)):
        cells = np.arange(cp_len + 1 + r, m)
        residual[r] = np.sum(d[cells] * core[(m - 1 + r - cells) % n])
    spectrum = np.fft.fft(residual) / _shifted_weights(weights.S, m)
    return np.fft.ifft(spectrum)[:m]


def matched_filter_compress(u, reference: Pulse) -> np.ndarray:
    """Correlate an echo with the conjugated transmit replica.

    Only full-overlap lags are kept, so an echo built as the convolution
    of M reflectivity coefficients with the reference yields M output
    samples aligned with the range cells.
    """
    u = np.asarray(u, dtype=complex)
    ref = np.asarray(reference.samples, dtype=complex)
    if len(u) == 0 or len(ref) == 0:
        raise ValueError("empty input")
    if len(u) < len(ref):
        raise ValueError("echo shorter than reference")
    return np.correlate(u, ref, mode="valid")


def build_circulant(d, n: int) -> CirculantChannel:
    """Dense circulant channel whose first column is the zero-padded reflectivity.

    Test oracle only: H[i, j] = h[(i - j) mod N] with
    h = [d_0 .. d_{M-1}, 0 .. 0], and the FFT of h is the channel's
    eigenvalue sequence.
    """
    d = np.asarray(d, dtype=complex)
    m = len(d)
    if n < m:
        raise ValueError("build_circulant requires N >= M")
    h = np.zeros(n, dtype=complex)
    h[:m] = d
    i = np.arange(n)
    H = h[(i[:, None] - i[None, :]) % n]
    return CirculantChannel(H=H)


def dense_circulant_solve(u, weights: WeightVector, num_range_cells: int) -> np.ndarray:
    """Recover reflectivity by direct inversion of the circulant system.

    Independent slow route used to validate the FFT pipeline: the receive
    window equals the circulant matrix of the shifted core applied to the
    zero-padded reflectivity, so a dense solve returns it without the
    sqrt(N) gain.
    """
    u = np.asarray(u, dtype=complex)
    n = len(weights)
    m = num_range_cells
    window = u[m - 1 : m - 1 + n]
    core = np.sqrt(n) * np.fft.ifft(weights.S)
    shifted_core = np.roll(core, -(m - 1))
    C = build_circulant(shifted_core, n).H
    return np.linalg.solve(C, window)[:m]
