"""Radar system description, derived timing/geometry quantities, and scenes.

All quantities are SI (Hz, s, m). Types are frozen dataclasses; every
operation is a pure function, so everything here is safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Exact SI value; used everywhere a propagation speed is needed.
SPEED_OF_LIGHT = 299_792_458.0


@dataclass(frozen=True)
class RadarParams:
    """Static description of the radar system and platform.

    Attributes
    ----------
    carrier_freq : float
        Carrier frequency fc [Hz].
    bandwidth : float
        Transmit bandwidth B [Hz]; also the complex sampling rate.
    num_subcarriers : int
        Number of OFDM subcarriers N.
    num_range_cells : int
        Number of range cells M across the swath.
    cp_len : int
        Cyclic prefix length in samples (0 <= cp_len <= N-1).
    prf : float
        Pulse repetition frequency [Hz].
    platform_velocity : float
        Effective along-track platform speed [m/s].
    platform_height : float
        Platform altitude above the imaged plane [m].
    antenna_length : float
        Effective antenna length [m] (sets the azimuth beamwidth).
    aperture_time : float
        Synthetic aperture duration [s].
    swath_center_range : float
        Slant range to the center of the swath [m].
    """

    carrier_freq: float
    bandwidth: float
    num_subcarriers: int
    num_range_cells: int
    cp_len: int
    prf: float
    platform_velocity: float
    platform_height: float
    antenna_length: float
    aperture_time: float
    swath_center_range: float


@dataclass(frozen=True)
class DerivedTimings:
    """Quantities derived from :class:`RadarParams` by :func:`derive_timings`."""

    sample_interval: float
    subcarrier_spacing: float
    core_duration: float
    guard_duration: float
    pulse_duration: float
    range_resolution: float
    swath_width: float
    wavelength: float
    azimuth_beamwidth: float
    near_range: float  # closest-approach slant range of cell 0


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate_params`: hard errors and advisory warnings."""

    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


@dataclass(frozen=True)
class RangeLine:
    """Complex reflectivity per range cell for one cross range.

    ``rcs[m]`` is the coherent sum of the scatterer amplitudes in cell m.
    """

    rcs: np.ndarray

    def __post_init__(self):
        rcs = np.asarray(self.rcs, dtype=complex)
        if rcs.ndim != 1:
            raise ValueError("range line must be one-dimensional")
        object.__setattr__(self, "rcs", rcs)

    def __len__(self) -> int:
        return len(self.rcs)


@dataclass(frozen=True)
class Scene:
    """Point-scatterer scene in ground coordinates.

    ``x`` is ground range [m], ``y`` is along-track azimuth [m] and ``g``
    the complex amplitude of each scatterer.
    """

    x: np.ndarray
    y: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.x, dtype=float))
        y = np.atleast_1d(np.asarray(self.y, dtype=float))
        g = np.atleast_1d(np.asarray(self.g, dtype=complex))
        if not (len(x) == len(y) == len(g)):
            raise ValueError("x, y, g must have equal length")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "g", g)

    def __len__(self) -> int:
        return len(self.g)

    @classmethod
    def empty(cls) -> "Scene":
        return cls(np.empty(0), np.empty(0), np.empty(0, dtype=complex))

    @classmethod
    def from_grid(cls, origin, spacing, values) -> "Scene":
        """Expand a rectangular amplitude grid into point scatterers.

        ``values[i][j]`` sits at ground position
        ``(origin[0] + i*spacing[0], origin[1] + j*spacing[1])``; zero
        entries are skipped.
        """
        vals = np.asarray(values, dtype=complex)
        if vals.ndim != 2:
            raise ValueError("grid values must be a 2-D array")
        ii, jj = np.nonzero(vals)
        return cls(
            origin[0] + ii * spacing[0],
            origin[1] + jj * spacing[1],
            vals[ii, jj],
        )


def derive_timings(params: RadarParams) -> DerivedTimings:
    """Compute sampling, pulse and geometry quantities from the parameters."""
    ts = 1.0 / params.bandwidth
    rho_r = SPEED_OF_LIGHT / (2.0 * params.bandwidth)
    lam = SPEED_OF_LIGHT / params.carrier_freq
    return DerivedTimings(
        sample_interval=ts,
        subcarrier_spacing=params.bandwidth / params.num_subcarriers,
        core_duration=params.num_subcarriers * ts,
        guard_duration=params.cp_len * ts,
        pulse_duration=(params.num_subcarriers + params.cp_len) * ts,
        range_resolution=rho_r,
        swath_width=params.num_range_cells * rho_r,
        wavelength=lam,
        azimuth_beamwidth=0.866 * lam / params.antenna_length,
        near_range=params.swath_center_range
        - (params.num_range_cells / 2.0) * rho_r,
    )


def validate_params(params: RadarParams) -> ValidationReport:
    """Check the hard invariants and advisory conditions of a parameter set.

    Returns a report; never raises. An empty error list means the
    parameters are usable. The PRI budget and N < M conditions are legal
    but flagged as warnings.
    """
    errors: list[str] = []
    warnings: list[str] = []

    if params.num_subcarriers < 1:
        errors.append("num_subcarriers must be >= 1")
    if params.num_range_cells < 1:
        errors.append("num_range_cells must be >= 1")
    if params.bandwidth <= 0:
        errors.append("bandwidth must be positive")
    elif params.carrier_freq <= params.bandwidth:
        errors.append("carrier_freq must exceed bandwidth (narrowband model)")
    if params.cp_len < 0:
        errors.append("cp_len must be >= 0")
    elif params.num_subcarriers >= 1 and params.cp_len > params.num_subcarriers - 1:
        errors.append("cp_len exceeds N-1")
    if params.prf <= 0:
        errors.append("prf must be positive")
    if params.platform_height < 0:
        errors.append("platform_height must be >= 0")
    if params.swath_center_range <= params.platform_height:
        errors.append("swath_center_range must exceed platform_height")
    if params.antenna_length <= 0:
        errors.append("antenna_length must be positive")
    if params.aperture_time <= 0:
        errors.append("aperture_time must be positive")
    if params.platform_velocity <= 0:
        errors.append("platform_velocity must be positive")

    if not errors:
        t = derive_timings(params)
        receive_budget = 2.0 * t.swath_width / SPEED_OF_LIGHT + t.pulse_duration
        if 1.0 / params.prf <= receive_budget:
            warnings.append(
                "PRI shorter than swath round trip plus pulse duration"
            )
        if params.num_subcarriers < params.num_range_cells:
            warnings.append("N<M: folded reconstruction")

    return ValidationReport(errors=errors, warnings=warnings)


def cell_slant_ranges(params: RadarParams, timings: DerivedTimings) -> np.ndarray:
    """Closest-approach slant range of every range cell center."""
    m = np.arange(params.num_range_cells)
    return timings.near_range + m * timings.range_resolution


def bin_to_cell(slant_range, params: RadarParams, timings: DerivedTimings):
    """Map closest-approach slant range(s) to range cell indices.

    Nearest-cell binning; exact half-cell ties go to the lower index.
    """
    v = (np.asarray(slant_range, dtype=float) - timings.near_range) / (
        timings.range_resolution
    )
    return np.ceil(v - 0.5).astype(int)


def validate_scene(scene: Scene, params: RadarParams, timings: DerivedTimings) -> None:
    """Reject scenes containing scatterers outside the range swath."""
    if len(scene) == 0:
        return
    r = np.hypot(scene.x, params.platform_height)
    cells = bin_to_cell(r, params, timings)
    bad = (cells < 0) | (cells >= params.num_range_cells)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise ValueError(
            f"scatterer {i} at x={scene.x[i]:.3f} m maps to range cell "
            f"{cells[i]}, outside 0..{params.num_range_cells - 1}"
        )


def scene_to_range_line(
    scene: Scene,
    azimuth_position: float,
    params: RadarParams,
    timings: DerivedTimings,
) -> RangeLine:
    """Project a scene onto one range line by coherent per-cell summation.

    Every scatterer contributes its bare amplitude to the cell its
    closest-approach slant range falls in; cells without scatterers are
    exactly zero. ``azimuth_position`` names the cross range the line
    belongs to; it does not weight the sum (azimuth weighting is applied
    by the echo simulation).
    """
    rcs = np.zeros(params.num_range_cells, dtype=complex)
    if len(scene) == 0:
        return RangeLine(rcs)
    r = np.hypot(scene.x, params.platform_height)
    cells = bin_to_cell(r, params, timings)
    np.add.at(rcs, cells, scene.g)
    return RangeLine(rcs)
