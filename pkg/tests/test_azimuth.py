import numpy as np
import pytest
from dataclasses import replace

from cpsar.azimuth import (
    RangeCompressedData,
    _migration_cells,
    azimuth_compress,
    azimuth_reference,
    range_compress_all,
    rcmc,
)
from cpsar.echo import azimuth_envelope, simulate_raw, slant_range
from cpsar.model import SPEED_OF_LIGHT, RadarParams, Scene, derive_timings
from cpsar.rangecomp import cp_ofdm_range_compress
from cpsar.waveform import lfm_pulse, noise_pulse, ofdm_pulse, pn_weights


def point_scene(params, timings, cell=None, y=0.0, g=1.0 + 0j):
    cell = params.num_range_cells // 2 if cell is None else cell
    r = timings.near_range + cell * timings.range_resolution
    x = np.sqrt(r**2 - params.platform_height**2)
    return Scene([x], [y], [g])


def test_cp_branch_composes_rangecomp(desk_params):
    timings = derive_timings(desk_params)
    scene = point_scene(desk_params, timings)
    w = pn_weights(512, 0)
    pulse = ofdm_pulse(w, 95)
    raw = simulate_raw(scene, pulse, desk_params, timings)
    rc = range_compress_all(raw, "cp_ofdm", pulse, desk_params, timings, weights=w)
    for p in (0, 64, 128):
        echo = raw.pulses[p, raw.bulk_shift[p] : raw.bulk_shift[p] + raw.echo_len]
        row = cp_ofdm_range_compress(echo, w, 96, cp_len=95).d_hat
        np.testing.assert_array_equal(rc.data[p], row)


def test_range_compressed_matches_reflectivity_history(desk_params):
    # column through the target equals sqrt(N) * envelope * two-way phase
    timings = derive_timings(desk_params)
    scene = point_scene(desk_params, timings)
    w = pn_weights(512, 3)
    pulse = ofdm_pulse(w, 95)
    raw = simulate_raw(scene, pulse, desk_params, timings)
    rc = range_compress_all(raw, "cp_ofdm", pulse, desk_params, timings, weights=w)
    eta = rc.slow_time_axis
    rbar = desk_params.swath_center_range
    r = np.hypot(rbar, desk_params.platform_velocity * eta)
    expected = (
        np.sqrt(512)
        * azimuth_envelope(eta, rbar, desk_params)
        * np.exp(-4j * np.pi * desk_params.carrier_freq * r / SPEED_OF_LIGHT)
    )
    np.testing.assert_allclose(rc.data[:, 48], expected, atol=1e-9 * np.sqrt(512))
    # all other columns are empty
    others = np.delete(np.arange(96), 48)
    assert np.max(np.abs(rc.data[:, others])) < 1e-9


def test_range_compress_zero_raw(desk_params):
    timings = derive_timings(desk_params)
    pulse = ofdm_pulse(pn_weights(512, 0), 95)
    raw = simulate_raw(Scene.empty(), pulse, desk_params, timings)
    rc = range_compress_all(raw, "cp_ofdm", pulse, desk_params, timings,
                            weights=pn_weights(512, 0))
    assert np.all(rc.data == 0)


def test_range_compress_method_validation(desk_params):
    timings = derive_timings(desk_params)
    pulse = ofdm_pulse(pn_weights(512, 0), 95)
    raw = simulate_raw(Scene.empty(), pulse, desk_params, timings)
    with pytest.raises(ValueError, match="weight"):
        range_compress_all(raw, "cp_ofdm", pulse, desk_params, timings)
    with pytest.raises(ValueError, match="unknown"):
        range_compress_all(raw, "backprojection", pulse, desk_params, timings)


def test_migration_under_one_cell_at_reference_geometry(paper_params, paper_timings):
    f_eta = np.fft.fftfreq(800, d=1 / 800.0)
    # physical Doppler support of the reference geometry is ~95 Hz
    band = np.abs(f_eta) <= 96.0
    cells = _migration_cells(f_eta[band], paper_params, paper_timings)
    assert np.max(np.abs(cells)) < 1.0


def test_rcmc_identity_without_motion(paper_params, paper_timings):
    params = replace(paper_params, platform_velocity=0.0)
    data = RangeCompressedData(
        data=np.arange(32 * 8, dtype=complex).reshape(32, 8),
        slow_time_axis=(np.arange(32) - 16) / 800.0,
        bulk_shift=np.zeros(32, dtype=int),
        bulk_aligned=False,
    )
    out = rcmc(data, params, paper_timings)
    np.testing.assert_array_equal(out.data, data.data)


def test_rcmc_passes_through_aligned_data(desk_params):
    timings = derive_timings(desk_params)
    rng = np.random.default_rng(0)
    data = RangeCompressedData(
        data=rng.normal(size=(64, 96)) + 1j * rng.normal(size=(64, 96)),
        slow_time_axis=(np.arange(64) - 32) / 256.0,
        bulk_shift=np.zeros(64, dtype=int),
        bulk_aligned=True,
    )
    out = rcmc(data, desk_params, timings)
    np.testing.assert_array_equal(out.data, data.data)


def test_rcmc_realigns_synthetic_quadratic_walk():
    # geometry chosen so the walk reaches 3 cells at the azimuth band edge
    params = RadarParams(
        carrier_freq=9e9,
        bandwidth=150e6,
        num_subcarriers=512,
        num_range_cells=96,
        cp_len=95,
        prf=800.0,
        platform_velocity=150.0,
        platform_height=1000.0,
        antenna_length=1.0,
        aperture_time=1.0,
        swath_center_range=3040.0,
    )
    timings = derive_timings(params)
    n_pulses = 256
    prf = 800.0
    f_eta = np.fft.fftfreq(n_pulses, d=1 / prf)
    walk = _migration_cells(f_eta, params, timings)
    assert 2.5 < walk.max() < 3.5

    # wide smooth ridge so the per-row centroid is measurable to sub-cell
    m_cells = 96
    center = 40.0
    cols = np.arange(m_cells)
    spectrum = np.exp(-0.5 * ((cols[None, :] - center - walk[:, None]) / 2.5) ** 2)
    data = RangeCompressedData(
        data=np.fft.ifft(spectrum.astype(complex), axis=0, norm="ortho"),
        slow_time_axis=(np.arange(n_pulses) - n_pulses // 2) / prf,
        bulk_shift=np.zeros(n_pulses, dtype=int),
        bulk_aligned=False,
    )
    out = rcmc(data, params, timings)
    corrected = np.fft.fft(out.data, axis=0, norm="ortho")
    for i in range(n_pulses):
        row = np.abs(corrected[i])
        centroid = np.sum(cols * row) / np.sum(row)
        assert abs(centroid - center) < 0.1


def test_azimuth_peak_at_target_position(desk_params):
    timings = derive_timings(desk_params)
    w = pn_weights(512, 1)
    pulse = ofdm_pulse(w, 95)
    scene = point_scene(desk_params, timings)
    raw = simulate_raw(scene, pulse, desk_params, timings)
    rc = range_compress_all(raw, "cp_ofdm", pulse, desk_params, timings, weights=w)
    img = azimuth_compress(rcmc(rc, desk_params, timings), desk_params, timings)
    row, col = np.unravel_index(np.argmax(np.abs(img.data)), img.data.shape)
    assert (row, col) == (128, 48)
    assert img.azimuth_spacing == pytest.approx(150.0 / 256.0)
    assert img.range_spacing == pytest.approx(timings.range_resolution)


def test_azimuth_zero_input(desk_params):
    timings = derive_timings(desk_params)
    data = RangeCompressedData(
        data=np.zeros((64, 96), dtype=complex),
        slow_time_axis=(np.arange(64) - 32) / 256.0,
        bulk_shift=np.zeros(64, dtype=int),
    )
    img = azimuth_compress(data, desk_params, timings)
    assert np.all(img.data == 0)


def test_azimuth_two_targets_ordering(desk_params):
    timings = derive_timings(desk_params)
    w = pn_weights(512, 2)
    pulse = ofdm_pulse(w, 95)
    sep = 24.0  # meters, tens of resolution cells apart
    scene = Scene(
        np.concatenate(
            [point_scene(desk_params, timings, y=-sep).x,
             point_scene(desk_params, timings, y=+sep).x]
        ),
        np.array([-sep, +sep]),
        np.array([1.0, 1.0], dtype=complex),
    )
    raw = simulate_raw(scene, pulse, desk_params, timings)
    rc = range_compress_all(raw, "cp_ofdm", pulse, desk_params, timings, weights=w)
    img = azimuth_compress(rcmc(rc, desk_params, timings), desk_params, timings)
    profile = np.abs(img.data[:, 48])
    rows_per_meter = 1.0 / img.azimuth_spacing
    r1, r2 = 128 - sep * rows_per_meter, 128 + sep * rows_per_meter
    found = sorted(np.argsort(profile)[-2:])
    assert abs(found[0] - r1) <= 1
    assert abs(found[1] - r2) <= 1


def test_azimuth_energy_preserved_by_final_transform(desk_params):
    timings = derive_timings(desk_params)
    rng = np.random.default_rng(5)
    data = RangeCompressedData(
        data=rng.normal(size=(128, 96)) + 1j * rng.normal(size=(128, 96)),
        slow_time_axis=(np.arange(128) - 64) / 256.0,
        bulk_shift=np.zeros(128, dtype=int),
    )
    ref = azimuth_reference(data.slow_time_axis, desk_params, timings)
    spectrum = np.fft.fft(data.data, axis=0, norm="ortho") * np.conj(
        np.fft.fft(ref, norm="ortho")
    )[:, None]
    img = azimuth_compress(data, desk_params, timings)
    assert np.sum(np.abs(img.data) ** 2) == pytest.approx(
        np.sum(np.abs(spectrum) ** 2), rel=1e-9
    )


def test_azimuth_peak_position_branch_invariant(desk_params):
    timings = derive_timings(desk_params)
    scene = point_scene(desk_params, timings, y=6.0)
    w = pn_weights(512, 4)
    positions = []
    for branch, pulse in [
        ("cp_ofdm", ofdm_pulse(w, 95)),
        ("matched_filter", lfm_pulse(607)),
        ("matched_filter", noise_pulse(607, seed=1)),
    ]:
        raw = simulate_raw(scene, pulse, desk_params, timings)
        rc = range_compress_all(
            raw, branch, pulse, desk_params, timings,
            weights=w if branch == "cp_ofdm" else None,
        )
        img = azimuth_compress(rcmc(rc, desk_params, timings), desk_params, timings)
        positions.append(np.unravel_index(np.argmax(np.abs(img.data)), img.data.shape))
    assert positions[0] == positions[1] == positions[2]
