import numpy as np
import pytest

from cpsar.model import RadarParams, derive_timings


@pytest.fixture
def paper_params():
    """The reference system configuration used throughout the experiments."""
    return RadarParams(
        carrier_freq=9e9,
        bandwidth=150e6,
        num_subcarriers=512,
        num_range_cells=96,
        cp_len=95,
        prf=800.0,
        platform_velocity=150.0,
        platform_height=5000.0,
        antenna_length=1.0,
        aperture_time=1.0,
        swath_center_range=5000.0 * np.sqrt(2.0),
    )


@pytest.fixture
def paper_timings(paper_params):
    return derive_timings(paper_params)


@pytest.fixture
def desk_params(paper_params):
    """Reference configuration subsampled to 256 pulses for fast image runs."""
    from dataclasses import replace

    return replace(paper_params, prf=256.0)
