"""Cyclic-prefix OFDM SAR simulation and imaging toolkit.

Waveform synthesis, raw echo simulation, leakage-free OFDM range
reconstruction with matched-filter baselines, range-Doppler azimuth
processing, and the evaluation metrics used by the bundled experiments.
"""

from .azimuth import (
    ImageMatrix,
    RangeCompressedData,
    azimuth_compress,
    range_compress_all,
    rcmc,
)
from .echo import (
    RawData,
    WeightingCoefficients,
    azimuth_envelope,
    simulate_echo_line,
    simulate_raw,
    slant_range,
    weighting_coefficients,
)
from .metrics import (
    MseCurve,
    Profile,
    extract_profiles,
    image_mse,
    mainlobe_width_3db,
    mse_vs_cp,
    peak_sidelobe_level,
    snr_gain,
)
from .model import (
    SPEED_OF_LIGHT,
    DerivedTimings,
    RadarParams,
    RangeLine,
    Scene,
    ValidationReport,
    derive_timings,
    scene_to_range_line,
    validate_params,
)
from .rangecomp import (
    CirculantChannel,
    RangeEstimate,
    build_circulant,
    cp_ofdm_fold_oracle,
    cp_ofdm_range_compress,
    dense_circulant_solve,
    irci_oracle,
    matched_filter_compress,
)
from .scenes import builtin_scene, load_scene_file
from .waveform import (
    Pulse,
    WeightVector,
    constant_weights,
    lfm_pulse,
    noise_pulse,
    ofdm_pulse,
    papr,
    pn_weights,
    truncated_cp_pulse,
    weights_from_signal,
    zadoff_chu_weights,
)

__version__ = "0.1.0"
