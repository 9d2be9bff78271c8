"""On-disk formats: complex rasters, PGM quicklooks, CSV tables, configs.

All writers are atomic (temp file then rename) and bit-reproducible:
fixed byte order, fixed float formatting, LF newlines.
"""

from __future__ import annotations

import json
import os
import struct
import tempfile

import numpy as np

from .model import RadarParams

SARF_MAGIC = b"SARF"

_RADAR_FIELDS = (
    "carrier_freq",
    "bandwidth",
    "num_subcarriers",
    "num_range_cells",
    "cp_len",
    "prf",
    "platform_velocity",
    "platform_height",
    "antenna_length",
    "aperture_time",
    "swath_center_range",
)

_INT_FIELDS = {"num_subcarriers", "num_range_cells", "cp_len"}


class ConfigError(ValueError):
    """Raised for malformed or incomplete configuration input."""


def _atomic_write(path, data: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def write_sarf(path, matrix) -> None:
    """Write a complex matrix: 'SARF', u32 rows, u32 cols, f64 (re, im) pairs.

    All fields little-endian, samples row-major.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2:
        raise ValueError("raster must be 2-D")
    rows, cols = m.shape
    interleaved = np.empty((rows, cols, 2), dtype="<f8")
    interleaved[:, :, 0] = m.real
    interleaved[:, :, 1] = m.imag
    payload = SARF_MAGIC + struct.pack("<II", rows, cols) + interleaved.tobytes()
    _atomic_write(path, payload)


def read_sarf(path) -> np.ndarray:
    with open(path, "rb") as f:
        blob = f.read()
    if blob[:4] != SARF_MAGIC:
        raise ValueError(f"{path}: not a SARF raster")
    rows, cols = struct.unpack("<II", blob[4:12])
    flat = np.frombuffer(blob[12:], dtype="<f8")
    if len(flat) != rows * cols * 2:
        raise ValueError(f"{path}: truncated raster")
    pairs = flat.reshape(rows, cols, 2)
    return pairs[:, :, 0] + 1j * pairs[:, :, 1]


def write_pgm(path, matrix, floor_db: float = -60.0) -> None:
    """8-bit P5 quicklook: peak-normalized magnitude in dB, clipped to [floor, 0]."""
    mag = np.abs(np.asarray(matrix))
    rows, cols = mag.shape
    peak = mag.max()
    if peak == 0:
        pixels = np.zeros((rows, cols), dtype=np.uint8)
    else:
        with np.errstate(divide="ignore"):
            db = 20.0 * np.log10(mag / peak)
        db = np.clip(db, floor_db, 0.0)
        pixels = np.round(255.0 * (db - floor_db) / (-floor_db)).astype(np.uint8)
    header = f"P5\n{cols} {rows}\n255\n".encode("ascii")
    _atomic_write(path, header + pixels.tobytes())


def format_float(x: float) -> str:
    return f"{x:.17g}"


def write_csv(path, header, rows) -> None:
    """CSV with a header row; floats at 17 significant digits, LF newlines."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(
            ",".join(
                format_float(v) if isinstance(v, float) else str(v)
                for v in row
            )
        )
    _atomic_write(path, ("\n".join(lines) + "\n").encode("utf-8"))


def load_config(path) -> dict:
    """Parse a JSON config file; errors carry line/field diagnostics."""
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(
            f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from e


def radar_params_from_config(cfg: dict) -> RadarParams:
    """Extract radar parameters from a flat config dict."""
    missing = [k for k in _RADAR_FIELDS if k not in cfg]
    if missing:
        raise ConfigError(f"config missing radar fields: {', '.join(missing)}")
    kwargs = {}
    for k in _RADAR_FIELDS:
        v = cfg[k]
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise ConfigError(f"config field {k!r} must be a number, got {v!r}")
        if k in _INT_FIELDS:
            if int(v) != v:
                raise ConfigError(f"config field {k!r} must be an integer")
            v = int(v)
        kwargs[k] = v
    return RadarParams(**kwargs)
