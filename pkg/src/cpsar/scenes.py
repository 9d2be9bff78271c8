"""Built-in scenes and the scene file loader."""

from __future__ import annotations

import json
from importlib import resources

import numpy as np

from .model import (
    DerivedTimings,
    RadarParams,
    Scene,
    cell_slant_ranges,
    validate_scene,
)

BUILTIN_SCENES = ("point", "tank", "rangeline18", "uniform")


def _ground_range(slant, height: float) -> np.ndarray:
    return np.sqrt(np.asarray(slant, dtype=float) ** 2 - height**2)


def builtin_scene(
    name: str,
    params: RadarParams,
    timings: DerivedTimings,
    seed: int = 0,
) -> Scene:
    """Construct one of the named built-in scenes for the given radar.

    point        one unit scatterer at the swath center
    uniform      one unit scatterer in every range cell
    rangeline18  18 occupied cells with seeded random amplitudes
    tank         stylized tank silhouette of unit scatterers
    """
    r_cells = cell_slant_ranges(params, timings)
    center = params.num_range_cells // 2

    if name == "point":
        x = _ground_range(r_cells[center], params.platform_height)
        return Scene([x], [0.0], [1.0 + 0.0j])

    if name == "uniform":
        x = _ground_range(r_cells, params.platform_height)
        return Scene(x, np.zeros_like(x), np.ones(len(x), dtype=complex))

    if name == "rangeline18":
        rng = np.random.default_rng([seed, 18])
        occupied = np.sort(
            rng.choice(params.num_range_cells, size=18, replace=False)
        )
        amps = rng.uniform(0.25, 1.0, size=18)
        x = _ground_range(r_cells[occupied], params.platform_height)
        return Scene(x, np.zeros_like(x), amps.astype(complex))

    if name == "tank":
        ref = resources.files("cpsar.assets").joinpath("tank.json")
        asset = json.loads(ref.read_text(encoding="utf-8"))
        cells = np.asarray(asset["cells"], dtype=float)
        m_idx = center + cells[:, 0].astype(int)
        if m_idx.min() < 0 or m_idx.max() >= params.num_range_cells:
            raise ValueError("tank silhouette does not fit in the swath")
        x = _ground_range(r_cells[m_idx], params.platform_height)
        return Scene(x, cells[:, 1], np.ones(len(x), dtype=complex))

    raise ValueError(
        f"unknown builtin scene {name!r}; choose from {BUILTIN_SCENES}"
    )


def load_scene_file(
    path, params: RadarParams, timings: DerivedTimings
) -> Scene:
    """Load a scene JSON file and reject out-of-swath scatterers.

    Two forms are accepted: ``{"scatterers": [{"x", "y", "amplitude",
    "phase_deg"}, ...]}`` with phase_deg optional, or ``{"grid":
    {"origin": [x0, y0], "spacing": [dx, dy], "values": [[...], ...]}}``
    with real amplitudes where zero entries are skipped.
    """
    with open(path, encoding="utf-8") as f:
        doc = json.load(f)

    if "scatterers" in doc:
        entries = doc["scatterers"]
        x = np.array([e["x"] for e in entries], dtype=float)
        y = np.array([e["y"] for e in entries], dtype=float)
        amp = np.array([e["amplitude"] for e in entries], dtype=float)
        phase = np.array(
            [e.get("phase_deg", 0.0) for e in entries], dtype=float
        )
        g = amp * np.exp(1j * np.deg2rad(phase))
        scene = Scene(x, y, g)
    elif "grid" in doc:
        grid = doc["grid"]
        scene = Scene.from_grid(grid["origin"], grid["spacing"], grid["values"])
    else:
        raise ValueError(
            "scene file must contain a 'scatterers' or 'grid' field"
        )
    validate_scene(scene, params, timings)
    return scene
