"""CSV/JSON artifact readers with strict header validation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

SWEEP_HEADER = "B0_T,R_m,classification,max_offaxis,omega_L,omega_D,omega_I"
STATE_HEADER = "B0_T,P_bR,P_bL,P_m,P_k,P_s,entanglement,squeezing"


class ArtifactError(Exception):
    pass


@dataclass(frozen=True)
class PlotSpec:
    input_csv: str
    output_image: str
    borders_json: str | None = None
    axes_scale: tuple = ("log", "log")   # (x, y)
    dpi: int = 150
    extra: dict = field(default_factory=dict)


def _read_table(path: str, expected_header: str) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            header = fh.readline().rstrip("\n")
    except OSError as exc:
        raise ArtifactError(f"cannot read {path}: {exc}") from exc
    if header != expected_header:
        raise ArtifactError(
            f"{path}: unexpected header {header!r}, expected {expected_header!r}")
    try:
        data = np.genfromtxt(path, delimiter=",", skip_header=1,
                             dtype=float, ndmin=2)
    except ValueError as exc:
        raise ArtifactError(f"{path}: malformed CSV: {exc}") from exc
    if data.size == 0:
        raise ArtifactError(f"{path}: no data rows")
    if data.shape[1] != len(expected_header.split(",")):
        raise ArtifactError(f"{path}: wrong column count")
    return data


def read_sweep(path: str):
    """Load a sweep CSV into (B0_axis, R_axis, classification grid)."""
    data = _read_table(path, SWEEP_HEADER)
    b0 = np.unique(data[:, 0])
    r = np.unique(data[:, 1])
    grid = np.full((len(r), len(b0)), -1.0)
    i = np.searchsorted(r, data[:, 1])
    j = np.searchsorted(b0, data[:, 0])
    grid[i, j] = data[:, 2]
    if (grid < 0).any():
        raise ArtifactError(f"{path}: rows do not tile a full grid")
    return b0, r, grid.astype(int)


def read_state(path: str):
    """Load a state-scan CSV into (B0, entanglement, squeezing) arrays."""
    data = _read_table(path, STATE_HEADER)
    return data[:, 0], data[:, 6], data[:, 7]


def read_borders(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            borders = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ArtifactError(f"cannot read borders {path}: {exc}") from exc
    missing = {"B_c1", "B_c2", "R_c_samples"} - set(borders)
    if missing:
        raise ArtifactError(f"{path}: missing keys {sorted(missing)}")
    return borders
