"""Data emission helpers: CSV tables, JSON records, raw float64 rasters.

All floating-point values in machine-readable files are printed with 17
significant digits so that identical configurations reproduce bit-identical
output.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from zklab.kdv_core import Field1D, Grid1D

FLOAT_FMT = "%.17g"


def format_float(x: float) -> str:
    return FLOAT_FMT % float(x)


def write_csv(path, header: list[str], rows) -> None:
    """Write rows of floats as CSV with a named header row."""
    path = Path(path)
    with path.open("w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_float(x) for x in row) + "\n")


def read_csv(path) -> tuple[list[str], np.ndarray]:
    path = Path(path)
    with path.open() as fh:
        header = fh.readline().strip().split(",")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return header, data


def _jsonify(obj):
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonify(v) for v in obj.tolist()]
    if isinstance(obj, complex):
        return {"re": float(obj.real), "im": float(obj.imag)}
    return obj


def write_json(path, record: dict) -> None:
    path = Path(path)
    with path.open("w") as fh:
        json.dump(_jsonify(record), fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_json(path) -> dict:
    with Path(path).open() as fh:
        return json.load(fh)


def field1d_to_csv(field: Field1D, path) -> None:
    """Two-column (xi, value) CSV with a one-line header."""
    write_csv(path, ["xi", "value"], zip(field.grid.nodes, field.values))


def field1d_from_csv(path, grid: Grid1D) -> Field1D:
    _, data = read_csv(path)
    if data.shape[0] != grid.n:
        raise ValueError(f"row count {data.shape[0]} does not match grid n={grid.n}")
    return Field1D(grid, data[:, 1])


def grid1d_to_json(grid: Grid1D, path) -> None:
    write_json(path, {"L": grid.L, "n": grid.n})


def grid1d_from_json(path) -> Grid1D:
    rec = read_json(path)
    return Grid1D(L=float(rec["L"]), n=int(rec["n"]))


def write_raster(path, values: np.ndarray) -> None:
    """Row-major little-endian float64 dump of a 2D array."""
    arr = np.ascontiguousarray(values, dtype="<f8")
    arr.tofile(path)


def read_raster(path, nx: int, ny: int) -> np.ndarray:
    arr = np.fromfile(path, dtype="<f8")
    if arr.size != nx * ny:
        raise ValueError(f"raster size {arr.size} != {nx}*{ny}")
    return arr.reshape(nx, ny)
