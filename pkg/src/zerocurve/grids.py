"""Uniform-grid containers and finite-difference helpers."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

MIN_POINTS = 4


def _check_spacing(x: np.ndarray) -> tuple[float, float]:
    if x.size < MIN_POINTS:
        raise ValueError(f"need at least {MIN_POINTS} grid points, got {x.size}")
    steps = np.diff(x)
    dx = float(steps.mean())
    if dx <= 0 or np.max(np.abs(steps - dx)) > 1e-9 * max(1.0, abs(dx)) + 1e-6 * dx:
        raise ValueError("grid is not uniform and increasing")
    return float(x[0]), dx


def _read_columns(path, expected: list[str]) -> dict:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = [h.strip() for h in next(reader)]
        if header != expected:
            raise ValueError(f"{path}: expected header {','.join(expected)}, got {','.join(header)}")
        rows = [[float(v) for v in row] for row in reader if row and any(c.strip() for c in row)]
    data = np.asarray(rows, dtype=float)
    if data.ndim != 2 or data.shape[1] != len(expected):
        raise ValueError(f"{path}: malformed rows")
    if not np.all(np.isfinite(data)):
        raise ValueError(f"{path}: non-finite values")
    return {name: data[:, i] for i, name in enumerate(expected)}


def _write_columns(path, columns: dict) -> None:
    names = list(columns)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names)
        for row in zip(*(columns[n] for n in names)):
            w.writerow([repr(float(v)) for v in row])


def interpolation_weights(t):
    """Cubic Lagrange weights for nodes at -1, 0, 1, 2 evaluated at offset ``t``."""
    t = np.asarray(t, dtype=float)
    return np.stack(
        [
            -t * (t - 1) * (t - 2) / 6,
            (t + 1) * (t - 1) * (t - 2) / 2,
            -(t + 1) * t * (t - 2) / 2,
            (t + 1) * t * (t - 1) / 6,
        ],
        axis=-1,
    )


def interpolate(values: np.ndarray, x0: float, dx: float, x) -> np.ndarray:
    """Local 4-point cubic interpolation of uniformly sampled ``values``."""
    n = values.shape[0]
    s = (np.asarray(x, dtype=float) - x0) / dx
    i = np.clip(np.floor(s).astype(int), 1, n - 3)
    t = s - i
    w = interpolation_weights(t)
    idx = i[..., None] + np.arange(-1, 3)
    return np.sum(values[idx] * w, axis=-1)


def midpoint_values(values: np.ndarray) -> np.ndarray:
    """Cubic estimates at interval midpoints (length ``n - 1``)."""
    v = np.asarray(values)
    n = v.shape[0]
    mid = np.empty(n - 1, dtype=v.dtype)
    mid[1:-1] = (-v[:-3] + 9 * v[1:-2] + 9 * v[2:-1] - v[3:]) / 16
    mid[0] = (5 * v[0] + 15 * v[1] - 5 * v[2] + v[3]) / 16
    mid[-1] = (5 * v[-1] + 15 * v[-2] - 5 * v[-3] + v[-4]) / 16
    return mid


def first_derivative(values: np.ndarray, dx: float) -> np.ndarray:
    """Central second-order differences, one-sided second-order at the ends."""
    return np.gradient(np.asarray(values), dx, edge_order=2)


def second_derivative(values: np.ndarray, dx: float) -> np.ndarray:
    v = np.asarray(values)
    out = np.empty_like(v, dtype=np.result_type(v, float))
    out[1:-1] = (v[2:] - 2 * v[1:-1] + v[:-2]) / dx**2
    out[0] = (2 * v[0] - 5 * v[1] + 4 * v[2] - v[3]) / dx**2
    out[-1] = (2 * v[-1] - 5 * v[-2] + 4 * v[-3] - v[-4]) / dx**2
    return out


@dataclass(frozen=True)
class GridFunction:
    x0: float
    dx: float
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values)
        if vals.ndim != 1 or vals.size < MIN_POINTS:
            raise ValueError(f"GridFunction needs a 1-d array with >= {MIN_POINTS} samples")
        if not self.dx > 0:
            raise ValueError("dx must be positive")
        if not np.all(np.isfinite(vals)):
            raise ValueError("GridFunction values must be finite")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, fn, x0: float, x1: float, dx: float) -> "GridFunction":
        n = int(round((x1 - x0) / dx)) + 1
        x = x0 + dx * np.arange(n)
        return cls(float(x0), float(dx), np.asarray(fn(x), dtype=float) * np.ones(n))

    @classmethod
    def from_csv(cls, path) -> "GridFunction":
        cols = _read_columns(path, ["x", "value"])
        x0, dx = _check_spacing(cols["x"])
        return cls(x0, dx, cols["value"])

    def to_csv(self, path) -> None:
        _write_columns(path, {"x": self.x, "value": self.values})

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)

    @property
    def x_end(self) -> float:
        return self.x0 + self.dx * (self.n - 1)

    def contains(self, x, slack: float = 1e-9) -> bool:
        eps = slack * max(1.0, abs(self.x0), abs(self.x_end))
        return self.x0 - eps <= x <= self.x_end + eps

    def at(self, x):
        return interpolate(self.values, self.x0, self.dx, x)

    def with_values(self, values) -> "GridFunction":
        return GridFunction(self.x0, self.dx, np.asarray(values))


@dataclass(frozen=True)
class HamiltonianGrid:
    """Sampled symmetric positive semidefinite ``[[f, g], [g, h]]``."""

    x0: float
    dx: float
    f: np.ndarray
    g: np.ndarray
    h: np.ndarray
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        arrays = [np.asarray(a, dtype=float) for a in (self.f, self.g, self.h)]
        n = arrays[0].size
        if any(a.ndim != 1 or a.size != n for a in arrays) or n < MIN_POINTS:
            raise ValueError(f"f, g, h must be 1-d arrays of equal length >= {MIN_POINTS}")
        if not all(np.all(np.isfinite(a)) for a in arrays):
            raise ValueError("Hamiltonian samples must be finite")
        if not self.dx > 0:
            raise ValueError("dx must be positive")
        for name, a in zip("fgh", arrays):
            object.__setattr__(self, name, a)

    @classmethod
    def from_functions(cls, f, g, h, x0: float, x1: float, dx: float) -> "HamiltonianGrid":
        n = int(round((x1 - x0) / dx)) + 1
        x = x0 + dx * np.arange(n)
        ones = np.ones(n)
        return cls(float(x0), float(dx), f(x) * ones, g(x) * ones, h(x) * ones)

    @classmethod
    def from_csv(cls, path) -> "HamiltonianGrid":
        cols = _read_columns(path, ["x", "f", "g", "h"])
        x0, dx = _check_spacing(cols["x"])
        return cls(x0, dx, cols["f"], cols["g"], cols["h"])

    def to_csv(self, path) -> None:
        _write_columns(path, {"x": self.x, "f": self.f, "g": self.g, "h": self.h})

    @property
    def n(self) -> int:
        return self.f.size

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)

    @property
    def x_end(self) -> float:
        return self.x0 + self.dx * (self.n - 1)

    @property
    def delta(self) -> np.ndarray:
        return self.f * self.h - self.g**2

    def contains(self, x, slack: float = 1e-9) -> bool:
        eps = slack * max(1.0, abs(self.x0), abs(self.x_end))
        return self.x0 - eps <= x <= self.x_end + eps

    def at(self, x):
        return tuple(interpolate(a, self.x0, self.dx, x) for a in (self.f, self.g, self.h))


def write_snapshots(path: Path | str, x: np.ndarray, snapshots: list[tuple[float, np.ndarray]]) -> None:
    """Plot-ready CSV: one ``x`` column and one column per snapshot time."""
    cols = {"x": x}
    for t, vals in snapshots:
        cols[f"t={t!r}"] = vals
    _write_columns(path, cols)
