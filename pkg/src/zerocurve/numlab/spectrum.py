"""Bound states of ``-y'' + V y = E y`` by second-order finite differences."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ..errors import WindowTooSmall
from ..grids import GridFunction

EDGE_FRACTION = 0.02


@dataclass(frozen=True)
class BoundStates:
    values: np.ndarray
    extrapolated: np.ndarray
    error_estimate: np.ndarray
    edge_mass: np.ndarray

    def __len__(self):
        return self.values.size

    def __iter__(self):
        return iter(self.values.tolist())


def _lowest(values: np.ndarray, dx: float, count: int, vectors: bool):
    interior = values[1:-1]
    diag = 2.0 / dx**2 + interior
    off = np.full(interior.size - 1, -1.0 / dx**2)
    count = min(count, interior.size)
    return eigh_tridiagonal(diag, off, eigvals_only=not vectors, select="i", select_range=(0, count - 1))


def bound_states(V: GridFunction, count: int = 1, mass_tol: float = 1e-6) -> BoundStates:
    """Negative eigenvalues among the lowest ``count`` (Dirichlet edges).

    The error estimate compares grid spacings ``dx`` and ``2 dx``;
    ``extrapolated`` is the Richardson value ``(4 E_dx - E_2dx) / 3``.
    Raises :class:`WindowTooSmall` when a bound state keeps more than
    ``mass_tol`` of its probability near either edge.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    E, vecs = _lowest(V.values, V.dx, count, vectors=True)
    neg = E < 0
    E, vecs = E[neg], vecs[:, neg]
    coarse = _lowest(V.values[::2], 2 * V.dx, count, vectors=False)
    coarse = coarse[: E.size]
    if coarse.size < E.size:
        coarse = np.concatenate([coarse, np.full(E.size - coarse.size, np.nan)])
    width = max(1, int(EDGE_FRACTION * vecs.shape[0]))
    p = vecs**2
    p /= p.sum(axis=0, keepdims=True)
    edge = p[:width].sum(axis=0) + p[-width:].sum(axis=0)
    bad = np.nonzero(edge > mass_tol)[0]
    if bad.size:
        raise WindowTooSmall(f"bound state(s) {bad.tolist()} keep {edge[bad].max():.3g} of their mass at the window edge")
    return BoundStates(E, (4 * E - coarse) / 3, np.abs(E - coarse) / 3, edge)
