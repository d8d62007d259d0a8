"""Time generators evaluated along numerically evolved potentials."""

from __future__ import annotations

import numpy as np

from ..grids import GridFunction
from ..kdv import HierarchyMember
from .pde import kdv_trajectory, spectral_derivative


def b_matrix_at(member: HierarchyMember, V: GridFunction, z: complex, index: int, constants=None) -> np.ndarray:
    """Numeric ``B = [[A, C], [-D, -A]]`` of ``member`` at grid node ``index``."""
    order = max(p.order() for e in (member.A, member.C, member.D) for p in e.coeffs) if member.C else 0
    values = {("V", 0): V.values[index]}
    for k in range(1, max(order, 0) + 1):
        values[("V", k)] = spectral_derivative(V.values, V.dx, k)[index]
    A, C, D = (e.evaluate(z, values, constants) for e in (member.A, member.C, member.D))
    return np.array([[A, C], [-D, -A]], dtype=complex)


def b_samples_along_kdv(member: HierarchyMember, V0: GridFunction, z: complex, t_final: float, steps: int, x: float = 0.0, method: str = "ifrk4") -> tuple[np.ndarray, float]:
    """B at ``x`` sampled at every half step of a KdV run.

    The PDE is stepped with ``dt / 2`` so that an RK4 step of size ``dt`` for
    the B-equation finds its midpoint sample; returns ``(samples, dt)``.
    """
    index = int(round((x - V0.x0) / V0.dx))
    if not 0 <= index < V0.n:
        raise ValueError(f"x = {x} is not on the grid")
    samples = [b_matrix_at(member, V, z, index) for _, V in kdv_trajectory(V0, t_final, 2 * steps, method)]
    return np.array(samples), t_final / steps
