"""Weyl m-functions from a finite cutoff, and their shift under transfer matrices.

Sign conventions (both make ``m_+`` and ``m_-`` Herglotz):

* Schrodinger ``-y'' + V y = z y``:  ``m_+ = y_+'/y_+``,  ``m_- = -y_-'/y_-``.
* Canonical ``J u' = z H u``:  ``m_+ = -u1_+/u2_+``,  ``m_- = u1_-/u2_-``.

Here ``y_+`` (``u_+``) is square integrable at ``+inf`` and ``y_-`` (``u_-``) at
``-inf``.  Beyond the cutoff the coefficients are frozen at their value there
and the decaying solution of that constant-coefficient problem is imposed.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from ..errors import CutoffTooSmall, DegenerateDeterminant, OutOfWindow
from ..grids import GridFunction, HamiltonianGrid
from .transfer import lft_apply, transfer_between


@dataclass(frozen=True)
class MFunctionSample:
    z: complex
    m_plus: complex
    m_minus: complex
    base: float = 0.0
    cutoff: float = float("nan")
    doubling_change: float = float("nan")


def _decaying_vector(system, z: complex, x: float, side: int) -> np.ndarray:
    """Data at ``x`` of the solution decaying towards ``side * inf``."""
    if isinstance(system, GridFunction):
        k = cmath.sqrt(complex(system.at(x)) - z)  # Re k > 0 for Im z > 0
        return np.array([1.0, -side * k], dtype=complex)
    f, g, h = (float(v) for v in system.at(x))
    delta = f * h - g * g
    if delta <= 0:
        raise DegenerateDeterminant([int(round((x - system.x0) / system.dx))], f"det H = {delta} at the cutoff x = {x}")
    lam = side * 1j * z * np.sqrt(delta)  # Re lam has sign -side
    v1 = np.array([z * h, lam - z * g], dtype=complex)
    v2 = np.array([-z * g - lam, z * f], dtype=complex)
    return v1 if np.abs(v1).max() >= np.abs(v2).max() else v2


def _m_pair(system, z: complex, base: float, cutoff: float) -> tuple[complex, complex]:
    out = []
    for side in (1, -1):
        far = base + side * cutoff
        vec = transfer_between(system, z, far, base) @ _decaying_vector(system, z, far, side)
        if isinstance(system, GridFunction):
            ratio = vec[1] / vec[0]  # y'/y
            out.append(ratio if side == 1 else -ratio)
        else:
            ratio = vec[0] / vec[1]  # u1/u2
            out.append(-ratio if side == 1 else ratio)
    return out[0], out[1]


def m_function(system, z: complex, cutoff: float, base: float = 0.0, tol: float = 1e-6, check_doubling: bool = True) -> MFunctionSample:
    """``m_+`` and ``m_-`` at ``base`` for a Schrodinger potential or a Hamiltonian grid.

    Raises :class:`CutoffTooSmall` when doubling the cutoff moves either value
    by more than ``tol``.
    """
    z = complex(z)
    if z.imag <= 0:
        raise ValueError("m-functions are sampled for Im z > 0")
    reach = 2 * cutoff if check_doubling else cutoff
    for p in (base - reach, base + reach):
        if not system.contains(p):
            raise OutOfWindow(f"base {base} +/- {reach} leaves the window [{system.x0}, {system.x_end}]")
    mp, mm = _m_pair(system, z, base, cutoff)
    change = float("nan")
    if check_doubling:
        mp2, mm2 = _m_pair(system, z, base, 2 * cutoff)
        change = max(abs(mp2 - mp), abs(mm2 - mm))
        if change > tol:
            raise CutoffTooSmall(f"doubling cutoff {cutoff} moved m by {change:.3g} > {tol}")
    return MFunctionSample(z, complex(mp), complex(mm), base, cutoff, change)


def shift_m(T, m: complex, sign: int, kind: str = "schrodinger") -> complex:
    """Move an m-function value along the transfer matrix ``T``.

    ``T`` carries solution data from the old base point to the new one; the
    returned value is the m-function (same sign convention) at the new base.
    """
    if kind == "schrodinger":
        if sign > 0:
            return 1 / lft_apply(T, 1 / m)
        return -1 / lft_apply(T, -1 / m)
    if kind == "canonical":
        if sign > 0:
            return -lft_apply(T, -m)
        return lft_apply(T, m)
    raise ValueError("kind must be 'schrodinger' or 'canonical'")


def free_m_function(z: complex, V0: float = 0.0) -> complex:
    """Closed-form ``m_+ = m_-`` for the constant potential ``V0``: ``-sqrt(V0 - z)``."""
    return -cmath.sqrt(complex(V0) - complex(z))
