"""Fourth-order transfer-matrix integration in x and in t.

Grid systems are stepped node to node with classical RK4; the generator at
interval midpoints comes from local cubic interpolation of the samples.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from ..errors import NonZeroTrace, OutOfWindow, StepUnderflow
from ..grids import GridFunction, HamiltonianGrid, interpolate, midpoint_values

TransferMatrix = np.ndarray  # complex (2, 2)

IDENTITY = np.eye(2, dtype=complex)
MAX_STEPS = 5_000_000
TRACE_TOL = 1e-12


def rk4_step_matrices(G0: np.ndarray, Gm: np.ndarray, G1: np.ndarray, h: float, unimodular: bool = True) -> np.ndarray:
    """RK4 propagators for ``T' = G T`` over steps of size ``h`` (batched).

    For trace-free generators the exact propagator lies in SL(2); RK4 misses
    that by O(h^5) per step, so each step is rescaled by ``det^(-1/2)``.
    The rescaling is itself O(h^5) and keeps fourth order.
    """
    eye = np.broadcast_to(IDENTITY, np.shape(G0))
    k1 = G0
    k2 = Gm @ (eye + 0.5 * h * k1)
    k3 = Gm @ (eye + 0.5 * h * k2)
    k4 = G1 @ (eye + h * k3)
    P = eye + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    if unimodular:
        P = P / np.sqrt(np.linalg.det(P))[..., None, None]
    return P


def rk4_propagate(gen: Callable[[float], np.ndarray], a: float, b: float, steps: int) -> np.ndarray:
    """Integrate ``T' = gen(x) T`` from ``a`` to ``b`` with ``steps`` RK4 steps."""
    T = IDENTITY.copy()
    if steps <= 0 or a == b:
        return T
    h = (b - a) / steps
    for i in range(steps):
        x = a + i * h
        P = rk4_step_matrices(gen(x), gen(x + 0.5 * h), gen(x + h), h)
        T = P @ T
    return T


# --------------------------------------------------------------------------
# generators for the two equation types


def schrodinger_generator(V: GridFunction, z: complex):
    """Node, midpoint and pointwise generators of ``[[0, 1], [V - z, 0]]``."""

    def build(v):
        v = np.asarray(v, dtype=complex)
        G = np.zeros(v.shape + (2, 2), dtype=complex)
        G[..., 0, 1] = 1.0
        G[..., 1, 0] = v - z
        return G

    return build(V.values), build(midpoint_values(V.values)), lambda x: build(V.at(x))


def canonical_generator(H: HamiltonianGrid, z: complex):
    """Generators of ``z [[g, h], [-f, -g]]`` (that is ``-z J H``)."""

    def build(f, g, h):
        G = np.empty(np.shape(f) + (2, 2), dtype=complex)
        G[..., 0, 0] = z * g
        G[..., 0, 1] = z * h
        G[..., 1, 0] = -z * f
        G[..., 1, 1] = -z * g
        return G

    mids = [midpoint_values(a) for a in (H.f, H.g, H.h)]
    return build(H.f, H.g, H.h), build(*mids), lambda x: build(*H.at(x))


def _generators(system, z):
    if isinstance(system, GridFunction):
        return schrodinger_generator(system, z)
    if isinstance(system, HamiltonianGrid):
        return canonical_generator(system, z)
    raise TypeError("system must be a GridFunction (Schrodinger) or a HamiltonianGrid (canonical)")


def transfer_between(system, z: complex, a: float, b: float, max_steps: int = MAX_STEPS) -> TransferMatrix:
    """Transfer matrix from ``x = a`` to ``x = b`` (either direction)."""
    for p in (a, b):
        if not system.contains(p):
            raise OutOfWindow(f"x = {p} outside the grid window [{system.x0}, {system.x_end}]")
    if a == b:
        return IDENTITY.copy()
    x0, dx, n = system.x0, system.dx, system.n
    if abs(b - a) / dx > max_steps:
        raise StepUnderflow(f"{abs(b - a) / dx:.3g} grid steps exceed the limit {max_steps}")
    nodes, mids, at = _generators(system, z)
    eps = 1e-9
    sa, sb = (a - x0) / dx, (b - x0) / dx
    T = IDENTITY.copy()

    def partial(p, q):
        h = q - p
        if h == 0:
            return IDENTITY
        return rk4_step_matrices(at(p), at(p + 0.5 * h), at(q), h)

    if b > a:
        ia = min(max(int(math.ceil(sa - eps)), 0), n - 1)
        ib = min(max(int(math.floor(sb + eps)), 0), n - 1)
        if ia > ib:
            return partial(a, b)
        xa, xb = x0 + ia * dx, x0 + ib * dx
        T = partial(a, xa) @ T if abs(sa - ia) > eps else T
        if ib > ia:
            P = rk4_step_matrices(nodes[ia:ib], mids[ia:ib], nodes[ia + 1 : ib + 1], dx)
            for M in P:
                T = M @ T
        if abs(sb - ib) > eps:
            T = partial(xb, b) @ T
        return T
    ia = min(max(int(math.floor(sa + eps)), 0), n - 1)
    ib = min(max(int(math.ceil(sb - eps)), 0), n - 1)
    if ia < ib:
        return partial(a, b)
    xa, xb = x0 + ia * dx, x0 + ib * dx
    T = partial(a, xa) @ T if abs(sa - ia) > eps else T
    if ia > ib:
        # backward steps from node i+1 to node i, walked right to left
        P = rk4_step_matrices(nodes[ib + 1 : ia + 1], mids[ib:ia], nodes[ib:ia], -dx)
        for M in P[::-1]:
            T = M @ T
    if abs(sb - ib) > eps:
        T = partial(xb, b) @ T
    return T


def transfer_schrodinger(V: GridFunction, z: complex, w: float) -> TransferMatrix:
    """``T(w)`` for ``T' = [[0, 1], [V - z, 0]] T``, ``T(0) = I``.

    Columns are the solutions ``u`` and ``v`` with ``(u, u')(0) = (1, 0)`` and
    ``(v, v')(0) = (0, 1)``; rows are value and derivative.
    """
    return transfer_between(V, z, 0.0, w)


def transfer_canonical(H: HamiltonianGrid, z: complex, w: float) -> TransferMatrix:
    """``T(w)`` for ``T' = z [[g, h], [-f, -g]] T``, ``T(0) = I``."""
    return transfer_between(H, z, 0.0, w)


def step_matrices(system, z: complex) -> np.ndarray:
    """Forward RK4 propagators over every grid interval, shape ``(n - 1, 2, 2)``."""
    nodes, mids, _ = _generators(system, z)
    return rk4_step_matrices(nodes[:-1], mids, nodes[1:], system.dx)


# --------------------------------------------------------------------------
# time evolution


def _checked(B_eval, t):
    B = np.asarray(B_eval(t), dtype=complex)
    if B.shape != (2, 2) or not np.all(np.isfinite(B)):
        raise ValueError(f"B({t}) must be a finite 2x2 matrix")
    if abs(B[0, 0] + B[1, 1]) > TRACE_TOL * max(1.0, float(np.abs(B).max())):
        raise NonZeroTrace(f"trace B({t}) = {B[0, 0] + B[1, 1]} is not zero")
    return B


def evolve_time(
    B_eval: Callable[[float], np.ndarray],
    t: float,
    steps: int | None = None,
    tol: float = 1e-12,
    min_step: float = 1e-9,
) -> TransferMatrix:
    """Solve ``dT/dt = B(t) T``, ``T(0) = I`` on ``[0, t]`` with RK4.

    With ``steps=None`` the step count doubles until two successive results
    agree to ``tol``; :class:`StepUnderflow` if that needs steps below
    ``min_step``.
    """
    if t == 0:
        return IDENTITY.copy()
    B = lambda s: _checked(B_eval, s)  # noqa: E731
    if steps is not None:
        return rk4_propagate(B, 0.0, t, int(steps))
    n = 16
    prev = rk4_propagate(B, 0.0, t, n)
    while True:
        n *= 2
        if abs(t) / n < min_step:
            raise StepUnderflow(f"step {abs(t) / n:.3g} below {min_step} before reaching tolerance {tol}")
        cur = rk4_propagate(B, 0.0, t, n)
        if np.abs(cur - prev).max() <= tol * max(1.0, float(np.abs(cur).max())):
            return cur
        prev = cur


def evolve_time_sampled(samples: np.ndarray, dt: float) -> TransferMatrix:
    """RK4 for ``T' = B T`` from B sampled at half steps ``0, dt/2, dt, ...``.

    ``samples`` has shape ``(2 m + 1, 2, 2)``; the result is ``T(m dt)``.
    """
    samples = np.asarray(samples, dtype=complex)
    if samples.shape[0] % 2 != 1:
        raise ValueError("need an odd number of half-step samples")
    for i, B in enumerate(samples):
        if abs(B[0, 0] + B[1, 1]) > TRACE_TOL * max(1.0, float(np.abs(B).max())):
            raise NonZeroTrace(f"sample {i} has nonzero trace")
    P = rk4_step_matrices(samples[0:-1:2], samples[1::2], samples[2::2], dt)
    T = IDENTITY.copy()
    for M in P:
        T = M @ T
    return T


def cocycle_residual(
    B_family: Callable[[float], np.ndarray],
    t1: float,
    t2: float,
    steps: int | None = None,
    tol: float = 1e-12,
) -> float:
    """``max |T(t1 + t2; L) - T(t1; t2 L) T(t2; L)|``.

    ``B_family(tau)`` is the generator at absolute time ``tau``, so the
    evolution started from ``s L`` uses ``tau -> B_family(s + tau)``.
    """
    if t1 == 0 and t2 == 0:
        return 0.0

    def T(t, s):
        return evolve_time(lambda tau: B_family(s + tau), t, steps=steps, tol=tol)

    lhs = T(t1 + t2, 0.0)
    rhs = T(t1, t2) @ T(t2, 0.0)
    return float(np.abs(lhs - rhs).max())


def cocycle_residual_sampled(samples: np.ndarray, dt: float, m1: int, m2: int) -> float:
    """Cocycle residual for half-step samples with ``t1 = m1 dt``, ``t2 = m2 dt``."""
    lhs = evolve_time_sampled(samples[: 2 * (m1 + m2) + 1], dt)
    T2 = evolve_time_sampled(samples[: 2 * m2 + 1], dt)
    T1 = evolve_time_sampled(samples[2 * m2 : 2 * (m1 + m2) + 1], dt)
    return float(np.abs(lhs - T1 @ T2).max())


# --------------------------------------------------------------------------
# joint (x, t) cocycle for canonical systems


def _hamiltonian_field(H):
    if isinstance(H, HamiltonianGrid):
        def fgh(x, t):
            if not H.contains(x):
                raise OutOfWindow(f"x = {x} outside the Hamiltonian grid")
            return tuple(float(interpolate(a, H.x0, H.dx, x)) for a in (H.f, H.g, H.h))

        return fgh
    if callable(H):
        return H
    raise TypeError("Hamiltonian must be a HamiltonianGrid or a callable (x, t) -> (f, g, h)")


def joint_transfer(H, B_family, z: complex, at: tuple, shift: tuple = (0.0, 0.0), step: float = 1e-3) -> TransferMatrix:
    """``T((x, t); shift . H) = T_t(t; (x0 + x, t0) . H) T_x(x; shift . H)``."""
    fgh = _hamiltonian_field(H)
    x, t = at
    x0, t0 = shift

    def M(s):
        f, g, h = fgh(x0 + s, t0)
        return z * np.array([[g, h], [-f, -g]], dtype=complex)

    def B(tau):
        return _checked(lambda u: B_family(x0 + x, t0 + u), tau)

    Tx = rk4_propagate(M, 0.0, x, max(1, int(math.ceil(abs(x) / step)))) if x else IDENTITY.copy()
    Tt = rk4_propagate(B, 0.0, t, max(1, int(math.ceil(abs(t) / step)))) if t else IDENTITY.copy()
    return Tt @ Tx


def joint_cocycle_residual(H, B_family, z: complex, g: tuple, h: tuple, step: float = 1e-3) -> float:
    """Residual of ``T(g + h; H) = T(g; h . H) T(h; H)`` in the max-entry norm.

    ``B_family(x, t)`` is the time generator at the point ``(x, t)``;
    ``H`` is a :class:`HamiltonianGrid` (static in t) or a callable
    ``(x, t) -> (f, g, h)``.
    """
    if all(v == 0 for v in (*g, *h)):
        return 0.0
    total = (g[0] + h[0], g[1] + h[1])
    lhs = joint_transfer(H, B_family, z, total, step=step)
    rhs = joint_transfer(H, B_family, z, g, shift=h, step=step) @ joint_transfer(H, B_family, z, h, step=step)
    return float(np.abs(lhs - rhs).max())


# --------------------------------------------------------------------------
# Mobius action


def lft_apply(T, w):
    """``(a w + b) / (c w + d)`` on the Riemann sphere; ``math.inf`` is infinity."""
    a, b, c, d = (complex(v) for v in np.asarray(T).ravel())
    if is_infinite(w):
        return math.inf if c == 0 else a / c
    w = complex(w)
    den = c * w + d
    if den == 0:
        return math.inf
    return (a * w + b) / den


def is_infinite(w) -> bool:
    try:
        return math.isinf(abs(complex(w)))
    except (TypeError, ValueError):
        return False


def chordal_distance(p, q) -> float:
    """Distance on the Riemann sphere (diameter 2)."""
    pinf, qinf = is_infinite(p), is_infinite(q)
    if pinf and qinf:
        return 0.0
    if pinf or qinf:
        w = complex(q if pinf else p)
        return 2.0 / math.sqrt(1 + abs(w) ** 2)
    p, q = complex(p), complex(q)
    return 2 * abs(p - q) / math.sqrt((1 + abs(p) ** 2) * (1 + abs(q) ** 2))
