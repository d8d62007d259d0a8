"""Canonical-system zero-curvature equations and the degree >= 2 obstruction.

Space generator ``z [[g, h], [-f, -g]]`` for the Hamiltonian
``H = [[f, g], [g, h]]``; time generator ``[[A, C], [-D, -A]]`` polynomial in
``z``.  The three scalar equations are linear in ``(A, C, D)`` with a singular
coefficient matrix whose left kernel contains ``(f, -h, -2g)``; contracting
with it gives the consistency condition on ``Delta = f h - g^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .diffpoly import DiffPoly, FlowRule, Symbol, ZDiffPoly
from .errors import DegenerateDeterminant, DegreeTooLow, SolverOverflow
from .grids import GridFunction, HamiltonianGrid, first_derivative, second_derivative
from .numlab.transfer import step_matrices

F, G, H_ = (Symbol(n) for n in "fgh")
K_SYMBOL = Symbol("K")
K = DiffPoly.var(K_SYMBOL)
Z = ZDiffPoly.z()


@dataclass(frozen=True)
class SymbolicHamiltonian:
    f: DiffPoly
    g: DiffPoly
    h: DiffPoly

    @classmethod
    def generic(cls) -> "SymbolicHamiltonian":
        return cls(DiffPoly.var(F), DiffPoly.var(G), DiffPoly.var(H_))

    @property
    def delta(self) -> DiffPoly:
        return self.f * self.h - self.g**2


GENERIC = SymbolicHamiltonian.generic()


@dataclass(frozen=True)
class CsBMatrix:
    A: ZDiffPoly
    C: ZDiffPoly
    D: ZDiffPoly

    @classmethod
    def zero(cls) -> "CsBMatrix":
        return cls(ZDiffPoly(), ZDiffPoly(), ZDiffPoly())

    @classmethod
    def formal(cls, n: int, prefix: tuple = ("A", "C", "D")) -> "CsBMatrix":
        """Degree-``n`` generator whose coefficients are fresh field symbols ``A0 .. An`` etc."""
        return cls(*(ZDiffPoly(DiffPoly.var(Symbol(f"{p}{k}")) for k in range(n + 1)) for p in prefix))

    @property
    def entries(self) -> list:
        return [[self.A, self.C], [-self.D, -self.A]]

    @property
    def degree(self) -> int:
        return max(self.A.degree, self.C.degree, self.D.degree)

    def trace(self) -> ZDiffPoly:
        return self.A - self.A

    def to_json(self) -> dict:
        return {"A": self.A.to_json(), "C": self.C.to_json(), "D": self.D.to_json()}


def cs_m_matrix(H: SymbolicHamiltonian = GENERIC) -> list:
    return [[Z * H.g, Z * H.h], [-(Z * H.f), -(Z * H.g)]]


def _dt(p: DiffPoly, flow: FlowRule) -> DiffPoly:
    return p.dt(flow)


def cs_three_residuals(B: CsBMatrix, flow: FlowRule, H: SymbolicHamiltonian = GENERIC) -> tuple:
    """Left minus right side of the three scalar zero-curvature equations.

    ``z h_t - C_x - (2zhA - 2zgC)``, ``-z f_t + D_x - (2zfA - 2zgD)``,
    ``z g_t - A_x - (-zfC + zhD)``.
    """
    ft, gt, ht = (_dt(p, flow) for p in (H.f, H.g, H.h))
    A, C, D = B.A, B.C, B.D
    r1 = Z * ht - C.dx() - (Z * H.h * A * 2 - Z * H.g * C * 2)
    r2 = -(Z * ft) + D.dx() - (Z * H.f * A * 2 - Z * H.g * D * 2)
    r3 = Z * gt - A.dx() - (-(Z * H.f * C) + Z * H.h * D)
    return r1, r2, r3


def cs_zero_curvature_residual(B: CsBMatrix, flow: FlowRule, H: SymbolicHamiltonian = GENERIC) -> list:
    """``dt M - dx B - (B M - M B)`` as a 2x2 matrix of z-polynomials."""
    M = cs_m_matrix(H)
    Bm = B.entries
    mul = lambda X, Y: [[X[i][0] * Y[0][j] + X[i][1] * Y[1][j] for j in range(2)] for i in range(2)]  # noqa: E731
    BM, MB = mul(Bm, M), mul(M, Bm)
    return [[M[i][j].dt(flow) - Bm[i][j].dx() - (BM[i][j] - MB[i][j]) for j in range(2)] for i in range(2)]


def coefficient_matrix(H: SymbolicHamiltonian = GENERIC) -> list:
    """z-stripped coefficient matrix of the linear system for ``(A, C, D)``."""
    zero = DiffPoly()
    return [
        [H.h * 2, H.g * -2, zero],
        [H.f * 2, zero, H.g * -2],
        [zero, -H.f, H.h],
    ]


def det3(m: list) -> DiffPoly:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def kernel_vector(H: SymbolicHamiltonian = GENERIC) -> tuple:
    return (H.f, -H.h, H.g * -2)


def left_kernel_products(H: SymbolicHamiltonian = GENERIC) -> list:
    """``kernel_vector . coefficient_matrix`` (three DiffPolys, all zero)."""
    w = kernel_vector(H)
    m = coefficient_matrix(H)
    return [w[0] * m[0][j] + w[1] * m[1][j] + w[2] * m[2][j] for j in range(3)]


def matrix_equation_rhs(B: CsBMatrix, flow: FlowRule, H: SymbolicHamiltonian = GENERIC) -> tuple:
    ft, gt, ht = (_dt(p, flow) for p in (H.f, H.g, H.h))
    return (Z * ht - B.C.dx(), -(Z * ft) + B.D.dx(), Z * gt - B.A.dx())


def matrix_equation_lhs(B: CsBMatrix, H: SymbolicHamiltonian = GENERIC) -> tuple:
    m = coefficient_matrix(H)
    vec = (B.A, B.C, B.D)
    return tuple(Z * sum((vec[j] * m[i][j] for j in range(3)), ZDiffPoly()) for i in range(3))


def kernel_contraction(B: CsBMatrix, flow: FlowRule, H: SymbolicHamiltonian = GENERIC) -> ZDiffPoly:
    """Kernel vector applied to the right-hand side of the matrix equation."""
    w = kernel_vector(H)
    rhs = matrix_equation_rhs(B, flow, H)
    return sum((rhs[i] * w[i] for i in range(3)), ZDiffPoly())


def consistency_residual(B: CsBMatrix, flow: FlowRule, H: SymbolicHamiltonian = GENERIC) -> ZDiffPoly:
    """``z Delta_t - (f C_x + h D_x - 2 g A_x)``; zero iff the system is consistent."""
    return Z * H.delta.dt(flow) - (B.C.dx() * H.f + B.D.dx() * H.h - B.A.dx() * H.g * 2)


def consistency_coefficient(B: CsBMatrix, k: int, H: SymbolicHamiltonian = GENERIC) -> DiffPoly:
    """``f C_k,x + h D_k,x - 2 g A_k,x``, which must vanish for ``2 <= k <= n``."""
    return H.f * B.C.coeff(k).dx() + H.h * B.D.coeff(k).dx() - H.g * B.A.coeff(k).dx() * 2


@dataclass(frozen=True)
class TopCoefficientForcing:
    degree: int
    identities: tuple  # (h A_n - g C_n, f A_n - g D_n, f C_n - h D_n)
    forced: dict  # name -> DiffPoly in K
    substituted: tuple
    top_residuals: tuple  # z^{n+1} coefficients of the three residuals for a formal B

    @property
    def holds(self) -> bool:
        return all(p.is_zero() for p in self.substituted)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "identities": [str(p) for p in self.identities],
            "forced": {k: str(v) for k, v in self.forced.items()},
            "substituted": [str(p) for p in self.substituted],
            "holds": self.holds,
        }


def top_coefficient_forcing(n: int, H: SymbolicHamiltonian = GENERIC) -> TopCoefficientForcing:
    """Highest-power equations for a degree-``n`` generator and their solution in ``K``."""
    if n < 2:
        raise DegreeTooLow(f"degree {n} < 2: the obstruction argument needs n >= 2")
    B = CsBMatrix.formal(n)
    An, Cn, Dn = B.A.coeff(n), B.C.coeff(n), B.D.coeff(n)
    identities = (H.h * An - H.g * Cn, H.f * An - H.g * Dn, H.f * Cn - H.h * Dn)
    forced = {f"A{n}": H.g * K, f"C{n}": H.h * K, f"D{n}": H.f * K}
    substituted = tuple(p.subs(forced) for p in identities)
    flow = FlowRule({s: 0 for s in H.f.field_symbols() | H.g.field_symbols() | H.h.field_symbols()})
    top = tuple(r.coeff(n + 1) for r in cs_three_residuals(B, flow, H))
    return TopCoefficientForcing(n, identities, forced, substituted, top)


def k_ode_residual(Kp: DiffPoly = K, H: SymbolicHamiltonian = GENERIC) -> DiffPoly:
    """``f (hK)_x + h (fK)_x - 2 g (gK)_x``: the top consistency coefficient after forcing."""
    return H.f * (H.h * Kp).dx() + H.h * (H.f * Kp).dx() - H.g * (H.g * Kp).dx() * 2


def k_ode_closed_form(Kp: DiffPoly = K, H: SymbolicHamiltonian = GENERIC) -> DiffPoly:
    """``Delta_x K + 2 Delta K_x``."""
    d = H.delta
    return d.dx() * Kp + d * Kp.dx() * 2


# --------------------------------------------------------------------------
# grid path


@dataclass
class ObstructionReport:
    degree: int
    forced: dict
    k_ode_identity: bool
    top_identities_hold: bool
    x: np.ndarray
    K_profile: np.ndarray
    residual: np.ndarray
    max_residual: float
    tol: float
    kappa: float = 1.0
    degenerate_points: list = dc_field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return self.k_ode_identity and self.top_identities_hold and not self.degenerate_points and self.max_residual < self.tol

    @property
    def verdict(self) -> str:
        if self.degenerate_points:
            return "degenerate: det H <= 0 on the grid, K = kappa*Delta^(-1/2) is undefined there"
        if not self.consistent:
            return f"inconsistent: K = kappa*Delta^(-1/2) fails the K-equation (max residual {self.max_residual:.3g} >= tol {self.tol:.3g})"
        return (
            f"consistent: a flow of degree {self.degree} forces K = kappa*Delta^(-1/2); "
            "it exists only if Delta^(-1/2) is a differential polynomial in f, g, h (membership not decided)"
        )

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "forced_top_coefficients": {k: str(v) for k, v in self.forced.items()},
            "k_ode_symbolic_identity": self.k_ode_identity,
            "top_identities_hold": self.top_identities_hold,
            "kappa": self.kappa,
            "K_profile": [float(v) for v in self.K_profile],
            "max_residual": float(self.max_residual),
            "tolerance": float(self.tol),
            "degenerate_points": list(self.degenerate_points),
            "verdict": self.verdict,
            "pass": self.consistent,
        }


def k_ode_grid_residual(Hgrid: HamiltonianGrid, kappa: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """``K = kappa / sqrt(Delta)`` and the finite-difference residual of ``Delta_x K + 2 Delta K_x``."""
    delta = Hgrid.delta
    bad = np.nonzero(delta <= 0)[0]
    if bad.size:
        raise DegenerateDeterminant(bad.tolist())
    Kv = kappa / np.sqrt(delta)
    res = first_derivative(delta, Hgrid.dx) * Kv + 2 * delta * first_derivative(Kv, Hgrid.dx)
    return Kv, res


def obstruction_check(Hgrid: HamiltonianGrid, n: int = 2, tol: float = 1e-4, kappa: float = 1.0) -> ObstructionReport:
    """Replay the degree-``n`` obstruction on a sampled Hamiltonian.

    Raises :class:`DegenerateDeterminant` (with the offending indices) if
    ``Delta <= 0`` anywhere and :class:`DegreeTooLow` for ``n < 2``.
    """
    forcing = top_coefficient_forcing(n)
    identity = (k_ode_residual() - k_ode_closed_form()).is_zero()
    Kv, res = k_ode_grid_residual(Hgrid, kappa)
    return ObstructionReport(
        degree=n,
        forced=forcing.forced,
        k_ode_identity=identity,
        top_identities_hold=forcing.holds,
        x=Hgrid.x,
        K_profile=Kv,
        residual=res,
        max_residual=float(np.max(np.abs(res))),
        tol=tol,
        kappa=kappa,
    )


# --------------------------------------------------------------------------
# Schrodinger potential -> rank-one Hamiltonian


@dataclass(frozen=True)
class ZeroEnergySolutions:
    x: np.ndarray
    u: np.ndarray
    ux: np.ndarray
    v: np.ndarray
    vx: np.ndarray
    steps: np.ndarray  # forward propagators over each grid interval
    dx: float

    @property
    def wronskian(self) -> np.ndarray:
        return self.u * self.vx - self.ux * self.v

    def wronskian_error(self) -> float:
        """``max |W - 1|`` relative to the size of the two products forming ``W``."""
        scale = np.maximum(1.0, np.abs(self.u * self.vx) + np.abs(self.ux * self.v))
        return float(np.max(np.abs(self.wronskian - 1) / scale))


def zero_energy_solutions(V: GridFunction, x_ref: float = 0.0, cap: float = 1e150) -> ZeroEnergySolutions:
    """Solutions of ``y'' = V y`` with ``(u, u') = (1, 0)``, ``(v, v') = (0, 1)`` at ``x_ref``."""
    s = (x_ref - V.x0) / V.dx
    i0 = int(round(s))
    if abs(s - i0) > 1e-6 or not 0 <= i0 < V.n:
        raise ValueError(f"x_ref = {x_ref} must be a grid node")
    P = np.real(step_matrices(V, 0.0))
    T = np.empty((V.n, 2, 2))
    T[i0] = np.eye(2)
    for i in range(i0, V.n - 1):
        T[i + 1] = P[i] @ T[i]
    if i0 > 0:
        back = np.real(_backward_steps(V))
        for i in range(i0, 0, -1):
            T[i - 1] = back[i - 1] @ T[i]
    peak = float(np.max(np.abs(T)))
    if not np.isfinite(peak) or peak > cap:
        raise SolverOverflow(f"zero-energy solutions reach {peak:.3g}, above the cap {cap:.3g}")
    return ZeroEnergySolutions(V.x, T[:, 0, 0], T[:, 1, 0], T[:, 0, 1], T[:, 1, 1], P, V.dx)


def _backward_steps(V: GridFunction) -> np.ndarray:
    from .grids import midpoint_values
    from .numlab.transfer import rk4_step_matrices

    def gen(v):
        Gm = np.zeros(v.shape + (2, 2))
        Gm[..., 0, 1] = 1.0
        Gm[..., 1, 0] = v
        return Gm

    nodes, mids = gen(V.values), gen(midpoint_values(V.values))
    return rk4_step_matrices(nodes[1:], mids, nodes[:-1], -V.dx)


def schrodinger_to_hamiltonian(V: GridFunction, x_ref: float = 0.0, wronskian_tol: float = 1e-6, cap: float = 1e150) -> HamiltonianGrid:
    """``H^V = [[u0^2, u0 v0], [u0 v0, v0^2]]`` from the zero-energy solutions.

    ``meta`` records the Wronskian deviation and the residual
    ``det(H^V_xx) - 4 V`` on the interior nodes.
    """
    sol = zero_energy_solutions(V, x_ref, cap)
    w_err = sol.wronskian_error()
    if w_err > wronskian_tol:
        raise SolverOverflow(f"relative Wronskian drift {w_err:.3g} > {wronskian_tol}")
    det_xx = det_second_difference(sol)
    res = det_xx - 4 * V.values[1:-1]
    meta = {
        "wronskian_relative_error": w_err,
        "det_xx": det_xx,
        "det_residual": res,
        "det_residual_sup": float(np.max(np.abs(res))),
    }
    return HamiltonianGrid(V.x0, V.dx, sol.u**2, sol.u * sol.v, sol.v**2, meta)


def det_second_difference(sol: ZeroEnergySolutions) -> np.ndarray:
    """``det`` of the central second-difference matrix of ``H^V`` at interior nodes.

    For ``H = w w^T`` with ``w = (u, v)``, Cauchy-Binet gives
    ``det(sum c_j w_j w_j^T) = sum_{j<k} c_j c_k (w_j x w_k)^2`` and
    ``w_j x w_k`` is the (1, 2) entry of the propagator from node ``j`` to
    node ``k`` times the Wronskian (one).  Working with the short-range
    propagators avoids the cancellation that ruins the direct formula once the
    solutions grow large.
    """
    P = sol.steps
    a = P[1:, 0, 1]  # node i -> i+1
    b = P[:-1, 0, 1]  # node i-1 -> i
    c = np.einsum("nij,njk->nik", P[1:], P[:-1])[:, 0, 1]  # node i-1 -> i+1
    return (c * c - 2 * a * a - 2 * b * b) / sol.dx**4


def det_second_difference_direct(Hgrid: HamiltonianGrid) -> np.ndarray:
    """Naive ``det H_xx`` from second differences of the sampled entries (interior nodes)."""
    fxx, gxx, hxx = (second_derivative(a, Hgrid.dx)[1:-1] for a in (Hgrid.f, Hgrid.g, Hgrid.h))
    return fxx * hxx - gxx * gxx
