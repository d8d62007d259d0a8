"""KdV hierarchy from the polynomial recursion and its zero-curvature check.

The time generator is ``B = [[A, C], [-D, -A]]`` with entries polynomial in
the spectral parameter ``z`` and differential-polynomial in the potential
``V``; the space generator is ``M = [[0, 1], [V - z, 0]]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .diffpoly import DiffPoly, FlowRule, Symbol, ZDiffPoly, integrate_x
from .errors import NotExactDerivative

V_SYMBOL = Symbol("V")
V = DiffPoly.var(V_SYMBOL)
Z = ZDiffPoly.z()

Matrix2 = list  # [[a, b], [c, d]] of ZDiffPoly


def leading_constant_name(n: int) -> str:
    return f"C{n}"


def integration_constant_name(k: int) -> str:
    """Name of the constant added when integrating for the z^k coefficient."""
    return "Cstar" if k == 0 else f"Cstar{k}"


def constant_names(n: int) -> list[str]:
    return [leading_constant_name(n)] + [integration_constant_name(k) for k in range(n - 1, -1, -1)]


@dataclass(frozen=True)
class BMatrix:
    A: ZDiffPoly
    C: ZDiffPoly
    D: ZDiffPoly

    @classmethod
    def zero(cls) -> "BMatrix":
        return cls(ZDiffPoly(), ZDiffPoly(), ZDiffPoly())

    @property
    def entries(self) -> Matrix2:
        return [[self.A, self.C], [-self.D, -self.A]]

    def trace(self) -> ZDiffPoly:
        e = self.entries
        return e[0][0] + e[1][1]

    def to_json(self) -> dict:
        return {"A": self.A.to_json(), "C": self.C.to_json(), "D": self.D.to_json()}


def m_matrix() -> Matrix2:
    return [[ZDiffPoly(), ZDiffPoly.coerce(1)], [V - Z, ZDiffPoly()]]


def _matmul(X: Matrix2, Y: Matrix2) -> Matrix2:
    return [[X[i][0] * Y[0][j] + X[i][1] * Y[1][j] for j in range(2)] for i in range(2)]


def _matsub(X: Matrix2, Y: Matrix2) -> Matrix2:
    return [[X[i][j] - Y[i][j] for j in range(2)] for i in range(2)]


def _matmap(X: Matrix2, fn) -> Matrix2:
    return [[fn(X[i][j]) for j in range(2)] for i in range(2)]


def is_zero_matrix(X: Matrix2) -> bool:
    return all(e.is_zero() for row in X for e in row)


def hierarchy_rhs(C) -> ZDiffPoly:
    """``-1/2 C_xxx + 2 (V - z) C_x + V_x C`` as a full z-polynomial."""
    C = ZDiffPoly.coerce(C)
    Cx = C.dx()
    return C.dxn(3) * Fraction(-1, 2) + (V - Z) * Cx * 2 + C * V.dx()


def derive_AD(C) -> tuple[ZDiffPoly, ZDiffPoly]:
    """Solve ``2A + C_x = 0`` and ``(V - z) C + D + A_x = 0`` for A and D."""
    C = ZDiffPoly.coerce(C)
    A = C.dx() * Fraction(-1, 2)
    D = -A.dx() - (V - Z) * C
    return A, D


@dataclass(frozen=True)
class HierarchyMember:
    degree: int
    C: ZDiffPoly
    A: ZDiffPoly
    D: ZDiffPoly
    flow_rhs: DiffPoly
    constants: dict = dc_field(default_factory=dict)

    @property
    def B(self) -> BMatrix:
        return BMatrix(self.A, self.C, self.D)

    @property
    def flow(self) -> FlowRule:
        return FlowRule({V_SYMBOL: self.flow_rhs})

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "constants": {k: (None if v is None else str(v)) for k, v in self.constants.items()},
            "C": self.C.to_json(),
            "A": self.A.to_json(),
            "D": self.D.to_json(),
            "flow_rhs": str(self.flow_rhs),
        }


def _constant_value(name: str, value) -> DiffPoly:
    if value is None:
        return DiffPoly.var(Symbol(name, constant=True))
    return DiffPoly.constant(value)


def build_hierarchy(n: int, constants: Mapping | None = None) -> HierarchyMember:
    """Degree-``n`` member of the hierarchy.

    ``constants`` maps the names from :func:`constant_names` to rationals, or
    to ``None`` to keep the constant symbolic.  Unlisted constants default to
    1 for the leading coefficient and 0 otherwise.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    names = constant_names(n)
    chosen = {name: (Fraction(1) if i == 0 else Fraction(0)) for i, name in enumerate(names)}
    for key, value in (constants or {}).items():
        if key not in chosen:
            raise ValueError(f"unknown constant {key!r} for degree {n}; expected one of {names}")
        chosen[key] = None if value is None else Fraction(value)
    return _build_cached(n, tuple(sorted(chosen.items())))


@lru_cache(maxsize=64)
def _build_cached(n: int, chosen_items: tuple) -> HierarchyMember:
    chosen = dict(chosen_items)
    coeffs = [DiffPoly() for _ in range(n + 1)]
    coeffs[n] = _constant_value(leading_constant_name(n), chosen[leading_constant_name(n)])
    for k in range(n, 0, -1):
        ck = coeffs[k]
        rhs = ck.dxn(3) * Fraction(-1, 4) + V * ck.dx() + V.dx() * ck / 2
        try:
            prim = integrate_x(rhs)
        except NotExactDerivative as exc:  # the recursion always integrates
            raise NotExactDerivative(f"recursion step k={k} failed: {exc}") from exc
        name = integration_constant_name(k - 1)
        coeffs[k - 1] = prim + _constant_value(name, chosen[name])
    C = ZDiffPoly(coeffs)
    A, D = derive_AD(C)
    rhs = hierarchy_rhs(C)
    return HierarchyMember(n, C, A, D, rhs.coeff(0), dict(chosen))


def zero_curvature_residual(B: BMatrix, flow: FlowRule) -> Matrix2:
    """``dt M - dx B + M B - B M``; the zero matrix iff the equation holds."""
    M = m_matrix()
    Bm = B.entries
    dtM = _matmap(M, lambda e: e.dt(flow))
    dxB = _matmap(Bm, ZDiffPoly.dx)
    return _matsub(_matsub(dtM, dxB), _matsub(_matmul(Bm, M), _matmul(M, Bm)))


def kdv_prototype_residual(B: BMatrix, flow: FlowRule) -> ZDiffPoly:
    """``V_t + D_x - (V - z) C_x``, the Gauss-eliminated third equation."""
    Vt = ZDiffPoly.coerce(flow.rhs(V_SYMBOL))
    return Vt + B.D.dx() - (V - Z) * B.C.dx()


def three_equation_residuals(B: BMatrix, flow: FlowRule) -> tuple[ZDiffPoly, ZDiffPoly, ZDiffPoly]:
    """Left-hand sides of ``2A + C_x``, ``(V-z)C + D + A_x``, ``2(V-z)A + D_x + V_t``."""
    Vt = ZDiffPoly.coerce(flow.rhs(V_SYMBOL))
    return (
        B.A * 2 + B.C.dx(),
        (V - Z) * B.C + B.D + B.A.dx(),
        (V - Z) * B.A * 2 + B.D.dx() + Vt,
    )


def verify_member(member: HierarchyMember) -> dict:
    """Residual status flags for a member (all True for a valid member)."""
    rhs = hierarchy_rhs(member.C)
    return {
        "higher_z_coefficients_vanish": all(rhs.coeff(k).is_zero() for k in range(1, rhs.degree + 1)),
        "zero_curvature": is_zero_matrix(zero_curvature_residual(member.B, member.flow)),
        "prototype": kdv_prototype_residual(member.B, member.flow).is_zero(),
        "trace_zero": member.B.trace().is_zero(),
    }
