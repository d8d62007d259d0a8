"""Independent reference implementations used by the tests."""

from __future__ import annotations

import numpy as np
import sympy as sp
from scipy.integrate import solve_ivp

x = sp.Symbol("x")
Vf = sp.Function("V")(x)


def to_sympy(p, fields=None):
    """DiffPoly -> sympy expression in functions of ``x`` (constants become symbols)."""
    fields = fields or {}
    out = sp.Integer(0)
    for mono, c in p.items():
        term = sp.Rational(c.numerator, c.denominator)
        for (sym, k), e in mono:
            if sym.constant:
                base = sp.Symbol(sym.name)
            else:
                f = fields.get(sym.name) or sp.Function(sym.name)(x)
                base = sp.diff(f, x, k) if k else f
            term *= base**e
        out += term
    return out


def transfer_ivp(gen, a: float, b: float, rtol=1e-12, atol=1e-12) -> np.ndarray:
    """Fundamental matrix of ``Y' = gen(s) Y`` from ``a`` to ``b`` via scipy's DOP853."""

    def rhs(s, y):
        Y = y.reshape(2, 2)
        return (gen(s) @ Y).ravel()

    sol = solve_ivp(rhs, (a, b), np.eye(2, dtype=complex).ravel(), method="DOP853", rtol=rtol, atol=atol)
    return sol.y[:, -1].reshape(2, 2)


def fd_lowest_eigenvalue(fn, L: float, n: int) -> float:
    """Dense finite-difference ground state of ``-y'' + V y`` on ``[-L, L]`` (Dirichlet)."""
    xs = np.linspace(-L, L, n + 2)[1:-1]
    h = xs[1] - xs[0]
    A = np.diag(2 / h**2 + fn(xs)) - np.diag(np.full(n - 1, 1 / h**2), 1) - np.diag(np.full(n - 1, 1 / h**2), -1)
    return float(np.linalg.eigvalsh(A)[0])
