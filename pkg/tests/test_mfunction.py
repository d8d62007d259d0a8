import numpy as np
import pytest

from zerocurve.errors import CutoffTooSmall, DegenerateDeterminant, OutOfWindow
from zerocurve.grids import GridFunction, HamiltonianGrid
from zerocurve.numlab import free_m_function, m_function, shift_m, soliton, transfer_between


def sol_potential():
    return GridFunction.from_function(lambda x: soliton(x), -30, 30, 1e-2)


def test_free_m_function_closed_form():
    V = GridFunction.from_function(np.zeros_like, -30, 30, 1e-2)
    for z in (1j, 2 + 0.5j, -1 + 1j):
        s = m_function(V, z, cutoff=6)
        assert s.m_plus == pytest.approx(free_m_function(z), abs=1e-9)
        assert s.m_minus == pytest.approx(free_m_function(z), abs=1e-9)


def test_identity_hamiltonian_m_is_i():
    H = HamiltonianGrid.from_functions(np.ones_like, np.zeros_like, np.ones_like, -20, 20, 1e-2)
    s = m_function(H, 0.5 + 1j, cutoff=4)
    assert s.m_plus == pytest.approx(1j, abs=1e-9)
    assert s.m_minus == pytest.approx(1j, abs=1e-9)


@pytest.mark.parametrize("z", [0.3 + 0.5j, -2 + 1j, 4 + 0.2j])
def test_herglotz(z):
    s = m_function(sol_potential(), z, cutoff=10, tol=1e-5)
    assert s.m_plus.imag > 0 and s.m_minus.imag > 0


def test_reflectionless_soliton_m_plus_closed_form():
    # Jost solution of -2 sech^2: y = e^{-kx} (k + tanh x), so m_+ = y'/y at 0 is (1 - k^2)/k.
    z = 0.5 + 1j
    k = np.sqrt(-z + 0j)
    s = m_function(sol_potential(), z, cutoff=10)
    assert s.m_plus == pytest.approx((1 - k * k) / k, abs=1e-8)


@pytest.mark.parametrize("kind", ["schrodinger", "canonical"])
def test_shift_consistency(kind):
    if kind == "schrodinger":
        system = sol_potential()
    else:
        system = HamiltonianGrid.from_functions(
            lambda x: 1 + 0.5 / np.cosh(x) ** 2, lambda x: 0.3 / np.cosh(x), np.ones_like, -30, 30, 1e-2
        )
    z = 0.4 + 1j
    a, b = 0.0, 1.3
    m0 = m_function(system, z, 8, base=a)
    m1 = m_function(system, z, 8, base=b)
    T = transfer_between(system, z, a, b)
    assert abs(shift_m(T, m0.m_plus, +1, kind) - m1.m_plus) < 1e-5
    assert abs(shift_m(T, m0.m_minus, -1, kind) - m1.m_minus) < 1e-5


def test_cutoff_too_small():
    with pytest.raises(CutoffTooSmall):
        m_function(sol_potential(), 0.01 + 0.05j, cutoff=1.0)


def test_window_check_and_half_plane():
    with pytest.raises(OutOfWindow):
        m_function(sol_potential(), 1j, cutoff=20)
    with pytest.raises(ValueError):
        m_function(sol_potential(), -1j, cutoff=5)


def test_degenerate_cutoff():
    H = HamiltonianGrid.from_functions(np.ones_like, np.ones_like, np.ones_like, -20, 20, 0.1)
    with pytest.raises(DegenerateDeterminant):
        m_function(H, 1j, cutoff=4)


def test_shift_rule_kind_checked():
    with pytest.raises(ValueError):
        shift_m(np.eye(2), 1j, 1, "dirac")
