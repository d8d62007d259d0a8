import numpy as np
import pytest

from zerocurve.errors import CFLViolation
from zerocurve.grids import GridFunction
from zerocurve.numlab import kdv_evolve, mass, soliton, spectral_derivative, stable_dt


def grid(fn, L=20.0, dx=0.05):
    n = int(round(2 * L / dx))
    return GridFunction(-L, dx, fn(-L + dx * np.arange(n)))


def test_spectral_derivative_of_periodic_function():
    g = grid(lambda x: np.sin(np.pi * x / 20), dx=0.1)
    d = spectral_derivative(g.values, g.dx)
    assert np.allclose(d, np.pi / 20 * np.cos(np.pi * g.x / 20), atol=1e-12)


def test_zero_stays_zero():
    g = grid(np.zeros_like)
    assert np.array_equal(kdv_evolve(g, 1.0, 10).values, g.values)


def test_soliton_translates_at_speed_a_squared():
    a = 1.2
    g = grid(lambda x: soliton(x, 0, a), dx=0.02)
    t = 0.5
    steps = int(np.ceil(t / (0.5 * stable_dt(g.values, g.dx))))
    out = kdv_evolve(g, t, steps)
    assert np.max(np.abs(out.values - soliton(g.x, t, a))) < 1e-3
    assert abs(mass(out) - mass(g)) < 1e-10


def test_fourth_order_in_time():
    g = grid(lambda x: soliton(x, 0, 1.0) + 0.5 * soliton(x, 0, 0.7, x0=5), dx=0.05)
    t = 0.6
    ref = kdv_evolve(g, t, 1600).values
    errs = [np.max(np.abs(kdv_evolve(g, t, s).values - ref)) for s in (100, 200, 400)]
    ratios = [errs[0] / errs[1], errs[1] / errs[2]]
    assert all(12 < r < 20 for r in ratios), (errs, ratios)


def test_plain_rk4_needs_dispersive_step():
    g = grid(lambda x: soliton(x), dx=0.05)
    assert stable_dt(g.values, g.dx, "rk4") < stable_dt(g.values, g.dx, "ifrk4")
    with pytest.raises(CFLViolation):
        kdv_evolve(g, 0.5, 10, method="rk4")
    with pytest.raises(ValueError):
        stable_dt(g.values, g.dx, "euler")


def test_plain_rk4_agrees_when_stable():
    g = grid(lambda x: soliton(x), dx=0.1)
    t = 0.05
    steps = int(np.ceil(t / (0.9 * stable_dt(g.values, g.dx, "rk4"))))
    a = kdv_evolve(g, t, steps, method="rk4").values
    b = kdv_evolve(g, t, steps).values
    assert np.max(np.abs(a - b)) < 1e-6
