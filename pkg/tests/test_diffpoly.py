from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import V, W, diffpolys
from zerocurve.diffpoly import (
    DiffPoly,
    FlowRule,
    Symbol,
    ZDiffPoly,
    dt,
    euler,
    field,
    integrate_x,
    parse,
)
from zerocurve.errors import MissingFlowAssignment, NotExactDerivative

v = DiffPoly.var(V)


def test_text_format_round_trip():
    p = parse("3/8*V^2 - 1/8*V_xx")
    assert str(p) == "-1/8*V_xx + 3/8*V^2"
    assert parse(str(p)) == p


def test_parse_handles_parentheses_and_unicode_minus():
    assert parse("(V + 1)*(V − 1)") == v * v - 1
    assert parse("-(V_x)^2/2") == DiffPoly.var(V, 1) ** 2 * Fraction(-1, 2)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse("V +")
    with pytest.raises(ValueError):
        parse("")


def test_constants_are_recognised_by_name():
    p = parse("C1*V + Cstar")
    assert {s.name for s in p.field_symbols()} == {"V"}
    assert p.dx() == parse("C1*V_x")


def test_underscore_not_allowed_in_symbol_names():
    with pytest.raises(ValueError):
        Symbol("V_1")


def test_total_derivative_examples():
    assert (v * v).dx() == 2 * v * DiffPoly.var(V, 1)
    assert field("V", 2).dx() == field("V", 3)
    assert DiffPoly.constant(7).dx().is_zero()


def test_dt_uses_flow_rule_and_its_derivatives():
    flow = FlowRule({"V": v * v})
    assert dt(field("V", 1), flow) == (v * v).dx()


def test_missing_flow_assignment_names_the_symbol():
    with pytest.raises(MissingFlowAssignment) as info:
        dt(DiffPoly.var(W), FlowRule({"V": 0}))
    assert info.value.symbol == "W"
    assert isinstance(info.value, KeyError)


def test_constant_cannot_carry_a_flow():
    with pytest.raises(ValueError):
        FlowRule({Symbol("C1", constant=True): 1})


def test_integrate_rejects_non_exact():
    with pytest.raises(NotExactDerivative):
        integrate_x(v * v)
    with pytest.raises(NotExactDerivative):
        integrate_x(DiffPoly.constant(1))


def test_evaluate_scalar_and_constants():
    p = parse("C1*V_x + V^2")
    assert p.evaluate({("V", 0): 2.0, ("V", 1): 3.0}, {"C1": 0.5}) == pytest.approx(5.5)
    with pytest.raises(KeyError):
        p.evaluate({"V": 1.0})


def test_zdiffpoly_arithmetic():
    z = ZDiffPoly.z()
    p = (z + v) * (z - v)
    assert p.coeff(2) == DiffPoly.constant(1)
    assert p.coeff(1).is_zero()
    assert p.coeff(0) == -(v * v)
    assert p.degree == 2
    assert ZDiffPoly().degree == -1
    assert p.to_json() == {"0": "-V^2", "2": "1"}


# -- properties ---------------------------------------------------------------


@given(diffpolys(), diffpolys())
def test_leibniz(p, q):
    assert (p * q).dx() == p.dx() * q + p * q.dx()


@given(diffpolys(), diffpolys(), diffpolys())
def test_dt_commutes_with_dx(p, fv, fw):
    flow = FlowRule({"V": fv, "W": fw})
    assert p.dx().dt(flow) == p.dt(flow).dx()


@given(diffpolys(), diffpolys())
def test_dt_is_a_derivation(p, fv):
    flow = FlowRule({"V": fv, "W": 0})
    q = p + 1
    assert (p * q).dt(flow) == p.dt(flow) * q + p * q.dt(flow)


@given(diffpolys())
def test_integrate_inverts_dx_up_to_constants(p):
    assert integrate_x(p.dx()) == p - p.constant_part()


@given(diffpolys())
def test_total_derivatives_are_variationally_trivial(p):
    assert euler(p.dx(), V).is_zero()
    assert euler(p.dx(), W).is_zero()


@given(diffpolys())
def test_str_parse_round_trip(p):
    assert parse(str(p)) == p


@given(diffpolys(), st.integers(0, 3))
def test_dxn_composes(p, n):
    q = p
    for _ in range(n):
        q = q.dx()
    assert p.dxn(n) == q
