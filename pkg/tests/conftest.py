from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from zerocurve.diffpoly import DiffPoly, Symbol

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

V = Symbol("V")
W = Symbol("W")

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
nonzero_rationals = rationals.filter(lambda q: q != 0)


@st.composite
def monomials(draw, symbols=(V, W), max_order=3, max_factors=3):
    n = draw(st.integers(0, max_factors))
    p = DiffPoly.constant(draw(nonzero_rationals))
    for _ in range(n):
        sym = draw(st.sampled_from(symbols))
        p = p * DiffPoly.var(sym, draw(st.integers(0, max_order)))
    return p


@st.composite
def diffpolys(draw, symbols=(V, W), max_terms=4, **kw):
    total = DiffPoly()
    for _ in range(draw(st.integers(0, max_terms))):
        total = total + draw(monomials(symbols=symbols, **kw))
    return total


def frac(x) -> Fraction:
    return Fraction(x)
