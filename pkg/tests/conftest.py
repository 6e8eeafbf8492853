import random

import pytest
import sympy
from hypothesis import HealthCheck, settings, strategies as st

from geoquant.polycore import MPoly

settings.register_profile(
    "geoquant", deadline=None, max_examples=25,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("geoquant")

H = sympy.Symbol("h")
EPS = sympy.Symbol("eps")


def to_sympy(p, names=None):
    """An MPoly as a sympy expression in x1..xn and eps."""
    return sympy.sympify(p.to_str(names).replace("^", "**"), locals={"eps": EPS})


def series_to_sympy(s, names=None):
    return sum((to_sympy(s[k], names) * H**k for k in range(s.order + 1)), sympy.Integer(0))


def xs(n):
    return sympy.symbols(f"x1:{n + 1}")


@pytest.fixture
def rng():
    return random.Random(20261019)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, n=3, max_terms=4, max_deg=3, with_eps=True):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        e = draw(st.integers(0, 2)) if with_eps else 0
        terms[exps + (e,)] = draw(rationals)
    p = MPoly.zero(n)
    for key, c in terms.items():
        mono = MPoly.const(str(c), n) * MPoly.eps(n) ** key[-1]
        for i, k in enumerate(key[:-1]):
            mono = mono * MPoly.var(i, n) ** k
        p = p + mono
    return p


