"""Hyperdual arithmetic against closed-form derivative oracles.

Seeding x -> x + e1 + e2 turns the e1 slot into f'(x), the e12 slot
into f''(x); every oracle below is an independently known derivative.
"""

import cmath
import math

import pytest
from hypothesis import given, strategies as st

from kgconformal import dual
from kgconformal.dual import HyperDual, seed

xs = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)
xs_pos = st.floats(min_value=0.05, max_value=5.0, allow_nan=False)


def d2(f, x):
    out = f(seed(x, e1=1.0, e2=1.0))
    return out.v, out.e1, out.e12


def test_exp_derivatives():
    v, d1, dd = d2(dual.exp, 0.7)
    e = math.exp(0.7)
    assert v == pytest.approx(e, rel=1e-15)
    assert d1 == pytest.approx(e, rel=1e-15)
    assert dd == pytest.approx(e, rel=1e-15)


def test_log_derivatives():
    v, d1, dd = d2(dual.log, 2.0)
    assert v == pytest.approx(math.log(2.0), rel=1e-15)
    assert d1 == pytest.approx(0.5, rel=1e-15)
    assert dd == pytest.approx(-0.25, rel=1e-15)


def test_sqrt_derivatives():
    v, d1, dd = d2(dual.sqrt, 4.0)
    assert v == pytest.approx(2.0, rel=1e-15)
    assert d1 == pytest.approx(0.25, rel=1e-15)
    assert dd == pytest.approx(-1.0 / 32.0, rel=1e-15)


def test_trig_derivatives():
    v, d1, dd = d2(dual.sin, 1.1)
    assert v == pytest.approx(math.sin(1.1), rel=1e-14)
    assert d1 == pytest.approx(math.cos(1.1), rel=1e-14)
    assert dd == pytest.approx(-math.sin(1.1), rel=1e-14)
    v, d1, dd = d2(dual.cos, 1.1)
    assert d1 == pytest.approx(-math.sin(1.1), rel=1e-14)
    assert dd == pytest.approx(-math.cos(1.1), rel=1e-14)


def test_powr_noninteger():
    p = 1.5
    v, d1, dd = d2(lambda x: dual.powr(x, p), 2.0)
    assert v == pytest.approx(2.0**p, rel=1e-15)
    assert d1 == pytest.approx(p * 2.0 ** (p - 1), rel=1e-15)
    assert dd == pytest.approx(p * (p - 1) * 2.0 ** (p - 2), rel=1e-15)


def test_int_pow_matches_repeated_product():
    x = seed(1.3, e1=1.0, e2=1.0)
    assert (x**5).e12 == pytest.approx((x * x * x * x * x).e12, rel=1e-14)
    assert (x**5).e1 == pytest.approx(5 * 1.3**4, rel=1e-14)


def test_complex_coefficients():
    # d/dx exp(i x) = i exp(i x)
    out = dual.exp(1j * seed(0.4, e1=1.0))
    assert out.e1 == pytest.approx(1j * cmath.exp(0.4j), rel=1e-15)


def test_norm3_gradient():
    # d r / d x1 = x1 / r
    out = dual.norm3(seed(1.0, e1=1.0), 2.0, 2.0)
    assert out.v == pytest.approx(3.0, rel=1e-15)
    assert out.e1 == pytest.approx(1.0 / 3.0, rel=1e-15)


def test_value_of_passthrough():
    assert dual.value_of(2.5) == 2.5
    assert dual.value_of(seed(2.5, e1=1.0)) == 2.5


@given(xs, xs)
def test_product_rule(a, b):
    x = seed(a, e1=1.0, e2=1.0)
    f = dual.sin(x)
    g = dual.cos(x) + 2.0
    fg = f * g
    assert fg.e1 == pytest.approx(f.e1 * g.v + f.v * g.e1, rel=1e-12, abs=1e-12)
    # second derivative: f''g + 2f'g' + fg''
    want = f.e12 * g.v + 2.0 * f.e1 * g.e1 + f.v * g.e12
    assert fg.e12 == pytest.approx(want, rel=1e-12, abs=1e-12)
    # b unused by design: hypothesis shrinks better with two draws


@given(xs_pos)
def test_exp_log_roundtrip(x):
    out = dual.exp(dual.log(seed(x, e1=1.0, e2=1.0)))
    assert out.v == pytest.approx(x, rel=1e-13)
    assert out.e1 == pytest.approx(1.0, rel=1e-12, abs=1e-12)
    assert abs(out.e12) < 1e-10 * max(1.0, 1.0 / x)


def test_reciprocal_and_division():
    x = seed(2.0, e1=1.0, e2=1.0)
    inv = 1.0 / x
    assert inv.v == pytest.approx(0.5)
    assert inv.e1 == pytest.approx(-0.25)
    assert inv.e12 == pytest.approx(0.25)  # 2/x^3 at x=2


def test_conjugate():
    h = HyperDual(1 + 2j, 3 - 1j, 0.0, 5j)
    c = h.conjugate()
    assert c.v == 1 - 2j and c.e1 == 3 + 1j and c.e12 == -5j
