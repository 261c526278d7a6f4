import random

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from powertower.errors import DomainError
from powertower.lambertw import Branch, lambert_w, w_series
from powertower.series import (
    EULER_LN_COEFFICIENTS,
    PowerSeries,
    compose,
    euler_ln_series,
    revert,
    w_exp_w_series,
)


def _identity_error(s, order):
    target = [1.0] + [0.0] * (order - 1)
    return max(abs(a - b) for a, b in zip(s.padded(order), target))


def _random_series(rng, order):
    return PowerSeries([rng.uniform(0.5, 2.0) * rng.choice((-1, 1))]
                       + [rng.uniform(-1, 1) for _ in range(order - 1)])


def test_identity_is_self_inverse():
    assert revert(PowerSeries.identity(5), 5).coefficients == (1.0, 0.0, 0.0, 0.0, 0.0)


def test_closed_form_coefficients():
    rng = random.Random(7)
    for _ in range(50):
        a1, a2, a3 = rng.uniform(0.5, 2.0), rng.uniform(-1, 1), rng.uniform(-1, 1)
        A = revert(PowerSeries([a1, a2, a3]), 3).coefficients
        assert A[0] == pytest.approx(1 / a1, abs=1e-12)
        assert A[1] == pytest.approx(-a2 / a1**3, abs=1e-12)
        assert A[2] == pytest.approx((2 * a2**2 - a1 * a3) / a1**5, abs=1e-12)


def test_lambert_series_from_w_exp_w():
    assert w_exp_w_series(4).coefficients == pytest.approx((1, 1, 0.5, 1 / 6), abs=0)
    A = revert(w_exp_w_series(6), 6).coefficients
    assert A[:4] == pytest.approx((1, -1, 1.5, -8 / 3), abs=1e-12)
    # higher terms follow (-n)**(n-1)/n!
    assert A[4:] == pytest.approx((625 / 120, -7776 / 720), rel=1e-12)


def test_revert_against_sympy():
    x, y = sp.symbols("x y")
    rng = random.Random(11)
    order = 6
    for _ in range(5):
        a = [sp.Rational(rng.randint(1, 9), rng.randint(1, 5))] + \
            [sp.Rational(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(order - 1)]
        f = sum(c * x ** (k + 1) for k, c in enumerate(a))
        # inverse by undetermined coefficients, solved symbolically
        A = sp.symbols(f"A1:{order + 1}")
        g = sum(c * f ** (k + 1) for k, c in enumerate(A))
        poly = sp.Poly(sp.expand(g), x)
        eqs = [poly.coeff_monomial(x**n) - (1 if n == 1 else 0) for n in range(1, order + 1)]
        sol = sp.solve(eqs, A, dict=True)[0]
        expected = [float(sol[s]) for s in A]
        got = revert(PowerSeries([float(c) for c in a]), order).coefficients
        assert got == pytest.approx(expected, rel=1e-11, abs=1e-12)


def test_round_trip_random():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(2, 8)
        a = _random_series(rng, n)
        inv = revert(a, n)
        assert _identity_error(compose(a, inv, n), n) < 1e-9
        assert _identity_error(compose(inv, a, n), n) < 1e-9


@given(
    a1=st.floats(min_value=0.5, max_value=2.0),
    rest=st.lists(st.floats(min_value=-1, max_value=1), min_size=3, max_size=3),
)
def test_compose_revert_order_four(a1, rest):
    a = PowerSeries([a1, *rest])
    assert _identity_error(compose(a, revert(a, 4), 4), 4) < 1e-10


def test_compose_with_identity():
    s = PowerSeries([0.3, -1.2, 4.0, 0.5])
    ident = PowerSeries.identity(1)
    assert compose(ident, s, 4) == s
    assert compose(s, ident, 4) == s


def test_compose_matches_numeric_evaluation():
    outer = PowerSeries([1.0, 0.5, -0.25])
    inner = PowerSeries([2.0, -1.0])
    c = compose(outer, inner, 6)
    # outer(inner(t)) is a degree-6 polynomial, so truncation at 6 is exact
    for t in (0.1, -0.3, 0.7):
        assert c(t) == pytest.approx(outer(inner(t)), rel=1e-14)


def test_revert_errors():
    with pytest.raises(DomainError):
        revert(PowerSeries([0.0, 1.0]), 3)
    with pytest.raises(DomainError):
        revert(PowerSeries([1.0]), 0)


def test_coefficient_access():
    s = PowerSeries([1, 2])
    assert s.coefficients == (1.0, 2.0) and s.order == 2
    assert s.coefficient(5) == 0.0
    with pytest.raises(IndexError):
        s.coefficient(0)


def test_euler_ln_series():
    assert euler_ln_series(0.0, 4) == 0.0
    assert EULER_LN_COEFFICIENTS == (1.0, 1.0, 1.5, 8 / 3)
    v = 0.01
    t = euler_ln_series(v, 4)
    assert abs(t - v * __import__("math").exp(t)) < 1e-9
    assert t == pytest.approx(-lambert_w(-v, Branch.PRINCIPAL), abs=1e-9)
    with pytest.raises(DomainError):
        euler_ln_series(0.01, 0)


@given(v=st.floats(min_value=-0.05, max_value=0.05), k=st.integers(min_value=1, max_value=4))
def test_euler_is_negated_lambert_series(v, k):
    assert euler_ln_series(v, k) == -w_series(-v, k)
