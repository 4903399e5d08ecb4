from fractions import Fraction
from math import factorial

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from regkit.padic import EisNum, PadicDomainError, PadicNum, PrecisionError, padic_log, valuation
from regkit.series import FrobeniusSpec, TSeries
from regkit.special import (
    hypergeometric_2f1,
    hypergeometric_F,
    log_sigma,
    polylog_closed_form_r0,
    polylog_eval,
    polylog_series,
    polylog_xform,
    tate_period,
    w_poly,
)


def test_2f1_matches_factorial_formula():
    F = hypergeometric_2f1(25)
    for n in range(25):
        assert F.coefficient(n) == Fraction(factorial(3 * n), factorial(n) ** 3 * 27**n)


def test_prefactor_squares_to_minus_one_twelfth():
    F = hypergeometric_F(7, 5)
    k = F.coefficient(0)
    assert isinstance(k, EisNum)
    assert (k * k + Fraction(1, 12)).is_zero()


def _unit_pair(p):
    return st.builds(Fraction, st.integers(-10**4, 10**4), st.integers(1, 10**4)).filter(
        lambda z: z != 0 and z != 1 and valuation(z, p) == 0 and valuation(1 - z, p) == 0)


@given(st.sampled_from([5, 7, 11]).flatmap(lambda p: st.tuples(st.just(p), _unit_pair(p))))
def test_r0_closed_form(args):
    p, z = args
    v = polylog_eval(0, z, p, s=8)
    assert (v.value - polylog_closed_form_r0(z, p)).is_zero()


@pytest.mark.parametrize("p,z", [(5, 2), (7, 3), (7, Fraction(-1, 2)), (5, Fraction(3, 2))])
def test_r1_against_padic_log(p, z):
    s = 7
    v = polylog_eval(1, z, p, s=s)
    arg = PadicNum.from_rational((1 - Fraction(z) ** p) / (1 - Fraction(z)) ** p, p, s + 2)
    oracle = padic_log(arg) / p
    assert (v.value - oracle).reduce(v.precision).is_zero()


@pytest.mark.parametrize("p", [7, 13])
def test_inversion_at_cube_roots(p):
    s = 6
    a = polylog_eval(2, EisNum(p, 0, -1), p, s=s)
    b = polylog_eval(2, EisNum(p, 1, 1), p, s=s)
    assert (a.value + b.value).reduce(s - 2).is_zero()


def test_stabilization_margin_pinned():
    # the measured margin is 1 at p = 7 for z = -nu; the precision claim is s - delta
    for s in range(3, 7):
        v = polylog_eval(2, EisNum(7, 0, -1), 7, s=s)
        assert v.delta <= 2
        assert v.precision == s - v.delta


def test_bad_residue_disk_refused():
    with pytest.raises(PadicDomainError):
        polylog_eval(2, Fraction(1, 7), 7, s=4)
    with pytest.raises(PadicDomainError):
        polylog_eval(2, 8, 7, s=4)


def test_budget_exhaustion():
    with pytest.raises(PrecisionError):
        polylog_eval(3, Fraction(2, 3), 7, s=6, budget=10)


def test_w_poly():
    p = 5
    x = sp.Symbol("x")
    expect = sp.Poly(sp.expand((1 - x**p + (x - 1) ** p) / p), x).all_coeffs()[::-1]
    assert w_poly(p) == [int(c) for c in expect] + [0] * (p - len(expect))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_xform_divisible_and_agrees(r):
    X = polylog_xform(r, 30, 6, 5)
    assert X.divisible_by_x_minus_x2()
    zs, ps = X.substitute_z(15), polylog_series(r, 15, 5, 6)
    assert all((zs[n] - ps[n]).reduce(X.precision).is_zero() for n in range(15))


def test_log_sigma_oracle():
    # c = 1: log^sigma(1 - t) = p^{-1} log((1 - t)^p / (1 - t^p)), expanded independently
    p, N, M = 5, 8, 20
    t = sp.Symbol("t")
    ser = sp.series(sp.log((1 - t) ** p / (1 - t**p)) / p, t, 0, M).removeO()
    got = log_sigma(TSeries([1, -1], M).to_padic(p, N + 2), FrobeniusSpec(p))
    for n in range(M):
        ref = Fraction(str(ser.coeff(t, n)))
        assert (got.coefficient(n) - ref).reduce(N).is_zero(), n


def test_log_sigma_requires_unit():
    with pytest.raises(PadicDomainError):
        log_sigma(TSeries([0, 1], 10).to_padic(7, 5), FrobeniusSpec(7))


def test_tate_period_frozen_coefficients():
    q = tate_period(8).q
    frozen = ["1/27", "5/243", "31/2187", "5729/531441", "41518/4782969"]
    assert [str(q.coefficient(k)) for k in range(1, 6)] == frozen


def test_tate_period_against_classical_j():
    # j = 1/q + 744 + 196884 q + 21493760 q^2 + 864299970 q^3 + 20245856256 q^4 + ...
    t = sp.Symbol("t")
    q = sum(sp.Rational(str(tate_period(8).q.coefficient(k))) * t**k for k in range(1, 7))
    j = 1 / q + 744 + 196884 * q + 21493760 * q**2 + 864299970 * q**3 + 20245856256 * q**4
    J = 27 * (1 + 8 * t) ** 3 / (t * (1 - t) ** 3)
    diff = sp.series(j - J, t, 0, 4).removeO()
    assert sp.simplify(diff) == 0


@pytest.mark.parametrize("r", [-1, -2, -3])
def test_negative_r_is_euler_operator(r):
    # (z d/dz)^(-r) applied to ln_0
    f = polylog_series(0, 20, 7)
    for _ in range(-r):
        f = f.derivative().shift(1)
    g = polylog_series(r, 20, 7)
    assert all(f.coefficient(n) == g.coefficient(n) for n in range(19))


@pytest.mark.parametrize("p", [5, 7, 13])
def test_stabilization_across_primes(p):
    for s in range(2, 7):
        assert polylog_eval(2, EisNum(p, 0, -1), p, s=s).delta <= 2


def test_tate_period_is_p_integral():
    q = tate_period(40).q
    for p in (5, 7, 11, 13):
        assert all(valuation(q.coefficient(n), p) >= 0 for n in range(1, 40) if q.coefficient(n) != 0)
