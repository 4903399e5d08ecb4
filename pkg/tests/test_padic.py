from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from regkit.padic import (
    ConfigurationError,
    EisNum,
    PadicNum,
    check_prime,
    eis_frobenius,
    hensel_root,
    nu_root,
    padic_log,
    teichmuller,
    valuation,
)

PRIMES = st.sampled_from([5, 7, 11, 13])
ints = st.integers(min_value=-10**12, max_value=10**12)
units_den = st.integers(min_value=1, max_value=10**6)


def rat(p):
    return st.builds(Fraction, ints, units_den.filter(lambda d: d % p))


def test_check_prime_rejects_small_and_composite():
    for bad in (2, 3, 4, 9, 25, 1):
        with pytest.raises(ConfigurationError):
            check_prime(bad)
    assert check_prime(7) == 7


def test_valuation_of_rationals():
    assert valuation(Fraction(50, 3), 5) == 2
    assert valuation(Fraction(3, 125), 5) == -3
    assert valuation(0, 5) == float("inf")


def test_from_rational_roundtrip_mod_pN():
    x = PadicNum.from_rational(Fraction(-30, 31), 5, 8)
    assert x.valuation == 1
    assert (x.to_fraction() - Fraction(-30, 31)) * Fraction(1, 5**8) == \
        (x.to_fraction() - Fraction(-30, 31)) / 5**8
    assert valuation(x.to_fraction() - Fraction(-30, 31), 5) >= 8


@given(PRIMES.flatmap(lambda p: st.tuples(st.just(p), rat(p), rat(p))))
def test_ring_homomorphism(args):
    p, a, b = args
    N = 10
    A, B = PadicNum.from_rational(a, p, N), PadicNum.from_rational(b, p, N)
    assert (A + B) == PadicNum.from_rational(a + b, p, N)
    assert (A * B) == PadicNum.from_rational(a * b, p, N)
    assert (A - B) == PadicNum.from_rational(a - b, p, N)


@given(PRIMES.flatmap(lambda p: st.tuples(st.just(p), rat(p).filter(lambda q: q != 0))))
def test_inverse(args):
    p, a = args
    A = PadicNum.from_rational(a, p, 12)
    assert (A * A.inverse() - 1).is_zero()


def test_precision_tracks_valuation():
    x = PadicNum.from_rational(25, 5, 6)
    y = PadicNum.from_rational(7, 5, 6)
    assert (x * y).precision == 6  # absolute: min(2 + 6, 0 + 6)
    assert (x / 25).precision == 4


def test_log_known_values():
    # log(1 + 5) = 5 - 25/2 + ... = 55 mod 125
    assert padic_log(PadicNum.from_rational(6, 5, 3)).lift() % 125 == 55
    assert padic_log(PadicNum.from_rational(36, 5, 3)).lift() % 125 == 110


@given(PRIMES.flatmap(lambda p: st.tuples(st.just(p), st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))))
def test_log_is_additive(args):
    p, i, j = args
    N = 9
    a, b = PadicNum.from_rational(1 + p * i, p, N), PadicNum.from_rational(1 + p * j, p, N)
    assert (padic_log(a * b) - padic_log(a) - padic_log(b)).is_zero()


def test_hensel_and_nu():
    r = hensel_root([-2, 0, 1], 3, 7, 10)  # sqrt(2) in Z_7
    assert (r * r - 2).is_zero()
    for p in (7, 13, 19):
        nu = nu_root(p, 12)
        assert (nu * nu + nu + 1).is_zero()


def test_teichmuller():
    w = teichmuller(2, 7, 10)
    assert (w**6 - 1).is_zero()
    assert w.lift() % 7 == 2


def test_eisenstein_arithmetic():
    p = 5
    nu = EisNum.nu(p)
    assert (nu * nu + nu + 1).is_zero()
    assert (EisNum.sqrt_minus3(p) ** 2 + 3).is_zero()
    assert nu.conj() == nu * nu
    assert eis_frobenius(EisNum(5, 0, 1)) == EisNum(5, -1, -1)
    assert eis_frobenius(EisNum(7, 0, 1)) == EisNum(7, 0, 1)


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_eisenstein_norm_multiplicative(a, b, c, d):
    x, y = EisNum(7, a, b), EisNum(7, c, d)
    assert (x * y).norm() == x.norm() * y.norm()
    if not x.is_zero():
        assert (x * x.inverse() - 1).is_zero()
