from fractions import Fraction

import pytest

from regkit.filfmic import vanishes
from regkit.padic import EisNum, PadicDomainError, PadicNum
from regkit.regulator import (
    SIGN_CONVENTIONS,
    UnsupportedEvaluation,
    c_from_unit,
    first_unusable,
    regulator_output,
    symbol_reg_n0,
)
from regkit.series import FrobeniusSpec, TSeries


@pytest.fixture(scope="module")
def res():
    return regulator_output(7, 1, 30, 8)


def test_all_audits_pass(res):
    assert res.ok, [a for a in res.audits if not a.passed]


def test_E1_vanishes_at_zero(res):
    assert res.E1.coefficient(0) == 0


def test_eps_are_nu_free(res):
    for e in (res.eps1, res.eps2):
        assert all(c.b.is_zero() for c in e.coeffs)


def test_sign_conventions(res):
    assert SIGN_CONVENTIONS == {"intro": 1, "corollary": -1}
    e1, e2 = res.regulator("corollary")
    assert vanishes(e1 + res.eps1, 8, 30) and vanishes(e2 + res.eps2, 8, 30)


def test_conjugation_symmetry(res):
    conj = regulator_output(7, 1, 30, 8, conjugate=True)
    assert vanishes(res.eps1 - conj.eps1, 7, 30) and vanishes(res.eps2 - conj.eps2, 7, 30)
    assert vanishes(res.E1 + conj.E1, 7, 30) and vanishes(res.E2 + conj.E2, 7, 30)


def test_other_frobenius_lift():
    assert regulator_output(5, 6, 20, 6).ok


def test_c_from_unit():
    assert c_from_unit(2, 7) == Fraction(1, 64)
    with pytest.raises(PadicDomainError):
        c_from_unit(1, 7)
    with pytest.raises(PadicDomainError):
        c_from_unit(7, 7)


def test_evaluation_is_refused(res):
    with pytest.raises(UnsupportedEvaluation):
        res.evaluate(2)


def test_first_unusable():
    s = TSeries([PadicNum.from_rational(1, 7, 3), PadicNum.zero(7, 0)], 4)
    assert first_unusable(s, 4) == 1


def test_symbol_n0_is_closed():
    sig = FrobeniusSpec(7)
    dl, lg = symbol_reg_n0(TSeries([1, 3, -1], 20), sig, N=8)
    # d(log^sigma h) = dlog h - sigma*(dlog h) / p
    lhs = lg.derivative()
    rhs = dl - sig.pullback_form(dl) * Fraction(1, 7)
    assert vanishes(lhs - rhs, 6, 18)


def test_eps2_at_zero(res):
    # eps2(0) = F(0) E2(0) = -9 ln_2(-nu) / (2 (1 + 2 nu)), a rational p-adic number
    e0 = res.E2_0.value * (-9)
    F0 = EisNum(7, Fraction(-1, 6), Fraction(-1, 3))
    assert (res.eps2.coefficient(0) - F0 * e0).reduce(8).is_zero()
    assert res.eps2.coefficient(0).b.is_zero()


def test_E1_equation_matches_dlog_of_symbol():
    # dropping the sigma term, the E1 right-hand side is -(3/(t - 1)) F, i.e. -dlog(h1, h2) times F
    import sympy as sp

    from regkit.curve import dlog_reduce, h1, h2, t_sym
    from regkit.family import FamilyData
    from regkit.regulator import rhs_E1

    co, _ = dlog_reduce(h1(), h2())
    ser = sp.series(sp.sympify(str(co)).subs(sp.Symbol("t"), t_sym), t_sym, 0, 20).removeO()
    fam = FamilyData(7, 1, 20, 8)
    D = TSeries([Fraction(str(ser.coeff(t_sym, n))) for n in range(20)], 20)
    lhs = rhs_E1(fam) + fam.F_sigma * fam.sigma_kernel * (-3)
    assert vanishes(lhs + D * fam.F, 8, 20)
