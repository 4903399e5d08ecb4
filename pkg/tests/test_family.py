from fractions import Fraction

import pytest

from regkit.checks import family_audits
from regkit.family import FamilyData, gm_matrix
from regkit.filfmic import check_horizontality, corrupt, matrix_vanishes, vanishes
from regkit.padic import EisNum, PadicNum
from regkit.series import TSeries
from regkit.special import hypergeometric_2f1


def test_gm_matrix_annihilates_2f1():
    # omega-period F0 = 2F1 satisfies t(1-t)F'' + (1-2t)F' - (2/9)F = 0
    M = 20
    F = hypergeometric_2f1(M + 2)
    t = TSeries.monomial(1, M + 2)
    lhs = t * (1 - t) * F.derivative().derivative() + (1 - t * 2) * F.derivative() - F * Fraction(2, 9)
    assert all(lhs.coefficient(n) == 0 for n in range(M - 2))
    A = gm_matrix(M)
    assert A[0][0].residue() == Fraction(-1, 3) and A[1][1].residue() == Fraction(1, 3)


@pytest.fixture(scope="module")
def fam7():
    return FamilyData(7, 1, 30, 8)


def test_hat_connection(fam7):
    H = fam7.hat_connection
    assert vanishes(H[0][0], 8, 30) and vanishes(H[0][1], 8, 30) and vanishes(H[1][1], 8, 30)
    assert vanishes(H[1][0] - fam7.dlog_q, 8, 30)
    assert vanishes(fam7.det_P() - 1, 8, 30)


def test_tau_is_integral_and_constant_term(fam7):
    assert all(c.valuation >= 0 for c in fam7.tau.coeffs[:30] if not c.is_zero())


def test_algebraic_frobenius_is_nu_free(fam7):
    for row in fam7.frobenius_algebraic:
        for e in row:
            assert all(not isinstance(c, EisNum) or c.b.is_zero() for c in e.coeffs)


@pytest.mark.parametrize("p,c", [(5, 1), (7, 8), (11, 12)])
def test_frobenius_horizontal(p, c):
    fam = FamilyData(p, c, 24, 6)
    assert matrix_vanishes(check_horizontality(fam.hat_object()), 6, 24)
    assert matrix_vanishes(check_horizontality(fam.algebraic_object()), 6, 24)


def test_corruption_localized(fam7):
    bad = corrupt(fam7.hat_object(), 1, 1, 2)
    R = check_horizontality(bad)
    assert not vanishes(R[1][0], 8, 30)
    assert vanishes(R[0][0], 8, 30) and vanishes(R[0][1], 8, 30)


def test_conjugate_prefactor():
    a, b = FamilyData(7, conjugate=False), FamilyData(7, conjugate=True)
    assert a.prefactor.conj() == b.prefactor
    assert (a.prefactor + b.prefactor).is_zero()  # the conjugate of sqrt(-3) is -sqrt(-3)


def test_family_audit_suite():
    assert all(a.passed for a in family_audits(7, 1, 24, 6))
