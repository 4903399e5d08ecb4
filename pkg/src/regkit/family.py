"""The Gamma_1(3) family y^2 = x^3 + (3x + 4(1 - t))^2 with its Gauss-Manin connection and Frobenius."""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from .filfmic import FilFMICObject, mat_mul, zeros
from .padic import EisNum, PadicNum, check_prime, padic_log
from .series import FrobeniusSpec, TSeries, substitute_sigma
from .special import f_prefactor, hypergeometric_2f1, log_sigma, tate_period


def gm_matrix(M: int) -> list:
    """Gauss-Manin connection on (omega, eta) = (dx/y, x dx/y), as dt-coefficients mod t^M."""
    third = Fraction(1, 3)
    A00 = TSeries.monomial(-1, M, -third)
    A01 = TSeries.monomial(-1, M, 4 * third)
    A11 = TSeries.monomial(-1, M, third)
    # 1/(12(t^2 - t)) = -(1/12) sum_{n >= -1} t^n
    A10 = TSeries([Fraction(-1, 12)] * (M + 1), M, pole=1)
    return [[A00, A01], [A10, A11]]


class FamilyData:
    """Series data for the family at a prime p and Frobenius lift t -> c t^p.

    Everything is computed mod (p^(N + guard), t^(M + margin)); identities are
    meant to be checked mod (p^N, t^M).  ``conjugate=True`` runs the same
    construction with nu replaced by nu^2.
    """

    def __init__(self, p: int, c=1, M: int = 40, N: int = 10, conjugate: bool = False,
                 guard: int = 3, margin: int = 3):
        check_prime(p)
        if M < 4 or N < 2:
            raise ValueError("need M >= 4 and N >= 2")
        self.p, self.M, self.N = p, M, N
        self.sigma = FrobeniusSpec(p, Fraction(c))
        self.c = self.sigma.c
        self.conjugate = conjugate
        self.Mi, self.Ni = M + margin, N + guard

    # -- basic series ---------------------------------------------------------

    @cached_property
    def prefactor(self) -> EisNum:
        k = f_prefactor(self.p)
        return k.conj() if self.conjugate else k

    @cached_property
    def F(self) -> TSeries:
        k = self.prefactor.reduce(self.Ni)
        return hypergeometric_2f1(self.Mi).to_padic(self.p, self.Ni) * k

    @cached_property
    def dF(self) -> TSeries:
        return self.F.derivative()

    @cached_property
    def X(self) -> TSeries:
        """4(1 - t)(F + 3t F')."""
        one_minus_t = TSeries([4, -4], self.Mi)
        return (one_minus_t * (self.F + self.dF.shift(1) * 3)).truncate(self.F.order - 1)

    @cached_property
    def F_sigma(self) -> TSeries:
        return substitute_sigma(self.F, self.sigma)

    @cached_property
    def tate(self):
        return tate_period(self.Mi + 1)

    @cached_property
    def q(self) -> TSeries:
        return self.tate.q.to_padic(self.p, self.Ni)

    @cached_property
    def q0(self) -> TSeries:
        return self.tate.q0.to_padic(self.p, self.Ni)

    @cached_property
    def dlog_q(self) -> TSeries:
        return self.q.log_deriv()

    @cached_property
    def dlog_q_from_F(self) -> TSeries:
        """dt/(12(t^2 - t) F^2) as a dt-coefficient."""
        t2_t = TSeries([0, -12, 12], self.Mi)
        return (t2_t * self.F * self.F).inverse()

    @cached_property
    def sigma_kernel(self) -> TSeries:
        """c t^(p-1) / (c t^p - 1), i.e. p^{-1} d(t^sigma)/dt / (t^sigma - 1)."""
        p, c = self.p, self.c
        den = TSeries([-1] + [0] * (p - 1) + [c], self.Mi)
        return (TSeries.monomial(p - 1, self.Mi, c) / den).to_padic(p, self.Ni)

    # -- connection and bases ----------------------------------------------------

    def gm_matrix(self) -> list:
        return gm_matrix(self.Mi)

    @cached_property
    def P(self) -> list:
        """(w_hat, eta_hat) = (omega, eta) P."""
        return [[self.F.inverse(), self.X], [TSeries([], self.Mi), self.F]]

    @cached_property
    def P_inv(self) -> list:
        return [[self.F, -self.X], [TSeries([], self.Mi), self.F.inverse()]]

    @cached_property
    def P_sigma_inv(self) -> list:
        Fs = self.F_sigma
        Xs = substitute_sigma(self.X, self.sigma)
        return [[Fs, -Xs], [TSeries([], self.Mi), Fs.inverse()]]

    def hat_basis(self) -> list:
        return self.P

    @cached_property
    def hat_connection(self) -> list:
        """P^{-1}(dP + A P): should be [[0, 0], [dq/q, 0]]."""
        dP = [[e.derivative() for e in row] for row in self.P]
        AP = mat_mul(self.gm_matrix(), self.P)
        inner = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(dP, AP)]
        return mat_mul(self.P_inv, inner)

    def det_P(self) -> TSeries:
        return self.P[0][0] * self.P[1][1] - self.P[0][1] * self.P[1][0]

    # -- Frobenius -------------------------------------------------------------

    @cached_property
    def tau(self) -> TSeries:
        """tau^sigma = -p^{-1} log(27^(p-1) c) + log^sigma(q0)."""
        p = self.p
        const = padic_log(PadicNum.from_rational(Fraction(27) ** (p - 1) * self.c, p, self.Ni + 1)) / p
        return log_sigma(self.q0, self.sigma) - const

    def tau_constant(self):
        return self.tau.coefficient(0)

    @cached_property
    def frobenius_hat(self) -> list:
        p = self.p
        M = self.tau.order
        return [[TSeries([p], M), TSeries([], M)], [self.tau * (-p), TSeries([1], M)]]

    @cached_property
    def frobenius_algebraic(self) -> list:
        """P Phi_hat (P^sigma)^{-1}, the Frobenius matrix on (omega, eta)."""
        return mat_mul(mat_mul(self.P, self.frobenius_hat), self.P_sigma_inv)

    def hat_object(self) -> FilFMICObject:
        M = self.dlog_q.order
        A = zeros(2, 2, M)
        A[1][0] = self.dlog_q
        return FilFMICObject(["w_hat", "eta_hat"], A, self.frobenius_hat, [1, 0], self.sigma,
                             min(M, self.tau.order), name="H1 hat basis")

    def algebraic_object(self) -> FilFMICObject:
        Phi = self.frobenius_algebraic
        M = min(e.order for row in Phi for e in row)
        return FilFMICObject(["omega", "eta"], self.gm_matrix(), Phi, [1, 0], self.sigma, M,
                             name="H1 (omega, eta)")
