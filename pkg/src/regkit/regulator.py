"""Regulator ODEs for the family, plus the n = 0 symbol formula."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .family import FamilyData
from .padic import INF, EisNum, PadicDomainError, PrecisionError, is_zero, prec_of, valuation
from .series import FrobeniusSpec, TSeries
from .special import PolylogValue, log_sigma, polylog_eval


class UnsupportedEvaluation(NotImplementedError):
    """Evaluating the regulator series at a unit point."""


SIGN_CONVENTIONS = {"intro": 1, "corollary": -1}


@dataclass
class Audit:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class RegulatorResult:
    p: int
    c: Fraction
    M: int
    N: int
    s: int
    E1: TSeries
    E2: TSeries
    eps1: TSeries
    eps2: TSeries
    E2_0: PolylogValue
    audits: list = field(default_factory=list)
    sign_convention: str = "intro"
    a: Fraction | None = None

    @property
    def ok(self) -> bool:
        return all(a.passed for a in self.audits)

    def regulator(self, convention: str | None = None) -> tuple[TSeries, TSeries]:
        """(eps1, eps2) scaled by the sign of the requested convention."""
        sign = SIGN_CONVENTIONS[convention or self.sign_convention]
        return self.eps1 * sign, self.eps2 * sign

    def evaluate(self, a):
        raise UnsupportedEvaluation(
            "evaluation at a unit point is unsupported: it requires Dwork-congruence "
            "continuation of the series beyond the open unit disk"
        )


def nu_point(p: int, conjugate: bool = False) -> EisNum:
    """-nu, or -nu^2 = 1 + nu in the conjugated pipeline."""
    return EisNum(p, 1, 1) if conjugate else EisNum(p, 0, -1)


def rhs_E1(fam: FamilyData) -> TSeries:
    """-3 (F/(t - 1) - F^sigma c t^(p-1)/(c t^p - 1))."""
    inv_t_minus_1 = TSeries([-1] * fam.Mi, fam.Mi)
    return (fam.F * inv_t_minus_1 - fam.F_sigma * fam.sigma_kernel) * (-3)


def solve_E1(fam: FamilyData) -> TSeries:
    return rhs_E1(fam).integrate()


def rhs_E2(fam: FamilyData, E1: TSeries) -> TSeries:
    """-(E1/t)(t q'/q) - 3 F^sigma tau c t^(p-1)/(c t^p - 1)."""
    if not is_zero(E1.coefficient(0)):
        raise PadicDomainError("E1(0) must vanish")
    E1_over_t = TSeries(E1.coeffs[1 - E1.start:], E1.order - 1)
    t_dlog_q = fam.dlog_q.shift(1).trim_pole()
    return E1_over_t * t_dlog_q * (-1) - fam.F_sigma * fam.tau * fam.sigma_kernel * 3


def rhs_E2_residue(fam: FamilyData, E1: TSeries):
    """Residue at t = 0 of -E1 q'/q - ... computed without the division by t."""
    return (E1 * fam.dlog_q * (-1)).residue()


def initial_E2(p: int, s: int, conjugate: bool = False) -> PolylogValue:
    return polylog_eval(2, nu_point(p, conjugate), p, s=s)


def solve_E2(fam: FamilyData, E1: TSeries, s: int | None = None) -> tuple[TSeries, PolylogValue]:
    s = fam.N + 2 if s is None else s
    init = initial_E2(fam.p, s, fam.conjugate)
    rhs = rhs_E2(fam, E1)
    return rhs.integrate() + init.value * (-9), init


def epsilons(fam: FamilyData, E1: TSeries, E2: TSeries) -> tuple[TSeries, TSeries]:
    eps1 = E1 / fam.F + fam.X * E2
    eps2 = fam.F * E2
    return eps1, eps2


def ode_residuals(fam: FamilyData, E1: TSeries, E2: TSeries) -> tuple[TSeries, TSeries]:
    """Plug E1, E2 back into both equations, using -E1 q'/q directly in the second."""
    r1 = E1.derivative() - rhs_E1(fam)
    rhs2 = (E1 * fam.dlog_q * (-1)).trim_pole() - fam.F_sigma * fam.tau * fam.sigma_kernel * 3
    r2 = E2.derivative() - rhs2
    return r1, r2


def nu_component_valuation(s: TSeries, M: int):
    """Smallest valuation among the nu-components below t^M (INF when all vanish to precision)."""
    worst = INF
    for n in range(s.start, min(M, s.order)):
        c = s.coefficient(n)
        if isinstance(c, EisNum) and not is_zero(c.b):
            worst = min(worst, valuation(c.b, c.p))
    return worst


def _vanish_to(s: TSeries, N, M: int) -> tuple[bool, str]:
    if s.order < M:
        return False, f"known only mod t^{s.order}"
    for n in range(s.start, M):
        c = s.coefficient(n)
        if prec_of(c) < N:
            return False, f"t^{n} known only to precision {prec_of(c)}"
        if not is_zero(c):
            return False, f"t^{n} coefficient nonzero: {c!r}"
    return True, f"zero mod (p^{N}, t^{M})"


def _cap(s: TSeries, N: int, M: int) -> TSeries:
    return s.truncate(M).reduce(N)


def first_unusable(s: TSeries, M: int):
    for n in range(s.start, min(M, s.order)):
        if prec_of(s.coefficient(n)) <= 0:
            return n
    return None


def regulator_output(p: int, c=1, M: int = 40, N: int = 10, s: int | None = None,
                     conjugate: bool = False, sign_convention: str = "intro",
                     family: FamilyData | None = None) -> RegulatorResult:
    """Run the full pipeline and attach audits."""
    fam = family or FamilyData(p, c, M, N, conjugate=conjugate)
    s = N + 2 if s is None else s
    E1 = solve_E1(fam)
    E2, init = solve_E2(fam, E1, s)
    eps1, eps2 = epsilons(fam, E1, E2)
    audits = []
    ledger_N = N - int(math.floor(math.log(M, p) + 1e-12))
    audits.append(Audit("E1(0) = 0", E1.coefficient(0) == 0 and is_zero(E1.coefficient(0)),
                        repr(E1.coefficient(0))))
    res = rhs_E2_residue(fam, E1)
    audits.append(Audit("E2 equation residue at t=0", is_zero(res), repr(res)))
    expected = fam.F.coefficient(0) * 3
    audits.append(Audit("E1 t-coefficient = 3F(0)", is_zero(E1.coefficient(1) - expected), repr(E1.coefficient(1))))
    r1, r2 = ode_residuals(fam, E1, E2)
    for name, r in (("E1 ODE residual", r1), ("E2 ODE residual", r2)):
        ok, detail = _vanish_to(r, ledger_N, M)
        audits.append(Audit(name, ok, detail))
    audits.append(Audit("E2(0) polylog stabilization", init.delta <= 2,
                        f"s={init.s} delta={init.delta} precision={init.precision} method={init.method}"))
    for name, e in (("eps1", eps1), ("eps2", eps2)):
        v = nu_component_valuation(e, M)
        audits.append(Audit(f"{name} nu-component vanishes", v == INF,
                            "all nu-components zero to ledger precision" if v == INF else f"valuation {v}"))
    for name, e in (("E1", E1), ("E2", E2), ("eps1", eps1), ("eps2", eps2)):
        bad = first_unusable(e, M)
        if bad is not None:
            raise PrecisionError(f"{name}: coefficient of t^{bad} has no usable precision")
        worst = min((prec_of(e.coefficient(n)) for n in range(min(M, e.order))), default=INF)
        audits.append(Audit(f"{name} precision ledger", worst >= ledger_N,
                            f"min precision {min(worst, N)} (ledger bound {ledger_N})"))
    return RegulatorResult(
        p=p, c=fam.c, M=M, N=N, s=s,
        E1=_cap(E1, N, M), E2=_cap(E2, N, M), eps1=_cap(eps1, N, M), eps2=_cap(eps2, N, M),
        E2_0=init, audits=audits, sign_convention=sign_convention,
    )


def c_from_unit(a, p: int) -> Fraction:
    """c = a^(1-p) for a unit a not congruent to 0 or 1 mod p."""
    a = Fraction(a)
    if valuation(a, p) != 0 or valuation(a - 1, p) != 0:
        raise PadicDomainError(f"a must satisfy a != 0, 1 mod {p}")
    return a ** (1 - p)


def symbol_reg_n0(h: TSeries, sigma: FrobeniusSpec, N: int | None = None) -> tuple[TSeries, TSeries]:
    """(dh/h, log^sigma(h)) for a unit series h."""
    if N is not None and h.ring == "rational":
        h = h.to_padic(sigma.p, N)
    return h.log_deriv(), log_sigma(h, sigma)
