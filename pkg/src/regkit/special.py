"""Hypergeometric and modular series, p-adic polylogarithms and log^sigma."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from numbers import Rational

from .padic import (
    INF,
    ConfigurationError,
    EisNum,
    PadicDomainError,
    PadicNum,
    PrecisionError,
    check_prime,
    padic_log,
    ppow,
    valuation,
)
from .series import FrobeniusSpec, TSeries, series_log, substitute_sigma

DEFAULT_TERM_BUDGET = 2_000_000


# -- hypergeometric ---------------------------------------------------------


@lru_cache(maxsize=32)
def _hyp_coeffs(M: int) -> tuple:
    out, c = [], Fraction(1)
    for n in range(M):
        out.append(c)
        c = c * Fraction(3 * n + 1, 3) * Fraction(3 * n + 2, 3) / ((n + 1) ** 2)
    return tuple(out)


def hypergeometric_2f1(M: int) -> TSeries:
    """2F1(1/3, 2/3; 1; t) mod t^M with exact rational coefficients."""
    return TSeries(_hyp_coeffs(M), M)


def f_prefactor(p: int) -> EisNum:
    """1/(2(1+2nu)) = -(1+2nu)/6."""
    return EisNum(p, Fraction(-1, 6), Fraction(-1, 3))


def hypergeometric_F(p: int, M: int, N: int | None = None) -> TSeries:
    """F(t) = 2F1(1/3, 2/3; 1; t) / (2 sqrt(-3)) over Z_p[nu] tensor Q."""
    check_prime(p)
    k = f_prefactor(p)
    F = TSeries([k * c for c in _hyp_coeffs(M)], M)
    return F.to_padic(p, N) if N is not None else F


# -- polylogarithms ---------------------------------------------------------


def polylog_series(r: int, M: int, p: int, N: int | None = None) -> TSeries:
    """sum_{p does not divide n} z^n / n^r mod z^M."""
    coeffs = [Fraction(0)]
    for n in range(1, M):
        coeffs.append(Fraction(0) if n % p == 0 else Fraction(1, n**r) if r >= 0 else Fraction(n ** (-r)))
    f = TSeries(coeffs, M)
    return f.to_padic(p, N) if N is not None else f


class _Mod:
    """a + b*nu modulo an integer, for the fast evaluation loops."""

    __slots__ = ("a", "b", "m")

    def __init__(self, a, b, m):
        self.a, self.b, self.m = a % m, b % m, m

    def __add__(self, o):
        return _Mod(self.a + o.a, self.b + o.b, self.m)

    def __sub__(self, o):
        return _Mod(self.a - o.a, self.b - o.b, self.m)

    def __mul__(self, o):
        if isinstance(o, int):
            return _Mod(self.a * o, self.b * o, self.m)
        bd = self.b * o.b
        return _Mod(self.a * o.a - bd, self.a * o.b + self.b * o.a - bd, self.m)

    def __pow__(self, k):
        result, base = _Mod(1, 0, self.m), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self):
        n = (self.a * self.a - self.a * self.b + self.b * self.b) % self.m
        ni = pow(n, -1, self.m)
        return _Mod((self.a - self.b) * ni, -self.b * ni, self.m)

    def is_one(self):
        return self.a == 1 % self.m and self.b == 0


def _to_mod(z, p: int, m: int) -> _Mod:
    def conv(x):
        x = Fraction(x)
        if valuation(x, p) < 0:
            raise PadicDomainError("polylog argument must be p-integral")
        return x.numerator * pow(x.denominator, -1, m)

    if isinstance(z, EisNum):
        return _Mod(conv(z.a), conv(z.b), m)
    return _Mod(conv(z), 0, m)


def _exact(z):
    if isinstance(z, EisNum):
        return isinstance(z.a, (int, Rational)) and isinstance(z.b, (int, Rational))
    return isinstance(z, (int, Rational))


def _root_order(z, p: int):
    """Order of z as a root of unity (exact z, order coprime to p), else None."""
    if not _exact(z):
        return None
    zz = z if isinstance(z, EisNum) else EisNum(p, Fraction(z), 0)
    w = zz
    for k in range(1, 7):
        if w.a == 1 and w.b == 0:
            return k if k % p else None
        w = w * zz
    return None


@lru_cache(maxsize=None)
def _bernoulli(n: int) -> tuple:
    """B_0..B_n with B_1 = -1/2."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, i) * B[i] for i in range(m)) / (m + 1))
    return tuple(B)


def _power_sum(j: int, K: int) -> int:
    """sum_{k=0}^{K-1} k^j."""
    if K <= 0:
        return 0
    B = _bernoulli(j)
    s = sum(comb(j + 1, i) * B[i] * K ** (j + 1 - i) for i in range(j + 1)) / (j + 1)
    if j == 0:
        return K
    assert s.denominator == 1
    return s.numerator


def _gen_binom(r: int, j: int) -> int:
    """binom(-r, j)."""
    out = Fraction(1)
    for i in range(j):
        out = out * (-r - i) / (i + 1)
    return int(out)


def _sum_faulhaber(zm: _Mod, order: int, r: int, p: int, s: int, K: int) -> _Mod:
    m = ppow(p, K)
    L = order * p
    P = ppow(p, s)
    total = _Mod(0, 0, m)
    za = _Mod(1, 0, m)
    jmax = K if r > 0 else -r + 1
    for a in range(1, L):
        za = za * zm
        if a % p == 0 or a >= P:
            continue
        Ka = (P - a + L - 1) // L
        ainv = pow(a, -1, m)
        ratio = L * ainv % m
        acc, rj = 0, 1
        for j in range(jmax):
            b = _gen_binom(r, j)
            if b:
                acc += b * rj * _power_sum(j, Ka)
            rj = rj * ratio % m
        ar = pow(ainv, r, m) if r >= 0 else pow(a, -r, m)
        total = total + za * (acc * ar % m)
    return total


def _sum_direct(zm: _Mod, r: int, p: int, s: int, K: int) -> _Mod:
    m = ppow(p, K)
    P = ppow(p, s)
    a = b = 0
    za = _Mod(1, 0, m)
    for n in range(1, P):
        za = za * zm
        if n % p == 0:
            continue
        w = pow(n, -r, m) if r else 1
        a += za.a * w
        b += za.b * w
    return _Mod(a, b, m)


def _sum_geometric(zm: _Mod, p: int, s: int, K: int) -> _Mod:
    m = ppow(p, K)
    P = ppow(p, s)
    one = _Mod(1, 0, m)
    zP = zm ** P
    zp = zm**p
    return (zm - zP) * (one - zm).inverse() - (zp - zP) * (one - zp).inverse()


def _partial(z, r: int, p: int, s: int, K: int, budget: int) -> tuple[_Mod, str]:
    m = ppow(p, K)
    zm = _to_mod(z, p, m)
    one = _Mod(1, 0, m)
    if r == 0:
        num, method = _sum_geometric(zm, p, s, K), "geometric"
    else:
        order = _root_order(z, p)
        if order is not None:
            num, method = _sum_faulhaber(zm, order, r, p, s, K), "faulhaber"
        else:
            if ppow(p, s) > budget:
                raise PrecisionError(
                    f"polylog evaluation needs {p}^{s} terms, over the budget of {budget}; lower s or raise the budget"
                )
            num, method = _sum_direct(zm, r, p, s, K), "direct"
    return num * (one - zm ** ppow(p, s)).inverse(), method


@dataclass
class PolylogValue:
    r: int
    z: object
    p: int
    s: int
    value: object
    delta: int
    precision: int
    method: str


def polylog_eval(r: int, z, p: int, s: int | None = None, N: int | None = None,
                 budget: int = DEFAULT_TERM_BUDGET) -> PolylogValue:
    """ln_r^{(p)}(z) as the limit of S_s with the stabilization margin delta measured from S_{s-1}."""
    check_prime(p)
    if s is None:
        if N is None:
            raise ConfigurationError("polylog_eval needs s or N")
        s = N + 2
    if s < 2:
        raise ConfigurationError("s must be at least 2")
    zz = z if isinstance(z, EisNum) else Fraction(z)
    if isinstance(zz, EisNum):
        if valuation(zz.norm(), p) != 0 or valuation((1 - zz).norm(), p) != 0:
            raise PadicDomainError("z and 1 - z must be units (z is inside a bad residue disk)")
    elif valuation(zz, p) != 0 or valuation(1 - zz, p) != 0:
        raise PadicDomainError("z and 1 - z must be units (z is inside a bad residue disk)")
    K = s + 3
    cur, method = _partial(zz, r, p, s, K, budget)
    prev, _ = _partial(zz, r, p, s - 1, K, budget)
    diff = cur - prev
    vd = min(valuation(diff.a, p), valuation(diff.b, p))
    delta = max(0, s - min(vd, K))
    prec = min(s - delta, K)
    if isinstance(zz, EisNum):
        value = EisNum(p, PadicNum.from_rational(cur.a, p, prec), PadicNum.from_rational(cur.b, p, prec))
    else:
        value = PadicNum.from_rational(cur.a, p, prec)
    return PolylogValue(r, z, p, s, value, delta, prec, method)


def polylog_closed_form_r0(z, p: int):
    """1/(1 - z) - 1/(1 - z^p)."""
    return 1 / (1 - z) - 1 / (1 - z**p)


# -- x-form -----------------------------------------------------------------


def w_poly(p: int) -> list[int]:
    """Integer coefficients of w(x) = (1 - x^p + (x - 1)^p)/p."""
    c = [0] * p
    for k in range(1, p):
        c[k] = comb(p, k) * (-1) ** (p - k) // p
    return c


def _poly_mul(a: list[int], b: list[int], m: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [v % m for v in out]


@dataclass
class PolylogXForm:
    """ln_r^{(p)} as a polynomial in x = 1/(1 - z) mod (p^N, x^M)."""

    r: int
    p: int
    M: int
    N: int
    coeffs: list  # PadicNum, degrees 0..M-1
    full: list = field(repr=False, default_factory=list)  # every computed coefficient
    tail_bound: object = INF
    precision: int = 0

    def value_at_one(self):
        total = PadicNum.exact_zero(self.p)
        for c in self.full:
            total = total + c
        return total

    def divisible_by_x_minus_x2(self) -> bool:
        return self.full[0].is_zero() and self.value_at_one().reduce(self.precision).is_zero()

    def series(self) -> TSeries:
        return TSeries(self.coeffs, self.M)

    def substitute_z(self, Mz: int) -> TSeries:
        """Expand at x = 1/(1 - z) as a power series in z mod z^Mz."""
        out = []
        for n in range(Mz):
            acc = PadicNum.exact_zero(self.p)
            for k, c in enumerate(self.full):
                if k == 0 and n == 0:
                    acc = acc + c
                elif k:
                    acc = acc + c * comb(n + k - 1, n)
            out.append(acc.reduce(self.precision))
        return TSeries(out, Mz)


def _xform_tail(n0: int, p: int, r: int, deg: int) -> int:
    """Lower bound for the valuation of every dropped term n >= n0 after r - 1 integrations."""
    best = INF
    for n in range(n0, n0 + 20 * p):
        e = n * (p - 1) + 2 * (r - 1)
        loss = 0
        while ppow(p, loss + 1) <= e:
            loss += 1
        v = n - 1 - valuation(n, p) - (r - 1) * loss
        best = min(best, v)
    return best


def polylog_xform(r: int, M: int, N: int, p: int) -> PolylogXForm:
    """Overconvergent x-form of ln_r^{(p)} from the w(x) series and repeated (x^2 - x) d/dx inversion."""
    check_prime(p)
    if r < 1:
        raise ConfigurationError("polylog_xform needs r >= 1")
    K = N + r + 2
    while True:
        m = ppow(p, K)
        w = w_poly(p)
        # ln_1 = -sum p^{n-1} w^n / n, computed over Z/p^(K+slack) then charged v_p(n)
        n_max = 1
        while n_max - _floor_log(n_max, p) - 1 < K:
            n_max += 1
        slack = _floor_log(n_max, p) + 1
        ms = ppow(p, K + slack)
        acc = [0] * ((n_max - 1) * (p - 1) + 1)
        wn = [1]
        for n in range(1, n_max):
            wn = _poly_mul(wn, w, ms)
            vn = valuation(n, p)
            un = n // ppow(p, vn)
            scale = ppow(p, n - 1 - vn) * pow(un, -1, ms) % ms if n - 1 - vn >= 0 else None
            for i, c in enumerate(wn):
                acc[i] -= c * scale
        cur = [PadicNum.from_rational(c % m, p, K) for c in acc]
        tail = _xform_tail(n_max, p, r, len(cur))
        for _ in range(r - 1):
            cur = _div_x2_minus_x_integrate(cur, p)
        prec = min(N, min(c.precision for c in cur), tail)
        if prec >= N or K > N + r + 12:
            break
        K += 2
    coeffs = [cur[i] if i < len(cur) else PadicNum.zero(p, K) for i in range(M)]
    beyond = [c.valuation for c in cur[M:]]
    tail_bound = min([tail] + beyond)
    return PolylogXForm(r, p, M, N, [c.reduce(prec) for c in coeffs], cur, tail_bound, prec)


def _div_x2_minus_x_integrate(f: list, p: int) -> list:
    """g with g(0) = 0 and (x^2 - x) g' = f; f must vanish at 0 and 1."""
    # f = (x^2 - x) h: h = -f/x / (1 - x) = -(f/x) * sum x^k, exact since f(1) = 0
    if not f[0].is_zero():
        raise PadicDomainError("x-form step: nonzero constant term")
    fx = f[1:]
    h, run = [], PadicNum.exact_zero(p)
    for c in fx:
        run = run + c
        h.append(-run)
    # the last partial sum is f(1) and must vanish; the quotient has one degree less
    if not h[-1].is_zero():
        raise PadicDomainError("x-form step: value at x = 1 is nonzero")
    h = h[:-1]
    return [PadicNum.exact_zero(p)] + [c / (k + 1) for k, c in enumerate(h)]


def _floor_log(n: int, p: int) -> int:
    k = 0
    while n >= p:
        n //= p
        k += 1
    return k


# -- log^sigma --------------------------------------------------------------


def log_sigma(f: TSeries, sigma: FrobeniusSpec, N: int | None = None,
              allow_t_power: bool = False) -> TSeries:
    """p^{-1} log(f^p / f^sigma) for a unit series f.

    With ``allow_t_power`` f may be t^k times a unit, using
    f^p / f^sigma = u^p / (c^k u^sigma).
    """
    p = sigma.p
    if N is not None:
        f = f.to_padic(p, N)
    k = f.leading_exponent()
    if k is None or k < 0 or (k > 0 and not allow_t_power):
        raise PadicDomainError("log_sigma needs a unit series")
    u = TSeries(f.coeffs[k - f.start:], f.order - k)
    c0 = u.coefficient(0)
    if valuation(c0.norm() if isinstance(c0, EisNum) else c0, p) != 0:
        raise PadicDomainError("log_sigma needs a unit series")
    g = u**p / substitute_sigma(u, sigma).truncate(u.order)
    out = series_log(g, p) / p
    if k and sigma.c != 1:
        prec = u.min_precision()
        out = out - padic_log(PadicNum.from_rational(sigma.c, p, prec + 1)) * Fraction(k, p)
    return out


# -- modular forms and the Tate period ---------------------------------------


def _sigma3(n: int) -> int:
    return sum(d**3 for d in range(1, n + 1) if n % d == 0)


@lru_cache(maxsize=16)
def _delta_over_q(M: int) -> TSeries:
    """prod (1 - q^n)^24 mod q^M."""
    e = [0] * M
    # Euler pentagonal theorem
    k = 0
    while True:
        done = True
        for kk in ((k, k), (-k, k)) if k else ((0, 0),):
            g = kk[0] * (3 * kk[0] - 1) // 2
            if 0 <= g < M:
                e[g] = (-1) ** abs(kk[1])
                done = False
        k += 1
        if done and k > 1:
            break
    return TSeries(e, M) ** 24


def eisenstein_e4(M: int) -> TSeries:
    return TSeries([1] + [240 * _sigma3(n) for n in range(1, M)], M)


@lru_cache(maxsize=16)
def j_q_expansion(M: int) -> TSeries:
    """j(q) = E4^3/Delta mod q^M (pole of order one)."""
    E4 = eisenstein_e4(M + 1)
    return (E4**3 / _delta_over_q(M + 1)).shift(-1)


def j_family(M: int) -> TSeries:
    """27(1 + 8t)^3 / (t (1 - t)^3) mod t^M."""
    num = TSeries([27, 27 * 24, 27 * 192, 27 * 512], M + 1)
    den = TSeries([1, -3, 3, -1], M + 1)
    return (num / den).shift(-1)


PRINTED_Q = {2: Fraction(250289, 243), 3: Fraction(-5507717, 243), 4: Fraction(25287001, 81)}


@dataclass
class TatePeriod:
    q: TSeries
    q0: TSeries
    printed_comparison: dict


@lru_cache(maxsize=16)
def tate_period(M: int) -> TatePeriod:
    """q(t) in t Q[[t]] with j(q(t)) = 27(1+8t)^3/(t(1-t)^3) mod t^M."""
    Mq = M + 1
    g = _delta_over_q(Mq) / eisenstein_e4(Mq) ** 3   # 1/j = q * g
    inv_j = g.shift(1).truncate(Mq)
    K = TSeries([0, 1, -3, 3, -1], Mq) / (TSeries([1, 24, 192, 512], Mq) * 27)  # 1/J(t)
    q = inv_j.reversion().compose(K.truncate(Mq)).truncate(Mq)
    q0 = (q.shift(-1) * 27).truncate(M)
    q = q.truncate(M + 1)
    comparison = {}
    for k, printed in PRINTED_Q.items():
        if k < q.order:
            computed = q.coefficient(k)
            comparison[f"t^{k}"] = {"printed": str(printed), "computed": str(computed),
                                    "match": computed == printed}
    return TatePeriod(q, q0, comparison)
