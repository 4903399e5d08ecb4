"""Truncated Laurent series in t with per-coefficient precision tracking."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .padic import (
    INF,
    EisNum,
    PadicDomainError,
    PadicNum,
    eis_frobenius,
    is_zero,
    prec_of,
    valuation,
)


class NonIntegrableError(ArithmeticError):
    """Integration of a series with a nonzero residue."""


def _is_exact_zero(c) -> bool:
    if isinstance(c, (int, Rational)):
        return c == 0
    if isinstance(c, PadicNum):
        return c.is_exact_zero()
    if isinstance(c, EisNum):
        return _is_exact_zero(c.a) and _is_exact_zero(c.b)
    try:
        return c == 0
    except Exception:
        return False


def _ring_of(coeffs) -> str:
    ring = "rational"
    for c in coeffs:
        if isinstance(c, EisNum):
            return "eisenstein"
        if isinstance(c, PadicNum):
            ring = "padic"
        elif not isinstance(c, (int, Rational)) and ring == "rational":
            ring = "function"
    return ring


class TSeries:
    """``sum_{n >= -pole} c_n t^n + O(t^order)``.

    Coefficients may be exact rationals, :class:`PadicNum`, :class:`EisNum`
    or elements of a sympy fraction field.  The series itself carries the
    t-adic truncation; each coefficient carries its own p-adic precision.
    """

    __slots__ = ("coeffs", "start", "order")

    def __init__(self, coeffs, order=None, pole: int = 0):
        coeffs = list(coeffs)
        start = -pole
        if order is None:
            order = start + len(coeffs)
        n = order - start
        if n < 0:
            raise ValueError("truncation order below the pole")
        if len(coeffs) < n:
            coeffs.extend([0] * (n - len(coeffs)))
        else:
            del coeffs[n:]
        self.coeffs = coeffs
        self.start = start
        self.order = order

    # -- construction -------------------------------------------------------

    @classmethod
    def constant(cls, c, order: int) -> TSeries:
        return cls([c], order)

    @classmethod
    def monomial(cls, k: int, order: int, c=1) -> TSeries:
        if k >= 0:
            return cls([0] * k + [c], order)
        return cls([c], order, pole=-k)

    @classmethod
    def from_function(cls, fn, order: int, pole: int = 0) -> TSeries:
        return cls([fn(n) for n in range(-pole, order)], order, pole)

    # -- inspection ---------------------------------------------------------

    @property
    def pole(self) -> int:
        return -self.start

    @property
    def ring(self) -> str:
        return _ring_of(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int):
        return self.coefficient(n)

    def coefficient(self, n: int):
        if n < self.start:
            return 0
        if n >= self.order:
            raise IndexError(f"coefficient of t^{n} unknown (series is O(t^{self.order}))")
        return self.coeffs[n - self.start]

    def prec_ledger(self) -> list:
        return [prec_of(c) for c in self.coeffs]

    def min_precision(self):
        return min(self.prec_ledger(), default=INF)

    def is_zero(self) -> bool:
        return all(is_zero(c) for c in self.coeffs)

    def leading_exponent(self):
        """Smallest n whose coefficient is known to be nonzero."""
        for i, c in enumerate(self.coeffs):
            if not is_zero(c):
                return self.start + i
        return None

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if _is_exact_zero(c):
                continue
            terms.append(f"({c})*t^{self.start + i}")
            if len(terms) > 6:
                terms.append("...")
                break
        body = " + ".join(terms) or "0"
        return f"TSeries({body} + O(t^{self.order}))"

    # -- structural ---------------------------------------------------------

    def map(self, fn) -> TSeries:
        return TSeries([fn(c) for c in self.coeffs], self.order, self.pole)

    def truncate(self, order: int) -> TSeries:
        if order >= self.order:
            return self
        return TSeries(self.coeffs, max(order, self.start), self.pole)

    def shift(self, k: int) -> TSeries:
        """Multiply by t^k."""
        return TSeries(self.coeffs, self.order + k, self.pole - k)

    def trim_pole(self) -> TSeries:
        """Drop exactly-zero coefficients below t^0."""
        i = 0
        while self.start + i < 0 and i < len(self.coeffs) and _is_exact_zero(self.coeffs[i]):
            i += 1
        return TSeries(self.coeffs[i:], self.order, self.pole - i)

    def conj(self) -> TSeries:
        """Apply nu -> nu^2 to the coefficients."""
        return self.map(lambda c: c.conj() if isinstance(c, EisNum) else c)

    def to_padic(self, p: int, N: int) -> TSeries:
        """Convert exact rational coefficients to p-adic ones mod p^N."""
        def conv(c):
            if isinstance(c, (int, Rational)):
                return PadicNum.from_rational(c, p, N)
            if isinstance(c, EisNum):
                return c.reduce(N)
            if isinstance(c, PadicNum):
                return c.reduce(N)
            raise TypeError(f"cannot convert {c!r} to a p-adic number")
        return self.map(conv)

    def reduce(self, N) -> TSeries:
        return self.map(lambda c: c.reduce(N) if isinstance(c, (PadicNum, EisNum)) else c)

    # -- arithmetic ---------------------------------------------------------

    def _aligned(self, other: TSeries):
        start = min(self.start, other.start)
        order = min(self.order, other.order)
        return start, order

    def __add__(self, other):
        if not isinstance(other, TSeries):
            if 0 >= self.order:
                return self
            if self.start > 0:
                return TSeries([0] * self.start + self.coeffs, self.order) + other
            out = list(self.coeffs)
            out[-self.start] = out[-self.start] + other
            return TSeries(out, self.order, self.pole)
        start, order = self._aligned(other)
        out = []
        for n in range(start, order):
            a = self.coeffs[n - self.start] if n >= self.start else 0
            b = other.coeffs[n - other.start] if n >= other.start else 0
            out.append(a + b)
        return TSeries(out, order, -start)

    __radd__ = __add__

    def __neg__(self):
        return self.map(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TSeries):
            if _is_exact_zero(other):
                return TSeries([], self.order, self.pole)
            return self.map(lambda c: c * other)
        a, b = self, other
        start = a.start + b.start
        # leading exact zeros are known, so they do not cost t-adic precision
        order = min(a.order + b._exact_start(), b.order + a._exact_start())
        n = order - start
        if n <= 0:
            return TSeries([], order if order >= start else start, -start)
        an = [(i, c) for i, c in enumerate(a.coeffs[:n]) if not _is_exact_zero(c)]
        bn = [(j, c) for j, c in enumerate(b.coeffs[:n]) if not _is_exact_zero(c)]
        if len(an) > len(bn):
            an, bn = bn, an
        out = [0] * n
        for i, x in an:
            for j, y in bn:
                k = i + j
                if k >= n:
                    break
                out[k] = out[k] + x * y
        return TSeries(out, order, -start)

    def __rmul__(self, other):
        return self * other

    def _exact_start(self) -> int:
        for i, c in enumerate(self.coeffs):
            if not _is_exact_zero(c):
                return self.start + i
        return self.order

    def inverse(self) -> TSeries:
        k = self.leading_exponent()
        if k is None:
            raise ZeroDivisionError("series is zero to its precision")
        u = TSeries(self.coeffs[k - self.start:], self.order - k)
        c0 = u.coeffs[0]
        inv0 = c0.inverse() if isinstance(c0, (PadicNum, EisNum)) else Fraction(1) / c0
        n = len(u.coeffs)
        out = [inv0]
        nz = [(i, c) for i, c in enumerate(u.coeffs) if i and not _is_exact_zero(c)]
        for m in range(1, n):
            acc = 0
            for i, c in nz:
                if i > m:
                    break
                acc = acc + c * out[m - i]
            out.append(-acc * inv0)
        return TSeries(out, n).shift(-k)

    def __truediv__(self, other):
        if isinstance(other, TSeries):
            return self * other.inverse()
        if isinstance(other, (int, Rational)):
            return self * (1 / Fraction(other))
        if isinstance(other, (PadicNum, EisNum)):
            return self * other.inverse()
        return self.map(lambda c: c / other)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = None, self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        if result is None:
            return TSeries([1], self.order - self.start)
        return result

    # -- calculus -----------------------------------------------------------

    def derivative(self) -> TSeries:
        out = [c * (self.start + i) for i, c in enumerate(self.coeffs)]
        if self.start == 0:
            return TSeries(out[1:], self.order - 1)
        return TSeries(out, self.order - 1, self.pole + 1)

    def residue(self):
        return self.coefficient(-1) if self.order > -1 else 0

    def integrate(self) -> TSeries:
        """Antiderivative with zero constant term; the residue must vanish."""
        if self.start <= -1 < self.order:
            r = self.coefficient(-1)
            if not is_zero(r):
                raise NonIntegrableError(f"nonzero residue {r!r}")
        out = []
        for i, c in enumerate(self.coeffs):
            n = self.start + i + 1
            out.append(0 if n == 0 else Fraction(c, n) if isinstance(c, int) else c / n)
        return TSeries(out, self.order + 1, self.pole - 1).trim_pole()

    def log_deriv(self) -> TSeries:
        """f'/f, i.e. k/t + u'/u for f = t^k u."""
        k = self.leading_exponent()
        if k is None:
            raise ZeroDivisionError("log derivative of a zero series")
        u = TSeries(self.coeffs[k - self.start:], self.order - k)
        res = u.derivative() / u
        if k:
            res = res + TSeries.monomial(-1, res.order, k)
        return res

    def evaluate_at_zero(self):
        if self.start < 0 and any(not is_zero(c) for c in self.coeffs[: -self.start]):
            raise PadicDomainError("series has a pole at t = 0")
        return self.coefficient(0)

    def compose(self, g: TSeries) -> TSeries:
        """f(g(t)) for g with g(0) = 0."""
        if g.start < 0 or not is_zero(g.coefficient(0)):
            raise ValueError("inner series must vanish at t = 0")
        vg = g.leading_exponent()
        if vg is None:
            raise ValueError("inner series is zero to its precision")
        cap = self.order * vg if self.order > 0 else self.order
        acc = None
        for n in range(self.order - 1, -1, -1):
            c = self.coefficient(n)
            acc = TSeries([c], cap) if acc is None else acc * g + c
        if acc is None:
            acc = TSeries([], max(cap, 0))
        if self.start < 0:
            ginv = g.inverse()
            poly = TSeries([], acc.order)
            for n in range(self.start, 0):
                poly = poly + ginv ** (-n) * self.coefficient(n)
            acc = acc + poly
        return acc.truncate(cap)

    def reversion(self) -> TSeries:
        """Compositional inverse of f with f(0) = 0 and f'(0) a unit."""
        if self.start < 0 or not is_zero(self.coefficient(0)) or self.order < 2:
            raise ValueError("reversion needs f(0) = 0")
        f1 = self.coefficient(1)
        if is_zero(f1) or (isinstance(f1, (PadicNum, EisNum)) and f1.valuation != 0):
            raise ValueError("reversion needs f'(0) to be a unit")
        inv1 = f1.inverse() if isinstance(f1, (PadicNum, EisNum)) else 1 / Fraction(f1)
        M = self.order
        r = TSeries([0, inv1], 2)
        df = self.derivative()
        prec = 2
        while prec < M:
            prec = min(2 * prec, M)
            rr = TSeries(r.coeffs, prec)
            t = TSeries.monomial(1, prec)
            err = self.truncate(prec).compose(rr) - t
            slope = df.truncate(prec).compose(rr)
            r = (rr - err / slope).truncate(prec)
        return r


@dataclass(frozen=True)
class FrobeniusSpec:
    """Frobenius lift t -> c t^p, acting on coefficients by nu -> nu^p."""

    p: int
    c: Fraction = Fraction(1)

    def __post_init__(self):
        c = Fraction(self.c)
        object.__setattr__(self, "c", c)
        if c == 0 or valuation(c - 1, self.p) < 1:
            raise PadicDomainError(f"Frobenius lift needs c = 1 mod {self.p}, got {c}")

    def apply_coeff(self, x):
        return eis_frobenius(x)

    def substitute(self, f: TSeries) -> TSeries:
        return substitute_sigma(f, self)

    def pullback_form(self, a: TSeries) -> TSeries:
        """sigma*(a dt) as a series coefficient of dt."""
        return substitute_sigma(a, self).shift(self.p - 1) * (self.c * self.p)


def substitute_sigma(f: TSeries, sigma: FrobeniusSpec) -> TSeries:
    """f^sigma(t) = f(c t^p) with Frobenius applied to the coefficients."""
    p, c = sigma.p, sigma.c
    start = f.start * p
    order = f.order if f.order > 0 else f.order * p
    out = [0] * (order - start)
    cn = c ** f.start if f.start else Fraction(1)
    for i, a in enumerate(f.coeffs):
        e = (f.start + i) * p
        if e >= order:
            break
        if not _is_exact_zero(a):
            out[e - start] = eis_frobenius(a) * cn
        cn *= c
    return TSeries(out, order, -start).trim_pole()


def series_log(u: TSeries, p: int) -> TSeries:
    """log(u) for a power series u = 1 mod p (coefficientwise), with u(0) = 1 + O(p)."""
    x = u - 1
    N = x.min_precision()
    if N == INF:
        raise PadicDomainError("series_log needs p-adic coefficients")
    vx = min(valuation(c, p) for c in x.coeffs) if x.coeffs else INF
    if vx < 1:
        raise PadicDomainError("series_log needs u = 1 mod p")
    if vx == INF:
        return TSeries([], x.order)
    total = TSeries([], x.order)
    power, n = x, 1
    while n * vx - _floor_log(n, p) < N:
        term = power / n
        total = total + term if n % 2 else total - term
        n += 1
        power = power * x
    return total.reduce(N)


def _floor_log(n: int, p: int) -> int:
    k = 0
    while n >= p:
        n //= p
        k += 1
    return k
