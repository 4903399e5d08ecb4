"""Capped-precision p-adic numbers and the quadratic ring Z_p[nu], nu^2 + nu + 1 = 0.

A :class:`PadicNum` stores ``u * p**v`` known modulo ``p**N`` (absolute
precision ``N``).  Arithmetic propagates precision the way interval
arithmetic on p-adic balls does, so a value never claims more digits than
its inputs justify.  Python ``int`` and ``Fraction`` operands are exact.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

INF = math.inf


class ConfigurationError(ValueError):
    """Unsupported prime or run parameter."""


class PadicDomainError(ValueError):
    """Argument outside the domain of a p-adic function."""


class PrecisionError(ArithmeticError):
    """Not enough p-adic precision left to carry out an operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p) or p < 5:
        raise ConfigurationError(f"p must be a prime >= 5, got {p!r}")
    return p


@lru_cache(maxsize=8192)
def ppow(p: int, k: int) -> int:
    return p**k


def valuation(x, p: int):
    """p-adic valuation of an exact int/Fraction (``INF`` for zero)."""
    if isinstance(x, PadicNum):
        return x.valuation
    if isinstance(x, EisNum):
        return x.valuation
    x = Fraction(x)
    if x == 0:
        return INF
    return _strip(x.numerator, p)[0] - _strip(x.denominator, p)[0]


def _strip(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def prec_of(x):
    """Absolute precision of a coefficient; exact values report ``INF``."""
    if isinstance(x, (PadicNum, EisNum)):
        return x.precision
    return INF


def is_zero(x) -> bool:
    if isinstance(x, (PadicNum, EisNum)):
        return x.is_zero()
    return x == 0


class PadicNum:
    """An element ``u * p**v + O(p**N)`` of Q_p.

    ``u`` is a unit reduced modulo ``p**(N - v)``.  A value that is zero to
    its precision has ``u == 0`` and ``v == N``.  The exact zero has
    ``v == N == INF``.
    """

    __slots__ = ("p", "v", "u", "N")

    def __init__(self, p: int, v, u: int, N):
        self.p = p
        self.v = v
        self.u = u
        self.N = N

    # -- construction -------------------------------------------------------

    @classmethod
    def make(cls, p: int, v, u: int, N) -> PadicNum:
        """Normalise ``u * p**v`` modulo ``p**N``."""
        if N == INF:
            if u != 0:
                raise ValueError("only the exact zero may have infinite precision")
            return cls(p, INF, 0, INF)
        if u == 0 or v >= N:
            return cls(p, N, 0, N)
        if u % p == 0:
            k, u = _strip(u, p)
            v += k
            if v >= N:
                return cls(p, N, 0, N)
        return cls(p, v, u % ppow(p, N - v), N)

    @classmethod
    def from_rational(cls, x, p: int, N: int) -> PadicNum:
        x = Fraction(x)
        if x == 0:
            return cls(p, N, 0, N)
        vn, un = _strip(x.numerator, p)
        vd, ud = _strip(x.denominator, p)
        v = vn - vd
        if v >= N:
            return cls(p, N, 0, N)
        m = ppow(p, N - v)
        return cls(p, v, un * pow(ud, -1, m) % m, N)

    @classmethod
    def zero(cls, p: int, N: int) -> PadicNum:
        return cls(p, N, 0, N)

    @classmethod
    def exact_zero(cls, p: int) -> PadicNum:
        return cls(p, INF, 0, INF)

    # -- inspection ---------------------------------------------------------

    @property
    def precision(self):
        return self.N

    @property
    def valuation(self):
        return self.v

    @property
    def unit(self) -> int:
        return self.u

    def is_exact_zero(self) -> bool:
        return self.N == INF

    def is_zero(self) -> bool:
        return self.v >= self.N

    def is_unit(self) -> bool:
        return self.v == 0 and self.N > 0

    def to_fraction(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if self.v >= 0:
            return Fraction(self.u * ppow(self.p, self.v))
        return Fraction(self.u, ppow(self.p, -self.v))

    def lift(self) -> int:
        """Integer representative in [0, p**N); requires a p-integral value."""
        if self.N == INF:
            return 0
        if self.v < 0:
            raise PadicDomainError("value is not p-integral")
        if self.is_zero():
            return 0
        return self.u * ppow(self.p, self.v) % ppow(self.p, self.N)

    def reduce(self, N) -> PadicNum:
        """Forget digits beyond absolute precision ``N``."""
        if N >= self.N:
            return self
        return PadicNum.make(self.p, self.v, self.u, N)

    def digits(self) -> list[int]:
        """Base-p digits of ``u`` (least significant first)."""
        out, u = [], self.u
        for _ in range(max(0, int(self.N - self.v)) if self.N != INF else 0):
            out.append(u % self.p)
            u //= self.p
        return out

    def __repr__(self) -> str:
        if self.N == INF:
            return f"PadicNum(p={self.p}, 0)"
        return f"PadicNum(p={self.p}, {self.to_fraction()} + O({self.p}^{self.N}))"

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other, N):
        if isinstance(other, PadicNum):
            if other.p != self.p:
                raise ValueError("mixing different primes")
            return other
        if isinstance(other, (int, Rational)):
            if other == 0:
                return PadicNum.exact_zero(self.p)
            if N == INF:
                N = max(valuation(other, self.p), 0) + 1
            return PadicNum.from_rational(other, self.p, N)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, EisNum):
            return NotImplemented
        y = self._coerce(other, self.N)
        if y is NotImplemented:
            return NotImplemented
        x = self
        if x.N == INF:
            if y.N == INF:
                return x
            if not isinstance(other, PadicNum):
                # exact zero plus exact rational stays exact: keep rational
                return other
            return y
        if y.N == INF:
            return x
        p = x.p
        N = min(x.N, y.N)
        v = min(x.v, y.v)
        if v >= N:
            return PadicNum(p, N, 0, N)
        s = x.u * ppow(p, x.v - v) + y.u * ppow(p, y.v - v)
        return PadicNum.make(p, v, s, N)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        return PadicNum(self.p, self.v, (-self.u) % ppow(self.p, self.N - self.v), self.N)

    def __sub__(self, other):
        if isinstance(other, EisNum):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self.p
        if isinstance(other, PadicNum):
            if other.p != p:
                raise ValueError("mixing different primes")
            if self.N == INF or other.N == INF:
                return PadicNum(p, INF, 0, INF)
            v = self.v + other.v
            N = min(self.N + other.v, other.N + self.v)
            if v >= N:
                return PadicNum(p, N, 0, N)
            return PadicNum(p, v, self.u * other.u % ppow(p, N - v), N)
        if isinstance(other, (int, Rational)):
            if other == 0 or self.N == INF:
                return PadicNum(p, INF, 0, INF)
            other = Fraction(other)
            vn, un = _strip(other.numerator, p)
            vd, ud = _strip(other.denominator, p)
            va = vn - vd
            N = self.N + va
            v = self.v + va
            if v >= N:
                return PadicNum(p, N, 0, N)
            m = ppow(p, N - v)
            return PadicNum(p, v, self.u * un * pow(ud, -1, m) % m, N)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> PadicNum:
        if self.is_zero():
            raise ZeroDivisionError(f"inverting {self!r}")
        rel = self.N - self.v
        return PadicNum(self.p, -self.v, pow(self.u, -1, ppow(self.p, rel)), rel - self.v)

    def __truediv__(self, other):
        if isinstance(other, PadicNum):
            return self * other.inverse()
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division by exact zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        base, result = self, None
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        if result is None:
            return Fraction(1)
        return result

    def __eq__(self, other):
        if isinstance(other, EisNum):
            return other == self
        try:
            d = self - other
        except (TypeError, ValueError):
            return NotImplemented
        if d is NotImplemented:
            return NotImplemented
        return is_zero(d)

    __hash__ = None


class EisNum:
    """An element ``a + b*nu`` of Q_p[nu] with nu^2 + nu + 1 = 0.

    ``nu`` is formal: the ring is ``Q_p[X]/(X^2 + X + 1)`` whatever the
    residue of p mod 3.  Components are PadicNum or exact rationals.
    """

    __slots__ = ("p", "a", "b")

    def __init__(self, p: int, a=0, b=0):
        self.p = p
        self.a = a
        self.b = b

    @classmethod
    def nu(cls, p: int) -> EisNum:
        return cls(p, 0, 1)

    @classmethod
    def sqrt_minus3(cls, p: int) -> EisNum:
        """1 + 2*nu, whose square is -3."""
        return cls(p, 1, 2)

    @property
    def precision(self):
        return min(prec_of(self.a), prec_of(self.b))

    @property
    def valuation(self):
        return min(valuation(self.a, self.p), valuation(self.b, self.p))

    def is_zero(self) -> bool:
        return is_zero(self.a) and is_zero(self.b)

    def norm(self):
        a, b = self.a, self.b
        return a * a - a * b + b * b

    def conj(self) -> EisNum:
        """The automorphism nu -> nu^2 = -1 - nu."""
        return EisNum(self.p, self.a - self.b, -self.b)

    def reduce(self, N) -> EisNum:
        def r(x):
            return x.reduce(N) if isinstance(x, PadicNum) else PadicNum.from_rational(x, self.p, N)
        return EisNum(self.p, r(self.a), r(self.b))

    def to_padic(self, nu: PadicNum) -> PadicNum:
        """Evaluate at a p-adic root ``nu`` of X^2 + X + 1 (p = 1 mod 3)."""
        return nu * self.b + self.a

    def __repr__(self) -> str:
        return f"EisNum(p={self.p}, {self.a!r} + {self.b!r}*nu)"

    def _split(self, other):
        if isinstance(other, EisNum):
            if other.p != self.p:
                raise ValueError("mixing different primes")
            return other.a, other.b
        if isinstance(other, (PadicNum, int, Rational)):
            return other, 0
        return None

    def __add__(self, other):
        s = self._split(other)
        if s is None:
            return NotImplemented
        return EisNum(self.p, self.a + s[0], self.b + s[1])

    __radd__ = __add__

    def __neg__(self):
        return EisNum(self.p, -self.a, -self.b)

    def __sub__(self, other):
        s = self._split(other)
        if s is None:
            return NotImplemented
        return EisNum(self.p, self.a - s[0], self.b - s[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        s = self._split(other)
        if s is None:
            return NotImplemented
        c, d = s
        a, b = self.a, self.b
        if isinstance(d, int) and d == 0:
            return EisNum(self.p, a * c, b * c)
        bd = b * d
        return EisNum(self.p, a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def inverse(self) -> EisNum:
        n = self.norm()
        if is_zero(n):
            raise ZeroDivisionError(f"{self!r} is not invertible")
        inv = n.inverse() if isinstance(n, PadicNum) else Fraction(1) / n
        return EisNum(self.p, (self.a - self.b) * inv, -self.b * inv)

    def __truediv__(self, other):
        if isinstance(other, EisNum):
            return self * other.inverse()
        if isinstance(other, (PadicNum, int, Rational)):
            inv = other.inverse() if isinstance(other, PadicNum) else Fraction(1) / other
            return EisNum(self.p, self.a * inv, self.b * inv)
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = EisNum(self.p, 1, 0), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        s = self._split(other)
        if s is None:
            return NotImplemented
        return is_zero(self.a - s[0]) and is_zero(self.b - s[1])

    __hash__ = None


def eis_frobenius(z):
    """Coefficient Frobenius nu -> nu^p on Z_p[nu]; Z_p elements are fixed."""
    if not isinstance(z, EisNum):
        return z
    if z.p % 3 == 1:
        return z
    return z.conj()


def padic_log(u: PadicNum) -> PadicNum:
    """log(u) for u = 1 mod p, correct to the precision of ``u``."""
    p = u.p
    check_prime(p)
    x = u - 1
    if not isinstance(x, PadicNum):
        x = PadicNum.from_rational(x, p, u.N)
    if u.N < 1 or x.valuation < 1:
        raise PadicDomainError(f"padic_log needs u = 1 mod {p}, got {u!r}")
    if x.is_exact_zero():
        return x
    if x.is_zero():
        return PadicNum.zero(p, u.N)
    N, vx = u.N, x.valuation
    total = PadicNum.exact_zero(p)
    power = x
    n = 1
    # terms with n*v(x) - v_p(n) >= N vanish mod p^N; n*vx - log_p(n) increases in n
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


def hensel_root(coeffs, r0: int, p: int, N: int) -> PadicNum:
    """Root of the integer polynomial ``sum(coeffs[i] x^i)`` lifting ``r0``."""
    def f(x, m):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % m
        return acc

    deriv = [i * c for i, c in enumerate(coeffs)][1:]

    def df(x, m):
        acc = 0
        for c in reversed(deriv):
            acc = (acc * x + c) % m
        return acc

    if f(r0, p) != 0 or df(r0, p) == 0:
        raise PadicDomainError(f"{r0} is not Hensel-liftable mod {p}")
    r, prec = r0 % p, 1
    while prec < N:
        prec = min(2 * prec, N)
        m = ppow(p, prec)
        r = (r - f(r, m) * pow(df(r, m), -1, m)) % m
    return PadicNum.from_rational(r, p, N)


@lru_cache(maxsize=None)
def _nu_residue(p: int) -> int:
    for r in range(2, p - 1):
        if (r * r + r + 1) % p == 0:
            return r
    raise ConfigurationError(f"nu is not in Z_{p} (p = 2 mod 3)")


def nu_root(p: int, N: int) -> PadicNum:
    """The canonical p-adic nu for p = 1 mod 3: Hensel lift of the smallest residue root."""
    check_prime(p)
    if p % 3 != 1:
        raise ConfigurationError(f"nu is not in Z_{p} (p = 2 mod 3)")
    return hensel_root([1, 1, 1], _nu_residue(p), p, N)


def teichmuller(a: int, p: int, N: int) -> PadicNum:
    """Teichmuller representative of a mod p."""
    if a % p == 0:
        raise PadicDomainError("Teichmuller lift of a non-unit")
    m = ppow(p, N)
    x = a % m
    for _ in range(N):
        x = pow(x, p, m)
    return PadicNum.from_rational(x, p, N)
