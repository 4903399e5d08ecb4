"""Exact function-field arithmetic on y^2 = x^3 + (3x + 4(1 - t))^2 over Q(t).

Functions are ``a(x) + b(x) y`` with a, b in Q(t)(x).  Places are rational
sections (x0(t), y0(t)) and the point at infinity.  Local parameters:
``x - x0`` at finite non-Weierstrass points and ``x/y`` at infinity.
"""
from __future__ import annotations

from dataclasses import dataclass

import sympy as sp
from sympy import QQ
from sympy.integrals.rationaltools import ratint_ratpart

from .series import TSeries

x_sym, t_sym = sp.symbols("x t")
L = QQ.frac_field(x_sym, t_sym)   # Q(x, t)
K = QQ.frac_field(t_sym)          # Q(t)
X, T = L.gens
C_EXPR = 4 * (1 - T)
F_CURVE = X**3 + (3 * X + C_EXPR) ** 2

EXPANSION_START = 8
EXPANSION_LIMIT = 64


class UnsupportedPlace(ValueError):
    """A zero or pole outside the places this module can expand at."""


class NontrivialTameSymbol(ValueError):
    """dlog reduction refused because a tame symbol is not constant."""


def _L(v):
    if isinstance(v, sp.Basic):
        return L.from_sympy(v)
    return L(v)


def _K_of(v) -> object:
    """Q(t)-element from an L-element free of x."""
    return K.from_sympy(L.to_sympy(v))


class CurveFunction:
    """a + b y with a, b in Q(t)(x)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _L(a)
        self.b = _L(b)

    @classmethod
    def from_expr(cls, expr) -> CurveFunction:
        """Build from a sympy expression linear in the symbol ``y``."""
        y = sp.Symbol("y")
        expr = sp.expand(sp.together(expr))
        num, den = sp.fraction(sp.together(expr))
        num = sp.expand(num)
        if sp.Poly(num, y).degree() > 1 or den.has(y):
            raise ValueError("expression must be a + b*y with y only in the numerator")
        b = num.coeff(y, 1)
        a = num.coeff(y, 0)
        return cls(sp.cancel(a / den), sp.cancel(b / den))

    def __repr__(self) -> str:
        return f"CurveFunction(({L.to_sympy(self.a)}) + ({L.to_sympy(self.b)})*y)"

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __eq__(self, other):
        if not isinstance(other, CurveFunction):
            other = CurveFunction(other)
        return self.a == other.a and self.b == other.b

    __hash__ = None

    def __add__(self, other):
        other = other if isinstance(other, CurveFunction) else CurveFunction(other)
        return CurveFunction(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return CurveFunction(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = other if isinstance(other, CurveFunction) else CurveFunction(other)
        a = self.a * other.a + self.b * other.b * F_CURVE
        b = self.a * other.b + self.b * other.a
        return CurveFunction(a, b)

    __rmul__ = __mul__

    def norm(self):
        return self.a**2 - self.b**2 * F_CURVE

    def conj(self) -> CurveFunction:
        return CurveFunction(self.a, -self.b)

    def inverse(self) -> CurveFunction:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero function")
        return CurveFunction(self.a / n, -self.b / n)

    def __truediv__(self, other):
        other = other if isinstance(other, CurveFunction) else CurveFunction(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CurveFunction(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CurveFunction(1)
        for _ in range(k):
            out = out * self
        return out

    def partial(self, var) -> CurveFunction:
        """Derivative along the surface in x or t, with y' = f'/(2y) = f' y/(2f)."""
        fv = F_CURVE.diff(var)
        return CurveFunction(self.a.diff(var), self.b.diff(var) + self.b * fv / (2 * F_CURVE))


def h1() -> CurveFunction:
    """(y - 3x - c)/(-2c), c = 4(1 - t)."""
    return CurveFunction((3 * X + C_EXPR) / (2 * C_EXPR), -1 / (2 * C_EXPR))


def h2() -> CurveFunction:
    """(y + 3x + c)/(2c)."""
    return CurveFunction((3 * X + C_EXPR) / (2 * C_EXPR), 1 / (2 * C_EXPR))


# -- places ----------------------------------------------------------------


@dataclass(frozen=True)
class Place:
    """A rational point (x0, y0) over Q(t), or infinity when ``x0 is None``."""

    x0: object = None
    y0: object = None

    @property
    def is_infinity(self) -> bool:
        return self.x0 is None

    def label(self) -> str:
        if self.is_infinity:
            return "(inf)"
        return f"({sp.factor(L.to_sympy(self.x0))}, {sp.factor(L.to_sympy(self.y0))})"

    def __repr__(self) -> str:
        return f"Place{self.label()}"

    def parameter(self) -> str:
        return "x/y" if self.is_infinity else "x - x0"


INFINITY = Place()
P_PLUS = Place(L(0), C_EXPR)
P_MINUS = Place(L(0), -C_EXPR)
HANDLED_PLACES = (P_PLUS, P_MINUS, INFINITY)


_kt = _K_of


def _poly_coeffs_x(p) -> list:
    """Coefficients (low to high) of a member of Q[x, t] as a polynomial in x over Q(t)."""
    P = sp.Poly(L.to_sympy(L(p)), x_sym, domain=K)
    return [K.convert(c) for c in reversed(P.rep.to_list())] if not P.is_zero else [K.zero]


def _eval_poly(coeffs: list, S: TSeries) -> TSeries:
    acc = None
    for cf in reversed(coeffs):
        acc = TSeries([cf], S.order) if acc is None else acc * S + cf
    return acc


def _eval_rational(r, S: TSeries) -> TSeries:
    num = _eval_poly(_poly_coeffs_x(_numer(r)), S)
    den = _eval_poly(_poly_coeffs_x(_denom(r)), S)
    return num / den


def _numer(r):
    return L(L.to_sympy(L(r)).as_numer_denom()[0])


def _denom(r):
    return L(L.to_sympy(L(r)).as_numer_denom()[1])


def _sqrt_series(g: TSeries) -> TSeries:
    """sqrt(1 + g) for g(0) = 0."""
    n = g.order
    s = [K.one]
    for m in range(1, n):
        acc = g.coefficient(m)
        for i in range(1, m):
            acc = acc - s[i] * s[m - i]
        s.append(acc / 2)
    return TSeries(s, n)


def local_coordinates(place: Place, order: int) -> tuple[TSeries, TSeries]:
    """Laurent expansions of x and y in the local parameter."""
    if place.is_infinity:
        c = _kt(C_EXPR)
        pi2 = TSeries.monomial(2, order + 8, K.one)
        u = pi2
        for _ in range(order // 2 + 4):
            inner = u * (u * c + 3) ** 2
            u = (pi2 * (inner + 1)).truncate(order + 8)
        Xs = u.inverse()
        Ys = Xs.shift(-1)
        return Xs, Ys
    x0, y0 = _kt(place.x0), _kt(place.y0)
    if y0 == 0:
        raise UnsupportedPlace(f"Weierstrass place {place.label()}")
    Xs = TSeries([x0, K.one], order)
    fx = _eval_poly(_poly_coeffs_x(F_CURVE), Xs)
    g = fx * (1 / (y0 * y0)) - 1
    Ys = _sqrt_series(g) * y0
    return Xs, Ys


def expand(h: CurveFunction, place: Place, order: int = EXPANSION_START) -> TSeries:
    Xs, Ys = local_coordinates(place, order)
    A = _eval_rational(h.a, Xs) if h.a != 0 else None
    B = _eval_rational(h.b, Xs) * Ys if h.b != 0 else None
    if A is None and B is None:
        raise ValueError("zero function has no expansion")
    if A is None:
        return B
    return A if B is None else A + B


def order_and_leading(h: CurveFunction, place: Place) -> tuple[int, object]:
    """(ord_place(h), leading coefficient in the local parameter)."""
    if h.is_zero():
        raise ValueError("zero function")
    order = EXPANSION_START
    while order <= EXPANSION_LIMIT:
        s = expand(h, place, order)
        k = s.leading_exponent()
        if k is not None:
            return k, s.coefficient(k)
        order *= 2
    raise ArithmeticError(f"could not determine the order at {place.label()}")


def _sqrt_in_Qt(expr):
    """Square root of a rational function of t, or None if it is not a square."""
    expr = sp.factor(expr)
    const, facs = sp.factor_list(expr)
    if const < 0:
        return None
    root = sp.sqrt(const)
    if not root.is_Rational:
        return None
    for fac, mult in facs:
        if mult % 2:
            return None
        root *= fac ** (mult // 2)
    return root


def candidate_places(h: CurveFunction) -> list[Place]:
    n = h.norm()
    expr = sp.factor(L.to_sympy(n))
    num, den = sp.fraction(expr)
    places = []
    for part in (num, den):
        _, facs = sp.factor_list(part, x_sym, t_sym)
        for fac, _m in facs:
            deg = sp.degree(fac, x_sym)
            if deg == 0:
                continue
            if deg > 1:
                raise UnsupportedPlace(f"places above {fac} = 0")
            x0 = sp.cancel(sp.solve(fac, x_sym)[0])
            y0sq = sp.cancel(L.to_sympy(F_CURVE).subs(x_sym, x0))
            y0 = _sqrt_in_Qt(y0sq)
            if y0 is None:
                raise UnsupportedPlace(f"places above x = {x0} are not rational over Q(t)")
            if y0 == 0:
                raise UnsupportedPlace(f"Weierstrass place above x = {x0}")
            for pl in (Place(_L(x0), _L(y0)), Place(_L(x0), _L(-y0))):
                pl = _canonical(pl)
                if pl not in places:
                    places.append(pl)
    if INFINITY not in places:
        places.append(INFINITY)
    return places


def _canonical(pl: Place) -> Place:
    for known in HANDLED_PLACES:
        if not known.is_infinity and known.x0 == pl.x0 and known.y0 == pl.y0:
            return known
    return pl


def divisor(h: CurveFunction) -> list[tuple[Place, int]]:
    out = []
    for pl in candidate_places(h):
        k, _ = order_and_leading(h, pl)
        if k:
            out.append((pl, k))
    if sum(m for _, m in out) != 0:
        raise ArithmeticError("divisor of a function must have degree zero")
    return out


def tame_symbol(f: CurveFunction, g: CurveFunction, place: Place):
    """(-1)^(ord f ord g) f^(ord g)/g^(ord f) restricted to the place, as a function of t."""
    of, lf = order_and_leading(f, place)
    og, lg = order_and_leading(g, place)
    val = (-1) ** (of * og) * lf**og / lg**of
    if val == 0:
        raise ArithmeticError("ill-posed restriction")
    return sp.factor(K.to_sympy(val))


# -- dlog reduction ------------------------------------------------------------


def dlog_wedge(f: CurveFunction, g: CurveFunction) -> CurveFunction:
    """alpha with dlog f ^ dlog g = dt ^ alpha dx."""
    Fx, Ft = f.partial(X) / f, f.partial(T) / f
    Gx, Gt = g.partial(X) / g, g.partial(T) / g
    return Ft * Gx - Fx * Gt


def _poly(expr) -> sp.Poly:
    return sp.Poly(expr, x_sym, domain=K)


def _split_rational(r):
    num, den = sp.fraction(sp.cancel(L.to_sympy(L(r))))
    return _poly(num), _poly(den)


def is_exact_in_x(a) -> bool:
    """True if a(x) dx has no residues, i.e. is d of a rational function."""
    if a == 0:
        return True
    num, den = _split_rational(a)
    _, rem = num.div(den)
    if rem.is_zero:
        return True
    _, log_part = ratint_ratpart(rem.as_expr(), den.as_expr(), x_sym)
    return sp.cancel(log_part) == 0


def _exact_term(h):
    """(h' f + h f'/2): d(h y) = this * dx/y."""
    return h.diff(X) * F_CURVE + h * F_CURVE.diff(X) / 2


def _reduce_B(B) -> tuple:
    """Write B dx/y = (B0 + B1 x) dx/y + exact."""
    f_poly = _poly(L.to_sympy(F_CURVE))
    for _ in range(10_000):
        num, den = _split_rational(B)
        den_expr = den.as_expr()
        _, facs = sp.factor_list(sp.factor(den_expr), x_sym)
        facs = [(fac, m) for fac, m in facs if sp.degree(fac, x_sym) > 0]
        if facs:
            fac, k = max(facs, key=lambda fm: (fm[1], sp.default_sort_key(fm[0])))
            u = _poly(fac)
            V = den.exquo(u**k)
            S = num.mul(V.invert(u)).rem(u)
            du = u.diff(x_sym)
            if f_poly.rem(u).is_zero:
                f1 = f_poly.exquo(u)
                coef = (du * f1).mul_ground(K.convert(QQ(1, 2) - k))
                m = k
            else:
                if k == 1:
                    raise ArithmeticError(f"simple pole at {fac} = 0: nonzero residue")
                coef = (du * f_poly).mul_ground(K.convert(QQ(-(k - 1))))
                m = k - 1
            Cpoly = S.mul(coef.invert(u)).rem(u)
            h = _L(Cpoly.as_expr()) / _L(u.as_expr()) ** m
            B = B - _exact_term(h)
            continue
        P = _poly(L.to_sympy(B))
        d = P.degree()
        if d <= 1:
            coeffs = P.all_coeffs()[::-1] + [0, 0]
            return sp.factor(sp.sympify(coeffs[0])), sp.factor(sp.sympify(coeffs[1]))
        lc = P.LC()
        h = _L(lc / (sp.Rational(2 * d - 1, 2))) * X ** (d - 2)
        B = B - _exact_term(h)
    raise ArithmeticError("reduction did not terminate")


def dlog_reduce(f: CurveFunction, g: CurveFunction, check_tame: bool = True) -> tuple:
    """(c_omega, c_eta) with dlog f ^ dlog g = dt ^ (c_omega dx/y + c_eta x dx/y) mod exact forms."""
    if check_tame:
        places = []
        for h in (f, g):
            for pl, _ in divisor(h):
                if pl not in places:
                    places.append(pl)
        for pl in places:
            val = tame_symbol(f, g, pl)
            if sp.sympify(val).has(t_sym):
                raise NontrivialTameSymbol(f"tame symbol {val} at {pl.label()} is not constant")
    alpha = dlog_wedge(f, g)
    if not is_exact_in_x(alpha.a):
        raise ArithmeticError("the y-even part of the relative form has residues")
    if alpha.b == 0:
        return sp.Integer(0), sp.Integer(0)
    return _reduce_B(alpha.b * F_CURVE)
