"""Matrix presentations of filtered F-isocrystals with connection over a truncated series ring.

Conventions: ``nabla(e_j) = sum_i A[i][j] dt (x) e_i`` and ``Phi(e_j) = sum_i Phi[i][j] e_i``.
Horizontality means ``dPhi + A Phi - Phi sigma*(A) = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .padic import is_zero, prec_of
from .series import FrobeniusSpec, TSeries, _is_exact_zero
from .special import log_sigma, polylog_series

Matrix = list  # list of rows of TSeries


def zeros(n: int, m: int, M: int) -> Matrix:
    return [[TSeries([], M) for _ in range(m)] for _ in range(n)]


def mat_mul(X: Matrix, Y: Matrix) -> Matrix:
    n, k, m = len(X), len(Y), len(Y[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for l in range(k):
                if _trivial(X[i][l]) or _trivial(Y[l][j]):
                    continue
                term = X[i][l] * Y[l][j]
                acc = term if acc is None else acc + term
            if acc is None:
                order = min(min(x.order for x in X[i]), min(Y[l][j].order for l in range(k)))
                acc = TSeries([], order)
            row.append(acc)
        out.append(row)
    return out


def _trivial(s: TSeries) -> bool:
    """Exactly zero, not merely zero to precision."""
    return all(_is_exact_zero(c) for c in s.coeffs)


def mat_map(fn, X: Matrix) -> Matrix:
    return [[fn(x) for x in row] for row in X]


def vanishes(s: TSeries, N, M: int) -> bool:
    """True if s = 0 mod (p^N, t^M) with every coefficient known to p^N."""
    if s.order < M:
        return False
    for n in range(s.start, M):
        c = s.coefficient(n)
        if prec_of(c) < N:
            return False
        if not is_zero(c):
            return False
    return True


def matrix_vanishes(X: Matrix, N, M: int) -> bool:
    return all(vanishes(x, N, M) for row in X for x in row)


@dataclass
class FilFMICObject:
    labels: list
    A: Matrix
    Phi: Matrix
    jumps: list
    sigma: FrobeniusSpec
    M: int
    name: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.labels)


def sigma_pullback(A: Matrix, sigma: FrobeniusSpec) -> Matrix:
    return mat_map(sigma.pullback_form, A)


def check_horizontality(obj: FilFMICObject) -> Matrix:
    """Residual dPhi + A Phi - Phi sigma*(A)."""
    dPhi = mat_map(lambda s: s.derivative(), obj.Phi)
    APhi = mat_mul(obj.A, obj.Phi)
    PhiA = mat_mul(obj.Phi, sigma_pullback(obj.A, obj.sigma))
    return [[d + a - b for d, a, b in zip(r1, r2, r3)] for r1, r2, r3 in zip(dPhi, APhi, PhiA)]


def is_horizontal(obj: FilFMICObject, N, M: int | None = None) -> bool:
    return matrix_vanishes(check_horizontality(obj), N, obj.M - 2 if M is None else M)


def check_transversality(obj: FilFMICObject) -> bool:
    """nabla(Fil^i) lies in Fil^{i-1}: A[i][j] != 0 only if n_i >= n_j - 1."""
    n = obj.jumps
    for i in range(obj.rank):
        for j in range(obj.rank):
            if not obj.A[i][j].is_zero() and n[i] < n[j] - 1:
                return False
    return True


def _const(c, M: int) -> TSeries:
    return TSeries([c], M)


def make_tate(r: int, sigma: FrobeniusSpec, M: int) -> FilFMICObject:
    return FilFMICObject(
        labels=["e"], A=zeros(1, 1, M), Phi=[[_const(Fraction(1, sigma.p) ** r, M)]],
        jumps=[-r], sigma=sigma, M=M, name=f"Tate({r})",
    )


def make_log(f: TSeries, sigma: FrobeniusSpec, N: int) -> FilFMICObject:
    """Log(f): nabla e0 = dlog f e_{-2}, Phi e0 = e0 - log^sigma(f) e_{-2}, Phi e_{-2} = p^{-1} e_{-2}."""
    M = f.order
    f = f.to_padic(sigma.p, N) if f.ring == "rational" else f
    L = log_sigma(f, sigma)
    A = zeros(2, 2, M)
    A[1][0] = f.log_deriv()
    Phi = [[_const(1, M), TSeries([], M)], [-L, _const(Fraction(1, sigma.p), M)]]
    return FilFMICObject(["e0", "e-2"], A, Phi, [0, -1], sigma, M, name="Log")


def make_polylog(n: int, sigma: FrobeniusSpec, M: int, N: int, misplaced_scale: bool = False) -> FilFMICObject:
    """Pol_n(T) over the T-line with sigma(T) = T^p.

    With ``misplaced_scale=True`` the Frobenius on e_{-2j} (j >= 1) is sent to p^{-j} e_0,
    a variant that is not horizontal.
    """
    if n < 1:
        raise ValueError("make_polylog needs n >= 1")
    if sigma.c != 1:
        raise ValueError("the polylog object needs sigma(T) = T^p")
    p = sigma.p
    A = zeros(n + 1, n + 1, M)
    Phi = zeros(n + 1, n + 1, M)
    A[1][0] = TSeries([-1] * M, M)  # 1/(T - 1)
    for j in range(1, n):
        A[j + 1][j] = TSeries.monomial(-1, M)
    Phi[0][0] = _const(1, M)
    for j in range(1, n + 1):
        Phi[j][0] = polylog_series(j, M, p, N) * (-1) ** (j + 1)
        scale = _const(Fraction(1, p**j), M)
        if misplaced_scale:
            Phi[0][j] = scale
        else:
            Phi[j][j] = scale
    labels = ["e0"] + [f"e-{2 * j}" for j in range(1, n + 1)]
    return FilFMICObject(labels, A, Phi, [-j for j in range(n + 1)], sigma, M,
                         name=f"Pol_{n}" + (" (misplaced scale)" if misplaced_scale else ""))


def make_log_matrix(qmat: list, sigma: FrobeniusSpec, N: int) -> FilFMICObject:
    """Log(q) for a symmetric g x g matrix of series t^k * unit.

    Basis e_1..e_g, f_1..f_g with nabla e_i = sum_j dlog q_ij f_j,
    Phi e_i = e_i - sum_j log^sigma(q_ij) f_j and Phi f_j = p^{-1} f_j.
    """
    g = len(qmat)
    for i in range(g):
        if len(qmat[i]) != g:
            raise ValueError("q must be square")
        for j in range(i):
            if not (qmat[i][j] - qmat[j][i]).is_zero():
                raise ValueError("q must be symmetric")
    p = sigma.p
    conv = [[q.to_padic(p, N) if q.ring == "rational" else q for q in row] for row in qmat]
    M = min(q.order for row in conv for q in row)
    A = zeros(2 * g, 2 * g, M)
    Phi = zeros(2 * g, 2 * g, M)
    for i in range(g):
        Phi[i][i] = _const(1, M)
        Phi[g + i][g + i] = _const(Fraction(1, p), M)
        for j in range(g):
            A[g + j][i] = conv[i][j].log_deriv()
            Phi[g + j][i] = -log_sigma(conv[i][j], sigma, allow_t_power=True)
    labels = [f"e{i + 1}" for i in range(g)] + [f"f{j + 1}" for j in range(g)]
    return FilFMICObject(labels, A, Phi, [0] * g + [-1] * g, sigma, M, name=f"Log(q) g={g}")


def tensor(X: FilFMICObject, Y: FilFMICObject) -> FilFMICObject:
    """Tensor product; basis x_a (x) y_b ordered a-major."""
    if X.sigma != Y.sigma:
        raise ValueError("objects over different Frobenius lifts")
    M = min(X.M, Y.M)
    n, m = X.rank, Y.rank
    A = zeros(n * m, n * m, M)
    Phi = zeros(n * m, n * m, M)
    for a in range(n):
        for b in range(m):
            col = a * m + b
            for a2 in range(n):
                for b2 in range(m):
                    row = a2 * m + b2
                    entry = TSeries([], M)
                    if b == b2:
                        entry = entry + X.A[a2][a]
                    if a == a2:
                        entry = entry + Y.A[b2][b]
                    A[row][col] = entry.truncate(M)
                    Phi[row][col] = (X.Phi[a2][a] * Y.Phi[b2][b]).truncate(M)
    labels = [f"{x}*{y}" for x in X.labels for y in Y.labels]
    jumps = [u + v for u in X.jumps for v in Y.jumps]
    return FilFMICObject(labels, A, Phi, jumps, X.sigma, M, name=f"{X.name}*{Y.name}")


def twist(X: FilFMICObject, r: int) -> FilFMICObject:
    """X(r): Phi scaled by p^{-r}, jumps shifted by -r."""
    s = Fraction(1, X.sigma.p) ** r
    return replace(X, Phi=mat_map(lambda e: e * s, X.Phi), jumps=[n - r for n in X.jumps],
                   name=f"{X.name}({r})")


def corrupt(X: FilFMICObject, i: int, j: int, k: int) -> FilFMICObject:
    """Add p^k to the constant term of Phi[i][j] (sensitivity checks)."""
    Phi = [list(row) for row in X.Phi]
    Phi[i][j] = Phi[i][j] + Fraction(X.sigma.p) ** k
    return replace(X, Phi=Phi, name=f"{X.name} corrupted")


def matrices_agree(X: Matrix, Y: Matrix, N, M: int) -> bool:
    return all(vanishes(x - y, N, M) for rx, ry in zip(X, Y) for x, y in zip(rx, ry))


def objects_agree(X: FilFMICObject, Y: FilFMICObject, N, M: int) -> bool:
    return (X.jumps == Y.jumps and matrices_agree(X.A, Y.A, N, M)
            and matrices_agree(X.Phi, Y.Phi, N, M))
