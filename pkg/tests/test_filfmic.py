import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from regkit.filfmic import (
    FilFMICObject,
    check_horizontality,
    check_transversality,
    corrupt,
    is_horizontal,
    make_log,
    make_log_matrix,
    make_polylog,
    make_tate,
    matrix_vanishes,
    objects_agree,
    tensor,
    twist,
    zeros,
)
from regkit.series import FrobeniusSpec, TSeries

P, M, N = 7, 30, 8
SIG = FrobeniusSpec(P)


def horizontal(obj):
    return matrix_vanishes(check_horizontality(obj), N, obj.M - 2)


@pytest.mark.parametrize("r", range(-2, 3))
def test_tate(r):
    T = make_tate(r, SIG, M)
    assert horizontal(T) and check_transversality(T)
    assert T.jumps == [-r]


@given(st.lists(st.integers(-9, 9), min_size=4, max_size=4), st.integers(0, 5),
       st.sampled_from([Fraction(1), Fraction(8)]))
def test_log_random_units(tail, k, c):
    sig = FrobeniusSpec(P, c)
    f = TSeries([1 + P * k] + tail, M)
    L = make_log(f, sig, N + 2)
    assert matrix_vanishes(check_horizontality(L), N, M - 2) and check_transversality(L)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_polylog_objects(n):
    Pn = make_polylog(n, SIG, M, N + 2)
    assert horizontal(Pn) and check_transversality(Pn)


def test_polylog_misplaced_scale_fails():
    assert not horizontal(make_polylog(2, SIG, M, N + 2, misplaced_scale=True))


def test_polylog_requires_plain_frobenius():
    with pytest.raises(ValueError):
        make_polylog(2, FrobeniusSpec(P, Fraction(8)), M, N)


def test_log_matrix_2x2():
    rng = random.Random(1)
    a, b, d = (TSeries([1 + P * rng.randint(0, 4), rng.randint(-5, 5), rng.randint(-5, 5)], M)
               for _ in range(3))
    Lq = make_log_matrix([[a, b], [b, d]], SIG, N + 2)
    assert horizontal(Lq) and check_transversality(Lq)
    with pytest.raises(ValueError):
        make_log_matrix([[a, b], [d, a]], SIG, N)


def test_log_matrix_accepts_t_power():
    q = TSeries([0, 1, 3, -2], M)
    for c in (Fraction(1), Fraction(8)):
        X = make_log_matrix([[q]], FrobeniusSpec(P, c), N + 2)
        assert matrix_vanishes(check_horizontality(X), N, M - 2)


def test_transversality_detects_violation():
    A = zeros(2, 2, 10)
    A[0][1] = TSeries([1], 10)
    Phi = [[TSeries([1], 10), TSeries([], 10)], [TSeries([], 10), TSeries([1], 10)]]
    assert not check_transversality(FilFMICObject(["a", "b"], A, Phi, [0, 2], SIG, 10))
    ok = FilFMICObject(["a", "b"], A, Phi, [0, 1], SIG, 10)
    bad = FilFMICObject(["a", "b"], A, Phi, [0, 2], SIG, 10)
    assert check_transversality(ok)
    for r in (-1, 2):
        assert check_transversality(twist(ok, r)) and not check_transversality(twist(bad, r))


def test_tensor_and_twist():
    L = make_log(TSeries([1, 2, -1], M), SIG, N + 2)
    T1 = make_tate(1, SIG, M)
    LT = tensor(L, T1)
    assert horizontal(LT) and check_transversality(LT)
    assert objects_agree(LT, twist(L, 1), N, M - 2)
    LL = tensor(L, L)
    assert horizontal(LL) and LL.rank == 4


def test_corruption_is_detected():
    L = make_log(TSeries([1, 2, -1], M), SIG, N + 2)
    bad = corrupt(L, 1, 1, 2)
    R = check_horizontality(bad)
    assert not matrix_vanishes(R, N, M - 2)
    assert not is_horizontal(bad, N)


def test_pol1_is_log_of_one_minus_T():
    P1 = make_polylog(1, SIG, M, N + 2)
    L = make_log(TSeries([1, -1], M), SIG, N + 2)
    assert objects_agree(P1, L, N, M - 1)
    assert make_polylog(3, SIG, M, N).jumps == [0, -1, -2, -3]
