"""Deterministic JSON encoding of the library's value types."""
from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational

from .padic import INF, EisNum, PadicNum, prec_of
from .series import TSeries


def _int_or_none(v):
    return None if v == INF else int(v)


def encode_scalar(x):
    if isinstance(x, PadicNum):
        return {"v": _int_or_none(x.v), "u": str(x.u), "prec": _int_or_none(x.N)}
    if isinstance(x, EisNum):
        return {"a": encode_scalar(x.a), "b": encode_scalar(x.b)}
    if isinstance(x, (int, Rational)):
        return str(Fraction(x))
    return str(x)


def encode_series(s: TSeries) -> dict:
    coeffs = list(s.coeffs)
    start = s.start
    if start > 0:
        coeffs = [0] * start + coeffs
        start = 0
    return {
        "pole": -start,
        "coeffs": [encode_scalar(c) for c in coeffs],
        "trunc": s.order,
        "prec_ledger": [_int_or_none(prec_of(c)) for c in coeffs],
    }


def encode_matrix(A) -> list:
    return [[encode_series(e) for e in row] for row in A]


def encode(x):
    """Recursively encode containers and library values."""
    if isinstance(x, TSeries):
        return encode_series(x)
    if isinstance(x, dict):
        return {str(k): encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, float):
        return None if x == INF else x
    return encode_scalar(x)


def dumps(doc, pretty: bool = True) -> str:
    return json.dumps(encode(doc), indent=2 if pretty else None, ensure_ascii=True) + "\n"


def decode_series(d: dict) -> TSeries:
    """Inverse of encode_series for exact rational series."""
    return TSeries([Fraction(c) for c in d["coeffs"]], d["trunc"], d["pole"])
