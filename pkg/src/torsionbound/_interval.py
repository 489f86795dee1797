"""Thin helpers over mpmath interval arithmetic (outward-rounded)."""

from __future__ import annotations

import threading
from contextlib import contextmanager
from fractions import Fraction

from mpmath import iv
from mpmath.libmp import to_rational

_lock = threading.RLock()


@contextmanager
def ivprec(prec: int):
    """Temporarily set the interval context precision (in bits)."""
    with _lock:
        old = iv.prec
        iv.prec = max(int(prec), 53)
        try:
            yield iv
        finally:
            iv.prec = old


def upper(x) -> Fraction:
    p, q = to_rational(x._mpi_[1])
    return Fraction(int(p), int(q))


def lower(x) -> Fraction:
    p, q = to_rational(x._mpi_[0])
    return Fraction(int(p), int(q))


def frac(q) -> "iv.mpf":
    q = Fraction(q)
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)
