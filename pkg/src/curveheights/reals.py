"""Certified real arithmetic on top of :mod:`mpmath`'s interval context.

Every real quantity reported by the package is an ``mpmath.iv.mpf``
interval guaranteed to contain the true value.  Decisions between two such
quantities go through :func:`decide_le`, which recomputes both sides at
doubled precision until the enclosures separate.
"""

from __future__ import annotations

import contextlib
import threading
from fractions import Fraction
from typing import Callable, Iterator

import mpmath
from mpmath import iv

DEFAULT_PREC = 96
MIN_PREC = 53
PRECISION_CAP = 1536

Real = type(iv.mpf(0))

_lock = threading.RLock()


class PrecisionExhausted(ArithmeticError):
    """An enclosure still straddled a decision boundary at the precision cap."""


@contextlib.contextmanager
def working_precision(bits: int) -> Iterator[None]:
    """Temporarily set the interval context precision (in bits)."""
    with _lock:
        old = iv.prec
        iv.prec = max(int(bits), MIN_PREC)
        try:
            yield
        finally:
            iv.prec = old


def enclose(q) -> Real:
    """Interval containing the exact rational (or int) ``q``."""
    if isinstance(q, Real):
        return q
    q = Fraction(q)
    if q.denominator == 1:
        return iv.mpf(q.numerator)
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def lo(x: Real) -> mpmath.mpf:
    return mpmath.mpf(x._mpi_[0])


def hi(x: Real) -> mpmath.mpf:
    return mpmath.mpf(x._mpi_[1])


def mid(x: Real) -> float:
    """Midpoint as a float, for display only."""
    a, b = lo(x), hi(x)
    return float((a + b) / 2)


def width(x: Real) -> mpmath.mpf:
    return hi(x) - lo(x)


def hull(*xs: Real) -> Real:
    return iv.mpf((min(lo(x) for x in xs), max(hi(x) for x in xs)))


def rmax(*xs: Real) -> Real:
    """Enclosure of the maximum of the enclosed values."""
    return iv.mpf((max(lo(x) for x in xs), max(hi(x) for x in xs)))


def rmin(*xs: Real) -> Real:
    return iv.mpf((min(lo(x) for x in xs), min(hi(x) for x in xs)))


def log_rational(q) -> Real:
    q = Fraction(q)
    if q <= 0:
        raise ValueError("log of a non-positive number")
    return iv.log(enclose(q))


def log_plus(x: Real) -> Real:
    """``max(0, log x)`` for an enclosure of a nonnegative number."""
    if hi(x) <= 1:
        return iv.mpf(0)
    if lo(x) >= 1:
        return iv.log(x)
    return iv.mpf((0, hi(iv.log(iv.mpf(hi(x))))))


def log_minus_neg(x: Real) -> Real:
    """``-min(0, log x)`` for an enclosure of a positive number (a local-height term)."""
    if lo(x) >= 1:
        return iv.mpf(0)
    if lo(x) <= 0:
        raise PrecisionExhausted("enclosure touches zero")
    if hi(x) <= 1:
        return -iv.log(x)
    return iv.mpf((0, hi(-iv.log(iv.mpf(lo(x))))))


def certainly_le(a: Real, b: Real) -> bool:
    return hi(a) <= lo(b)


def certainly_gt(a: Real, b: Real) -> bool:
    return lo(a) > hi(b)


def decide_le(
    lhs: Callable[[int], Real],
    rhs: Callable[[int], Real],
    prec: int = DEFAULT_PREC,
    cap: int = PRECISION_CAP,
) -> tuple[bool, Real, Real, int]:
    """Decide ``lhs <= rhs`` where both sides are recomputed per precision.

    Returns ``(holds, lhs_enclosure, rhs_enclosure, precision_used)``.
    Exact ties (both enclosures collapse onto the same point) count as
    ``holds``.
    """
    if cap < MIN_PREC:
        raise PrecisionExhausted(f"precision cap {cap} is below the {MIN_PREC}-bit floor")
    p = min(prec, cap)
    while True:
        with working_precision(p):
            a, b = lhs(p), rhs(p)
            if certainly_le(a, b):
                return True, a, b, p
            if certainly_gt(a, b):
                return False, a, b, p
            if width(a) == 0 and width(b) == 0:
                return bool(hi(a) <= lo(b)), a, b, p
        if p >= cap:
            raise PrecisionExhausted(f"could not separate enclosures at {p} bits")
        p *= 2


def fmt(x: Real, digits: int = 12) -> str:
    """Stable text form of an enclosure midpoint.

    A tight enclosure of zero prints as ``0.0`` rather than rounding noise.
    """
    a, b = lo(x), hi(x)
    if a <= 0 <= b and b - a < mpmath.mpf(2) ** -64:
        return "0.0"
    return mpmath.nstr((a + b) / 2, digits)
