"""Absolute logarithmic heights, local heights and the logarithmic gcd.

Absolute values are normalised to extend the usual ones on Q:
``|p|_v = 1/p`` when ``v | p`` and ``|q|_v = |q|`` at archimedean ``v``.

Sums over places of ``Q(beta)`` are evaluated per root of the minimal
polynomial with uniform weight ``1/d``: the roots lying over a place ``v``
are exactly ``d_v`` in number and share the value of ``|.|_v``.  For the
archimedean place the roots are certified complex disks; for a prime ``p``
they are read off the p-adic Newton polygon.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Sequence, Union

import sympy

from .arith import BivarPoly, IntPoly, _clear_denominators
from .places import (
    DEFAULT_TOL,
    CertifiedRootBox,
    complex_roots,
    padic_newton_polygon,
    relevant_primes,
    sorted_roots_of,
    valuation,
)
from .reals import (
    DEFAULT_PREC,
    Real,
    enclose,
    iv,
    log_minus_neg,
    log_plus,
    log_rational,
    rmax,
    rmin,
    working_precision,
)

Number = Union[int, Fraction]


def tol_for(prec: int) -> Fraction:
    """Root-isolation tolerance matched to an interval precision."""
    return Fraction(1, 2 ** max(80, prec + 8))


@lru_cache(maxsize=4096)
def _conjugates(coeffs: tuple[int, ...], tol: Fraction) -> tuple[CertifiedRootBox, ...]:
    return tuple(complex_roots(IntPoly(coeffs), tol))


@lru_cache(maxsize=4096)
def _factor_primes(n: int) -> tuple[int, ...]:
    return tuple(sorted(int(p) for p in sympy.factorint(abs(n))))


@dataclass(frozen=True)
class AlgebraicNumber:
    """A root of an irreducible primitive integer polynomial, pinned by a disk."""

    minpoly: IntPoly
    box: CertifiedRootBox

    def __post_init__(self):
        f = self.minpoly.primitive()
        if f.degree < 1:
            raise ValueError("minimal polynomial must have positive degree")
        object.__setattr__(self, "minpoly", f)

    @classmethod
    def rational(cls, q: Number) -> "AlgebraicNumber":
        q = Fraction(q)
        return cls(IntPoly([-q.numerator, q.denominator]), CertifiedRootBox(q, Fraction(0), Fraction(0)))

    @classmethod
    def roots_of(cls, f: IntPoly, tol: Fraction = DEFAULT_TOL) -> list["AlgebraicNumber"]:
        """Every distinct root of ``f``, sorted by position in the plane."""
        return [cls(g, box) for g, box in sorted_roots_of(f, tol)]

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def is_rational(self) -> bool:
        return self.degree == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        a0, a1 = self.minpoly.coeffs
        return Fraction(-a0, a1)

    def is_zero(self) -> bool:
        return self.minpoly.coeffs == (0, 1)

    def conjugates(self, tol: Fraction = DEFAULT_TOL) -> tuple[CertifiedRootBox, ...]:
        """Certified disks around all conjugates (including this root)."""
        if self.is_rational():
            return (CertifiedRootBox(self.as_fraction(), Fraction(0), Fraction(0)),)
        return _conjugates(self.minpoly.coeffs, Fraction(tol))

    def refined(self, tol: Fraction) -> "AlgebraicNumber":
        """Same number with a disk of radius at most ``tol``."""
        if self.box.radius <= tol:
            return self
        for box in self.conjugates(tol):
            dist2 = (box.re - self.box.re) ** 2 + (box.im - self.box.im) ** 2
            if dist2 <= (box.radius + self.box.radius) ** 2:
                return AlgebraicNumber(self.minpoly, box)
        raise ValueError("box does not isolate a root of the minimal polynomial")

    def inverse(self) -> "AlgebraicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return AlgebraicNumber.rational(1 / self.as_fraction())
        g = self.minpoly.reversed().primitive()
        target = self.box.center
        target = 1 / target
        boxes = _conjugates(g.coeffs, DEFAULT_TOL)
        best = min(boxes, key=lambda b: abs(b.center - target))
        return AlgebraicNumber(g, best)

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.as_fraction())
        return f"root of {self.minpoly.format('Y')} near {self.box.center:.6g}"


Scalar = Union[int, Fraction, AlgebraicNumber]


def _as_algebraic(x: Scalar) -> AlgebraicNumber:
    return x if isinstance(x, AlgebraicNumber) else AlgebraicNumber.rational(x)


@dataclass(frozen=True)
class HeightBreakdown:
    """A sum of local contributions.

    ``nonarch`` maps a prime ``p`` to the exact rational multiple of
    ``log p`` contributed by the places above ``p``; it is ``None`` when the
    finite part was obtained without factoring (``finite`` is always set).
    """

    archimedean: Real
    finite: Real
    total: Real
    nonarch: dict[int, Fraction] | None = field(default=None)

    @classmethod
    def assemble(cls, archimedean: Real, nonarch: dict[int, Fraction]) -> "HeightBreakdown":
        parts = {p: c for p, c in sorted(nonarch.items()) if c}
        finite = iv.mpf(0)
        for p, c in parts.items():
            finite += enclose(c) * iv.log(iv.mpf(p))
        return cls(archimedean, finite, archimedean + finite, parts)


# ---------------------------------------------------------------------------
# heights of numbers


def height_rational(a: Number, prec: int = DEFAULT_PREC) -> HeightBreakdown:
    """``h(a) = log max(|num|, den)`` split into local contributions."""
    a = Fraction(a)
    with working_precision(prec):
        if a == 0:
            return HeightBreakdown.assemble(iv.mpf(0), {})
        arch = log_plus(enclose(abs(a)))
        nonarch = {p: Fraction(valuation(a.denominator, p)) for p in _factor_primes(a.denominator)} if a.denominator > 1 else {}
        return HeightBreakdown.assemble(arch, nonarch)


def product_formula_exponents(a: Number) -> dict[int, int]:
    """``{p: v_p(a)}``; the product formula says ``|a| == prod p^v_p(a)``."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("product formula needs a nonzero number")
    out = {}
    for n in (a.numerator, a.denominator):
        if abs(n) > 1:
            for p in _factor_primes(n):
                out[p] = valuation(a, p)
    return out


def height_algebraic(
    b: Scalar,
    via: Literal["mahler", "places"] = "mahler",
    prec: int = DEFAULT_PREC,
) -> HeightBreakdown:
    """Absolute logarithmic height of an algebraic number.

    ``via="mahler"`` uses ``h = log M(f) / d`` with ``M(f)`` the Mahler
    measure of the primitive minimal polynomial; the finite part is
    ``log|lead| / d`` by the Gauss lemma and is not factored.
    ``via="places"`` sums ``log+|.|_v`` over every root at the archimedean
    place and at every prime read off Newton polygons.
    """
    b = _as_algebraic(b)
    f = b.minpoly
    d = f.degree
    boxes = b.conjugates(tol_for(prec))
    with working_precision(prec):
        if via == "mahler":
            prod = iv.mpf(1)
            for box in boxes:
                prod *= rmax(iv.mpf(1), box.abs_enclosure())
            lead = enclose(abs(f.lead))
            total = iv.log(lead * prod) / d
            arch = iv.log(prod) / d
            finite = iv.log(lead) / d
            return HeightBreakdown(arch, finite, total, None)
        if via == "places":
            arch = iv.mpf(0)
            for box in boxes:
                arch += log_plus(box.abs_enclosure())
            arch /= d
            nonarch: dict[int, Fraction] = {}
            for p in relevant_primes(f):
                poly = padic_newton_polygon(f, p)
                s = sum((max(Fraction(0), -v) * k for v, k in poly.root_valuations()), Fraction(0))
                if s:
                    nonarch[p] = s / d
            return HeightBreakdown.assemble(arch, nonarch)
    raise ValueError(f"unknown route {via!r}")


def height(x: Scalar, prec: int = DEFAULT_PREC) -> Real:
    """Absolute logarithmic height (enclosure)."""
    if isinstance(x, AlgebraicNumber) and not x.is_rational():
        return height_algebraic(x, "mahler", prec).total
    if isinstance(x, AlgebraicNumber):
        x = x.as_fraction()
    with working_precision(prec):
        x = Fraction(x)
        return log_rational(max(abs(x.numerator), x.denominator))


# ---------------------------------------------------------------------------
# logarithmic gcd


def lgcd_breakdown(a: Scalar, b: Scalar, prec: int = DEFAULT_PREC) -> HeightBreakdown:
    """Local decomposition of ``lgcd(a, b) = sum_v min(h_v(a), h_v(b))``.

    At least one argument must be rational.
    """
    A, B = _as_algebraic(a), _as_algebraic(b)
    if not A.is_rational():
        A, B = B, A
    if not A.is_rational():
        raise NotImplementedError("lgcd needs at least one rational argument")
    if A.is_zero() and B.is_zero():
        raise ValueError("lgcd(0, 0) is undefined")
    if A.is_zero():
        return _height_as_local_sum(B, prec)
    if B.is_zero():
        return _height_as_local_sum(A, prec)
    q = A.as_fraction()
    f = B.minpoly
    d = f.degree
    with working_precision(prec):
        # archimedean: h_inf(q) = -log-|q|
        if abs(q) >= 1:
            arch = iv.mpf(0)
        else:
            h_q = log_minus_neg(enclose(abs(q)))
            arch = iv.mpf(0)
            for box in B.conjugates(tol_for(prec)):
                arch += rmin(h_q, log_minus_neg(box.abs_enclosure()))
            arch /= d
        nonarch: dict[int, Fraction] = {}
        if abs(q.numerator) > 1:
            for p in _factor_primes(q.numerator):
                vq = valuation(q, p)
                poly = padic_newton_polygon(f, p)
                s = Fraction(0)
                for v, k in poly.root_valuations():
                    s += min(Fraction(vq), max(Fraction(0), v)) * k
                if s:
                    nonarch[p] = s / d
        return HeightBreakdown.assemble(arch, nonarch)


def _height_as_local_sum(b: AlgebraicNumber, prec: int) -> HeightBreakdown:
    if b.is_rational():
        return height_rational(b.as_fraction(), prec)
    return height_algebraic(b, "places", prec)


def lgcd(a: Scalar, b: Scalar, prec: int = DEFAULT_PREC) -> Real:
    """Logarithmic gcd of a rational and an algebraic number (enclosure)."""
    return lgcd_breakdown(a, b, prec).total


# ---------------------------------------------------------------------------
# heights of vectors and polynomials

Kind = Literal["projective", "affine", "euclidean"]


def height_vector(v: Sequence[Number], kind: Kind = "projective", prec: int = DEFAULT_PREC) -> Real:
    """Height of a rational vector.

    ``projective`` and ``euclidean`` are invariant under scaling; after
    scaling to coprime integers only the archimedean place contributes, as
    ``log max|c_i|`` or ``log sqrt(sum c_i^2)`` respectively.  ``affine`` is
    the projective height of ``(1, v)``.
    """
    vals = [Fraction(x) for x in v]
    if kind == "affine":
        return height_vector([Fraction(1)] + vals, "projective", prec)
    if not any(vals):
        raise ValueError(f"{kind} height of the zero vector")
    ints, _ = _clear_denominators(vals)
    with working_precision(prec):
        if kind == "projective":
            return log_rational(max(abs(c) for c in ints))
        if kind == "euclidean":
            return log_rational(sum(c * c for c in ints)) / 2
    raise ValueError(f"unknown height kind {kind!r}")


def coefficient_vector(F: BivarPoly | IntPoly) -> list[Fraction]:
    if isinstance(F, IntPoly):
        return [Fraction(c) for c in F.coeffs if c]
    return [v for _, v in sorted(F.terms().items())]


def height_poly(F: BivarPoly | IntPoly, kind: Literal["projective", "affine"] = "projective", prec: int = DEFAULT_PREC) -> Real:
    """Projective or affine height of the vector of nonzero coefficients."""
    vec = coefficient_vector(F)
    if not vec:
        raise ValueError("height of the zero polynomial")
    return height_vector(vec, kind, prec)


def algebraic_points(F: BivarPoly, alpha: Number, tol: Fraction = DEFAULT_TOL) -> list[AlgebraicNumber]:
    """All roots ``beta`` of ``F(alpha, Y)`` as algebraic numbers."""
    f = F.eval_x(alpha)
    if f.is_zero():
        raise ValueError("vertical line: F(alpha, Y) vanishes identically")
    if f.degree < 1:
        return []
    return AlgebraicNumber.roots_of(f, tol)


def satisfies(F: BivarPoly, alpha: Number, beta: AlgebraicNumber) -> bool:
    """Exact test of ``F(alpha, beta) == 0``: the minimal polynomial divides ``F(alpha, Y)``."""
    f = F.eval_x(alpha)
    if f.is_zero():
        return True
    return beta.minpoly.divides(f)


def conjugate_moduli(b: AlgebraicNumber, prec: int = DEFAULT_PREC) -> list[Real]:
    with working_precision(prec):
        return [box.abs_enclosure() for box in b.conjugates(tol_for(prec))]
