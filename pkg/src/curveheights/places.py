"""Local data of polynomials at the places of Q.

Non-archimedean places are handled through p-adic Newton polygons, which
give the valuations of all roots exactly.  The archimedean place is handled
through certified complex root isolation: every root gets a disk with a
dyadic-rational centre and rational radius that provably contains exactly
one root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import sympy

from .arith import IntPoly, factor_rational, squarefree_part
from .reals import PrecisionExhausted, Real, enclose, iv

DEFAULT_TOL = Fraction(1, 2**80)
ROOT_PREC_CAP = 4096


def valuation(x, p: int) -> int:
    """p-adic valuation of a nonzero integer or rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    num, den = abs(x.numerator), x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _check_prime(p: int) -> None:
    if not (isinstance(p, int) and sympy.isprime(p)):
        raise ValueError(f"{p!r} is not a prime")


# ---------------------------------------------------------------------------
# Newton polygons


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of a finite point set ``(index, value)``.

    ``segments`` holds ``(slope, length)`` pairs with strictly increasing
    slopes.  For a p-adic polygon of ``f`` the roots of ``f`` have valuations
    ``-slope`` with multiplicity ``length``.
    """

    vertices: tuple[tuple[int, Fraction], ...]
    segments: tuple[tuple[Fraction, int], ...]

    @property
    def start(self) -> int:
        return self.vertices[0][0]

    @property
    def end(self) -> int:
        return self.vertices[-1][0]

    def root_valuations(self) -> list[tuple[Fraction, int]]:
        """``(valuation, multiplicity)`` pairs, valuations decreasing."""
        return [(-s, n) for s, n in self.segments]


def lower_hull(points: Sequence[tuple[int, Fraction]]) -> NewtonPolygon:
    """Newton polygon of the points; collinear interior points are dropped."""
    if not points:
        raise ValueError("empty point set")
    best: dict[int, Fraction] = {}
    for i, v in points:
        v = Fraction(v)
        if i not in best or v < best[i]:
            best[i] = v
    pts = sorted(best.items())
    hull: list[tuple[int, Fraction]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] unless it lies strictly below the chord to p
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    segs = tuple(
        (Fraction(b[1] - a[1]) / (b[0] - a[0]), b[0] - a[0]) for a, b in zip(hull, hull[1:])
    )
    return NewtonPolygon(tuple(hull), segs)


def padic_newton_polygon(f: IntPoly, p: int) -> NewtonPolygon:
    """Lower convex hull of ``{(i, v_p(a_i)) : a_i != 0}``."""
    _check_prime(p)
    if f.is_zero():
        raise ValueError("Newton polygon of the zero polynomial")
    return lower_hull([(i, Fraction(valuation(c, p))) for i, c in enumerate(f.coeffs) if c])


@dataclass(frozen=True)
class RootValuationProfile:
    """Valuations of the roots of a polynomial at one prime.

    ``zero_roots`` counts roots equal to 0 (valuation +infinity).
    """

    prime: int
    valuations: tuple[tuple[Fraction, int], ...]
    zero_roots: int = 0

    def per_root(self) -> list[Fraction]:
        out = []
        for v, k in self.valuations:
            out.extend([v] * k)
        return out


def root_valuations(f: IntPoly, p: int) -> RootValuationProfile:
    poly = padic_newton_polygon(f, p)
    return RootValuationProfile(p, tuple(poly.root_valuations()), poly.start)


# ---------------------------------------------------------------------------
# archimedean place


@dataclass(frozen=True)
class CertifiedRootBox:
    """Disk ``|z - (re + i*im)| <= radius`` holding exactly one root."""

    re: Fraction
    im: Fraction
    radius: Fraction

    @property
    def center(self) -> complex:
        return complex(float(self.re), float(self.im))

    def abs_squared_center(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def abs_enclosure(self) -> Real:
        """Enclosure of ``|root|`` (uses the current interval precision)."""
        c = iv.sqrt(enclose(self.abs_squared_center()))
        r = enclose(self.radius)
        out = c + iv.mpf((-r.b, r.b)) if self.radius else c
        if out.a < 0:
            out = iv.mpf((0, out.b))
        return out

    def is_exact(self) -> bool:
        return self.radius == 0

    def contains_zero(self) -> bool:
        return self.abs_squared_center() <= self.radius * self.radius

    def __lt__(self, other: "CertifiedRootBox") -> bool:
        return (self.re, self.im) < (other.re, other.im)


def _gauss_eval(coeffs: Sequence[int], a: int, b: int, s: int) -> tuple[int, int]:
    """``s^d * f((a + b i)/s)`` as a Gaussian integer, d = len(coeffs) - 1."""
    d = len(coeffs) - 1
    re, im = 0, 0
    spow = 1
    # Horner in homogeneous form: acc = acc*(a+bi) + c_k * s^(d-k)
    for k in range(d, -1, -1):
        re, im = re * a - im * b, re * b + im * a
        re += coeffs[k] * spow
        spow *= s
    return re, im


def _ceil_sqrt_ratio(num: int, den: int) -> int:
    q = -(-num // den)
    r = math.isqrt(q)
    return r if r * r == q else r + 1


def _certify(f: IntPoly, centers: list[tuple[int, int]], k: int, tbits: int) -> list[CertifiedRootBox] | None:
    d = f.degree
    coeffs = f.coeffs
    deriv = f.derivative().coeffs
    s = 1 << k
    boxes = []
    for a, b in centers:
        pr, pi = _gauss_eval(coeffs, a, b, s)
        if pr == 0 and pi == 0:
            boxes.append(CertifiedRootBox(Fraction(a, s), Fraction(b, s), Fraction(0)))
            continue
        qr, qi = _gauss_eval(deriv, a, b, s)
        q2 = qr * qr + qi * qi
        if q2 == 0:
            return None
        # r = d |f(z)| / |f'(z)| = d |P| / (s |Q|), P = s^d f, Q = s^(d-1) f'
        num = d * d * (pr * pr + pi * pi) << (2 * tbits)
        den = s * s * q2
        boxes.append(CertifiedRootBox(Fraction(a, s), Fraction(b, s), Fraction(_ceil_sqrt_ratio(num, den), 1 << tbits)))
    return boxes


def _disjoint(boxes: list[CertifiedRootBox]) -> bool:
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            u, v = boxes[i], boxes[j]
            dist2 = (u.re - v.re) ** 2 + (u.im - v.im) ** 2
            if dist2 <= (u.radius + v.radius) ** 2:
                return False
    return True


def complex_roots(f: IntPoly, tol: Fraction = DEFAULT_TOL, cap: int = ROOT_PREC_CAP) -> list[CertifiedRootBox]:
    """Certified isolating disks for all complex roots of a squarefree ``f``.

    Approximations come from :func:`mpmath.polyroots`.  Each approximation
    ``z`` is then certified exactly: some root lies within
    ``deg f * |f(z)/f'(z)|`` of ``z`` (evaluated in exact Gaussian-rational
    arithmetic), and once all ``deg f`` disks are pairwise disjoint each
    holds exactly one root.  Precision doubles until every radius is at most
    ``tol``.
    """
    if f.degree < 1:
        raise ValueError("polynomial has no roots")
    if squarefree_part(f).degree != f.degree:
        raise ValueError("input is not squarefree; call squarefree_part first")
    tol = Fraction(tol)
    if f.degree == 1:
        a0, a1 = f.coeffs
        return [CertifiedRootBox(Fraction(-a0, a1), Fraction(0), Fraction(0))]
    s = _root_scale(f)
    if s:
        # roots of g(Z) = f(2^s Z) have modulus near 1; map the disks back exactly
        d = f.degree
        if s > 0:
            g = IntPoly([c << (s * i) for i, c in enumerate(f.coeffs)])
        else:
            g = IntPoly([c << (-s * (d - i)) for i, c in enumerate(f.coeffs)])
        k = Fraction(2) ** s
        boxes = _isolate(g.primitive(), tol / k, cap)
        return sorted(CertifiedRootBox(b.re * k, b.im * k, b.radius * k) for b in boxes)
    return _isolate(f, tol, cap)


def _root_scale(f: IntPoly) -> int:
    """Exponent ``s`` with ``2^s`` near the geometric mean of the root moduli."""
    z, a0 = f.trailing()
    if z:
        return 0
    lg = (abs(a0).bit_length() - abs(f.lead).bit_length()) / f.degree
    s = round(lg)
    return s if abs(s) >= 4 else 0


def _isolate(f: IntPoly, tol: Fraction, cap: int) -> list[CertifiedRootBox]:
    tbits = max(1, -math.floor(math.log2(tol)) if tol > 0 else 64) + 8
    coeff_bits = max(abs(c).bit_length() for c in f.coeffs)
    prec = tbits + coeff_bits + 32
    rev = [int(c) for c in reversed(f.coeffs)]
    while prec <= cap:
        with mpmath.workprec(prec):
            try:
                approx = mpmath.polyroots(rev, maxsteps=50 + 4 * f.degree, extraprec=prec, error=False)
            except mpmath.libmp.NoConvergence:
                approx = None
            if approx is not None:
                centers = _snap(approx, prec)
        if approx is not None:
            boxes = _certify(f, centers, prec, tbits)
            if boxes is not None and all(b.radius <= tol for b in boxes) and _disjoint(boxes):
                return sorted(boxes)
        prec *= 2
    raise PrecisionExhausted("complex root isolation did not converge")


def _snap(approx, k: int) -> list[tuple[int, int]]:
    """Round approximations to the ``2^-k`` grid, forcing conjugate symmetry.

    Nearly-real roots are put on the real axis; a disk centred on the real
    axis that holds a single root of a real polynomial holds a real root.
    """
    s = mpmath.mpf(2) ** k
    thresh = mpmath.mpf(2) ** (-k // 3)
    reals, uppers = [], []
    for z in approx:
        z = mpmath.mpc(z)
        if abs(z.imag) <= thresh * max(1, abs(z)):
            reals.append((int(mpmath.nint(z.real * s)), 0))
        elif z.imag > 0:
            uppers.append((int(mpmath.nint(z.real * s)), int(mpmath.nint(z.imag * s))))
    out = list(reals)
    for a, b in uppers:
        out += [(a, b), (a, -b)]
    if len(out) != len(approx):
        # unbalanced conjugate pairing: fall back to the raw approximations
        out = [(int(mpmath.nint(mpmath.mpc(z).real * s)), int(mpmath.nint(mpmath.mpc(z).imag * s))) for z in approx]
    return out


def sorted_roots_of(f: IntPoly, tol: Fraction = DEFAULT_TOL) -> list[tuple[IntPoly, CertifiedRootBox]]:
    """All distinct roots of ``f`` as ``(irreducible factor, box)``, sorted by box centre."""
    out = []
    for g, _ in factor_rational(f):
        for box in complex_roots(g, tol):
            out.append((g, box))
    out.sort(key=lambda t: (t[1].re, t[1].im))
    return out


def relevant_primes(f: IntPoly, alpha=1) -> list[int]:
    """Primes dividing the leading or trailing coefficient of ``f`` or ``alpha``.

    Outside this set every root of ``f`` and ``alpha`` itself are p-adic units.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    alpha = Fraction(alpha)
    ps: set[int] = set()
    for n in (f.lead, f.trailing()[1], alpha.numerator, alpha.denominator):
        if n:
            ps.update(sympy.factorint(abs(n)).keys())
    return sorted(int(p) for p in ps)
