"""Exact polynomial arithmetic over the integers and the rationals.

Two polynomial types are used throughout the package:

* :class:`IntPoly` -- a univariate polynomial with integer coefficients,
  stored as a tuple indexed by degree.
* :class:`BivarPoly` -- a polynomial ``F(X, Y)`` with rational coefficients,
  stored as a primitive integer polynomial times a positive rational scale.

Rationals are plain :class:`fractions.Fraction` objects, which are always
reduced with a positive denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Mapping, Union

import sympy

Number = Union[int, Fraction]

__all__ = [
    "Fraction",
    "IntPoly",
    "BivarPoly",
    "X",
    "Y",
    "resultant_y",
    "squarefree_part",
    "poly_gcd",
    "factor_rational",
    "is_irreducible",
    "min_poly_of_root",
    "int_det",
]


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b) if a and b else max(a, b)


def _strip(seq: Iterable) -> tuple:
    out = list(seq)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _clear_denominators(values: Iterable[Number]) -> tuple[list[int], Fraction]:
    """Return ``(ints, scale)`` with ``values == scale * ints``, ints primitive.

    ``scale`` is positive.  The all-zero input gives ``scale == 1``.
    """
    vals = [Fraction(v) for v in values]
    den = reduce(_lcm, (v.denominator for v in vals), 1)
    ints = [int(v * den) for v in vals]
    g = reduce(math.gcd, ints, 0)
    if g == 0:
        return ints, Fraction(1)
    return [c // g for c in ints], Fraction(g, den)


# ---------------------------------------------------------------------------
# univariate


@dataclass(frozen=True)
class IntPoly:
    """Univariate integer polynomial; ``coeffs[i]`` is the coefficient of ``x^i``."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _strip(int(c) for c in coeffs))

    @classmethod
    def from_rational(cls, coeffs: Iterable[Number]) -> "IntPoly":
        """Primitive integer polynomial proportional to ``coeffs``."""
        ints, _ = _clear_denominators(coeffs)
        return cls(ints)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def primitive(self) -> "IntPoly":
        """Content-1 associate with positive leading coefficient."""
        if self.is_zero():
            return self
        g = self.content
        if self.lead < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def trailing(self) -> tuple[int, int]:
        """``(index, coefficient)`` of the lowest nonzero coefficient."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i, c
        raise ValueError("zero polynomial has no trailing coefficient")

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def reversed(self) -> "IntPoly":
        """``x^deg f(1/x)``, the polynomial of the reciprocal roots."""
        return IntPoly(reversed(self.coeffs))

    def __call__(self, x: Number):
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def divides(self, other: "IntPoly") -> bool:
        """True when ``self`` divides ``other`` in Q[x]."""
        _, r = _qdivmod([Fraction(c) for c in other.coeffs], [Fraction(c) for c in self.coeffs])
        return not r

    def to_sympy(self, var: sympy.Symbol) -> sympy.Poly:
        return sympy.Poly(list(reversed(self.coeffs)) or [0], var, domain="ZZ")

    def __str__(self) -> str:
        return self.format("X")

    def format(self, var: str = "X") -> str:
        return _format_terms(((c, (i, 0) if var == "X" else (0, i)) for i, c in enumerate(self.coeffs)))


def _qdivmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(_strip(a))
    b = list(_strip(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lb
        q[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] -= c * bc
        a = list(_strip(a))
    return q, a


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd of two integer polynomials (Euclid over Q)."""
    a = [Fraction(c) for c in f.coeffs]
    b = [Fraction(c) for c in g.coeffs]
    while b:
        _, r = _qdivmod(a, b)
        a, b = b, r
        if a:
            ints, _ = _clear_denominators(a)
            a = [Fraction(c) for c in ints]
    return IntPoly.from_rational(a).primitive()


def squarefree_part(f: IntPoly) -> IntPoly:
    """Product of the distinct irreducible factors of ``f``.

    The result is primitive with positive leading coefficient.
    """
    if f.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    g = poly_gcd(f, f.derivative()) if f.degree > 0 else IntPoly([1])
    q, r = _qdivmod([Fraction(c) for c in f.coeffs], [Fraction(c) for c in g.coeffs])
    assert not r
    return IntPoly.from_rational(q).primitive()


_x = sympy.Symbol("x")


def factor_rational(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Factor ``f`` into primitive irreducibles over Q, with multiplicities.

    Constants are dropped; factors are sorted by (degree, coefficients).
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.degree <= 0:
        return []
    _, factors = f.to_sympy(_x).factor_list()
    out = []
    for fac, mult in factors:
        coeffs = [int(c) for c in reversed(fac.all_coeffs())]
        out.append((IntPoly(coeffs).primitive(), int(mult)))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return out


def is_irreducible(f: IntPoly) -> bool:
    facs = factor_rational(f)
    return len(facs) == 1 and facs[0][1] == 1


def int_det(rows: list[list[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# bivariate


def _format_terms(terms: Iterable[tuple[Number, tuple[int, int]]]) -> str:
    parts = []
    # Y-degree first, then X-degree, both descending
    for c, (i, j) in sorted(((Fraction(c), k) for c, k in terms if c), key=lambda t: (-t[1][1], -t[1][0])):
        mono = []
        if i:
            mono.append("X" if i == 1 else f"X^{i}")
        if j:
            mono.append("Y" if j == 1 else f"Y^{j}")
        mag = abs(c)
        if mono and mag == 1:
            body = "*".join(mono)
        else:
            body = "*".join([str(mag)] + mono)
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


class BivarPoly:
    """Polynomial ``F(X, Y)`` with rational coefficients.

    Stored as ``scale * P`` where ``P`` has coprime integer coefficients and
    ``scale`` is a positive rational; ``P`` is the canonical form that height
    computations read off.  Instances are immutable and hashable.
    """

    def __init__(self, terms: Mapping[tuple[int, int], Number] | None = None):
        items = [(k, Fraction(v)) for k, v in (terms or {}).items() if v]
        for (i, j), _ in items:
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
        ints, scale = _clear_denominators(v for _, v in items)
        self._terms: dict[tuple[int, int], int] = {k: c for (k, _), c in zip(items, ints)}
        self.scale: Fraction = scale

    # -- construction -----------------------------------------------------
    @classmethod
    def constant(cls, c: Number) -> "BivarPoly":
        return cls({(0, 0): c})

    @classmethod
    def from_x_poly(cls, f: IntPoly, var: str = "X") -> "BivarPoly":
        if var == "X":
            return cls({(i, 0): c for i, c in enumerate(f.coeffs)})
        return cls({(0, j): c for j, c in enumerate(f.coeffs)})

    @classmethod
    def from_columns(cls, columns: Mapping[int, Iterable[Number]]) -> "BivarPoly":
        """Build from ``{j: coefficients of f_j(X)}``."""
        terms = {}
        for j, col in columns.items():
            for i, c in enumerate(col):
                if c:
                    terms[(i, j)] = c
        return cls(terms)

    # -- inspection -------------------------------------------------------
    @property
    def int_terms(self) -> dict[tuple[int, int], int]:
        """Coefficients of the primitive integer part ``P``."""
        return dict(self._terms)

    def terms(self) -> dict[tuple[int, int], Fraction]:
        return {k: self.scale * c for k, c in self._terms.items()}

    def coeff(self, i: int, j: int) -> Fraction:
        return self.scale * self._terms.get((i, j), 0)

    def is_zero(self) -> bool:
        return not self._terms

    @cached_property
    def m(self) -> int:
        """Degree in X."""
        return max((i for i, _ in self._terms), default=0)

    @cached_property
    def n(self) -> int:
        """Degree in Y."""
        return max((j for _, j in self._terms), default=0)

    @property
    def M(self) -> int:
        return max(self.m, self.n)

    def column(self, j: int) -> IntPoly:
        """Integer polynomial ``f_j(X)`` of the primitive part (``F = scale * sum f_j Y^j``)."""
        return IntPoly(self._terms.get((i, j), 0) for i in range(self.m + 1))

    def columns(self) -> list[IntPoly]:
        return [self.column(j) for j in range(self.n + 1)]

    def __call__(self, x: Number, y: Number) -> Fraction:
        return self.scale * sum((c * Fraction(x) ** i * Fraction(y) ** j for (i, j), c in self._terms.items()), Fraction(0))

    def eval_x(self, a: Number) -> IntPoly:
        """``F(a, Y)`` as a primitive integer polynomial in Y (zero if it vanishes)."""
        a = Fraction(a)
        vals = [self.column(j)(a) for j in range(self.n + 1)]
        return IntPoly.from_rational(vals)

    def eval_x_exact(self, a: Number) -> list[Fraction]:
        """Exact rational coefficients of ``F(a, Y)`` (index = Y-degree)."""
        a = Fraction(a)
        return [self.scale * self.column(j)(a) for j in range(self.n + 1)]

    def to_x_poly(self) -> IntPoly:
        """Primitive integer part as a polynomial in X; requires ``n == 0``."""
        if self.n:
            raise ValueError("polynomial involves Y")
        return self.column(0)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "BivarPoly":
        other = _as_bivar(other)
        out = self.terms()
        for k, v in other.terms().items():
            out[k] = out.get(k, 0) + v
        return BivarPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "BivarPoly":
        return BivarPoly({k: -v for k, v in self.terms().items()})

    def __sub__(self, other) -> "BivarPoly":
        return self + (-_as_bivar(other))

    def __rsub__(self, other) -> "BivarPoly":
        return _as_bivar(other) - self

    def __mul__(self, other) -> "BivarPoly":
        other = _as_bivar(other)
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), a in self._terms.items():
            for (i2, j2), b in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        s = self.scale * other.scale
        return BivarPoly({k: s * v for k, v in out.items()})

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "BivarPoly":
        c = Fraction(other)
        if c == 0:
            raise ZeroDivisionError("division by zero")
        return self * (1 / c)

    def __pow__(self, k: int) -> "BivarPoly":
        if k < 0:
            raise ValueError("negative power")
        out = BivarPoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def derivative_y(self) -> "BivarPoly":
        return BivarPoly({(i, j - 1): j * c * self.scale for (i, j), c in self._terms.items() if j})

    def derivative_x(self) -> "BivarPoly":
        return BivarPoly({(i - 1, j): i * c * self.scale for (i, j), c in self._terms.items() if i})

    def substitute_x_power(self, e: int) -> "BivarPoly":
        """``F(X^e, Y)``."""
        return BivarPoly({(i * e, j): c * self.scale for (i, j), c in self._terms.items()})

    def primitive(self) -> "BivarPoly":
        return BivarPoly(self._terms)

    # -- identity ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = BivarPoly.constant(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self._terms == other._terms and (self.scale == other.scale or self.is_zero())

    def __hash__(self) -> int:
        return hash((frozenset(self._terms.items()), self.scale))

    def __str__(self) -> str:
        return _format_terms((v, k) for k, v in self.terms().items())

    def __repr__(self) -> str:
        return f"BivarPoly('{self}')"

    def to_sympy(self, x: sympy.Symbol, y: sympy.Symbol) -> sympy.Poly:
        terms = {k: sympy.Rational(v.numerator, v.denominator) for k, v in self.terms().items()}
        return sympy.Poly(terms or {(0, 0): 0}, x, y, domain="QQ")


def _as_bivar(v) -> BivarPoly:
    if isinstance(v, BivarPoly):
        return v
    if isinstance(v, (int, Fraction)):
        return BivarPoly.constant(v)
    raise TypeError(f"cannot convert {type(v).__name__} to BivarPoly")


X = BivarPoly({(1, 0): 1})
Y = BivarPoly({(0, 1): 1})


def _sylvester(f: list[int], g: list[int]) -> list[list[int]]:
    """Sylvester matrix for formal degrees ``len(f)-1`` and ``len(g)-1``."""
    df, dg = len(f) - 1, len(g) - 1
    size = df + dg
    rows = []
    fr = list(reversed(f))
    gr = list(reversed(g))
    for k in range(dg):
        rows.append([0] * k + fr + [0] * (size - k - len(fr)))
    for k in range(df):
        rows.append([0] * k + gr + [0] * (size - k - len(gr)))
    return rows


def _interpolate(xs: list[int], ys: list[int]) -> list[Fraction]:
    """Coefficients of the interpolating polynomial (Newton form, exact)."""
    n = len(xs)
    dd = [Fraction(y) for y in ys]
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    coeffs = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # coeffs = coeffs * (x - xs[i]) + dd[i]
        new = [Fraction(0)] * n
        for k in range(n - 1):
            new[k + 1] += coeffs[k]
        for k in range(n):
            new[k] -= xs[i] * coeffs[k]
        new[0] += dd[i]
        coeffs = new
    return coeffs


def resultant_y(F: BivarPoly, G: BivarPoly) -> BivarPoly:
    """Resultant of ``F`` and ``G`` with respect to ``Y``, a polynomial in X.

    The Sylvester determinant is evaluated at integer abscissae and
    interpolated, so every step is exact integer or rational arithmetic.
    The result is zero iff ``F`` and ``G`` share a factor of positive
    Y-degree.
    """
    nF, nG = F.n, G.n
    if nF == 0 and nG == 0:
        raise ValueError("no variable to eliminate")
    if F.is_zero() or G.is_zero():
        return BivarPoly()
    cf, cg = F.columns(), G.columns()
    bound = nG * F.m + nF * G.m
    xs = list(range(bound + 1))
    ys = []
    for x0 in xs:
        fv = [c(x0) for c in cf]
        gv = [c(x0) for c in cg]
        ys.append(int_det(_sylvester(fv, gv)))
    coeffs = _interpolate(xs, ys)
    s = F.scale**nG * G.scale**nF
    return BivarPoly({(i, 0): s * c for i, c in enumerate(coeffs)})


def min_poly_of_root(F: BivarPoly, alpha: Number, root_index: int = 0) -> IntPoly:
    """Minimal polynomial over Q of the ``root_index``-th root of ``F(alpha, Y)``.

    Roots are ordered by (real part, imaginary part) of their certified
    boxes.  The returned factor is the irreducible factor of ``F(alpha, Y)``
    whose roots include the selected box.
    """
    from .places import sorted_roots_of

    f = F.eval_x(alpha)
    if f.is_zero():
        raise ValueError("vertical line: F(alpha, Y) vanishes identically")
    if f.degree < 1:
        raise ValueError("F(alpha, Y) has no roots")
    roots = sorted_roots_of(f)
    if not 0 <= root_index < len(roots):
        raise IndexError(f"root_index {root_index} out of range (0..{len(roots) - 1})")
    return roots[root_index][0]
