"""Heights of rational subspaces and small solutions of linear systems.

A subspace ``W`` of ``Q^n`` with basis ``w_1..w_m`` is measured through its
Plücker vector (all maximal minors of the basis matrix).  Its height
``h_s(W)`` is the euclidean height of that vector, which does not depend on
the basis.  Small kernel vectors are found by LLL reduction of the integer
kernel lattice.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from .arith import _clear_denominators, int_det
from .heights import height_vector
from .reals import DEFAULT_PREC, Real, decide_le, enclose, iv, log_rational, working_precision

LLL_DELTA = QQ(99, 100)
EXHAUSTIVE_LIMIT = 200_000

Vector = Sequence[Fraction | int]


def _integer_rows(rows: Sequence[Vector]) -> list[list[int]]:
    out = []
    for r in rows:
        ints, _ = _clear_denominators([Fraction(x) for x in r])
        out.append(ints)
    return out


def _rank(rows: list[list[int]], n: int) -> int:
    if not rows:
        return 0
    M = DomainMatrix([[QQ(x) for x in r] for r in rows], (len(rows), n), QQ)
    return M.rank()


def lll(rows: list[list[int]]) -> list[list[int]]:
    """LLL-reduced basis (``delta = 0.99``) of the lattice spanned by independent rows."""
    if not rows:
        return []
    M = DomainMatrix([[ZZ(x) for x in r] for r in rows], (len(rows), len(rows[0])), ZZ)
    R = M.lll(delta=LLL_DELTA)
    return [[int(x) for x in row] for row in R.to_list()]


def integer_kernel(rows: Sequence[Vector], n: int | None = None) -> list[list[int]]:
    """LLL-reduced basis of ``{x in Z^n : A x = 0}``.

    Uses the weighted identity lattice ``[I | W A^T]``: for ``W`` large the
    reduced vectors with vanishing tail are exactly a basis of the kernel
    lattice.
    """
    A = _integer_rows(rows)
    if n is None:
        if not A:
            raise ValueError("ambient dimension unknown")
        n = len(A[0])
    A = [r for r in A if any(r)]
    k = n - _rank(A, n)
    if k == 0:
        return []
    if not A:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    bits = max(max(abs(x) for x in r).bit_length() for r in A)
    W = 1 << (bits + n + 8)
    while True:
        lat = [[int(i == j) for j in range(n)] + [W * A[r][i] for r in range(len(A))] for i in range(n)]
        red = lll(lat)
        kern = [row[:n] for row in red if not any(row[n:])]
        if len(kern) == k:
            return kern
        W <<= n + 8


def _normalise_sign(v: list[int]) -> list[int]:
    for x in v:
        if x:
            return v if x > 0 else [-y for y in v]
    return v


# ---------------------------------------------------------------------------
# subspace heights


@dataclass(frozen=True)
class SubspaceHeight:
    dimension: int
    ambient: int
    plucker: tuple[int, ...]
    h_s: Real


def plucker_vector(basis: Sequence[Vector], n: int | None = None) -> tuple[int, ...]:
    """Primitive integer vector of maximal minors, first nonzero entry positive."""
    rows = _integer_rows(basis)
    if not rows:
        return (1,)
    n = len(rows[0]) if n is None else n
    m = len(rows)
    minors = [int_det([[r[c] for c in cols] for r in rows]) for cols in itertools.combinations(range(n), m)]
    g = 0
    for x in minors:
        g = math.gcd(g, x)
    if g == 0:
        raise ValueError("dependent basis")
    return tuple(_normalise_sign([x // g for x in minors]))


def subspace_height(basis: Sequence[Vector], n: int | None = None, prec: int = DEFAULT_PREC) -> SubspaceHeight:
    """``h_s`` of the span of ``basis`` via its Plücker vector."""
    if basis:
        n = len(basis[0]) if n is None else n
    elif n is None:
        raise ValueError("ambient dimension needed for the zero subspace")
    pl = plucker_vector(basis, n)
    with working_precision(prec):
        h = height_vector(pl, "euclidean", prec)
    return SubspaceHeight(len(basis), n, pl, h)


def orthogonal_complement(basis: Sequence[Vector], n: int | None = None) -> list[list[int]]:
    """Integer basis of ``W^perp`` (the kernel of the basis matrix)."""
    if basis:
        n = len(basis[0]) if n is None else n
    elif n is None:
        raise ValueError("ambient dimension needed for the zero subspace")
    rows = _integer_rows(basis)
    if _rank(rows, n) != len(rows):
        raise ValueError("dependent basis")
    return [_normalise_sign(v) for v in integer_kernel(rows, n)]


# ---------------------------------------------------------------------------
# small kernel vectors


@dataclass(frozen=True)
class KernelVectorReport:
    h_p: Real
    bound: Real
    holds: bool
    method: str  # "lll", "exhaustive" or "none found"


def kernel_vector_bound(forms: Sequence[Vector], prec: int = DEFAULT_PREC) -> Real:
    """``(h_p(L_1)+...+h_p(L_m))/(n-m) + (n/(n-m)) log(n)/2``."""
    m, n = len(forms), len(forms[0])
    with working_precision(prec):
        s = iv.mpf(0)
        for L in forms:
            s += height_vector(L, "projective", prec)
        return s / (n - m) + enclose(Fraction(n, 2 * (n - m))) * log_rational(n)


def _hp(v: list[int]) -> int:
    """``exp(h_p(v))`` for a primitive integer vector."""
    return max(abs(x) for x in v)


def _primitive(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return [x // g for x in v] if g > 1 else list(v)


def _best(cands: list[list[int]]) -> list[int]:
    cands = [_normalise_sign(_primitive(v)) for v in cands if any(v)]
    return min(cands, key=lambda v: (_hp(v), [-x for x in v]))


def _exhaustive(basis: list[list[int]], limit: int) -> list[int] | None:
    """Smallest-h_p kernel vector with ``max |x_i| <= limit``, or ``None``.

    Coefficients ``c`` of ``x = c B`` are bounded through the pseudo-inverse
    ``P = B^T (B B^T)^-1``: ``|c_j| <= limit * sum_i |P_ij|``.
    """
    k, n = len(basis), len(basis[0])
    B = DomainMatrix([[QQ(x) for x in r] for r in basis], (k, n), QQ)
    P = B.transpose() * (B * B.transpose()).inv()
    P = P.to_list()
    ranges = []
    for j in range(k):
        s = sum(abs(Fraction(int(P[i][j].numerator), int(P[i][j].denominator))) for i in range(n))
        ranges.append(math.floor(limit * s))
    total = 1
    for r in ranges:
        total *= 2 * r + 1
    if total > EXHAUSTIVE_LIMIT:
        return None
    best = None
    for cs in itertools.product(*[range(-r, r + 1) for r in ranges]):
        if not any(cs):
            continue
        v = [sum(c * b[i] for c, b in zip(cs, basis)) for i in range(n)]
        if any(v) and _hp(v) <= limit:
            v = _normalise_sign(_primitive(v))
            if best is None or (_hp(v), v) < (_hp(best), best):
                best = v
    return best


def small_kernel_vector(forms: Sequence[Vector], prec: int = DEFAULT_PREC) -> tuple[list[int], KernelVectorReport]:
    """Nonzero integer ``x`` with ``L_i(x) = 0`` for all forms, of small height.

    The reduced kernel basis vector of least ``h_p`` is returned.  If it
    misses the Siegel-type bound, the lattice points with ``h_p`` below the
    bound are enumerated.
    """
    if not forms:
        raise ValueError("no forms given")
    m, n = len(forms), len(forms[0])
    if any(len(L) != n for L in forms):
        raise ValueError("forms have different numbers of variables")
    if m >= n:
        raise ValueError("need fewer forms than variables")
    if any(not any(Fraction(c) for c in L) for L in forms):
        raise ValueError("zero linear form")
    basis = integer_kernel(forms, n)
    x = _best(basis)

    def hp_at(p: int) -> Real:
        return log_rational(_hp(x))

    holds, lhs, rhs, _ = decide_le(hp_at, lambda p: kernel_vector_bound(forms, p), prec)
    method = "lll"
    if not holds:
        limit = math.floor(math.exp(float(rhs.b)))
        found = _exhaustive(basis, limit)
        if found is not None:
            x = found
            holds, lhs, rhs, _ = decide_le(hp_at, lambda p: kernel_vector_bound(forms, p), prec)
            method = "exhaustive"
        else:
            method = "none found"
    return x, KernelVectorReport(lhs, rhs, holds, method)
