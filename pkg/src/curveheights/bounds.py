"""Both sides of the explicit height inequalities, evaluated on instances.

Every report carries certified enclosures of the two sides and a verdict
reached by enclosure separation (with precision escalation).  The
inequalities are theorems, so a report with ``holds == False`` points at a
bug in the height pipeline.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Literal

import sympy

from .arith import BivarPoly, IntPoly, resultant_y, squarefree_part
from .curve import CurveError, PuiseuxBranch, observed_divisor, vanishing_order
from .heights import (
    AlgebraicNumber,
    Number,
    Scalar,
    height,
    height_poly,
    lgcd,
    satisfies,
    tol_for,
)
from .places import _check_prime, padic_newton_polygon, valuation
from .reals import (
    DEFAULT_PREC,
    PRECISION_CAP,
    Real,
    decide_le,
    enclose,
    iv,
    log_rational,
    mid,
    working_precision,
)
from .siegel import integer_kernel


@dataclass(frozen=True)
class InequalityReport:
    """``lhs <= rhs`` decided on certified enclosures."""

    name: str
    lhs: Real
    rhs: Real
    holds: bool
    precision: int = DEFAULT_PREC

    @property
    def slack(self) -> float:
        return mid(self.rhs) - mid(self.lhs)

    def __str__(self) -> str:
        mark = "holds" if self.holds else "FAILS"
        return f"{self.name}: {mid(self.lhs):.6g} <= {mid(self.rhs):.6g} {mark} (slack {self.slack:.6g})"


def _compare(name: str, lhs: Callable[[int], Real], rhs: Callable[[int], Real], prec: int = DEFAULT_PREC) -> InequalityReport:
    holds, a, b, p = decide_le(lhs, rhs, prec)
    return InequalityReport(name, a, b, holds, p)


def _log(x) -> Real:
    return log_rational(x)


# ---------------------------------------------------------------------------
# resultant, root and evaluation bounds


def check_schmidt(F: BivarPoly, prec: int = DEFAULT_PREC) -> InequalityReport:
    """``h_p(Res_Y(F, F_Y)) <= (2n-1) h_p(F) + (2n-1) log((m+1)(n+1) sqrt n)``."""
    n, m = F.n, F.m
    if n < 1:
        raise ValueError("F must have positive degree in Y")
    R = resultant_y(F, F.derivative_y())
    if R.is_zero():
        raise ValueError("F is not squarefree in Y: the discriminant vanishes")

    def lhs(p):
        return height_poly(R, "projective", p)

    def rhs(p):
        return (2 * n - 1) * height_poly(F, "projective", p) + (2 * n - 1) * (
            _log((m + 1) * (n + 1)) + _log(n) / 2
        )

    return _compare("schmidt", lhs, rhs, prec)


def check_root_height(f: IntPoly, prec: int = DEFAULT_PREC) -> list[InequalityReport]:
    """``h(beta) <= h_p(f) + log 2`` for every distinct root ``beta`` of ``f``."""
    if f.degree < 1:
        raise ValueError("polynomial has no roots")
    out = []
    for b in AlgebraicNumber.roots_of(f):
        out.append(
            _compare(
                f"root height {b}",
                lambda p, b=b: height(b, p),
                lambda p: height_poly(f, "projective", p) + _log(2),
                prec,
            )
        )
    return out


def _probe_value(F: BivarPoly, a: Fraction) -> Fraction:
    """First rational in 1, -1, 2, -2, 1/2, ... with ``F(a, probe) != 0``."""
    for k in range(1, 200):
        for q in (Fraction(k), Fraction(-k), Fraction(1, k + 1), Fraction(-1, k + 1)):
            if F(a, q) != 0:
                return q
    raise ValueError("no probe value found")


def check_eval_bounds(
    F: BivarPoly, a: Number, b: AlgebraicNumber, probe: Number | None = None, prec: int = DEFAULT_PREC
) -> tuple[InequalityReport, InequalityReport]:
    """The two evaluation bounds.

    Part 1, at the rational point ``(a, probe)`` (``F(a, probe) != 0``)::

        h(F(a, probe)) <= h_a(F) + m h(a) + n h(probe) + log((m+1)(n+1))

    Part 2, for ``F(a, b) = 0``::

        h(b) <= h_p(F) + m h(a) + n + log(m+1)
    """
    a = Fraction(a)
    if F.eval_x(a).is_zero():
        raise ValueError("vertical line: F(a, Y) vanishes identically")
    if not satisfies(F, a, b):
        raise ValueError("point not on curve: F(a, b) != 0")
    m, n = F.m, F.n
    q = _probe_value(F, a) if probe is None else Fraction(probe)
    val = F(a, q)
    if val == 0:
        raise ValueError("probe point lies on the curve")
    part1 = _compare(
        "evaluation bound (value)",
        lambda p: height(val, p),
        lambda p: height_poly(F, "affine", p) + m * height(a, p) + n * height(q, p) + _log((m + 1) * (n + 1)),
        prec,
    )
    part2 = _compare(
        "evaluation bound (root)",
        lambda p: height(b, p),
        lambda p: height_poly(F, "projective", p) + m * height(a, p) + n + _log(m + 1),
        prec,
    )
    return part1, part2


# ---------------------------------------------------------------------------
# coefficients versus roots


def check_coeff_vs_roots(f: IntPoly, ell: int, place: int | Literal["inf"] = "inf", prec: int = DEFAULT_PREC) -> InequalityReport:
    """``c_v(n) |a_ell|_v / |f|_v <= max |beta_i|_v`` over ``ell+1`` distinct roots.

    The roots are chosen adversarially: the ``ell+1`` of smallest
    ``|.|_v``.  ``c_v(n) = 1/((n+1) 2^n)`` at infinity and 1 at primes.
    """
    d = f.degree
    g = squarefree_part(f)
    if not 0 <= ell <= d - 1:
        raise ValueError("need 0 <= ell <= deg f - 1")
    if g.degree < ell + 1:
        raise ValueError(f"f has fewer than {ell + 1} distinct roots")
    a_ell = f.coeffs[ell]
    if place == "inf":
        roots = [b for b in AlgebraicNumber.roots_of(g, tol_for(prec))]
        # adversarial subset: smallest moduli
        roots.sort(key=lambda b: b.box.abs_squared_center())
        chosen = roots[: ell + 1]
        norm = max(abs(c) for c in f.coeffs)

        def lhs(p):
            return enclose(Fraction(abs(a_ell), norm * (d + 1) * 2**d))

        def rhs(p):
            tol = tol_for(p)
            vals = [b.refined(tol).box.abs_enclosure() for b in chosen]
            return iv.mpf((max(v.a for v in vals), max(v.b for v in vals)))

        return _compare(f"coefficients vs roots, ell={ell}, v=inf", lhs, rhs, prec)

    p = int(place)
    _check_prime(p)
    # valuations of distinct roots; a zero root has valuation +infinity
    poly = padic_newton_polygon(g, p)
    vals: list[Fraction | None] = [None] * poly.start
    for v, k in poly.root_valuations():
        vals += [v] * k
    finite = sorted((v for v in vals if v is not None), reverse=True)
    chosen = vals[: poly.start][: ell + 1] + finite[: ell + 1 - min(poly.start, ell + 1)]
    min_v_f = min(valuation(c, p) for c in f.coeffs if c)
    # log_p of both sides: rhs = -min valuation over chosen (None = -inf side)
    with working_precision(prec):
        logp = iv.log(iv.mpf(p))
        chosen_finite = [v for v in chosen if v is not None]
        if a_ell == 0:
            lhs_val = iv.mpf(0)
            lhs_exp = None
        else:
            lhs_exp = -(Fraction(valuation(a_ell, p)) - min_v_f)
            lhs_val = iv.exp(enclose(lhs_exp) * logp)
        if chosen_finite:
            rhs_exp = -min(chosen_finite)
            rhs_val = iv.exp(enclose(rhs_exp) * logp)
        else:
            rhs_exp = None
            rhs_val = iv.mpf(0)
    if lhs_exp is None:
        holds = True
    elif rhs_exp is None:
        holds = False
    else:
        holds = lhs_exp <= rhs_exp
    return InequalityReport(f"coefficients vs roots, ell={ell}, v={p}", lhs_val, rhs_val, holds, prec)


# ---------------------------------------------------------------------------
# two-curve system


def check_system_bound(F1: BivarPoly, F2: BivarPoly, a: Scalar, prec: int = DEFAULT_PREC) -> InequalityReport:
    """Height of a common X-coordinate of two coprime curves.

    ``h(a) <= n1 h_p(F2) + n2 h_p(F1) + (m1 n2 + m2 n1) + (n1+n2) log(n1+n2) + log 2``
    where ``a`` must be a root of ``Res_Y(F1, F2)``.
    """
    R = resultant_y(F1, F2)
    if R.is_zero():
        raise ValueError("F1 and F2 share a common factor")
    r = R.to_x_poly()
    if isinstance(a, AlgebraicNumber):
        if not a.minpoly.divides(r):
            raise ValueError("a is not a root of the Y-resultant")
    else:
        if r(Fraction(a)) != 0:
            raise ValueError("a is not a root of the Y-resultant")
    m1, n1, m2, n2 = F1.m, F1.n, F2.m, F2.n

    def rhs(p):
        return (
            n1 * height_poly(F2, "projective", p)
            + n2 * height_poly(F1, "projective", p)
            + (m1 * n2 + m2 * n1)
            + (n1 + n2) * _log(n1 + n2)
            + _log(2)
        )

    return _compare("system bound", lambda p: height(a, p), rhs, prec)


# ---------------------------------------------------------------------------
# main theorem


@dataclass(frozen=True)
class DichotomyReport:
    h_alpha: Real
    h_beta: Real
    lgcd_value: Real
    r: int
    n: int
    m: int
    epsilon: Fraction
    branch_taken: Literal["small_height", "asymptotic"]
    threshold: Real
    lhs_main: Real
    rhs_main: Real
    main_holds: bool
    precision: int = DEFAULT_PREC

    @property
    def consistent(self) -> bool:
        """Either the height is below the threshold or the main inequality holds."""
        return self.branch_taken == "small_height" or self.main_holds


def _check_epsilon(eps) -> Fraction:
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("epsilon out of range (0,1)")
    return eps


def theorem_threshold(F: BivarPoly, eps: Number, prec: int = DEFAULT_PREC) -> Real:
    """``200 eps^-2 m n^6 (h_p(F) + 5)``."""
    eps = Fraction(eps)
    with working_precision(prec):
        return enclose(200 * F.m * F.n**6 / eps**2) * (height_poly(F, "projective", prec) + 5)


def theorem_rhs(F: BivarPoly, eps: Number, h_alpha: Real, prec: int = DEFAULT_PREC) -> Real:
    """``(eps h(a) + 4000 eps^-1 n^4 (h_p+log(mn)+1) + 30 n^2 m (h_p+log(nm))) / r``."""
    eps = Fraction(eps)
    n, m = F.n, F.m
    r = vanishing_order(F)
    with working_precision(prec):
        hp = height_poly(F, "projective", prec)
        lmn = _log(m * n)
        total = enclose(eps) * h_alpha + enclose(4000 * n**4 / eps) * (hp + lmn + 1) + 30 * n * n * m * (hp + lmn)
        return total / r


@lru_cache(maxsize=256)
def is_rationally_irreducible(F: BivarPoly) -> bool:
    x, y = sympy.symbols("X Y")
    _, factors = sympy.factor_list(F.to_sympy(x, y).as_expr(), x, y)
    nontrivial = [(g, k) for g, k in factors if sympy.Poly(g, x, y).total_degree() > 0]
    return len(nontrivial) == 1 and nontrivial[0][1] == 1


def main_theorem_check(
    F: BivarPoly, a: Number, b: Scalar, eps: Number, prec: int = DEFAULT_PREC, cap: int = PRECISION_CAP
) -> DichotomyReport:
    """Evaluate the dichotomy at the point ``(a, b)`` of ``F = 0``.

    Either ``h(a) <= 200 eps^-2 m n^6 (h_p(F)+5)`` or
    ``|lgcd(a, b)/r - h(a)/n|`` is at most :func:`theorem_rhs`.
    Both sides of the second inequality are always computed; ``branch_taken``
    records which alternative the height falls into.
    Absolute irreducibility is assumed; a warning is issued if ``F`` is not
    even irreducible over Q.
    """
    eps = _check_epsilon(eps)
    r = vanishing_order(F)
    a = Fraction(a)
    if not isinstance(b, AlgebraicNumber):
        b = AlgebraicNumber.rational(b)
    if not satisfies(F, a, b):
        raise CurveError("point not on curve: F(a, b) != 0")
    if not is_rationally_irreducible(F):
        warnings.warn(f"{F} is reducible over Q; the theorem assumes absolute irreducibility", stacklevel=2)
    n, m = F.n, F.m
    cache: dict[int, tuple] = {}

    def quantities(p: int):
        if p not in cache:
            with working_precision(p):
                ha = height(a, p)
                hb = height(b, p)
                g = lgcd(a, b, p) if (a != 0 or not b.is_zero()) else iv.mpf(0)
                lhs = abs(g / r - ha / n)
                cache[p] = (ha, hb, g, lhs, theorem_threshold(F, eps, p), theorem_rhs(F, eps, ha, p))
        return cache[p]

    small, _, thr, _ = decide_le(lambda p: quantities(p)[0], lambda p: quantities(p)[4], prec, cap)
    main, lhs, rhs, p = decide_le(lambda p: quantities(p)[3], lambda p: quantities(p)[5], prec, cap)
    ha, hb, g, _, thr, _ = quantities(p)
    branch = "small_height" if small else "asymptotic"
    return DichotomyReport(ha, hb, g, r, n, m, eps, branch, thr, lhs, rhs, main, p)


def main_lemma_rhs(
    F: BivarPoly,
    eps: Number,
    kind: Literal["eml1", "eml2", "erml1", "erml2"],
    e: int = 1,
    h_alpha: Real | Number = 0,
    prec: int = DEFAULT_PREC,
) -> Real:
    """Right-hand sides of the height alternatives used inside the proof.

    ``eml1``: ``200 eps^-2 m n^4 (h_p+5)``;
    ``eml2``: ``eps n h(a) + 200 eps^-1 n^2 (h_p+log(mn)+10)``;
    ``erml1``: ``200 eps^-2 m e^2 n^4 (h_p+5)``;
    ``erml2``: ``eps h(a) + 200 eps^-1 e n^2 (h_p+2 log(mn)+10)``.
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("epsilon out of range (0,1]")
    n, m = F.n, F.m
    with working_precision(prec):
        hp = height_poly(F, "projective", prec)
        ha = enclose(h_alpha) if not isinstance(h_alpha, type(iv.mpf(0))) else h_alpha
        lmn = _log(m * n)
        if kind == "eml1":
            return enclose(200 * m * n**4 / eps**2) * (hp + 5)
        if kind == "eml2":
            return enclose(eps * n) * ha + enclose(200 * n**2 / eps) * (hp + lmn + 10)
        if kind == "erml1":
            return enclose(200 * m * e**2 * n**4 / eps**2) * (hp + 5)
        if kind == "erml2":
            return enclose(eps) * ha + enclose(200 * e * n**2 / eps) * (hp + 2 * lmn + 10)
    raise ValueError(f"unknown bound {kind!r}")


# ---------------------------------------------------------------------------
# auxiliary polynomial


@dataclass(frozen=True)
class AuxPolynomial:
    G: BivarPoly
    N: int
    delta: Fraction
    required_order: int
    achieved_order: Fraction
    order_is_lower_bound: bool
    equations: int
    unknowns: int
    h_p_G: Real
    height_bound: Real

    @property
    def within_height_bound(self) -> bool:
        """Informational: the bound is an existence statement, not a guarantee for this G."""
        return self.h_p_G.b <= self.height_bound.a


def _series_of_G(coeffs: dict[tuple[int, int], int], powers: list[list[Fraction]], length: int) -> list[Fraction]:
    out = [Fraction(0)] * length
    for (i, j), c in coeffs.items():
        if not c:
            continue
        for s, v in enumerate(powers[j]):
            if i + s >= length:
                break
            if v:
                out[i + s] += c * v
    return out


def build_aux_poly(F: BivarPoly, branch: PuiseuxBranch, N: int, delta: Number, prec: int = DEFAULT_PREC) -> AuxPolynomial:
    """Nonzero ``G`` with ``deg_X G <= N``, ``deg_Y G <= n-1`` vanishing to order
    ``>= (1-delta) N n`` along the branch ``y(x)``.

    The coefficient conditions form an integer linear system with fewer
    equations than unknowns; its kernel lattice is LLL-reduced and the
    reduced vector of least projective height is taken, ties going to the
    lexicographically largest coefficient vector (monomials ordered by Y-degree,
    then X-degree; sign fixed so the first nonzero entry is positive).
    """
    delta = Fraction(delta)
    if not 0 < delta <= Fraction(1, 2):
        raise ValueError("delta must lie in (0, 1/2]")
    if branch.e != 1:
        raise ValueError("branch must be unramified (e = 1); substitute x -> x^e first")
    if N < 1:
        raise ValueError("N must be positive")
    n = F.n
    L = math.ceil((1 - delta) * N * n)
    K = len(branch.coeffs)
    if K < L:
        raise ValueError(f"branch needs at least {L} coefficients, has {K}")
    monomials = [(i, j) for j in range(n) for i in range(N + 1)]
    unknowns = len(monomials)
    if L >= unknowns:
        raise AssertionError("more equations than unknowns")
    length = K + 1  # series known exactly through x^K
    y = branch.series()[:length]
    powers = [[Fraction(1)] + [Fraction(0)] * (length - 1)]
    for _ in range(1, n):
        prev = powers[-1]
        nxt = [Fraction(0)] * length
        for s, u in enumerate(prev):
            if u:
                for t, w in enumerate(y):
                    if s + t >= length:
                        break
                    if w:
                        nxt[s + t] += u * w
        powers.append(nxt)
    # row s: coefficient of x^s in G(x, y(x))
    rows = []
    for s in range(L):
        rows.append([powers[j][s - i] if s - i >= 0 else Fraction(0) for i, j in monomials])
    basis = integer_kernel(rows, unknowns)
    if not basis:
        raise AssertionError("linear system has trivial kernel")

    def key(v):
        v = v if next(x for x in v if x) > 0 else [-x for x in v]
        return (max(abs(x) for x in v), [-x for x in v])

    best = min(basis, key=key)
    g = 0
    for x in best:
        g = math.gcd(g, x)
    best = [x // g for x in best]
    G = BivarPoly({mono: c for mono, c in zip(monomials, best) if c})
    # display sign: leading monomial (highest Y, then X) positive
    lead = max(G.int_terms, key=lambda t: (t[1], t[0]))
    if G.int_terms[lead] < 0:
        G = -G
    ser = _series_of_G(G.int_terms, powers, length)
    nz = next((s for s, v in enumerate(ser) if v), None)
    if nz is None:
        # G(x, y(x)) vanishes through the known precision
        achieved, lower = Fraction(length), True
    else:
        achieved, lower = Fraction(nz), False
    if achieved < L:
        raise AssertionError("kernel vector does not reach the required order")
    with working_precision(prec):
        hG = height_poly(G, "projective", prec)
        div = observed_divisor(branch, prec)
        bound = enclose(Fraction(N * n) / delta) * (div.height + 3)
    return AuxPolynomial(G, N, delta, L, achieved, lower, L, unknowns, hG, bound)
