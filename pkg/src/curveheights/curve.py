"""Local analysis of a plane curve ``F(X, Y) = 0`` at the origin.

* :func:`vanishing_order` -- lowest total degree of a monomial of ``F``.
* :func:`puiseux_exponents` -- the multiset of x-adic orders ``kappa/e`` of
  the ``n`` Puiseux roots, read off the Newton polygon of
  ``{(j, ord_x f_j)}``; no series expansion is involved.
* :func:`puiseux_branches` / :func:`expand_branch` -- Newton-Puiseux
  expansion of the branches through the origin with rational coefficients.
* :func:`measure_eisenstein` -- the smallest effective divisor dominating
  the computed coefficients of a branch, compared with the Eisenstein bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import BivarPoly, IntPoly, factor_rational
from .heights import _factor_primes, height_poly
from .places import lower_hull, valuation
from .reals import DEFAULT_PREC, Real, enclose, iv, log_rational, rmax, working_precision

Series = list  # list[Fraction], index = exponent


class CurveError(ValueError):
    """A mathematical precondition on the curve is violated."""


def vanishing_order(F: BivarPoly) -> int:
    """Order of vanishing ``r`` of ``F`` at the origin."""
    if F.is_zero():
        raise CurveError("zero polynomial")
    if F.coeff(0, 0) != 0:
        raise CurveError("origin not on curve")
    return min(i + j for i, j in F.int_terms)


def _ord(f: IntPoly) -> int:
    return f.trailing()[0]


@dataclass(frozen=True)
class PuiseuxExponent:
    """``multiplicity`` Puiseux roots with x-adic order ``kappa / e`` (reduced)."""

    kappa: int
    e: int
    multiplicity: int

    @property
    def order(self) -> Fraction:
        return Fraction(self.kappa, self.e)


@dataclass(frozen=True)
class BranchSummary:
    exponents: tuple[PuiseuxExponent, ...]
    ell: int
    r_from_exponents: Fraction
    zero_roots: int = 0  # roots y = 0 identically (F divisible by Y)

    def orders(self) -> list[Fraction]:
        out = []
        for ex in self.exponents:
            out += [ex.order] * ex.multiplicity
        return out


def puiseux_exponents(F: BivarPoly) -> BranchSummary:
    """Orders ``nu_x(y_i)`` of all Puiseux roots and ``sum_{kappa>0} min(1, kappa/e)``."""
    if F.n < 1:
        raise CurveError("F has no Y-roots (deg_Y F = 0)")
    cols = F.columns()
    if all(c(0) == 0 for c in cols):
        raise CurveError("x divides F: F(0, Y) vanishes identically")
    pts = [(j, Fraction(_ord(c))) for j, c in enumerate(cols) if not c.is_zero()]
    poly = lower_hull(pts)
    zero_roots = poly.start
    exps = []
    for v, k in poly.root_valuations():
        exps.append(PuiseuxExponent(v.numerator, v.denominator, k))
    ell = zero_roots + sum(ex.multiplicity for ex in exps if ex.kappa > 0)
    r = Fraction(zero_roots) + sum(
        (min(Fraction(1), ex.order) * ex.multiplicity for ex in exps if ex.kappa > 0), Fraction(0)
    )
    return BranchSummary(tuple(exps), ell, r, zero_roots)


@dataclass(frozen=True)
class PfsReport:
    """Constant terms ``f_k(0)`` against the number ``ell`` of branches through 0."""

    ell: int
    constants: tuple[Fraction, ...]
    holds: bool


def check_pfs(F: BivarPoly) -> PfsReport:
    """Verify ``f_k(0) = 0`` for ``k < ell`` and ``f_ell(0) != 0``."""
    summary = puiseux_exponents(F)
    consts = tuple(F.coeff(0, j) for j in range(F.n + 1))
    ell = summary.ell
    holds = all(c == 0 for c in consts[:ell]) and ell <= F.n and consts[ell] != 0
    return PfsReport(ell, consts, holds)


# ---------------------------------------------------------------------------
# truncated power series over Q


def s_mul(a: Series, b: Series, n: int) -> Series:
    out = [Fraction(0)] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                if y:
                    out[i + j] += x * y
    return out


def s_inv(a: Series, n: int) -> Series:
    if not a or a[0] == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    out = [Fraction(0)] * n
    inv0 = 1 / Fraction(a[0])
    out[0] = inv0
    for k in range(1, n):
        s = sum((a[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1)), Fraction(0))
        out[k] = -s * inv0
    return out


def s_pow(a: Series, k: int, n: int) -> Series:
    out = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for _ in range(k):
        out = s_mul(out, a, n)
    return out


def _pad(a: Sequence, n: int) -> Series:
    a = list(a[:n])
    return a + [Fraction(0)] * (n - len(a))


# ---------------------------------------------------------------------------
# Newton-Puiseux


class IrrationalBranch(CurveError):
    """The branch needs coefficients outside Q."""


@dataclass(frozen=True)
class PuiseuxBranch:
    """Truncated Puiseux series ``y = sum_{k=1}^{K} a_k x^{k/e}``.

    ``coeffs[k-1]`` is ``a_k``.  ``exact`` means the series is finite and
    the listed terms are all of it.
    """

    e: int
    coeffs: tuple[Fraction, ...]
    truncation_order: int
    exact: bool = False

    @property
    def kappa(self) -> int:
        for k, a in enumerate(self.coeffs, 1):
            if a:
                return k
        return 0

    @property
    def order(self) -> Fraction:
        return Fraction(self.kappa, self.e)

    def terms(self) -> list[tuple[int, Fraction]]:
        return [(k, a) for k, a in enumerate(self.coeffs, 1) if a]

    def series(self) -> Series:
        """Coefficients in ``t = x^(1/e)``, index = t-exponent."""
        return [Fraction(0)] + list(self.coeffs)

    def __str__(self) -> str:
        out = ""
        for k, a in self.terms():
            ex = Fraction(k, self.e)
            mono = "x" if ex == 1 else f"x^{ex}" if ex.denominator == 1 else f"x^({ex})"
            body = mono if abs(a) == 1 else f"{abs(a)}*{mono}"
            if not out:
                out = ("-" if a < 0 else "") + body
            else:
                out += (" - " if a < 0 else " + ") + body
        out = out or "0"
        return out if self.exact else out + " + ..."


@dataclass
class _State:
    H: dict  # (i, j) -> Fraction in (t, Y), t = x^(1/E)
    E: int
    prefix: list  # [(x-exponent Fraction, coefficient Fraction)]
    Q: Fraction  # y = prefix + x^Q * Y_next with Y_next -> 0


def _frac_terms(F: BivarPoly) -> dict:
    return {k: Fraction(v) for k, v in F.terms().items()}


def _columns(H: dict) -> dict[int, dict[int, Fraction]]:
    cols: dict[int, dict[int, Fraction]] = {}
    for (i, j), c in H.items():
        if c:
            cols.setdefault(j, {})[i] = c
    return cols


def _ramify(H: dict, b: int) -> dict:
    return {(i * b, j): c for (i, j), c in H.items()}


def _substitute(H: dict, nu: int, c: Fraction) -> dict:
    """``H(t, t^nu (c + Y)) / t^min``."""
    out: dict = {}
    for (i, j), h in H.items():
        for l in range(j + 1):
            v = h * math.comb(j, l) * c ** (j - l)
            if v:
                k = (i + nu * j, l)
                out[k] = out.get(k, 0) + v
    out = {k: v for k, v in out.items() if v}
    if not out:
        return out
    low = min(i for i, _ in out)
    return {(i - low, j): v for (i, j), v in out.items()}


def _rational_roots(coeffs: list[Fraction]) -> tuple[list[tuple[Fraction, int]], int]:
    """Nonzero rational roots (with multiplicity) and the count of irrational roots."""
    f = IntPoly.from_rational(coeffs)
    roots, irrational = [], 0
    for g, mult in factor_rational(f):
        if g.degree == 1:
            r = Fraction(-g.coeffs[0], g.coeffs[1])
            if r != 0:
                roots.append((r, mult))
        else:
            irrational += g.degree * mult
    roots.sort()
    return roots, irrational


def _simple_root_series(H: dict, T: int) -> Series:
    """Unique ``Y(t) = O(t)`` with ``H(t, Y(t)) = 0 mod t^(T+1)``; needs ``H(0,0)=0 != H_Y(0,0)``."""
    n = T + 1
    cols = _columns(H)
    deg = max(cols)
    hs = [_pad([cols.get(j, {}).get(i, Fraction(0)) for i in range(n)], n) for j in range(deg + 1)]
    y = [Fraction(0)] * n
    p = 1
    while p < n:
        p = min(2 * p, n)
        g = [Fraction(0)] * p
        gd = [Fraction(0)] * p
        for j in range(deg, -1, -1):
            # Horner for G and G_Y together
            gd = [a + b for a, b in zip(s_mul(gd, y, p), g)]
            g = [a + b for a, b in zip(s_mul(g, y, p), hs[j][:p])]
        corr = s_mul(g, s_inv(gd, p), p)
        y = [a - b for a, b in zip(y[:p], corr)] + y[p:]
    return y


def _segments(H: dict):
    """``(nu, xa, va, xb)`` for each polygon segment with positive root order ``nu``."""
    cols = _columns(H)
    poly = lower_hull([(j, Fraction(min(c))) for j, c in cols.items()])
    for (xa, va), (xb, vb) in zip(poly.vertices, poly.vertices[1:]):
        nu = -(vb - va) / (xb - xa)
        if nu > 0:
            yield nu, xa, va, xb


def _expand(state: _State, B: Fraction, out: list, irr: list, depth: int = 0) -> None:
    """Collect all rational expansions continuing ``state`` up to x-exponent ``B``.

    ``out`` receives ``(terms, E, exact)`` leaves.
    """
    if depth > 200:
        raise CurveError("Newton-Puiseux did not separate the branch (is F squarefree in Y?)")
    H, E = state.H, state.E
    cols = _columns(H)
    if not cols or min(cols) >= 1:
        # Y_next = 0 is a root: finite expansion
        out.append((state.prefix, E, True))
        if not cols:
            return
    if 0 in cols and 0 not in cols[0] and 0 in cols.get(1, {}):
        T = int((B - state.Q) * E)
        terms = list(state.prefix)
        if T >= 1:
            ys = _simple_root_series(H, T)
            terms += [(state.Q + Fraction(s, E), ys[s]) for s in range(1, T + 1) if ys[s]]
        out.append((terms, E, False))
        return
    for seg in _segments(H):
        _expand_segment(state, seg, B, out, irr, depth)


def _expand_segment(state: _State, seg, B: Fraction, out: list, irr: list, depth: int) -> None:
    nu, xa, va, xb = seg
    H, E = state.H, state.E
    if state.Q + nu / E > B:
        out.append((state.prefix, E, False))
        return
    b = nu.denominator
    if b > 1:
        H, E, va, nu = _ramify(H, b), E * b, va * b, nu * b
    nu_i = int(nu)
    cols = _columns(H)
    phi = [Fraction(0)] * (xb - xa + 1)
    for j in range(xa, xb + 1):
        phi[j - xa] = cols.get(j, {}).get(va - nu_i * (j - xa), Fraction(0))
    roots, nirr = _rational_roots(phi)
    Qn = state.Q + Fraction(nu_i, E)
    if nirr:
        irr.append((tuple(state.prefix), Qn, nirr))
    for c, _mult in roots:
        nxt = _State(_substitute(H, nu_i, c), E, state.prefix + [(Qn, c)], Qn)
        _expand(nxt, B, out, irr, depth + 1)


def _to_branch(terms: list, E: int, K: int, exact: bool) -> PuiseuxBranch:
    """Pack terms into ``K`` slots at the smallest ramification index that fits them."""
    e = 1
    for ex, _ in terms:
        e = e * ex.denominator // math.gcd(e, ex.denominator)
    coeffs = [Fraction(0)] * K
    cut = False
    for ex, a in terms:
        k = ex * e
        if k <= K:
            coeffs[int(k) - 1] += a
        else:
            cut = True
    return PuiseuxBranch(e, tuple(coeffs), K, exact and not cut)


@dataclass(frozen=True)
class BranchExpansion:
    branches: tuple[PuiseuxBranch, ...]
    irrational: int = 0  # expansion paths that need an algebraic coefficient field


def puiseux_branches(F: BivarPoly, K: int = 20) -> BranchExpansion:
    """All Puiseux roots through the origin with rational coefficients.

    Each branch gets ``K`` coefficient slots in units of its own ``1/e``.
    A ramified root appears once per conjugate (one per choice of
    ``x^(1/e)``).  The order is deterministic.
    """
    summary = puiseux_exponents(F)
    state = _State(_frac_terms(F), 1, [], Fraction(0))
    leaves: list = []
    irr: list = []
    for seg in _segments(state.H):
        # the first exponent fixes a lower bound on e, hence an upper bound on K/e
        _expand_segment(state, seg, Fraction(K, seg[0].denominator), leaves, irr, 0)
    found = [_to_branch(terms, E, K, exact) for terms, E, exact in leaves if terms]
    if summary.zero_roots:
        found.append(PuiseuxBranch(1, (Fraction(0),) * K, K, True))
    found.sort(key=lambda b: (b.kappa == 0, b.order, b.e, b.coeffs))
    return BranchExpansion(tuple(found), sum(i[2] for i in irr))


def expand_branch(F: BivarPoly, selector: int | tuple = 0, K: int = 20) -> PuiseuxBranch:
    """Expand one rational branch of ``F`` through the origin to ``K`` coefficients.

    ``selector`` is an index into :func:`puiseux_branches` or a pair
    ``(order, leading_coefficient)``.
    """
    exp = puiseux_branches(F, K)
    if isinstance(selector, tuple):
        order, lead = Fraction(selector[0]), Fraction(selector[1])
        for b in exp.branches:
            if b.kappa and b.order == order and b.coeffs[b.kappa - 1] == lead:
                return b
        raise IrrationalBranch(f"no rational branch with leading term {lead}*x^{order}")
    if not 0 <= selector < len(exp.branches):
        if exp.irrational:
            raise IrrationalBranch("irrational branch: coefficients need an algebraic extension")
        raise IndexError(f"branch index {selector} out of range")
    return exp.branches[selector]


def residual_order(F: BivarPoly, branch: PuiseuxBranch) -> Fraction | None:
    """``ord_x F(x, y~(x))`` for the truncated branch; ``None`` if the residual is 0."""
    e = branch.e
    y = branch.series()
    # F(t^e, y(t)) as an exact polynomial in t
    deg = len(y) - 1
    n_total = F.m * e + F.n * deg + 1
    powers = [[Fraction(1)]]
    for _ in range(F.n):
        powers.append(_poly_mul(powers[-1], y))
    acc = [Fraction(0)] * n_total
    for (i, j), c in F.terms().items():
        p = powers[j]
        for s, v in enumerate(p):
            if v:
                acc[i * e + s] += c * v
    for s, v in enumerate(acc):
        if v:
            return Fraction(s, e)
    return None


def _poly_mul(a: Series, b: Series) -> Series:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def branch_power(branch: PuiseuxBranch, ell: int) -> Series:
    """Coefficients (in ``t = x^(1/e)``) of ``y^ell`` up to the truncation order."""
    n = branch.truncation_order + 1
    return s_pow(branch.series(), ell, n)


# ---------------------------------------------------------------------------
# Eisenstein divisor


@dataclass(frozen=True)
class EisensteinDivisor:
    """Effective divisor ``(A_v)`` over Q: ``log A_inf`` and ``log A_p = c_p log p``."""

    arch_log: Real
    prime_exponents: dict[int, Fraction]
    height: Real

    @property
    def arch_constant(self) -> Real:
        return iv.exp(self.arch_log)


@dataclass(frozen=True)
class EisensteinReport:
    observed: EisensteinDivisor
    paper_bound: Real
    holds: bool
    growth_rate: Real | None = None  # ratio estimate |a_k / a_k'|^(e/(k-k')) at the tail


def eisenstein_bound(F: BivarPoly, e: int, prec: int = DEFAULT_PREC) -> Real:
    """``4n h_p(F) + 3n log(nm) + 10en``."""
    n, m = F.n, F.m
    with working_precision(prec):
        hp = height_poly(F, "projective", prec)
        return 4 * n * hp + 3 * n * log_rational(n * m) + 10 * e * n


def observed_divisor(branch: PuiseuxBranch, prec: int = DEFAULT_PREC) -> EisensteinDivisor:
    """Smallest effective divisor with ``|a_k|_v <= A_v^(k/e)`` for all computed ``k``."""
    e = branch.e
    terms = branch.terms()
    with working_precision(prec):
        arch = iv.mpf(0)
        for k, a in terms:
            if abs(a) > 1:
                arch = rmax(arch, log_rational(abs(a)) * e / k)
        primes: dict[int, Fraction] = {}
        for k, a in terms:
            if a.denominator > 1:
                for p in _factor_primes(a.denominator):
                    c = Fraction(e * -valuation(a, p), k)
                    if c > primes.get(p, 0):
                        primes[p] = c
        h = arch
        for p, c in sorted(primes.items()):
            h = h + enclose(c) * iv.log(iv.mpf(p))
        return EisensteinDivisor(arch, dict(sorted(primes.items())), h)


def measure_eisenstein(branch: PuiseuxBranch, F: BivarPoly, prec: int = DEFAULT_PREC) -> EisensteinReport:
    """Observed divisor of a branch versus the Eisenstein height bound."""
    if len(branch.coeffs) < 8:
        raise CurveError("too few coefficients: need at least 8")
    obs = observed_divisor(branch, prec)
    bound = eisenstein_bound(F, branch.e, prec)
    holds = obs.height.b <= bound.a
    terms = [(k, a) for k, a in branch.terms()]
    growth = None
    if len(terms) >= 2:
        (k1, a1), (k2, a2) = terms[-2], terms[-1]
        with working_precision(prec):
            growth = iv.exp((log_rational(abs(a2)) - log_rational(abs(a1))) * branch.e / (k2 - k1))
    return EisensteinReport(obs, bound, holds, growth)


def check_power_growth(branch: PuiseuxBranch, divisor: EisensteinDivisor, ell_max: int, prec: int = DEFAULT_PREC) -> bool:
    """Coefficients of ``y^ell`` (``1 <= ell <= ell_max``) against ``2^(ell+k) A^(k/e)`` and ``A_p^(k/e)``."""
    e = branch.e
    with working_precision(prec):
        log2 = iv.log(iv.mpf(2))
        for ell in range(1, ell_max + 1):
            coeffs = branch_power(branch, ell)
            for k, a in enumerate(coeffs):
                if k == 0 or not a:
                    continue
                lhs = log_rational(abs(a))
                rhs = (ell + k) * log2 + divisor.arch_log * k / e
                if not lhs.b <= rhs.a:
                    return False
                for p in _factor_primes(a.denominator) if a.denominator > 1 else ():
                    if Fraction(-valuation(a, p)) > divisor.prime_exponents.get(p, Fraction(0)) * Fraction(k, e):
                        return False
    return True
