import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curveheights.arith import IntPoly, X, Y, squarefree_part
from curveheights.heights import (
    AlgebraicNumber,
    algebraic_points,
    height,
    height_algebraic,
    height_poly,
    height_rational,
    height_vector,
    lgcd,
    lgcd_breakdown,
    product_formula_exponents,
    satisfies,
)
from curveheights.places import complex_roots, padic_newton_polygon, valuation
from curveheights.reals import hi, lo, mid

TIGHT = 1e-12


def close(x, value, tol=TIGHT):
    return lo(x) - tol <= value <= hi(x) + tol


def root(f: IntPoly, k: int = 0) -> AlgebraicNumber:
    return AlgebraicNumber.roots_of(f)[k]


# -- rationals -----------------------------------------------------------------


def test_height_rational_examples():
    b = height_rational(Fraction(3, 2))
    assert close(b.total, math.log(3))
    assert close(b.archimedean, math.log(1.5))
    assert b.nonarch == {2: 1}
    assert close(height_rational(1).total, 0)
    b = height_rational(Fraction(-7, 12))
    assert close(b.total, math.log(12))
    assert close(b.archimedean, 0)
    assert b.nonarch == {2: 2, 3: 1}
    assert close(height_rational(0).total, 0)


def test_product_formula_thousand_rationals():
    rng = random.Random(5)
    for _ in range(1000):
        a = Fraction(rng.choice((1, -1)) * rng.randint(1, 10**9), rng.randint(1, 10**9))
        exps = product_formula_exponents(a)
        prod = Fraction(1)
        for p, v in exps.items():
            prod *= Fraction(p) ** v
        assert prod == abs(a)


def test_height_inverse_rational():
    rng = random.Random(6)
    for _ in range(200):
        a = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))
        assert lo(height(a)) == lo(height(1 / a)) and hi(height(a)) == hi(height(1 / a))


# -- algebraic numbers ---------------------------------------------------------------


def test_height_algebraic_examples():
    s2 = root(IntPoly([-2, 0, 1]))
    assert close(height_algebraic(s2).total, 0.5 * math.log(2))
    b = root(IntPoly([-1, 0, 2]))
    for via in ("mahler", "places"):
        assert close(height_algebraic(b, via).total, 0.5 * math.log(2))
    assert height_algebraic(b, "places").nonarch == {2: Fraction(1, 2)}
    q = AlgebraicNumber.rational(Fraction(3, 2))
    assert close(height_algebraic(q, "places").total, math.log(3))
    assert close(height_algebraic(q, "mahler").total, math.log(3))


def _mahler_oracle(f: IntPoly) -> float:
    with mpmath.workdps(60):
        roots = mpmath.polyroots(list(reversed(f.coeffs)), maxsteps=400, extraprec=400)
        return float(mpmath.log(abs(f.lead) * mpmath.fprod(max(1, abs(z)) for z in roots)) / f.degree)


irreducible_like = st.lists(st.integers(-30, 30), min_size=2, max_size=7).filter(lambda c: c[0] and c[-1])


@settings(max_examples=60, deadline=None)
@given(irreducible_like)
def test_mahler_and_places_agree(coeffs):
    f = squarefree_part(IntPoly(coeffs))
    if f.degree < 1:
        return
    for b in AlgebraicNumber.roots_of(f):
        m = height_algebraic(b, "mahler").total
        p = height_algebraic(b, "places").total
        assert abs(mid(m) - mid(p)) < TIGHT
        assert close(m, _mahler_oracle(b.minpoly), 1e-10)


@settings(max_examples=40, deadline=None)
@given(irreducible_like)
def test_height_of_inverse_algebraic(coeffs):
    f = squarefree_part(IntPoly(coeffs))
    if f.degree < 1:
        return
    b = AlgebraicNumber.roots_of(f)[0]
    assert abs(mid(height(b)) - mid(height(b.inverse()))) < TIGHT


def test_algebraic_points_and_membership():
    F = Y**2 - X**3 - X
    pts = algebraic_points(F, 2)
    assert len(pts) == 2
    assert all(p.minpoly == IntPoly([-10, 0, 1]) for p in pts)
    assert all(satisfies(F, 2, p) for p in pts)
    with pytest.raises(ValueError, match="vertical line"):
        algebraic_points(X * Y - X, 0)


# -- lgcd --------------------------------------------------------------------------


def test_lgcd_examples():
    assert close(lgcd(12, 18), math.log(6))
    assert close(lgcd(4, Fraction(1, 2)), 0)
    beta = root(IntPoly([-10, 0, 1]))
    br = lgcd_breakdown(2, beta)
    assert br.nonarch == {2: Fraction(1, 2)}
    assert close(br.total, 0.5 * math.log(2))


def test_lgcd_zero_arguments():
    assert close(lgcd(0, 5), math.log(5))
    with pytest.raises(ValueError):
        lgcd(0, 0)


def test_lgcd_needs_a_rational_argument():
    b = root(IntPoly([-2, 0, 1]))
    with pytest.raises(NotImplementedError):
        lgcd(b, b)


def test_lgcd_integers_thousand_pairs():
    rng = random.Random(7)
    for _ in range(1000):
        a, b = rng.randint(1, 10**8), rng.randint(1, 10**8)
        if rng.random() < 0.5:
            g = rng.randint(1, 10**4)
            a, b = a * g, b * g
        br = lgcd_breakdown(a, b)
        # exact exponent identity: the nonarchimedean parts are the factorisation of gcd
        prod = 1
        for p, c in br.nonarch.items():
            assert c.denominator == 1
            prod *= p ** int(c)
        assert prod == math.gcd(a, b)
        assert close(br.archimedean, 0)


def test_lgcd_rational_matches_local_definition():
    rng = random.Random(8)
    for _ in range(300):
        a = Fraction(rng.randint(-500, 500) or 1, rng.randint(1, 500))
        b = Fraction(rng.randint(-500, 500) or 1, rng.randint(1, 500))
        # h_inf(q) = log+ (1/|q|), h_p(q) = max(0, v_p(q)) log p
        value = min(max(0.0, -math.log(abs(a))), max(0.0, -math.log(abs(b))))
        for p in range(2, 500):
            if all(p % d for d in range(2, int(p**0.5) + 1)):
                va = valuation(a, p)
                vb = valuation(b, p)
                value += min(max(va, 0), max(vb, 0)) * math.log(p)
        assert close(lgcd(a, b), value, 1e-9)


@settings(max_examples=60, deadline=None)
@given(
    st.fractions(min_value=-1000, max_value=1000, max_denominator=1000).filter(lambda q: q != 0),
    irreducible_like,
)
def test_lgcd_sandwich(a, coeffs):
    f = squarefree_part(IntPoly(coeffs))
    if f.degree < 1:
        return
    for b in AlgebraicNumber.roots_of(f):
        if b.is_zero():
            continue
        g = lgcd(a, b)
        assert lo(g) >= -TIGHT
        assert lo(g) <= min(hi(height(a)), hi(height(b))) + TIGHT


def test_lgcd_against_place_table_for_algebraic():
    # alpha = 1/2 on Y^2 - X^3 - X: beta^2 = 5/8, minimal polynomial 8Y^2 - 5
    F = Y**2 - X**3 - X
    for beta in algebraic_points(F, Fraction(1, 2)):
        assert beta.minpoly == IntPoly([-5, 0, 8])
        # both conjugates have |beta|_2 = 2^(3/2) and |beta| = sqrt(5/8) < 1:
        # arch: min(log 2, -log sqrt(5/8)); p=2: h_2(alpha)=0
        expected = min(math.log(2), -0.5 * math.log(5 / 8))
        assert close(lgcd(Fraction(1, 2), beta), expected)


# -- vectors and polynomials ---------------------------------------------------------


def test_height_vector_examples():
    assert close(height_vector([1, -1, 0]), 0)
    assert close(height_vector([1, 2], "euclidean"), 0.5 * math.log(5))
    assert close(height_vector([2, 4]), math.log(2))
    assert close(height_vector([Fraction(1, 2), 1], "affine"), math.log(2))
    with pytest.raises(ValueError):
        height_vector([0, 0])


@settings(max_examples=500, deadline=None)
@given(st.lists(st.fractions(min_value=-100, max_value=100, max_denominator=50), min_size=1, max_size=6))
def test_projective_euclidean_sandwich(v):
    if not any(v):
        return
    hp, hs = height_vector(v), height_vector(v, "euclidean")
    assert lo(hp) <= hi(hs) + TIGHT
    assert lo(hs) <= hi(hp) + 0.5 * math.log(len(v)) + TIGHT
    scaled = [Fraction(7, 3) * x for x in v]
    assert abs(mid(height_vector(scaled)) - mid(hp)) < TIGHT


def test_height_poly_examples():
    assert close(height_poly(Y**2 - X**3 - X), 0)
    assert close(height_poly(2 * Y**2 - 3), math.log(3))
    assert close(height_poly(Y / 2 - 1), math.log(2))
    assert close(height_poly(IntPoly([1, 2, 3])), math.log(3))
    assert close(height_poly(Y / 2 - 1, "affine"), math.log(2))


@settings(max_examples=100, deadline=None)
@given(irreducible_like, st.sampled_from([2, 3, 5, 7]))
def test_gauss_lemma_exponents(coeffs, p):
    f = IntPoly(coeffs)
    # |f|_p = p^(-min v_p(a_i)) and equals |lead|_p * prod max(1, |root|_p)
    min_v = min(valuation(c, p) for c in f.coeffs if c)
    poly = padic_newton_polygon(f, p)
    from_roots = -valuation(f.lead, p) + sum((max(Fraction(0), -v) * k for v, k in poly.root_valuations()), Fraction(0))
    assert -min_v == from_roots


@settings(max_examples=60, deadline=None)
@given(irreducible_like)
def test_mahler_bound(coeffs):
    f = squarefree_part(IntPoly(coeffs))
    if f.degree < 1:
        return
    boxes = complex_roots(f)
    b = AlgebraicNumber(f, boxes[0])
    log_m = height_algebraic(b, "mahler").total * f.degree
    assert lo(log_m) <= math.log((f.degree + 1) * max(abs(c) for c in f.coeffs)) + TIGHT
