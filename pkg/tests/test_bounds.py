import math
import warnings
from fractions import Fraction

import pytest

from curveheights.arith import BivarPoly, IntPoly, X, Y
from curveheights.bounds import (
    build_aux_poly,
    check_coeff_vs_roots,
    check_eval_bounds,
    check_root_height,
    check_schmidt,
    check_system_bound,
    is_rationally_irreducible,
    main_lemma_rhs,
    main_theorem_check,
    theorem_threshold,
)
from curveheights.curve import CurveError, expand_branch
from curveheights.heights import AlgebraicNumber, algebraic_points
from curveheights.reals import hi, lo, mid


def close(x, value, tol=1e-12):
    return lo(x) - tol <= value <= hi(x) + tol


def test_schmidt_examples():
    rep = check_schmidt(Y**2 - X**3 - X)
    # the resultant -4(X^3 + X) has coprime-coefficient vector (1, 1): h_p = 0
    assert close(rep.lhs, 0) and rep.holds
    assert close(rep.rhs, 3 * math.log(12 * math.sqrt(2)))
    rep = check_schmidt(Y**2 - X)
    assert close(rep.lhs, 0) and close(rep.rhs, 3 * math.log(6 * math.sqrt(2))) and rep.holds
    rep = check_schmidt(Y - X)
    assert close(rep.lhs, 0) and rep.holds


def test_schmidt_rejects_repeated_factor():
    with pytest.raises(ValueError, match="squarefree"):
        check_schmidt((Y - X) ** 2)


def test_root_height_examples():
    for f, lhs, rhs in [
        (IntPoly([-2, 0, 1]), 0.5 * math.log(2), 2 * math.log(2)),
        (IntPoly([-5, 1]), math.log(5), math.log(10)),
        (IntPoly([-1, 2]), math.log(2), 2 * math.log(2)),
    ]:
        for rep in check_root_height(f):
            assert close(rep.lhs, lhs) and close(rep.rhs, rhs) and rep.holds


def test_eval_bound_examples():
    F = Y**2 - X**3 - X
    beta = algebraic_points(F, 2)[0]
    _, part2 = check_eval_bounds(F, 2, beta)
    assert close(part2.lhs, 0.5 * math.log(10))
    assert close(part2.rhs, 3 * math.log(2) + 2 + math.log(4))
    assert part2.holds
    _, part2 = check_eval_bounds(Y - X, 1, AlgebraicNumber.rational(1))
    assert close(part2.lhs, 0) and close(part2.rhs, 1 + math.log(2))
    part1, part2 = check_eval_bounds(X * Y - 2, 4, AlgebraicNumber.rational(Fraction(1, 2)))
    assert close(part2.lhs, math.log(2))
    # h_p(XY - 2) = log 2 from the coefficient vector (1, -2)
    assert close(part2.rhs, math.log(2) + math.log(4) + 1 + math.log(2))
    assert part1.holds and part2.holds


def test_eval_bound_value_part():
    F = Y**2 - X**3 - X
    part1, _ = check_eval_bounds(F, 2, algebraic_points(F, 2)[0], probe=3)
    # F(2, 3) = -1: h = 0; rhs = h_a(F) + 3 log 2 + 2 log 3 + log 12
    assert close(part1.lhs, 0)
    assert close(part1.rhs, 3 * math.log(2) + 2 * math.log(3) + math.log(12))


def test_eval_bound_rejects_point_off_curve():
    with pytest.raises(ValueError, match="not on curve"):
        check_eval_bounds(Y - X, 1, AlgebraicNumber.rational(2))


def test_coeff_vs_roots_examples():
    rep = check_coeff_vs_roots(IntPoly([2, -3, 1]), 1)
    assert close(rep.rhs, 2) and close(rep.lhs, 3 / 3 / 12) and rep.holds
    for p in (2, 3, 5):
        rep = check_coeff_vs_roots(IntPoly([-p, 0, 1]), 0, p)
        assert close(rep.rhs, p**-0.5) and close(rep.lhs, 1 / p) and rep.holds
    rep = check_coeff_vs_roots(IntPoly([-1, 0, 1]), 1)
    assert close(rep.lhs, 0) and close(rep.rhs, 1) and rep.holds


def test_coeff_vs_roots_needs_enough_roots():
    with pytest.raises(ValueError, match="distinct roots"):
        check_coeff_vs_roots(IntPoly([1, -2, 1]), 1)


def test_system_bound_examples():
    rep = check_system_bound(Y - X**2, Y - 4, 2)
    assert close(rep.lhs, math.log(2))
    # n1 h_p(F2) = log 4, m1 n2 + m2 n1 = 2
    assert close(rep.rhs, math.log(4) + 2 + 2 * math.log(2) + math.log(2)) and rep.holds
    rep = check_system_bound(Y - X, Y - 1, 1)
    assert close(rep.lhs, 0) and rep.holds
    (a,) = [r for r in AlgebraicNumber.roots_of(IntPoly([-9, 1, 0, 1])) if r.box.im == 0]
    rep = check_system_bound(Y**2 - X**3 - X, Y - 3, a)
    assert rep.holds


def test_system_bound_checks_the_root():
    with pytest.raises(ValueError, match="not a root"):
        check_system_bound(Y - X**2, Y - 4, 3)


def test_main_theorem_examples():
    F = Y**2 - X**3 - X
    for beta in algebraic_points(F, 2):
        rep = main_theorem_check(F, 2, beta, Fraction(1, 2))
        assert (rep.r, rep.n, rep.m) == (1, 2, 3)
        assert close(rep.lgcd_value, 0.5 * math.log(2))
        assert close(rep.lhs_main, 0)
        assert rep.branch_taken == "small_height" and rep.consistent
        assert close(rep.threshold, 200 * 4 * 3 * 64 * 5)
    rep = main_theorem_check(Y - X**2, 0, 0, Fraction(1, 2))
    assert close(rep.lgcd_value, 0) and close(rep.lhs_main, 0)
    rep = main_theorem_check(Y**2 - X**3, 4, 8, Fraction(1, 2))
    assert rep.r == 2 and close(rep.lgcd_value, 2 * math.log(2)) and close(rep.lhs_main, 0)


def test_main_theorem_preconditions():
    with pytest.raises(ValueError, match="epsilon out of range"):
        main_theorem_check(Y - X, 1, 1, 2)
    with pytest.raises(CurveError, match="not on curve"):
        main_theorem_check(Y - X, 1, 2, Fraction(1, 2))
    with pytest.raises(CurveError, match="origin not on curve"):
        main_theorem_check(X * Y - 1, 1, 1, Fraction(1, 2))


def test_reducible_curve_warns():
    F = (Y - X) * (Y + X - 1)
    assert not is_rationally_irreducible(F)
    assert is_rationally_irreducible(Y**2 - X**3 - X)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        main_theorem_check(F, 2, 2, Fraction(1, 2))
    assert any("reducible" in str(w.message) for w in caught)


def test_threshold_scales_with_epsilon():
    F = Y**2 - X**3 - X
    assert abs(mid(theorem_threshold(F, Fraction(1, 4))) / mid(theorem_threshold(F, Fraction(1, 2))) - 4) < 1e-12


def test_main_lemma_rhs():
    F = Y**2 - X**3 - X
    assert close(main_lemma_rhs(F, 1, "eml1"), 48000)
    assert close(main_lemma_rhs(F, Fraction(1, 2), "eml1"), 4 * 48000)
    assert close(main_lemma_rhs(F, 1, "erml1", e=2), 4 * 48000)
    assert close(main_lemma_rhs(F, 1, "eml2", h_alpha=1), 2 + 800 * (math.log(6) + 10))
    assert close(main_lemma_rhs(F, 1, "erml2", e=2, h_alpha=1), 1 + 1600 * (2 * math.log(6) + 10))
    with pytest.raises(ValueError):
        main_lemma_rhs(F, 0, "eml1")


# -- auxiliary polynomial ---------------------------------------------------------


def test_aux_poly_single_monomial():
    F = Y - X**2
    aux = build_aux_poly(F, expand_branch(F, 0, 8), 2, Fraction(1, 2))
    assert aux.G == X
    assert aux.achieved_order == 1 and aux.required_order == 1


def test_aux_poly_catalan_small():
    F = Y**2 - Y + X
    aux = build_aux_poly(F, expand_branch(F, 0, 10), 1, Fraction(1, 2))
    # any of X, Y, XY, Y - X vanishes to order >= 1 with h_p = 0
    assert aux.achieved_order >= 1 and close(aux.h_p_G, 0)
    assert aux.G.m <= 1 and aux.G.n <= 1


def test_aux_poly_catalan_order_three():
    F = Y**2 - Y + X
    aux = build_aux_poly(F, expand_branch(F, 0, 12), 2, Fraction(1, 4))
    assert aux.G == Y - X - X**2
    assert aux.achieved_order == 3 and not aux.order_is_lower_bound
    assert aux.equations == 3 and aux.unknowns == 6


def test_aux_poly_is_deterministic():
    F = Y**3 - Y + X
    b = expand_branch(F, 0, 30)
    first = build_aux_poly(F, b, 4, Fraction(1, 4))
    second = build_aux_poly(F, b, 4, Fraction(1, 4))
    assert first.G == second.G and first.G != BivarPoly()


def test_aux_poly_rejects_ramified_branch():
    F = Y**2 - X**3
    with pytest.raises(ValueError, match="unramified"):
        build_aux_poly(F, expand_branch(F, 0, 12), 2, Fraction(1, 4))
