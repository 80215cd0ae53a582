"""Explicit height inequalities, the per-point dichotomy and an auxiliary polynomial."""

from fractions import Fraction

from curveheights import (
    IntPoly,
    X,
    Y,
    build_aux_poly,
    check_coeff_vs_roots,
    check_eval_bounds,
    check_root_height,
    check_schmidt,
    expand_branch,
    main_theorem_check,
)
from curveheights.heights import algebraic_points
from curveheights.reals import fmt

F = Y**2 - X**3 - X
print(check_schmidt(F))
for rep in check_root_height(IntPoly([-2, 0, 1])):
    print(rep)
for rep in check_eval_bounds(F, 2, algebraic_points(F, 2)[0]):
    print(rep)
print(check_coeff_vs_roots(IntPoly([2, -3, 1]), 1))
print(check_coeff_vs_roots(IntPoly([-3, 0, 1]), 0, 3))

print("\nDichotomy at points of Y^2 - X^3 above alpha = t^2 (beta = t^3):")
G = Y**2 - X**3
for t in (2, 6, 35):
    rep = main_theorem_check(G, t * t, t**3, Fraction(1, 2))
    print(f"  t={t}: lgcd/r = {fmt(rep.lgcd_value / rep.r)}, h(alpha)/n = {fmt(rep.h_alpha / rep.n)}, "
          f"branch {rep.branch_taken}")

C = Y**2 - Y + X
aux = build_aux_poly(C, expand_branch(C, 0, 12), 2, Fraction(1, 4))
print(f"\nAuxiliary polynomial for {C}, N=2, delta=1/4: G = {aux.G}, vanishing order {aux.achieved_order}"
      f" (needed {aux.required_order})")
