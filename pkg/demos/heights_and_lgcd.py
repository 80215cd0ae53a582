"""Heights of rationals and algebraic numbers, and the logarithmic gcd.

Run with ``python demos/heights_and_lgcd.py``.
"""

from fractions import Fraction

from curveheights import X, Y, AlgebraicNumber, IntPoly, height_algebraic, height_rational, lgcd
from curveheights.heights import algebraic_points, lgcd_breakdown
from curveheights.reals import fmt


def show_rational(q):
    b = height_rational(q)
    parts = ", ".join(f"p={p}: {c}*log {p}" for p, c in b.nonarch.items()) or "none"
    print(f"h({q}) = {fmt(b.total)}   archimedean {fmt(b.archimedean)}, finite parts {parts}")


print("Heights of rationals are log max(|num|, den), split by place:")
for q in (Fraction(3, 2), Fraction(-7, 12), Fraction(1)):
    show_rational(q)

print("\nAn algebraic number, two ways. 1/sqrt(2) is a root of 2Y^2 - 1:")
b = AlgebraicNumber.roots_of(IntPoly([-1, 0, 2]))[0]
print("  via Mahler measure:", fmt(height_algebraic(b, "mahler").total))
print("  via places:        ", fmt(height_algebraic(b, "places").total), height_algebraic(b, "places").nonarch)

print("\nlgcd of integers is log gcd:")
print("  lgcd(12, 18) =", fmt(lgcd(12, 18)), " log 6 =", fmt(lgcd(6, 6)))

F = Y**2 - X**3 - X
beta = algebraic_points(F, 2)[0]
br = lgcd_breakdown(2, beta)
print(f"\nOn {F} above alpha = 2 the point is {beta}.")
print("  lgcd(2, beta) =", fmt(br.total), "with finite parts", br.nonarch)
