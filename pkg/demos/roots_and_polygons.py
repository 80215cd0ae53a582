"""Local data at each place: Newton polygons at primes, certified disks at infinity."""

from fractions import Fraction

from curveheights import IntPoly, complex_roots, padic_newton_polygon, relevant_primes

f = IntPoly([3, -1, 1])  # X^2 - X + 3
for p in relevant_primes(f):
    poly = padic_newton_polygon(f, p)
    print(f"{f.format('X')} at p={p}: vertices {poly.vertices}, root valuations {poly.root_valuations()}")

print("\nCertified roots of X^5 - X - 1 (each disk holds exactly one root):")
for box in complex_roots(IntPoly([-1, -1, 0, 0, 0, 1]), tol=Fraction(1, 10**12)):
    print(f"  centre {box.center:.12g}, radius <= {float(box.radius):.1e}")

print("\nTiny roots are rescaled before isolation; 10^45 X^4 - 1 has roots of size 1e-11:")
for box in complex_roots(IntPoly([-1, 0, 0, 0, 10**45])):
    print(f"  {box.center:.6g}")
