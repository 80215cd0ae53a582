"""Order of vanishing, Puiseux exponents and branches, and Eisenstein divisors."""

from curveheights import check_pfs, expand_branch, measure_eisenstein, parse_polynomial, puiseux_branches, puiseux_exponents, vanishing_order
from curveheights.reals import fmt

for text in ("Y^2 - X^3", "Y^3 - X*Y - X^3", "Y^4 - X^2*Y - X^5", "Y^2 - X^5 - X^4"):
    F = parse_polynomial(text)
    s = puiseux_exponents(F)
    orders = ", ".join(f"{ex.order} (x{ex.multiplicity})" for ex in s.exponents)
    print(f"{F}: r = {vanishing_order(F)}, orders {orders}, sum of min(1, order) = {s.r_from_exponents}, "
          f"f_k(0) table {check_pfs(F).constants}")
    for b in puiseux_branches(F, 10).branches:
        if b.kappa:
            print("   ", b)

F = parse_polynomial("Y^2 - Y + X")
b = expand_branch(F, 0, 30)
rep = measure_eisenstein(b, F)
print(f"\nCatalan branch of {F}: {expand_branch(F, 0, 6)}")
print(f"  observed A_inf = {fmt(rep.observed.arch_constant, 6)}, tail growth {fmt(rep.growth_rate, 6)} (tends to 4)")
print(f"  divisor height {fmt(rep.observed.height, 6)} <= bound {fmt(rep.paper_bound, 6)}")

F = parse_polynomial("Y^2 - 2*Y + X")
rep = measure_eisenstein(expand_branch(F, 0, 20), F)
print(f"\n{F}: denominators are powers of 2, prime part {rep.observed.prime_exponents}")
