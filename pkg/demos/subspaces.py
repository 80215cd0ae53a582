"""Heights of rational subspaces and small solutions of linear systems."""

from curveheights import orthogonal_complement, small_kernel_vector, subspace_height
from curveheights.reals import fmt

W = [[1, 0, 1], [0, 1, 1]]
perp = orthogonal_complement(W)
print("W =", W, " Pluecker", subspace_height(W).plucker, " h_s =", fmt(subspace_height(W).h_s))
print("W^perp =", perp, " h_s =", fmt(subspace_height(perp).h_s))

forms = [[1, 2, 3], [3, 2, 1]]
x, rep = small_kernel_vector(forms)
print(f"\nsmall solution of {forms}: {x}, h_p = {fmt(rep.h_p)} <= {fmt(rep.bound)} ({rep.method})")
