"""Sample points on a curve and compare lgcd/r with h(alpha)/n.

The same run is available as ``curveheights experiment``; this script shows the
library calls and prints the largest-height points.
"""

from curveheights import ExperimentConfig, parse_polynomial, run_experiment

F = parse_polynomial("Y^3 - X*Y - X^3")
res = run_experiment(ExperimentConfig(F, sample_count=20, rng_seed=1, name="mixed"))
rows = sorted(res.rows(), key=lambda r: float(r["h_alpha"]))
print(f"{F}: r = {res.summary['r']}, {res.summary['points']} points, "
      f"dichotomy consistent: {res.summary['dichotomy_consistent']}")
print(f"{'alpha':>24}  {'h(alpha)/n':>12}  {'lgcd/r':>12}")
for r in rows[-8:]:
    alpha = f"{r['alpha_num']}/{r['alpha_den']}"
    print(f"{alpha:>24}  {float(r['h_alpha']) / int(r['n']):12.6f}  {float(r['lgcd']) / int(r['r']):12.6f}")
print("median relative deviation over the top decile:", res.summary["top_decile_relative_deviation_median"])
