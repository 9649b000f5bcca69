"""The left-endpoint trace ratio for gamma = 2.

For gamma = 2 the correction uses the derivative trace z'(-1) of the discrete
eigenfunction.  The ratio of the partial trace at size N to the converged
trace is expected to approach (2 rho - 1) / rho^2.  This demo measures it.

Run: python3 demos/05_trace_ratio.py
"""

from slp.benchmarks import benchmark
from slp.correction import kappa_ratio_study

problem = benchmark("runge-sinh-robin", 0.75)
study = kappa_ratio_study(problem, [50, 100, 200, 400], N_ref=2000)
print(f"{problem.name}: expected limit {study.kappa:.6f}")
for N, ratio in zip(study.N_list, study.ratios):
    print(f"  N = {N:4d}: ratio {ratio:.6f}  (relative gap {abs(ratio / study.kappa - 1):.1e})")
