"""An inverse-square potential with a closed-form spectrum.

-y'' + y/(1+x)^2 = lambda y with y(-1) = y(1) = 0 has eigenvalues
(j_k / 2)^2, where j_k are the positive zeros of J_nu with nu = sqrt(5)/2.
Uncorrected errors decay like N^(-(4 rho - 2)); the correction removes most of
the leading error term.

Run: python3 demos/04_bessel_reference.py
"""

import numpy as np

from slp.driver import solve_problem
from slp.problem import ProblemSpec
from slp.validation import reference_bessel

problem = ProblemSpec("0", "1", 2.0, "1,0", "1,0", name="inverse-square g=1")
ref = reference_bessel(1.0, 8)
print(f"{ref.family}: first eigenvalues {np.array2string(ref.eigenvalues[:4], precision=10)}")

errors = {}
for N in (64, 128, 256, 512):
    _, rep = solve_problem(problem, N, 8)
    errors[N] = (np.abs(rep.lambdas - ref.eigenvalues), np.abs(rep.mu - ref.eigenvalues))

print(f"\n{'N':>4s} {'err lambda_1':>13s} {'order':>7s} {'err mu_1':>10s} {'err lambda_8':>13s} {'err mu_8':>10s}")
previous = None
for N, (raw, corr) in errors.items():
    order = "" if previous is None else f"{np.log2(previous / raw[0]):.3f}"
    print(f"{N:4d} {raw[0]:13.3e} {order:>7s} {corr[0]:10.3e} {raw[7]:13.3e} {corr[7]:10.3e}")
    previous = raw[0]
print(f"\npredicted order 4 rho - 2 = {2 * np.sqrt(5):.4f}")
