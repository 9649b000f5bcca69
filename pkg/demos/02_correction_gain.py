"""How much the a-posteriori correction buys.

A corrected eigenvalue mu_k(N) is compared with the uncorrected lambda_k(2N),
which costs a system twice as large.  The reference is mu_k at N = 2560.
Below N = 4k the correction is not reliable and the report flags it.

Run: python3 demos/02_correction_gain.py
"""

from slp.benchmarks import benchmark
from slp.driver import solve_problem

for name, param, k in [("quadratic-neumann", 0.65, 15), ("xcos-dirichlet-neumann", 1.5, 25)]:
    problem = benchmark(name, param)
    ref = solve_problem(problem, 2560, k)[1].mu[k - 1]
    print(f"{problem.name}, k = {k}, reference {ref:.12f}")
    print(f"{'N':>5s} {'|lambda(N) - ref|':>18s} {'|lambda(2N) - ref|':>19s} {'|mu(N) - ref|':>14s}  note")
    for N in (40, 80, 160, 320):
        _, rep = solve_problem(problem, N, k)
        _, rep2 = solve_problem(problem, 2 * N, k)
        print(
            f"{N:5d} {abs(rep.lambdas[k - 1] - ref):18.3e} {abs(rep2.lambdas[k - 1] - ref):19.3e}"
            f" {abs(rep.mu[k - 1] - ref):14.3e}  {'N < 4k, low confidence' if rep.low_confidence[k - 1] else ''}"
        )
    print()
