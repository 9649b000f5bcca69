"""Classify the left endpoint of each benchmark and solve one of them.

The potential is q(x) = f(x) + g(x)/(1+x)^gamma.  The exponent gamma and the
sign of g(-1) decide the endpoint class and which correction applies.

Run: python3 demos/01_classify_and_solve.py
"""

from slp.benchmarks import BENCHMARKS, DEFAULT_PARAMETERS, benchmark
from slp.correction import select_algorithm
from slp.driver import solve_problem

print(f"{'problem':34s} {'endpoint':20s} {'correction':10s} {'rate p':>7s}")
for name in BENCHMARKS:
    for param in DEFAULT_PARAMETERS[name]:
        problem = benchmark(name, param)
        consts = select_algorithm(problem)
        print(f"{problem.name:34s} {problem.endpoint_class.value:20s} {consts.algorithm:10s} {consts.p:7.3f}")

# Lowest eigenvalues of one problem, with and without the correction.
problem = benchmark("quadratic-neumann", 0.4)
_, report = solve_problem(problem, N=200, M=6)
print(f"\n{problem.name}, N = 200")
print(f"{'k':>2s} {'lambda':>22s} {'mu (corrected)':>22s}")
for row in report.rows():
    print(f"{row['k']:2d} {row['lambda']:22.14f} {row['mu']:22.14f}")
