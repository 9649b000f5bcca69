"""Empirical convergence orders from a doubling sequence N, 2N+1, 4N+3, ...

For a potential singular at x = -1 the eigenvalue error decays only
algebraically, like N^(-p).  The table estimates p from successive differences
and shows the faster decay of the corrected values.

Run: python3 demos/03_convergence_orders.py
"""

from slp.benchmarks import benchmark
from slp.driver import convergence_table, doubling_sequence

for name, param in [("cosine-robin", 0.5), ("log-dirichlet", 1.0)]:
    problem = benchmark(name, param)
    table = convergence_table(problem, doubling_sequence(49, 4), [5, 10, 20])
    print(f"{problem.name}: predicted order p = {table.constants.p:.4f}")
    print(f"{'N':>4s} {'k':>3s} {'delta':>11s} {'order':>7s} {'delta corr.':>12s} {'order corr.':>12s}")
    for row in table.rows():
        order = "" if row["order_raw"] is None else f"{row['order_raw']:.3f}"
        order_c = "sat." if row["saturated_corrected"] else (
            "" if row["order_corrected"] is None else f"{row['order_corrected']:.3f}"
        )
        print(
            f"{row['N']:4d} {row['k']:3d} {row['delta_raw']:11.4e} {order:>7s}"
            f" {row['delta_corrected']:12.4e} {order_c:>12s}"
        )
    print()
