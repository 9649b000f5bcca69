"""Adaptive Legendre projection and the operator functional calculus.

Coefficient functions are projected onto Legendre series until the tail drops
below the chop tolerance.  Multiplying by a function then becomes a matrix
function of the tridiagonal Legendre operator, which is how the potential
matrix is built without pointwise quadrature.

Run: python3 demos/06_legendre_projection.py
"""

import numpy as np

from slp.expansion import TridiagonalOperator, apply_operator_function, project_legendre
from slp.polyops import gauss_nodes, legendre_table

for text in ("exp(-x)", "cos(4*pi*x)", "1/(1+25*x^2)"):
    series = project_legendre(text)
    print(f"{text:14s}: {len(series.coeffs):4d} coefficients, tail {abs(series.coeffs[-1]):.1e}")

# Moments m_j = int w P_j of a weight w map to the moments of g * w under g(H).
# With w = P_3 the result is int exp(-x) P_3 P_j, checked against quadrature.
series = project_legendre("exp(-x)")
count = 12
H = TridiagonalOperator("H", count + len(series.coeffs) + 2)
moments = np.zeros(H.size)
moments[3] = 2.0 / 7.0
result = apply_operator_function(series, H, moments, count)
rule = gauss_nodes(40)
P = legendre_table(count - 1, rule.nodes)
exact = P @ (rule.weights * np.exp(-rule.nodes) * P[3])
print(f"\nmoments of exp(-x) P_3 through the operator: max error {np.max(np.abs(result - exact)):.1e}")
