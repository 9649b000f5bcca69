"""Solver-independent oracles.

* direct Gauss quadrature of the moment and Galerkin matrices;
* closed-form spectra for q = 0 under Dirichlet/Neumann conditions;
* Bessel-zero spectra for q = g/(1+x)^2 with constant g and Dirichlet conditions;
* empirical convergence orders from self-convergence differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .basis import BasisCoefficients
from .polyops import gauss_nodes, jacobi01_table, legendre_table

__all__ = [
    "ReferenceSpectrum",
    "oracle_entry",
    "oracle_B",
    "oracle_Q",
    "reference_trig",
    "reference_bessel",
    "bessel_j",
    "bessel_j_zeros",
    "estimate_order",
    "DEFAULT_ORACLE_NODES",
]

DEFAULT_ORACLE_NODES = 384


@dataclass(frozen=True)
class ReferenceSpectrum:
    """The first K exact (or externally tabulated) eigenvalues."""

    family: str
    eigenvalues: np.ndarray
    source: str = ""

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=float)
        if np.any(np.diff(ev) <= 0):
            raise ValueError("reference eigenvalues must be strictly increasing")
        object.__setattr__(self, "eigenvalues", ev)

    def __len__(self):
        return len(self.eigenvalues)


# ---------------------------------------------------------------- quadrature oracles


def _weight_rule(beta, nodes):
    if beta == 0:
        return gauss_nodes(nodes)
    return gauss_nodes(nodes, "gauss-jacobi", beta)


def oracle_entry(m, n, problem, kind="legendre", nodes=DEFAULT_ORACLE_NODES):
    """One moment of the potential by direct quadrature.

    ``kind="legendre"``: int q P_m P_n with q = f + g (1+x)^(-gamma).
    ``kind="jacobi01"``: int (1+x)^(2-gamma) g P_m^{(0,1)} P_n^{(0,1)}.
    """
    top = max(m, n)
    if kind == "legendre":
        rule = gauss_nodes(nodes)
        P = legendre_table(top, rule.nodes)
        total = rule.integrate(problem.f(rule.nodes) * P[m] * P[n])
        if not problem.g_is_zero:
            sing = _weight_rule(-problem.gamma, nodes)
            Ps = legendre_table(top, sing.nodes)
            total += sing.integrate(problem.g(sing.nodes) * Ps[m] * Ps[n])
        return float(total)
    if kind == "jacobi01":
        rule = _weight_rule(2.0 - problem.gamma, nodes)
        J = jacobi01_table(top, rule.nodes)
        return float(rule.integrate(problem.g(rule.nodes) * J[m] * J[n]))
    raise ValueError(f"unknown oracle kind {kind!r}")


def oracle_B(N, bc_left, bc_right, nodes=DEFAULT_ORACLE_NODES):
    """Gram matrix int R_m R_n by Gauss-Legendre quadrature."""
    coeffs = BasisCoefficients.build(N + 4, bc_left, bc_right)
    rule = gauss_nodes(nodes)
    R = coeffs.evaluate(rule.nodes, N)
    return (R * rule.weights) @ R.T


def oracle_Q(problem, N, nodes=DEFAULT_ORACLE_NODES):
    """int q R_m R_n by Gauss quadrature with the singular factor in the weight.

    For gamma >= 1 the integrand is rewritten with R_n = (1+x) U_n so that the
    weight (1+x)^(2-gamma) is integrable.
    """
    coeffs = BasisCoefficients.build(N + 4, problem.bc_left, problem.bc_right)
    rule = gauss_nodes(nodes)
    R = coeffs.evaluate(rule.nodes, N)
    f_vals = problem.f(rule.nodes)
    g_vals = problem.g(rule.nodes)
    if problem.gamma == 0:
        return (R * (rule.weights * (f_vals + g_vals))) @ R.T
    Q = (R * (rule.weights * f_vals)) @ R.T
    if problem.g_is_zero:
        return Q
    if problem.gamma < 1:
        sing = gauss_nodes(nodes, "gauss-jacobi", -problem.gamma)
        Rs = coeffs.evaluate(sing.nodes, N)
        return Q + (Rs * (sing.weights * problem.g(sing.nodes))) @ Rs.T
    if not coeffs.dirichlet_left:
        raise ValueError("gamma >= 1 needs a Dirichlet condition at x = -1")
    sing = _weight_rule(2.0 - problem.gamma, nodes)
    U = coeffs.evaluate_u(sing.nodes, N)
    return Q + (U * (sing.weights * problem.g(sing.nodes))) @ U.T


# ---------------------------------------------------------------- analytic spectra


def reference_trig(bc_left, bc_right, K):
    """Eigenvalues of -y'' = lambda y on (-1, 1) under Dirichlet/Neumann conditions."""
    kinds = []
    for bc in (bc_left, bc_right):
        if bc.is_dirichlet:
            kinds.append("D")
        elif bc.is_neumann:
            kinds.append("N")
        else:
            raise ValueError(f"closed form needs Dirichlet or Neumann conditions, got ({bc})")
    k = np.arange(1, K + 1, dtype=float)
    pair = "".join(kinds)
    if pair == "DD":
        lam = (k * np.pi / 2) ** 2
    elif pair == "NN":
        lam = ((k - 1) * np.pi / 2) ** 2
    else:
        lam = ((2 * k - 1) * np.pi / 4) ** 2
    return ReferenceSpectrum(f"trig-{pair}", lam, "closed form")


# Bessel J_nu: ascending series for small x, Schlafli's integral otherwise.
_SERIES_LIMIT = 5.0


def _bessel_series(nu, x):
    half = 0.5 * x
    # log form keeps the leading term when x/2 underflows
    term = math.exp(nu * (math.log(x) - math.log(2.0)) - math.lgamma(nu + 1.0))
    total = term
    k = 0
    while True:
        k += 1
        term *= -(half * half) / (k * (k + nu))
        total += term
        if abs(term) <= 1e-17 * abs(total) and k > 2:
            return total


def _bessel_integral(nu, x):
    # J_nu(x) = (1/pi) int_0^pi cos(nu t - x sin t) dt
    #           - sin(nu pi)/pi int_0^inf exp(-x sinh t - nu t) dt
    n1 = int(x) + 64
    r1 = gauss_nodes(n1)
    t = 0.5 * math.pi * (r1.nodes + 1.0)
    first = 0.5 * math.pi * r1.integrate(np.cos(nu * t - x * np.sin(t))) / math.pi
    s = math.sin(nu * math.pi)
    if s == 0.0:
        return float(first)
    # integrand below 1e-18 once x sinh t + nu t > 41.5
    upper = math.asinh(41.5 / x)
    r2 = gauss_nodes(96)
    u = 0.5 * upper * (r2.nodes + 1.0)
    second = 0.5 * upper * r2.integrate(np.exp(-x * np.sinh(u) - nu * u))
    return float(first - s / math.pi * second)


def bessel_j(nu, x):
    """Bessel function of the first kind J_nu(x) for nu >= 0, x >= 0."""
    if nu < 0 or x < 0:
        raise ValueError("bessel_j needs nu >= 0 and x >= 0")
    if x == 0:
        return 1.0 if nu == 0 else 0.0
    if x <= _SERIES_LIMIT:
        return _bessel_series(nu, x)
    return _bessel_integral(nu, x)


def bessel_j_zeros(nu, K, step=0.25):
    """First K positive zeros of J_nu by bracketing and bisection."""
    zeros = []
    a = step
    fa = bessel_j(nu, a)
    while len(zeros) < K:
        b = a + step
        fb = bessel_j(nu, b)
        if fa == 0.0:
            zeros.append(a)
        elif fa * fb < 0:
            zeros.append(bisect(lambda s: bessel_j(nu, s), a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200))
        a, fa = b, fb
    return np.array(zeros[:K])


def reference_bessel(g_left, K):
    """Spectrum of -y'' + g/(1+x)^2 y = lambda y, y(-1) = y(1) = 0, constant g > 0.

    Eigenfunctions are sqrt(1+x) J_nu(sqrt(lambda) (1+x)) with nu = rho - 1/2,
    so lambda_k = (j_{nu,k} / 2)^2.
    """
    if not g_left > 0:
        raise ValueError("need g > 0")
    rho = (1.0 + math.sqrt(1.0 + 4.0 * g_left)) / 2.0
    if abs(rho - round(rho)) < 1e-12:
        raise ValueError(f"rho = {rho:g} is an integer; the correction theory does not apply")
    nu = rho - 0.5
    j = bessel_j_zeros(nu, K)
    return ReferenceSpectrum(f"bessel-nu={nu:.15g}", (j / 2.0) ** 2, "Bessel zeros")


# ---------------------------------------------------------------- orders


def estimate_order(deltas, floor=0.0):
    """Pairwise log2 ratios of successive self-convergence differences.

    Returns ``(orders, saturated)``; a pair is saturated (order NaN) when either
    difference is nonpositive or not above ``floor``, i.e. it sits at roundoff.
    """
    d = np.asarray(deltas, dtype=float)
    if d.ndim != 1 or len(d) < 2:
        raise ValueError("need at least two differences")
    a, b = d[:-1], d[1:]
    saturated = (a <= floor) | (b <= floor) | ~np.isfinite(a) | ~np.isfinite(b)
    with np.errstate(divide="ignore", invalid="ignore"):
        orders = np.where(saturated, np.nan, np.log2(a / b))
    return orders, saturated
