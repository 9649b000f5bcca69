"""Orthogonal-polynomial kernel.

Legendre polynomials P_n and the Jacobi family P_n^{(0,1)} are always evaluated
by forward three-term recurrence.  Gauss rules come from the eigen-decomposition
of the symmetric Jacobi matrix (Golub-Welsch).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

__all__ = [
    "QuadratureRule",
    "legendre_eval",
    "legendre_table",
    "legendre_endpoint_value",
    "legendre_endpoint_derivative",
    "jacobi01_eval",
    "jacobi01_table",
    "gauss_nodes",
    "pochhammer",
    "gamma_ratio_safe",
    "rgamma",
]


def legendre_table(nmax, x):
    """Return ``P[j] = P_j(x)`` for ``j = 0..nmax`` as an array of shape ``(nmax+1,) + x.shape``."""
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = x
    for n in range(1, nmax):
        out[n + 1] = ((2 * n + 1) * x * out[n] - n * out[n - 1]) / (n + 1)
    return out


def legendre_eval(n, x):
    """Evaluate the Legendre polynomial P_n at ``x`` (scalar or array)."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    x = np.asarray(x, dtype=float)
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    for k in range(n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return p if p.ndim else float(p)


def legendre_endpoint_value(n, side):
    """P_n(1) = 1 and P_n(-1) = (-1)^n."""
    if side == "right":
        return 1.0
    if side == "left":
        return float((-1) ** n)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def legendre_endpoint_derivative(n, side):
    """Closed form of P_n'(+-1): P_n'(1) = n(n+1)/2 and P_n'(-1) = (-1)^(n-1) n(n+1)/2."""
    value = n * (n + 1) / 2.0
    if side == "right":
        return value
    if side == "left":
        return -value if n % 2 == 0 else value
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


# Coefficients of x P_m^{(0,1)} = lo_m P_{m-1} + mid_m P_m + hi_m P_{m+1}.
def _j01_lo(m):
    return m / (2.0 * m + 1.0)


def _j01_mid(m):
    return 1.0 / ((2.0 * m + 1.0) * (2.0 * m + 3.0))


def _j01_hi(m):
    return (m + 2.0) / (2.0 * m + 3.0)


def jacobi01_table(nmax, x):
    """Return ``P[j] = P_j^{(0,1)}(x)`` for ``j = 0..nmax``."""
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    prev = np.zeros_like(x)
    for m in range(nmax):
        cur = out[m]
        out[m + 1] = ((x - _j01_mid(m)) * cur - _j01_lo(m) * prev) / _j01_hi(m)
        prev = cur
    return out


def jacobi01_eval(n, x):
    """Evaluate the Jacobi polynomial P_n^{(0,1)} (weight 1+x) at ``x``."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    x = np.asarray(x, dtype=float)
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    for m in range(n):
        prev, cur = cur, ((x - _j01_mid(m)) * cur - _j01_lo(m) * prev) / _j01_hi(m)
    return cur if cur.ndim else float(cur)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule on (-1, 1) for the weight ``(1+x)**beta`` (``beta = 0`` is Gauss-Legendre)."""

    nodes: np.ndarray
    weights: np.ndarray
    kind: str
    beta: float = 0.0

    def __len__(self):
        return len(self.nodes)

    def integrate(self, values):
        """Apply the rule to samples of the non-weight part of the integrand.

        ``values`` may carry extra trailing axes; the first axis runs over the nodes.
        """
        return np.tensordot(self.weights, np.asarray(values, dtype=float), axes=(0, 0))


def gauss_nodes(n, kind="gauss-legendre", beta=0.0):
    """Compute an ``n``-point Gauss rule by the Golub-Welsch algorithm.

    Parameters
    ----------
    n : int
        Number of nodes, ``n >= 1``.
    kind : {"gauss-legendre", "gauss-jacobi"}
        ``"gauss-jacobi"`` integrates against ``(1+x)**beta``.
    beta : float
        Exponent of the Jacobi weight, ``beta > -1``.  Ignored for Gauss-Legendre.

    Returns
    -------
    QuadratureRule
        Nodes strictly increasing in (-1, 1), positive weights.  Rules are
        cached, so their arrays are read-only.
    """
    if n < 1:
        raise ValueError("need at least one node")
    if kind in ("gauss-legendre", "legendre"):
        kind, beta = "gauss-legendre", 0.0
    elif kind in ("gauss-jacobi", "jacobi"):
        kind = "gauss-jacobi"
        if not beta > -1.0:
            raise ValueError(f"weight (1+x)^{beta} is not integrable on (-1, 1); need beta > -1")
    else:
        raise ValueError(f"unknown quadrature kind {kind!r}")
    return _golub_welsch(int(n), kind, float(beta))


@functools.lru_cache(maxsize=128)
def _golub_welsch(n, kind, beta):
    k = np.arange(n, dtype=float)
    s = 2.0 * k + beta  # alpha = 0
    with np.errstate(divide="ignore", invalid="ignore"):
        diag = beta**2 / (s * (s + 2.0))
    diag[0] = beta / (beta + 2.0)
    j = k[1:]
    sj = 2.0 * j + beta
    off = np.sqrt(4.0 * j * j * (j + beta) * (j + beta) / (sj * sj * (sj + 1.0) * (sj - 1.0)))

    if n == 1:
        nodes = diag.copy()
    else:
        nodes = eigh_tridiagonal(diag, off, eigvals_only=True)
    mass = 2.0 ** (beta + 1.0) / (beta + 1.0)
    nodes = np.sort(nodes)
    # Newton polish on the orthonormal recurrence, then Christoffel weights;
    # eigenvector-based weights lose relative accuracy near the endpoints.
    b = np.concatenate(([0.0], off, [0.0]))
    for _ in range(2):
        p, dp, ssq = _orthonormal_sweep(nodes, diag, b, mass, n)
        nodes = nodes - p / dp
    _, _, ssq = _orthonormal_sweep(nodes, diag, b, mass, n)
    weights = 1.0 / ssq
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(nodes, weights, kind, beta)


def _orthonormal_sweep(x, diag, b, mass, n):
    # returns p_n(x), p_n'(x) (up to a common scale) and sum_{k<n} p_k(x)^2
    p_prev = np.zeros_like(x)
    dp_prev = np.zeros_like(x)
    p = np.full_like(x, 1.0 / np.sqrt(mass))
    dp = np.zeros_like(x)
    ssq = p * p
    for k in range(n):
        p_next = ((x - diag[k]) * p - b[k] * p_prev) / b[k + 1] if k + 1 < n else (x - diag[k]) * p - b[k] * p_prev
        dp_next = (
            (p + (x - diag[k]) * dp - b[k] * dp_prev) / b[k + 1]
            if k + 1 < n
            else p + (x - diag[k]) * dp - b[k] * dp_prev
        )
        p_prev, p = p, p_next
        dp_prev, dp = dp, dp_next
        if k + 1 < n:
            ssq = ssq + p * p
    return p, dp, ssq


def pochhammer(t, ell):
    """Rising factorial (t)_ell = t (t+1) ... (t+ell-1); equal to 1 for ``ell = 0``."""
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    out = 1.0
    for i in range(ell):
        out *= t + i
    return out


def _is_pole(z):
    return z <= 0 and float(z).is_integer()


def rgamma(z):
    """Reciprocal gamma function, zero at the poles of Gamma."""
    if _is_pole(z):
        return 0.0
    if z > 0:
        return math.exp(-math.lgamma(z))
    # reflection: 1/Gamma(z) = Gamma(1-z) sin(pi z) / pi
    # reduce exactly before sin so the result keeps relative accuracy near poles
    n = round(z)
    sin_pi_z = math.sin(math.pi * (z - n)) * (-1.0 if n % 2 else 1.0)
    return math.exp(math.lgamma(1.0 - z)) * sin_pi_z / math.pi


def _gamma_sign(z):
    if z > 0:
        return 1.0
    return 1.0 if math.floor(z) % 2 == 0 else -1.0


def gamma_ratio_safe(a, b):
    """Return Gamma(a)/Gamma(b) through log-gamma.

    Returns 0 when ``b`` is a pole of Gamma (reciprocal-gamma convention) and
    raises ``ValueError`` when only ``a`` is.
    """
    a_pole, b_pole = _is_pole(a), _is_pole(b)
    if b_pole:
        if a_pole:
            raise ValueError(f"Gamma({a})/Gamma({b}): both arguments at poles")
        return 0.0
    if a_pole:
        raise ValueError(f"Gamma({a}) has a pole; ratio Gamma({a})/Gamma({b}) undefined")
    log_ratio = math.lgamma(a) - math.lgamma(b)
    return _gamma_sign(a) * _gamma_sign(b) * math.exp(log_ratio)
