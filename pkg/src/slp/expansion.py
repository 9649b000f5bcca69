"""Legendre projection of coefficient functions and functions of the tridiagonal
moment operators.

If ``v`` holds the moments ``v_m = <phi, P_m>`` of some weight ``phi``, then
``H v`` holds the moments of ``x * phi`` (Legendre three-term recurrence), and
``g(H) v`` those of ``g * phi``.  The same holds for ``Htilde`` with respect to the
Jacobi polynomials P_m^{(0,1)}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .expression import Expr, parse
from .polyops import gauss_nodes, legendre_table

__all__ = [
    "LegendreSeries",
    "NoDecayError",
    "project_legendre",
    "TridiagonalOperator",
    "apply_operator_function",
    "OperatorSizeError",
]

_EPS = np.finfo(float).eps


class NoDecayError(RuntimeError):
    """The Legendre coefficients did not decay before the node cap was reached."""


class OperatorSizeError(ValueError):
    pass


@dataclass(frozen=True)
class LegendreSeries:
    """Truncated Legendre expansion ``sum_l coeffs[l] * P_l(x)``."""

    coeffs: np.ndarray
    tol: float = 1e-15
    nodes_used: int = field(default=0, compare=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float, ndmin=1)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __len__(self):
        return len(self.coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        # Clenshaw for the Legendre recurrence
        b1 = np.zeros_like(x)
        b2 = np.zeros_like(x)
        for k in range(self.degree, 0, -1):
            alpha = (2 * k + 1) / (k + 1) * x
            beta = -(k + 1) / (k + 2)
            b1, b2 = self.coeffs[k] + alpha * b1 + beta * b2, b1
        out = self.coeffs[0] + x * b1 - 0.5 * b2
        return out if out.ndim else float(out)

    def is_zero(self):
        return not np.any(self.coeffs)

    def inner_products(self, count):
        """Moments ``<s, P_m> = 2 c_m / (2m+1)`` for ``m < count``, zero-padded."""
        out = np.zeros(count)
        n = min(count, len(self.coeffs))
        m = np.arange(n)
        out[:n] = 2.0 * self.coeffs[:n] / (2 * m + 1)
        return out


def _noise_floor(n_nodes, degrees):
    # roundoff level of a quadrature-computed coefficient of degree l
    return _EPS * (2 * degrees + 1) / 2.0 * np.sqrt(n_nodes)


def project_legendre(expr, tol=1e-15, start=32, cap=4096):
    """Project an expression onto a Legendre series.

    Gauss-Legendre rules of ``start, 2*start, ...`` nodes are tried until the
    last three computed coefficients fall below ``tol`` times the largest one
    (or below the roundoff level of the quadrature, whichever is larger).  The
    series is then cut after its last significant coefficient.

    Raises
    ------
    NoDecayError
        If ``cap`` nodes do not resolve the function (non-analytic input).
    """
    expr = parse(expr)
    if tol < 1e-15:
        raise ValueError("tol must be at least 1e-15")
    if expr.is_constant():
        value = float(expr(0.0))
        return LegendreSeries([value] if value != 0.0 else [0.0], tol, 0)

    n = start
    while n <= cap:
        rule = gauss_nodes(n)
        values = expr(rule.nodes)
        if not np.all(np.isfinite(values)):
            raise ValueError(f"expression {expr} is not finite on [-1, 1]")
        P = legendre_table(n - 1, rule.nodes)
        ell = np.arange(n)
        c = (2 * ell + 1) / 2.0 * (P @ (rule.weights * values))
        scale = np.max(np.abs(c))
        if scale == 0.0:
            return LegendreSeries([0.0], tol, n)
        thresh = np.maximum(tol, _noise_floor(n, ell)) * scale
        if np.all(np.abs(c[-3:]) <= thresh[-3:]):
            significant = np.nonzero(np.abs(c) > thresh)[0]
            last = significant[-1] if significant.size else 0
            return LegendreSeries(c[: last + 1], tol, n)
        n *= 2
    raise NoDecayError(
        f"Legendre coefficients of {expr} did not decay below {tol:g} with {cap} nodes; "
        "the function is probably not analytic on [-1, 1]"
    )


@dataclass(frozen=True)
class TridiagonalOperator:
    """Truncation to ``size`` rows of the moment-shift operator.

    ``kind="H"`` acts on Legendre moments, ``kind="Htilde"`` on P^{(0,1)} moments.
    """

    kind: str
    size: int

    def __post_init__(self):
        if self.kind not in ("H", "Htilde"):
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.size < 1:
            raise ValueError("operator size must be positive")

    def diagonals(self):
        """Return ``(lower, main, upper)``: entries (m, m-1), (m, m), (m, m+1) by row m."""
        m = np.arange(self.size, dtype=float)
        lower = m / (2 * m + 1)
        if self.kind == "H":
            main = np.zeros(self.size)
            upper = (m + 1) / (2 * m + 1)
        else:
            main = 1.0 / ((2 * m + 1) * (2 * m + 3))
            upper = (m + 2) / (2 * m + 3)
        return lower, main, upper

    def matvec(self, v):
        """Apply the truncated operator; entries beyond ``size`` are taken as zero."""
        v = np.asarray(v, dtype=float)
        lower, main, upper = self.diagonals()
        out = main[:, None] * v if v.ndim == 2 else main * v
        if v.ndim == 2:
            out[1:] += lower[1:, None] * v[:-1]
            out[:-1] += upper[:-1, None] * v[1:]
        else:
            out[1:] += lower[1:] * v[:-1]
            out[:-1] += upper[:-1] * v[1:]
        return out

    def dense(self):
        lower, main, upper = self.diagonals()
        return np.diag(main) + np.diag(lower[1:], -1) + np.diag(upper[:-1], 1)


def apply_operator_function(series, op, v, count):
    """First ``count`` entries of ``g(op) v`` where ``series`` is the Legendre series of g.

    ``P_l(op) v`` is generated by the Legendre recurrence applied to vectors,
    whichever operator kind is used, and accumulated with the series coefficients.
    Exact up to roundoff provided ``op.size >= count + len(series) + 2``.
    """
    coeffs = series.coeffs
    size = op.size
    if size < count + len(coeffs) + 2:
        raise OperatorSizeError(
            f"operator size {size} too small for {count} outputs of a degree-{len(coeffs) - 1} function; "
            f"need at least {count + len(coeffs) + 2}"
        )
    v = np.asarray(v, dtype=float)
    if v.shape[0] < size:
        raise OperatorSizeError(f"input sequence has {v.shape[0]} entries, operator size is {size}")
    w_prev = np.zeros_like(v[:size])
    w = v[:size].copy()
    acc = coeffs[0] * w
    for ell in range(len(coeffs) - 1):
        w_next = (2 * ell + 1) / (ell + 1) * op.matvec(w) - ell / (ell + 1) * w_prev
        w_prev, w = w, w_next
        acc += coeffs[ell + 1] * w
    return acc[:count]
