"""Trial basis R_n = xi_n P_n + eta_n P_{n+1} + theta_n P_{n+2}.

Each R_n satisfies both boundary conditions.  The triple is scaled so that
``max(|xi|, |eta|, |theta|) = 1`` with the first nonzero entry positive.  With a
Dirichlet condition at x = -1 one also has R_n = (1+x) U_n where
U_n = xi_n P_n^{(0,1)} + theta_n P_{n+1}^{(0,1)}.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .polyops import jacobi01_table, legendre_table
from .problem import BoundaryCondition

__all__ = [
    "BasisCoefficients",
    "DegenerateBasisError",
    "basis_coefficients",
    "basis_left_traces",
    "build_conversion_matrices",
]


class DegenerateBasisError(ArithmeticError):
    pass


def _raw_triples(n, bc_left, bc_right):
    aa, ba = bc_left.alpha, bc_left.beta
    ab, bb = bc_right.alpha, bc_right.beta
    n = np.asarray(n, dtype=float)
    cross = aa * bb + ab * ba
    if cross == 0.0:
        xi = -(aa - (n + 2) * (n + 3) / 2.0 * ba)
        eta = np.zeros_like(n)
        theta = aa - n * (n + 1) / 2.0 * ba
    else:
        skew = aa * bb - ab * ba
        xi = 2 * aa * ab + (n + 2) ** 2 * (skew - (n + 1) * (n + 3) / 2.0 * ba * bb)
        eta = (2 * n + 3) * cross
        theta = -(2 * aa * ab + (n + 1) ** 2 * (skew - n * (n + 2) / 2.0 * ba * bb))
    return xi, eta, theta, cross == 0.0


def _normalize(xi, eta, theta):
    triple = np.stack([xi, eta, theta])
    scale = np.max(np.abs(triple), axis=0)
    if np.any(scale == 0):
        bad = int(np.nonzero(scale == 0)[0][0])
        raise DegenerateBasisError(f"basis triple vanishes identically at n = {bad}")
    triple = triple / scale
    nonzero = triple != 0
    first = np.argmax(nonzero, axis=0)
    sign = np.sign(triple[first, np.arange(triple.shape[1])])
    return triple * sign + 0.0  # no negative zeros


@functools.lru_cache(maxsize=64)
def _triples_cached(count, bc_left, bc_right):
    xi, eta, theta, symmetric = _raw_triples(np.arange(count), bc_left, bc_right)
    triple = _normalize(np.atleast_1d(xi), np.atleast_1d(eta), np.atleast_1d(theta))
    triple.setflags(write=False)
    return triple, symmetric


@dataclass(frozen=True)
class BasisCoefficients:
    """Normalized triples for ``n = 0 .. count-1`` under a pair of boundary conditions."""

    xi: np.ndarray
    eta: np.ndarray
    theta: np.ndarray
    symmetric_bc: bool
    bc_left: BoundaryCondition
    bc_right: BoundaryCondition

    @classmethod
    def build(cls, count, bc_left, bc_right):
        triple, symmetric = _triples_cached(int(count), bc_left, bc_right)
        return cls(triple[0], triple[1], triple[2], symmetric, bc_left, bc_right)

    def __len__(self):
        return len(self.xi)

    @property
    def dirichlet_left(self):
        return self.bc_left.is_dirichlet

    def triple(self, n):
        return float(self.xi[n]), float(self.eta[n]), float(self.theta[n])

    def values_left(self):
        """R_n(-1) for every n."""
        n = np.arange(len(self))
        return (-1.0) ** n * (self.xi - self.eta + self.theta)

    def values_right(self):
        return self.xi + self.eta + self.theta

    def derivatives_left(self):
        """R_n'(-1) for every n, from P_j'(-1) = (-1)^(j-1) j(j+1)/2."""
        n = np.arange(len(self), dtype=float)
        inner = (
            self.xi * n * (n + 1) / 2
            - self.eta * (n + 1) * (n + 2) / 2
            + self.theta * (n + 2) * (n + 3) / 2
        )
        return -((-1.0) ** n) * inner

    def derivatives_right(self):
        n = np.arange(len(self), dtype=float)
        return self.xi * n * (n + 1) / 2 + self.eta * (n + 1) * (n + 2) / 2 + self.theta * (n + 2) * (n + 3) / 2

    def u_values_left(self):
        """U_n(-1) = R_n'(-1); only meaningful with a Dirichlet condition at x = -1."""
        if not self.dirichlet_left:
            raise ValueError("U_n is defined only for a Dirichlet condition at x = -1")
        return self.derivatives_left()

    def evaluate(self, x, count=None):
        """Matrix ``R[n, i] = R_n(x_i)`` for ``n < count``."""
        count = len(self) if count is None else count
        P = legendre_table(count + 1, x)
        return (
            self.xi[:count, None] * P[:count]
            + self.eta[:count, None] * P[1 : count + 1]
            + self.theta[:count, None] * P[2 : count + 2]
        )

    def evaluate_u(self, x, count=None):
        """Matrix ``U[n, i] = U_n(x_i)`` (Dirichlet-left only)."""
        if not self.dirichlet_left:
            raise ValueError("U_n is defined only for a Dirichlet condition at x = -1")
        count = len(self) if count is None else count
        J = jacobi01_table(count, x)
        return self.xi[:count, None] * J[:count] + self.theta[:count, None] * J[1 : count + 1]


def basis_coefficients(n, bc_left, bc_right):
    """Return the normalized ``(xi_n, eta_n, theta_n)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return BasisCoefficients.build(n + 1, bc_left, bc_right).triple(n)


def basis_left_traces(n, coeffs, with_u=True):
    """Return ``(R_n(-1), R_n'(-1), U_n(-1))``.

    U_n exists only under a Dirichlet condition at x = -1; pass ``with_u=False``
    otherwise (the third entry is then None).
    """
    if with_u and not coeffs.dirichlet_left:
        raise ValueError("U_n(-1) requested without a Dirichlet condition at x = -1")
    r = float(coeffs.values_left()[n])
    rp = float(coeffs.derivatives_left()[n])
    return r, rp, (rp if with_u else None)


def build_conversion_matrices(N, coeffs):
    """Sparse R_N ((N+2) x N) and, for Dirichlet-left, Rtilde_N ((N+1) x N).

    Column n of R_N carries (xi_n, eta_n, theta_n) in rows n, n+1, n+2; column n
    of Rtilde_N carries (xi_n, theta_n) in rows n, n+1.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if len(coeffs) < N:
        raise ValueError(f"need at least {N} basis triples, have {len(coeffs)}")
    cols = np.arange(N)
    R = sp.csc_matrix(
        (
            np.concatenate([coeffs.xi[:N], coeffs.eta[:N], coeffs.theta[:N]]),
            (np.concatenate([cols, cols + 1, cols + 2]), np.concatenate([cols, cols, cols])),
        ),
        shape=(N + 2, N),
    )
    R.eliminate_zeros()
    Rt = None
    if coeffs.dirichlet_left:
        Rt = sp.csc_matrix(
            (
                np.concatenate([coeffs.xi[:N], coeffs.theta[:N]]),
                (np.concatenate([cols, cols + 1]), np.concatenate([cols, cols])),
            ),
            shape=(N + 1, N),
        )
        Rt.eliminate_zeros()
    return R, Rt
