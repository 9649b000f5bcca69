"""Generalized symmetric-definite eigensolve (A + Q) zeta = lambda B zeta."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .expansion import LegendreSeries

__all__ = ["EigenResult", "EigensolveError", "solve", "evaluate_eigenfunction", "legendre_coefficients"]

log = logging.getLogger(__name__)

# size of the leading block used to estimate lambda_1 for the shift
_PILOT_SIZE = 64
# fraction of ||zeta|| below which z_N(-1) is considered accidentally zero
_TRACE_GUARD = 1e-8


class EigensolveError(RuntimeError):
    pass


@dataclass
class EigenResult:
    """Lowest M eigenpairs of a :class:`~slp.assembly.SpectralSystem`.

    ``zeta[:, k-1]`` holds the coefficients of the k-th eigenfunction in the
    basis R_n, scaled so that zeta^T B zeta = 1 and the eigenfunction has a
    positive value (or, with y(-1) = 0, a positive slope) at x = -1.
    """

    lambdas: np.ndarray
    zeta: np.ndarray
    z_left: np.ndarray
    zprime_left: np.ndarray
    zhat_left: np.ndarray | None
    system: object
    residuals: np.ndarray

    @property
    def N(self):
        return self.system.N

    @property
    def M(self):
        return len(self.lambdas)

    def vector(self, k):
        """Coefficient vector of the k-th eigenpair (1-based)."""
        return self.zeta[:, k - 1]


def _shift(system):
    n0 = min(system.N, _PILOT_SIZE)
    K0 = system.Q[:n0, :n0].copy()
    K0[np.diag_indices(n0)] += system.A[:n0]
    lam0 = sla.eigh(K0, system.B[:n0, :n0], eigvals_only=True, subset_by_index=[0, 0])[0]
    # nested trial spaces: lambda_1^{(N)} <= lam0, and close to it
    return -lam0 + max(1.0, abs(lam0))


def solve(system, M, method="shift-invert", refine=True):
    """Return the M algebraically smallest eigenpairs.

    Parameters
    ----------
    system : SpectralSystem
    M : int
        Number of eigenpairs, ``1 <= M <= N``.
    method : {"shift-invert", "cholesky-B"}
        ``"shift-invert"`` solves B zeta = mu (A + Q + s B) zeta for the largest mu
        with a shift s making the right-hand matrix positive definite, so that the
        smallest lambda = 1/mu - s are obtained to accuracy relative to themselves
        rather than to the largest eigenvalue (which grows like N^4).
        ``"cholesky-B"`` is the plain reduction with B = L L^T.
    refine : bool
        Replace each eigenvalue by the Rayleigh quotient of its computed vector.
        The quotient is accurate to a few ulp of lambda_k, whereas the raw value
        carries an error proportional to the largest computed eigenvalue.
    """
    N = system.N
    if not 1 <= M <= N:
        raise ValueError(f"need 1 <= M <= N, got M={M}, N={N}")
    K = system.stiffness
    B = system.B
    try:
        sla.cholesky(B, lower=True)
    except sla.LinAlgError as exc:
        raise EigensolveError("B is not positive definite; assembly is inconsistent") from exc

    if method == "cholesky-B":
        lambdas, vecs = sla.eigh(K, B, subset_by_index=[0, M - 1])
    elif method == "shift-invert":
        shift = _shift(system)
        for _ in range(20):
            S = K + shift * B
            try:
                sla.cholesky(S, lower=True)
                break
            except sla.LinAlgError:
                shift = 4.0 * shift + 1.0
                log.debug("shifted stiffness not definite, retrying with shift %g", shift)
        else:
            raise EigensolveError("could not find a shift making A + Q + s B positive definite")
        mu, vecs = sla.eigh(B, S, subset_by_index=[N - M, N - 1])
        mu, vecs = mu[::-1], vecs[:, ::-1]
        if np.any(mu <= 0):
            raise EigensolveError("nonpositive inverse eigenvalue; shift is not below the spectrum")
        lambdas = 1.0 / mu - shift
    else:
        raise ValueError(f"unknown method {method!r}")

    order = np.argsort(lambdas)
    lambdas, vecs = lambdas[order], vecs[:, order]
    Bv = B @ vecs
    norms = np.sqrt(np.einsum("ij,ij->j", vecs, Bv))
    vecs = vecs / norms
    Bv = Bv / norms
    if refine:
        lambdas = np.einsum("ij,ij->j", vecs, K @ vecs)

    coeffs = system.coeffs
    r_left = coeffs.values_left()[:N]
    rp_left = coeffs.derivatives_left()[:N]
    z_left = r_left @ vecs
    zp_left = rp_left @ vecs
    if coeffs.dirichlet_left:
        signs = np.sign(zp_left)
    else:
        signs = np.sign(z_left)
        tiny = np.abs(z_left) < _TRACE_GUARD * np.linalg.norm(vecs, axis=0)
        if np.any(tiny):
            log.warning("z_N(-1) nearly zero for k=%s; fixing sign by z_N'(-1)", list(np.nonzero(tiny)[0] + 1))
            signs[tiny] = np.sign(zp_left[tiny])
    signs[signs == 0] = 1.0
    vecs = vecs * signs
    Bv = Bv * signs
    z_left, zp_left = z_left * signs, zp_left * signs

    resid = np.linalg.norm(K @ vecs - Bv * lambdas, axis=0) / (
        np.maximum(np.abs(lambdas), 1.0) * np.linalg.norm(Bv, axis=0)
    )
    return EigenResult(
        lambdas=lambdas,
        zeta=vecs,
        z_left=z_left,
        zprime_left=zp_left,
        zhat_left=zp_left.copy() if coeffs.dirichlet_left else None,
        system=system,
        residuals=resid,
    )


def legendre_coefficients(zeta, coeffs):
    """Legendre coefficients (length N+2) of sum_n zeta_n R_n."""
    zeta = np.asarray(zeta, dtype=float)
    N = len(zeta)
    a = np.zeros(N + 2)
    a[:N] += coeffs.xi[:N] * zeta
    a[1 : N + 1] += coeffs.eta[:N] * zeta
    a[2 : N + 2] += coeffs.theta[:N] * zeta
    return a


def evaluate_eigenfunction(result, k, x):
    """Values of the k-th approximate eigenfunction z_N at ``x``."""
    if not 1 <= k <= result.M:
        raise ValueError(f"k must lie in 1..{result.M}")
    a = legendre_coefficients(result.vector(k), result.system.coeffs)
    return LegendreSeries(a)(x)
