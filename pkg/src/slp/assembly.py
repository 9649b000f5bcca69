"""Assembly of the Galerkin matrices A_N (diagonal), B_N (pentadiagonal) and Q_N.

Q_N = R^T Qhat R for gamma < 1, where Qhat holds the Legendre moments
int q P_m P_n.  For gamma in [1, 2] the singular part is written through
R_n = (1+x) U_n, giving Q_N = R^T Fhat R + Rtilde^T Gtilde Rtilde with
Gtilde the P^{(0,1)} moments of (1+x)^(2-gamma) g.  All moment matrices are
generated column by column from their first column with the three-term
recurrences of the corresponding polynomial family.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .basis import BasisCoefficients
from .expansion import LegendreSeries, TridiagonalOperator, apply_operator_function, project_legendre
from .expression import BinOp
from .problem import ProblemSpec

__all__ = [
    "AssemblyError",
    "SpectralSystem",
    "assemble_A",
    "assemble_B",
    "singular_moments",
    "assemble_Fhat",
    "assemble_Qhat_regular",
    "assemble_Gtilde_singular",
    "assemble_Q",
    "assemble_system",
    "project_problem",
]

log = logging.getLogger(__name__)

# Slack added to the truncated operator used for g(H); any value >= 0 is exact.
_OPERATOR_MARGIN = 8
# Raw recurrence output must be this close to symmetric (relative, max-norm).
SYMMETRY_TOL = 1e-10


class AssemblyError(RuntimeError):
    pass


@dataclass
class SpectralSystem:
    """The generalized eigenproblem (A + Q) zeta = lambda B zeta of size N."""

    N: int
    A: np.ndarray
    B: np.ndarray
    Q: np.ndarray
    B_extended: tuple
    coeffs: BasisCoefficients
    assembly_path: str
    problem: ProblemSpec | None = None
    bandwidth_Q: int | None = None
    raw_asymmetry: float = 0.0
    info: dict = field(default_factory=dict)

    @property
    def stiffness(self):
        """A + Q as a dense symmetric matrix."""
        K = self.Q.copy()
        K[np.diag_indices(self.N)] += self.A
        return K

    def leading(self, n):
        """The leading n x n subsystem (the basis does not depend on N)."""
        if n > self.N:
            raise ValueError("cannot enlarge a system")
        return SpectralSystem(
            n,
            self.A[:n].copy(),
            self.B[:n, :n].copy(),
            self.Q[:n, :n].copy(),
            _extended_entries(self.coeffs, n),
            self.coeffs,
            self.assembly_path,
            self.problem,
            self.bandwidth_Q,
            self.raw_asymmetry,
        )


def _congruence3(M, a, b, c, N):
    """R^T M R for R with columns (a_n, b_n, c_n) at rows n, n+1, n+2."""
    T = M[:, :N] * a + M[:, 1 : N + 1] * b + M[:, 2 : N + 2] * c
    return a[:, None] * T[:N] + b[:, None] * T[1 : N + 1] + c[:, None] * T[2 : N + 2]


def _congruence2(M, a, c, N):
    """Rtilde^T M Rtilde for Rtilde with columns (a_n, c_n) at rows n, n+1."""
    T = M[:, :N] * a + M[:, 1 : N + 1] * c
    return a[:, None] * T[:N] + c[:, None] * T[1 : N + 1]


def _check_coeffs(coeffs, need):
    if len(coeffs) < need:
        raise ValueError(f"need {need} basis triples, have {len(coeffs)}")


def assemble_A(N, coeffs):
    """Diagonal a_nn = -2 (2n+3) xi_n theta_n."""
    if N < 1:
        raise ValueError("N must be positive")
    _check_coeffs(coeffs, N)
    n = np.arange(N)
    return -2.0 * (2 * n + 3) * coeffs.xi[:N] * coeffs.theta[:N]


def _gram_legendre(count):
    return 2.0 / (2 * np.arange(count) + 1)


def _extended_entries(coeffs, N):
    # b_{N,N-2}, b_{N,N-1}, b_{N+1,N-1}; used by the eigenvalue corrections
    bh = _gram_legendre(N + 4)
    xi, eta, th = coeffs.xi, coeffs.eta, coeffs.theta
    b_n_nm2 = bh[N] * th[N - 2] * xi[N] if N >= 2 else 0.0
    b_n_nm1 = bh[N] * eta[N - 1] * xi[N] + bh[N + 1] * th[N - 1] * eta[N]
    b_np1_nm1 = bh[N + 1] * th[N - 1] * xi[N + 1]
    return float(b_n_nm2), float(b_n_nm1), float(b_np1_nm1)


def assemble_B(N, coeffs):
    """Return ``(B_N, (b_{N,N-2}, b_{N,N-1}, b_{N+1,N-1}))`` with B_N = R^T diag(2/(2j+1)) R."""
    if N < 1:
        raise ValueError("N must be positive")
    _check_coeffs(coeffs, N + 2)
    Bhat = np.diag(_gram_legendre(N + 2))
    B = _congruence3(Bhat, coeffs.xi[:N], coeffs.eta[:N], coeffs.theta[:N], N)
    return 0.5 * (B + B.T), _extended_entries(coeffs, N)


def singular_moments(gamma, count, kind="hat"):
    """Closed-form moments of the singular weight.

    ``kind="hat"``:   int (1+x)^(-gamma) P_m dx           for gamma in (0, 1)
    ``kind="tilde"``: int (1+x)^(2-gamma) P_m^{(0,1)} dx  for gamma in [1, 2]

    Evaluated as a running product of consecutive Pochhammer ratios, which never
    overflows.
    """
    m = np.arange(max(count - 1, 0), dtype=float)
    if kind == "hat":
        if not 0 < gamma < 1:
            raise ValueError(f"regular-path moments need gamma in (0, 1), got {gamma}")
        first = 2.0 ** (1 - gamma) / (1 - gamma)
        ratios = -(gamma + m) / (2 - gamma + m)
    elif kind == "tilde":
        if not 1 <= gamma <= 2:
            raise ValueError(f"singular-path moments need gamma in [1, 2], got {gamma}")
        first = 2.0 ** (3 - gamma) / (3 - gamma)
        ratios = -(gamma - 1 + m) / (4 - gamma + m)
    else:
        raise ValueError(f"unknown moment kind {kind!r}")
    out = np.empty(count)
    if count:
        out[0] = first
        out[1:] = first * np.cumprod(ratios)
    return out


def _legendre_columns(seed, ncols, nout):
    """Columns 0..ncols-1 of the moment matrix whose first column is ``seed``.

    Column n+1 = (2n+1)/(n+1) H col_n - n/(n+1) col_{n-1}; the bottom n rows of
    column n are polluted by truncation, so ``len(seed) >= nout + ncols - 1``.
    """
    rows = len(seed)
    if rows < nout + ncols - 1:
        raise ValueError("seed column too short for the requested block")
    op = TridiagonalOperator("H", rows)
    out = np.empty((nout, ncols))
    prev = np.zeros(rows)
    cur = np.array(seed, dtype=float)
    out[:, 0] = cur[:nout]
    for n in range(ncols - 1):
        nxt = (2 * n + 1) / (n + 1) * op.matvec(cur) - n / (n + 1) * prev
        prev, cur = cur, nxt
        out[:, n + 1] = cur[:nout]
    return out


def _jacobi01_columns(seed, ncols, nout):
    """As :func:`_legendre_columns` for the P^{(0,1)} family and Htilde."""
    rows = len(seed)
    if rows < nout + ncols - 1:
        raise ValueError("seed column too short for the requested block")
    op = TridiagonalOperator("Htilde", rows)
    out = np.empty((nout, ncols))
    prev = np.zeros(rows)
    cur = np.array(seed, dtype=float)
    out[:, 0] = cur[:nout]
    for n in range(ncols - 1):
        lo = n / (2 * n + 1)
        mid = 1.0 / ((2 * n + 1) * (2 * n + 3))
        hi = (n + 2) / (2 * n + 3)
        nxt = (op.matvec(cur) - mid * cur - lo * prev) / hi
        prev, cur = cur, nxt
        out[:, n + 1] = cur[:nout]
    return out


def _symmetrize(M, label):
    scale = np.max(np.abs(M))
    asym = float(np.max(np.abs(M - M.T)) / scale) if scale > 0 else 0.0
    if asym > SYMMETRY_TOL:
        raise AssemblyError(f"{label}: recurrence output asymmetric by {asym:.2e} (relative)")
    return 0.5 * (M + M.T), asym


def _band_mask(size, width):
    i = np.arange(size)
    return np.abs(i[:, None] - i[None, :]) <= width


def assemble_Fhat(size, f_series):
    """Banded Legendre moment matrix int f P_m P_n for m, n < size; bandwidth = degree of f."""
    L = f_series.degree
    nrows = size + size + 1
    seed = f_series.inner_products(nrows)
    F = _legendre_columns(seed, size, size)
    F, asym = _symmetrize(F, "Fhat")
    F[~_band_mask(size, L)] = 0.0
    return F, asym


def _g_seed_regular(g_series, gamma, rows):
    moments_len = rows + len(g_series) + _OPERATOR_MARGIN
    moments = singular_moments(gamma, moments_len, "hat")
    return apply_operator_function(g_series, TridiagonalOperator("H", moments_len), moments, rows)


def _g_seed_singular(g_series, gamma, rows):
    moments_len = rows + len(g_series) + _OPERATOR_MARGIN
    moments = singular_moments(gamma, moments_len, "tilde")
    return apply_operator_function(g_series, TridiagonalOperator("Htilde", moments_len), moments, rows)


def assemble_Qhat_regular(N, f_series, g_series, gamma):
    """Qhat = Fhat + Ghat of size (N+2) x (N+2), gamma in [0, 1).

    Returns ``(Qhat, raw_asymmetry)``.
    """
    if gamma >= 1:
        raise ValueError("gamma >= 1 uses the singular path (assemble_Gtilde_singular)")
    size = N + 2
    Q, asym = assemble_Fhat(size, f_series)
    if gamma > 0 and g_series is not None and not g_series.is_zero():
        rows = 2 * size + 1  # one more than the 2N+3 strictly needed
        seed = _g_seed_regular(g_series, gamma, rows)
        G, asym_g = _symmetrize(_legendre_columns(seed, size, size), "Ghat")
        Q = Q + G
        asym = max(asym, asym_g)
    return Q, asym


def assemble_Gtilde_singular(N, g_series, gamma):
    """Gtilde_{mn} = int (1+x)^(2-gamma) g P_m^{(0,1)} P_n^{(0,1)} for m, n <= N.

    Returns ``(Gtilde, raw_asymmetry)``.  For gamma = 1 the seed column has the
    bandwidth of g and the result is banded accordingly.
    """
    if not 1 <= gamma <= 2:
        raise ValueError(f"singular path needs gamma in [1, 2], got {gamma}")
    size = N + 1
    rows = 2 * size + 1
    seed = _g_seed_singular(g_series, gamma, rows)
    G, asym = _symmetrize(_jacobi01_columns(seed, size, size), "Gtilde")
    if gamma == 1:
        G[~_band_mask(size, g_series.degree)] = 0.0
    return G, asym


def project_problem(problem, tol=1e-15):
    """Legendre series of the smooth part and of g (g folded into f when gamma = 0)."""
    if problem.gamma == 0 and not problem.g_is_zero:
        f_series = project_legendre(BinOp("+", problem.f, problem.g), tol)
        return f_series, None
    f_series = project_legendre(problem.f, tol)
    g_series = None if problem.g_is_zero else project_legendre(problem.g, tol)
    return f_series, g_series


def assemble_Q(N, problem, coeffs, series=None):
    """Q_N by the factorization matching gamma; returns ``(Q, info)``."""
    _check_coeffs(coeffs, N + 2)
    f_series, g_series = series if series is not None else project_problem(problem)
    xi, eta, th = coeffs.xi[:N], coeffs.eta[:N], coeffs.theta[:N]
    info = {"f_length": len(f_series), "g_length": len(g_series) if g_series is not None else 0}
    if problem.singular_path:
        if not coeffs.dirichlet_left:
            raise AssemblyError("singular path requires a Dirichlet condition at x = -1")
        F, asym_f = assemble_Fhat(N + 2, f_series)
        G, asym_g = assemble_Gtilde_singular(N, g_series, problem.gamma)
        Q = _congruence3(F, xi, eta, th, N) + _congruence2(G, xi, th, N)
        info.update(path="singular", raw_asymmetry=max(asym_f, asym_g))
        if problem.gamma == 1:
            f_band = 0 if f_series.is_zero() else f_series.degree + 2
            info["bandwidth"] = max(f_band, g_series.degree + 1)
    else:
        Qhat, asym = assemble_Qhat_regular(N, f_series, g_series, problem.gamma)
        Q = _congruence3(Qhat, xi, eta, th, N)
        info.update(path="regular", raw_asymmetry=asym)
        if g_series is None or problem.gamma == 0:
            info["bandwidth"] = f_series.degree + 2
    Q = 0.5 * (Q + Q.T)
    if "bandwidth" in info:
        Q[~_band_mask(N, info["bandwidth"])] = 0.0
    return Q, info


def assemble_system(problem, N, tol=1e-15):
    """Validate ``problem`` and assemble the size-N Galerkin system."""
    if N < 1:
        raise ValueError("N must be positive")
    problem.validate()
    coeffs = BasisCoefficients.build(N + 4, problem.bc_left, problem.bc_right)
    series = project_problem(problem, tol)
    A = assemble_A(N, coeffs)
    B, ext = assemble_B(N, coeffs)
    Q, info = assemble_Q(N, problem, coeffs, series)
    log.debug("assembled N=%d via %s path (raw asymmetry %.1e)", N, info["path"], info["raw_asymmetry"])
    return SpectralSystem(
        N=N,
        A=A,
        B=B,
        Q=Q,
        B_extended=ext,
        coeffs=coeffs,
        assembly_path=info["path"],
        problem=problem,
        bandwidth_Q=info.get("bandwidth"),
        raw_asymmetry=info["raw_asymmetry"],
        info=info,
    )
