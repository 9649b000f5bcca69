"""A-posteriori eigenvalue corrections.

The leading term of the error lambda - lambda^{(N)} is known in closed form from
the local behaviour of the eigenfunction at x = -1.  Three cases:

* ``alg1``: gamma in (0, 1), eigenfunction nonzero at -1 (no Dirichlet condition);
* ``alg2``: gamma in (0, 2) without 1, Dirichlet condition at -1;
* ``alg3``: gamma = 2, g(-1) > 0, Dirichlet condition at -1.

Each corrected value has the form mu = lambda (1 - eps) - tail, where eps
approximates <z_N, y - y_N> from model expansion coefficients c_N, c_{N+1}.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .polyops import rgamma

__all__ = [
    "CorrectionConstants",
    "CorrectionReport",
    "select_algorithm",
    "epsilon_bar",
    "correct_alg1",
    "correct_alg2",
    "correct_alg3",
    "alg2_dN",
    "correct",
    "kappa_ratio_study",
    "KappaStudy",
    "LOW_CONFIDENCE_FACTOR",
]

log = logging.getLogger(__name__)

# corrections are flagged when N < LOW_CONFIDENCE_FACTOR * k
LOW_CONFIDENCE_FACTOR = 4


@dataclass(frozen=True)
class CorrectionConstants:
    """Problem-level constants of the selected correction.

    ``p`` is the predicted algebraic convergence order of the uncorrected
    eigenvalues (None when convergence is exponential).
    """

    algorithm: str
    p: float | None = None
    omega: float | None = None
    L: int | None = None
    chi: tuple = ()
    omega_hat: tuple = ()
    omega_j: tuple = ()
    rho: float | None = None
    kappa: float | None = None
    g_left: float = 0.0
    gamma: float = 0.0
    reason: str = ""

    def as_dict(self):
        return {
            "algorithm": self.algorithm,
            "p": self.p,
            "omega": self.omega,
            "L": self.L,
            "chi": list(self.chi),
            "omega_hat": list(self.omega_hat),
            "omega_j": list(self.omega_j),
            "rho": self.rho,
            "kappa": self.kappa,
            "reason": self.reason,
        }


@dataclass
class CorrectionReport:
    """Corrected eigenvalues for k = 1..M together with the data used."""

    N: int
    lambdas: np.ndarray
    mu: np.ndarray
    epsilon_bar: np.ndarray
    c_bar_N: np.ndarray
    c_bar_N1: np.ndarray
    constants: CorrectionConstants
    d_N: float | None = None
    low_confidence: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.low_confidence is None:
            k = np.arange(1, len(self.lambdas) + 1)
            self.low_confidence = self.N < LOW_CONFIDENCE_FACTOR * k

    @property
    def M(self):
        return len(self.lambdas)

    def rows(self):
        """One dict per eigenvalue index."""
        for i in range(self.M):
            yield {
                "k": i + 1,
                "lambda": float(self.lambdas[i]),
                "mu": float(self.mu[i]),
                "epsilon_bar": float(self.epsilon_bar[i]),
                "low_confidence": bool(self.low_confidence[i]),
            }


def _ceil_ratio(gamma):
    # ceil((gamma-1)/(2-gamma)) guarded against rounding just above an integer
    r = (gamma - 1.0) / (2.0 - gamma)
    nearest = round(r)
    if abs(r - nearest) < 1e-12:
        return int(nearest)
    return math.ceil(r)


def _alg2_constants(gamma, g_left):
    s = 2.0 - gamma
    L = max(0, _ceil_ratio(gamma))
    chi = [1.0]
    for j in range(L):
        chi.append(chi[-1] * g_left / ((j + 1) * s * (1 + (j + 1) * s)))
    omega_hat = []
    for j in range(L + 1):
        e = s * (j + 1)
        # Gamma(1+e) / Gamma(1-e); zero where 1-e is a pole
        omega_hat.append(2.0**e * math.gamma(1.0 + e) * rgamma(1.0 - e) * chi[j])
    scale = 2.0 ** (4.0 - gamma) * math.gamma(3.0 - gamma) * rgamma(gamma - 1.0)
    omega_j = [scale * w for w in omega_hat]
    return L, tuple(chi), tuple(omega_hat), tuple(omega_j)


def select_algorithm(problem):
    """Choose the correction for ``problem`` and precompute its constants."""
    gamma = problem.gamma
    g_left = problem.g_left
    dirichlet = problem.bc_left.is_dirichlet
    if gamma == 0.0 or problem.g_is_zero:
        return CorrectionConstants("none", gamma=gamma, g_left=g_left, reason="potential is smooth; convergence is exponential")
    if g_left == 0.0:
        return CorrectionConstants("none", gamma=gamma, g_left=g_left, reason="g(-1) = 0; the leading error term vanishes")
    if gamma == 1.0:
        return CorrectionConstants("none", gamma=gamma, g_left=g_left, reason="gamma = 1; convergence is exponential")
    if 0.0 < gamma < 1.0 and not dirichlet:
        omega = 2.0 ** (2 - gamma) * math.gamma(3 - gamma) / ((1 - gamma) * math.gamma(gamma))
        return CorrectionConstants("alg1", p=6 - 4 * gamma, omega=omega, gamma=gamma, g_left=g_left)
    if 0.0 < gamma < 2.0 and dirichlet:
        L, chi, omega_hat, omega_j = _alg2_constants(gamma, g_left)
        return CorrectionConstants(
            "alg2", p=10 - 4 * gamma, L=L, chi=chi, omega_hat=omega_hat, omega_j=omega_j, gamma=gamma, g_left=g_left
        )
    if gamma == 2.0 and dirichlet:
        if g_left < 0:
            return CorrectionConstants("none", gamma=gamma, g_left=g_left, reason="g(-1) < 0 is not covered by the gamma = 2 correction")
        rho = (1.0 + math.sqrt(1.0 + 4.0 * g_left)) / 2.0
        if abs(rho - round(rho)) < 1e-12:
            return CorrectionConstants(
                "none",
                p=4 * rho - 2,
                rho=rho,
                gamma=gamma,
                g_left=g_left,
                reason=f"indicial root rho = {rho:g} is an integer; the error expansion has a logarithmic term",
            )
        return CorrectionConstants(
            "alg3", p=4 * rho - 2, rho=rho, kappa=(2 * rho - 1) / rho**2, gamma=gamma, g_left=g_left
        )
    return CorrectionConstants("none", gamma=gamma, g_left=g_left, reason="no correction applies to this configuration")


def epsilon_bar(zeta, c_bar_N, c_bar_N1, B_extended):
    """c_N <z_N, R_N> + c_{N+1} <z_N, R_{N+1}> from the last two coefficients of ``zeta``.

    ``zeta`` may be a vector or an (N, M) array of column vectors.
    """
    zeta = np.asarray(zeta, dtype=float)
    b_n_nm2, b_n_nm1, b_np1_nm1 = B_extended
    last = zeta[-1]
    second = zeta[-2] if zeta.shape[0] >= 2 else np.zeros_like(last)
    ip_N = b_n_nm2 * second + b_n_nm1 * last
    ip_N1 = b_np1_nm1 * last
    return c_bar_N * ip_N + c_bar_N1 * ip_N1


def correct_alg1(lambda_N, z_at_left, g_left, gamma, N, B_extended, zeta, constants=None):
    """Corrected eigenvalue for gamma in (0, 1) without a Dirichlet condition at -1.

    Returns ``(mu, epsilon_bar, c_bar_N, c_bar_N1)``; arrays broadcast over k.
    """
    omega = constants.omega if constants is not None else (
        2.0 ** (2 - gamma) * math.gamma(3 - gamma) / ((1 - gamma) * math.gamma(gamma))
    )
    p = 6.0 - 4.0 * gamma
    amp = omega * g_left * np.asarray(z_at_left, dtype=float)

    def c_bar(n):
        return -((-1.0) ** n) * amp / 2.0 * (n + 1.5) ** (-p / 2 - 1)

    cN, cN1 = c_bar(N), c_bar(N + 1)
    eps = epsilon_bar(zeta, cN, cN1, B_extended)
    mu = lambda_N * (1 - eps) - amp**2 / (p * (N + 1) ** p)
    return mu, eps, cN, cN1


def alg2_dN(constants, N):
    """The factor d_N in y'(-1) ~ z_N'(-1) / (1 + d_N)."""
    s = 2.0 - constants.gamma
    total = sum(w / ((j + 1) * (N + 1) ** (2 * s * (j + 1))) for j, w in enumerate(constants.omega_hat))
    return constants.g_left / s * total


def correct_alg2(lambda_N, zprime_at_left, g_left, gamma, N, B_extended, zeta, constants=None):
    """Corrected eigenvalue for a Dirichlet condition at -1 and gamma in (0, 2), gamma != 1.

    Returns ``(mu, epsilon_bar, c_bar_N, c_bar_N1, d_N)``.
    """
    if constants is None:
        L, chi, omega_hat, omega_j = _alg2_constants(gamma, g_left)
        constants = CorrectionConstants(
            "alg2", p=10 - 4 * gamma, L=L, chi=chi, omega_hat=omega_hat, omega_j=omega_j, gamma=gamma, g_left=g_left
        )
    s = 2.0 - gamma
    p = 10.0 - 4.0 * gamma
    zp = np.asarray(zprime_at_left, dtype=float)
    d_N = alg2_dN(constants, N)
    yp = zp / (1.0 + d_N)

    def c_bar(n):
        series = sum(w * (n + 1.5) ** (-p / 2 - 1 - 2 * j * s) for j, w in enumerate(constants.omega_hat))
        return -((-1.0) ** n) * g_left * yp * series

    cN, cN1 = c_bar(N), c_bar(N + 1)
    eps = epsilon_bar(zeta, cN, cN1, B_extended)
    tail = sum(w / ((p + 2 * j * s) * (N + 1) ** (2 * j * s)) for j, w in enumerate(constants.omega_j))
    mu = lambda_N * (1 - eps) - (g_left * zp) ** 2 / ((1 + d_N) * (N + 1) ** p) * tail
    return mu, eps, cN, cN1, d_N


def correct_alg3(lambda_N, zhat_at_left, g_left, N, B_extended, zeta):
    """Corrected eigenvalue for gamma = 2, g(-1) > 0 and a Dirichlet condition at -1.

    Returns ``(mu, epsilon_bar, c_bar_N, c_bar_N1)``.
    """
    rho = (1.0 + math.sqrt(1.0 + 4.0 * g_left)) / 2.0
    zh = np.asarray(zhat_at_left, dtype=float)

    def c_bar(m):
        return (
            (-1.0) ** (m + 1)
            * (rho - 1) * rho**2 * zh
            / ((2 * rho - 1) * (N + 1) ** 2)
            * ((2 * N + 2) / (2 * m + 3)) ** (2 * rho)
        )

    cN, cN1 = c_bar(N), c_bar(N + 1)
    eps = epsilon_bar(zeta, cN, cN1, B_extended)
    mu = (1 - eps) * lambda_N - 2.0 / (2 * rho - 1) * (rho * (rho - 1) * zh / (N + 1)) ** 2
    return mu, eps, cN, cN1


def correct(result, constants=None):
    """Apply the appropriate correction to every eigenpair in ``result``.

    Parameters
    ----------
    result : EigenResult
    constants : CorrectionConstants, optional
        Defaults to ``select_algorithm(result.system.problem)``.
    """
    system = result.system
    if constants is None:
        constants = select_algorithm(system.problem)
    N = system.N
    lam = result.lambdas
    zeta = result.zeta
    zeros = np.zeros_like(lam)
    d_N = None
    if constants.algorithm == "alg1":
        mu, eps, cN, cN1 = correct_alg1(
            lam, result.z_left, constants.g_left, constants.gamma, N, system.B_extended, zeta, constants
        )
    elif constants.algorithm == "alg2":
        mu, eps, cN, cN1, d_N = correct_alg2(
            lam, result.zprime_left, constants.g_left, constants.gamma, N, system.B_extended, zeta, constants
        )
    elif constants.algorithm == "alg3":
        mu, eps, cN, cN1 = correct_alg3(lam, result.zhat_left, constants.g_left, N, system.B_extended, zeta)
    else:
        mu, eps, cN, cN1 = lam.copy(), zeros.copy(), zeros.copy(), zeros.copy()
    return CorrectionReport(
        N=N,
        lambdas=lam.copy(),
        mu=np.asarray(mu, dtype=float),
        epsilon_bar=np.asarray(eps, dtype=float),
        c_bar_N=np.asarray(cN, dtype=float),
        c_bar_N1=np.asarray(cN1, dtype=float),
        constants=constants,
        d_N=d_N,
    )


@dataclass
class KappaStudy:
    """Ratios zhat_N(-1) / yhat_N(-1) against a reference solve."""

    N_list: tuple
    N_ref: int
    k: int
    ratios: np.ndarray
    zhat: np.ndarray
    yhat: np.ndarray
    kappa: float


def kappa_ratio_study(problem, N_list, N_ref, k=1, solver=None):
    """Compare zhat_N(-1) with the N-term partial sum of a high-resolution solve.

    ``yhat_N(-1)`` is sum_{n<N} c_n U_n(-1) with c_n the coefficients of the k-th
    eigenvector of the size ``N_ref`` system, which stands in for the exact
    expansion coefficients.

    Parameters
    ----------
    solver : callable, optional
        ``solver(problem, N, M) -> EigenResult``; defaults to
        :func:`slp.driver.compute_eigenpairs`.
    """
    N_list = tuple(int(n) for n in N_list)
    if problem.gamma != 2.0:
        raise ValueError("the kappa study applies to gamma = 2")
    if N_ref < 4 * max(N_list):
        raise ValueError(f"N_ref = {N_ref} is too small; need at least 4 * max(N) = {4 * max(N_list)}")
    constants = select_algorithm(problem)
    if constants.kappa is None:
        raise ValueError(f"no kappa for this problem: {constants.reason}")
    if solver is None:
        from .driver import compute_eigenpairs as solver

    ref = solver(problem, N_ref, k)
    c = ref.vector(k)
    u_left = ref.system.coeffs.u_values_left()
    zhat, yhat = [], []
    for N in N_list:
        res = solver(problem, N, k)
        zhat.append(float(res.zhat_left[k - 1]))
        yhat.append(float(c[:N] @ u_left[:N]))
    zhat, yhat = np.array(zhat), np.array(yhat)
    return KappaStudy(N_list, int(N_ref), int(k), zhat / yhat, zhat, yhat, constants.kappa)
