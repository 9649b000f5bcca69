"""End-to-end pipelines: assemble, solve, correct, and convergence tables."""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .assembly import assemble_system
from .correction import correct, select_algorithm
from .eigensolve import EigenResult, solve

__all__ = [
    "compute_eigenpairs",
    "solve_problem",
    "ConvergenceTable",
    "convergence_table",
    "doubling_sequence",
    "check_doubling",
    "max_workers",
]

log = logging.getLogger(__name__)

ROUNDOFF_ULPS = 8


def max_workers(default=None):
    """Worker cap from ``SLP_THREADS`` (falls back to the CPU count)."""
    env = os.environ.get("SLP_THREADS")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"SLP_THREADS must be a positive integer, got {env!r}") from None
        if value < 1:
            raise ValueError(f"SLP_THREADS must be a positive integer, got {env!r}")
        return value
    return default or os.cpu_count() or 1


def compute_eigenpairs(problem, N, M, method="shift-invert", tol=1e-15) -> EigenResult:
    """Assemble the size-N system for ``problem`` and return its lowest M eigenpairs."""
    system = assemble_system(problem, N, tol)
    return solve(system, M, method=method)


def solve_problem(problem, N, M, corrected=True, method="shift-invert", tol=1e-15):
    """Return ``(EigenResult, CorrectionReport)``.

    With ``corrected=False`` the report carries mu = lambda and algorithm ``none``.
    """
    result = compute_eigenpairs(problem, N, M, method, tol)
    constants = select_algorithm(problem)
    if not corrected:
        constants = type(constants)("none", p=constants.p, g_left=constants.g_left, gamma=constants.gamma, reason="disabled")
    return result, correct(result, constants)


def doubling_sequence(N0, count):
    """``N0, 2 N0 + 1, 4 N0 + 3, ...`` of the given length."""
    out = [int(N0)]
    for _ in range(count - 1):
        out.append(2 * out[-1] + 1)
    return out


def check_doubling(N_list):
    """Raise ValueError unless each N is 2 * previous + 1."""
    N_list = [int(n) for n in N_list]
    if len(N_list) < 2:
        raise ValueError("need at least two values of N")
    for a, b in zip(N_list, N_list[1:]):
        if b != 2 * a + 1:
            raise ValueError(f"N-list must follow N -> 2N+1; got {a} then {b}")
    return N_list


@dataclass
class ConvergenceTable:
    """Self-convergence data: deltas[i, j] = |x_k(N_i) - x_k(2 N_i + 1)| for k = ks[j]."""

    N: list
    ks: list
    lambdas: dict
    mus: dict
    delta_raw: np.ndarray
    delta_corrected: np.ndarray
    order_raw: np.ndarray
    order_corrected: np.ndarray
    saturated_raw: np.ndarray
    saturated_corrected: np.ndarray
    constants: object

    def rows(self):
        for i, N in enumerate(self.N):
            for j, k in enumerate(self.ks):
                yield {
                    "N": N,
                    "k": k,
                    "delta_raw": float(self.delta_raw[i, j]),
                    "order_raw": _nan_to_none(self.order_raw[i, j]) if i < len(self.N) - 1 else None,
                    "saturated_raw": bool(self.saturated_raw[i, j]) if i < len(self.N) - 1 else False,
                    "delta_corrected": float(self.delta_corrected[i, j]),
                    "order_corrected": _nan_to_none(self.order_corrected[i, j]) if i < len(self.N) - 1 else None,
                    "saturated_corrected": bool(self.saturated_corrected[i, j]) if i < len(self.N) - 1 else False,
                }


def _nan_to_none(v):
    v = float(v)
    return None if math.isnan(v) else v


def convergence_table(problem, N_list, ks, method="shift-invert", workers=None):
    """Build the delta / order table for a doubling N-list.

    The extra size ``2 N_last + 1`` is solved too, so every listed N has a delta.
    Sizes are solved in parallel, capped by ``SLP_THREADS``.
    """
    from .validation import estimate_order

    N_list = check_doubling(N_list)
    ks = [int(k) for k in ks]
    M = max(ks)
    if M > N_list[0]:
        raise ValueError(f"largest index k = {M} exceeds the smallest N = {N_list[0]}")
    sizes = N_list + [2 * N_list[-1] + 1]
    workers = min(max_workers() if workers is None else workers, len(sizes))

    def job(N):
        _, report = solve_problem(problem, N, M, method=method)
        return N, report

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = dict(pool.map(job, sizes))
    else:
        reports = dict(job(N) for N in sizes)

    idx = [k - 1 for k in ks]
    lam = {N: reports[N].lambdas[idx] for N in sizes}
    mu = {N: reports[N].mu[idx] for N in sizes}
    d_raw = np.array([np.abs(lam[N] - lam[2 * N + 1]) for N in N_list])
    d_cor = np.array([np.abs(mu[N] - mu[2 * N + 1]) for N in N_list])
    # differences within a few ulp of lambda_k carry no convergence information
    floor = ROUNDOFF_ULPS * np.finfo(float).eps * np.maximum(np.abs(lam[sizes[-1]]), 1.0)
    o_raw, s_raw = zip(*(estimate_order(d_raw[:, j], floor[j]) for j in range(len(ks))))
    o_cor, s_cor = zip(*(estimate_order(d_cor[:, j], floor[j]) for j in range(len(ks))))
    return ConvergenceTable(
        N=N_list,
        ks=ks,
        lambdas=lam,
        mus=mu,
        delta_raw=d_raw,
        delta_corrected=d_cor,
        order_raw=np.array(o_raw).T,
        order_corrected=np.array(o_cor).T,
        saturated_raw=np.array(s_raw).T,
        saturated_corrected=np.array(s_cor).T,
        constants=reports[N_list[0]].constants,
    )
