"""Self-check suite run by ``slp validate``.

Every check returns a :class:`CheckResult`; a check that does not apply to the
configured problem is reported with ``status = "skip"``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .assembly import assemble_system
from .correction import kappa_ratio_study, select_algorithm
from .driver import solve_problem
from .eigensolve import solve
from .problem import ProblemSpec
from .validation import estimate_order, oracle_B, oracle_Q, reference_bessel, reference_trig

__all__ = ["CheckResult", "run_suite", "ORACLE_TOL_Q", "ORACLE_TOL_B", "RESIDUAL_TOL", "ORDER_TOL"]

log = logging.getLogger(__name__)

ORACLE_TOL_Q = 1e-10
ORACLE_TOL_B = 1e-12
RESIDUAL_TOL = 1e-10
ORTHONORMALITY_TOL = 1e-10
TRIG_TOL = 1e-10
ORDER_TOL = 0.05
KAPPA_TOL = 0.05


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skip"
    value: float | None = None
    threshold: float | None = None
    detail: str = ""

    @property
    def failed(self):
        return self.status == "fail"

    def as_dict(self):
        return {
            "check": self.name,
            "status": self.status,
            "value": self.value,
            "threshold": self.threshold,
            "detail": self.detail,
        }


def _verdict(ok):
    return "pass" if ok else "fail"


def _oracle_checks(problem, N, inject_fault):
    system = assemble_system(problem, N)
    Q = system.Q.copy()
    if inject_fault == "Q":
        Q[0, 0] += 1e-6 * max(1.0, np.max(np.abs(Q)))
    Qo = oracle_Q(problem, N)
    scale = max(np.max(np.abs(Qo)), 1.0)
    err_q = float(np.max(np.abs(Q - Qo)) / scale)
    Bo = oracle_B(N, problem.bc_left, problem.bc_right)
    err_b = float(np.max(np.abs(system.B - Bo)) / np.max(np.abs(Bo)))
    return [
        CheckResult("oracle-Q", _verdict(err_q < ORACLE_TOL_Q), err_q, ORACLE_TOL_Q, f"N={N}, relative max-entry gap"),
        CheckResult("oracle-B", _verdict(err_b < ORACLE_TOL_B), err_b, ORACLE_TOL_B, f"N={N}, relative max-entry gap"),
    ]


def _structure_checks(problem, N, M):
    system = assemble_system(problem, N)
    out = []
    asym = max(
        float(np.max(np.abs(system.B - system.B.T))),
        float(np.max(np.abs(system.Q - system.Q.T))),
    )
    out.append(CheckResult("symmetry", _verdict(asym == 0.0), asym, 0.0, "max |M - M^T| over B and Q"))
    try:
        sla.cholesky(system.B)
        pd = True
    except sla.LinAlgError:
        pd = False
    out.append(CheckResult("B-definite", _verdict(pd), None, None, "Cholesky factorization of B"))
    res = solve(system, M)
    r = float(np.max(res.residuals))
    out.append(CheckResult("eigen-residual", _verdict(r < RESIDUAL_TOL), r, RESIDUAL_TOL, f"N={N}, M={M}"))
    G = res.zeta.T @ system.B @ res.zeta
    orth = float(np.max(np.abs(G - np.eye(M))))
    out.append(CheckResult("B-orthonormality", _verdict(orth < ORTHONORMALITY_TOL), orth, ORTHONORMALITY_TOL, f"N={N}, M={M}"))
    return out


def _is_trig(problem):
    f, g = problem.f, problem.g
    zero_f = f.is_constant() and f(0.0) == 0.0
    plain = problem.bc_left.is_dirichlet or problem.bc_left.is_neumann
    plain &= problem.bc_right.is_dirichlet or problem.bc_right.is_neumann
    return zero_f and problem.g_is_zero and plain


def _is_bessel(problem):
    f = problem.f
    return (
        problem.gamma == 2.0
        and f.is_constant()
        and f(0.0) == 0.0
        and problem.g.is_constant()
        and problem.g_left > 0
        and problem.bc_left.is_dirichlet
        and problem.bc_right.is_dirichlet
    )


def _reference_checks(problem, opts, method):
    if _is_trig(problem):
        K = 10
        ref = reference_trig(problem.bc_left, problem.bc_right, K).eigenvalues
        _, rep = solve_problem(problem, 64, K, method=method)
        err = np.abs(rep.lambdas - ref) / np.maximum(np.abs(ref), 1.0)
        worst = float(np.max(err))
        return [CheckResult("reference-trig", _verdict(worst < TRIG_TOL), worst, TRIG_TOL, "N=64, first 10 eigenvalues")]
    if _is_bessel(problem):
        K = opts.reference_K
        ref = reference_bessel(problem.g_left, K).eigenvalues
        consts = select_algorithm(problem)
        raw_err, cor_err = [], []
        for N in opts.reference_N:
            _, rep = solve_problem(problem, N, K, method=method)
            raw_err.append(np.abs(rep.lambdas - ref) / ref)
            cor_err.append(np.abs(rep.mu - ref) / ref)
        raw_err = np.array(raw_err)
        orders = np.array([estimate_order(raw_err[:, j])[0] for j in range(K)])
        dev = float(np.nanmax(np.abs(orders - consts.p)))
        gain = float(np.min(raw_err[-1] / np.maximum(np.array(cor_err)[-1], 1e-300)))
        return [
            CheckResult(
                "reference-bessel-order",
                _verdict(dev <= ORDER_TOL),
                dev,
                ORDER_TOL,
                f"max |order - {consts.p:.4f}| over k<={K}, N={opts.reference_N}",
            ),
            CheckResult(
                "reference-bessel-correction",
                _verdict(gain >= 10.0),
                gain,
                10.0,
                f"min error ratio uncorrected/corrected at N={opts.reference_N[-1]}",
            ),
        ]
    return [CheckResult("reference-spectrum", "skip", detail="no closed-form spectrum for this problem")]


def _kappa_checks(problem, opts):
    consts = select_algorithm(problem)
    if consts.algorithm != "alg3":
        return [CheckResult("kappa-ratio", "skip", detail="only for gamma = 2 corrections")]
    study = kappa_ratio_study(problem, opts.kappa_N, opts.kappa_N_ref, opts.kappa_k)
    dev = float(abs(study.ratios[-1] / study.kappa - 1.0))
    detail = ", ".join(f"N={n}: {r:.6f}" for n, r in zip(study.N_list, study.ratios))
    return [
        CheckResult(
            "kappa-ratio",
            _verdict(dev <= KAPPA_TOL),
            dev,
            KAPPA_TOL,
            f"target {study.kappa:.6f}; {detail}",
        )
    ]


def run_suite(cfg):
    """Run every applicable check for ``cfg``; returns a list of :class:`CheckResult`."""
    problem: ProblemSpec = cfg.problem
    problem.validate()
    opts = cfg.validate
    N = opts.oracle_N
    results = []
    results += _oracle_checks(problem, N, opts.inject_fault)
    results += _structure_checks(problem, max(N, 32), min(cfg.M, 32))
    results += _reference_checks(problem, opts, cfg.method)
    results += _kappa_checks(problem, opts)
    return results
