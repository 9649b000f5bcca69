"""Spectral Legendre-Galerkin eigenvalues of Sturm-Liouville problems

    -y'' + (f(x) + g(x)/(1+x)^gamma) y = lambda y,   -1 < x < 1,

with a-posteriori corrections for the algebraic convergence caused by the
singular term.

Typical use::

    from slp import ProblemSpec, solve_problem
    prob = ProblemSpec("2*x^2", "5/((1+x)^2+1)", 0.4, "0,1", "1,0")
    result, report = solve_problem(prob, N=400, M=15)
    report.mu  # corrected eigenvalues
"""

from .assembly import AssemblyError, SpectralSystem, assemble_system
from .basis import BasisCoefficients, basis_coefficients, basis_left_traces, build_conversion_matrices
from .benchmarks import BENCHMARKS, benchmark
from .correction import (
    CorrectionConstants,
    CorrectionReport,
    correct,
    correct_alg1,
    correct_alg2,
    correct_alg3,
    epsilon_bar,
    kappa_ratio_study,
    select_algorithm,
)
from .driver import compute_eigenpairs, convergence_table, solve_problem
from .eigensolve import EigenResult, EigensolveError, evaluate_eigenfunction, solve
from .expansion import LegendreSeries, project_legendre
from .expression import ExpressionError, parse
from .problem import BoundaryCondition, EndpointClass, ProblemSpec, UnsupportedProblemError, classify_endpoint
from .validation import ReferenceSpectrum, estimate_order, reference_bessel, reference_trig

__version__ = "0.1.0"

__all__ = [
    "AssemblyError",
    "BENCHMARKS",
    "BasisCoefficients",
    "BoundaryCondition",
    "CorrectionConstants",
    "CorrectionReport",
    "EigenResult",
    "EigensolveError",
    "EndpointClass",
    "ExpressionError",
    "LegendreSeries",
    "ProblemSpec",
    "ReferenceSpectrum",
    "SpectralSystem",
    "UnsupportedProblemError",
    "assemble_system",
    "basis_coefficients",
    "basis_left_traces",
    "benchmark",
    "build_conversion_matrices",
    "classify_endpoint",
    "compute_eigenpairs",
    "convergence_table",
    "correct",
    "correct_alg1",
    "correct_alg2",
    "correct_alg3",
    "epsilon_bar",
    "estimate_order",
    "evaluate_eigenfunction",
    "kappa_ratio_study",
    "parse",
    "project_legendre",
    "reference_bessel",
    "reference_trig",
    "select_algorithm",
    "solve",
    "solve_problem",
]
