"""Benchmark problems with tabulated self-convergence data.

Six families, each parametrized by the exponent gamma or by the strength alpha
of the inverse-square term:

================================  =========================================  ==========
name                              q(x)                                       BCs
================================  =========================================  ==========
``cosine-robin``                  cos(2 pi x) + 10 (2 - e^-x)/(1+x)^gamma     y(+-1) = +-y'(+-1)
``quadratic-neumann``             2x^2 + 5/(((1+x)^2+1)(1+x)^gamma)           y'(-1) = 0, y(1) = 0
``xcos-dirichlet-neumann``        3 (x cos 2 pi x)^2 / (1+x)^gamma            y(-1) = 0, y'(1) = 0
``cosh-dirichlet-robin``          2 cosh x + (2+x)/((1+3x^2)(1+x)^gamma)      y(-1) = 0, y(1) = y'(1)
``log-dirichlet``                 log(3+x) + alpha cos(4 pi x)/(1+x)^2        y(+-1) = 0
``runge-sinh-robin``              1/(1+25x^2) + alpha (1+sinh(1+x))/(1+x)^2   y(-1) = 0, y(1) = 2y'(1)
================================  =========================================  ==========
"""

from __future__ import annotations

from .problem import ProblemSpec

__all__ = ["BENCHMARKS", "benchmark", "SELF_CONVERGENCE", "LAMBDA15_N3000", "DEFAULT_PARAMETERS"]


def cosine_robin(gamma):
    return ProblemSpec("cos(2*pi*x)", "10*(2-exp(-x))", gamma, "1,1", "1,-1", name=f"cosine-robin gamma={gamma:g}")


def quadratic_neumann(gamma):
    return ProblemSpec("2*x^2", "5/((1+x)^2+1)", gamma, "0,1", "1,0", name=f"quadratic-neumann gamma={gamma:g}")


def xcos_dirichlet_neumann(gamma):
    return ProblemSpec("0", "3*(x*cos(2*pi*x))^2", gamma, "1,0", "0,1", name=f"xcos-dirichlet-neumann gamma={gamma:g}")


def cosh_dirichlet_robin(gamma):
    return ProblemSpec("2*cosh(x)", "(2+x)/(1+3*x^2)", gamma, "1,0", "1,-1", name=f"cosh-dirichlet-robin gamma={gamma:g}")


def log_dirichlet(alpha):
    return ProblemSpec("log(3+x)", f"{alpha!r}*cos(4*pi*x)", 2.0, "1,0", "1,0", name=f"log-dirichlet alpha={alpha:g}")


def runge_sinh_robin(alpha):
    return ProblemSpec(
        "1/(1+25*x^2)", f"{alpha!r}*(1+sinh(1+x))", 2.0, "1,0", "1,-2", name=f"runge-sinh-robin alpha={alpha:g}"
    )


BENCHMARKS = {
    "cosine-robin": cosine_robin,
    "quadratic-neumann": quadratic_neumann,
    "xcos-dirichlet-neumann": xcos_dirichlet_neumann,
    "cosh-dirichlet-robin": cosh_dirichlet_robin,
    "log-dirichlet": log_dirichlet,
    "runge-sinh-robin": runge_sinh_robin,
}

DEFAULT_PARAMETERS = {
    "cosine-robin": (0.25, 0.5, 0.75),
    "quadratic-neumann": (0.4, 0.65, 0.9),
    "xcos-dirichlet-neumann": (1.25, 1.5, 1.75),
    "cosh-dirichlet-robin": (1.4, 1.65, 1.9),
    "log-dirichlet": (0.125, 0.5, 1.0),
    "runge-sinh-robin": (0.25, 0.75, 1.25),
}


def benchmark(name, parameter):
    """Instantiate benchmark ``name`` at the given gamma (or alpha)."""
    try:
        return BENCHMARKS[name](float(parameter))
    except KeyError:
        raise KeyError(f"unknown benchmark {name!r}; choose from {sorted(BENCHMARKS)}") from None


# Tabulated |lambda_k(N) - lambda_k(2N+1)| for N = 49, 99, 199, 399 and k = 5, 10, 20,
# with the tabulated order estimates for the first three rows.
SELF_CONVERGENCE = {
    ("cosine-robin", 0.25): {
        "N": (49, 99, 199, 399),
        "k": (5, 10, 20),
        "delta": (
            (9.9201e-08, 1.1937e-07, 1.2280e-07),
            (3.0866e-09, 3.7263e-09, 3.8890e-09),
            (9.6399e-11, 1.1670e-10, 1.2255e-10),
            (3.0127e-12, 3.3538e-12, 4.2064e-12),
        ),
        "order": ((5.006, 5.002, 4.981), (5.001, 4.997, 4.988), (5.000, 5.121, 4.865)),
        "p": 5.0,
    },
    ("cosine-robin", 0.5): {
        "N": (49, 99, 199, 399),
        "k": (5, 10, 20),
        "delta": (
            (2.1098e-05, 3.0250e-05, 3.2895e-05),
            (1.3159e-06, 1.8917e-06, 2.0828e-06),
            (8.2192e-08, 1.1819e-07, 1.3031e-07),
            (5.1362e-09, 7.3861e-09, 8.1446e-09),
        ),
        "order": ((4.003, 3.999, 3.981), (4.001, 4.000, 3.999), (4.000, 4.000, 4.000)),
        "p": 4.0,
    },
    ("cosine-robin", 0.75): {
        "N": (49, 99, 199, 399),
        "k": (5, 10, 20),
        "delta": (
            (1.9714e-03, 5.1330e-03, 7.5944e-03),
            (2.4665e-04, 6.4360e-04, 9.6156e-04),
            (3.0833e-05, 8.0475e-05, 1.2036e-04),
            (3.8541e-06, 1.0060e-05, 1.5048e-05),
        ),
        "order": ((2.999, 2.996, 2.981), (3.000, 3.000, 2.998), (3.000, 3.000, 3.000)),
        "p": 3.0,
    },
    ("log-dirichlet", 0.125): {
        "N": (49, 99, 199, 399),
        "k": (5, 10, 20),
        "delta": (
            (1.4443e-04, 6.2160e-04, 2.8090e-03),
            (2.6461e-05, 1.1412e-04, 5.2076e-04),
            (4.8448e-06, 2.0900e-05, 9.5467e-05),
            (8.8697e-07, 3.8264e-06, 1.7481e-05),
        ),
        "order": ((2.448, 2.445, 2.431), (2.449, 2.449, 2.448), (2.449, 2.449, 2.449)),
        "p": 2.0 * 1.5**0.5,
    },
    ("log-dirichlet", 0.5): {
        "N": (49, 99, 199, 399),
        "k": (5, 10, 20),
        "delta": (
            (8.4050e-05, 4.0854e-04, 2.4019e-03),
            (7.6244e-06, 3.7163e-05, 2.2161e-04),
            (6.9096e-07, 3.3691e-06, 2.0117e-05),
            (6.2613e-08, 3.0530e-07, 1.8233e-06),
        ),
        "order": ((3.463, 3.459, 3.438), (3.464, 3.463, 3.462), (3.464, 3.464, 3.464)),
        "p": 2.0 * 3.0**0.5,
    },
    ("log-dirichlet", 1.0): {
        "N": (49, 99, 199, 399),
        "k": (5, 10, 20),
        "delta": (
            (8.6382e-06, 4.5493e-05, 3.2872e-04),
            (3.8980e-07, 2.0601e-06, 1.5299e-05),
            (1.7566e-08, 9.2871e-08, 6.9082e-07),
            (7.9135e-10, 4.1846e-09, 3.1136e-08),
        ),
        "order": ((4.470, 4.465, 4.425), (4.472, 4.471, 4.469), (4.472, 4.472, 4.472)),
        "p": 2.0 * 5.0**0.5,
    },
}

# Corrected lambda_15 at N = 3000 for ``quadratic-neumann``, keyed by gamma.
LAMBDA15_N3000 = {0.4: 523.9182763990, 0.65: 528.1830147149, 0.9: 552.2447514722}
