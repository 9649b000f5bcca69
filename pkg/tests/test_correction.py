import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from slp.assembly import assemble_system
from slp.basis import BasisCoefficients
from slp.benchmarks import BENCHMARKS, DEFAULT_PARAMETERS, LAMBDA15_N3000, benchmark
from slp.correction import (
    alg2_dN,
    correct,
    correct_alg1,
    correct_alg2,
    correct_alg3,
    epsilon_bar,
    kappa_ratio_study,
    select_algorithm,
)
from slp.driver import compute_eigenpairs, solve_problem
from slp.polyops import gauss_nodes
from slp.problem import BoundaryCondition, ProblemSpec
from slp.validation import reference_bessel

D = BoundaryCondition(1, 0)
NEU = BoundaryCondition(0, 1)

BENCH = [(name, param) for name in BENCHMARKS for param in DEFAULT_PARAMETERS[name]]


class TestSelection:
    def test_alg1(self):
        c = select_algorithm(benchmark("cosine-robin", 0.5))
        assert c.algorithm == "alg1"
        assert c.p == 4.0

    def test_alg2(self):
        c = select_algorithm(benchmark("xcos-dirichlet-neumann", 1.75))
        assert c.algorithm == "alg2"
        assert c.p == pytest.approx(3.0)
        assert c.L == 3

    def test_alg3(self):
        c = select_algorithm(benchmark("log-dirichlet", 0.5))
        assert c.algorithm == "alg3"
        assert c.p == pytest.approx(2 * math.sqrt(3))

    @pytest.mark.parametrize(
        "problem, why",
        [
            (ProblemSpec("x", "3", 0.0, "1,1", "1,0"), "smooth"),
            (ProblemSpec("x", "0", 0.5, "1,1", "1,0"), "smooth"),
            (ProblemSpec("0", "1+x", 0.5, "1,1", "1,0"), "g(-1) = 0"),
            (ProblemSpec("0", "3", 1.0, "1,0", "1,0"), "gamma = 1"),
            (ProblemSpec("0", "2", 2.0, "1,0", "1,0"), "integer"),
            (ProblemSpec("0", "-0.2", 2.0, "1,0", "1,0"), "g(-1) < 0"),
        ],
    )
    def test_none(self, problem, why):
        c = select_algorithm(problem)
        assert c.algorithm == "none"
        assert why in c.reason

    @given(st.floats(0.01, 0.99))
    def test_alg1_constants(self, gamma):
        c = select_algorithm(ProblemSpec("0", "1", gamma, "1,1", "1,0"))
        assert 2 < c.p < 6
        assert c.omega > 0

    def test_alg2_chi(self):
        g = 2.0
        c = select_algorithm(ProblemSpec("0", "2", 1.25, "1,0", "1,0"))
        assert c.L == 1
        assert c.chi[0] == 1.0
        assert c.chi[1] == pytest.approx(g / (0.75 * 1.75))

    @given(st.floats(0.02, 1.98).filter(lambda g: abs(g - 1) > 1e-3))
    def test_alg2_constants_finite(self, gamma):
        c = select_algorithm(ProblemSpec("0", "1.5", gamma, "1,0", "1,0"))
        assert c.L == max(0, math.ceil((gamma - 1) / (2 - gamma) - 1e-12))
        assert all(math.isfinite(v) for v in c.omega_hat + c.omega_j + c.chi)

    def test_alg2_pole_gives_zero(self):
        # gamma = 1.5: second term has Gamma(1 - 1) in a denominator
        c = select_algorithm(ProblemSpec("0", "1", 1.5, "1,0", "1,0"))
        assert c.L == 1
        assert c.omega_hat[1] == 0.0

    def test_alg3_kappa(self):
        c = select_algorithm(ProblemSpec("0", "1", 2.0, "1,0", "1,0"))
        assert c.kappa == pytest.approx(0.854102, abs=1e-6)


class TestEpsilonBar:
    def test_zero_constants(self):
        assert epsilon_bar(np.ones(6), 0.0, 0.0, (1.0, 2.0, 3.0)) == 0.0

    def test_no_overlap(self):
        z = np.arange(1.0, 9.0)
        z[-2:] = 0
        assert epsilon_bar(z, 1.3, -0.7, (1.0, 2.0, 3.0)) == 0.0

    @pytest.mark.parametrize("bcl, bcr", [(D, D), (BoundaryCondition(1, 1), BoundaryCondition(1, -1)), (D, BoundaryCondition(1, -2))])
    def test_against_quadrature(self, bcl, bcr):
        N = 16
        rng = np.random.default_rng(7)
        zeta = rng.standard_normal(N)
        cN, cN1 = 0.37, -1.21
        c = BasisCoefficients.build(N + 4, bcl, bcr)
        system = assemble_system(ProblemSpec("0", "0", 0.0, bcl, bcr), N)
        rule = gauss_nodes(48)
        R = c.evaluate(rule.nodes, N + 2)
        z = zeta @ R[:N]
        ref = rule.integrate(z * (cN * R[N] + cN1 * R[N + 1]))
        assert epsilon_bar(zeta, cN, cN1, system.B_extended) == pytest.approx(ref, abs=1e-12)

    @pytest.mark.parametrize("name, param", BENCH)
    def test_decreasing(self, name, param):
        p = benchmark(name, param)
        eps = np.array([np.abs(solve_problem(p, N, 5)[1].epsilon_bar) for N in (32, 64, 128, 256)])
        if select_algorithm(p).algorithm == "none":
            assert np.all(eps == 0)
        else:
            assert np.all(np.diff(eps, axis=0) < 0)


class TestTrivialCases:
    def test_alg1_zero_g(self):
        mu, eps, cN, cN1 = correct_alg1(5.0, 0.8, 0.0, 0.5, 20, (0.1, 0.2, 0.3), np.ones(20))
        assert (mu, eps) == (5.0, 0.0)

    def test_alg2_vanishing_g(self):
        mus = [correct_alg2(5.0, 0.8, g, 1.5, 20, (0.1, 0.2, 0.3), np.ones(20))[0] for g in (1e-2, 1e-4, 1e-6)]
        assert np.all(np.diff(np.abs(np.array(mus) - 5.0)) < 0)
        assert abs(mus[-1] - 5.0) < 1e-5

    def test_alg3_zero_trace(self):
        mu, eps, cN, cN1 = correct_alg3(5.0, 0.0, 1.0, 20, (0.1, 0.2, 0.3), np.ones(20))
        assert (mu, eps) == (5.0, 0.0)

    def test_alg2_dN_limit(self):
        c = select_algorithm(ProblemSpec("0", "1", 1.25, "1,0", "1,0"))
        assert abs(alg2_dN(c, 10**6)) < 1e-5 < abs(alg2_dN(c, 10))

    def test_none_reports_lambda(self):
        res = compute_eigenpairs(ProblemSpec("x", "0", 0.0, "1,0", "1,0"), 32, 5)
        rep = correct(res)
        np.testing.assert_array_equal(rep.mu, rep.lambdas)
        assert np.all(rep.epsilon_bar == 0)

    def test_low_confidence_flag(self):
        _, rep = solve_problem(benchmark("cosine-robin", 0.5), 40, 15)
        np.testing.assert_array_equal(rep.low_confidence, 40 < 4 * np.arange(1, 16))


class TestDominance:
    def test_alg1_table3_problem(self, solved):
        # the tabulated value is rounded to 1e-10, coarser than both errors here
        _, mu_ref = solved("quadratic-neumann", 0.4, 2560, 15)
        ref = mu_ref[14]
        assert ref == pytest.approx(LAMBDA15_N3000[0.4], abs=5e-11)
        lam640, _ = solved("quadratic-neumann", 0.4, 640, 15)
        _, mu320 = solved("quadratic-neumann", 0.4, 320, 15)
        assert abs(mu320[14] - ref) < abs(lam640[14] - ref)

    def test_alg2(self, solved):
        _, ref = solved("xcos-dirichlet-neumann", 1.5, 2560, 25)
        lam256, _ = solved("xcos-dirichlet-neumann", 1.5, 256, 25)
        _, mu128 = solved("xcos-dirichlet-neumann", 1.5, 128, 25)
        assert abs(mu128[24] - ref[24]) < abs(lam256[24] - ref[24])

    def test_alg3_bessel(self):
        p = ProblemSpec("0", "1", 2.0, "1,0", "1,0")
        ref = reference_bessel(1.0, 10).eigenvalues
        _, rep = solve_problem(p, 128, 10)
        assert np.all(np.abs(rep.mu - ref) < np.abs(rep.lambdas - ref))


@pytest.mark.parametrize("gamma", [0.25, 0.5, 0.75])
def test_alg1_raises_order(gamma):
    p = benchmark("cosine-robin", gamma)
    _, ref = solve_problem(p, 1599, 5)
    err = np.array([abs(solve_problem(p, N, 5)[1].mu[4] - ref.mu[4]) for N in (49, 99, 199)])
    orders = np.log2(err[:-1] / err[1:])
    assert np.all(orders >= 6 - 4 * gamma + 0.5)


@pytest.mark.parametrize("name, param", BENCH)
def test_correction_sign_consistent(name, param):
    Ns = (40, 80, 160, 320)
    signs = np.array([np.sign(r.lambdas - r.mu) for r in (solve_problem(benchmark(name, param), N, 10)[1] for N in Ns)])
    for k in range(1, 11):
        rows = [i for i, N in enumerate(Ns) if N >= 4 * k]
        assert len(set(signs[rows, k - 1])) == 1


class TestKappa:
    def test_requires_gamma_two(self):
        with pytest.raises(ValueError, match="gamma = 2"):
            kappa_ratio_study(benchmark("cosine-robin", 0.5), [10, 20], 200)

    def test_requires_large_reference(self):
        with pytest.raises(ValueError, match="too small"):
            kappa_ratio_study(benchmark("runge-sinh-robin", 0.75), [100, 200], 600)

    def test_partial_sum_at_full_size_is_the_trace(self):
        res = compute_eigenpairs(benchmark("runge-sinh-robin", 0.75), 200, 1)
        u = res.system.coeffs.u_values_left()[:200]
        assert res.vector(1) @ u == pytest.approx(res.zhat_left[0], rel=1e-14)

    def test_ratio_approaches_kappa(self):
        study = kappa_ratio_study(benchmark("runge-sinh-robin", 0.75), [50, 100], 400)
        assert np.all(np.abs(study.ratios / study.kappa - 1) < 0.05)
