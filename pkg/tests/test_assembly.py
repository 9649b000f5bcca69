import math

import mpmath
import numpy as np
import pytest

from slp.assembly import (
    assemble_A,
    assemble_B,
    assemble_Gtilde_singular,
    assemble_Q,
    assemble_Qhat_regular,
    assemble_system,
    singular_moments,
)
from slp.basis import BasisCoefficients
from slp.benchmarks import BENCHMARKS, DEFAULT_PARAMETERS
from slp.expansion import project_legendre
from slp.polyops import gauss_nodes, legendre_table
from slp.problem import BoundaryCondition, ProblemSpec
from slp.validation import oracle_B, oracle_entry, oracle_Q

D = BoundaryCondition(1, 0)
NEU = BoundaryCondition(0, 1)
ROBIN_L, ROBIN_R = BoundaryCondition(1, 1), BoundaryCondition(1, -1)

BENCH = [(name, param) for name in BENCHMARKS for param in DEFAULT_PARAMETERS[name]]


def sweep_problem(gamma):
    left = D if gamma >= 1 else ROBIN_L
    return ProblemSpec("x", "2+exp(-x)", gamma, left, NEU)


class TestA:
    def test_dirichlet_values(self):
        c = BasisCoefficients.build(10, D, D)
        A = assemble_A(6, c)
        assert A[0] == 6.0
        assert A[5] == 26.0

    def test_neumann(self):
        c = BasisCoefficients.build(4, NEU, NEU)
        assert assemble_A(2, c)[1] == pytest.approx(5 / 3)

    @pytest.mark.parametrize("bcl, bcr", [(D, D), (NEU, NEU), (ROBIN_L, ROBIN_R), (D, ROBIN_R), (NEU, D)])
    def test_growth(self, bcl, bcr):
        c = BasisCoefficients.build(2002, bcl, bcr)
        A = assemble_A(2000, c)
        n = np.array([100, 1000, 1999])
        ratio = A[n] / (4 * n + 6)
        assert np.all(np.abs(ratio - 1) <= 5.0 / n)
        assert np.all(np.diff(np.abs(ratio - 1)) <= 0)

    @pytest.mark.parametrize("bcl, bcr", [(D, D), (NEU, NEU), (ROBIN_L, ROBIN_R), (D, BoundaryCondition(1, -2))])
    def test_green_identity(self, bcl, bcr):
        # -int R_m R_n'' equals a_nn on the diagonal and vanishes elsewhere
        N = 11
        c = BasisCoefficients.build(N + 4, bcl, bcr)
        L = np.polynomial.legendre
        rule = gauss_nodes(40)
        vals = c.evaluate(rule.nodes, N)
        second = np.empty_like(vals)
        for n in range(N):
            series = np.zeros(n + 3)
            series[n : n + 3] = c.triple(n)
            second[n] = L.legval(rule.nodes, L.legder(series, 2))
        S = -(vals * rule.weights) @ second.T
        np.testing.assert_allclose(S, S.T, atol=1e-11 * np.abs(S).max())
        np.testing.assert_allclose(S, np.diag(assemble_A(N, c)), atol=1e-11 * np.abs(S).max())


class TestB:
    def test_dirichlet_entries(self):
        c = BasisCoefficients.build(12, D, D)
        B, _ = assemble_B(8, c)
        assert B[0, 0] == pytest.approx(2.4)
        assert B[0, 2] == pytest.approx(-0.4)
        assert np.all(B[np.abs(np.subtract.outer(range(8), range(8))) > 2] == 0)

    @pytest.mark.parametrize("bcl, bcr", [(D, D), (NEU, NEU), (ROBIN_L, ROBIN_R), (D, ROBIN_R), (NEU, D), (D, NEU)])
    def test_matches_quadrature_gram(self, bcl, bcr):
        c = BasisCoefficients.build(12, bcl, bcr)
        B, _ = assemble_B(8, c)
        Bo = oracle_B(8, bcl, bcr, nodes=64)
        assert np.max(np.abs(B - Bo)) / np.max(np.abs(Bo)) < 1e-12

    @pytest.mark.parametrize("bcl, bcr", [(D, D), (ROBIN_L, ROBIN_R), (D, BoundaryCondition(1, -2))])
    def test_extended_entries(self, bcl, bcr):
        N = 10
        c = BasisCoefficients.build(N + 4, bcl, bcr)
        _, ext = assemble_B(N, c)
        big, _ = assemble_B(N + 2, c)
        np.testing.assert_allclose(ext, (big[N, N - 2], big[N, N - 1], big[N + 1, N - 1]), atol=1e-15)

    @pytest.mark.parametrize("bcl, bcr", [(D, D), (NEU, NEU), (ROBIN_L, ROBIN_R), (D, BoundaryCondition(1, -2))])
    def test_positive_definite(self, bcl, bcr):
        c = BasisCoefficients.build(516, bcl, bcr)
        B, _ = assemble_B(512, c)
        np.linalg.cholesky(B)


class TestMoments:
    def test_hat_half(self):
        assert singular_moments(0.5, 1)[0] == pytest.approx(2 * math.sqrt(2))

    def test_tilde_gamma_one(self):
        m = singular_moments(1.0, 12, "tilde")
        assert m[0] == 2.0
        assert np.all(m[1:] == 0)

    def test_hat_against_quadrature(self):
        gamma = 0.25
        rule = gauss_nodes(512, "gauss-jacobi", -gamma)
        ref = legendre_table(10, rule.nodes) @ rule.weights
        np.testing.assert_allclose(singular_moments(gamma, 11), ref, atol=1e-12)

    @pytest.mark.parametrize("gamma", [0.1, 0.6, 0.95])
    def test_hat_against_pochhammer_formula(self, gamma):
        mpmath.mp.dps = 40
        for m in (0, 5, 300):
            exact = (-1) ** m * mpmath.mpf(2) ** (1 - gamma) * mpmath.rf(gamma, m) / mpmath.rf(1 - gamma, m + 1)
            assert singular_moments(gamma, m + 1)[m] == pytest.approx(float(exact), rel=1e-12)

    @pytest.mark.parametrize("gamma", [1.25, 1.5, 2.0])
    def test_tilde_against_pochhammer_formula(self, gamma):
        mpmath.mp.dps = 40
        for m in (0, 3, 250):
            exact = (-1) ** m * mpmath.mpf(2) ** (3 - gamma) * mpmath.rf(gamma - 1, m) / mpmath.rf(3 - gamma, m + 1)
            assert singular_moments(gamma, m + 1, "tilde")[m] == pytest.approx(float(exact), rel=1e-12)

    def test_large_count_finite(self):
        assert np.all(np.isfinite(singular_moments(0.9, 5000)))

    @pytest.mark.parametrize("gamma, kind", [(1.0, "hat"), (0.5, "tilde"), (2.5, "tilde")])
    def test_range_errors(self, gamma, kind):
        with pytest.raises(ValueError):
            singular_moments(gamma, 3, kind)


class TestQhat:
    def test_unit_g(self):
        Q, _ = assemble_Qhat_regular(4, project_legendre("0"), project_legendre("1"), 0.5)
        assert Q[0, 0] == pytest.approx(2 * math.sqrt(2), rel=1e-14)

    def test_constant_f(self):
        Q, _ = assemble_Qhat_regular(6, project_legendre("3"), None, 0.5)
        np.testing.assert_allclose(Q, np.diag(6.0 / (2 * np.arange(8) + 1)), atol=1e-15)

    def test_cosine_robin_against_oracle(self):
        p = BENCHMARKS["cosine-robin"](0.25)
        Q, _ = assemble_Qhat_regular(8, project_legendre(p.f), project_legendre(p.g), 0.25)
        for m in range(10):
            for n in range(10):
                assert Q[m, n] == pytest.approx(oracle_entry(m, n, p), abs=1e-10)

    def test_entry_against_mpmath(self):
        p = BENCHMARKS["cosine-robin"](0.25)
        Q, _ = assemble_Qhat_regular(8, project_legendre(p.f), project_legendre(p.g), 0.25)
        mpmath.mp.dps = 20
        for m, n in ((0, 0), (2, 5)):
            integrand = lambda t: (  # noqa: E731
                (mpmath.cos(2 * mpmath.pi * t) + 10 * (2 - mpmath.exp(-t)) / (1 + t) ** 0.25)
                * mpmath.legendre(m, t)
                * mpmath.legendre(n, t)
            )
            assert Q[m, n] == pytest.approx(float(mpmath.quad(integrand, [-1, 0, 1])), abs=1e-12)

    def test_rejects_singular_gamma(self):
        with pytest.raises(ValueError):
            assemble_Qhat_regular(4, project_legendre("0"), project_legendre("1"), 1.0)


class TestGtilde:
    def test_unit_g_gamma_two(self):
        G, _ = assemble_Gtilde_singular(4, project_legendre("1"), 2.0)
        assert G[0, 0] == pytest.approx(2.0, rel=1e-14)

    def test_constant_g_gamma_one_is_tridiagonal(self):
        G, _ = assemble_Gtilde_singular(10, project_legendre("3"), 1.0)
        off = np.abs(np.subtract.outer(range(11), range(11))) > 1
        assert np.all(G[off] == 0)

    @pytest.mark.parametrize("gamma", [1.0, 1.5, 2.0])
    def test_against_oracle(self, gamma):
        p = ProblemSpec("0", "3*(x*cos(2*pi*x))^2", gamma, D, NEU)
        G, _ = assemble_Gtilde_singular(8, project_legendre(p.g), gamma)
        for m in range(9):
            for n in range(9):
                assert G[m, n] == pytest.approx(oracle_entry(m, n, p, "jacobi01"), abs=1e-10)

    def test_rejects_regular_gamma(self):
        with pytest.raises(ValueError):
            assemble_Gtilde_singular(4, project_legendre("1"), 0.5)


class TestQ:
    def test_zero_potential(self):
        p = ProblemSpec("0", "0", 0.0, D, D)
        s = assemble_system(p, 10)
        assert np.all(s.Q == 0)

    def test_boyd_tridiagonal(self):
        p = ProblemSpec("0", "2.5", 1.0, D, D)
        s = assemble_system(p, 30)
        band = np.abs(np.subtract.outer(range(30), range(30)))
        assert np.all(s.Q[band > 1] == 0)
        assert np.any(s.Q[band == 1] != 0)
        assert s.bandwidth_Q == 1

    @pytest.mark.parametrize("gamma", [0.25, 0.5, 0.75, 1.0, 1.5, 2.0])
    def test_gamma_sweep_against_oracle(self, gamma):
        p = sweep_problem(gamma)
        s = assemble_system(p, 8)
        Qo = oracle_Q(p, 8)
        assert np.max(np.abs(s.Q - Qo)) / max(1.0, np.max(np.abs(Qo))) < 1e-10

    @pytest.mark.parametrize("name, param", BENCH)
    def test_benchmarks_against_oracle(self, name, param):
        p = BENCHMARKS[name](param)
        s = assemble_system(p, 8)
        Qo = oracle_Q(p, 8)
        assert np.max(np.abs(s.Q - Qo)) / max(1.0, np.max(np.abs(Qo))) < 1e-10

    def test_quadratic_neumann_relative(self):
        p = BENCHMARKS["quadratic-neumann"](0.4)
        s = assemble_system(p, 8)
        Qo = oracle_Q(p, 8)
        np.testing.assert_allclose(s.Q, Qo, rtol=1e-9, atol=1e-9 * np.abs(Qo).max())

    @pytest.mark.parametrize("name, param", BENCH)
    def test_symmetry(self, name, param):
        s = assemble_system(BENCHMARKS[name](param), 64)
        assert np.array_equal(s.Q, s.Q.T)
        assert np.array_equal(s.B, s.B.T)
        assert s.raw_asymmetry < 1e-10

    def test_paths(self):
        assert assemble_system(sweep_problem(0.5), 8).assembly_path == "regular"
        assert assemble_system(sweep_problem(1.5), 8).assembly_path == "singular"

    def test_explicit_coefficients(self):
        p = sweep_problem(1.5)
        c = BasisCoefficients.build(12, p.bc_left, p.bc_right)
        Q, info = assemble_Q(8, p, c)
        assert info["path"] == "singular"
        np.testing.assert_allclose(Q, assemble_system(p, 8).Q, atol=1e-15)
