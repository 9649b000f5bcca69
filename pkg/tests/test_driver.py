import numpy as np
import pytest

from slp.benchmarks import benchmark
from slp.driver import check_doubling, convergence_table, doubling_sequence, max_workers, solve_problem
from slp.problem import ProblemSpec


def test_doubling_sequence():
    assert doubling_sequence(49, 4) == [49, 99, 199, 399]


@pytest.mark.parametrize("bad", [[40], [40, 80], [40, 81, 160]])
def test_check_doubling_rejects(bad):
    with pytest.raises(ValueError):
        check_doubling(bad)


def test_check_doubling_accepts():
    assert check_doubling(["10", 21, 43]) == [10, 21, 43]


class TestThreads:
    def test_env(self, monkeypatch):
        monkeypatch.setenv("SLP_THREADS", "3")
        assert max_workers() == 3

    def test_default(self, monkeypatch):
        monkeypatch.delenv("SLP_THREADS", raising=False)
        assert max_workers(5) == 5

    @pytest.mark.parametrize("value", ["0", "-2", "two"])
    def test_invalid(self, monkeypatch, value):
        monkeypatch.setenv("SLP_THREADS", value)
        with pytest.raises(ValueError, match="SLP_THREADS"):
            max_workers()


def test_uncorrected_report():
    _, rep = solve_problem(benchmark("cosine-robin", 0.5), 40, 5, corrected=False)
    np.testing.assert_array_equal(rep.mu, rep.lambdas)
    assert rep.constants.algorithm == "none"


@pytest.fixture(scope="module")
def table():
    return convergence_table(benchmark("cosine-robin", 0.5), [24, 49, 99], [1, 5], workers=1)


class TestConvergenceTable:
    def test_shape(self, table):
        assert table.delta_raw.shape == (3, 2)
        assert table.order_raw.shape == (2, 2)
        assert len(list(table.rows())) == 6
        assert set(table.lambdas) == {24, 49, 99, 199}

    def test_corrected_converges_faster(self, table):
        assert np.all(table.delta_corrected[1:, 1] < table.delta_raw[1:, 1])

    def test_parallel_matches_serial(self, table, monkeypatch):
        monkeypatch.setenv("SLP_THREADS", "4")
        par = convergence_table(benchmark("cosine-robin", 0.5), [24, 49, 99], [1, 5])
        np.testing.assert_array_equal(par.delta_raw, table.delta_raw)
        np.testing.assert_array_equal(par.delta_corrected, table.delta_corrected)

    def test_smooth_problem_saturates(self):
        p = ProblemSpec("x", "0", 0.0, "1,0", "1,0")
        t = convergence_table(p, [40, 81, 163], [1], workers=1)
        assert t.saturated_raw.all()
        assert np.isnan(t.order_raw).all()

    def test_k_exceeds_N(self):
        with pytest.raises(ValueError, match="exceeds"):
            convergence_table(benchmark("cosine-robin", 0.5), [4, 9], [5])
