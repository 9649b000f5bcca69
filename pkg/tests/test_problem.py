import pytest

from slp.problem import (
    BoundaryCondition,
    EndpointClass,
    ProblemSpec,
    UnsupportedProblemError,
    classify_endpoint,
)


@pytest.mark.parametrize(
    "gamma, g_left, expected",
    [
        (1.5, 2.0, EndpointClass.LC_NONOSCILLATORY),
        (2.0, 1.0, EndpointClass.LP_NONOSCILLATORY),
        (2.0, -0.5, EndpointClass.LC_OSCILLATORY),
        (0.0, 3.0, EndpointClass.REGULAR),
        (0.7, 0.0, EndpointClass.REGULAR),
        (0.5, -1.0, EndpointClass.WEAKLY_REGULAR),
        (1.0, 4.0, EndpointClass.LC_NONOSCILLATORY),
        (2.0, -0.25, EndpointClass.LC_NONOSCILLATORY),
        (2.0, 0.5, EndpointClass.LC_NONOSCILLATORY),
        (2.0, 0.75, EndpointClass.LP_NONOSCILLATORY),
        (2.5, -1.0, EndpointClass.LC_OSCILLATORY),
        (2.5, 1.0, EndpointClass.LP_NONOSCILLATORY),
    ],
)
def test_classification(gamma, g_left, expected):
    assert classify_endpoint(gamma, g_left) is expected


def test_negative_gamma_rejected():
    with pytest.raises(ValueError):
        classify_endpoint(-0.1, 1.0)


class TestBoundaryCondition:
    def test_parse_constant_expressions(self):
        bc = BoundaryCondition.parse("1, -1/2")
        assert (bc.alpha, bc.beta) == (1.0, -0.5)

    @pytest.mark.parametrize("text", ["1", "1,2,3", "x,1", "0,0"])
    def test_parse_errors(self, text):
        with pytest.raises(ValueError):
            BoundaryCondition.parse(text)

    def test_kinds(self):
        assert BoundaryCondition(2, 0).is_dirichlet
        assert BoundaryCondition(0, 3).is_neumann
        assert not BoundaryCondition(1, 1).is_dirichlet

    @pytest.mark.parametrize("alpha, beta", [(1.0, -1.0), (0.1, 1 / 3), (2.0, 0.0)])
    def test_str_roundtrip(self, alpha, beta):
        bc = BoundaryCondition(alpha, beta)
        assert BoundaryCondition.parse(str(bc)) == bc


class TestProblemSpec:
    def test_accepts_strings(self):
        p = ProblemSpec("cos(2*pi*x)", "10*(2-exp(-x))", 0.25, "1,1", "1,-1")
        assert p.g_left == pytest.approx(10 * (2 - 2.718281828459045))
        assert p.endpoint_class is EndpointClass.WEAKLY_REGULAR
        assert not p.singular_path
        assert p.validate() is p

    def test_singular_needs_dirichlet(self):
        p = ProblemSpec("0", "1", 1.5, "1,1", "1,0")
        with pytest.raises(UnsupportedProblemError, match="Dirichlet"):
            p.validate()

    def test_oscillatory_rejected(self):
        with pytest.raises(UnsupportedProblemError, match="oscillatory"):
            ProblemSpec("0", "-1", 2, "1,0", "1,0").validate()

    def test_gamma_above_two_rejected(self):
        with pytest.raises(UnsupportedProblemError):
            ProblemSpec("0", "1", 2.5, "1,0", "1,0").validate()

    def test_negative_gamma(self):
        with pytest.raises(ValueError):
            ProblemSpec("0", "1", -1, "1,0", "1,0")

    def test_zero_g_takes_regular_path(self):
        p = ProblemSpec("x", "0", 1.5, "0,1", "1,0")
        assert p.g_is_zero
        assert not p.singular_path
        p.validate()
