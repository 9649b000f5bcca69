"""Problem definition: -y'' + q y = lambda y on (-1, 1) with

    q(x) = f(x) + g(x) / (1+x)**gamma

and separated boundary conditions alpha*y + beta*y' = 0 at each endpoint.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .expression import Expr, parse

__all__ = [
    "BoundaryCondition",
    "DIRICHLET",
    "NEUMANN",
    "EndpointClass",
    "ProblemSpec",
    "UnsupportedProblemError",
    "classify_endpoint",
]


class UnsupportedProblemError(ValueError):
    """The problem lies outside what the method handles (oscillatory endpoint, gamma > 2, ...)."""


@dataclass(frozen=True)
class BoundaryCondition:
    """``alpha * y(c) + beta * y'(c) = 0`` at an endpoint ``c``."""

    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        if self.alpha == 0.0 and self.beta == 0.0:
            raise ValueError("boundary condition needs alpha^2 + beta^2 != 0")

    @property
    def is_dirichlet(self):
        return self.beta == 0.0

    @property
    def is_neumann(self):
        return self.alpha == 0.0

    @classmethod
    def parse(cls, text):
        """Read ``"alpha,beta"``; each part may be a constant expression such as ``-1/2``."""
        parts = [p for p in str(text).split(",")]
        if len(parts) != 2:
            raise ValueError(f"boundary condition must be 'alpha,beta', got {text!r}")
        return cls(*(_constant(p) for p in parts))

    def __str__(self):
        return f"{self.alpha:g},{self.beta:g}" if _short_ok(self) else f"{self.alpha!r},{self.beta!r}"


def _short_ok(bc):
    return float(f"{bc.alpha:g}") == bc.alpha and float(f"{bc.beta:g}") == bc.beta


DIRICHLET = BoundaryCondition(1.0, 0.0)
NEUMANN = BoundaryCondition(0.0, 1.0)


def _constant(text):
    expr = parse(text)
    if not expr.is_constant():
        raise ValueError(f"expected a constant, got {text!r}")
    return float(expr(0.0))


class EndpointClass(str, enum.Enum):
    REGULAR = "regular"
    WEAKLY_REGULAR = "weakly-regular"
    LC_NONOSCILLATORY = "LC-nonoscillatory"
    LC_OSCILLATORY = "LC-oscillatory"
    LP_NONOSCILLATORY = "LP-nonoscillatory"

    @property
    def oscillatory(self):
        return self is EndpointClass.LC_OSCILLATORY

    @property
    def singular(self):
        return self in (
            EndpointClass.LC_NONOSCILLATORY,
            EndpointClass.LC_OSCILLATORY,
            EndpointClass.LP_NONOSCILLATORY,
        )

    def __str__(self):
        return self.value


def classify_endpoint(gamma, g_left):
    """Classify x = -1 from the exponent ``gamma`` and the value ``g(-1)``.

    Total for ``gamma >= 0``; values of gamma above 2 are classified so that
    callers can report why they are unsupported.
    """
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    if gamma == 0 or g_left == 0:
        return EndpointClass.REGULAR
    if gamma < 1:
        return EndpointClass.WEAKLY_REGULAR
    if gamma < 2:
        return EndpointClass.LC_NONOSCILLATORY
    if gamma == 2:
        if g_left < -0.25:
            return EndpointClass.LC_OSCILLATORY
        if g_left < 0.75:
            return EndpointClass.LC_NONOSCILLATORY
        return EndpointClass.LP_NONOSCILLATORY
    return EndpointClass.LC_OSCILLATORY if g_left < 0 else EndpointClass.LP_NONOSCILLATORY


@dataclass(frozen=True)
class ProblemSpec:
    """A Sturm-Liouville problem with potential f + g/(1+x)^gamma.

    ``f`` and ``g`` accept expression strings or parsed trees.
    """

    f: Expr
    g: Expr
    gamma: float
    bc_left: BoundaryCondition
    bc_right: BoundaryCondition
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "f", parse(self.f))
        object.__setattr__(self, "g", parse(self.g))
        gamma = float(self.gamma)
        object.__setattr__(self, "gamma", gamma)
        if isinstance(self.bc_left, str):
            object.__setattr__(self, "bc_left", BoundaryCondition.parse(self.bc_left))
        if isinstance(self.bc_right, str):
            object.__setattr__(self, "bc_right", BoundaryCondition.parse(self.bc_right))
        if not math.isfinite(gamma) or gamma < 0:
            raise ValueError(f"gamma must be a nonnegative number, got {gamma}")

    @property
    def g_left(self):
        return float(self.g(-1.0))

    @property
    def g_is_zero(self):
        return self.g.is_constant() and self.g(0.0) == 0.0

    @property
    def endpoint_class(self):
        return classify_endpoint(self.gamma, self.g_left)

    @property
    def singular_path(self):
        """True when Q is assembled through the (1+x) P^{(0,1)} factorization."""
        return self.gamma >= 1 and not self.g_is_zero

    def validate(self):
        """Raise :class:`UnsupportedProblemError` unless the method applies."""
        cls = self.endpoint_class
        if self.gamma > 2:
            raise UnsupportedProblemError(
                f"gamma = {self.gamma} > 2 (essential singularity) is not supported; endpoint is {cls}"
            )
        if cls.oscillatory:
            raise UnsupportedProblemError(
                f"left endpoint is {cls} (gamma = {self.gamma}, g(-1) = {self.g_left}); "
                "oscillatory endpoints are not supported"
            )
        if self.singular_path and not self.bc_left.is_dirichlet:
            raise UnsupportedProblemError(
                f"gamma = {self.gamma} >= 1 requires the Dirichlet (Friedrichs) condition at x = -1, "
                f"got alpha={self.bc_left.alpha}, beta={self.bc_left.beta}"
            )
        return self

    def describe(self):
        return (
            f"q(x) = {self.f} + ({self.g})/(1+x)^{self.gamma:g}; "
            f"BC left ({self.bc_left}), BC right ({self.bc_right})"
        )
