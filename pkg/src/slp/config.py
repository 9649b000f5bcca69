"""Run configuration files (INI syntax).

Example::

    [problem]
    name = quadratic-neumann
    f = 2*x^2
    g = 5/((1+x)^2+1)
    gamma = 0.4
    bc_left = 0,1
    bc_right = 1,0

    [run]
    N = 3000
    M = 15

Keys of ``[run]``:

``N``
    one size (``solve``) or a doubling list ``N, 2N+1, ...`` (``converge``).
``M``
    number of eigenpairs for ``solve`` (default 10).
``k``
    eigenvalue indices tabulated by ``converge`` (default ``5, 10, 20``).
``correct``
    apply the a-posteriori correction (default yes).
``method``
    ``shift-invert`` (default) or ``cholesky-B``.
``tol``
    relative chop tolerance of the Legendre projection of f and g (default 1e-15).
``reference_N``
    when set, ``converge`` emits relative errors against corrected eigenvalues at
    this size instead of self-convergence differences (any N-list is allowed).

Keys of ``[validate]``: ``oracle_N`` (8), ``reference_K`` (8), ``reference_N``
(``128, 256, 512``), ``kappa_N`` (``100, 200, 400``), ``kappa_N_ref`` (4000),
``kappa_k`` (1), ``inject_fault`` (``none`` or ``Q``; corrupts one entry of Q
before the oracle comparison so the failure path can be exercised).
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass, field

from .expression import source_text
from .problem import BoundaryCondition, ProblemSpec

__all__ = ["ConfigError", "RunConfig", "ValidateOptions", "load_config", "parse_config"]


class ConfigError(ValueError):
    """Malformed or inconsistent configuration."""


def _int_list(text, key):
    try:
        values = [int(part) for part in str(text).replace(";", ",").split(",") if part.strip()]
    except ValueError:
        raise ConfigError(f"{key} must be a comma-separated list of integers, got {text!r}") from None
    if not values:
        raise ConfigError(f"{key} is empty")
    return values


def _fmt_list(values):
    return ", ".join(str(v) for v in values)


@dataclass
class ValidateOptions:
    oracle_N: int = 8
    reference_K: int = 8
    reference_N: list = field(default_factory=lambda: [128, 256, 512])
    kappa_N: list = field(default_factory=lambda: [100, 200, 400])
    kappa_N_ref: int = 4000
    kappa_k: int = 1
    inject_fault: str = "none"


@dataclass
class RunConfig:
    problem: ProblemSpec
    N: list = field(default_factory=lambda: [64])
    M: int = 10
    k: list = field(default_factory=lambda: [5, 10, 20])
    correct: bool = True
    method: str = "shift-invert"
    tol: float = 1e-15
    reference_N: int | None = None
    validate: ValidateOptions = field(default_factory=ValidateOptions)

    def check(self):
        """Consistency checks that do not depend on the command."""
        if any(n < 1 for n in self.N):
            raise ConfigError("N must be positive")
        if self.M < 1:
            raise ConfigError("M must be positive")
        if self.method not in ("shift-invert", "cholesky-B"):
            raise ConfigError(f"unknown method {self.method!r}")
        if not 1e-15 <= self.tol < 1:
            raise ConfigError(f"tol must lie in [1e-15, 1), got {self.tol}")
        if self.validate.inject_fault not in ("none", "Q"):
            raise ConfigError(f"inject_fault must be 'none' or 'Q', got {self.validate.inject_fault!r}")
        return self

    def to_ini(self):
        """Serialize; ``parse_config(cfg.to_ini())`` reproduces ``cfg``."""
        cp = configparser.ConfigParser(interpolation=None)
        cp.optionxform = str  # keep "N" readable; reading is case-insensitive
        p = self.problem
        cp["problem"] = {
            "name": p.name,
            "f": source_text(p.f),
            "g": source_text(p.g),
            "gamma": repr(p.gamma),
            "bc_left": str(p.bc_left),
            "bc_right": str(p.bc_right),
        }
        run = {
            "N": _fmt_list(self.N),
            "M": str(self.M),
            "k": _fmt_list(self.k),
            "correct": "yes" if self.correct else "no",
            "method": self.method,
            "tol": repr(self.tol),
        }
        if self.reference_N is not None:
            run["reference_N"] = str(self.reference_N)
        cp["run"] = run
        v = self.validate
        cp["validate"] = {
            "oracle_N": str(v.oracle_N),
            "reference_K": str(v.reference_K),
            "reference_N": _fmt_list(v.reference_N),
            "kappa_N": _fmt_list(v.kappa_N),
            "kappa_N_ref": str(v.kappa_N_ref),
            "kappa_k": str(v.kappa_k),
            "inject_fault": v.inject_fault,
        }
        buf = io.StringIO()
        cp.write(buf)
        return buf.getvalue()


def parse_config(text):
    """Build a :class:`RunConfig` from INI text."""
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse configuration: {exc}") from None
    if "problem" not in cp:
        raise ConfigError("missing [problem] section")
    sec = cp["problem"]
    missing = [key for key in ("f", "g", "gamma", "bc_left", "bc_right") if key not in sec]
    if missing:
        raise ConfigError(f"[problem] lacks {', '.join(missing)}")
    try:
        problem = ProblemSpec(
            sec["f"],
            sec["g"],
            float(sec["gamma"]),
            BoundaryCondition.parse(sec["bc_left"]),
            BoundaryCondition.parse(sec["bc_right"]),
            name=sec.get("name", ""),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid [problem]: {exc}") from None

    cfg = RunConfig(problem)
    run = cp["run"] if "run" in cp else {}
    try:
        if "N" in run:
            cfg.N = _int_list(run["N"], "N")
        if "M" in run:
            cfg.M = int(run["M"])
        if "k" in run:
            cfg.k = _int_list(run["k"], "k")
        if "correct" in run:
            cfg.correct = cp.getboolean("run", "correct")
        if "method" in run:
            cfg.method = run["method"].strip()
        if "tol" in run:
            cfg.tol = float(run["tol"])
        if "reference_N" in run:
            cfg.reference_N = int(run["reference_N"])
        if "validate" in cp:
            v = cp["validate"]
            opts = cfg.validate
            if "oracle_N" in v:
                opts.oracle_N = int(v["oracle_N"])
            if "reference_K" in v:
                opts.reference_K = int(v["reference_K"])
            if "reference_N" in v:
                opts.reference_N = _int_list(v["reference_N"], "reference_N")
            if "kappa_N" in v:
                opts.kappa_N = _int_list(v["kappa_N"], "kappa_N")
            if "kappa_N_ref" in v:
                opts.kappa_N_ref = int(v["kappa_N_ref"])
            if "kappa_k" in v:
                opts.kappa_k = int(v["kappa_k"])
            if "inject_fault" in v:
                opts.inject_fault = v["inject_fault"].strip()
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid value: {exc}") from None
    return cfg.check()


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return parse_config(text)
