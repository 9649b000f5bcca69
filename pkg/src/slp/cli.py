"""Command-line front end.

``slp classify|solve|converge|validate --config FILE [--out FILE] [--format csv|json]``

Exit codes: 0 ok, 1 usage or configuration error, 2 unsupported problem,
3 assembly failure, 4 eigensolver failure, 5 validation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys

import numpy as np

from .assembly import AssemblyError
from .config import ConfigError, load_config
from .correction import select_algorithm
from .driver import check_doubling, convergence_table, max_workers, solve_problem
from .eigensolve import EigensolveError
from .expansion import NoDecayError, OperatorSizeError
from .expression import ExpressionError
from .problem import UnsupportedProblemError

__all__ = ["main", "EXIT_OK", "EXIT_USAGE", "EXIT_UNSUPPORTED", "EXIT_ASSEMBLY", "EXIT_EIGENSOLVE", "EXIT_VALIDATION"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNSUPPORTED = 2
EXIT_ASSEMBLY = 3
EXIT_EIGENSOLVE = 4
EXIT_VALIDATION = 5

log = logging.getLogger("slp")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        return f"{v:.15e}"
    return str(value)


def _json_value(value):
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        return None if math.isnan(v) or math.isinf(v) else v
    return value


def render(rows, fmt, meta=None):
    """Render a list of dicts as CSV (16 significant digits) or JSON."""
    rows = list(rows)
    if fmt == "json":
        payload = {"meta": {k: _json_value(v) for k, v in (meta or {}).items()}, "rows": [
            {k: _json_value(v) for k, v in row.items()} for row in rows
        ]}
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _fmt(v) for k, v in row.items()})
    return buf.getvalue()


# ---------------------------------------------------------------- commands


def cmd_classify(cfg):
    problem = cfg.problem
    consts = select_algorithm(problem)
    rows = [
        {"key": "endpoint_class", "value": str(problem.endpoint_class)},
        {"key": "gamma", "value": _fmt(problem.gamma)},
        {"key": "g_left", "value": _fmt(problem.g_left)},
        {"key": "algorithm", "value": consts.algorithm},
        {"key": "p", "value": _fmt(consts.p)},
    ]
    if consts.reason:
        rows.append({"key": "note", "value": consts.reason})
    return rows, {"command": "classify"}


def cmd_solve(cfg):
    if len(cfg.N) != 1:
        raise UsageError("solve takes a single N")
    N = cfg.N[0]
    if cfg.M > N:
        raise UsageError(f"M = {cfg.M} exceeds N = {N}")
    _, report = solve_problem(cfg.problem, N, cfg.M, corrected=cfg.correct, method=cfg.method, tol=cfg.tol)
    rows = list(report.rows())
    meta = {"command": "solve", "N": N, "M": cfg.M, "algorithm": report.constants.algorithm, "p": report.constants.p}
    return rows, meta


def cmd_converge(cfg):
    if cfg.reference_N is not None:
        return _error_profile(cfg)
    try:
        check_doubling(cfg.N)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if max(cfg.k) > cfg.N[0]:
        raise UsageError(f"index k = {max(cfg.k)} exceeds N = {cfg.N[0]}")
    table = convergence_table(cfg.problem, cfg.N, cfg.k, method=cfg.method)
    rows = list(table.rows())
    meta = {"command": "converge", "algorithm": table.constants.algorithm, "p": table.constants.p}
    return rows, meta


def _error_profile(cfg):
    # relative errors against corrected values at reference_N (plot data)
    ks = cfg.k
    M = max(ks)
    if any(N > cfg.reference_N for N in cfg.N):
        raise UsageError("reference_N must exceed every N")
    if M > min(cfg.N):
        raise UsageError(f"index k = {M} exceeds N = {min(cfg.N)}")
    _, ref = solve_problem(cfg.problem, cfg.reference_N, M, method=cfg.method, tol=cfg.tol)
    rows = []
    for N in cfg.N:
        _, rep = solve_problem(cfg.problem, N, M, method=cfg.method, tol=cfg.tol)
        for k in ks:
            exact = ref.mu[k - 1]
            for corrected, value in ((False, rep.lambdas[k - 1]), (True, rep.mu[k - 1])):
                err = abs(value - exact) / abs(exact) if exact != 0 else abs(value - exact)
                rows.append({
                    "N": N,
                    "k": k,
                    "log10_rel_error": math.log10(err) if err > 0 else float("nan"),
                    "corrected": corrected,
                })
    return rows, {"command": "converge", "reference_N": cfg.reference_N}


def cmd_validate(cfg):
    from .suite import run_suite

    results = run_suite(cfg)
    rows = [r.as_dict() for r in results]
    failed = [r.name for r in results if r.failed]
    return rows, {"command": "validate", "failed": ", ".join(failed)}


COMMANDS = {"classify": cmd_classify, "solve": cmd_solve, "converge": cmd_converge, "validate": cmd_validate}


def build_parser():
    parser = _Parser(prog="slp", description="Spectral Legendre-Galerkin eigenvalues of singular Sturm-Liouville problems.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True, help="problem/run configuration (INI)")
    parser.add_argument("--out", help="write the table here instead of stdout")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    return parser


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"slp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")

    try:
        try:
            max_workers()
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        cfg = load_config(args.config)
        if args.command == "classify":
            rows, meta = cmd_classify(cfg)
            _emit(render(rows, args.format, meta), args.out)
            try:
                cfg.problem.validate()
            except UnsupportedProblemError as exc:
                print(f"slp: unsupported problem: {exc}", file=sys.stderr)
                return EXIT_UNSUPPORTED
            return EXIT_OK
        cfg.problem.validate()
        rows, meta = COMMANDS[args.command](cfg)
    except (UsageError, ConfigError) as exc:
        print(f"slp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedProblemError as exc:
        print(f"slp: unsupported problem: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (AssemblyError, NoDecayError, OperatorSizeError, ExpressionError) as exc:
        print(f"slp: assembly failed: {exc}", file=sys.stderr)
        return EXIT_ASSEMBLY
    except EigensolveError as exc:
        print(f"slp: eigensolver failed: {exc}", file=sys.stderr)
        return EXIT_EIGENSOLVE

    _emit(render(rows, args.format, meta), args.out)
    if args.command == "validate" and meta.get("failed"):
        print(f"slp: validation failed: {meta['failed']}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
