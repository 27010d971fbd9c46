"""Command-line front end: minimize | sweep | verify | closed-form.

Exit codes: 0 success, 2 invalid arguments, 3 verification failure.
JSON and CSV floats use Python's shortest round-trip representation, so
identical command lines reproduce byte-identical files apart from wall_ms.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .analysis import quadratic_newtonian_minimizer
from .core import Configuration, Potential, diameter, min_gap
from .optimizer import GlobalOptions, OptimizerOptions, default_strategy, global_minimize
from .verify import SUITES, run_suite

SWEEP_COLUMNS = (
    "n,gamma,alpha,dim,seed,restarts,energy,diameter,min_gap,"
    "grad_inf_norm,iterations,converged,wall_ms"
)


class ArgumentValidationError(ValueError):
    pass


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _build_potential(args) -> Potential:
    try:
        return Potential(gamma=args.gamma, alpha=args.alpha)
    except ValueError as exc:
        raise ArgumentValidationError(str(exc)) from exc


def _restart_workers(restarts: int) -> int | None:
    raw = os.environ.get("POWERMIN_THREADS")
    if raw is None:
        return None
    try:
        workers = int(raw)
    except ValueError:
        raise ArgumentValidationError(f"POWERMIN_THREADS must be an integer, got {raw!r}")
    return max(1, min(workers, restarts))


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        tmp = path + ".tmp"
        try:
            with open(tmp, "w") as handle:
                handle.write(text)
                if not text.endswith("\n"):
                    handle.write("\n")
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.remove(tmp)
            raise


def cmd_minimize(args) -> int:
    p = _build_potential(args)
    if args.n < 1:
        raise ArgumentValidationError("--n must be >= 1")
    if args.dim < 1:
        raise ArgumentValidationError("--dim must be >= 1")
    opts = GlobalOptions(
        restarts=args.restarts,
        seed=args.seed,
        init_strategy=default_strategy(p, args.dim),
        optimizer=OptimizerOptions(tol_grad=args.tol),
    )
    result = global_minimize(p, args.n, args.dim, opts, max_workers=_restart_workers(args.restarts))
    _write_text(args.out, json.dumps(result.to_dict(), indent=2))
    return 0


def cmd_sweep(args) -> int:
    p = _build_potential(args)
    if args.dim < 1:
        raise ArgumentValidationError("--dim must be >= 1")
    try:
        ns = sorted({int(tok) for tok in args.n_list.split(",") if tok.strip()})
    except ValueError as exc:
        raise ArgumentValidationError(f"--n-list must be comma-separated integers: {exc}")
    if not ns or ns[0] < 1:
        raise ArgumentValidationError("--n-list must contain positive integers")

    lines = [SWEEP_COLUMNS]
    for n in ns:
        opts = GlobalOptions(
            restarts=args.restarts,
            seed=args.seed,
            init_strategy=default_strategy(p, args.dim),
            optimizer=OptimizerOptions(tol_grad=args.tol),
        )
        begin = time.perf_counter()
        result = global_minimize(p, n, args.dim, opts, max_workers=_restart_workers(args.restarts))
        wall_ms = (time.perf_counter() - begin) * 1e3
        gap = min_gap(result.config) if n >= 2 else 0.0
        row = [
            n, args.gamma, args.alpha, args.dim, args.seed, args.restarts,
            result.energy, diameter(result.config), gap, result.grad_inf_norm,
            result.iterations, result.converged, wall_ms,
        ]
        lines.append(",".join(_fmt(v) for v in row))
    _write_text(args.out, "\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.suite)
    _write_text(args.out, json.dumps(report.to_dict(), indent=2))
    return 0 if report.overall_pass else 3


def cmd_closed_form(args) -> int:
    if args.n < 1:
        raise ArgumentValidationError("--n must be >= 1")
    config = quadratic_newtonian_minimizer(args.n)
    _write_text(args.out, json.dumps(config.to_dict(), indent=2))
    return 0


def _uint64(token: str) -> int:
    value = int(token)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powermin",
        description="Global minimization of repulsive-attractive power-law interaction energies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, with_n: bool):
        sp.add_argument("--gamma", type=float, required=True, help="attraction exponent")
        sp.add_argument("--alpha", type=float, required=True, help="repulsion exponent (< gamma)")
        if with_n:
            sp.add_argument("--n", type=int, required=True, help="number of particles")
        sp.add_argument("--dim", type=int, default=1, help="space dimension (default 1)")
        sp.add_argument("--restarts", type=int, default=16, help="multi-start restarts (default 16)")
        sp.add_argument("--seed", type=_uint64, default=42, help="master seed (default 42)")
        sp.add_argument("--tol", type=float, default=1e-9,
                        help="gradient infinity-norm stopping tolerance (default 1e-9)")

    sp = sub.add_parser("minimize", help="one global minimization, JSON result")
    add_common(sp, with_n=True)
    sp.add_argument("--out", default=None, help="output path (default stdout)")
    sp.set_defaults(func=cmd_minimize)

    sp = sub.add_parser("sweep", help="diameter-vs-n sweep, CSV output")
    add_common(sp, with_n=False)
    sp.add_argument("--n-list", required=True, help="comma-separated particle counts")
    sp.add_argument("--out", required=True, help="CSV output path")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", help="run a named verification suite")
    sp.add_argument("--suite", required=True, choices=sorted(SUITES), help="suite name")
    sp.add_argument("--out", default=None, help="report path (default stdout)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("closed-form", help="evenly spaced closed-form minimizer, JSON")
    sp.add_argument("--n", type=int, required=True, help="number of particles")
    sp.add_argument("--out", default=None, help="output path (default stdout)")
    sp.set_defaults(func=cmd_closed_form)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ArgumentValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
