"""Command-line front end: evaluate operators, run checks, emit curve CSVs.

Subcommands: ``eval``, ``check``, ``norm``, ``power-curves``.  Results are
printed as JSON on stdout (17 significant digits); diagnostics go to stderr.
Exit codes: 0 success/converged/check passed, 1 usage error, 2 numerical
non-convergence or failed check.  The environment variable
``FRACCALC_MAX_NODES`` overrides the default quadrature node budget; an
explicit ``--max-nodes`` flag wins over the environment.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import jsonfmt
from .errors import DomainError, EvaluationError, FunctionParseError
from .function_space import SpaceParams, lp_norm, parse_function, xpc_norm
from .operators import OperatorKind, OperatorSpec, Side, evaluate_operator, power_rule_closed_form
from .quadrature import EvalResult, QuadratureConfig
from .verification import (
    check_hadamard_limit,
    check_nfold_identity,
    check_norm_bound,
    check_semigroup,
)

__all__ = ["main"]

_EXIT_OK = 0
_EXIT_USAGE = 1
_EXIT_NUMERIC = 2

_KINDS = {
    "integral": OperatorKind.INTEGRAL,
    "rl-derivative": OperatorKind.RIEMANN_DERIVATIVE,
    "caputo-derivative": OperatorKind.CAPUTO_DERIVATIVE,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the contract reserves 2 for
    # numerical non-convergence, so route usage problems through status 1.
    def error(self, message):
        raise _UsageError(message)


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok != ""]
    except ValueError as exc:
        raise _UsageError(f"bad numeric list {text!r}: {exc}") from None


def _build_config(args) -> QuadratureConfig:
    max_nodes = args.max_nodes
    if max_nodes is None:
        env = os.environ.get("FRACCALC_MAX_NODES")
        max_nodes = int(env) if env else 4096
    return QuadratureConfig(
        rel_tol=args.rel_tol,
        abs_tol=args.abs_tol,
        max_nodes=max_nodes,
        base_rule_order=args.base_order,
    )


def _add_tolerance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rel-tol", type=float, default=1e-10)
    p.add_argument("--abs-tol", type=float, default=1e-12)
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--base-order", type=int, default=32)


def _emit_result(res: EvalResult) -> int:
    print(jsonfmt.dumps({
        "value": res.value,
        "err_estimate": res.err_estimate,
        "nodes": res.nodes_used,
        "converged": res.converged,
    }))
    return _EXIT_OK if res.converged else _EXIT_NUMERIC


def _cmd_eval(args) -> int:
    cfg = _build_config(args)
    f = parse_function(args.fn)
    kind = _KINDS[args.kind]
    side = Side.LEFT if args.side == "left" else Side.RIGHT
    if args.hadamard:
        if args.rho is not None:
            raise _UsageError("--hadamard and --rho are mutually exclusive")
        if kind is not OperatorKind.INTEGRAL or side is not Side.LEFT:
            raise _UsageError("--hadamard applies to left-sided integrals only")
        if args.a is None:
            raise _UsageError("--hadamard requires --a > 0")
        spec = OperatorSpec(kind, side, args.alpha, args.a, rho=None)
    else:
        if args.rho is None:
            raise _UsageError("one of --rho or --hadamard is required")
        base = args.a if side is Side.LEFT else args.b
        if base is None:
            flag = "--a" if side is Side.LEFT else "--b"
            raise _UsageError(f"{flag} is required for side {args.side}")
        spec = OperatorSpec(kind, side, args.alpha, base, rho=args.rho)
    return _emit_result(evaluate_operator(f, spec, args.x, cfg))


def _cmd_check(args) -> int:
    cfg = _build_config(args)
    f = parse_function(args.fn)
    kwargs = {} if args.tolerance is None else {"tolerance": args.tolerance}
    if args.check == "semigroup":
        if args.beta is None or args.grid is None:
            raise _UsageError("semigroup needs --beta and --grid")
        report = check_semigroup(f, args.alpha, args.beta, args.rho, args.a,
                                 _float_list(args.grid), cfg, **kwargs)
    elif args.check == "norm-bound":
        if args.p is None or args.c is None or args.b is None:
            raise _UsageError("norm-bound needs --p, --c and --b")
        sp = SpaceParams(args.p, args.c, args.a, args.b)
        report = check_norm_bound(f, args.alpha, args.rho, sp, cfg,
                                  constant=args.constant, **kwargs)
    elif args.check == "nfold":
        if args.n is None or args.x is None:
            raise _UsageError("nfold needs --n and --x")
        report = check_nfold_identity(f, args.n, args.rho, args.a, args.x, cfg, **kwargs)
    elif args.check == "hadamard-limit":
        if args.x is None:
            raise _UsageError("hadamard-limit needs --x")
        report = check_hadamard_limit(f, args.alpha, args.a, args.x,
                                      _float_list(args.eps), cfg, **kwargs)
    else:  # pragma: no cover - argparse restricts choices
        raise _UsageError(f"unknown check {args.check!r}")
    print(report.to_json())
    return _EXIT_OK if report.passed else _EXIT_NUMERIC


def _cmd_norm(args) -> int:
    cfg = _build_config(args)
    f = parse_function(args.fn)
    p = math.inf if args.p.lower() in ("inf", "infinity") else float(args.p)
    if args.c is None:
        res = lp_norm(f, p, args.a, args.b, cfg)
    else:
        res = xpc_norm(f, SpaceParams(p, args.c, args.a, args.b), cfg)
    return _emit_result(res)


def _cmd_power_curves(args) -> int:
    rho_list = _float_list(args.rho_list)
    nu_list = _float_list(args.nu_list)
    if args.points < 2:
        raise _UsageError("--points must be at least 2")
    if not args.x_max > 0.0:
        raise _UsageError("--x-max must be positive")
    if any(r <= -1.0 for r in rho_list):
        raise _UsageError("rho values must exceed -1")
    lines = ["x,rho,nu,alpha,derivative"]
    for rho in rho_list:
        for nu in nu_list:
            for i in range(1, args.points + 1):
                x = i * args.x_max / args.points
                d = power_rule_closed_form(nu, args.alpha, rho, x)
                lines.append(f"{x:.17g},{rho:.17g},{nu:.17g},{args.alpha:.17g},{d:.17g}")
    try:
        with open(args.output, "w", encoding="ascii", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        print(f"cannot write {args.output}: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    print(jsonfmt.dumps({"output": args.output, "rows": len(lines) - 1}))
    return _EXIT_OK


def _make_parser() -> _Parser:
    parser = _Parser(prog="fraccalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a fractional operator at a point")
    p_eval.add_argument("--kind", choices=sorted(_KINDS), required=True)
    p_eval.add_argument("--side", choices=["left", "right"], default="left")
    p_eval.add_argument("--alpha", type=float, required=True)
    p_eval.add_argument("--rho", type=float, default=None)
    p_eval.add_argument("--hadamard", action="store_true")
    p_eval.add_argument("--a", type=float, default=None, help="left base point")
    p_eval.add_argument("--b", type=float, default=None, help="right base point")
    p_eval.add_argument("--x", type=float, required=True)
    p_eval.add_argument("--fn", required=True, help="function descriptor, e.g. poly:0,1")
    _add_tolerance_flags(p_eval)
    p_eval.set_defaults(func=_cmd_eval)

    p_check = sub.add_parser("check", help="run a property check")
    p_check.add_argument("check", choices=["semigroup", "norm-bound", "nfold", "hadamard-limit"])
    p_check.add_argument("--fn", required=True)
    p_check.add_argument("--alpha", type=float, default=0.5)
    p_check.add_argument("--beta", type=float, default=None)
    p_check.add_argument("--rho", type=float, default=0.0)
    p_check.add_argument("--a", type=float, default=0.0)
    p_check.add_argument("--b", type=float, default=None)
    p_check.add_argument("--c", type=float, default=None)
    p_check.add_argument("--p", type=float, default=None)
    p_check.add_argument("--n", type=int, default=None)
    p_check.add_argument("--x", type=float, default=None)
    p_check.add_argument("--grid", default=None, help="comma-separated evaluation points")
    p_check.add_argument("--eps", default="1e-1,1e-2,1e-3,1e-4")
    p_check.add_argument("--tolerance", type=float, default=None)
    p_check.add_argument("--constant", choices=["K", "K1"], default="K")
    _add_tolerance_flags(p_check)
    p_check.set_defaults(func=_cmd_check)

    p_norm = sub.add_parser("norm", help="weighted or classical Lebesgue norm")
    p_norm.add_argument("--fn", required=True)
    p_norm.add_argument("--p", required=True, help="exponent, or 'inf'")
    p_norm.add_argument("--a", type=float, required=True)
    p_norm.add_argument("--b", type=float, required=True)
    p_norm.add_argument("--c", type=float, default=None,
                        help="weight exponent; omit for the classical L^p norm")
    _add_tolerance_flags(p_norm)
    p_norm.set_defaults(func=_cmd_norm)

    p_curves = sub.add_parser("power-curves", help="CSV of power-function derivative curves")
    p_curves.add_argument("--alpha", type=float, default=0.5)
    p_curves.add_argument("--rho-list", default="-0.4,0.0,0.4")
    p_curves.add_argument("--nu-list", default="1.0,2.0")
    p_curves.add_argument("--x-max", type=float, default=1.0)
    p_curves.add_argument("--points", type=int, default=200)
    p_curves.add_argument("--output", required=True)
    p_curves.set_defaults(func=_cmd_power_curves)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _make_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except FunctionParseError as exc:
        print(f"usage error in --fn, offending token {exc.token!r}: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except (DomainError, EvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
