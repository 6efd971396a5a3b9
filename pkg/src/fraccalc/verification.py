"""Property checks for the generalized fractional integral.

Implemented checks:

* boundedness constants for the weighted-space inequality
  ``norm(I f) <= K * norm(f)`` (two normalizations, see
  :func:`bound_constant_K` and :func:`bound_constant_K1`),
* the Hadamard-mode boundedness constants (log-kernel family),
* the semigroup identity ``I^alpha (I^beta f) = I^(alpha+beta) f``,
* the n-fold iterated-integral identity (kernel form vs nested plain
  quadrature),
* the Hadamard limit ``rho -> -1+`` of the generalized integral.

Each check returns a :class:`CheckReport`; checks are pure and can run
concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import scipy.integrate

from . import jsonfmt
from .errors import DomainError
from .function_space import SpaceParams, xpc_norm
from .operators import (
    OperatorKind,
    OperatorSpec,
    Side,
    gfi_left,
    hadamard_integral,
    operator_as_function,
)
from .quadrature import EvalResult, QuadratureConfig, integrate_singular
from .special import log_gamma, lower_incomplete_gamma

__all__ = [
    "CheckReport",
    "bound_constant_K",
    "bound_constant_K1",
    "hadamard_bound_constant",
    "check_norm_bound",
    "check_semigroup",
    "check_nfold_identity",
    "check_hadamard_limit",
]


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a property check; ``passed`` iff ``residual <= tolerance``."""

    name: str
    parameters: dict
    residual: float
    tolerance: float
    constant: float | None
    passed: bool

    def __post_init__(self) -> None:
        if self.residual < 0.0:
            raise DomainError("residual must be non-negative")
        if not self.tolerance > 0.0:
            raise DomainError("tolerance must be positive")
        if self.passed != (self.residual <= self.tolerance):
            raise DomainError("passed flag inconsistent with residual/tolerance")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "parameters": self.parameters,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "constant": self.constant,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return jsonfmt.dumps(self.to_dict())


def _report(name, parameters, residual, tolerance, constant=None) -> CheckReport:
    return CheckReport(
        name=name,
        parameters=parameters,
        residual=float(residual),
        tolerance=float(tolerance),
        constant=constant,
        passed=bool(residual <= tolerance),
    )


def _bound_integral(alpha, rho, c, a, b, cfg) -> EvalResult:
    # int_1^(b/a) u^(c - alpha(rho+1) - 1) ((u^(rho+1) - 1)/(rho+1))^(alpha-1) du
    # after v = u^(rho+1) - 1 becomes
    # (rho+1)^(-alpha) int_0^V v^(alpha-1) (1+v)^(c/(rho+1) - alpha - 1) dv,
    # mirrored so the v^(alpha-1) singularity sits at the engine's upper end.
    rp1 = rho + 1.0
    big_v = (b / a) ** rp1 - 1.0
    expo = c / rp1 - alpha - 1.0

    def g(s):
        return (1.0 + (big_v - s)) ** expo

    res = integrate_singular(g, 0.0, big_v, alpha, cfg)
    return replace(
        res,
        value=res.value * rp1**-alpha,
        err_estimate=res.err_estimate * rp1**-alpha,
    )


def _check_bound_args(alpha, rho, c, a, b) -> None:
    if not alpha > 0.0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if not rho > -1.0:
        raise DomainError(f"rho must exceed -1, got {rho}")
    if not rho >= c:
        raise DomainError(f"need rho >= c, got rho={rho}, c={c}")
    if not 0.0 < a < b < math.inf:
        raise DomainError(f"need 0 < a < b < inf, got [{a}, {b}]")


def bound_constant_K(alpha: float, rho: float, c: float, a: float, b: float,
                     cfg: QuadratureConfig | None = None) -> EvalResult:
    """Boundedness constant with the b^(alpha(rho+1) - 1) normalization.

    K = b^(alpha(rho+1)-1)/Gamma(alpha)
        * int_1^(b/a) u^(c-alpha(rho+1)-1) ((u^(rho+1)-1)/(rho+1))^(alpha-1) du.

    Caution: this normalization is a valid bound for the operator norm only
    when alpha*(rho+1) >= 1; see :func:`bound_constant_K1` for the variant
    that holds for every positive alpha*(rho+1).
    """
    _check_bound_args(alpha, rho, c, a, b)
    res = _bound_integral(alpha, rho, c, a, b, cfg)
    scale = b ** (alpha * (rho + 1.0) - 1.0) * math.exp(-log_gamma(alpha))
    return replace(res, value=scale * res.value, err_estimate=scale * res.err_estimate)


def bound_constant_K1(alpha: float, rho: float, c: float, a: float, b: float,
                      cfg: QuadratureConfig | None = None) -> EvalResult:
    """Boundedness constant with the b^(alpha(rho+1)) normalization.

    Same integral as :func:`bound_constant_K`, scaled by one extra power
    of b.  Bounding x^(alpha(rho+1)) <= b^(alpha(rho+1)) pointwise inside
    the norm shows this constant is valid for all alpha > 0, rho > -1 with
    rho >= c (the exponent alpha*(rho+1) is always positive on [a, b]).
    """
    _check_bound_args(alpha, rho, c, a, b)
    res = _bound_integral(alpha, rho, c, a, b, cfg)
    scale = b ** (alpha * (rho + 1.0)) * math.exp(-log_gamma(alpha))
    return replace(res, value=scale * res.value, err_estimate=scale * res.err_estimate)


def hadamard_bound_constant(alpha: float, rho: float, c: float, a: float, b: float) -> float:
    """Boundedness constant for the log-kernel (Hadamard-type) operator family.

    Equals (log(b/a))^alpha / Gamma(alpha+1) when rho = c and
    (rho-c)^(-alpha) * gamma(alpha, (rho-c) log(b/a)) / Gamma(alpha) when
    rho > c; the branches join continuously as rho -> c+.
    """
    if not alpha > 0.0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if not 0.0 < a < b < math.inf:
        raise DomainError(f"need 0 < a < b < inf, got [{a}, {b}]")
    if rho < c:
        raise DomainError(f"need rho >= c, got rho={rho}, c={c}")
    log_ba = math.log(b / a)
    if rho == c:
        return log_ba**alpha * math.exp(-log_gamma(alpha + 1.0))
    d = rho - c
    return d**-alpha * lower_incomplete_gamma(alpha, d * log_ba) * math.exp(-log_gamma(alpha))


def check_norm_bound(f, alpha: float, rho: float, sp: SpaceParams,
                     cfg: QuadratureConfig | None = None,
                     tolerance: float | None = None,
                     constant: str = "K") -> CheckReport:
    """Witness the inequality norm(I^alpha f) <= K norm(f) for one function.

    ``constant`` selects the normalization: ``"K"`` for
    :func:`bound_constant_K`, ``"K1"`` for :func:`bound_constant_K1`.
    The residual is max(0, lhs - K*rhs), which avoids dividing by tiny norms.
    """
    if cfg is None:
        cfg = QuadratureConfig()
    if constant == "K":
        k_val = bound_constant_K(alpha, rho, sp.c, sp.a, sp.b, cfg).value
    elif constant == "K1":
        k_val = bound_constant_K1(alpha, rho, sp.c, sp.a, sp.b, cfg).value
    else:
        raise DomainError(f"unknown constant selector {constant!r}")

    spec = OperatorSpec(OperatorKind.INTEGRAL, Side.LEFT, alpha, sp.a, rho)
    op = operator_as_function(f, spec, cfg)
    lhs = xpc_norm(op, sp, cfg)
    rhs = xpc_norm(f, sp, cfg)
    residual = max(0.0, lhs.value - k_val * rhs.value)
    if tolerance is None:
        tolerance = 1e-8 * k_val * rhs.value
    params = {
        "fn": getattr(f, "descriptor", "<callable>"),
        "alpha": alpha,
        "rho": rho,
        "c": sp.c,
        "p": sp.p,
        "a": sp.a,
        "b": sp.b,
        "constant_kind": constant,
        "lhs_norm": lhs.value,
        "rhs_norm": rhs.value,
        "quadrature_converged": lhs.converged and rhs.converged,
    }
    return _report("norm-bound", params, residual, tolerance, constant=k_val)


def check_semigroup(f, alpha: float, beta: float, rho: float, a: float,
                    x_grid, cfg: QuadratureConfig | None = None,
                    tolerance: float = 1e-6) -> CheckReport:
    """Compare I^alpha(I^beta f) with I^(alpha+beta) f on a grid of points.

    The inner operator is realized as a pointwise-evaluated function, so the
    left-hand side is a nested quadrature.  Outer tolerances are relaxed to
    a third of a digit below ``tolerance``; the nested values carry inner
    quadrature noise that a tighter outer target could not resolve anyway.
    """
    if not (alpha > 0.0 and beta > 0.0):
        raise DomainError(f"semigroup orders must be positive, got ({alpha}, {beta})")
    x_grid = [float(x) for x in x_grid]
    if not x_grid:
        raise DomainError("x_grid must be non-empty")
    if cfg is None:
        cfg = QuadratureConfig()
    outer_cfg = replace(
        cfg,
        rel_tol=max(cfg.rel_tol, 1e-3 * tolerance),
        abs_tol=max(cfg.abs_tol, 1e-4 * tolerance),
    )

    spec_inner = OperatorSpec(OperatorKind.INTEGRAL, Side.LEFT, beta, a, rho)
    spec_outer = OperatorSpec(OperatorKind.INTEGRAL, Side.LEFT, alpha, a, rho)
    spec_sum = OperatorSpec(OperatorKind.INTEGRAL, Side.LEFT, alpha + beta, a, rho)
    inner_fn = operator_as_function(f, spec_inner, cfg)

    residual = 0.0
    all_conv = True
    for x in x_grid:
        lhs = gfi_left(inner_fn, spec_outer, x, outer_cfg)
        rhs = gfi_left(f, spec_sum, x, cfg)
        residual = max(residual, abs(lhs.value - rhs.value))
        all_conv &= rhs.converged
    params = {
        "fn": getattr(f, "descriptor", "<callable>"),
        "alpha": alpha,
        "beta": beta,
        "rho": rho,
        "a": a,
        "x_grid": ",".join(f"{x:g}" for x in x_grid),
        "quadrature_converged": all_conv,
    }
    return _report("semigroup", params, residual, tolerance)


def check_nfold_identity(f, n: int, rho: float, a: float, x: float,
                         cfg: QuadratureConfig | None = None,
                         tolerance: float = 1e-7) -> CheckReport:
    """Iterated n-fold weighted integral vs the single-kernel form.

    The kernel side is the generalized integral of integer order n (the
    1/(n-1)! prefactor matches 1/Gamma(n)); the iterated side is computed by
    nested adaptive quadrature, independent of the singular-kernel engine.
    """
    if n not in (2, 3):
        raise DomainError(f"n must be 2 or 3, got {n}")
    if not x > a >= 0.0:
        raise DomainError(f"need x > a >= 0, got x={x}, a={a}")
    spec = OperatorSpec(OperatorKind.INTEGRAL, Side.LEFT, float(n), a, rho)
    kernel = gfi_left(f, spec, x, cfg)

    def level(k):
        if k == 0:
            return lambda t: float(f(t))
        prev = level(k - 1)
        return lambda u: scipy.integrate.quad(
            lambda t: t**rho * prev(t), a, u, epsabs=1e-12, epsrel=1e-12, limit=200
        )[0]

    iterated = level(n)(x)
    residual = abs(kernel.value - iterated)
    params = {
        "fn": getattr(f, "descriptor", "<callable>"),
        "n": n,
        "rho": rho,
        "a": a,
        "x": x,
        "kernel_value": kernel.value,
        "iterated_value": iterated,
        "quadrature_converged": kernel.converged,
    }
    return _report("nfold", params, residual, tolerance)


def check_hadamard_limit(f, alpha: float, a: float, x: float, eps_list,
                         cfg: QuadratureConfig | None = None,
                         tolerance: float = 1e-3) -> CheckReport:
    """Residuals of the generalized integral at rho = -1 + eps vs the Hadamard form.

    Passes when the residual sequence is non-increasing across ``eps_list``
    (which must be strictly decreasing positive values) and the final
    residual is within tolerance.
    """
    eps_list = [float(e) for e in eps_list]
    if not eps_list or any(e <= 0.0 for e in eps_list):
        raise DomainError("eps values must be strictly positive (rho = -1 is excluded)")
    if any(b >= a_ for a_, b in zip(eps_list, eps_list[1:])):
        raise DomainError("eps values must be strictly decreasing")
    if not 0.0 < a < x:
        raise DomainError(f"need 0 < a < x, got a={a}, x={x}")

    limit_val = hadamard_integral(f, alpha, a, x, cfg)
    residuals = []
    for eps in eps_list:
        spec = OperatorSpec(OperatorKind.INTEGRAL, Side.LEFT, alpha, a, -1.0 + eps)
        val = gfi_left(f, spec, x, cfg)
        residuals.append(abs(val.value - limit_val.value))
    monotone = all(r2 <= r1 + 1e-15 for r1, r2 in zip(residuals, residuals[1:]))
    final = residuals[-1]
    # A monotonicity break counts as failure regardless of the final residual.
    residual = final if monotone else max(final, tolerance * 2.0)
    params = {
        "fn": getattr(f, "descriptor", "<callable>"),
        "alpha": alpha,
        "a": a,
        "x": x,
        "eps_list": ",".join(f"{e:g}" for e in eps_list),
        "residuals": ",".join(f"{r:.6e}" for r in residuals),
        "monotone": monotone,
        "hadamard_value": limit_val.value,
    }
    return _report("hadamard-limit", params, residual, tolerance)
