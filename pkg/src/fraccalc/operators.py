"""Generalized fractional integrals and derivatives with power-weighted kernels.

The left-sided integral of order alpha > 0 with parameter rho > -1 and base
point a >= 0 is

    I f(x) = (rho+1)^(1-alpha) / Gamma(alpha)
             * int_a^x (x^(rho+1) - tau^(rho+1))^(alpha-1) tau^rho f(tau) dtau.

It reduces to the Riemann-Liouville integral at rho = 0 and converges to the
Hadamard (logarithmic-kernel) integral as rho -> -1+; the Hadamard form is
available directly as a separate mode.  The substitution s = tau^(rho+1)
turns every kernel into the standard form (X - s)^(alpha-1) handled by
:func:`fraccalc.quadrature.integrate_singular`, with the tau^rho factor
absorbed exactly by the Jacobian.

Riemann-type derivatives of non-integer order alpha apply d^n/dx^n
(n = ceil(alpha)) to the order-(n - alpha) integral, using central finite
differences with Richardson extrapolation.  Caputo-type derivatives apply
the order-(n - alpha) integral to the operand's analytic n-th derivative.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError
from .function_space import RealFunction
from .quadrature import EvalResult, QuadratureConfig, integrate_singular
from .special import log_gamma

__all__ = [
    "OperatorKind",
    "Side",
    "OperatorSpec",
    "gfi_left",
    "gfi_right",
    "hadamard_integral",
    "gfd_riemann_left",
    "gfd_riemann_right",
    "gfd_caputo_left",
    "gfd_caputo_right",
    "power_rule_closed_form",
    "power_integral_closed_form",
    "evaluate_operator",
    "operator_as_function",
]


class OperatorKind(enum.Enum):
    INTEGRAL = "integral"
    RIEMANN_DERIVATIVE = "riemann-derivative"
    CAPUTO_DERIVATIVE = "caputo-derivative"


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def _is_integer(x: float) -> bool:
    return abs(x - round(x)) < 1e-12


@dataclass(frozen=True)
class OperatorSpec:
    """Which operator to apply: kind, side, order, kernel parameter, base point.

    ``rho=None`` selects the Hadamard (logarithmic) mode, which is only
    defined for left-sided integrals with a positive base point.  Derivative
    kinds require a non-integer order with ceil(alpha) <= 3.
    """

    kind: OperatorKind
    side: Side
    alpha: float
    base: float
    rho: float | None = 0.0

    def __post_init__(self) -> None:
        if not self.alpha > 0.0:
            raise DomainError(f"order alpha must be positive, got {self.alpha}")
        if self.rho is None:
            if self.kind is not OperatorKind.INTEGRAL or self.side is not Side.LEFT:
                raise DomainError("Hadamard mode supports left-sided integrals only")
            if not self.base > 0.0:
                raise DomainError("Hadamard mode needs a positive base point")
        else:
            if not self.rho > -1.0:
                raise DomainError(f"rho must exceed -1, got {self.rho}")
            if self.side is Side.LEFT and self.base < 0.0:
                raise DomainError(f"left base point must be >= 0, got {self.base}")
        if self.kind is not OperatorKind.INTEGRAL:
            if _is_integer(self.alpha):
                raise DomainError(
                    f"derivatives need non-integer order, got alpha={self.alpha}"
                )
            if self.n > 3:
                raise DomainError(f"derivative order limited to ceil(alpha) <= 3, got {self.alpha}")

    @property
    def n(self) -> int:
        return math.ceil(self.alpha)

    @property
    def hadamard(self) -> bool:
        return self.rho is None


def _require(spec: OperatorSpec, kind: OperatorKind, side: Side, name: str) -> None:
    if spec.kind is not kind or spec.side is not side:
        raise DomainError(f"{name} expects a {kind.value}/{side.value} spec, got "
                          f"{spec.kind.value}/{spec.side.value}")
    if spec.hadamard:
        raise DomainError(f"{name} expects the generalized mode; use hadamard_integral")


def _scaled_result(res: EvalResult, scale: float) -> EvalResult:
    return replace(res, value=scale * res.value, err_estimate=abs(scale) * res.err_estimate)


def gfi_left(f, spec: OperatorSpec, x: float, cfg: QuadratureConfig | None = None) -> EvalResult:
    """Left-sided generalized fractional integral of ``f`` at ``x``.

    Substitutes s = tau^(rho+1), reducing the kernel to (X - s)^(alpha-1)
    with X = x^(rho+1), then delegates to the singular quadrature engine.
    """
    _require(spec, OperatorKind.INTEGRAL, Side.LEFT, "gfi_left")
    a, rho, alpha = spec.base, spec.rho, spec.alpha
    if not x > a:
        raise DomainError(f"need x > a, got x={x}, a={a}")
    rp1 = rho + 1.0
    big_x = x**rp1
    big_a = a**rp1
    inv = 1.0 / rp1

    def g(s):
        return f(np.power(s, inv))

    res = integrate_singular(g, big_a, big_x, alpha, cfg)
    scale = rp1**-alpha * math.exp(-log_gamma(alpha))
    return _scaled_result(res, scale)


def gfi_right(f, spec: OperatorSpec, x: float, cfg: QuadratureConfig | None = None) -> EvalResult:
    """Right-sided generalized fractional integral of ``f`` at ``x`` (x < b).

    Same reduction as :func:`gfi_left`; the lower-endpoint singularity is
    mirrored onto the engine's upper endpoint by reflecting the integrand.
    """
    _require(spec, OperatorKind.INTEGRAL, Side.RIGHT, "gfi_right")
    b, rho, alpha = spec.base, spec.rho, spec.alpha
    if not x < b:
        raise DomainError(f"need x < b, got x={x}, b={b}")
    if x < 0.0:
        raise DomainError(f"need x >= 0, got {x}")
    rp1 = rho + 1.0
    big_x = x**rp1
    big_b = b**rp1
    inv = 1.0 / rp1
    mirror = big_b + big_x

    def g(u):
        return f(np.power(mirror - u, inv))

    res = integrate_singular(g, big_x, big_b, alpha, cfg)
    scale = rp1**-alpha * math.exp(-log_gamma(alpha))
    return _scaled_result(res, scale)


def hadamard_integral(f, alpha: float, a: float, x: float,
                      cfg: QuadratureConfig | None = None) -> EvalResult:
    """Hadamard fractional integral (1/Gamma(alpha)) int_a^x log(x/t)^(alpha-1) f(t) dt/t.

    Requires 0 < a < x.  The substitution s = log(t) reduces the kernel to
    the standard singular form in s.
    """
    if not alpha > 0.0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if not 0.0 < a < x:
        raise DomainError(f"need 0 < a < x, got a={a}, x={x}")

    def g(s):
        return f(np.exp(s))

    res = integrate_singular(g, math.log(a), math.log(x), alpha, cfg)
    return _scaled_result(res, math.exp(-log_gamma(alpha)))


# --- finite differences with Richardson extrapolation ---------------------

# stencil tables: offsets (in units of h), coefficients, leading error order,
# and the step (2 for central stencils, whose error series has even powers
# only; 1 for one-sided ones).
_CENTRAL = {
    1: ((-2, -1, 1, 2), (1 / 12, -8 / 12, 8 / 12, -1 / 12), 4),
    2: ((-2, -1, 0, 1, 2), (-1 / 12, 16 / 12, -30 / 12, 16 / 12, -1 / 12), 4),
    3: ((-2, -1, 1, 2), (-1 / 2, 1.0, -1.0, 1 / 2), 2),
}
_FORWARD = {
    1: ((0, 1, 2, 3, 4), (-25 / 12, 48 / 12, -36 / 12, 16 / 12, -3 / 12), 4),
    2: ((0, 1, 2, 3, 4), (35 / 12, -104 / 12, 114 / 12, -56 / 12, 11 / 12), 3),
    3: ((0, 1, 2, 3, 4), (-5 / 2, 9.0, -12.0, 7.0, -3 / 2), 2),
}

_MAX_LEVELS = 8
_MIN_LEVELS = 3


def _richardson_derivative(F, x, n, h0, lo_limit, hi_limit, tol):
    """n-th derivative of F at x by stencil + Richardson; returns (value, err, flags)."""
    margin = 1e-12 * max(abs(x), 1.0)
    offsets, coeffs, p = _CENTRAL[n]
    step = 2
    flags: tuple[str, ...] = ()
    if (lo_limit is not None and x - 2 * h0 <= lo_limit + margin) or (
        hi_limit is not None and x + 2 * h0 >= hi_limit - margin
    ):
        offsets, coeffs, p = _FORWARD[n]
        step = 1
        flags = ("one_sided",)
        if hi_limit is not None and x + 4 * h0 >= hi_limit - margin:
            # walk downward instead; odd derivatives flip sign
            offsets = tuple(-k for k in offsets)
            coeffs = tuple(c * (-1) ** n for c in coeffs)

    cache: dict[float, float] = {}

    def feval(xi: float) -> float:
        if xi not in cache:
            cache[xi] = F(xi)
        return cache[xi]

    def raw(h: float) -> float:
        acc = math.fsum(c * feval(x + k * h) for k, c in zip(offsets, coeffs))
        return acc / h**n

    tableau: list[list[float]] = []
    best = math.nan
    best_err = math.inf
    prev_err = math.inf
    h = h0
    for level in range(_MAX_LEVELS):
        row = [raw(h)]
        for j in range(1, level + 1):
            factor = 2.0 ** (p + step * (j - 1))
            row.append(row[j - 1] + (row[j - 1] - tableau[level - 1][j - 1]) / (factor - 1.0))
        tableau.append(row)
        if level >= 1:
            err = abs(row[level] - tableau[level - 1][level - 1])
            if err < best_err:
                best, best_err = row[level], err
            if level + 1 >= _MIN_LEVELS:
                if best_err <= tol(best):
                    break
                if err > 4.0 * prev_err:
                    break  # rounding noise dominates; finer steps will not help
            prev_err = err
        h *= 0.5
    return best, best_err, flags


def _riemann_derivative(f, spec: OperatorSpec, x: float, cfg: QuadratureConfig | None,
                        side: Side) -> EvalResult:
    if cfg is None:
        cfg = QuadratureConfig()
    n = spec.n
    inner = OperatorSpec(OperatorKind.INTEGRAL, side, n - spec.alpha, spec.base, spec.rho)
    nodes = 0
    inner_ok = True

    if side is Side.LEFT:
        if not x > spec.base:
            raise DomainError(f"need x > a, got x={x}, a={spec.base}")
        h0 = max(1e-3 * max(abs(x), 1.0), (x - spec.base) / 10.0)
        lo_limit, hi_limit = spec.base, None

        def F(xi: float) -> float:
            nonlocal nodes, inner_ok
            res = gfi_left(f, inner, xi, cfg)
            nodes += res.nodes_used
            inner_ok &= res.converged
            return res.value

        sign = 1.0
    else:
        if not x < spec.base:
            raise DomainError(f"need x < b, got x={x}, b={spec.base}")
        h0 = max(1e-3 * max(abs(x), 1.0), (spec.base - x) / 10.0)
        lo_limit, hi_limit = 0.0 if spec.rho is not None else None, spec.base

        def F(xi: float) -> float:
            nonlocal nodes, inner_ok
            res = gfi_right(f, inner, xi, cfg)
            nodes += res.nodes_used
            inner_ok &= res.converged
            return res.value

        sign = (-1.0) ** n

    tol = lambda v: max(cfg.abs_tol, cfg.rel_tol * abs(v))
    value, err, flags = _richardson_derivative(F, x, n, h0, lo_limit, hi_limit, tol)
    converged = inner_ok and err <= tol(value)
    return EvalResult(sign * value, err, nodes, converged, flags)


def gfd_riemann_left(f, spec: OperatorSpec, x: float,
                     cfg: QuadratureConfig | None = None) -> EvalResult:
    """Riemann-type generalized derivative: d^n/dx^n of the order-(n-alpha) integral.

    The inner map is evaluated by quadrature at stencil points around x and
    differentiated with 5-point central differences plus Richardson
    extrapolation (one-sided stencils near the base point, flagged in the
    result).  The error estimate is the disagreement of the last two
    extrapolation diagonals.
    """
    _require(spec, OperatorKind.RIEMANN_DERIVATIVE, Side.LEFT, "gfd_riemann_left")
    return _riemann_derivative(f, spec, x, cfg, Side.LEFT)


def gfd_riemann_right(f, spec: OperatorSpec, x: float,
                      cfg: QuadratureConfig | None = None) -> EvalResult:
    """Right-sided Riemann-type derivative, (-1)^n d^n/dx^n of the right integral."""
    _require(spec, OperatorKind.RIEMANN_DERIVATIVE, Side.RIGHT, "gfd_riemann_right")
    return _riemann_derivative(f, spec, x, cfg, Side.RIGHT)


def _caputo(f, spec: OperatorSpec, x: float, cfg, side: Side) -> EvalResult:
    n = spec.n
    if not isinstance(f, RealFunction) or f.max_derivative_order < n:
        raise DomainError(
            f"Caputo-type derivative of order {spec.alpha} needs an analytic "
            f"derivative of order {n}; operand {getattr(f, 'descriptor', f)!r} "
            "does not supply it"
        )
    fn = f.derivative(n)
    inner = OperatorSpec(OperatorKind.INTEGRAL, side, n - spec.alpha, spec.base, spec.rho)
    if side is Side.LEFT:
        return gfi_left(fn, inner, x, cfg)
    res = gfi_right(fn, inner, x, cfg)
    return _scaled_result(res, (-1.0) ** n)


def gfd_caputo_left(f: RealFunction, spec: OperatorSpec, x: float,
                    cfg: QuadratureConfig | None = None) -> EvalResult:
    """Caputo-type derivative: order-(n-alpha) integral applied to f^(n).

    The operand must carry analytic derivatives up to n = ceil(alpha);
    silent numerical differentiation is refused.
    """
    _require(spec, OperatorKind.CAPUTO_DERIVATIVE, Side.LEFT, "gfd_caputo_left")
    return _caputo(f, spec, x, cfg, Side.LEFT)


def gfd_caputo_right(f: RealFunction, spec: OperatorSpec, x: float,
                     cfg: QuadratureConfig | None = None) -> EvalResult:
    """Right-sided Caputo-type derivative with the (-1)^n sign convention."""
    _require(spec, OperatorKind.CAPUTO_DERIVATIVE, Side.RIGHT, "gfd_caputo_right")
    return _caputo(f, spec, x, cfg, Side.RIGHT)


# --- closed forms for the power function -----------------------------------


def _gamma_ratio(num: float, den: float) -> float:
    """Gamma(num)/Gamma(den) for num > 0 and any real den, poles rejected."""
    if den > 0.0:
        return math.exp(log_gamma(num) - log_gamma(den))
    if _is_integer(den):
        raise DomainError(f"gamma pole at argument {den}")
    # Lift the denominator argument into the positive half-line with the
    # recurrence Gamma(z) = Gamma(z+k) / (z (z+1) ... (z+k-1)).
    k = int(math.ceil(0.5 - den))
    prod = 1.0
    for j in range(k):
        prod *= den + j
    return math.exp(log_gamma(num) - log_gamma(den + k)) * prod


def power_rule_closed_form(nu: float, alpha: float, rho: float, x: float) -> float:
    """Riemann-type derivative of t^nu from base 0, in closed form.

    Returns (rho+1)^alpha * Gamma(nu/(rho+1) + 1) / Gamma(nu/(rho+1) + 1 - alpha)
    * x^(nu + (rho+1)(1-alpha) - 1), computed through log-gamma for stability.
    Requires 0 < alpha < 1, rho > -1, nu > -(rho+1), x > 0; a gamma pole in
    the denominator (non-positive integer argument) is a domain error.

    Note the (rho+1)^alpha prefactor: differentiating the Beta-function form
    of the inner integral produces d/dx x^((rho+1)(1-alpha)+nu), whose power
    factor (rho+1)*(nu/(rho+1)+1-alpha) combines with the remaining
    (rho+1)^(alpha-1) to give (rho+1)^alpha.  At rho = 0 this reduces to the
    classical Gamma(nu+1)/Gamma(nu+1-alpha) x^(nu-alpha).
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"closed form requires 0 < alpha < 1, got {alpha}")
    if not rho > -1.0:
        raise DomainError(f"rho must exceed -1, got {rho}")
    rp1 = rho + 1.0
    if not nu > -rp1:
        raise DomainError(f"need nu > -(rho+1), got nu={nu}, rho={rho}")
    if not x > 0.0:
        raise DomainError(f"need x > 0, got {x}")
    q = nu / rp1 + 1.0
    ratio = _gamma_ratio(q, q - alpha)
    return rp1**alpha * ratio * x ** (nu + rp1 * (1.0 - alpha) - 1.0)


def power_integral_closed_form(nu: float, alpha: float, rho: float, x: float) -> float:
    """Generalized integral of t^nu from base 0, in closed form.

    Returns (rho+1)^(-alpha) * Gamma(q) / Gamma(q + alpha) * x^(nu + alpha(rho+1))
    with q = (nu + rho + 1)/(rho + 1).  Requires alpha > 0, rho > -1,
    nu > -(rho+1), x > 0.
    """
    if not alpha > 0.0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if not rho > -1.0:
        raise DomainError(f"rho must exceed -1, got {rho}")
    rp1 = rho + 1.0
    if not nu > -rp1:
        raise DomainError(f"need nu > -(rho+1), got nu={nu}, rho={rho}")
    if not x > 0.0:
        raise DomainError(f"need x > 0, got {x}")
    q = (nu + rho + 1.0) / rp1
    ratio = _gamma_ratio(q, q + alpha)
    return rp1**-alpha * ratio * x ** (nu + alpha * rp1)


# --- dispatch helpers -------------------------------------------------------


def evaluate_operator(f, spec: OperatorSpec, x: float,
                      cfg: QuadratureConfig | None = None) -> EvalResult:
    """Evaluate any operator described by ``spec`` at the point ``x``."""
    if spec.hadamard:
        return hadamard_integral(f, spec.alpha, spec.base, x, cfg)
    table = {
        (OperatorKind.INTEGRAL, Side.LEFT): gfi_left,
        (OperatorKind.INTEGRAL, Side.RIGHT): gfi_right,
        (OperatorKind.RIEMANN_DERIVATIVE, Side.LEFT): gfd_riemann_left,
        (OperatorKind.RIEMANN_DERIVATIVE, Side.RIGHT): gfd_riemann_right,
        (OperatorKind.CAPUTO_DERIVATIVE, Side.LEFT): gfd_caputo_left,
        (OperatorKind.CAPUTO_DERIVATIVE, Side.RIGHT): gfd_caputo_right,
    }
    return table[(spec.kind, spec.side)](f, spec, x, cfg)


def operator_as_function(f, spec: OperatorSpec, cfg: QuadratureConfig | None = None) -> RealFunction:
    """Wrap an operator evaluation as a RealFunction for nesting.

    Evaluation loops pointwise, so each call performs one quadrature; no
    analytic derivatives are attached.
    """

    def call(t):
        t_arr = np.asarray(t, dtype=float)
        if t_arr.ndim == 0:
            return evaluate_operator(f, spec, float(t_arr), cfg).value
        flat = [evaluate_operator(f, spec, float(ti), cfg).value for ti in t_arr.ravel()]
        return np.asarray(flat).reshape(t_arr.shape)

    mode = "hadamard" if spec.hadamard else f"rho={spec.rho:g}"
    desc = (f"{spec.kind.value}[{spec.side.value},alpha={spec.alpha:g},{mode},"
            f"base={spec.base:g}]({getattr(f, 'descriptor', '<callable>')})")
    return RealFunction(eval=call, descriptor=desc)
