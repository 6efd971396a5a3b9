"""Evaluatable real functions and the weighted norms they are measured in.

Functions are built from a small descriptor mini-language so that every
object in the test surface has a closed-form oracle:

    const:k           constant k
    pow:v             t^v
    poly:c0,c1,...,cn c0 + c1*t + ... + cn*t^n
    exp               e^t
    log               ln t
    sin               sin t
    scaled:k,<inner>  k times any descriptor

The grammar is colon/comma-delimited ASCII with no whitespace.

Norms: ``xpc_norm`` computes (int_a^b |t^c f(t)|^p dt/t)^(1/p) with the
essential supremum of t^c |f(t)| for p = inf; ``lp_norm`` is the classical
L^p norm with plain dt measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, FunctionParseError
from .quadrature import EvalResult, QuadratureConfig, integrate_singular

__all__ = [
    "RealFunction",
    "SpaceParams",
    "parse_function",
    "xpc_norm",
    "lp_norm",
]

_CHEB_POINTS = 4097
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class RealFunction:
    """A real-valued function with optional analytic derivatives.

    ``eval`` maps a float or numpy array to values of the same shape.
    ``derivatives`` holds analytic derivative callables for orders
    1..len(derivatives); an empty tuple means none are available.
    ``descriptor`` records the mini-language string (or a synthetic label
    for wrapped callables).
    """

    eval: Callable
    derivatives: tuple[Callable, ...] = ()
    descriptor: str = "<callable>"

    def __call__(self, t):
        return self.eval(t)

    @property
    def max_derivative_order(self) -> int:
        return len(self.derivatives)

    def derivative(self, order: int) -> "RealFunction":
        """The analytic derivative of the given order as a RealFunction."""
        if order < 1 or order > len(self.derivatives):
            raise DomainError(
                f"function {self.descriptor!r} has no analytic derivative of order {order}"
            )
        return RealFunction(
            eval=self.derivatives[order - 1],
            derivatives=self.derivatives[order:],
            descriptor=f"d{order}({self.descriptor})",
        )

    def check_derivatives(self, lo: float, hi: float, rng=None, rel_tol: float = 1e-6) -> None:
        """Spot-check analytic derivatives against central differences.

        Compares the order-1 derivative at 10 random interior points; raises
        DomainError on disagreement beyond ``rel_tol`` relative.
        """
        if not self.derivatives:
            return
        if rng is None:
            rng = np.random.default_rng(0)
        h = 1e-6 * max(abs(lo), abs(hi), 1.0)
        pts = rng.uniform(lo + 2 * h, hi - 2 * h, size=10)
        d1 = self.derivatives[0]
        for t in pts:
            fd = (self.eval(t + h) - self.eval(t - h)) / (2.0 * h)
            an = d1(t)
            scale = max(abs(an), abs(fd), 1e-8)
            if abs(fd - an) > rel_tol * scale:
                raise DomainError(
                    f"analytic derivative of {self.descriptor!r} disagrees with "
                    f"finite differences at t={t}: {an} vs {fd}"
                )


def _const(k: float) -> RealFunction:
    return RealFunction(
        eval=lambda t: np.full_like(np.asarray(t, dtype=float), k) if np.ndim(t) else k,
        derivatives=(
            lambda t: np.zeros_like(np.asarray(t, dtype=float)) if np.ndim(t) else 0.0,
            lambda t: np.zeros_like(np.asarray(t, dtype=float)) if np.ndim(t) else 0.0,
            lambda t: np.zeros_like(np.asarray(t, dtype=float)) if np.ndim(t) else 0.0,
        ),
        descriptor=f"const:{k:g}",
    )


def _pow(v: float) -> RealFunction:
    def mono(c: float, e: float):
        def f(t):
            t = np.asarray(t, dtype=float)
            if e == 0.0:
                out = np.full_like(t, c)
            else:
                out = c * np.power(t, e)
            return out if out.ndim else float(out)

        return f

    d1 = mono(v, v - 1.0)
    d2 = mono(v * (v - 1.0), v - 2.0)
    d3 = mono(v * (v - 1.0) * (v - 2.0), v - 3.0)
    return RealFunction(eval=mono(1.0, v), derivatives=(d1, d2, d3), descriptor=f"pow:{v:g}")


def _poly(coeffs: tuple[float, ...]) -> RealFunction:
    def pv(cs):
        def f(t):
            t = np.asarray(t, dtype=float)
            out = np.polynomial.polynomial.polyval(t, cs)
            return out if out.ndim else float(out)

        return f

    c = np.asarray(coeffs, dtype=float)
    ds = []
    cur = c
    for _ in range(3):
        cur = np.polynomial.polynomial.polyder(cur)
        ds.append(pv(cur))
    desc = "poly:" + ",".join(f"{x:g}" for x in coeffs)
    return RealFunction(eval=pv(c), derivatives=tuple(ds), descriptor=desc)


_SIMPLE = {
    "exp": lambda: RealFunction(np.exp, (np.exp, np.exp, np.exp), "exp"),
    "log": lambda: RealFunction(
        np.log,
        (
            lambda t: 1.0 / np.asarray(t, dtype=float),
            lambda t: -1.0 / np.asarray(t, dtype=float) ** 2,
            lambda t: 2.0 / np.asarray(t, dtype=float) ** 3,
        ),
        "log",
    ),
    "sin": lambda: RealFunction(
        np.sin,
        (np.cos, lambda t: -np.sin(t), lambda t: -np.cos(t)),
        "sin",
    ),
}


def _parse_float(tok: str, context: str) -> float:
    try:
        return float(tok)
    except ValueError:
        raise FunctionParseError(f"bad numeric literal in {context}", tok) from None


def parse_function(descriptor: str) -> RealFunction:
    """Build a RealFunction from a mini-language descriptor string."""
    if not descriptor:
        raise FunctionParseError("empty descriptor", descriptor)
    head, sep, rest = descriptor.partition(":")
    if head in _SIMPLE:
        if sep:
            raise FunctionParseError("family takes no arguments", descriptor)
        return _SIMPLE[head]()
    if head == "const":
        return _const(_parse_float(rest, "const"))
    if head == "pow":
        return _pow(_parse_float(rest, "pow"))
    if head == "poly":
        toks = rest.split(",") if rest else []
        if not toks:
            raise FunctionParseError("poly needs coefficients", descriptor)
        return _poly(tuple(_parse_float(t, "poly") for t in toks))
    if head == "scaled":
        k_tok, comma, inner = rest.partition(",")
        if not comma:
            raise FunctionParseError("scaled needs a factor and an inner descriptor", descriptor)
        k = _parse_float(k_tok, "scaled")
        g = parse_function(inner)

        def scaled_call(fn):
            return lambda t: k * fn(t)

        return RealFunction(
            eval=scaled_call(g.eval),
            derivatives=tuple(scaled_call(d) for d in g.derivatives),
            descriptor=f"scaled:{k:g},{g.descriptor}",
        )
    raise FunctionParseError("unknown function family", head)


@dataclass(frozen=True)
class SpaceParams:
    """Parameters (p, c, [a, b]) of a weighted function space on 0 < a < b."""

    p: float
    c: float
    a: float
    b: float

    def __post_init__(self) -> None:
        if not (0.0 < self.a < self.b < math.inf):
            raise DomainError(f"need 0 < a < b < inf, got [{self.a}, {self.b}]")
        if not self.p >= 1.0:
            raise DomainError(f"need p >= 1, got {self.p}")


def _golden_max(phi: Callable[[float], float], lo: float, hi: float) -> tuple[float, int]:
    """Golden-section maximization of a scalar function on [lo, hi]."""
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = phi(x1), phi(x2)
    n = 2
    while b - a > 1e-13 * max(abs(a), abs(b), 1.0) and n < 200:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = phi(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = phi(x1)
        n += 1
    return max(f1, f2), n


def _sampled_sup(phi_vec: Callable, phi_scalar: Callable, a: float, b: float) -> EvalResult:
    # Dense Chebyshev grid, then local golden-section refinement.
    k = np.arange(_CHEB_POINTS)
    t = 0.5 * (a + b) + 0.5 * (b - a) * np.cos(math.pi * k / (_CHEB_POINTS - 1))
    vals = phi_vec(t)
    i = int(np.argmax(vals))
    lo = t[min(i + 1, _CHEB_POINTS - 1)]  # t is decreasing in k
    hi = t[max(i - 1, 0)]
    best, extra = _golden_max(phi_scalar, lo, hi)
    best = max(best, float(vals[i]))
    err = max(abs(best - float(vals[i])) * 1e-6, 8.0 * np.finfo(float).eps * abs(best))
    return EvalResult(best, err, _CHEB_POINTS + extra, True)


def xpc_norm(f, sp: SpaceParams, cfg: QuadratureConfig | None = None) -> EvalResult:
    """Weighted norm (int_a^b |t^c f(t)|^p dt/t)^(1/p), sup-based for p = inf.

    The dt/t measure is folded into the integrand; with a > 0 the integrand
    is regular and plain adaptive quadrature applies.
    """
    if cfg is None:
        cfg = QuadratureConfig()
    if math.isinf(sp.p):
        phi = lambda t: np.asarray(t, dtype=float) ** sp.c * np.abs(f(t))
        return _sampled_sup(phi, lambda t: float(t**sp.c * abs(f(t))), sp.a, sp.b)

    p = sp.p

    def integrand(t):
        t = np.asarray(t, dtype=float)
        return np.abs(t**sp.c * f(t)) ** p / t

    res = integrate_singular(integrand, sp.a, sp.b, 1.0, cfg)
    return _root_result(res, p, cfg)


def lp_norm(f, p: float, a: float, b: float, cfg: QuadratureConfig | None = None) -> EvalResult:
    """Classical L^p norm (int_a^b |f|^p dt)^(1/p); sup sampling for p = inf."""
    if cfg is None:
        cfg = QuadratureConfig()
    if not a < b:
        raise DomainError(f"empty interval [{a}, {b}]")
    if not p >= 1.0:
        raise DomainError(f"need p >= 1, got {p}")
    if math.isinf(p):
        phi = lambda t: np.abs(f(t))
        return _sampled_sup(phi, lambda t: float(abs(f(t))), a, b)

    integrand = lambda t: np.abs(f(t)) ** p
    res = integrate_singular(integrand, a, b, 1.0, cfg)
    return _root_result(res, p, cfg)


def _root_result(res: EvalResult, p: float, cfg: QuadratureConfig) -> EvalResult:
    value = res.value ** (1.0 / p) if res.value > 0.0 else 0.0
    if value > 0.0:
        err = res.err_estimate * value / (p * res.value)
    else:
        err = res.err_estimate ** (1.0 / p)
    converged = res.converged and err <= max(cfg.abs_tol, cfg.rel_tol * value)
    return EvalResult(value, err, res.nodes_used, converged, res.flags)
