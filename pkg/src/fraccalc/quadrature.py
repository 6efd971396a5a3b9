"""Quadrature for integrals with an algebraic endpoint singularity.

The engine evaluates ``int_lo^hi (hi - s)^(alpha - 1) g(s) ds`` for alpha > 0.
A Gauss-Jacobi rule on the panel touching ``hi`` absorbs the kernel exactly;
Gauss-Legendre handles interior panels with the kernel folded into the
integrand.  Adaptive bisection of the worst panel supplies graded refinement
toward the singular endpoint (each split of the singular panel halves it,
reproducing a ratio-0.5 geometric mesh) and equally handles roughness of g
elsewhere in the interval.

Node tables are cached read-only, so concurrent integration calls are safe
as long as the supplied function is re-entrant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .errors import DomainError, EvaluationError

__all__ = [
    "QuadratureConfig",
    "EvalResult",
    "jacobi_nodes",
    "integrate_singular",
]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and node budget for adaptive singular quadrature."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_nodes: int = 4096
    base_rule_order: int = 32

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0):
            raise DomainError("tolerances must be positive")
        if self.base_rule_order < 1:
            raise DomainError("base_rule_order must be >= 1")
        if self.max_nodes < self.base_rule_order:
            raise DomainError("max_nodes must be >= base_rule_order")


@dataclass(frozen=True)
class EvalResult:
    """Value of a numerical evaluation with cost and convergence metadata.

    When ``converged`` is true, ``err_estimate`` does not exceed
    ``max(abs_tol, rel_tol * |value|)`` for the config that produced it.
    ``flags`` carries optional annotations such as ``"one_sided"`` for
    derivative stencils that could not be centered.
    """

    value: float
    err_estimate: float
    nodes_used: int
    converged: bool
    flags: tuple[str, ...] = ()


@lru_cache(maxsize=512)
def _cached_rule(order: int, exponent: float) -> tuple[np.ndarray, np.ndarray]:
    if exponent == 0.0:
        x, w = roots_legendre(order)
    else:
        x, w = roots_jacobi(order, exponent, 0.0)
    nodes = 0.5 * (x + 1.0)
    weights = w * 0.5 ** (exponent + 1.0)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def jacobi_nodes(order: int, exponent: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss nodes and weights on (0, 1) for the weight (1 - y)^exponent.

    The rule integrates polynomials of degree <= 2*order - 1 exactly against
    the weight.  Returns read-only parallel arrays (nodes, weights); nodes lie
    strictly inside (0, 1) and weights are positive.
    """
    if order < 1:
        raise DomainError(f"order must be >= 1, got {order}")
    if not exponent > -1.0:
        raise DomainError(f"exponent must be > -1, got {exponent}")
    return _cached_rule(int(order), float(exponent))


def _eval_vector(g: Callable, s: np.ndarray) -> np.ndarray:
    vals = np.asarray(g(s), dtype=float)
    if vals.shape != s.shape:
        vals = np.broadcast_to(vals, s.shape)
    if not np.all(np.isfinite(vals)):
        bad = s[~np.isfinite(vals)][0]
        raise EvaluationError(f"integrand returned a non-finite value near s={bad!r}")
    return vals


def _panel_quad(g, p_lo, p_hi, hi, alpha, order, singular):
    length = p_hi - p_lo
    if singular:
        # Kernel absorbed by the Jacobi weight: the panel ends at the
        # singular point and (hi - s) = length * (1 - y) exactly.
        y, w = jacobi_nodes(order, alpha - 1.0)
        s = p_lo + length * y
        return length**alpha * float(w @ _eval_vector(g, s))
    y, w = jacobi_nodes(order, 0.0)
    s = p_lo + length * y
    kern = (hi - s) ** (alpha - 1.0)
    return length * float(w @ (kern * _eval_vector(g, s)))


class _Panel:
    __slots__ = ("lo", "hi", "singular", "value", "err")

    def __init__(self, lo, hi, singular):
        self.lo = lo
        self.hi = hi
        self.singular = singular
        self.value = 0.0
        self.err = 0.0


def integrate_singular(
    g: Callable,
    lo: float,
    hi: float,
    alpha: float,
    cfg: QuadratureConfig | None = None,
) -> EvalResult:
    """Adaptively evaluate ``int_lo^hi (hi - s)^(alpha - 1) g(s) ds``.

    ``g`` must accept a numpy array of points in the open interval (lo, hi)
    and return finite values; it is never evaluated at the endpoints.
    Non-convergence within the node budget is reported through
    ``converged=False``, never raised.  NaN or inf from ``g`` raises
    :class:`~fraccalc.errors.EvaluationError`.
    """
    if cfg is None:
        cfg = QuadratureConfig()
    if not alpha > 0.0:
        raise DomainError(f"alpha must be > 0, got {alpha}")
    if not lo < hi:
        raise DomainError(f"empty integration interval [{lo}, {hi}]")

    m = cfg.base_rule_order
    nodes_used = 0

    def refresh(panel: _Panel) -> None:
        nonlocal nodes_used
        coarse = _panel_quad(g, panel.lo, panel.hi, hi, alpha, m, panel.singular)
        fine = _panel_quad(g, panel.lo, panel.hi, hi, alpha, 2 * m, panel.singular)
        panel.value = fine
        panel.err = abs(fine - coarse)
        nodes_used += 3 * m

    root = _Panel(lo, hi, True)
    refresh(root)
    panels = [root]

    err_history: list[float] = []
    min_width = 64.0 * np.finfo(float).eps * max(abs(lo), abs(hi), 1.0)

    while True:
        total = math.fsum(p.value for p in panels)
        err = math.fsum(p.err for p in panels)
        tol = max(cfg.abs_tol, cfg.rel_tol * abs(total))
        if err <= tol:
            return EvalResult(total, err, nodes_used, True)
        if nodes_used + 6 * m > cfg.max_nodes:
            return EvalResult(total, err, nodes_used, False)
        # Noise plateau: refinement no longer reduces the estimate, typically
        # because g itself carries quadrature noise (nested operators).
        err_history.append(err)
        if len(err_history) >= 8 and err > 0.95 * err_history[-8]:
            return EvalResult(total, err, nodes_used, False)

        worst = max(panels, key=lambda p: p.err)
        if worst.hi - worst.lo < min_width:
            return EvalResult(total, err, nodes_used, False)
        mid = 0.5 * (worst.lo + worst.hi)
        left = _Panel(worst.lo, mid, False)
        right = _Panel(mid, worst.hi, worst.singular)
        refresh(left)
        refresh(right)
        panels.remove(worst)
        panels.extend((left, right))
