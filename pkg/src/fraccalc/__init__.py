"""Generalized fractional calculus with a power-weighted kernel.

A single kernel parameter rho interpolates between the Riemann-Liouville
integral (rho = 0) and the Hadamard integral (rho -> -1+).  The package
provides left- and right-sided integrals, Riemann-type and Caputo-type
derivatives, weighted-space norms, boundedness constants, and property
checks (semigroup identity, iterated-integral identity, Hadamard limit),
plus closed-form oracles for power functions.

Quick start::

    from fraccalc import (OperatorKind, OperatorSpec, Side,
                          gfi_left, parse_function)

    f = parse_function("pow:1.5")
    spec = OperatorSpec(OperatorKind.INTEGRAL, Side.LEFT,
                        alpha=0.5, base=0.0, rho=0.4)
    print(gfi_left(f, spec, 2.0).value)
"""

from .errors import DomainError, EvaluationError, FunctionParseError
from .function_space import RealFunction, SpaceParams, lp_norm, parse_function, xpc_norm
from .operators import (
    OperatorKind,
    OperatorSpec,
    Side,
    evaluate_operator,
    gfd_caputo_left,
    gfd_caputo_right,
    gfd_riemann_left,
    gfd_riemann_right,
    gfi_left,
    gfi_right,
    hadamard_integral,
    operator_as_function,
    power_integral_closed_form,
    power_rule_closed_form,
)
from .quadrature import EvalResult, QuadratureConfig, integrate_singular, jacobi_nodes
from .special import (
    SpecialValue,
    beta,
    gamma,
    log_gamma,
    lower_incomplete_gamma,
    lower_incomplete_gamma_ex,
)
from .verification import (
    CheckReport,
    bound_constant_K,
    bound_constant_K1,
    check_hadamard_limit,
    check_nfold_identity,
    check_norm_bound,
    check_semigroup,
    hadamard_bound_constant,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "DomainError",
    "EvaluationError",
    "FunctionParseError",
    "SpecialValue",
    "gamma",
    "log_gamma",
    "beta",
    "lower_incomplete_gamma",
    "lower_incomplete_gamma_ex",
    "QuadratureConfig",
    "EvalResult",
    "jacobi_nodes",
    "integrate_singular",
    "RealFunction",
    "SpaceParams",
    "parse_function",
    "xpc_norm",
    "lp_norm",
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
    "CheckReport",
    "bound_constant_K",
    "bound_constant_K1",
    "hadamard_bound_constant",
    "check_norm_bound",
    "check_semigroup",
    "check_nfold_identity",
    "check_hadamard_limit",
]
