"""A tour of the fractional operators.

One kernel parameter rho moves continuously between the classical
fractional calculi: rho = 0 is Riemann-Liouville, and rho -> -1+
approaches the Hadamard (logarithmic) integral.  This script evaluates
the same half-order integral of f(t) = t across that range, then shows
the derivative kinds.
"""

import math

from fraccalc import (
    OperatorKind,
    OperatorSpec,
    Side,
    gfd_caputo_left,
    gfd_riemann_left,
    gfi_left,
    gfi_right,
    hadamard_integral,
    parse_function,
    power_integral_closed_form,
    power_rule_closed_form,
)

f = parse_function("pow:1")
x = 2.0

# --- the integral family across rho ---------------------------------------
# At rho = 0 the value must match the classical Riemann-Liouville closed
# form for power functions; the last column shows that agreement.
print("half-order integral of f(t) = t at x = 2, base 0")
print(f"{'rho':>6} {'value':>20} {'closed form':>20}")
for rho in (-0.9, -0.5, 0.0, 0.5, 1.0, 2.0):
    spec = OperatorSpec(OperatorKind.INTEGRAL, Side.LEFT, 0.5, 0.0, rho)
    value = gfi_left(f, spec, x).value
    closed = power_integral_closed_form(1.0, 0.5, rho, x)
    print(f"{rho:6.2f} {value:20.12f} {closed:20.12f}")

# --- the Hadamard endpoint --------------------------------------------------
# Push rho toward -1 and compare with the genuine log-kernel integral
# (which needs a positive base point, so we work on [1, e]).
print("\nrho -> -1+ against the Hadamard integral on [1, e], f = 1")
one = parse_function("const:1")
target = hadamard_integral(one, 0.5, 1.0, math.e).value
print(f"  hadamard value {target:.12f}  (= 1/Gamma(1.5) = {1/math.gamma(1.5):.12f})")
for eps in (1e-1, 1e-2, 1e-3, 1e-4):
    spec = OperatorSpec(OperatorKind.INTEGRAL, Side.LEFT, 0.5, 1.0, -1.0 + eps)
    value = gfi_left(one, spec, math.e).value
    print(f"  rho = -1 + {eps:<6g} value {value:.12f}  |diff| {abs(value - target):.2e}")

# --- right-sided integral ----------------------------------------------------
spec = OperatorSpec(OperatorKind.INTEGRAL, Side.RIGHT, 0.5, 1.0, 0.0)
print(f"\nright-sided half integral of t on [x, 1] at x = 0: "
      f"{gfi_right(f, spec, 0.0).value:.12f}  (= 2/(3 sqrt(pi)))")

# --- the two derivative kinds ------------------------------------------------
# Riemann-type differentiates the order-(1 - alpha) integral; Caputo-type
# integrates the analytic first derivative.  For f(t) = t from base 0 both
# agree with the power rule.
print("\nderivatives of f(t) = t at x = 1, alpha = 0.5")
for rho in (0.0, 0.4):
    dspec = OperatorSpec(OperatorKind.RIEMANN_DERIVATIVE, Side.LEFT, 0.5, 0.0, rho)
    cspec = OperatorSpec(OperatorKind.CAPUTO_DERIVATIVE, Side.LEFT, 0.5, 0.0, rho)
    riemann = gfd_riemann_left(f, dspec, 1.0).value
    caputo = gfd_caputo_left(f, cspec, 1.0).value
    closed = power_rule_closed_form(1.0, 0.5, rho, 1.0)
    print(f"  rho={rho:4.1f}  riemann {riemann:.10f}  caputo {caputo:.10f}  "
          f"closed form {closed:.10f}")
