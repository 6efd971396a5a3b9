"""Structural identities: semigroup, n-fold integrals, the Hadamard limit.

Each check compares two independent computations of the same quantity and
reports a residual; the JSON form is what the `fraccalc check` subcommand
prints.
"""

import math

from fraccalc import (
    check_hadamard_limit,
    check_nfold_identity,
    check_semigroup,
    parse_function,
)

# --- semigroup: applying orders 0.3 then 0.9 equals order 1.2 ------------------
f = parse_function("pow:1")
rep = check_semigroup(f, 0.3, 0.9, 0.5, 0.0, [0.25, 0.5, 0.75, 1.0])
print("semigroup I^0.3 (I^0.9 f) vs I^1.2 f, rho = 0.5:")
print(f"  max residual {rep.residual:.3e}  passed={rep.passed}")

# order of application does not matter
swapped = check_semigroup(f, 0.9, 0.3, 0.5, 0.0, [0.25, 0.5, 0.75, 1.0])
print(f"  swapped orders residual {swapped.residual:.3e}")

# --- n-fold iterated integrals ---------------------------------------------------
# The weighted n-fold iterated integral collapses to a single kernel
# integral with factor 1/(n-1)!; both sides are computed independently.
for n in (2, 3):
    rep = check_nfold_identity(f, n, 0.5, 0.0, 1.0)
    print(f"\n{n}-fold identity, rho = 0.5: residual {rep.residual:.3e}  "
          f"kernel value {rep.parameters['kernel_value']:.10f}")

# --- the Hadamard limit -----------------------------------------------------------
# As rho -> -1+ the generalized integral approaches the log-kernel form;
# the residual sequence must decrease monotonically.
one = parse_function("const:1")
rep = check_hadamard_limit(one, 0.5, 1.0, math.e, [1e-1, 1e-2, 1e-3, 1e-4])
print(f"\nhadamard limit, alpha = 0.5 on [1, e]: passed={rep.passed}")
print(f"  residuals by eps: {rep.parameters['residuals']}")
print("\nJSON report:")
print(rep.to_json())
