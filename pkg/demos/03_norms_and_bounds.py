"""Weighted-space norms and the boundedness inequality.

The operator acts on the space of functions with finite weighted norm
(int_a^b |t^c f(t)|^p dt/t)^(1/p).  This script computes a few norms,
then examines the constant K in norm(I f) <= K norm(f): the two printed
normalizations differ by one power of b, and only the larger one is a
valid bound when alpha*(rho+1) < 1.
"""

import math

from fraccalc import (
    SpaceParams,
    bound_constant_K,
    bound_constant_K1,
    check_norm_bound,
    lp_norm,
    parse_function,
    xpc_norm,
)

# --- norms -------------------------------------------------------------------
f = parse_function("pow:1")
print("norms of f(t) = t on [1, 2]")
for p in (1.0, 2.0, math.inf):
    sp = SpaceParams(p, 1.0, 1.0, 2.0)
    weighted = xpc_norm(f, sp).value
    classical = lp_norm(f, p, 1.0, 2.0).value
    label = "inf" if math.isinf(p) else f"{p:g}"
    print(f"  p={label:>3}  weighted (c=1) {weighted:.10f}   classical {classical:.10f}")

# with c = 1/p the weight cancels the dt/t measure and the two agree
sp = SpaceParams(2.0, 0.5, 1.0, 2.0)
print(f"  c = 1/p consistency: {xpc_norm(f, sp).value:.12f} "
      f"vs {lp_norm(f, 2.0, 1.0, 2.0).value:.12f}")

# --- the two bound constants ---------------------------------------------------
print("\nbound constants on [1, 2], c = 0")
print(f"{'alpha':>6} {'rho':>5} {'K (b^(a(r+1)-1))':>18} {'K1 (b^(a(r+1)))':>17}")
for alpha, rho in ((0.5, 0.0), (0.5, 0.5), (1.0, 0.0), (1.5, 1.0)):
    k = bound_constant_K(alpha, rho, 0.0, 1.0, 2.0).value
    k1 = bound_constant_K1(alpha, rho, 0.0, 1.0, 2.0).value
    print(f"{alpha:6.1f} {rho:5.1f} {k:18.10f} {k1:17.10f}")

# --- witnessing the inequality --------------------------------------------------
# For f = 1 at alpha = 1/2 the smaller normalization fails: the inequality
# would need 4 - pi <= ln 2.  The larger normalization holds with room.
one = parse_function("const:1")
sp = SpaceParams(1.0, 0.0, 1.0, 2.0)
for kind in ("K", "K1"):
    rep = check_norm_bound(one, 0.5, 0.0, sp, constant=kind)
    print(f"\nconstant {kind}: passed={rep.passed}")
    print(f"  norm(I f) = {rep.parameters['lhs_norm']:.6f}, "
          f"K * norm(f) = {rep.constant * rep.parameters['rhs_norm']:.6f}, "
          f"residual = {rep.residual:.6f}")
