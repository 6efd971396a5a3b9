"""Fractional operators against closed forms and brute-force oracles.

Frozen reference values were computed with an arbitrary-precision
implementation of the defining integrals (tanh-sinh quadrature at 40
digits, Richardson-extrapolated central differences for derivative
values); comments give the generating expression.
"""

import math

import numpy as np
import pytest

from fraccalc.errors import DomainError
from fraccalc.function_space import RealFunction, parse_function
from fraccalc.operators import (
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
from fraccalc.quadrature import QuadratureConfig

ONE = parse_function("const:1")
T = parse_function("pow:1")


def ispec(alpha, base, rho, side=Side.LEFT):
    return OperatorSpec(OperatorKind.INTEGRAL, side, alpha, base, rho)


def dspec(alpha, base, rho, side=Side.LEFT):
    return OperatorSpec(OperatorKind.RIEMANN_DERIVATIVE, side, alpha, base, rho)


def cspec(alpha, base, rho, side=Side.LEFT):
    return OperatorSpec(OperatorKind.CAPUTO_DERIVATIVE, side, alpha, base, rho)


class TestOperatorSpec:
    def test_rejects_bad_orders(self):
        with pytest.raises(DomainError):
            ispec(0.0, 0.0, 0.0)
        with pytest.raises(DomainError):
            ispec(-1.0, 0.0, 0.0)

    def test_rejects_rho_at_or_below_minus_one(self):
        for rho in (-1.0, -1.5):
            with pytest.raises(DomainError):
                ispec(0.5, 0.0, rho)

    def test_rejects_integer_order_derivatives(self):
        for alpha in (1.0, 2.0):
            with pytest.raises(DomainError):
                dspec(alpha, 0.0, 0.0)

    def test_rejects_large_derivative_order(self):
        with pytest.raises(DomainError):
            dspec(3.5, 0.0, 0.0)
        assert dspec(2.5, 0.0, 0.0).n == 3

    def test_hadamard_mode_restrictions(self):
        spec = OperatorSpec(OperatorKind.INTEGRAL, Side.LEFT, 0.5, 1.0, rho=None)
        assert spec.hadamard
        with pytest.raises(DomainError):
            OperatorSpec(OperatorKind.RIEMANN_DERIVATIVE, Side.LEFT, 0.5, 1.0, rho=None)
        with pytest.raises(DomainError):
            OperatorSpec(OperatorKind.INTEGRAL, Side.RIGHT, 0.5, 1.0, rho=None)
        with pytest.raises(DomainError):
            OperatorSpec(OperatorKind.INTEGRAL, Side.LEFT, 0.5, 0.0, rho=None)

    def test_negative_left_base_rejected(self):
        with pytest.raises(DomainError):
            ispec(0.5, -0.1, 0.0)


class TestIntegralLeft:
    def test_order_one_is_plain_integral(self):
        assert gfi_left(ONE, ispec(1.0, 0.0, 0.0), 1.0).value == pytest.approx(1.0, rel=1e-13)

    @pytest.mark.parametrize("rho", [-0.6, -0.3, 0.0, 0.7, 2.0])
    def test_order_one_general_rho(self, rho):
        x = 1.3
        want = x ** (rho + 1.0) / (rho + 1.0)
        assert gfi_left(ONE, ispec(1.0, 0.0, rho), x).value == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize(
        "nu,alpha,rho,x",
        [
            (1.0, 0.5, 0.0, 1.0),
            (1.5, 0.7, 0.4, 1.3),
            (0.5, 0.3, 1.0, 2.0),
            (2.0, 1.5, -0.4, 0.8),
            (0.5, 0.5, 0.5, 0.7),
        ],
    )
    def test_power_functions_match_closed_form(self, nu, alpha, rho, x):
        f = parse_function(f"pow:{nu}")
        got = gfi_left(f, ispec(alpha, 0.0, rho), x)
        want = power_integral_closed_form(nu, alpha, rho, x)
        assert got.value == pytest.approx(want, rel=1e-10)

    def test_closed_form_cross_checked_against_direct_quadrature(self):
        # values of (rho+1)^(1-a)/Gamma(a) int_0^x (x^(rho+1)-t^(rho+1))^(a-1)
        # t^(rho+nu) dt from tanh-sinh quadrature at 40 digits
        frozen = {
            (1.5, 0.7, 0.4, 1.3): 0.95512811815180558868,
            (0.5, 0.3, 1.0, 2.0): 1.7754466989933030676,
            (2.0, 1.5, -0.4, 0.8): 0.11523294068677647034,
        }
        for (nu, alpha, rho, x), want in frozen.items():
            assert power_integral_closed_form(nu, alpha, rho, x) == pytest.approx(want, rel=1e-13)

    def test_domain_validation(self):
        with pytest.raises(DomainError):
            gfi_left(ONE, ispec(0.5, 0.5, 0.0), 0.4)
        with pytest.raises(DomainError):
            gfi_left(ONE, dspec(0.5, 0.0, 0.0), 1.0)


class TestIntegralRight:
    def test_order_one(self):
        spec = ispec(1.0, 1.0, 0.0, side=Side.RIGHT)
        assert gfi_right(ONE, spec, 0.0).value == pytest.approx(1.0, rel=1e-13)

    @pytest.mark.parametrize("rho", [-0.5, 0.0, 1.2])
    def test_order_one_general_rho(self, rho):
        b, x = 2.0, 0.5
        spec = ispec(1.0, b, rho, side=Side.RIGHT)
        want = (b ** (rho + 1.0) - x ** (rho + 1.0)) / (rho + 1.0)
        assert gfi_right(ONE, spec, x).value == pytest.approx(want, rel=1e-12)

    def test_linear_function_frozen_value(self):
        # (1/Gamma(0.5)) int_0^1 t^(1/2) dt = 2/(3 sqrt(pi))
        spec = ispec(0.5, 1.0, 0.0, side=Side.RIGHT)
        got = gfi_right(T, spec, 0.0)
        assert got.value == pytest.approx(0.37612638903183752463, rel=1e-10)

    def test_requires_x_below_base(self):
        with pytest.raises(DomainError):
            gfi_right(ONE, ispec(0.5, 1.0, 0.0, side=Side.RIGHT), 1.5)


class TestHadamard:
    def test_order_one_log(self):
        got = hadamard_integral(ONE, 1.0, 1.0, 2.5)
        assert got.value == pytest.approx(math.log(2.5), rel=1e-13)

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 1.7])
    def test_const_any_order(self, alpha):
        x, a = math.e, 1.0
        want = math.log(x / a) ** alpha / math.gamma(alpha + 1.0)
        assert hadamard_integral(ONE, alpha, a, x).value == pytest.approx(want, rel=1e-12)

    def test_log_operand(self):
        got = hadamard_integral(parse_function("log"), 1.0, 1.0, 2.0)
        assert got.value == pytest.approx(0.24022650695910071233, rel=1e-12)  # (log 2)^2 / 2

    def test_needs_positive_base(self):
        with pytest.raises(DomainError):
            hadamard_integral(ONE, 0.5, 0.0, 1.0)


class TestRiemannDerivative:
    def test_classical_half_derivative_of_t(self):
        got = gfd_riemann_left(T, dspec(0.5, 0.0, 0.0), 1.0)
        assert got.value == pytest.approx(1.1283791670955125739, rel=1e-9)  # 2/sqrt(pi)
        assert got.converged

    def test_half_derivative_of_const(self):
        for x in (0.5, 1.0, 2.0):
            got = gfd_riemann_left(ONE, dspec(0.5, 0.0, 0.0), x)
            want = x**-0.5 / math.sqrt(math.pi)
            assert got.value == pytest.approx(want, rel=1e-8)

    def test_power_weighted_kernel_frozen_value(self):
        # brute-force oracle (40-digit quadrature + Richardson differences)
        # for nu=1.5, alpha=0.5, rho=0.4, x=1; pins the (rho+1)^alpha
        # prefactor of the closed form
        got = gfd_riemann_left(parse_function("pow:1.5"), dspec(0.5, 0.0, 0.4), 1.0)
        assert got.value == pytest.approx(1.3714878759056944, rel=1e-9)
        assert power_rule_closed_form(1.5, 0.5, 0.4, 1.0) == pytest.approx(
            1.3714878759056944, rel=1e-13
        )

    def test_rho_one_frozen_value(self):
        # direct evaluation: sqrt(2)/Gamma(0.5) d/dx [pi x^2/4] at x=1 = sqrt(pi/2)
        got = gfd_riemann_left(T, dspec(0.5, 0.0, 1.0), 1.0)
        assert got.value == pytest.approx(1.2533141373155002512, rel=1e-9)

    @pytest.mark.parametrize("alpha", [1.3, 2.6])
    def test_higher_order_against_closed_form(self, alpha):
        # D^alpha t^nu from 0 equals Gamma(nu+1)/Gamma(nu+1-alpha) x^(nu-alpha)
        # for rho = 0 (valid for any non-integer alpha < nu + 1)
        nu = 3.2
        f = parse_function(f"pow:{nu}")
        x = 1.4
        want = math.gamma(nu + 1.0) / math.gamma(nu + 1.0 - alpha) * x ** (nu - alpha)
        got = gfd_riemann_left(f, dspec(alpha, 0.0, 0.0), x)
        assert got.value == pytest.approx(want, rel=1e-7)

    def test_grid_matches_closed_form(self):
        for rho in (-0.4, 0.4):
            for nu in (1.0, 2.0):
                f = parse_function(f"pow:{nu}")
                for x in (0.5, 1.5):
                    got = gfd_riemann_left(f, dspec(0.5, 0.0, rho), x)
                    want = power_rule_closed_form(nu, 0.5, rho, x)
                    assert got.value == pytest.approx(want, rel=1e-5)

    def test_one_sided_stencil_near_base(self):
        got = gfd_riemann_left(T, dspec(0.5, 0.0, 0.0), 1e-3)
        assert "one_sided" in got.flags
        want = power_rule_closed_form(1.0, 0.5, 0.0, 1e-3)
        assert got.value == pytest.approx(want, rel=1e-4)


class TestRiemannDerivativeRight:
    def test_zero_function(self):
        z = parse_function("const:0")
        got = gfd_riemann_right(z, dspec(0.5, 1.0, 0.0, side=Side.RIGHT), 0.5)
        assert got.value == pytest.approx(0.0, abs=1e-10)

    def test_const_against_closed_form(self):
        # right-sided half derivative of 1 on (x, b): (b-x)^(-1/2)/Gamma(1/2)
        got = gfd_riemann_right(ONE, dspec(0.5, 1.0, 0.0, side=Side.RIGHT), 0.5)
        want = 0.5**-0.5 / math.sqrt(math.pi)
        assert got.value == pytest.approx(want, rel=1e-8)

    def test_homogeneity(self):
        f2 = parse_function("scaled:2,pow:1")
        spec = dspec(0.5, 1.0, 0.3, side=Side.RIGHT)
        a = gfd_riemann_right(T, spec, 0.4).value
        b = gfd_riemann_right(f2, spec, 0.4).value
        assert b == pytest.approx(2.0 * a, abs=1e-8)


class TestCaputo:
    def test_constant_maps_to_zero(self):
        for rho in (-0.4, 0.0, 1.0):
            got = gfd_caputo_left(ONE, cspec(0.7, 0.0, rho), 1.2)
            assert abs(got.value) <= 1e-12

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.9])
    def test_linear_power_rule(self, alpha):
        x = 0.8
        want = x ** (1.0 - alpha) / math.gamma(2.0 - alpha)
        got = gfd_caputo_left(T, cspec(alpha, 0.0, 0.0), x)
        assert got.value == pytest.approx(want, rel=1e-11)

    @pytest.mark.parametrize("alpha", [0.3, 0.7])
    def test_quadratic_power_rule(self, alpha):
        f = parse_function("pow:2")
        x = 1.1
        want = 2.0 * x ** (2.0 - alpha) / math.gamma(3.0 - alpha)
        got = gfd_caputo_left(f, cspec(alpha, 0.0, 0.0), x)
        assert got.value == pytest.approx(want, rel=1e-11)

    def test_right_sided_linear(self):
        # -(1/Gamma(0.5)) int_x^1 (t-x)^(-1/2) dt at x = 0.25
        got = gfd_caputo_right(T, cspec(0.5, 1.0, 0.0, side=Side.RIGHT), 0.25)
        assert got.value == pytest.approx(-0.97720502380583984317, rel=1e-11)

    def test_rejects_operand_without_derivatives(self):
        bare = RealFunction(eval=lambda t: np.asarray(t) * 2.0)
        with pytest.raises(DomainError):
            gfd_caputo_left(bare, cspec(0.5, 0.0, 0.0), 1.0)


def test_linearity_of_all_operator_kinds():
    rng = np.random.default_rng(17)
    lam, mu = 1.7, -0.6
    c1 = rng.uniform(-1.0, 1.0, size=4)
    c2 = rng.uniform(-1.0, 1.0, size=4)
    combo = lam * c1 + mu * c2
    f = parse_function("poly:" + ",".join(f"{float(c)!r}" for c in c1))
    g = parse_function("poly:" + ",".join(f"{float(c)!r}" for c in c2))
    h = parse_function("poly:" + ",".join(f"{float(c)!r}" for c in combo))
    x = 1.2
    specs = [
        (gfi_left, ispec(0.6, 0.0, 0.4)),
        (gfi_right, ispec(0.6, 2.0, 0.4, side=Side.RIGHT)),
        (gfd_riemann_left, dspec(0.6, 0.0, 0.4)),
        (gfd_riemann_right, dspec(0.6, 2.0, 0.4, side=Side.RIGHT)),
        (gfd_caputo_left, cspec(0.6, 0.0, 0.4)),
        (gfd_caputo_right, cspec(0.6, 2.0, 0.4, side=Side.RIGHT)),
    ]
    for op, spec in specs:
        lhs = op(h, spec, x).value
        rhs = lam * op(f, spec, x).value + mu * op(g, spec, x).value
        assert lhs == pytest.approx(rhs, abs=1e-9)


def test_riemann_liouville_reduction():
    # rho = 0 reproduces the classical Riemann-Liouville integral
    for nu in (0.5, 1.0, 2.0):
        f = parse_function(f"pow:{nu}")
        for alpha in (0.3, 0.7, 1.5):
            for x in (0.5, 2.0):
                got = gfi_left(f, ispec(alpha, 0.0, 0.0), x)
                want = power_integral_closed_form(nu, alpha, 0.0, x)
                classical = (
                    math.gamma(nu + 1.0) / math.gamma(nu + 1.0 + alpha) * x ** (nu + alpha)
                )
                assert want == pytest.approx(classical, rel=1e-13)
                assert got.value == pytest.approx(want, rel=1e-9)


def test_hadamard_limit_of_generalized_integral():
    a, x = 1.0, math.e
    for desc in ("const:1", "log"):
        f = parse_function(desc)
        target = hadamard_integral(f, 0.5, a, x).value
        residuals = []
        for eps in (1e-1, 1e-2, 1e-3, 1e-4):
            v = gfi_left(f, ispec(0.5, a, -1.0 + eps), x).value
            residuals.append(abs(v - target))
        assert all(r2 <= r1 for r1, r2 in zip(residuals, residuals[1:]))
        assert residuals[-1] <= 1e-3


def test_derivative_inverts_integral():
    # sanity composition with relaxed tolerance; not a cited identity.
    # D^a (I^a f) = d/dx I^1 f = x^rho f(x): the plain d/dx in the derivative
    # leaves the tau^rho weight of the first-order integral behind, so the
    # composition is the identity exactly when rho = 0
    f = parse_function("poly:1,1")
    alpha = 0.6
    x = 0.7
    integral = operator_as_function(f, ispec(alpha, 0.0, 0.0))
    got = gfd_riemann_left(integral, dspec(alpha, 0.0, 0.0), x)
    assert got.value == pytest.approx(f(x), rel=1e-4)

    rho = 0.3
    integral = operator_as_function(f, ispec(alpha, 0.0, rho))
    got = gfd_riemann_left(integral, dspec(alpha, 0.0, rho), x)
    assert got.value == pytest.approx(x**rho * f(x), rel=1e-4)


class TestPowerRuleClosedForm:
    def test_reduces_to_riemann_liouville(self):
        for nu in (0.5, 1.0, 2.3):
            for alpha in (0.3, 0.5, 0.9):
                for x in (0.4, 1.0, 1.9):
                    got = power_rule_closed_form(nu, alpha, 0.0, x)
                    want = math.gamma(nu + 1.0) / math.gamma(nu + 1.0 - alpha) * x ** (nu - alpha)
                    assert got == pytest.approx(want, rel=1e-13)

    def test_known_point(self):
        assert power_rule_closed_form(1.0, 0.5, 0.0, 1.0) == pytest.approx(
            1.1283791670955125739, rel=1e-14
        )

    def test_negative_gamma_argument_handled(self):
        # nu/(rho+1) + 1 - alpha < 0 and non-integer: finite via reflection-free
        # recurrence lifting; cross-check against math.gamma which supports
        # negative non-integer arguments
        nu, alpha, rho = -0.5, 0.9, 0.2
        q = nu / (rho + 1.0) + 1.0
        want = (
            (rho + 1.0) ** alpha
            * math.gamma(q)
            / math.gamma(q - alpha)
            * 1.0 ** (nu + (rho + 1.0) * (1.0 - alpha) - 1.0)
        )
        assert power_rule_closed_form(nu, alpha, rho, 1.0) == pytest.approx(want, rel=1e-12)

    def test_gamma_pole_is_domain_error(self):
        # q - alpha = 0 exactly: nu=0 gives q=1, alpha=1 not allowed, so use
        # a combination with q - alpha a non-positive integer
        with pytest.raises(DomainError):
            power_rule_closed_form(-0.5, 0.5, 0.0, 1.0)  # q=0.5, q-alpha=0

    def test_domain_checks(self):
        with pytest.raises(DomainError):
            power_rule_closed_form(1.0, 1.5, 0.0, 1.0)
        with pytest.raises(DomainError):
            power_rule_closed_form(1.0, 0.5, -1.2, 1.0)
        with pytest.raises(DomainError):
            power_rule_closed_form(-1.5, 0.5, 0.0, 1.0)
        with pytest.raises(DomainError):
            power_rule_closed_form(1.0, 0.5, 0.0, 0.0)


class TestPowerIntegralClosedForm:
    def test_trivials(self):
        assert power_integral_closed_form(0.0, 1.0, 0.0, 1.7) == pytest.approx(1.7, rel=1e-14)
        for rho in (-0.4, 0.9):
            x = 1.3
            want = x ** (rho + 1.0) / (rho + 1.0)
            assert power_integral_closed_form(0.0, 1.0, rho, x) == pytest.approx(want, rel=1e-13)

    def test_half_integral_of_t(self):
        assert power_integral_closed_form(1.0, 0.5, 0.0, 1.0) == pytest.approx(
            0.75225277806367504926, rel=1e-13
        )  # Gamma(2)/Gamma(2.5)


def test_evaluate_operator_dispatch():
    specs = [
        ispec(0.5, 0.0, 0.0),
        ispec(0.5, 2.0, 0.0, side=Side.RIGHT),
        dspec(0.5, 0.0, 0.0),
        cspec(0.5, 0.0, 0.0),
        OperatorSpec(OperatorKind.INTEGRAL, Side.LEFT, 0.5, 1.0, rho=None),
    ]
    for spec in specs:
        res = evaluate_operator(T, spec, 1.5)
        assert math.isfinite(res.value)


def test_operator_as_function_vectorizes():
    fn = operator_as_function(ONE, ispec(1.0, 0.0, 0.0))
    xs = np.array([0.5, 1.0, 2.0])
    np.testing.assert_allclose(fn(xs), xs, rtol=1e-12)
    assert fn(1.0) == pytest.approx(1.0, rel=1e-12)


def test_tight_node_budget_flags_nonconvergence():
    cfg = QuadratureConfig(max_nodes=96)
    f = parse_function("pow:0.5")
    got = gfi_left(f, ispec(0.3, 0.0, 1.0), 2.0, cfg)
    assert not got.converged
