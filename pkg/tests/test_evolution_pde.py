"""Burgers soliton family, its parameter flow, and the heat-kernel demo."""

from __future__ import annotations

import math

import pytest

from semiflow.evolution_pde import (
    ParamFlow,
    SolitonFamily,
    burgers_residual,
    burgers_soliton,
    heat_flow_demo,
    heat_kernel,
    heat_pde,
    param_flow_check,
    soliton_param_flow,
    soliton_translation_check,
)
from semiflow.grids import Axis, SamplingGrid, grid2d
from semiflow.maps import map_from_exprs, scalar_map
from semiflow.semisym import residual_max


def fd_burgers_residual(U, mu: float, t: float, x: float, h: float = 1e-5) -> float:
    """Independent oracle: the PDE residual from central differences only."""
    u = lambda tt, xx: U(tt, xx)[0]  # noqa: E731
    u_t = (u(t + h, x) - u(t - h, x)) / (2.0 * h)
    u_x = (u(t, x + h) - u(t, x - h)) / (2.0 * h)
    u_xx = (u(t, x + h) - 2.0 * u(t, x) + u(t, x - h)) / (h * h)
    return abs(u_t + u(t, x) * u_x - mu * u_xx)


class TestSoliton:
    def test_center_value(self):
        U = burgers_soliton(0.0, 1.0, 1.0, 0.5)
        assert U(0.0, 0.0)[0] == pytest.approx(1.0, rel=1e-15)

    def test_zero_speed_center(self):
        U = burgers_soliton(0.7, 0.0, 1.0, 1.0)
        assert U(0.0, 0.7)[0] == pytest.approx(0.0, abs=1e-15)

    def test_parameter_domain(self):
        with pytest.raises(ValueError):
            burgers_soliton(0.0, 1.0, -1.0, 0.5)  # c^2 + d = 0
        with pytest.raises(ValueError):
            burgers_soliton(0.0, 1.0, 1.0, 0.0)  # mu = 0
        with pytest.raises(ValueError):
            SolitonFamily(0.0, 0.5, -0.25, 0.5)

    def test_family_profile(self):
        fam = SolitonFamily(1.0, -0.5, 1.0, 0.25)
        assert fam.profile()(0.0, 1.0)[0] == pytest.approx(-0.5, rel=1e-14)

    def test_symbolic_residual(self):
        U = burgers_soliton(0.0, 1.0, 1.0, 0.5)
        grid = grid2d(0.0, 1.0, 5, -5.0, 5.0, 11)
        assert burgers_residual(U, 0.5, grid) <= 1e-8

    def test_residual_against_finite_difference_oracle(self):
        U = burgers_soliton(0.3, -0.8, 1.5, 0.4)
        for t, x in ((0.0, 0.0), (0.5, 1.0), (1.0, -2.0)):
            assert fd_burgers_residual(U, 0.4, t, x) <= 1e-5

    def test_constant_is_a_solution(self):
        grid = grid2d(0.0, 1.0, 4, -2.0, 2.0, 5)
        assert burgers_residual(scalar_map(("t", "x"), "3"), 0.5, grid) == 0.0

    def test_linear_profile_residual_is_abs_x(self):
        # U = x: U_t = 0, U*U_x = x, U_xx = 0 -> residual |x|
        grid = grid2d(0.0, 1.0, 3, -4.0, 4.0, 9)
        assert burgers_residual(scalar_map(("t", "x"), "x"), 0.5, grid) == pytest.approx(4.0)

    def test_tanh_saturates_without_overflow(self):
        U = burgers_soliton(0.0, 2.0, 2.0, 0.1)
        assert U(0.0, 1e6)[0] == pytest.approx(2.0 - math.sqrt(6.0), rel=1e-12)


class TestParamFlow:
    def test_identity_at_zero(self):
        flow = soliton_param_flow()
        a, b = flow.move(0.0, 1.5, (0.7, -0.2))
        assert a == 1.5 and b == (0.7, -0.2)

    def test_cocycle_exact_for_linear_flow(self):
        grid = SamplingGrid(
            (Axis(0.0, 2.0, 4), Axis(0.0, 2.0, 4), Axis(-3.0, 3.0, 5), Axis(-2.0, 2.0, 5), Axis(0.5, 2.0, 3))
        )
        rep = param_flow_check(soliton_param_flow(), grid, 1e-12)
        assert rep.passed

    def test_cocycle_for_nonconstant_beta(self):
        # alpha = a + c*(exp(t)-1), beta = c*exp(t): a synthetic flow whose
        # parameter block genuinely moves, still satisfying both identities
        flow = ParamFlow(
            alpha=map_from_exprs(("t", "a", "c"), ["a + c*(exp(t) - 1)"]),
            beta=map_from_exprs(("t", "a", "c"), ["c*exp(t)"]),
        )
        grid = SamplingGrid(
            (Axis(0.0, 1.5, 4), Axis(0.0, 1.5, 4), Axis(-2.0, 2.0, 5), Axis(-1.0, 1.0, 5))
        )
        rep = param_flow_check(flow, grid, 1e-12)
        assert rep.passed

    def test_signature_validation(self):
        with pytest.raises(ValueError):
            ParamFlow(
                alpha=map_from_exprs(("t", "a", "c"), ["a"]),
                beta=map_from_exprs(("t", "a"), ["1"]),
            )

    def test_frozen_parameters_give_a_time_action(self):
        # for fixed (c,d) the position flow is a plain translation semigroup
        from semiflow.actions import (
            TimeAction,
            composition_check,
            dichotomy_classify,
            identity_check,
        )
        from semiflow.grids import grid1d
        from semiflow.maps import SmoothMap

        flow = soliton_param_flow()
        c, d = 0.8, 0.5
        action = TimeAction(
            "soliton-position-flow", 1, "nonneg", "t", ("a",),
            SmoothMap(("t", "a"), func=lambda t, a: (flow.move(t, a, (c, d))[0],), out_dim=1),
        )
        assert identity_check(action, grid1d(-3.0, 3.0, 21), 1e-12).passed
        assert composition_check(action, [(0.5, 1.5), (1.0, 1.0)], grid1d(-3.0, 3.0, 21), 1e-12).passed
        # translations are invertible: the induced flow is group-like, not genuine
        verdict = dichotomy_classify(action, [0.5, 1.0, 2.0], grid1d(-3.0, 3.0, 21), 1e-12)
        assert verdict.classification == "group_like"


class TestTranslationCheck:
    def test_soliton_translation(self):
        grid = SamplingGrid(
            (
                Axis(0.0, 2.0, 3),
                Axis(-5.0, 5.0, 7),
                Axis(-1.0, 1.0, 3),
                Axis(-2.0, 2.0, 3),
                Axis(-1.0, 2.0, 3),
                Axis(0.25, 1.0, 2),
            )
        )
        rep = soliton_translation_check(soliton_param_flow(), burgers_soliton, grid, 1e-12)
        assert rep.passed
        assert rep.skipped > 0  # inadmissible (c,d) tuples are skipped, not errors

    def test_explicit_translation_identity(self):
        # U(2, x) with x0=0 equals U(0, x) with x0 moved to 2
        flow = soliton_param_flow()
        U0 = burgers_soliton(0.0, 1.0, 1.0, 0.5)
        a2, b2 = flow.move(2.0, 0.0, (1.0, 1.0))
        U2 = burgers_soliton(a2, b2[0], b2[1], 0.5)
        for x in (-3.0, 0.0, 1.5, 4.0):
            assert U0(2.0, x)[0] == pytest.approx(U2(0.0, x)[0], abs=1e-12)


class TestHeatDemo:
    def test_kernel_solves_heat_equation(self):
        grid = grid2d(0.5, 2.0, 16, -3.0, 3.0, 21)
        assert residual_max(heat_pde(), heat_kernel(), grid) <= 1e-12

    def test_demo_report(self):
        rep = heat_flow_demo(grid2d(0.5, 2.0, 9, -3.0, 3.0, 11), 1e-10)
        assert rep.passed
        assert any("no inverse" in n or "not surjective" in n for n in rep.notes)

    def test_kernel_fd_oracle(self):
        K = heat_kernel()
        h = 1e-4
        for t, x in ((1.0, 0.0), (0.7, 1.3)):
            u = lambda tt, xx: K(tt, xx)[0]  # noqa: E731
            u_t = (u(t + h, x) - u(t - h, x)) / (2.0 * h)
            u_xx = (u(t, x + h) - 2.0 * u(t, x) + u(t, x - h)) / (h * h)
            assert abs(u_t - u_xx) <= 1e-6
