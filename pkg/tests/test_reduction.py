"""Reduction to autonomous form, RK4 flows, operator laws, recovery."""

from __future__ import annotations

import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from semiflow.enforcing import cuberoot_group_action, sqrt_action
from semiflow.expr import EvalDomainError
from semiflow.grids import Axis, SamplingGrid, grid1d, grid2d
from semiflow.maps import SmoothMap, map_from_exprs
from semiflow.reduction import (
    EvolutionOp,
    IntegrationError,
    OdeSystem,
    RecoverySettings,
    Trajectory,
    augment_system,
    first_component_check,
    flow_vs_closed_form,
    gls_one_time_op,
    gls_slice,
    gls_two_time,
    gls_two_time_op,
    integrate_flow,
    one_time_law_check,
    quadratic_one_time_op,
    quadratic_slice,
    quadratic_system,
    quadratic_two_time_op,
    recover_evolution,
    recover_evolution_detailed,
    two_time_law_check,
    ystar_branch,
)
from semiflow.rootfind import RootSearchError
from semiflow.suites import cuberoot_ode_system, sqrt_ode_system


class TestAugmentation:
    def test_quadratic_rhs(self):
        aug = augment_system(quadratic_system())
        assert aug.kind == "autonomous" and aug.dim == 2
        # F_A(tau, y) = (1, 2*tau)
        assert aug.rhs(3.0, 7.0) == (1.0, 6.0)

    def test_zero_rhs(self):
        sys0 = OdeSystem("flat", "nonautonomous", 1, map_from_exprs(("t", "y"), ["0"]))
        assert augment_system(sys0).rhs(5.0, 2.0) == (1.0, 0.0)

    def test_sqrt_rhs_renames_time_into_state(self):
        aug = augment_system(sqrt_ode_system("minus"))
        tau, y = 0.25, 1.5
        one, slope = aug.rhs(tau, y)
        assert one == 1.0
        # same value as the non-autonomous RHS at (t, y) = (tau, y)
        want = sqrt_ode_system("minus").rhs(tau, y)[0]
        assert slope == want

    def test_only_nonautonomous_accepted(self):
        with pytest.raises(ValueError):
            augment_system(cuberoot_ode_system())

    def test_validity_lifts_to_state(self):
        aug = augment_system(sqrt_ode_system("minus"))
        assert aug.valid_at(0.0, (1.0, 1.0))
        assert not aug.valid_at(0.0, (-1.0, 1.0))


class TestIntegrateFlow:
    def test_quadratic_example(self):
        # dY/dt = 2t from (t0, y0) = (0, 5): Y(2) = t^2 - t0^2 + y0 = 9
        traj = integrate_flow(quadratic_system(), 0.0, (5.0,), 2.0, 100)
        assert traj.final()[0] == pytest.approx(9.0, abs=1e-9)

    def test_constant_for_zero_rhs(self):
        sys0 = OdeSystem("flat", "nonautonomous", 1, map_from_exprs(("t", "y"), ["0"]))
        traj = integrate_flow(sys0, 0.0, (3.5,), 1.0, 50)
        assert all(state == (3.5,) for state in traj.states)

    def test_augmented_first_coordinate_tracks_time(self):
        aug = augment_system(quadratic_system())
        traj = integrate_flow(aug, 0.0, (0.0, 5.0), 2.0, 200)
        for tau, state in zip(traj.times, traj.states):
            assert abs(state[0] - tau) <= 1e-12

    def test_augmented_singular_run_matches_closed_form(self):
        # start on the closed form at t = 1e-6 and ride the augmented system to t = 1
        action = sqrt_action()
        eps = 1e-6
        aug = augment_system(sqrt_ode_system("minus"))
        traj = integrate_flow(
            aug, 0.0, (eps, action.call1(eps, 1.0)), 1.0, 100_000,
            eps_start=eps, spacing="geometric",
        )
        t_end, y_end = traj.final()
        assert t_end == pytest.approx(1.0, abs=1e-12)
        assert y_end == pytest.approx(2.0, rel=1e-5)

    def test_validity_exit_reports_time(self):
        drain = OdeSystem(
            "drain", "autonomous", 1, map_from_exprs(("y",), ["-1"]),
            validity=lambda t, y: y[0] > 0.0,
        )
        with pytest.raises(IntegrationError) as err:
            integrate_flow(drain, 0.0, (1.0,), 2.0, 100)
        assert 0.9 < err.value.time < 1.3

    def test_nonfinite_state_detected(self):
        blow = OdeSystem("blow", "autonomous", 1, map_from_exprs(("y",), ["y^2"]))
        with pytest.raises(IntegrationError):
            integrate_flow(blow, 0.0, (1.0,), 2.0, 40)

    def test_geometric_mesh_needs_positive_start(self):
        with pytest.raises(ValueError):
            integrate_flow(quadratic_system(), 0.0, (1.0,), 1.0, 10, spacing="geometric")

    def test_forward_only(self):
        with pytest.raises(ValueError):
            integrate_flow(quadratic_system(), 1.0, (1.0,), 0.5, 10)

    def test_rhs_domain_error_reports_time(self):
        sys_sq = sqrt_ode_system("minus")
        with pytest.raises(IntegrationError):
            # starting exactly at the t=0 singularity is invalid
            integrate_flow(sys_sq, 0.0, (1.0,), 1.0, 10)


class TestTrajectory:
    def test_csv_format(self):
        traj = integrate_flow(quadratic_system(), 0.0, (5.0,), 1.0, 4)
        text = traj.to_csv()
        lines = text.strip().split("\n")
        assert lines[0] == "t,y1"
        assert len(lines) == 6
        t_back, y_back = (float(v) for v in lines[-1].split(","))
        assert t_back == traj.times[-1] and y_back == traj.final()[0]

    def test_strictly_increasing_times_enforced(self):
        with pytest.raises(ValueError):
            Trajectory([0.0, 0.0], [(1.0,), (1.0,)], 1, 0.0, "uniform")


class TestEvolutionOps:
    def test_one_time_identity(self):
        op = quadratic_one_time_op()
        assert op.apply_one(0.0, (2.0, 3.0)) == (2.0, 3.0)
        gls = gls_one_time_op()
        t, y = 0.7, 2.5
        out = gls.apply_one(0.0, (t, y))
        assert out[0] == t and out[1] == pytest.approx(y, abs=1e-12)

    def test_two_time_identity(self):
        assert quadratic_two_time_op().apply_two(1.5, 1.5, (4.0,)) == (4.0,)
        got = gls_two_time_op().apply_two(1.0, 1.0, (6.0,))[0]
        assert got == pytest.approx(6.0, abs=1e-10)

    def test_nonneg_domain_enforced(self):
        with pytest.raises(EvalDomainError):
            gls_one_time_op().apply_one(-0.5, (0.0, 1.0))
        with pytest.raises(EvalDomainError):
            gls_two_time_op().apply_two(-1.0, 1.0, (0.0,))

    def test_quadratic_evolution_spots(self):
        op = quadratic_one_time_op()
        assert op.apply_one(1.0, (2.0, 3.0)) == (3.0, 8.0)
        mid = op.apply_one(1.0, (0.0, 1.0))
        assert op.apply_one(2.0, mid) == op.apply_one(3.0, (0.0, 1.0)) == (3.0, 10.0)

    def test_flow_backed_one_time(self):
        op = EvolutionOp(
            name="cuberoot-flow-op",
            kind="one_time",
            dim=1,
            flow=cuberoot_ode_system(),
            flow_steps=400,
        )
        got = op.apply_one(1.0, (1.0,))[0]
        assert got == pytest.approx((3.0 + 1.0) ** (1.0 / 3.0), rel=1e-9)
        assert op.apply_one(0.0, (1.7,)) == (1.7,)


class TestGlsClosedForm:
    def test_slice_value(self):
        assert gls_two_time(0.0, 1.0, 2.0) == 6.0

    def test_two_step_value(self):
        assert gls_two_time(1.0, 4.0, 6.0) == pytest.approx(10.0, rel=1e-14)

    def test_self_evolution_is_identity(self):
        assert gls_two_time(1.0, 1.0, 6.0) == pytest.approx(6.0, rel=1e-14)

    def test_ystar_examples(self):
        assert ystar_branch(1.0, 6.0) == pytest.approx(2.0, rel=1e-14)
        assert ystar_branch(1.0, 0.0) == 0.0
        assert ystar_branch(1e-12, 3.0) == pytest.approx(3.0, abs=1e-5)

    def test_negative_radicand_rejected(self):
        with pytest.raises(EvalDomainError):
            gls_two_time(1.0, 1.0, -1.0)

    def test_negative_times_rejected(self):
        with pytest.raises(EvalDomainError):
            gls_two_time(-1.0, 1.0, 0.5)
        with pytest.raises(EvalDomainError):
            gls_two_time(1.0, -1.0, 0.5)

    def test_inverse_identities_on_branch(self):
        # E(t,s) inverts E(s,t) while the bounded branch survives
        for t, s, y in ((1.0, 4.0, 2.0), (0.25, 2.25, 1.5), (2.0, 0.5, 0.3)):
            mid = gls_two_time(s, t, y)
            assert gls_two_time(t, s, mid) == pytest.approx(y, rel=1e-10)

    @given(
        st.floats(0.0, 4.0, allow_nan=False),
        st.floats(-0.2, 5.0, allow_nan=False),
    )
    @settings(max_examples=200)
    def test_ystar_solves_slice_equation(self, t, y):
        assume(1.0 + 4.0 * math.sqrt(t) * y >= 1e-6)
        z = ystar_branch(t, y)
        assert abs(z + math.sqrt(t) * z * z - y) <= 1e-12 * (1.0 + abs(y))

    @given(
        st.floats(0.0, 1.0, allow_nan=False),
        st.floats(0.0, 1.0, allow_nan=False),
        st.floats(0.0, 1.0, allow_nan=False),
        st.floats(-0.2, 4.0, allow_nan=False),
    )
    @settings(max_examples=200)
    def test_one_time_law_pointwise(self, t, s, r, y):
        op = gls_one_time_op()
        assume(op.valid_one(s, (t, y)))
        mid = op.apply_one(s, (t, y))
        assume(op.valid_one(r, mid))
        lhs = op.apply_one(r, mid)
        rhs = op.apply_one(s + r, (t, y))
        scale = 1.0 + max(abs(v) for v in rhs)
        assert all(abs(a - b) <= 1e-11 * scale for a, b in zip(lhs, rhs))


class TestOperatorLaws:
    def test_first_component_exact(self):
        grid = SamplingGrid((Axis(0.0, 2.0, 5), Axis(0.0, 2.0, 5), Axis(-5.0, 5.0, 9)))
        rep = first_component_check(quadratic_one_time_op(), grid, 1e-12)
        assert rep.passed and rep.max_deviation == 0.0

    def test_quadratic_two_time_law(self):
        times = (0.0, 1.0, 2.0, 3.0)
        triples = [(t, s, r) for t in times for s in times for r in times]
        rep = two_time_law_check(quadratic_two_time_op(), triples, grid1d(-5.0, 5.0, 21), 1e-12)
        assert rep.passed

    def test_gls_one_time_law(self):
        pairs = [(s / 4.0, r / 4.0) for s in range(5) for r in range(5)]
        rep = one_time_law_check(
            gls_one_time_op(), pairs, grid2d(0.0, 1.0, 5, -0.2, 4.0, 41), 1e-9
        )
        assert rep.passed and rep.skipped == 0

    def test_gls_two_time_law_with_inverses(self):
        vals = (0.25, 1.0, 2.25)
        triples = [(t, s, r) for t in vals for s in vals for r in vals]
        rep = two_time_law_check(gls_two_time_op(), triples, grid1d(-0.1, 2.0, 22), 1e-9)
        assert rep.passed

    def test_beyond_fold_points_are_skipped_not_wrong(self):
        # y* < 0 with a large target time flips the bounded branch; the
        # operator's guard must exclude such inverse legs instead of
        # reporting a bogus deviation
        rep = two_time_law_check(
            gls_two_time_op(), [(0.25, 4.0, 0.25)], grid1d(-0.9, -0.5, 5), 1e-9
        )
        assert rep.passed or rep.inconclusive

    def test_non_extendability_of_the_evolution(self):
        # E_A(s) with s > 0 has no left inverse: two states on the t=0 slice
        # share an image, and first components only ever move forward
        op = gls_one_time_op()
        s = 1.0
        a = op.apply_one(s, (0.0, 0.0))
        b = op.apply_one(s, (0.0, -1.0))
        assert abs(a[0] - b[0]) <= 1e-15 and abs(a[1] - b[1]) <= 1e-12
        for u in (0.0, 0.5, 2.0):
            assert op.apply_one(u, a)[0] >= a[0]


class TestRecovery:
    def test_quadratic_example(self):
        assert recover_evolution(quadratic_slice, 1.0, 2.0, 3.0) == pytest.approx(6.0, abs=1e-12)

    def test_identity_when_times_equal(self):
        for t, y in ((1.0, 3.0), (2.5, -4.0)):
            assert recover_evolution(quadratic_slice, t, t, y) == pytest.approx(y, abs=1e-12)

    def test_quadratic_grid_against_closed_form(self):
        for t in (0.0, 0.5, 1.5, 3.0):
            for s in (0.0, 1.0, 2.0, 3.0):
                for y in (-5.0, -0.5, 0.0, 2.0, 5.0):
                    got = recover_evolution(quadratic_slice, t, s, y)
                    assert got == pytest.approx(s * s - t * t + y, rel=1e-9, abs=1e-9)

    def test_gls_slice_selects_bounded_branch(self):
        res = recover_evolution_detailed(gls_slice, 1.0, 4.0, 6.0)
        assert len(res.roots) == 2
        assert res.ystar == pytest.approx(2.0, abs=1e-10)
        assert res.value == pytest.approx(10.0, rel=1e-10)
        assert any("continuation" in n for n in res.notes)

    def test_matches_two_time_closed_form(self):
        import random

        rng = random.Random(7)
        for _ in range(100):
            t = rng.uniform(0.05, 2.0)
            s = rng.uniform(0.0, 2.0)
            y = rng.uniform(-0.9 / (4.0 * math.sqrt(t)), 4.0)
            got = recover_evolution(gls_slice, t, s, y)
            want = gls_two_time(t, s, y)
            assert abs(got - want) <= 1e-9 * (1.0 + abs(want))

    def test_no_root_in_range_raises(self):
        with pytest.raises(RootSearchError):
            recover_evolution(gls_slice, 1.0, 2.0, -0.3)  # z + z^2 = -0.3 has no real root

    def test_recovery_from_a_nonzero_origin_slice(self):
        # the slice tau -> E(1, tau)(z) = tau^2 - 1 + z carries the same
        # information as the zero-origin one
        slice_from_one = lambda tau, z: tau * tau - 1.0 + z  # noqa: E731
        settings = RecoverySettings(t0=1.0)
        for t, s, y in ((2.0, 3.0, 0.5), (0.5, 2.5, -1.0), (1.0, 1.0, 4.0)):
            got = recover_evolution(slice_from_one, t, s, y, settings)
            assert got == pytest.approx(s * s - t * t + y, abs=1e-9)

    def test_condition_number_blows_up_at_fold(self):
        # roots coalesce at the fold y = -1/4: resolving them needs a scan
        # finer than their separation, and the condition number records the
        # nearly-double root
        fine = RecoverySettings(search_lo=-2.0, search_hi=2.0, scan_points=2001)
        near = recover_evolution_detailed(gls_slice, 1.0, 1.0, -0.2499, fine)
        far = recover_evolution_detailed(gls_slice, 1.0, 1.0, 2.0, fine)
        assert near.condition > 10.0 > far.condition
        assert len(near.roots) == 2


class TestFlowVsClosedForm:
    def test_sqrt_action_from_singular_start(self):
        rep = flow_vs_closed_form(
            sqrt_action(), sqrt_ode_system("minus"), 1.0, 1.0,
            eps_start=1e-8, steps=20_000, tol=1e-5,
        )
        assert rep.passed
        assert rep.grid.endswith("eps_start=1e-08")

    def test_cuberoot_flow(self):
        rep = flow_vs_closed_form(
            cuberoot_group_action(), cuberoot_ode_system(), 1.0, 1.0,
            eps_start=0.0, steps=2_000, tol=1e-6,
        )
        assert rep.passed

    def test_constant_action_zero_rhs(self):
        still = SmoothMap(("t", "y"), func=lambda t, y: (y,), out_dim=1, name="still")
        from semiflow.actions import TimeAction

        action = TimeAction("still", 1, "nonneg", "t", ("y",), still)
        sys0 = OdeSystem("flat", "autonomous", 1, map_from_exprs(("y",), ["0"]))
        rep = flow_vs_closed_form(action, sys0, 4.2, 1.0, 0.0, 10, 1e-15)
        assert rep.passed and rep.max_deviation == 0.0
