"""Parametric charts, graph recovery, PDE residuals, semi-symmetries."""

from __future__ import annotations

import math

import pytest

from semiflow.actions import PreconditionError
from semiflow.expr import EvalDomainError, ExprError
from semiflow.grids import grid1d, grid2d
from semiflow.maps import compose, identity_map, scalar_map
from semiflow.semisym import (
    VALUE_MAPS,
    WAVE_PROFILES,
    act,
    canonical_parametric,
    constrained_symmetry_scan,
    is_graph,
    pde_from_text,
    regraph,
    residual_max,
    rotation_map,
    rotation_xu_map,
    scaling_action,
    semi_symmetry_check,
    strip_predicate,
    translation_wave,
    value_shift_action,
    vertical_map,
)


class TestCanonicalParametric:
    def test_parabola_chart(self):
        V = canonical_parametric(scalar_map(("x",), "x^2"))
        assert V.params == ("x",) and V.base_dim == 1
        base, value = V.sample((3.0,))
        assert base == (3.0,) and value == 9.0

    def test_zero_function(self):
        V = canonical_parametric(scalar_map(("x",), "0"))
        assert V.sample((1.7,)) == ((1.7,), 0.0)

    def test_wave_chart(self):
        V = canonical_parametric(translation_wave("sin(z)"))
        base, value = V.sample((0.25, 0.5))
        assert base == (0.25, 0.5)
        assert value == pytest.approx(math.sin(0.75), rel=1e-15)

    def test_needs_single_output(self):
        with pytest.raises(ExprError):
            canonical_parametric(identity_map(("x", "y")))


class TestAct:
    def test_identity_action_is_structural_identity(self):
        V = canonical_parametric(scalar_map(("x",), "x^2"))
        W = act(identity_map(("x", "u")), V)
        assert W.chart.outputs == V.chart.outputs

    def test_vertical_on_wave_is_composition(self):
        V = canonical_parametric(translation_wave("sin(z)"))
        f = vertical_map("u^3 - u", ("t", "x"))
        W = act(f, V)
        t, x = 0.3, 0.8
        h = math.sin(t + x)
        _, value = W.sample((t, x))
        assert value == pytest.approx(h**3 - h, abs=1e-15)

    def test_arity_mismatch(self):
        V = canonical_parametric(scalar_map(("x",), "x^2"))
        with pytest.raises(ExprError):
            act(rotation_xu_map(0.5), V)

    def test_functoriality_on_grid(self):
        V = canonical_parametric(scalar_map(("x",), "x^2"))
        f = rotation_map(0.7)
        h = rotation_map(-0.2)
        lhs = act(f, act(h, V))
        rhs = act(compose(f, h), V)
        for (lam,) in grid1d(-2.0, 2.0, 41).points():
            a = lhs.chart(lam)
            b = rhs.chart(lam)
            assert all(abs(x - y) <= 1e-12 for x, y in zip(a, b))


class TestIsGraph:
    def test_canonical_charts_are_graphs(self):
        for profile in WAVE_PROFILES.values():
            V = canonical_parametric(translation_wave(profile))
            ok, _ = is_graph(V, grid2d(0.0, 1.0, 15, 0.0, 1.0, 15))
            assert ok

    def test_quarter_turn_breaks_graph(self):
        V = canonical_parametric(scalar_map(("x",), "x^2"))
        ok, wit = is_graph(act(rotation_map(math.pi / 4.0), V), grid1d(-2.0, 2.0, 401))
        assert not ok and wit is not None
        # witness parameters straddle the turning point and share a base point
        lam1, lam2 = wit.point
        assert abs(wit.values[0] - wit.values[2]) <= 1e-9
        assert abs(wit.values[1] - wit.values[3]) > 1e-6

    def test_half_turn_keeps_graph(self):
        V = canonical_parametric(scalar_map(("x",), "x^2"))
        ok, _ = is_graph(act(rotation_map(math.pi), V), grid1d(-2.0, 2.0, 401))
        assert ok

    def test_vertical_maps_preserve_graphs(self):
        for profile in WAVE_PROFILES.values():
            V = canonical_parametric(translation_wave(profile))
            for g_text in VALUE_MAPS.values():
                W = act(vertical_map(g_text, ("t", "x")), V)
                ok, _ = is_graph(W, grid2d(0.0, 1.0, 11, 0.0, 1.0, 11))
                assert ok


class TestRegraph:
    def test_reconstructs_values(self):
        V = canonical_parametric(scalar_map(("x",), "x^2"))
        U = regraph(V, grid1d(-2.0, 2.0, 201))
        for x in (-1.7, -0.3, 0.0, 1.25):
            assert U(x)[0] == pytest.approx(x * x, abs=1e-3)

    def test_outside_range_is_domain_error(self):
        V = canonical_parametric(scalar_map(("x",), "x^2"))
        U = regraph(V, grid1d(-2.0, 2.0, 21))
        with pytest.raises(EvalDomainError):
            U(5.0)


class TestPdeResidual:
    def test_transport_solutions(self):
        pde = pde_from_text("D(U,t) - D(U,x)", "U", ("t", "x"))
        grid = grid2d(0.0, 1.0, 21, 0.0, 1.0, 21)
        assert residual_max(pde, translation_wave("sin(z)"), grid) <= 1e-14

    def test_non_solution_has_unit_residual(self):
        pde = pde_from_text("D(U,t) - D(U,x)", "U", ("t", "x"))
        grid = grid2d(0.0, 1.0, 5, 0.0, 1.0, 5)
        assert residual_max(pde, scalar_map(("t", "x"), "t"), grid) == pytest.approx(1.0)

    def test_second_order_markers(self):
        pde = pde_from_text("D(U,t) - D(U,x,x)", "U", ("t", "x"))
        grid = grid2d(0.5, 2.0, 9, -2.0, 2.0, 9)
        # U = x^2 + 2t solves the diffusion equation exactly
        assert residual_max(pde, scalar_map(("t", "x"), "x^2 + 2*t"), grid) <= 1e-14

    def test_template_validation(self):
        with pytest.raises(ExprError):
            pde_from_text("D(V,t)", "U", ("t", "x"))  # wrong unknown
        with pytest.raises(ExprError):
            pde_from_text("D(U,t,t,t)", "U", ("t", "x"))  # order 3
        with pytest.raises(ExprError):
            pde_from_text("D(U,q)", "U", ("t", "x"))  # undeclared variable
        with pytest.raises(ExprError):
            pde_from_text("D(U,t) - w", "U", ("t", "x"))  # stray symbol

    def test_variable_order_must_match(self):
        pde = pde_from_text("D(U,t) - D(U,x)", "U", ("t", "x"))
        with pytest.raises(ExprError):
            residual_max(pde, scalar_map(("x", "t"), "x + t"), grid2d(0, 1, 3, 0, 1, 3))

    def test_domain_error_reports_point(self):
        pde = pde_from_text("D(U,t) - D(U,x)", "U", ("t", "x"))
        bad = scalar_map(("t", "x"), "sqrt(t + x)")  # derivative singular at t+x=0
        with pytest.raises(EvalDomainError) as err:
            residual_max(pde, bad, grid2d(0.0, 1.0, 3, 0.0, 1.0, 3))
        assert "(0.0, 0.0)" in str(err.value)


class TestSemiSymmetry:
    def setup_method(self):
        self.pde = pde_from_text("D(U,t) - D(U,x)", "U", ("t", "x"))
        self.family = [translation_wave(p) for p in WAVE_PROFILES.values()]
        self.grid = grid2d(0.0, 1.0, 21, 0.0, 1.0, 21)

    def test_vertical_corpus_passes(self):
        for g_text in VALUE_MAPS.values():
            rep = semi_symmetry_check(
                self.pde, vertical_map(g_text, ("t", "x")), self.family, self.grid, 1e-12
            )
            assert rep.passed and rep.max_deviation <= 1e-12

    def test_identity_is_trivially_semi_symmetry(self):
        rep = semi_symmetry_check(
            self.pde, vertical_map("u", ("t", "x")), self.family, self.grid, 1e-12
        )
        assert rep.passed

    def test_rotation_reports_graph_failure(self):
        rep = semi_symmetry_check(
            self.pde, rotation_xu_map(math.pi / 4.0), self.family, self.grid, 1e-12
        )
        assert not rep.passed
        assert any("function category" in note for note in rep.notes)
        assert rep.witnesses

    def test_non_solution_member_is_precondition_error(self):
        with pytest.raises(PreconditionError):
            semi_symmetry_check(
                self.pde,
                vertical_map("u", ("t", "x")),
                [scalar_map(("t", "x"), "t")],
                self.grid,
                1e-12,
            )


class TestConstrainedScan:
    def test_scaling_strip(self):
        scan = constrained_symmetry_scan(
            scaling_action(),
            strip_predicate,
            grid1d(0.25, 1.5, 6),
            grid2d(-0.99, 0.99, 9, -2.0, 2.0, 5),
        )
        for g, ok, witness in scan.entries:
            assert ok == (g <= 1.0)
            assert (witness is None) == ok
        assert scan.invariant_params == [0.25, 0.5, 0.75, 1.0]

    def test_value_shift_constraint(self):
        scan = constrained_symmetry_scan(
            value_shift_action(),
            lambda p: p[1] > 0.0,
            grid1d(-2.0, 2.0, 5),
            grid2d(-1.0, 1.0, 3, 0.5, 3.0, 6),
        )
        for c, ok, _ in scan.entries:
            assert ok == (c >= 0.0)

    def test_identity_parameter_always_invariant(self):
        scan = constrained_symmetry_scan(
            scaling_action(), strip_predicate, grid1d(0.999999, 1.0, 2),
            grid2d(-0.9, 0.9, 5, -1.0, 1.0, 3),
        )
        assert all(ok for _, ok, _ in scan.entries)

    def test_empty_constraint_sample_rejected(self):
        with pytest.raises(ValueError):
            constrained_symmetry_scan(
                scaling_action(), lambda p: False, grid1d(0.5, 1.0, 2),
                grid2d(-1.0, 1.0, 3, -1.0, 1.0, 3),
            )
