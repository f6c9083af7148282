"""Named verification suites: the package's acceptance surface.

Every suite returns a list of VerificationReports with pinned default
tolerances; the CLI runs them by name and the acceptance tests assert on
them directly. All randomness is seeded through SuiteConfig.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .actions import (
    TimeAction,
    composition_check,
    dichotomy_classify,
    identity_check,
    noninvertibility_witness_sqrt,
)
from .enforcing import (
    bump_map,
    cuberoot_group_action,
    diffeo_time_set,
    diffeo_classifier,
    homotopy_action,
    milder_action,
    milder_branch_for,
    ode_residual_explicit,
    ode_residual_homotopy,
    ode_residual_milder,
    sqrt_action,
    sqrt_branch_for,
    sqrt_mediator,
    square_map,
)
from .evolution_pde import (
    burgers_residual,
    burgers_soliton,
    heat_flow_demo,
    param_flow_check,
    soliton_param_flow,
    soliton_translation_check,
)
from .expr import EvalDomainError, diff, evaluate, parse_expr, to_text
from .grids import Axis, SamplingGrid, grid1d, grid2d
from .maps import SmoothMap, finite_diff, identity_map, scalar_map
from .reduction import (
    OdeSystem,
    first_component_check,
    flow_vs_closed_form,
    gls_one_time_op,
    gls_slice,
    gls_time_action,
    gls_two_time,
    gls_two_time_op,
    one_time_law_check,
    quadratic_one_time_op,
    quadratic_slice,
    quadratic_two_time_op,
    recover_evolution,
    two_time_law_check,
)
from .report import VerificationReport, Witness
from .semisym import (
    VALUE_MAPS,
    WAVE_PROFILES,
    canonical_parametric,
    is_graph,
    pde_from_text,
    rotation_map,
    semi_symmetry_check,
    translation_wave,
    vertical_map,
)


@dataclass
class SuiteConfig:
    seed: int = 42
    tolerances: dict[str, float] = field(default_factory=dict)
    grids: dict[str, Axis] = field(default_factory=dict)
    expressions: dict[str, str] = field(default_factory=dict)

    def tol(self, name: str, default: float) -> float:
        return float(self.tolerances.get(name, default))

    def axis(self, name: str, default: Axis) -> Axis:
        return self.grids.get(name, default)


# expressions exercised by the symbolic-engine suite and available to demos;
# each entry is (text, sampling box per free variable)
EXPRESSION_CATALOG: dict[str, tuple[str, dict[str, tuple[float, float]]]] = {
    "sqrt-action": ("y + sqrt(t)*y^2", {"t": (0.01, 9.0), "y": (-3.0, 3.0)}),
    "milder-action": ("y + t*y^2", {"t": (-2.0, 2.0), "y": (-3.0, 3.0)}),
    "cuberoot-flow": ("cbrt(3*t + y^3)", {"t": (0.1, 2.0), "y": (0.5, 3.0)}),
    "bump": ("1/(y^2 + 1)", {"y": (-3.0, 3.0)}),
    "bump-homotopy": ("(1 - sqrt(t))*y + sqrt(t)/(y^2 + 1)", {"t": (0.01, 4.0), "y": (-3.0, 3.0)}),
    "heat-kernel": ("exp(-x^2/(4*t))/sqrt(t)", {"t": (0.5, 2.0), "x": (-3.0, 3.0)}),
    "soliton": (
        "1 - sqrt(2)*tanh(sqrt(2)*(x - 1*t))",
        {"t": (0.0, 1.0), "x": (-5.0, 5.0)},
    ),
    "quadratic-evolution": ("s^2 + 2*s*t + y", {"s": (0.0, 2.0), "t": (0.0, 2.0), "y": (-5.0, 5.0)}),
    "gls-two-time": (
        "2*y/(1 + sqrt(1 + 4*sqrt(t)*y)) + sqrt(s)*4*y^2/(1 + sqrt(1 + 4*sqrt(t)*y))^2",
        {"t": (0.1, 2.0), "s": (0.1, 2.0), "y": (0.0, 3.0)},
    ),
    "wave-sin": ("sin(t + x)", {"t": (0.0, 1.0), "x": (0.0, 1.0)}),
    "log-blend": ("log(1 + exp(x)) + cos(2*x)", {"x": (-2.0, 2.0)}),
    "tanh-chain": ("tanh(a*x)", {"a": (0.5, 2.0), "x": (-3.0, 3.0)}),
}


def sqrt_ode_system(branch: str = "minus") -> OdeSystem:
    """The explicit branch ODE solved by the square-root action, as a system."""
    sign = "-" if branch == "minus" else "+"
    return OdeSystem(
        name=f"sqrt-ode-{branch}",
        kind="nonautonomous",
        dim=1,
        rhs=scalar_map(
            ("t", "y"),
            f"(1 + 2*sqrt(t)*y {sign} sqrt(1 + 4*sqrt(t)*y))/(4*t*sqrt(t))",
            name=f"sqrt-rhs-{branch}",
        ),
        validity=lambda t, y: t > 0.0 and 1.0 + 4.0 * math.sqrt(t) * y[0] >= 0.0,
    )


def cuberoot_ode_system() -> OdeSystem:
    return OdeSystem(
        name="cuberoot-ode",
        kind="autonomous",
        dim=1,
        rhs=scalar_map(("y",), "1/y^2", name="inverse-square"),
        validity=lambda t, y: y[0] != 0.0,
    )


def homotopy_family() -> list[tuple[str, SmoothMap]]:
    return [
        ("square", square_map()),
        ("bump", bump_map()),
        ("identity", identity_map(("y",))),
    ]


def _bool_report(suite: str, ok: bool, detail: str, witnesses: list[Witness] | None = None) -> VerificationReport:
    return VerificationReport(
        suite=suite,
        passed=ok,
        max_deviation=0.0 if ok else 1.0,
        tolerance=0.5,
        notes=(detail,),
        witnesses=witnesses or [],
    )


# ---------------------------------------------------------------------------
# suites 1..13


def suite_gls_semigroup(config: SuiteConfig) -> list[VerificationReport]:
    tol = config.tol("law", 1e-9)
    times = [k / 4.0 for k in range(5)]
    grid = SamplingGrid((config.axis("t", Axis(0.0, 1.0, 5)), config.axis("y", Axis(-0.2, 4.0, 41))))
    pairs = [(s, r) for s in times for r in times]
    return [one_time_law_check(gls_one_time_op(), pairs, grid, tol)]


def suite_identity_axiom(config: SuiteConfig) -> list[VerificationReport]:
    tol = config.tol("identity", 1e-12)
    line = grid1d(-3.0, 3.0, 101)
    reports = [
        identity_check(sqrt_action(), line, tol),
        identity_check(milder_action(), line, tol),
        identity_check(cuberoot_group_action(), line, tol),
    ]
    for _, f in homotopy_family():
        reports.append(identity_check(homotopy_action(f, sqrt_mediator()), line, tol))
    reports.append(
        identity_check(gls_time_action(), grid2d(0.0, 1.0, 5, -0.2, 4.0, 41), tol)
    )
    return reports


def suite_noninvertibility(config: SuiteConfig) -> list[VerificationReport]:
    tol = config.tol("collision", 1e-12)
    action = sqrt_action()
    devs = []
    witnesses = []
    for t in (0.25, 1.0, 4.0):
        y1, y2 = noninvertibility_witness_sqrt(t)
        v1, v2 = action.call1(t, y1), action.call1(t, y2)
        devs.append(abs(v1 - v2))
        witnesses.append(Witness((t, y1, y2), (v1, v2)))
    reports = [
        VerificationReport.from_deviations(
            "sqrt-witness-collision", devs, tol, "t in {0.25, 1, 4}", witnesses
        )
    ]
    gls = dichotomy_classify(
        gls_time_action(),
        [0.25, 1.0, 4.0],
        grid2d(0.0, 1.0, 3, -2.0, 2.0, 41),
        config.tol("dichotomy", 1e-9),
        composition_times=[(0.25, 0.25), (0.25, 0.5), (0.5, 0.5)],
    )
    reports.append(
        _bool_report(
            "dichotomy[sqrt-gls-evolution]",
            gls.classification == "genuine_semigroup",
            f"classified {gls.classification} (expected genuine_semigroup)",
            [w for s in gls.samples for w in s.witnesses[:1]],
        )
    )
    cube = dichotomy_classify(
        cuberoot_group_action(),
        [0.5, 1.0, 2.0],
        grid1d(-3.0, 3.0, 22),
        config.tol("dichotomy", 1e-9),
    )
    reports.append(
        _bool_report(
            "dichotomy[cuberoot-action]",
            cube.classification == "group_like",
            f"classified {cube.classification} (expected group_like)",
        )
    )
    return reports


def suite_ode_residuals(config: SuiteConfig) -> list[VerificationReport]:
    tol_explicit = config.tol("explicit", 1e-10)
    tol_homotopy = config.tol("homotopy", 1e-9)
    tol_milder = config.tol("milder", 1e-10)
    reports = []

    grid = SamplingGrid((config.axis("t", Axis(1e-3, 10.0, 50)), config.axis("y", Axis(-5.0, 5.0, 50))))
    devs = []
    skipped = 0
    for t, y in grid.points():
        try:
            devs.append(ode_residual_explicit(t, y, sqrt_branch_for(t, y)))
        except EvalDomainError:
            skipped += 1
    reports.append(
        VerificationReport.from_deviations(
            "ode-residual[sqrt-branches]", devs, tol_explicit, grid.summary(), skipped=skipped
        )
    )

    med = sqrt_mediator()
    hgrid = grid2d(1e-3, 10.0, 25, -5.0, 5.0, 21)
    for name, f in (("square", square_map()), ("bump", bump_map())):
        hdevs = [ode_residual_homotopy(f, med, t, y) for t, y in hgrid.points()]
        reports.append(
            VerificationReport.from_deviations(
                f"ode-residual[homotopy-{name}]", hdevs, tol_homotopy, hgrid.summary()
            )
        )

    mgrid = grid2d(-2.0, 2.0, 41, -3.0, 3.0, 41)
    mdevs = []
    mskip = 0
    for t, y in mgrid.points():
        branch = milder_branch_for(t, y)
        if branch.name == "singular" and t == 0.0:
            mskip += 1
            continue
        mdevs.append(ode_residual_milder(t, y, branch))
    reports.append(
        VerificationReport.from_deviations(
            "ode-residual[milder-branches]", mdevs, tol_milder, mgrid.summary(), skipped=mskip
        )
    )
    return reports


def suite_flow_oracle(config: SuiteConfig) -> list[VerificationReport]:
    rep_sqrt = flow_vs_closed_form(
        sqrt_action(),
        sqrt_ode_system("minus"),
        1.0,
        1.0,
        eps_start=1e-8,
        steps=100_000,
        tol=config.tol("sqrt_flow", 1e-5),
    )
    rep_cbrt = flow_vs_closed_form(
        cuberoot_group_action(),
        cuberoot_ode_system(),
        1.0,
        1.0,
        eps_start=0.0,
        steps=2_000,
        tol=config.tol("cuberoot_flow", 1e-6),
    )
    return [rep_sqrt, rep_cbrt]


def suite_reduction_algebra(config: SuiteConfig) -> list[VerificationReport]:
    tol = config.tol("algebra", 1e-12)
    tol_rec = config.tol("recovery", 1e-9)
    fc_grid = SamplingGrid((Axis(0.0, 2.0, 5), Axis(0.0, 2.0, 5), Axis(-5.0, 5.0, 9)))
    reports = [
        first_component_check(quadratic_one_time_op(), fc_grid, tol),
        first_component_check(
            gls_one_time_op(), SamplingGrid((Axis(0.0, 1.0, 5), Axis(0.0, 1.0, 5), Axis(-0.2, 4.0, 9))), tol
        ),
    ]
    times = (0.0, 1.0, 2.0, 3.0)
    triples = [(t, s, r) for t in times for s in times for r in times]
    reports.append(
        two_time_law_check(quadratic_two_time_op(), triples, grid1d(-5.0, 5.0, 21), tol)
    )
    qp = [(s, r) for s in times for r in times]
    reports.append(
        one_time_law_check(quadratic_one_time_op(), qp, grid2d(0.0, 3.0, 4, -5.0, 5.0, 11), tol)
    )
    gls_times = (0.25, 1.0, 2.25)
    gls_triples = [(t, s, r) for t in gls_times for s in gls_times for r in gls_times]
    reports.append(
        two_time_law_check(
            gls_two_time_op(), gls_triples, grid1d(-0.1, 2.0, 22), config.tol("gls_law", 1e-9)
        )
    )
    devs = []
    witnesses = []
    for t in (0.0, 0.5, 1.0, 2.0, 3.0):
        for s in (0.0, 0.5, 1.0, 2.0, 3.0):
            for y in (-5.0, -1.0, 0.0, 2.0, 5.0):
                got = recover_evolution(quadratic_slice, t, s, y)
                want = s * s - t * t + y
                devs.append(abs(got - want) / (1.0 + abs(want)))
                if devs[-1] > tol_rec:
                    witnesses.append(Witness((t, s, y), (got, want)))
    reports.append(
        VerificationReport.from_deviations(
            "recovery[quadratic]", devs, tol_rec, "t,s in {0..3}, y in {-5..5}", witnesses
        )
    )
    return reports


def suite_recovery_cross_check(config: SuiteConfig) -> list[VerificationReport]:
    tol = config.tol("recovery", 1e-9)
    rng = random.Random(config.seed)
    devs = []
    witnesses = []
    for _ in range(100):
        t = rng.uniform(0.05, 2.0)
        s = rng.uniform(0.0, 2.0)
        y_min = -0.9 / (4.0 * math.sqrt(t))
        y = rng.uniform(y_min, 4.0)
        got = recover_evolution(gls_slice, t, s, y)
        want = gls_two_time(t, s, y)
        devs.append(abs(got - want) / (1.0 + abs(want)))
        if devs[-1] > tol:
            witnesses.append(Witness((t, s, y), (got, want)))
    return [
        VerificationReport.from_deviations(
            "recovery-vs-closed-form[sqrt-gls]",
            devs,
            tol,
            f"100 random valid (t,s,y), seed={config.seed}",
            witnesses,
        )
    ]


def suite_semi_symmetry(config: SuiteConfig) -> list[VerificationReport]:
    """Vertical value maps against a solution corpus of U_t = U_x.

    Scenario expressions may declare a different equation:
    residual = "D(U,t) - D(U,x)", unknown = "U", vars = "t,x".
    """
    tol = config.tol("residual", 1e-12)
    residual = config.expressions.get("residual", "D(U,t) - D(U,x)")
    unknown = config.expressions.get("unknown", "U")
    variables = tuple(v.strip() for v in config.expressions.get("vars", "t,x").split(","))
    pde = pde_from_text(residual, unknown, variables)
    family = [translation_wave(profile) for profile in WAVE_PROFILES.values()]
    grid = grid2d(0.0, 1.0, 21, 0.0, 1.0, 21)
    return [
        semi_symmetry_check(pde, vertical_map(g_text, variables), family, grid, tol)
        for g_text in VALUE_MAPS.values()
    ]


def suite_parametric_graph(config: SuiteConfig) -> list[VerificationReport]:
    parabola = canonical_parametric(scalar_map(("x",), "x^2", name="parabola"))
    grid = grid1d(-2.0, 2.0, 401)
    from .semisym import act

    tilted_ok, tilted_wit = is_graph(act(rotation_map(math.pi / 4.0), parabola), grid)
    half_turn_ok, _ = is_graph(act(rotation_map(math.pi), parabola), grid)
    base_ok, _ = is_graph(parabola, grid)
    return [
        _bool_report(
            "rotated-parabola[pi/4]",
            (not tilted_ok) and tilted_wit is not None,
            "quarter-turn rotation must break the graph property and return a witness",
            [tilted_wit] if tilted_wit else [],
        ),
        _bool_report(
            "rotated-parabola[pi]",
            half_turn_ok and base_ok,
            "half-turn rotation keeps the graph property",
        ),
    ]


def suite_burgers(config: SuiteConfig) -> list[VerificationReport]:
    tol_res = config.tol("residual", 1e-8)
    tol_alg = config.tol("algebra", 1e-12)
    rng = random.Random(config.seed)
    grid = grid2d(0.0, 1.0, 5, -5.0, 5.0, 11)
    devs = []
    witnesses = []
    for _ in range(20):
        c = rng.uniform(-2.0, 2.0)
        d = rng.uniform(max(-c * c + 0.1, -2.0), 2.0)
        mu = rng.uniform(0.1, 1.0)
        x0 = rng.uniform(-2.0, 2.0)
        r = burgers_residual(burgers_soliton(x0, c, d, mu), mu, grid)
        devs.append(r)
        if r > tol_res:
            witnesses.append(Witness((x0, c, d, mu), (r,)))
    reports = [
        VerificationReport.from_deviations(
            "burgers-soliton-residual",
            devs,
            tol_res,
            f"20 random parameter tuples, seed={config.seed}",
            witnesses,
        )
    ]
    flow = soliton_param_flow()
    reports.append(
        soliton_translation_check(
            flow,
            burgers_soliton,
            SamplingGrid(
                (
                    Axis(0.0, 2.0, 3),
                    Axis(-5.0, 5.0, 7),
                    Axis(-1.0, 1.0, 3),
                    Axis(-2.0, 2.0, 3),
                    Axis(-1.0, 2.0, 3),
                    Axis(0.25, 1.0, 2),
                )
            ),
            tol_alg,
        )
    )
    reports.append(
        param_flow_check(
            flow,
            SamplingGrid(
                (
                    Axis(0.0, 2.0, 4),
                    Axis(0.0, 2.0, 4),
                    Axis(-3.0, 3.0, 5),
                    Axis(-2.0, 2.0, 5),
                    Axis(0.5, 2.0, 3),
                )
            ),
            tol_alg,
        )
    )
    # for frozen (c,d) the position flow a -> a + c*t is itself a verified
    # one-parameter action; the dichotomy reports it invertible throughout
    c, d = 0.8, 0.5
    position = TimeAction(
        "soliton-position-flow",
        1,
        "nonneg",
        "t",
        ("a",),
        SmoothMap(
            ("t", "a"),
            func=lambda t, a, _c=c: (flow.move(t, a, (_c, d))[0],),
            out_dim=1,
        ),
    )
    verdict = dichotomy_classify(position, [0.5, 1.0, 2.0], grid1d(-3.0, 3.0, 21), tol_alg)
    reports.append(
        _bool_report(
            "dichotomy[soliton-position-flow]",
            verdict.classification == "group_like",
            f"classified {verdict.classification}: every frozen-parameter advance is an "
            "invertible translation, so this induced flow is NOT a genuine semigroup",
        )
    )
    return reports


def suite_diffeo_thresholds(config: SuiteConfig) -> list[VerificationReport]:
    tol = config.tol("threshold", 1e-4)
    action = homotopy_action(bump_map(), sqrt_mediator())
    y_grid = grid1d(-3.0, 3.0, 121)
    report = diffeo_time_set(action, grid1d(0.05, 10.0, 41), y_grid)
    slope_peak = 3.0 * math.sqrt(3.0) / 8.0  # extremum of |d(1/(y^2+1))/dy| at y = 1/sqrt(3)
    want_lo = (1.0 / (1.0 + slope_peak)) ** 2
    want_hi = (1.0 / (1.0 - slope_peak)) ** 2
    got = sorted(report.thresholds)
    ok = len(got) == 2 and abs(got[0] - want_lo) <= tol and abs(got[1] - want_hi) <= tol
    probe = diffeo_classifier(action, y_grid)
    spot_ok = probe.is_diffeo(0.1) and (not probe.is_diffeo(1.0)) and probe.is_diffeo(10.0)
    notes = (
        f"computed diffeomorphism time set: [0, {got[0]:.6f}) U ({got[-1]:.6f}, inf)"
        if len(got) == 2
        else f"computed thresholds: {got!r}",
        f"slope extremum 3*sqrt(3)/8 = {slope_peak:.6f} at y = 1/sqrt(3) gives "
        f"thresholds {want_lo:.6f} and {want_hi:.6f}",
        "commonly quoted interval [0, 4/9) U (4, inf) corresponds to bounding the "
        "slope by |f'(1)| = 1/2 instead of the true extremum; both shown, neither "
        "silently adopted",
        f"spot classification: diffeo at t=0.1 and t=10, not at t=1 -> {spot_ok}",
    )
    dev = max(abs(got[0] - want_lo), abs(got[-1] - want_hi)) if len(got) == 2 else 1.0
    return [
        VerificationReport(
            suite="diffeo-thresholds[bump-homotopy]",
            passed=ok and spot_ok,
            max_deviation=dev,
            tolerance=tol,
            grid=f"t {report.entries[0][0]:g}..{report.entries[-1][0]:g}, y {y_grid.summary()}",
            notes=notes,
        )
    ]


def suite_negative_control(config: SuiteConfig) -> list[VerificationReport]:
    comp = composition_check(sqrt_action(), [(1.0, 1.0)], grid1d(0.5, 1.5, 5), 1e-9)
    action = sqrt_action()
    lhs = action.call1(1.0, action.call1(1.0, 1.0))
    rhs = action.call1(2.0, 1.0)
    point_dev = abs(lhs - rhs) / (1.0 + abs(rhs))
    ok = (not comp.passed) and point_dev > 0.1
    reports = [
        _bool_report(
            "negative-control[raw-sqrt-action]",
            ok,
            "the raw singular action must FAIL the composition law "
            f"(H(1,H(1,1))={lhs:.6f} vs H(2,1)={rhs:.6f}, normalized gap {point_dev:.3f} > 0.1); "
            "the semigroup only appears one dimension up",
            list(comp.witnesses[:2]),
        )
    ]
    homotopy = homotopy_action(square_map(), sqrt_mediator())
    comp_h = composition_check(homotopy, [(1.0, 1.0)], grid1d(1.5, 3.0, 7), 1e-9)
    reports.append(
        _bool_report(
            "negative-control[raw-homotopy-action]",
            not comp_h.passed,
            "the raw identity-to-f deformation must FAIL the composition law too "
            f"(max normalized gap {comp_h.max_deviation:.3f})",
        )
    )
    return reports


def suite_symbolic_engine(config: SuiteConfig) -> list[VerificationReport]:
    rng = random.Random(config.seed)
    rel_tol = config.tol("derivative", 1e-6)
    catalog = list(EXPRESSION_CATALOG.items())
    devs = []
    witnesses = []
    cases = 0
    while cases < 100:
        name, (text, box) = catalog[cases % len(catalog)]
        expr = parse_expr(text)
        variables = sorted(box)
        point = {v: rng.uniform(*box[v]) for v in variables}
        var = variables[cases % len(variables)]
        m = SmoothMap(tuple(variables), (expr,), name=name)
        exact = evaluate(diff(expr, var), point)
        approx = finite_diff(m, [point[v] for v in variables], var, 1e-5)
        dev = abs(exact - approx) / (1.0 + abs(exact))
        devs.append(dev)
        if dev > rel_tol:
            witnesses.append(Witness(tuple(point.values()), (exact, approx), f"{name} d/d{var}"))
        cases += 1
    reports = [
        VerificationReport.from_deviations(
            "derivative-vs-central-difference",
            devs,
            rel_tol,
            f"100 randomized cases over {len(catalog)} registered expressions, seed={config.seed}",
            witnesses,
        )
    ]
    bad = [
        name
        for name, (text, _) in EXPRESSION_CATALOG.items()
        if parse_expr(to_text(parse_expr(text))) != parse_expr(text)
    ]
    reports.append(
        _bool_report(
            "parser-round-trip",
            not bad,
            f"print-then-parse must reproduce every registered expression; failures: {bad!r}",
        )
    )
    return reports


def suite_heat_flow(config: SuiteConfig) -> list[VerificationReport]:
    return [heat_flow_demo(grid2d(0.5, 2.0, 16, -3.0, 3.0, 21), config.tol("residual", 1e-10))]


SUITES: dict[str, Callable[[SuiteConfig], list[VerificationReport]]] = {
    "gls-semigroup": suite_gls_semigroup,
    "identity-axiom": suite_identity_axiom,
    "noninvertibility": suite_noninvertibility,
    "ode-residuals": suite_ode_residuals,
    "flow-oracle": suite_flow_oracle,
    "reduction-algebra": suite_reduction_algebra,
    "recovery-cross-check": suite_recovery_cross_check,
    "semi-symmetry": suite_semi_symmetry,
    "parametric-graph": suite_parametric_graph,
    "burgers": suite_burgers,
    "diffeo-thresholds": suite_diffeo_thresholds,
    "negative-control": suite_negative_control,
    "symbolic-engine": suite_symbolic_engine,
    "heat-flow": suite_heat_flow,
}


def run_suites(names: Sequence[str], config: SuiteConfig) -> dict[str, list[VerificationReport]]:
    out: dict[str, list[VerificationReport]] = {}
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite '{name}'; known: {', '.join(sorted(SUITES))}")
        out[name] = SUITES[name](config)
    return out
