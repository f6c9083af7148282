"""Concrete singular actions and the ODEs they satisfy.

The central example is the square-root action H(t,y) = y + sqrt(t)*y^2 on
t >= 0: it is the identity at t=0, non-injective for every t > 0, fails to
be C^1 at t=0, and as a function of t solves a pair of branch-selected
explicit ODEs that are singular at t=0 and therefore admit only the
limit-type initial condition lim_{t->0+} Y(t) = y.

The homotopy family H(t,y) = (1-g(t))*y + g(t)*f(y) deforms the identity
into an arbitrary smooth self-map f, mediated by a time reparametrization
g with g(0)=0, g(1)=1 and nonvanishing derivative; it satisfies an
implicit ODE from which both y and f(y) can be recovered pointwise.

Also here: the everywhere-smooth variant y + t*y^2 (milder singularity,
full time axis), the cube-root flow (3t + y^3)^(1/3) which *is* a group
action, and a per-time diffeomorphism classifier with threshold
refinement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .expr import (
    Const,
    EvalDomainError,
    Expr,
    Var,
    diff,
    evaluate,
    parse_expr,
)
from .grids import SamplingGrid
from .maps import SmoothMap, scalar_map
from .report import VerificationReport, Witness, deviation, max_norm
from .actions import TimeAction
from .rootfind import RootSearchError, bisect


class BranchMismatchError(Exception):
    """The requested ODE branch is not active at the given (t, y)."""


@dataclass(frozen=True)
class BranchSelector:
    """Which sign of the resolved radical applies, as a predicate on (t, y)."""

    name: str
    active: Callable[[float, float], bool]


def sqrt_plus_branch() -> BranchSelector:
    return BranchSelector("plus", lambda t, y: 1.0 + 2.0 * math.sqrt(t) * y <= 0.0)


def sqrt_minus_branch() -> BranchSelector:
    return BranchSelector("minus", lambda t, y: 1.0 + 2.0 * math.sqrt(t) * y >= 0.0)


def sqrt_branch_for(t: float, y: float) -> BranchSelector:
    return sqrt_minus_branch() if 1.0 + 2.0 * math.sqrt(t) * y >= 0.0 else sqrt_plus_branch()


def milder_regular_branch() -> BranchSelector:
    # active where the resolved ODE has no singularity at t=0
    return BranchSelector("regular", lambda t, y: 1.0 + 2.0 * t * y >= 0.0)


def milder_singular_branch() -> BranchSelector:
    return BranchSelector("singular", lambda t, y: 1.0 + 2.0 * t * y <= 0.0)


def milder_branch_for(t: float, y: float) -> BranchSelector:
    return milder_regular_branch() if 1.0 + 2.0 * t * y >= 0.0 else milder_singular_branch()


@dataclass(frozen=True)
class MediatorFunction:
    """Time reparametrization g with g(0)=0, g(1)=1 and g'(t) != 0 on (0, T]."""

    g: Expr
    var: str = "t"

    @property
    def dg(self) -> Expr:
        return diff(self.g, self.var)

    def value(self, t: float) -> float:
        return evaluate(self.g, {self.var: t})

    def slope(self, t: float) -> float:
        return evaluate(self.dg, {self.var: t})


def mediator(g: Expr | str, var: str = "t", horizon: float = 10.0) -> MediatorFunction:
    expr = parse_expr(g) if isinstance(g, str) else g
    med = MediatorFunction(expr, var)
    if abs(med.value(0.0)) > 1e-12 or abs(med.value(1.0) - 1.0) > 1e-12:
        raise ValueError(
            f"mediator must satisfy g(0)=0, g(1)=1; got g(0)={med.value(0.0)!r}, "
            f"g(1)={med.value(1.0)!r}"
        )
    last_sign = 0
    for k in range(1, 65):
        t = horizon * (k / 64.0) ** 2
        slope = med.slope(t)
        if slope == 0.0:
            raise ValueError(f"mediator derivative vanishes at t={t!r}")
        sign = 1 if slope > 0.0 else -1
        if last_sign and sign != last_sign:
            # a continuous derivative that changes sign vanishes in between
            raise ValueError(f"mediator derivative changes sign near t={t!r}")
        last_sign = sign
    return med


def sqrt_mediator() -> MediatorFunction:
    return mediator("sqrt(t)")


# ---------------------------------------------------------------------------
# the registered actions

_SQRT_EXPR = parse_expr("y + sqrt(t)*y^2")
_SQRT_DT = diff(_SQRT_EXPR, "t")  # y^2/(2*sqrt(t))
_MILDER_EXPR = parse_expr("y + t*y^2")
_MILDER_DT = diff(_MILDER_EXPR, "t")  # y^2


def sqrt_action() -> TimeAction:
    """H(t,y) = y + sqrt(t)*y^2 on t in [0, inf); not C^1 at t = 0."""
    return TimeAction(
        name="sqrt-action",
        dim=1,
        time_domain="nonneg",
        time_var="t",
        state_vars=("y",),
        map=SmoothMap(("t", "y"), (_SQRT_EXPR,), name="sqrt-action"),
    )


def milder_action() -> TimeAction:
    """H(t,y) = y + t*y^2, smooth on all of R x R yet never a diffeomorphism for t != 0."""
    return TimeAction(
        name="milder-action",
        dim=1,
        time_domain="full",
        time_var="t",
        state_vars=("y",),
        map=SmoothMap(("t", "y"), (_MILDER_EXPR,), name="milder-action"),
    )


def cuberoot_group_action() -> TimeAction:
    """Y(t) = (3t + y^3)^(1/3): the flow of dY/dt = 1/Y^2, a full group action."""
    return TimeAction(
        name="cuberoot-action",
        dim=1,
        time_domain="full",
        time_var="t",
        state_vars=("y",),
        map=SmoothMap(("t", "y"), (parse_expr("cbrt(3*t + y^3)"),), name="cuberoot-action"),
    )


def square_map() -> SmoothMap:
    return scalar_map(("y",), "y^2", name="square")


def bump_map() -> SmoothMap:
    return scalar_map(("y",), "1/(y^2 + 1)", name="bump")


def homotopy_action(f: SmoothMap, g: MediatorFunction) -> TimeAction:
    """H(t,y) = (1 - g(t))*y + g(t)*f(y): identity at t=0, exactly f at t=1."""
    if f.in_dim != f.out_dim:
        raise ValueError("homotopy target must have equal input/output arity")
    if not f.is_symbolic:
        raise ValueError("homotopy target must be expression-backed")
    if g.var in f.inputs:
        raise ValueError(f"mediator variable '{g.var}' collides with a state variable")
    one_minus_g = Const(1.0) - g.g
    outputs = tuple(
        one_minus_g * Var(y) + g.g * f_i for y, f_i in zip(f.inputs, f.outputs)
    )
    return TimeAction(
        name=f"homotopy[{f.name or 'f'}]",
        dim=f.in_dim,
        time_domain="nonneg",
        time_var=g.var,
        state_vars=f.inputs,
        map=SmoothMap((g.var, *f.inputs), outputs, name=f"homotopy[{f.name or 'f'}]"),
    )


def k_action_relation_check(grid: SamplingGrid, tol: float) -> VerificationReport:
    """H(t, .) equals the smooth two-sided family K(s,y) = y + s*y^2 at s = sqrt(t).

    K itself has no singularity, yet precomposing with sqrt(t) is what makes
    H fail to be C^1 at t = 0: the singularity lives in the time variable.
    """
    action = sqrt_action()
    devs = []
    witnesses = []
    for t, y in grid.points():
        if t < 0.0:
            raise ValueError("grid must satisfy t >= 0")
        s = math.sqrt(t)
        k_val = y + s * y * y
        h_val = action.call1(t, y)
        d = deviation((h_val,), (k_val,))
        devs.append(d)
        if d > tol:
            witnesses.append(Witness((t, y), (h_val, k_val)))
    return VerificationReport.from_deviations(
        "sqrt-action-vs-smooth-family", devs, tol, grid.summary(), witnesses
    )


# ---------------------------------------------------------------------------
# ODE residuals (time derivatives are exact symbolic values, so these are
# algebraic identities up to rounding; no step-size tuning involved)


def ode_residual_explicit(t: float, y: float, branch: BranchSelector) -> float:
    """Residual of dY/dt = (1 + 2*sqrt(t)*Y ± sqrt(1 + 4*sqrt(t)*Y))/(4*t*sqrt(t))
    along Y = H(t,y) of the square-root action, on the matching branch."""
    if t <= 0.0:
        raise EvalDomainError("the explicit branch ODEs are posed on t > 0")
    if not branch.active(t, y):
        raise BranchMismatchError(
            f"branch '{branch.name}' is not active at (t={t!r}, y={y!r})"
        )
    st = math.sqrt(t)
    h = y + st * y * y
    radicand = 1.0 + 4.0 * st * h
    if radicand < 0.0:
        raise EvalDomainError(f"negative radicand {radicand!r}")
    sign = 1.0 if branch.name == "plus" else -1.0
    rhs = (1.0 + 2.0 * st * h + sign * math.sqrt(radicand)) / (4.0 * t * st)
    lhs = evaluate(_SQRT_DT, {"t": t, "y": y})
    return abs(lhs - rhs)


def ode_residual_homotopy(
    f: SmoothMap, g: MediatorFunction, t: float, y: float | Sequence[float]
) -> float:
    """Residual of the implicit homotopy ODE
    (1-g)*dY/dt + g'*Y = g' * f((g'*Y - g*dY/dt)/g'), plus the pointwise
    recovery of y and f(y) from (Y, dY/dt)."""
    if t <= 0.0:
        raise EvalDomainError("the homotopy ODE is posed on t > 0")
    ys = (y,) if isinstance(y, (int, float)) else tuple(y)
    action = homotopy_action(f, g)
    gv = g.value(t)
    gp = g.slope(t)
    if gp == 0.0:
        raise EvalDomainError(f"mediator derivative vanishes at t={t!r}")
    bindings = {g.var: t, **dict(zip(f.inputs, ys))}
    h_val = [evaluate(c, bindings) for c in action.map.outputs]
    ht_val = [evaluate(diff(c, g.var), bindings) for c in action.map.outputs]
    arg = [(gp * h - gv * ht) / gp for h, ht in zip(h_val, ht_val)]
    f_at_arg = f.at(arg)
    f_at_y = f.at(ys)
    residual = 0.0
    for i in range(len(ys)):
        lhs = (1.0 - gv) * ht_val[i] + gp * h_val[i]
        rhs = gp * f_at_arg[i]
        residual = max(residual, abs(lhs - rhs))
        # recovered y and f(y) must match the originals
        residual = max(residual, abs(arg[i] - ys[i]))
        residual = max(residual, abs(lhs / gp - f_at_y[i]))
    return residual


def ode_residual_milder(t: float, y: float, branch: BranchSelector) -> float:
    """Residual of the two resolved ODEs for Y = y + t*y^2: the regular form
    2Y^2/(1 + 2tY + sqrt(1+4tY)) where 1+2ty >= 0, and the singular form
    (1 + 2tY + sqrt(1+4tY))/(2t^2) where 1+2ty <= 0 (t != 0)."""
    if not branch.active(t, y):
        raise BranchMismatchError(
            f"branch '{branch.name}' is not active at (t={t!r}, y={y!r})"
        )
    h = y + t * y * y
    radicand = 1.0 + 4.0 * t * h
    if radicand < 0.0:
        raise EvalDomainError(f"negative radicand {radicand!r}")
    root = math.sqrt(radicand)
    if branch.name == "regular":
        denom = 1.0 + 2.0 * t * h + root
        if denom == 0.0:
            raise EvalDomainError("vanishing denominator in the regular form")
        rhs = 2.0 * h * h / denom
    else:
        if t == 0.0:
            raise EvalDomainError("the singular form is undefined at t = 0")
        rhs = (1.0 + 2.0 * t * h + root) / (2.0 * t * t)
    lhs = evaluate(_MILDER_DT, {"t": t, "y": y})
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# the limit-type initial condition and the C^1 failure at t = 0


def limit_ic_check(
    action: TimeAction,
    y: Sequence[float] | float,
    eps_sequence: Sequence[float],
    tol: float,
) -> VerificationReport:
    """‖H(eps, y) - y‖ must shrink monotonically (up to rounding) to <= tol.

    This is the only initial condition the singular ODEs admit: they are
    undefined at t = 0, so the datum is prescribed as a one-sided limit.
    """
    ys = (y,) if isinstance(y, (int, float)) else tuple(y)
    eps = list(eps_sequence)
    if any(b >= a for a, b in zip(eps, eps[1:])) or eps[-1] >= 1e-8:
        raise ValueError("eps_sequence must decrease strictly to below 1e-8")
    if any(e <= 0.0 for e in eps):
        raise ValueError("eps_sequence must be positive")
    scale = 1.0 + max_norm(ys)
    devs = []
    for e in eps:
        devs.append(max_norm([a - b for a, b in zip(action(e, ys), ys)]) / scale)
    monotone = all(b <= a + 1e-12 for a, b in zip(devs, devs[1:]))
    witnesses = [Witness((e,), (d,)) for e, d in zip(eps, devs)]
    return VerificationReport(
        suite=f"limit-ic[{action.name}]",
        passed=monotone and devs[-1] <= tol,
        max_deviation=devs[-1],
        tolerance=tol,
        grid=f"eps {eps[0]:g}..{eps[-1]:g} ({len(eps)} values)",
        witnesses=witnesses,
        checked=len(eps),
        inconclusive=not monotone,
        notes=() if monotone else ("deviation sequence not monotone",),
    )


def one_sided_quotients(
    action: TimeAction, y: Sequence[float] | float, eps_sequence: Sequence[float]
) -> list[tuple[float, float]]:
    """(eps, ‖H(eps,y) - H(0,y)‖/eps) pairs; divergence as eps -> 0 is the
    evidence that the action is not C^1 at t = 0."""
    ys = (y,) if isinstance(y, (int, float)) else tuple(y)
    base = action(0.0, ys)
    out = []
    for e in eps_sequence:
        gap = max_norm([a - b for a, b in zip(action(e, ys), base)])
        out.append((e, gap / e))
    return out


# ---------------------------------------------------------------------------
# per-time diffeomorphism classification


@dataclass
class DiffeoTimeReport:
    entries: list[tuple[float, bool]]
    thresholds: list[float]
    notes: tuple[str, ...] = ()

    def diffeo_times(self) -> list[float]:
        return [t for t, ok in self.entries if ok]

    def to_dict(self) -> dict:
        return {
            "entries": [{"t": t, "diffeo": ok} for t, ok in self.entries],
            "thresholds": self.thresholds,
            "notes": list(self.notes),
        }


def _critical_points(second: Expr, t: float, y_pts: Sequence[float], t_var: str, y_var: str) -> list[float]:
    def f(y: float) -> float:
        return evaluate(second, {t_var: t, y_var: y})

    crits = []
    prev_y = prev_v = None
    for y in y_pts:
        try:
            v = f(y)
        except EvalDomainError:
            prev_y = prev_v = None
            continue
        if prev_v is not None and (prev_v < 0.0) != (v < 0.0):
            try:
                crits.append(bisect(f, prev_y, y, tol=1e-12))
            except (EvalDomainError, RootSearchError):
                pass
        prev_y, prev_v = y, v
    return crits


@dataclass(frozen=True)
class DiffeoClassifier:
    """Per-time diffeomorphism probe for a 1-D expression-backed action."""

    action: TimeAction
    y_grid: SamplingGrid
    growth_factor: float = 0.05

    def _pieces(self):
        t_var, y_var = self.action.time_var, self.action.state_vars[0]
        body = self.action.map.outputs[0]
        slope = diff(body, y_var)
        return t_var, y_var, slope, diff(slope, y_var)

    def slope_attains_zero(self, t: float) -> bool:
        """Does dH(t,.)/dy reach zero somewhere? The y-grid is extended by an
        extremum search: zeros of the second derivative are bisected and the
        slope re-evaluated there, so interior extrema cannot slip between
        grid nodes."""
        t_var, y_var, slope, second = self._pieces()
        y_pts = self.y_grid.axis_values()[0]
        candidates = []
        for y in list(y_pts) + _critical_points(second, t, y_pts, t_var, y_var):
            try:
                candidates.append(evaluate(slope, {t_var: t, y_var: y}))
            except EvalDomainError:
                continue
        if not candidates:
            return True  # nothing evaluable: cannot rule a zero out
        return min(candidates) <= 0.0 <= max(candidates)

    def growth_ok(self, t: float) -> bool:
        """Sampling proxy for surjectivity: |H| grows at the grid ends and
        the end values have opposite signs."""
        y_lo, y_hi = self.y_grid.axes[0].lo, self.y_grid.axes[0].hi
        try:
            m_lo = self.action.call1(t, y_lo)
            m_hi = self.action.call1(t, y_hi)
        except EvalDomainError:
            return False
        return (
            m_lo * m_hi < 0.0
            and abs(m_lo) >= self.growth_factor * max(1.0, abs(y_lo))
            and abs(m_hi) >= self.growth_factor * max(1.0, abs(y_hi))
        )

    def is_diffeo(self, t: float) -> bool:
        return (not self.slope_attains_zero(t)) and self.growth_ok(t)


def diffeo_classifier(action: TimeAction, y_grid: SamplingGrid) -> DiffeoClassifier:
    if action.dim != 1 or not action.map.is_symbolic:
        raise ValueError("classification needs a 1-D, expression-backed action")
    return DiffeoClassifier(action, y_grid)


def diffeo_time_set(
    action: TimeAction,
    t_grid: SamplingGrid,
    y_grid: SamplingGrid,
    threshold_tol: float = 1e-6,
    growth_factor: float = 0.05,
) -> DiffeoTimeReport:
    """Classify each sampled t: is H(t, .) a diffeomorphism of the line?

    Boundaries between classified regions are located by bisection on the
    slope-reaches-zero predicate to threshold_tol in t.
    """
    if action.dim != 1 or not action.map.is_symbolic:
        raise ValueError("classification needs a 1-D, expression-backed action")
    probe = DiffeoClassifier(action, y_grid, growth_factor)
    entries = []
    for (t,) in t_grid.points():
        entries.append((t, probe.is_diffeo(t)))

    thresholds = []
    for (t0, _), (t1, _) in zip(entries, entries[1:]):
        p0 = probe.slope_attains_zero(t0)
        if p0 == probe.slope_attains_zero(t1):
            continue
        lo, hi = t0, t1
        while hi - lo > threshold_tol:
            mid = 0.5 * (lo + hi)
            if probe.slope_attains_zero(mid) == p0:
                lo = mid
            else:
                hi = mid
        thresholds.append(0.5 * (lo + hi))
    return DiffeoTimeReport(entries, thresholds)
