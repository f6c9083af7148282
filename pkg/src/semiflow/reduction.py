"""Non-autonomous -> autonomous reduction and evolution-operator algebra.

A non-autonomous system dY/dt = F(t, Y) on R^l is equivalent to the
autonomous system on R^{l+1} obtained by adjoining time as a state
coordinate with derivative 1. Its one-time evolution operator E_A(s)
then packages the full two-time operator: the first component is t + s
and the second is E(t, t+s), so the two-time algebra
E(s,r)∘E(t,s) = E(t,r) becomes the one-parameter law
E_A(r)∘E_A(s) = E_A(s+r) one dimension up.

For the square-root action y + sqrt(t)*y^2 the two-time operator has the
closed form E(t,s)(y) = y* + sqrt(s)*y*^2 with
y* = 2y/(1 + sqrt(1 + 4*sqrt(t)*y)), the root branch that stays bounded
as t -> 0+. Restricted to times >= 0, E_A is a semigroup whose members
are non-invertible for every s > 0: the promised genuine-semigroup
structure lives one dimension up from the original state space.

Also here: a classical fixed-step RK4 flow (optionally on a geometric
mesh for ODEs singular at the starting time), verification of the
operator laws, and recovery of the full two-time operator from a single
fixed-origin slice by scalar root finding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .actions import TimeAction
from .expr import Const, EvalDomainError, compile_expr
from .grids import SamplingGrid
from .maps import SmoothMap
from .report import VerificationReport, Witness, deviation
from .rootfind import (
    RootSearchError,
    hybrid_root,
    newton,
    numeric_derivative,
    scan_brackets,
)


class IntegrationError(Exception):
    def __init__(self, message: str, time: float):
        super().__init__(f"{message} (at t={time!r})")
        self.time = time


@dataclass(frozen=True)
class OdeSystem:
    """Explicit first-order system; the RHS takes (t, y...) or just (y...)."""

    name: str
    kind: str  # "autonomous" | "nonautonomous"
    dim: int
    rhs: SmoothMap
    validity: Callable[[float, tuple[float, ...]], bool] | None = None

    def __post_init__(self):
        if self.kind not in ("autonomous", "nonautonomous"):
            raise ValueError("kind must be 'autonomous' or 'nonautonomous'")
        want = self.dim if self.kind == "autonomous" else self.dim + 1
        if self.rhs.in_dim != want or self.rhs.out_dim != self.dim:
            raise ValueError(
                f"{self.kind} RHS must be R^{want} -> R^{self.dim}; got "
                f"{self.rhs.in_dim} -> {self.rhs.out_dim}"
            )

    def valid_at(self, t: float, y: Sequence[float]) -> bool:
        return self.validity is None or self.validity(t, tuple(y))


def augment_system(sys: OdeSystem) -> OdeSystem:
    """Adjoin time as the first state coordinate with derivative 1."""
    if sys.kind != "nonautonomous":
        raise ValueError("only non-autonomous systems are augmented")
    if sys.rhs.is_symbolic:
        rhs = SmoothMap(
            sys.rhs.inputs,
            (Const(1.0), *sys.rhs.outputs),
            name=f"augmented[{sys.name}]",
        )
    else:
        rhs = SmoothMap(
            sys.rhs.inputs,
            func=lambda *args: (1.0, *sys.rhs.func(*args)),
            out_dim=sys.dim + 1,
            name=f"augmented[{sys.name}]",
        )
    validity = None
    if sys.validity is not None:
        validity = lambda _t, state: sys.validity(state[0], state[1:])  # noqa: E731
    return OdeSystem(
        name=f"augmented[{sys.name}]",
        kind="autonomous",
        dim=sys.dim + 1,
        rhs=rhs,
        validity=validity,
    )


@dataclass
class Trajectory:
    """Ordered (time, state) samples from one integration run."""

    times: list[float]
    states: list[tuple[float, ...]]
    steps: int
    eps_start: float
    spacing: str

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("trajectory times must increase strictly")

    @property
    def dim(self) -> int:
        return len(self.states[0])

    def final(self) -> tuple[float, ...]:
        return self.states[-1]

    def to_csv(self) -> str:
        header = "t," + ",".join(f"y{i + 1}" for i in range(self.dim))
        lines = [header]
        for t, y in zip(self.times, self.states):
            lines.append(",".join(f"{v:.17g}" for v in (t, *y)))
        return "\n".join(lines) + "\n"

    def write_csv(self, path: str) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(self.to_csv())


def _time_mesh(a: float, b: float, steps: int, spacing: str) -> list[float]:
    if spacing == "uniform":
        mesh = [a + (b - a) * k / steps for k in range(steps + 1)]
    elif spacing == "geometric":
        if not 0.0 < a < b:
            raise ValueError("geometric spacing needs 0 < start < end")
        ratio = b / a
        mesh = [a * ratio ** (k / steps) for k in range(steps + 1)]
    else:
        raise ValueError(f"unknown spacing {spacing!r}")
    mesh[-1] = b
    return mesh


def integrate_flow(
    sys: OdeSystem,
    t_start: float,
    y0: Sequence[float],
    t_end: float,
    steps: int,
    eps_start: float = 0.0,
    spacing: str = "uniform",
) -> Trajectory:
    """Classical fixed-step RK4 from t_start (+ eps_start) to t_end.

    For systems singular at t_start, pass eps_start > 0 and supply y0
    already moved to t_start + eps_start (e.g. through a known closed
    form); spacing="geometric" grades the fixed step count toward the
    singular end; the mesh is predetermined, never adaptive.
    """
    if steps < 1:
        raise ValueError("need at least one step")
    a = t_start + eps_start
    if t_end <= a:
        raise ValueError("integration runs forward: t_end must exceed the start")
    if not sys.valid_at(a, y0):
        raise IntegrationError("RHS invalid at the starting point", a)
    mesh = _time_mesh(a, t_end, steps, spacing)
    if sys.dim == 1:
        return _integrate_scalar(sys, mesh, float(y0[0]), steps, eps_start, spacing)

    if sys.rhs.is_symbolic:
        comps = tuple(compile_expr(c, sys.rhs.inputs) for c in sys.rhs.outputs)
        if sys.kind == "autonomous":
            def f(t: float, y: tuple) -> tuple:
                return tuple(c(*y) for c in comps)
        else:
            def f(t: float, y: tuple) -> tuple:
                return tuple(c(t, *y) for c in comps)
    else:
        raw = sys.rhs.func
        if sys.kind == "autonomous":
            def f(t: float, y: tuple) -> tuple:
                return tuple(raw(*y))
        else:
            def f(t: float, y: tuple) -> tuple:
                return tuple(raw(t, *y))

    y = tuple(float(v) for v in y0)
    times = [mesh[0]]
    states = [y]
    for k in range(steps):
        t0, t1 = mesh[k], mesh[k + 1]
        h = t1 - t0
        tm = t0 + 0.5 * h
        try:
            k1 = f(t0, y)
            k2 = f(tm, tuple(v + 0.5 * h * d for v, d in zip(y, k1)))
            k3 = f(tm, tuple(v + 0.5 * h * d for v, d in zip(y, k2)))
            k4 = f(t1, tuple(v + h * d for v, d in zip(y, k3)))
        except (EvalDomainError, ZeroDivisionError) as err:
            raise IntegrationError(f"RHS domain error: {err}", t0) from err
        y = tuple(
            v + (h / 6.0) * (a1 + 2.0 * (a2 + a3) + a4)
            for v, a1, a2, a3, a4 in zip(y, k1, k2, k3, k4)
        )
        if not all(math.isfinite(v) for v in y):
            raise IntegrationError("state became nonfinite", t1)
        if not sys.valid_at(t1, y):
            raise IntegrationError("state left the validity region", t1)
        times.append(t1)
        states.append(y)
    return Trajectory(times, states, steps, eps_start, spacing)


def _integrate_scalar(
    sys: OdeSystem, mesh: list[float], y: float, steps: int, eps_start: float, spacing: str
) -> Trajectory:
    # unboxed RK4 for 1-D systems: the long singular runs live here
    if sys.rhs.is_symbolic:
        body = compile_expr(sys.rhs.outputs[0], sys.rhs.inputs)
        if sys.kind == "autonomous":
            f = lambda t, v: body(v)  # noqa: E731
        else:
            f = body
    else:
        raw = sys.rhs.func
        if sys.kind == "autonomous":
            f = lambda t, v: raw(v)[0]  # noqa: E731
        else:
            f = lambda t, v: raw(t, v)[0]  # noqa: E731
    times = [mesh[0]]
    states = [(y,)]
    isfinite = math.isfinite
    validity = sys.validity
    for k in range(steps):
        t0 = mesh[k]
        t1 = mesh[k + 1]
        h = t1 - t0
        tm = t0 + 0.5 * h
        try:
            k1 = f(t0, y)
            k2 = f(tm, y + 0.5 * h * k1)
            k3 = f(tm, y + 0.5 * h * k2)
            k4 = f(t1, y + h * k3)
        except (EvalDomainError, ZeroDivisionError) as err:
            raise IntegrationError(f"RHS domain error: {err}", t0) from err
        y = y + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        if not isfinite(y):
            raise IntegrationError("state became nonfinite", t1)
        if validity is not None and not validity(t1, (y,)):
            raise IntegrationError("state left the validity region", t1)
        times.append(t1)
        states.append((y,))
    return Trajectory(times, states, steps, eps_start, spacing)


# ---------------------------------------------------------------------------
# evolution operators


@dataclass(frozen=True)
class EvolutionOp:
    """One-time E(s) (autonomous) or two-time E(t0, t1) (non-autonomous) operator.

    Backed by a closed-form SmoothMap with inputs (s, x...) or (t0, t1, x...),
    or by numerically flowing an OdeSystem. Closed forms are the definition
    wherever present; numeric flows serve as independent oracles.
    """

    name: str
    kind: str  # "one_time" | "two_time"
    dim: int
    closed_form: SmoothMap | None = None
    flow: OdeSystem | None = None
    flow_steps: int = 400
    time_domain: str = "full"  # "nonneg": times outside [0, inf) are domain errors
    validity: Callable[..., bool] | None = None
    inverse_domain: Callable[..., bool] | None = None

    def __post_init__(self):
        if self.kind not in ("one_time", "two_time"):
            raise ValueError("kind must be 'one_time' or 'two_time'")
        if (self.closed_form is None) == (self.flow is None):
            raise ValueError("need exactly one backing: closed_form or flow")

    def _check_time(self, *ts: float) -> None:
        if self.time_domain == "nonneg" and any(t < 0.0 for t in ts):
            raise EvalDomainError(
                f"time arguments {ts!r} outside the operator's domain [0, inf)"
            )

    def apply_one(self, s: float, x: Sequence[float]) -> tuple[float, ...]:
        if self.kind != "one_time":
            raise ValueError("not a one-time operator")
        self._check_time(s)
        if self.closed_form is not None:
            return self.closed_form(s, *x)
        if s == 0.0:
            return tuple(float(v) for v in x)
        return integrate_flow(self.flow, 0.0, x, s, self.flow_steps).final()

    def apply_two(self, t0: float, t1: float, x: Sequence[float]) -> tuple[float, ...]:
        if self.kind != "two_time":
            raise ValueError("not a two-time operator")
        self._check_time(t0, t1)
        if self.closed_form is not None:
            return self.closed_form(t0, t1, *x)
        if t0 == t1:
            return tuple(float(v) for v in x)
        return integrate_flow(self.flow, t0, x, t1, self.flow_steps).final()

    def valid_one(self, s: float, x: Sequence[float]) -> bool:
        if self.time_domain == "nonneg" and s < 0.0:
            return False
        return self.validity is None or self.validity(s, tuple(x))

    def valid_two(self, t0: float, t1: float, x: Sequence[float]) -> bool:
        if self.time_domain == "nonneg" and (t0 < 0.0 or t1 < 0.0):
            return False
        return self.validity is None or self.validity(t0, t1, tuple(x))


def as_time_action(op: EvolutionOp, state_names: Sequence[str] | None = None) -> TimeAction:
    """View a one-time operator as a TimeAction so the axiom checks apply."""
    if op.kind != "one_time":
        raise ValueError("only one-time operators act as one-parameter families")
    names = tuple(state_names or (f"x{i + 1}" for i in range(op.dim)))
    return TimeAction(
        name=op.name,
        dim=op.dim,
        time_domain="nonneg" if op.time_domain == "nonneg" else "full",
        time_var="s",
        state_vars=names,
        map=SmoothMap(
            ("s", *names),
            func=lambda s, *x: op.apply_one(s, x),
            out_dim=op.dim,
            name=op.name,
        ),
        validity=lambda s, x: op.valid_one(s, x),
    )


# ---------------------------------------------------------------------------
# the square-root genuine-semigroup evolution, in closed form


def ystar_branch(t: float, y: float) -> float:
    """The root of z + sqrt(t)*z^2 = y that stays bounded (-> y) as t -> 0+."""
    if t < 0.0:
        raise EvalDomainError("ystar needs t >= 0")
    st = math.sqrt(t)
    radicand = 1.0 + 4.0 * st * y
    if radicand < 0.0:
        if radicand < -1e-9 * (1.0 + abs(4.0 * st * y)):
            raise EvalDomainError(f"negative radicand {radicand!r}")
        radicand = 0.0  # rounding at the fold boundary
    return 2.0 * y / (1.0 + math.sqrt(radicand))


def gls_two_time(t: float, s: float, y: float) -> float:
    """E(t,s)(y) = y* + sqrt(s)*y*^2 with y* = ystar_branch(t, y).

    Defined for t, s >= 0 and 1 + 4*sqrt(t)*y >= 0; at t=0 it reduces to
    the slice E(0,s)(y) = y + sqrt(s)*y^2.
    """
    if s < 0.0:
        raise EvalDomainError("gls_two_time needs s >= 0")
    ys = ystar_branch(t, y)
    return ys + math.sqrt(s) * ys * ys


def gls_slice(t: float, z: float) -> float:
    """The fixed-origin slice E(0,t)(z) = z + sqrt(t)*z^2."""
    if t < 0.0:
        raise EvalDomainError("slice needs t >= 0")
    return z + math.sqrt(t) * z * z


def _gls_valid_state(t: float, y: float) -> bool:
    return t >= 0.0 and 1.0 + 4.0 * math.sqrt(t) * y >= -1e-12


def _gls_branch_ok(s: float, t: float, y: float) -> bool:
    """Applying E(t, t+s) stays on the bounded root branch.

    Past this fold the one-parameter law genuinely fails (the slice map is
    non-injective and the bounded root at time t+s recovers a different
    trajectory), so law checks must treat such points as outside the
    action's validity region.
    """
    try:
        return 1.0 + 2.0 * math.sqrt(t + s) * ystar_branch(t, y) >= 0.0
    except EvalDomainError:
        return False


def gls_two_time_op() -> EvolutionOp:
    def guard(a: float, b: float, x: tuple[float, ...]) -> bool:
        # the bounded root at time max(a,b) must recover the same branch
        try:
            return 1.0 + 2.0 * math.sqrt(max(a, b)) * ystar_branch(a, x[0]) >= 0.0
        except EvalDomainError:
            return False

    return EvolutionOp(
        name="sqrt-gls-two-time",
        kind="two_time",
        dim=1,
        closed_form=SmoothMap(
            ("t0", "t1", "y"),
            func=lambda t0, t1, y: (gls_two_time(t0, t1, y),),
            out_dim=1,
            name="sqrt-gls-two-time",
        ),
        time_domain="nonneg",
        validity=lambda t0, t1, x: _gls_valid_state(t0, x[0]),
        inverse_domain=guard,
    )


def gls_one_time_op() -> EvolutionOp:
    """The autonomous operator one dimension up: E_A(s)(t,y) = (t+s, E(t,t+s)(y))."""
    return EvolutionOp(
        name="sqrt-gls-evolution",
        kind="one_time",
        dim=2,
        closed_form=SmoothMap(
            ("s", "t", "y"),
            func=lambda s, t, y: (t + s, gls_two_time(t, t + s, y)),
            out_dim=2,
            name="sqrt-gls-evolution",
        ),
        time_domain="nonneg",
        validity=lambda s, x: _gls_valid_state(x[0], x[1]) and _gls_branch_ok(s, x[0], x[1]),
    )


def gls_time_action() -> TimeAction:
    return as_time_action(gls_one_time_op(), ("t", "y"))


# ---------------------------------------------------------------------------
# the quadratic worked example dY/dt = 2t


def quadratic_system() -> OdeSystem:
    from .maps import map_from_exprs

    return OdeSystem(
        name="quadratic",
        kind="nonautonomous",
        dim=1,
        rhs=map_from_exprs(("t", "y"), ["2*t"], name="quadratic-rhs"),
    )


def quadratic_two_time_op() -> EvolutionOp:
    return EvolutionOp(
        name="quadratic-two-time",
        kind="two_time",
        dim=1,
        closed_form=SmoothMap(
            ("t0", "t1", "y"),
            func=lambda t0, t1, y: (t1 * t1 - t0 * t0 + y,),
            out_dim=1,
            name="quadratic-two-time",
        ),
    )


def quadratic_one_time_op() -> EvolutionOp:
    return EvolutionOp(
        name="quadratic-evolution",
        kind="one_time",
        dim=2,
        closed_form=SmoothMap(
            ("s", "t", "y"),
            func=lambda s, t, y: (t + s, s * s + 2.0 * s * t + y),
            out_dim=2,
            name="quadratic-evolution",
        ),
    )


def quadratic_slice(t: float, z: float) -> float:
    """E(0,t)(z) = t^2 + z for the quadratic example."""
    return t * t + z


# ---------------------------------------------------------------------------
# operator-law verification


def first_component_check(op: EvolutionOp, grid: SamplingGrid, tol: float) -> VerificationReport:
    """First output of an augmented one-time operator must be exactly t + s.

    Grid axes: (s, t, y1..yl).
    """
    devs = []
    witnesses = []
    skipped = 0
    for point in grid.points():
        s, t, y = point[0], point[1], point[2:]
        if not op.valid_one(s, (t, *y)):
            skipped += 1
            continue
        try:
            out = op.apply_one(s, (t, *y))
        except EvalDomainError:
            skipped += 1
            continue
        d = abs(out[0] - (t + s)) / (1.0 + abs(t + s))
        devs.append(d)
        if d > tol:
            witnesses.append(Witness(point, out))
    return VerificationReport.from_deviations(
        f"first-component[{op.name}]", devs, tol, grid.summary(), witnesses, skipped
    )


def one_time_law_check(
    op: EvolutionOp,
    pairs: Sequence[tuple[float, float]],
    grid: SamplingGrid,
    tol: float,
) -> VerificationReport:
    """Max gap of E(r)(E(s)(x)) against E(s+r)(x) over the state grid."""
    devs = []
    witnesses = []
    skipped = 0
    for s, r in pairs:
        for x in grid.points():
            if not op.valid_one(s, x):
                skipped += 1
                continue
            try:
                mid = op.apply_one(s, x)
                if not op.valid_one(r, mid):
                    skipped += 1
                    continue
                lhs = op.apply_one(r, mid)
                rhs = op.apply_one(s + r, x)
            except EvalDomainError:
                skipped += 1
                continue
            d = deviation(lhs, rhs)
            devs.append(d)
            if d > tol and len(witnesses) < 8:
                witnesses.append(Witness((s, r, *x), (*lhs, *rhs)))
    total = len(devs) + skipped
    return VerificationReport.from_deviations(
        f"one-time-law[{op.name}]",
        devs,
        tol,
        grid.summary(),
        witnesses,
        skipped,
        inconclusive=total > 0 and skipped > 0.5 * total,
    )


def two_time_law_check(
    op: EvolutionOp,
    triples: Sequence[tuple[float, float, float]],
    grid: SamplingGrid,
    tol: float,
    check_inverses: bool = True,
) -> VerificationReport:
    """Max gap of E(s,r)(E(t,s)(y)) against E(t,r)(y), plus the inverse
    identities E(t,s)∘E(s,t) = id = E(s,t)∘E(t,s) wherever both orders
    stay inside the operator's (branch-)domain."""
    devs = []
    witnesses = []
    skipped = 0

    def try_leg(a: float, b: float, x: tuple) -> tuple | None:
        if not op.valid_two(a, b, x):
            return None
        try:
            return op.apply_two(a, b, x)
        except EvalDomainError:
            return None

    for t, s, r in triples:
        for x in grid.points():
            mid = try_leg(t, s, x)
            out = None if mid is None else try_leg(s, r, mid)
            ref = try_leg(t, r, x)
            if out is None or ref is None:
                skipped += 1
            else:
                d = deviation(out, ref)
                devs.append(d)
                if d > tol and len(witnesses) < 8:
                    witnesses.append(Witness((t, s, r, *x), (*out, *ref)))
    if check_inverses:
        seen = set()
        for t, s, _ in triples:
            if (t, s) in seen or t == s:
                continue
            seen.add((t, s))
            for x in grid.points():
                for a, b in ((t, s), (s, t)):
                    if op.inverse_domain is not None and not op.inverse_domain(a, b, tuple(x)):
                        skipped += 1
                        continue
                    fwd = try_leg(a, b, x)
                    back = None if fwd is None else try_leg(b, a, fwd)
                    if back is None:
                        skipped += 1
                        continue
                    d = deviation(back, x)
                    devs.append(d)
                    if d > tol and len(witnesses) < 8:
                        witnesses.append(Witness((a, b, *x), (*back,), "inverse identity"))
    total = len(devs) + skipped
    return VerificationReport.from_deviations(
        f"two-time-law[{op.name}]",
        devs,
        tol,
        grid.summary(),
        witnesses,
        skipped,
        inconclusive=total > 0 and skipped > 0.5 * total,
    )


# ---------------------------------------------------------------------------
# recovering the two-time operator from one slice


@dataclass(frozen=True)
class RecoverySettings:
    t0: float = 0.0
    search_lo: float = -50.0
    search_hi: float = 50.0
    scan_points: int = 256
    root_tol: float = 1e-12
    continuation_steps: int = 16


@dataclass
class RecoveryResult:
    value: float
    ystar: float
    roots: list[float]
    brackets: list[tuple[float, float]]
    condition: float
    notes: tuple[str, ...] = ()


def _continuation_root(
    slice_map: Callable[[float, float], float],
    t0: float,
    t: float,
    y: float,
    steps: int,
    dslice: Callable[[float, float], float] | None,
) -> float:
    """Track the root of slice(tau, z) = y from tau=t0 (where z=y) to tau=t."""
    z = y
    for k in range(1, steps + 1):
        tau = t0 + (t - t0) * k / steps
        g = lambda w: slice_map(tau, w) - y  # noqa: E731
        dg = (lambda w: dslice(tau, w)) if dslice is not None else numeric_derivative(g)
        nxt = newton(g, dg, z)
        if nxt is not None:
            z = nxt
    return z


def recover_evolution_detailed(
    slice_map: Callable[[float, float], float],
    t: float,
    s: float,
    y: float,
    settings: RecoverySettings = RecoverySettings(),
    dslice: Callable[[float, float], float] | None = None,
) -> RecoveryResult:
    """E(t,s)(y) from the single slice tau -> E(t0, tau), by root finding.

    Solves slice(t, y*) = y (bisection on scanned brackets, Newton polish),
    then returns slice(s, y*). With several roots the one continuous in t
    with limit y at t0 is chosen, located by continuation from the slice
    origin. The condition number 1/|d slice/dz| is reported; it blows up
    at the fold where the root becomes double.
    """
    g = lambda z: slice_map(t, z) - y  # noqa: E731
    brackets = scan_brackets(g, settings.search_lo, settings.search_hi, settings.scan_points)
    if not brackets:
        raise RootSearchError(
            f"no sign change for the slice equation in "
            f"[{settings.search_lo!r}, {settings.search_hi!r}]"
        )
    dg = (lambda z: dslice(t, z)) if dslice is not None else None
    roots: list[float] = []
    for a, b in brackets:
        r = hybrid_root(g, a, b, df=dg, tol=settings.root_tol)
        if not any(abs(r - q) <= 1e-9 * (1.0 + abs(q)) for q in roots):
            roots.append(r)
    notes: tuple[str, ...] = ()
    if len(roots) > 1:
        guide = _continuation_root(
            slice_map, settings.t0, t, y, settings.continuation_steps, dslice
        )
        chosen = min(roots, key=lambda r: abs(r - guide))
        notes = (f"{len(roots)} roots; continuation from t0={settings.t0:g} selected the bounded branch",)
    else:
        chosen = roots[0]
    dval = (dg or numeric_derivative(g))(chosen)
    condition = math.inf if dval == 0.0 else 1.0 / abs(dval)
    return RecoveryResult(
        value=slice_map(s, chosen),
        ystar=chosen,
        roots=roots,
        brackets=brackets,
        condition=condition,
        notes=notes,
    )


def recover_evolution(
    slice_map: Callable[[float, float], float],
    t: float,
    s: float,
    y: float,
    settings: RecoverySettings = RecoverySettings(),
    dslice: Callable[[float, float], float] | None = None,
) -> float:
    return recover_evolution_detailed(slice_map, t, s, y, settings, dslice).value


# ---------------------------------------------------------------------------
# flow-vs-closed-form oracle


def flow_vs_closed_form(
    action: TimeAction,
    sys: OdeSystem,
    y0: Sequence[float] | float,
    t_end: float,
    eps_start: float,
    steps: int,
    tol: float,
    spacing: str = "auto",
) -> VerificationReport:
    """Integrate the ODE and compare every sample against the closed form.

    The starting state is the action's own value at eps_start, realizing
    the limit-type initial condition numerically.
    """
    ys = (y0,) if isinstance(y0, (int, float)) else tuple(y0)
    if spacing == "auto":
        spacing = "geometric" if eps_start > 0.0 else "uniform"
    start_state = action(eps_start if eps_start > 0.0 else 0.0, ys)
    traj = integrate_flow(sys, 0.0, start_state, t_end, steps, eps_start, spacing)
    if action.map.is_symbolic:
        comps = tuple(
            compile_expr(c, action.map.inputs) for c in action.map.outputs
        )
        reference = lambda tau: tuple(c(tau, *ys) for c in comps)  # noqa: E731
    else:
        reference = lambda tau: action(tau, ys)  # noqa: E731
    devs = []
    max_dev = -1.0
    worst: Witness | None = None
    for tau, state in zip(traj.times, traj.states):
        ref = reference(tau)
        d = deviation(state, ref)
        if d > max_dev:
            max_dev = d
            worst = Witness((tau,), (*state, *ref))
        devs.append(d)
    report = VerificationReport.from_deviations(
        f"flow-vs-closed-form[{action.name}]",
        devs,
        tol,
        f"{traj.steps} steps, {traj.spacing} mesh, eps_start={eps_start:g}",
        [worst] if worst is not None and max(devs) > tol else [],
    )
    return report
