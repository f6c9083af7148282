"""Candidate one-parameter actions and the semigroup axiom checks.

A TimeAction is a family H(t, .) of self-maps of an open state domain,
with t in [0, inf) or all of R. The checks here sample the defining
axioms (identity at t=0, the composition law, and (non-)invertibility
of the frozen maps) and aggregate them into the invertibility
dichotomy: a verified one-parameter semigroup with identity either
consists of invertible maps for every sampled t (group-like) or of
non-invertible ones for every sampled t > 0 (genuine semigroup); a
mixed outcome flags a modeling error rather than a mathematical
possibility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .expr import Const, EvalDomainError, ExprError, substitute_many
from .grids import SamplingGrid
from .maps import SmoothMap, finite_diff
from .report import VerificationReport, Witness, deviation
from .rootfind import RootSearchError, bisect, scan_brackets


class PreconditionError(Exception):
    """A check was invoked on input that fails its stated preconditions."""


@dataclass(frozen=True)
class TimeAction:
    """A parametrized family (t, y) -> H(t, y) acting on an l-dimensional state.

    The map is a SmoothMap in (time_var, *state_vars); `validity` restricts
    the usable region of (t, y) when the defining formula has a bounded
    domain (e.g. a radicand that must stay nonnegative).
    """

    name: str
    dim: int
    time_domain: str  # "nonneg" | "full"
    time_var: str
    state_vars: tuple[str, ...]
    map: SmoothMap
    validity: Callable[[float, tuple[float, ...]], bool] | None = None

    def __post_init__(self):
        if self.time_domain not in ("nonneg", "full"):
            raise ValueError("time_domain must be 'nonneg' or 'full'")
        if self.map.in_dim != 1 + self.dim or self.map.out_dim != self.dim:
            raise ExprError(
                f"action map must be R^{1 + self.dim} -> R^{self.dim}; got "
                f"{self.map.in_dim} -> {self.map.out_dim}"
            )

    def time_ok(self, t: float) -> bool:
        return self.time_domain == "full" or t >= 0.0

    def valid_at(self, t: float, y: Sequence[float]) -> bool:
        return self.time_ok(t) and (self.validity is None or self.validity(t, tuple(y)))

    def __call__(self, t: float, y: Sequence[float]) -> tuple[float, ...]:
        if not self.time_ok(t):
            raise EvalDomainError(f"time {t!r} outside the action's domain")
        return self.map(t, *y)

    def call1(self, t: float, y: float) -> float:
        if self.dim != 1:
            raise ExprError("call1 requires a 1-dimensional state")
        return self(t, (y,))[0]

    def frozen_map(self, t: float) -> SmoothMap:
        """The self-map H(t, .) with the time parameter fixed."""
        if self.map.is_symbolic:
            frozen = {self.time_var: Const(float(t))}
            return SmoothMap(
                self.state_vars,
                tuple(substitute_many(c, frozen) for c in self.map.outputs),
                name=f"{self.name}@t={t:g}",
            )
        return SmoothMap(
            self.state_vars,
            func=lambda *y, _t=float(t): self.map.func(_t, *y),
            out_dim=self.dim,
            name=f"{self.name}@t={t:g}",
        )


def identity_check(action: TimeAction, grid: SamplingGrid, tol: float) -> VerificationReport:
    """Max gap between H(0, y) and y over the grid.

    Grid points outside the action's validity region are skipped (the state
    domain need not be a box); evaluation failures inside it propagate.
    """
    devs = []
    witnesses = []
    skipped = 0
    for y in grid.points():
        if not action.valid_at(0.0, y):
            skipped += 1
            continue
        out = action(0.0, y)
        d = deviation(out, y)
        devs.append(d)
        if d > tol:
            witnesses.append(Witness(y, out, "H(0,y) != y"))
    return VerificationReport.from_deviations(
        f"identity[{action.name}]",
        devs,
        tol,
        grid.summary(),
        witnesses,
        skipped=skipped,
        inconclusive=not devs,
    )


def composition_check(
    action: TimeAction,
    times: Sequence[tuple[float, float]],
    grid: SamplingGrid,
    tol: float,
) -> VerificationReport:
    """Max gap between H(t, H(s, y)) and H(t+s, y).

    Grid points that leave the action's validity region at any stage are
    skipped and counted; a run with more than half its points skipped is
    reported inconclusive.
    """
    for t, s in times:
        for v in (t, s, t + s):
            if not action.time_ok(v):
                raise PreconditionError(f"time {v!r} outside the action's domain")
    devs = []
    witnesses = []
    skipped = 0
    total = 0
    for t, s in times:
        for y in grid.points():
            total += 1
            if not action.valid_at(s, y) or not action.valid_at(t + s, y):
                skipped += 1
                continue
            try:
                mid = action(s, y)
                if not action.valid_at(t, mid):
                    skipped += 1
                    continue
                lhs = action(t, mid)
                rhs = action(t + s, y)
            except EvalDomainError:
                skipped += 1
                continue
            d = deviation(lhs, rhs)
            devs.append(d)
            if d > tol and len(witnesses) < 8:
                witnesses.append(
                    Witness((t, s, *y), (*lhs, *rhs), "H(t,H(s,y)) != H(t+s,y)")
                )
    inconclusive = total > 0 and skipped > 0.5 * total
    return VerificationReport.from_deviations(
        f"composition[{action.name}]",
        devs,
        tol,
        grid.summary(),
        witnesses,
        skipped=skipped,
        inconclusive=inconclusive,
    )


# ---------------------------------------------------------------------------
# injectivity probing


@dataclass
class ProbeEvidence:
    """Internal, richer record behind injectivity_probe's report."""

    witnesses: list[Witness]
    sign_constant: bool | None = None  # 1-D only: derivative never changes sign
    unbounded: bool | None = None      # 1-D only: |m| grows at both grid ends
    skipped: int = 0

    @property
    def invertible_evidence(self) -> bool:
        return (
            not self.witnesses
            and self.sign_constant is True
            and self.unbounded is True
        )


def _derivative_fn(m: SmoothMap) -> Callable[[float], float]:
    if m.is_symbolic:
        d = m.partial(m.inputs[0])
        return lambda y: d(y)[0]
    return lambda y: finite_diff(m, (y,), m.inputs[0], 1e-6)


def _collision_pair(
    m: SmoothMap, y_crit: float, lo: float, hi: float, tol: float
) -> Witness | None:
    """Exact-collision pair around a derivative zero of a scalar map."""
    span = hi - lo
    for frac in (0.02, 0.1, 0.25):
        h = frac * span
        y1 = max(lo, y_crit - h)
        if y1 >= y_crit:
            continue
        try:
            target = m(y1)[0]
            g = lambda z: m(z)[0] - target  # noqa: E731
            brackets = scan_brackets(g, y_crit, min(hi, y_crit + span), 64)
        except EvalDomainError:
            continue
        for a, b in brackets:
            try:
                y2 = bisect(g, a, b, tol=1e-14)
                v2 = m(y2)[0]
            except (EvalDomainError, RootSearchError):
                continue
            if abs(y2 - y1) > 1e-9 and abs(v2 - target) <= tol * (1.0 + abs(target)):
                return Witness((y1, y2), (target, v2), "distinct points, equal image")
    return None


def _probe_1d(m: SmoothMap, grid: SamplingGrid, tol: float, unbounded_factor: float) -> ProbeEvidence:
    axis = grid.axes[0]
    pts = grid.axis_values()[0]
    dfn = _derivative_fn(m)
    skipped = 0
    last_x = None
    last_sign = 0
    seen_pos = seen_neg = False
    witnesses: list[Witness] = []
    for y in pts:
        try:
            d = dfn(y)
        except EvalDomainError:
            skipped += 1
            last_x, last_sign = None, 0
            continue
        sign = 0 if d == 0.0 else (1 if d > 0.0 else -1)
        seen_pos |= sign > 0
        seen_neg |= sign < 0
        if sign != 0:
            if last_sign != 0 and sign != last_sign:
                # derivative crosses zero: bracket the critical point, then
                # produce an explicit two-points-one-image witness
                try:
                    y_crit = bisect(dfn, last_x, y, tol=1e-12)
                except (EvalDomainError, RootSearchError):
                    y_crit = 0.5 * (last_x + y)
                w = _collision_pair(m, y_crit, axis.lo, axis.hi, tol)
                witnesses.append(
                    w
                    if w is not None
                    else Witness((y_crit,), (), "derivative sign change (no pair located)")
                )
            last_x, last_sign = y, sign
    sign_constant = not (seen_pos and seen_neg)
    unbounded = None
    try:
        m_lo = m(axis.lo)[0]
        m_hi = m(axis.hi)[0]
        unbounded = (
            m_lo * m_hi < 0.0
            and abs(m_lo) >= unbounded_factor * max(1.0, abs(axis.lo))
            and abs(m_hi) >= unbounded_factor * max(1.0, abs(axis.hi))
        )
    except EvalDomainError:
        pass
    return ProbeEvidence(witnesses, sign_constant, unbounded, skipped)


def _probe_pairwise(m: SmoothMap, grid: SamplingGrid, tol: float) -> ProbeEvidence:
    pts = list(grid.points())
    if len(pts) > 4000:
        raise ValueError("pairwise collision probe capped at 4000 grid points")
    sep = 1e-6 * max(ax.hi - ax.lo for ax in grid.axes)
    images = []
    skipped = 0
    for p in pts:
        try:
            images.append((p, m.at(p)))
        except EvalDomainError:
            skipped += 1
    witnesses = []
    for i in range(len(images)):
        p1, v1 = images[i]
        for j in range(i + 1, len(images)):
            p2, v2 = images[j]
            if max(abs(a - b) for a, b in zip(p1, p2)) < sep:
                continue
            if deviation(v1, v2) <= tol:
                witnesses.append(Witness((*p1, *p2), (*v1, *v2), "image collision"))
                if len(witnesses) >= 8:
                    return ProbeEvidence(witnesses, skipped=skipped)
    return ProbeEvidence(witnesses, skipped=skipped)


def probe_evidence(m: SmoothMap, grid: SamplingGrid, tol: float, unbounded_factor: float = 0.05) -> ProbeEvidence:
    if m.in_dim != m.out_dim:
        raise ExprError("injectivity probe needs equal input/output arity")
    if m.in_dim == 1:
        return _probe_1d(m, grid, tol, unbounded_factor)
    return _probe_pairwise(m, grid, tol)


def injectivity_probe(m: SmoothMap, grid: SamplingGrid, tol: float) -> VerificationReport:
    """Search the grid for two distinct points with the same image.

    passed=True means no collision was found on this grid (never a global
    certificate). For a found collision, max_deviation records the witness
    pair's separation, so a failing report's deviation is macroscopic.
    """
    ev = probe_evidence(m, grid, tol)
    notes = []
    if ev.sign_constant is not None:
        notes.append(f"derivative-sign-constant={ev.sign_constant}")
    if ev.unbounded is not None:
        notes.append(f"endpoint-growth={ev.unbounded}")
    sep = 0.0
    for w in ev.witnesses:
        if len(w.point) == 2 * m.in_dim:
            half = m.in_dim
            sep = max(
                sep,
                max(abs(a - b) for a, b in zip(w.point[:half], w.point[half:])),
            )
    return VerificationReport(
        suite=f"injectivity[{m.name or 'map'}]",
        passed=not ev.witnesses,
        max_deviation=sep,
        tolerance=tol,
        grid=grid.summary(),
        witnesses=ev.witnesses,
        checked=grid.size - ev.skipped,
        skipped=ev.skipped,
        notes=tuple(notes),
    )


def noninvertibility_witness_sqrt(t: float) -> tuple[float, float]:
    """The pair (0, -1/sqrt(t)): both map to 0 under y + sqrt(t)*y^2."""
    if t <= 0.0:
        raise ValueError("witness pair needs t > 0")
    return (0.0, -1.0 / math.sqrt(t))


# ---------------------------------------------------------------------------
# dichotomy


@dataclass
class InvertibilitySample:
    t: float
    status: str  # "invertible" | "noninvertible" | "unknown"
    witnesses: list[Witness]


@dataclass
class DichotomyResult:
    classification: str  # group_like | genuine_semigroup | inconsistent | inconclusive
    samples: list[InvertibilitySample]
    identity_report: VerificationReport
    composition_report: VerificationReport

    def to_dict(self) -> dict:
        return {
            "classification": self.classification,
            "samples": [
                {"t": s.t, "status": s.status, "witnesses": [w.to_dict() for w in s.witnesses]}
                for s in self.samples
            ],
            "identity": self.identity_report.to_dict(),
            "composition": self.composition_report.to_dict(),
        }


def classify_samples(statuses: Sequence[str]) -> str:
    """Aggregate per-t invertibility outcomes under the dichotomy.

    Mixed invertible/non-invertible samples contradict the extension lemma
    for one-parameter semigroups with identity, so they are reported as
    `inconsistent` (a modeling error) rather than averaged away.
    """
    has_inv = "invertible" in statuses
    has_non = "noninvertible" in statuses
    if has_inv and has_non:
        return "inconsistent"
    if not statuses or "unknown" in statuses:
        return "inconclusive"
    return "group_like" if has_inv else "genuine_semigroup"


def dichotomy_classify(
    action: TimeAction,
    t_samples: Sequence[float],
    grid: SamplingGrid,
    tol: float,
    composition_times: Sequence[tuple[float, float]] | None = None,
) -> DichotomyResult:
    """Classify a verified one-parameter semigroup as group-like or genuine.

    Preconditions (identity at 0 and the composition law on the grid) are
    re-checked and a PreconditionError raised on failure, so raw
    non-semigroup families cannot be classified by mistake.
    """
    if any(t <= 0.0 for t in t_samples):
        raise ValueError("t_samples must be strictly positive")
    ident = identity_check(action, grid, tol)
    if composition_times is None:
        base = list(t_samples[:3])
        composition_times = [(a, b) for a in base for b in base]
    comp = composition_check(action, composition_times, grid, tol)
    if not ident.passed:
        raise PreconditionError(f"identity axiom fails: {ident.one_line()}")
    if not comp.passed:
        raise PreconditionError(f"composition law fails: {comp.one_line()}")
    samples = []
    for t in t_samples:
        ev = probe_evidence(action.frozen_map(t), grid, tol)
        if ev.witnesses:
            status = "noninvertible"
        elif ev.invertible_evidence:
            status = "invertible"
        else:
            status = "unknown"
        samples.append(InvertibilitySample(t, status, ev.witnesses))
    classification = classify_samples([s.status for s in samples])
    return DichotomyResult(classification, samples, ident, comp)
