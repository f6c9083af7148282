"""Semigroups induced by evolution PDEs on parametrized solution families.

The viscous Burgers equation U_t + U U_x = mu U_xx has the traveling
kink U(t,x) = c - sqrt(c^2+d) * tanh(sqrt(c^2+d)/(2 mu) * (x - x0 - c t)).
Advancing time by t acts on the family parameters as
(x0, (c,d)) -> (x0 + c t, (c,d)): a flow alpha on the position parameter
with the speed/shape parameters frozen. The semigroup law of the time
advance becomes the cocycle law of (alpha, beta), and for frozen beta the
map (t, a) -> alpha(t, a, b) is itself a one-parameter action that the
axiom checks from the actions module can classify.

The heat-kernel demo shows the same mechanism where only a semigroup is
available: advancing exp(-x^2/(4 tau))/sqrt(tau) by s shifts tau to
tau + s, and no advance within the family can reach parameters below s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .expr import Const, Deriv, Var, tanh
from .grids import SamplingGrid
from .maps import SmoothMap, map_from_exprs, scalar_map
from .report import VerificationReport, Witness, deviation
from .semisym import PdeResidual, residual_max


def burgers_soliton(x0: float, c: float, d: float, mu: float) -> SmoothMap:
    """The traveling-kink solution as a map (t, x) -> U."""
    if c * c + d <= 0.0:
        raise ValueError(f"soliton parameters need c^2 + d > 0; got c={c!r}, d={d!r}")
    if mu <= 0.0:
        raise ValueError("viscosity must be positive")
    k = math.sqrt(c * c + d)
    phase = Var("x") - Const(x0) - Const(c) * Var("t")
    body = Const(c) - Const(k) * tanh(Const(k / (2.0 * mu)) * phase)
    return SmoothMap(("t", "x"), (body,), name=f"soliton[x0={x0:g},c={c:g},d={d:g},mu={mu:g}]")


@dataclass(frozen=True)
class SolitonFamily:
    x0: float
    c: float
    d: float
    mu: float

    def __post_init__(self):
        if self.c * self.c + self.d <= 0.0:
            raise ValueError("soliton parameters need c^2 + d > 0")
        if self.mu <= 0.0:
            raise ValueError("viscosity must be positive")

    def profile(self) -> SmoothMap:
        return burgers_soliton(self.x0, self.c, self.d, self.mu)


def burgers_pde(mu: float) -> PdeResidual:
    """Residual template U_t + U*U_x - mu*U_xx over (t, x)."""
    template = (
        Deriv("U", ("t",))
        + Var("U") * Deriv("U", ("x",))
        - Const(mu) * Deriv("U", ("x", "x"))
    )
    return PdeResidual(("t", "x"), "U", template)


def burgers_residual(U: SmoothMap, mu: float, grid: SamplingGrid) -> float:
    return residual_max(burgers_pde(mu), U, grid)


# ---------------------------------------------------------------------------
# the induced parameter flow


@dataclass(frozen=True)
class ParamFlow:
    """alpha moves the position-like parameter, beta the remaining ones.

    Both take (t, a, b...): alpha returns the new a, beta the new b-block.
    """

    alpha: SmoothMap
    beta: SmoothMap

    def __post_init__(self):
        if self.alpha.inputs != self.beta.inputs:
            raise ValueError("alpha and beta must share the (t, a, b...) signature")
        if self.alpha.out_dim != 1:
            raise ValueError("alpha is scalar")
        if self.beta.out_dim != self.alpha.in_dim - 2:
            raise ValueError("beta must return exactly the b-block")

    @property
    def b_dim(self) -> int:
        return self.beta.out_dim

    def move(self, t: float, a: float, b: tuple[float, ...]) -> tuple[float, tuple[float, ...]]:
        args = (t, a, *b)
        return self.alpha(*args)[0], self.beta(*args)


def soliton_param_flow() -> ParamFlow:
    """alpha(t, x0, (c,d)) = x0 + c*t with (c,d) frozen."""
    return ParamFlow(
        alpha=map_from_exprs(("t", "a", "c", "d"), ["a + c*t"], name="soliton-alpha"),
        beta=map_from_exprs(("t", "a", "c", "d"), ["c", "d"], name="soliton-beta"),
    )


def param_flow_check(flow: ParamFlow, grid: SamplingGrid, tol: float) -> VerificationReport:
    """Both cocycle identities of (alpha, beta) over a grid in (t, s, a, b...).

    alpha(t+s,a,b) = alpha(s, alpha(t,a,b), beta(t,a,b)) and the same
    shape for beta; with beta constant the second identity is trivial and
    the first is the one-parameter law for each frozen b.
    """
    if len(grid.axes) != 2 + 1 + flow.b_dim:
        raise ValueError(f"grid must sample (t, s, a, {flow.b_dim} b-axes)")
    devs = []
    witnesses = []
    for point in grid.points():
        t, s, a = point[0], point[1], point[2]
        b = point[3:]
        a_mid, b_mid = flow.move(t, a, b)
        a_two, b_two = flow.move(s, a_mid, b_mid)
        a_direct, b_direct = flow.move(t + s, a, b)
        d = deviation((a_two, *b_two), (a_direct, *b_direct))
        devs.append(d)
        if d > tol and len(witnesses) < 8:
            witnesses.append(Witness(point, (a_two, *b_two, a_direct, *b_direct)))
    return VerificationReport.from_deviations(
        "param-flow-cocycle", devs, tol, grid.summary(), witnesses
    )


def soliton_translation_check(
    flow: ParamFlow,
    family,
    grid: SamplingGrid,
    tol: float,
) -> VerificationReport:
    """The time-t soliton equals the time-0 soliton with moved parameters.

    `family` is the constructor (x0, c, d, mu) -> SmoothMap. Grid axes:
    (t, x, x0, c, d, mu); parameter tuples with c^2 + d <= 0 or mu <= 0
    are skipped.
    """
    devs = []
    witnesses = []
    skipped = 0
    cache: dict[tuple[float, float, float, float], SmoothMap] = {}

    def profile(x0: float, c: float, d: float, mu: float) -> SmoothMap:
        key = (x0, c, d, mu)
        if key not in cache:
            cache[key] = family(*key)
        return cache[key]

    for point in grid.points():
        t, x, x0, c, d, mu = point
        if c * c + d <= 0.0 or mu <= 0.0:
            skipped += 1
            continue
        moved_a, moved_b = flow.move(t, x0, (c, d))
        lhs = profile(x0, c, d, mu)(t, x)
        rhs = profile(moved_a, moved_b[0], moved_b[1], mu)(0.0, x)
        dev = deviation(lhs, rhs)
        devs.append(dev)
        if dev > tol and len(witnesses) < 8:
            witnesses.append(Witness(point, (*lhs, *rhs)))
    return VerificationReport.from_deviations(
        "soliton-translation", devs, tol, grid.summary(), witnesses, skipped
    )


# ---------------------------------------------------------------------------
# heat-kernel demo: a parameter semigroup with no inverses


def heat_kernel() -> SmoothMap:
    return scalar_map(("t", "x"), "exp(-x^2/(4*t))/sqrt(t)", name="heat-kernel")


def heat_pde() -> PdeResidual:
    return PdeResidual(("t", "x"), "U", Deriv("U", ("t",)) - Deriv("U", ("x", "x")))


def heat_flow_demo(grid: SamplingGrid, tol: float) -> VerificationReport:
    """Time advance on the heat-kernel family: a semigroup on tau > 0.

    Checks the kernel solves U_t = U_xx on the grid, that advancing by s
    then r equals advancing by s+r on the family parameter, and records
    why no advance is invertible: parameters below the advance are
    unreachable within the family domain (0, inf).
    """
    kernel = heat_kernel()
    resid = residual_max(heat_pde(), kernel, grid)
    devs = [resid]
    # advance by s then r equals advance by s+r, on the family parameter
    for tau in (0.5, 1.0, 2.0):
        for s, r in ((0.25, 0.75), (1.0, 1.0), (0.0, 0.5)):
            devs.append(abs((tau + s) + r - (tau + (s + r))))
    # the family is closed under every advance, but parameters in (0, s]
    # are unreachable: the advance has no inverse within the family
    unreachable = 0
    for s in (0.25, 1.0, 4.0):
        target = 0.5 * s
        unreachable += target - s <= 0.0
        devs.append(0.0 if target - s <= 0.0 else 1.0)
    notes = (
        f"advance by s>0 is injective but not surjective on (0, inf): "
        f"{unreachable}/3 sampled targets below the advance are unreachable",
    )
    return VerificationReport.from_deviations(
        "heat-flow-demo", devs, tol, grid.summary(), notes=notes
    )
