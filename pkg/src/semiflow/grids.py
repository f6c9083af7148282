"""Deterministic sampling grids for verification suites."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator


def linspace(lo: float, hi: float, count: int) -> list[float]:
    if count < 2:
        raise ValueError("linspace needs at least 2 points")
    step = (hi - lo) / (count - 1)
    pts = [lo + k * step for k in range(count)]
    pts[-1] = hi  # avoid drift at the right endpoint
    return pts


def geomspace(lo: float, hi: float, count: int) -> list[float]:
    if lo <= 0.0 or hi <= lo:
        raise ValueError("geomspace needs 0 < lo < hi")
    ratio = hi / lo
    return [lo * ratio ** (k / (count - 1)) for k in range(count)]


@dataclass(frozen=True)
class Axis:
    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if self.count < 2:
            raise ValueError("axis needs at least 2 points")
        if not self.lo < self.hi:
            raise ValueError("axis needs lo < hi")

    def points(self) -> list[float]:
        return linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class SamplingGrid:
    """Cartesian product of per-axis linspaces, with optional seeded jitter.

    jitter is a fraction of the axis step applied to interior points only,
    so grids stay inside their boxes and runs stay byte-reproducible.
    """

    axes: tuple[Axis, ...]
    seed: int = 42
    jitter: float = 0.0

    def axis_values(self) -> list[list[float]]:
        values = [ax.points() for ax in self.axes]
        if self.jitter > 0.0:
            rng = random.Random(self.seed)
            for ax, vals in zip(self.axes, values):
                step = (ax.hi - ax.lo) / (ax.count - 1)
                for i in range(1, len(vals) - 1):
                    vals[i] += self.jitter * step * rng.uniform(-0.5, 0.5)
        return values

    def points(self) -> Iterator[tuple[float, ...]]:
        return itertools.product(*self.axis_values())

    @property
    def size(self) -> int:
        n = 1
        for ax in self.axes:
            n *= ax.count
        return n

    def summary(self) -> str:
        spans = "×".join(f"[{ax.lo:g},{ax.hi:g}]#{ax.count}" for ax in self.axes)
        tag = f" jitter={self.jitter:g} seed={self.seed}" if self.jitter else ""
        return spans + tag


def grid1d(lo: float, hi: float, count: int, seed: int = 42, jitter: float = 0.0) -> SamplingGrid:
    return SamplingGrid((Axis(lo, hi, count),), seed=seed, jitter=jitter)


def grid2d(
    lo1: float, hi1: float, count1: int,
    lo2: float, hi2: float, count2: int,
    seed: int = 42, jitter: float = 0.0,
) -> SamplingGrid:
    return SamplingGrid((Axis(lo1, hi1, count1), Axis(lo2, hi2, count2)), seed=seed, jitter=jitter)
