#!/usr/bin/env python3
"""Locate the diffeomorphism time-range of homotopy actions.

For H(t,y) = (1 - sqrt(t))*y + sqrt(t)*f(y) the slope of the frozen map
is (1 - s) + s*f'(y) with s = sqrt(t), so with f' ranging over [lo, hi]
the slope reaches zero exactly for s in [1/(1-lo), 1/(1-hi)] (upper end
infinite when hi >= 1). The scan below refines those boundaries by
bisection and prints them next to that closed-form prediction. Boundary
times themselves are sampling-sensitive: at an endpoint the slope only
touches zero (or, for monotone bounded targets, the map stops being
surjective), which a finite grid can only approximate.

Usage: python scripts/diffeo_threshold_study.py
"""

from __future__ import annotations

import math
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from semiflow.enforcing import bump_map, diffeo_time_set, homotopy_action, sqrt_mediator
from semiflow.grids import grid1d
from semiflow.maps import scalar_map

PEAK = 3.0 * math.sqrt(3.0) / 8.0

TARGETS = {
    # name -> (map f, range of f' over R, where the extremes sit)
    "bump 1/(y^2+1)": (bump_map(), (-PEAK, PEAK), "y = ±1/sqrt(3)"),
    "sine": (scalar_map(("y",), "sin(y)", name="sine"), (-1.0, 1.0), "y = 0 (mod pi)"),
    "half-tanh": (scalar_map(("y",), "0.5*tanh(y)", name="half-tanh"), (0.0, 0.5), "y = 0"),
}


def predicted_interval(lo: float, hi: float) -> tuple[float, float]:
    s_enter = 1.0 / (1.0 - lo)
    s_exit = math.inf if hi >= 1.0 else 1.0 / (1.0 - hi)
    return s_enter * s_enter, (s_exit * s_exit if math.isfinite(s_exit) else math.inf)


def main() -> int:
    for name, (f, (lo, hi), where) in TARGETS.items():
        action = homotopy_action(f, sqrt_mediator())
        report = diffeo_time_set(action, grid1d(0.05, 20.0, 81), grid1d(-6.0, 6.0, 241))
        want_lo, want_hi = predicted_interval(lo, hi)
        got = sorted(report.thresholds)
        print(f"{name}: slope range [{lo:.6f}, {hi:.6f}], extremes at {where}")
        print(f"  predicted zero-slope region: t in [{want_lo:.6f}, "
              f"{'inf)' if math.isinf(want_hi) else f'{want_hi:.6f}]'}")
        print(f"  refined by bisection:        {', '.join(f'{t:.6f}' for t in got) or 'none found'}")
        sample = [t for t, ok in report.entries if ok][:3]
        print(f"  earliest sampled diffeo times: {[round(t, 3) for t in sample]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
