"""Scalar root finding: bracket scans, bisection, Newton polish."""

from __future__ import annotations

from typing import Callable

from .expr import EvalDomainError


class RootSearchError(Exception):
    pass


def scan_brackets(
    f: Callable[[float], float], lo: float, hi: float, n: int
) -> list[tuple[float, float]]:
    """Sign-change intervals of f on an n-point scan of [lo, hi].

    Points where f raises a domain error are treated as gaps in the scan.
    """
    if n < 2:
        raise ValueError("need at least 2 scan points")
    step = (hi - lo) / (n - 1)
    brackets = []
    prev_x = prev_y = None
    for k in range(n):
        x = lo + k * step
        try:
            y = f(x)
        except EvalDomainError:
            prev_x = prev_y = None
            continue
        if y == 0.0:
            brackets.append((x, x))
        elif prev_y is not None and (prev_y < 0.0) != (y < 0.0):
            brackets.append((prev_x, x))
        prev_x, prev_y = x, y
    return brackets


def bisect(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> float:
    if a == b:
        return a
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa < 0.0) == (fb < 0.0):
        raise RootSearchError(f"no sign change on [{a!r}, {b!r}]")
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        if b - a <= tol:
            return m
        fm = f(m)
        if fm == 0.0:
            return m
        if (fa < 0.0) == (fm < 0.0):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return 0.5 * (a + b)


def newton(
    f: Callable[[float], float],
    df: Callable[[float], float],
    x0: float,
    tol: float = 1e-14,
    max_iter: int = 60,
) -> float | None:
    """Newton iteration; returns None instead of diverging or looping."""
    x = x0
    for _ in range(max_iter):
        try:
            y = f(x)
            d = df(x)
        except EvalDomainError:
            return None
        if d == 0.0:
            return None
        step = y / d
        x_new = x - step
        if abs(step) <= tol * (1.0 + abs(x)):
            return x_new
        x = x_new
    return None


def numeric_derivative(f: Callable[[float], float], h_rel: float = 1e-7) -> Callable[[float], float]:
    def df(x: float) -> float:
        h = h_rel * (1.0 + abs(x))
        return (f(x + h) - f(x - h)) / (2.0 * h)

    return df


def hybrid_root(
    f: Callable[[float], float],
    a: float,
    b: float,
    df: Callable[[float], float] | None = None,
    tol: float = 1e-12,
) -> float:
    """Bisection to `tol`, then a Newton polish when a derivative is usable."""
    x = bisect(f, a, b, tol=tol)
    polished = newton(f, df or numeric_derivative(f), x)
    if polished is not None and min(a, b) - tol <= polished <= max(a, b) + tol:
        try:
            if abs(f(polished)) <= abs(f(x)):
                return polished
        except EvalDomainError:
            pass
    return x
