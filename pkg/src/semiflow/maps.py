"""Smooth maps R^m -> R^n backed by expression trees or plain callables."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .expr import (
    EvalDomainError,
    Expr,
    ExprError,
    Var,
    compile_expr,
    diff,
    free_vars,
    parse_expr,
    substitute_many,
    to_text,
)


@dataclass(frozen=True)
class SmoothMap:
    """A map given per-coordinate by expressions, or by a named builtin callable.

    Expression-backed maps support exact differentiation and symbolic
    composition; callable-backed ones only evaluation.
    """

    inputs: tuple[str, ...]
    outputs: tuple[Expr, ...] = ()
    func: Callable[..., tuple[float, ...]] | None = None
    out_dim: int = 0
    name: str = ""

    def __post_init__(self):
        if bool(self.outputs) == (self.func is not None):
            raise ExprError("SmoothMap needs exactly one backing: outputs or func")
        if self.outputs:
            object.__setattr__(self, "out_dim", len(self.outputs))
            declared = set(self.inputs)
            for coord in self.outputs:
                stray = free_vars(coord) - declared
                if stray:
                    raise ExprError(
                        f"output '{to_text(coord)}' uses undeclared "
                        f"variables {sorted(stray)}"
                    )
        if self.out_dim < 1:
            raise ExprError("output arity must be >= 1")

    @property
    def in_dim(self) -> int:
        return len(self.inputs)

    @property
    def is_symbolic(self) -> bool:
        return bool(self.outputs)

    def __call__(self, *args: float) -> tuple[float, ...]:
        if len(args) != self.in_dim:
            raise ExprError(
                f"expected {self.in_dim} arguments ({self.inputs}), got {len(args)}"
            )
        if self.func is not None:
            out = self.func(*args)
            return tuple(float(v) for v in out)
        try:
            return tuple(compile_expr(c, self.inputs)(*args) for c in self.outputs)
        except ZeroDivisionError as err:
            raise EvalDomainError("division by zero") from err

    def at(self, point: Sequence[float]) -> tuple[float, ...]:
        return self(*point)

    def component(self, i: int) -> Expr:
        if not self.is_symbolic:
            raise ExprError("callable-backed map has no expression components")
        return self.outputs[i]

    def partial(self, var: str) -> "SmoothMap":
        """Coordinate-wise exact partial derivative (symbolic backing only)."""
        if not self.is_symbolic:
            raise ExprError("cannot differentiate a callable-backed map exactly")
        return SmoothMap(
            self.inputs,
            tuple(diff(c, var) for c in self.outputs),
            name=f"d({self.name or 'map'})/d{var}",
        )

    def freeze(self, **values: float) -> "SmoothMap":
        """Substitute constants for some inputs, dropping them from the signature."""
        from .expr import Const

        if not self.is_symbolic:
            raise ExprError("cannot freeze inputs of a callable-backed map")
        mapping = {k: Const(float(v)) for k, v in values.items()}
        remaining = tuple(v for v in self.inputs if v not in values)
        return SmoothMap(
            remaining,
            tuple(substitute_many(c, mapping) for c in self.outputs),
            name=self.name,
        )


def map_from_exprs(inputs: Sequence[str], texts: Sequence[str], name: str = "") -> SmoothMap:
    return SmoothMap(tuple(inputs), tuple(parse_expr(t) for t in texts), name=name)


def scalar_map(inputs: Sequence[str], text: str, name: str = "") -> SmoothMap:
    return map_from_exprs(inputs, [text], name=name)


def identity_map(inputs: Sequence[str]) -> SmoothMap:
    return SmoothMap(tuple(inputs), tuple(Var(v) for v in inputs), name="identity")


def compose(outer: SmoothMap, inner: SmoothMap) -> SmoothMap:
    """outer after inner; symbolic when both backings are expression trees."""
    if outer.in_dim != inner.out_dim:
        raise ExprError(
            f"arity mismatch: outer expects {outer.in_dim}, inner yields {inner.out_dim}"
        )
    if outer.is_symbolic and inner.is_symbolic:
        mapping = dict(zip(outer.inputs, inner.outputs))
        return SmoothMap(
            inner.inputs,
            tuple(substitute_many(c, mapping) for c in outer.outputs),
            name=f"{outer.name or 'outer'}∘{inner.name or 'inner'}",
        )
    return SmoothMap(
        inner.inputs,
        func=lambda *args: outer(*inner(*args)),
        out_dim=outer.out_dim,
        name=f"{outer.name or 'outer'}∘{inner.name or 'inner'}",
    )


def finite_diff(m: SmoothMap, point: Sequence[float], var: str, h: float):
    """Central difference (m(point+h·e_var) - m(point-h·e_var)) / (2h).

    Returns a float for single-output maps, else a tuple per coordinate.
    Domain errors from evaluation propagate.
    """
    if h <= 0.0:
        raise ValueError("finite difference step must be positive")
    try:
        i = m.inputs.index(var)
    except ValueError:
        raise ExprError(f"'{var}' is not an input of the map {m.inputs!r}") from None
    hi = list(point)
    lo = list(point)
    hi[i] += h
    lo[i] -= h
    up = m.at(hi)
    dn = m.at(lo)
    out = tuple((u - d) / (2.0 * h) for u, d in zip(up, dn))
    return out[0] if m.out_dim == 1 else out
