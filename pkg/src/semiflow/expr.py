"""Symbolic expression trees over named real variables.

Nodes: real constants, variables, the unary operations
{neg, sqrt, cbrt, tanh, sin, cos, exp, log}, the binary operations
{add, sub, mul, div, pow} with pow restricted to constant rational
exponents, and derivative markers ``D(U, x[, x])`` used by PDE residual
templates (markers are inert until resolved against a concrete map).

Operations: a recursive-descent parser for the infix grammar below, a
printer that round-trips through the parser, exact evaluation, exact
symbolic differentiation and capture-free substitution (the variable
namespace is flat).

Grammar (whitespace-insensitive)::

    expr   := term   (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | base ('^' factor)?
    base   := NUMBER | IDENT | IDENT '(' expr (',' expr)* ')' | '(' expr ')'

``^`` is right-associative and binds tighter than unary minus, which in
turn binds tighter than ``*``/``/``, so ``-x^2`` means ``-(x^2)`` and
``exp(-x^2/(4*t))`` parses the way the formula reads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Mapping


class ExprError(Exception):
    """Base class for expression-level failures."""


class ParseError(ExprError):
    """Syntax error with the character offset where parsing failed."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class EvalDomainError(ExprError):
    """Evaluation left a function's real domain (sqrt of a negative, ...)."""


class UnboundVariableError(ExprError):
    """A free variable had no binding at evaluation time."""


class UnresolvedMarkerError(ExprError):
    """A derivative marker D(...) reached evaluation or differentiation."""


@dataclass(frozen=True)
class Expr:
    """Immutable expression node; subclasses carry the actual payload."""

    def __add__(self, other):
        return Binary("add", self, as_expr(other))

    def __radd__(self, other):
        return Binary("add", as_expr(other), self)

    def __sub__(self, other):
        return Binary("sub", self, as_expr(other))

    def __rsub__(self, other):
        return Binary("sub", as_expr(other), self)

    def __mul__(self, other):
        return Binary("mul", self, as_expr(other))

    def __rmul__(self, other):
        return Binary("mul", as_expr(other), self)

    def __truediv__(self, other):
        return Binary("div", self, as_expr(other))

    def __rtruediv__(self, other):
        return Binary("div", as_expr(other), self)

    def __pow__(self, other):
        return Binary("pow", self, as_expr(other))

    def __neg__(self):
        return neg(self)

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Const(Expr):
    value: float


@dataclass(frozen=True)
class Var(Expr):
    name: str

    def __post_init__(self):
        if not self.name:
            raise ExprError("variable name must be nonempty")


@dataclass(frozen=True)
class Unary(Expr):
    op: str
    arg: Expr


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True)
class Deriv(Expr):
    """Inert derivative marker: D(func, *wrt). Resolved by PDE templates."""

    func: str
    wrt: tuple[str, ...]


UNARY_OPS = ("neg", "sqrt", "cbrt", "tanh", "sin", "cos", "exp", "log")
BINARY_OPS = ("add", "sub", "mul", "div", "pow")
FUNCTION_NAMES = ("sqrt", "cbrt", "tanh", "sin", "cos", "exp", "log")


def as_expr(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, float)):
        return Const(float(value))
    raise ExprError(f"cannot coerce {value!r} to an expression")


def neg(e: Expr) -> Expr:
    # fold -c so printed negative literals reparse to the same node
    e = as_expr(e)
    if isinstance(e, Const):
        return Const(-e.value)
    return Unary("neg", e)


def sqrt(e) -> Expr:
    return Unary("sqrt", as_expr(e))


def cbrt(e) -> Expr:
    return Unary("cbrt", as_expr(e))


def tanh(e) -> Expr:
    return Unary("tanh", as_expr(e))


def sin(e) -> Expr:
    return Unary("sin", as_expr(e))


def cos(e) -> Expr:
    return Unary("cos", as_expr(e))


def exp(e) -> Expr:
    return Unary("exp", as_expr(e))


def log(e) -> Expr:
    return Unary("log", as_expr(e))


# ---------------------------------------------------------------------------
# evaluation


def _cbrt(x: float) -> float:
    # odd extension, defined on all reals
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def _safe_sqrt(x: float) -> float:
    if x < 0.0:
        raise EvalDomainError(f"sqrt of negative argument {x!r}")
    return math.sqrt(x)


def _safe_log(x: float) -> float:
    if x <= 0.0:
        raise EvalDomainError(f"log of non-positive argument {x!r}")
    return math.log(x)


def _safe_exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError as err:
        raise EvalDomainError(f"exp overflow at argument {x!r}") from err


_UNARY_FN: dict[str, Callable[[float], float]] = {
    "neg": lambda x: -x,
    "sqrt": _safe_sqrt,
    "cbrt": _cbrt,
    "tanh": math.tanh,
    "sin": math.sin,
    "cos": math.cos,
    "exp": _safe_exp,
    "log": _safe_log,
}


def _safe_pow(base: float, expo: float) -> float:
    if base == 0.0 and expo < 0.0:
        raise EvalDomainError("zero raised to a negative power")
    if base < 0.0 and expo != int(expo):
        raise EvalDomainError(
            f"negative base {base!r} with non-integer exponent {expo!r}"
        )
    try:
        return base ** expo
    except OverflowError as err:
        raise EvalDomainError("pow overflow") from err


def evaluate(e: Expr, bindings: Mapping[str, float]) -> float:
    """IEEE double value of `e` with every free variable bound."""
    kind = type(e)
    if kind is Const:
        return e.value
    if kind is Var:
        try:
            return float(bindings[e.name])
        except KeyError:
            raise UnboundVariableError(f"unbound variable '{e.name}'") from None
    if kind is Binary:
        a = evaluate(e.lhs, bindings)
        b = evaluate(e.rhs, bindings)
        op = e.op
        if op == "add":
            return a + b
        if op == "sub":
            return a - b
        if op == "mul":
            return a * b
        if op == "div":
            if b == 0.0:
                raise EvalDomainError("division by zero")
            return a / b
        if op == "pow":
            return _safe_pow(a, b)
        raise ExprError(f"unknown binary op {op!r}")
    if kind is Unary:
        return _UNARY_FN[e.op](evaluate(e.arg, bindings))
    if kind is Deriv:
        raise UnresolvedMarkerError(
            f"derivative marker D({e.func},{','.join(e.wrt)}) was not resolved"
        )
    raise ExprError(f"unknown node {e!r}")


def free_vars(e: Expr) -> frozenset[str]:
    kind = type(e)
    if kind is Const:
        return frozenset()
    if kind is Var:
        return frozenset((e.name,))
    if kind is Unary:
        return free_vars(e.arg)
    if kind is Binary:
        return free_vars(e.lhs) | free_vars(e.rhs)
    if kind is Deriv:
        return frozenset((e.func,))
    raise ExprError(f"unknown node {e!r}")


# ---------------------------------------------------------------------------
# folding constructors (constant folding and 0/1 identities only)


def _is_const(e: Expr, v: float | None = None) -> bool:
    return isinstance(e, Const) and (v is None or e.value == v)


def fold_add(a: Expr, b: Expr) -> Expr:
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    return Binary("add", a, b)


def fold_sub(a: Expr, b: Expr) -> Expr:
    if _is_const(a) and _is_const(b):
        return Const(a.value - b.value)
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return neg(b)
    return Binary("sub", a, b)


def fold_mul(a: Expr, b: Expr) -> Expr:
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return Const(0.0)
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    return Binary("mul", a, b)


def fold_div(a: Expr, b: Expr) -> Expr:
    if _is_const(a) and _is_const(b) and b.value != 0.0:
        return Const(a.value / b.value)
    if _is_const(b, 1.0):
        return a
    if _is_const(a, 0.0):
        return Const(0.0)
    return Binary("div", a, b)


def fold_pow(a: Expr, b: Expr) -> Expr:
    if _is_const(b, 1.0):
        return a
    if _is_const(b, 0.0):
        return Const(1.0)
    if _is_const(a) and _is_const(b):
        try:
            return Const(_safe_pow(a.value, b.value))
        except EvalDomainError:
            pass
    return Binary("pow", a, b)


_FOLD_BINARY = {
    "add": fold_add,
    "sub": fold_sub,
    "mul": fold_mul,
    "div": fold_div,
    "pow": fold_pow,
}


def fold_unary(op: str, a: Expr) -> Expr:
    if op == "neg":
        return neg(a)
    if isinstance(a, Const):
        try:
            return Const(_UNARY_FN[op](a.value))
        except EvalDomainError:
            pass
    return Unary(op, a)


def simplify(e: Expr) -> Expr:
    """Constant folding and 0/1 identities, applied bottom-up. No canonicalization."""
    kind = type(e)
    if kind is Binary:
        return _FOLD_BINARY[e.op](simplify(e.lhs), simplify(e.rhs))
    if kind is Unary:
        return fold_unary(e.op, simplify(e.arg))
    return e


# ---------------------------------------------------------------------------
# differentiation


def _constant_exponent(e: Expr) -> float:
    try:
        return evaluate(e, {})
    except UnboundVariableError:
        raise ExprError(
            "pow exponent must be a rational constant; got "
            f"'{to_text(e)}' with free variables"
        ) from None


def diff(e: Expr, var: str) -> Expr:
    """Exact symbolic partial derivative of `e` with respect to `var`."""
    kind = type(e)
    if kind is Const:
        return Const(0.0)
    if kind is Var:
        return Const(1.0) if e.name == var else Const(0.0)
    if kind is Binary:
        op = e.op
        if op == "add":
            return fold_add(diff(e.lhs, var), diff(e.rhs, var))
        if op == "sub":
            return fold_sub(diff(e.lhs, var), diff(e.rhs, var))
        if op == "mul":
            return fold_add(
                fold_mul(diff(e.lhs, var), e.rhs),
                fold_mul(e.lhs, diff(e.rhs, var)),
            )
        if op == "div":
            return fold_div(
                fold_sub(
                    fold_mul(diff(e.lhs, var), e.rhs),
                    fold_mul(e.lhs, diff(e.rhs, var)),
                ),
                fold_pow(e.rhs, Const(2.0)),
            )
        if op == "pow":
            c = _constant_exponent(e.rhs)
            if c == 0.0:
                return Const(0.0)
            du = diff(e.lhs, var)
            return fold_mul(
                fold_mul(Const(c), fold_pow(e.lhs, Const(c - 1.0))), du
            )
        raise ExprError(f"unknown binary op {op!r}")
    if kind is Unary:
        u, du = e.arg, diff(e.arg, var)
        op = e.op
        if op == "neg":
            return neg(du)
        if op == "sqrt":
            # singular where u = 0; surfaces as a domain error at eval time
            return fold_div(du, fold_mul(Const(2.0), Unary("sqrt", u)))
        if op == "cbrt":
            return fold_div(
                du, fold_mul(Const(3.0), fold_pow(Unary("cbrt", u), Const(2.0)))
            )
        if op == "tanh":
            return fold_mul(
                fold_sub(Const(1.0), fold_pow(Unary("tanh", u), Const(2.0))), du
            )
        if op == "sin":
            return fold_mul(Unary("cos", u), du)
        if op == "cos":
            return neg(fold_mul(Unary("sin", u), du))
        if op == "exp":
            return fold_mul(Unary("exp", u), du)
        if op == "log":
            return fold_div(du, u)
        raise ExprError(f"unknown unary op {op!r}")
    if kind is Deriv:
        raise UnresolvedMarkerError(
            "cannot differentiate an unresolved derivative marker"
        )
    raise ExprError(f"unknown node {e!r}")


# ---------------------------------------------------------------------------
# substitution (flat namespace, no capture possible)


def substitute_many(e: Expr, mapping: Mapping[str, Expr]) -> Expr:
    """Simultaneously replace every occurrence of each mapped variable."""
    kind = type(e)
    if kind is Var:
        return mapping.get(e.name, e)
    if kind is Unary:
        return Unary(e.op, substitute_many(e.arg, mapping))
    if kind is Binary:
        return Binary(
            e.op, substitute_many(e.lhs, mapping), substitute_many(e.rhs, mapping)
        )
    return e


def substitute(e: Expr, var: str, replacement: Expr) -> Expr:
    return substitute_many(e, {var: as_expr(replacement)})


# ---------------------------------------------------------------------------
# printing

_PREC_ADD = 1.0
_PREC_MUL = 2.0
_PREC_NEG = 2.5
_PREC_POW = 3.0
_PREC_ATOM = 4.0


def format_number(v: float) -> str:
    if math.isfinite(v) and v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _node_prec(e: Expr) -> float:
    kind = type(e)
    if kind is Const:
        return _PREC_ATOM if e.value >= 0.0 else _PREC_NEG
    if kind is Var or kind is Deriv:
        return _PREC_ATOM
    if kind is Unary:
        return _PREC_NEG if e.op == "neg" else _PREC_ATOM
    if e.op == "pow":
        return _PREC_POW
    if e.op in ("mul", "div"):
        return _PREC_MUL
    return _PREC_ADD


def _fmt(e: Expr, ctx: float) -> str:
    text = _fmt_bare(e)
    if _node_prec(e) < ctx:
        return f"({text})"
    return text


def _fmt_bare(e: Expr) -> str:
    kind = type(e)
    if kind is Const:
        return format_number(e.value)
    if kind is Var:
        return e.name
    if kind is Deriv:
        return f"D({e.func},{','.join(e.wrt)})"
    if kind is Unary:
        if e.op == "neg":
            return "-" + _fmt(e.arg, _PREC_NEG)
        return f"{e.op}({_fmt(e.arg, 0.0)})"
    op = e.op
    if op == "pow":
        return f"{_fmt(e.lhs, _PREC_ATOM)}^{_fmt(e.rhs, _PREC_NEG)}"
    if op in ("mul", "div"):
        sym = "*" if op == "mul" else "/"
        return f"{_fmt(e.lhs, _PREC_MUL)}{sym}{_fmt(e.rhs, _PREC_MUL + 0.25)}"
    sym = " + " if op == "add" else " - "
    return f"{_fmt(e.lhs, _PREC_ADD)}{sym}{_fmt(e.rhs, _PREC_ADD + 0.25)}"


def to_text(e: Expr) -> str:
    """Infix form that `parse_expr` maps back to the same tree."""
    return _fmt(e, 0.0)


# ---------------------------------------------------------------------------
# parsing


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.n = len(text)

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < self.n and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < self.n else ""

    def accept(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.accept(ch):
            raise self.error(f"expected '{ch}'")

    def parse(self) -> Expr:
        e = self.expr()
        self.skip_ws()
        if self.pos < self.n:
            raise self.error(f"unexpected trailing input {self.text[self.pos]!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            c = self.peek()
            if c == "+":
                self.pos += 1
                e = Binary("add", e, self.term())
            elif c == "-":
                self.pos += 1
                e = Binary("sub", e, self.term())
            else:
                return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            c = self.peek()
            if c == "*":
                self.pos += 1
                e = Binary("mul", e, self.factor())
            elif c == "/":
                self.pos += 1
                e = Binary("div", e, self.factor())
            else:
                return e

    def factor(self) -> Expr:
        if self.accept("-"):
            return neg(self.factor())
        e = self.base()
        if self.accept("^"):
            expo = self.factor()  # right-associative
            if free_vars(expo):
                raise self.error("pow exponent must be a rational constant")
            return Binary("pow", e, expo)
        return e

    def base(self) -> Expr:
        c = self.peek()
        if c == "(":
            self.pos += 1
            e = self.expr()
            self.expect(")")
            return e
        if c.isdigit() or c == ".":
            return self.number()
        if c.isalpha() or c == "_":
            return self.ident()
        raise self.error(f"expected a number, name or '(' but found {c!r}")

    def number(self) -> Expr:
        start = self.pos
        text = self.text
        while self.pos < self.n and text[self.pos].isdigit():
            self.pos += 1
        if self.pos < self.n and text[self.pos] == ".":
            self.pos += 1
            while self.pos < self.n and text[self.pos].isdigit():
                self.pos += 1
        if self.pos < self.n and text[self.pos] in "eE":
            mark = self.pos
            self.pos += 1
            if self.pos < self.n and text[self.pos] in "+-":
                self.pos += 1
            if self.pos < self.n and text[self.pos].isdigit():
                while self.pos < self.n and text[self.pos].isdigit():
                    self.pos += 1
            else:
                self.pos = mark  # not an exponent suffix; e.g. "2e" -> "2", ident "e"
        lexeme = text[start:self.pos]
        try:
            return Const(float(lexeme))
        except ValueError:
            self.pos = start
            raise self.error(f"bad number literal {lexeme!r}") from None

    def ident(self) -> Expr:
        start = self.pos
        text = self.text
        while self.pos < self.n and (text[self.pos].isalnum() or text[self.pos] == "_"):
            self.pos += 1
        name = text[start:self.pos]
        if self.peek() != "(":
            return Var(name)
        if name == "D":
            return self.deriv_marker(start)
        if name not in FUNCTION_NAMES:
            self.pos = start
            raise self.error(f"unknown function name '{name}'")
        self.skip_ws()
        self.pos += 1  # consume "("
        arg = self.expr()
        if self.peek() == ",":
            raise self.error(f"function '{name}' takes exactly one argument")
        self.expect(")")
        return Unary(name, arg)

    def deriv_marker(self, start: int) -> Expr:
        self.skip_ws()
        self.pos += 1  # consume "("
        args = [self.expr()]
        while self.accept(","):
            args.append(self.expr())
        self.expect(")")
        if len(args) < 2 or not all(isinstance(a, Var) for a in args):
            self.pos = start
            raise self.error(
                "derivative marker must be D(name, var[, var...]) with plain names"
            )
        return Deriv(args[0].name, tuple(a.name for a in args[1:]))


def parse_expr(text: str) -> Expr:
    """Parse infix `text` into the unique tree under the grammar above."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# compiled evaluation for hot loops (integration, dense grids)


def _emit(e: Expr, params: tuple[str, ...]) -> str:
    kind = type(e)
    if kind is Const:
        return repr(e.value)
    if kind is Var:
        if e.name not in params:
            raise UnboundVariableError(
                f"variable '{e.name}' not among parameters {params!r}"
            )
        return e.name
    if kind is Binary:
        a = _emit(e.lhs, params)
        b = _emit(e.rhs, params)
        if e.op == "pow":
            return f"_pow({a}, {b})"
        sym = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[e.op]
        return f"({a} {sym} {b})"
    if kind is Unary:
        if e.op == "neg":
            return f"(-{_emit(e.arg, params)})"
        return f"_{e.op}({_emit(e.arg, params)})"
    if kind is Deriv:
        raise UnresolvedMarkerError("cannot compile an unresolved derivative marker")
    raise ExprError(f"unknown node {e!r}")


_COMPILE_NS = {
    "__builtins__": {},
    "_sqrt": _safe_sqrt,
    "_cbrt": _cbrt,
    "_tanh": math.tanh,
    "_sin": math.sin,
    "_cos": math.cos,
    "_exp": _safe_exp,
    "_log": _safe_log,
    "_pow": _safe_pow,
}


@lru_cache(maxsize=4096)
def compile_expr(e: Expr, params: tuple[str, ...]) -> Callable[..., float]:
    """Fast positional-argument evaluator for `e`, generated as one lambda.

    Division by zero surfaces as ZeroDivisionError from the generated code;
    callers on hot paths should map it to EvalDomainError (``evaluate`` does
    this implicitly by checking before dividing).
    """
    for p in params:
        if not p.isidentifier():
            raise ExprError(f"parameter name {p!r} is not an identifier")
    src = f"lambda {', '.join(params)}: {_emit(e, params)}"
    return eval(src, dict(_COMPILE_NS))  # noqa: S307 - namespace is closed


def eval_compiled(fn: Callable[..., float], *args: float) -> float:
    try:
        return fn(*args)
    except ZeroDivisionError as err:
        raise EvalDomainError("division by zero") from err
