"""Closed-form holomorphic functions of one complex variable.

Expressions are immutable ASTs over {constants, the variable z, +, -, *, /,
integer powers, exp, log, sinh, cosh}.  Keeping them symbolic (rather than
opaque callables) buys exact differentiation, text round-tripping for the
CLI/JSON interfaces, and a compact instruction tape for fast bulk
evaluation (see ``engine``).

Smart constructors fold constants and drop algebraic no-ops (x+0, 1*x,
x**1, ...) so that derivative trees and matrix-applied curves stay small;
no deeper rewriting is attempted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError

__all__ = [
    "Expr", "Const", "Var", "Add", "Sub", "Mul", "Div", "Neg", "Pow",
    "Exp", "Log", "Sinh", "Cosh",
    "Z", "const", "add", "sub", "mul", "div", "neg", "powi",
    "exp", "log", "sinh", "cosh",
    "differentiate", "parse", "to_source",
]


@dataclass(frozen=True, eq=False)
class Expr:
    """Base node.  Arithmetic operators build new trees."""

    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __sub__(self, other):
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        return mul(_coerce(other), self)

    def __truediv__(self, other):
        return div(self, _coerce(other))

    def __rtruediv__(self, other):
        return div(_coerce(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, n):
        return powi(self, n)

    def __str__(self):
        return to_source(self)


@dataclass(frozen=True, eq=False)
class Const(Expr):
    value: complex


@dataclass(frozen=True, eq=False)
class Var(Expr):
    pass


@dataclass(frozen=True, eq=False)
class Add(Expr):
    a: Expr
    b: Expr


@dataclass(frozen=True, eq=False)
class Sub(Expr):
    a: Expr
    b: Expr


@dataclass(frozen=True, eq=False)
class Mul(Expr):
    a: Expr
    b: Expr


@dataclass(frozen=True, eq=False)
class Div(Expr):
    a: Expr
    b: Expr


@dataclass(frozen=True, eq=False)
class Neg(Expr):
    a: Expr


@dataclass(frozen=True, eq=False)
class Pow(Expr):
    a: Expr
    n: int


@dataclass(frozen=True, eq=False)
class Exp(Expr):
    a: Expr


@dataclass(frozen=True, eq=False)
class Log(Expr):
    a: Expr


@dataclass(frozen=True, eq=False)
class Sinh(Expr):
    a: Expr


@dataclass(frozen=True, eq=False)
class Cosh(Expr):
    a: Expr


Z = Var()

_ZERO = Const(0.0 + 0.0j)
_ONE = Const(1.0 + 0.0j)


def const(value) -> Const:
    return Const(complex(value))


def _coerce(x) -> Expr:
    if isinstance(x, Expr):
        return x
    return const(x)


def _is_const(e, value=None):
    if not isinstance(e, Const):
        return False
    return value is None or e.value == value


def add(a, b) -> Expr:
    a, b = _coerce(a), _coerce(b)
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    return Add(a, b)


def sub(a, b) -> Expr:
    a, b = _coerce(a), _coerce(b)
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if _is_const(b, 0):
        return a
    if _is_const(a, 0):
        return neg(b)
    return Sub(a, b)


def mul(a, b) -> Expr:
    a, b = _coerce(a), _coerce(b)
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if _is_const(a, 0) or _is_const(b, 0):
        return _ZERO
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    if _is_const(a, -1):
        return neg(b)
    if _is_const(b, -1):
        return neg(a)
    # keep constants on the left so printed output reads like "2*z"
    if isinstance(b, Const) and not isinstance(a, Const):
        a, b = b, a
    if isinstance(a, Const) and isinstance(b, Mul) and isinstance(b.a, Const):
        return mul(Const(a.value * b.a.value), b.b)
    return Mul(a, b)


def div(a, b) -> Expr:
    a, b = _coerce(a), _coerce(b)
    if isinstance(a, Const) and isinstance(b, Const) and b.value != 0:
        return Const(a.value / b.value)
    if _is_const(b, 1):
        return a
    if _is_const(a, 0) and not _is_const(b, 0):
        return _ZERO
    return Div(a, b)


def neg(a) -> Expr:
    a = _coerce(a)
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.a
    return Neg(a)


def powi(a, n) -> Expr:
    a = _coerce(a)
    n = int(n)
    if n == 0:
        return _ONE
    if n == 1:
        return a
    if isinstance(a, Const):
        return Const(a.value ** n)
    if isinstance(a, Pow):
        return Pow(a.a, a.n * n)
    return Pow(a, n)


def exp(a) -> Expr:
    return Exp(_coerce(a))


def log(a) -> Expr:
    return Log(_coerce(a))


def sinh(a) -> Expr:
    return Sinh(_coerce(a))


def cosh(a) -> Expr:
    return Cosh(_coerce(a))


# ---------------------------------------------------------------------------
# exact differentiation
# ---------------------------------------------------------------------------

def differentiate(e: Expr) -> Expr:
    """Exact d/dz of an expression, as a new AST."""
    if isinstance(e, Const):
        return _ZERO
    if isinstance(e, Var):
        return _ONE
    if isinstance(e, Add):
        return add(differentiate(e.a), differentiate(e.b))
    if isinstance(e, Sub):
        return sub(differentiate(e.a), differentiate(e.b))
    if isinstance(e, Mul):
        return add(mul(differentiate(e.a), e.b), mul(e.a, differentiate(e.b)))
    if isinstance(e, Div):
        num = sub(mul(differentiate(e.a), e.b), mul(e.a, differentiate(e.b)))
        return div(num, powi(e.b, 2))
    if isinstance(e, Neg):
        return neg(differentiate(e.a))
    if isinstance(e, Pow):
        return mul(mul(const(e.n), powi(e.a, e.n - 1)), differentiate(e.a))
    if isinstance(e, Exp):
        return mul(e, differentiate(e.a))
    if isinstance(e, Log):
        return div(differentiate(e.a), e.a)
    if isinstance(e, Sinh):
        return mul(cosh(e.a), differentiate(e.a))
    if isinstance(e, Cosh):
        return mul(sinh(e.a), differentiate(e.a))
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_UNARY, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _fmt_real(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _fmt_const(v: complex):
    """Render a complex constant; returns (text, precedence)."""
    re, im = v.real, v.imag
    if im == 0:
        s = _fmt_real(re)
        return s, (_PREC_UNARY if re < 0 else _PREC_ATOM)
    if re == 0:
        if im == 1:
            return "i", _PREC_ATOM
        if im == -1:
            return "-i", _PREC_UNARY
        return f"{_fmt_real(im)}*i", _PREC_MUL
    sign = "+" if im >= 0 else "-"
    mag = abs(im)
    istr = "i" if mag == 1 else f"{_fmt_real(mag)}*i"
    return f"({_fmt_real(re)}{sign}{istr})", _PREC_ATOM


def _render(e: Expr):
    if isinstance(e, Const):
        return _fmt_const(e.value)
    if isinstance(e, Var):
        return "z", _PREC_ATOM
    if isinstance(e, (Add, Sub)):
        op = "+" if isinstance(e, Add) else "-"
        a = _wrap(e.a, _PREC_ADD)
        b = _wrap(e.b, _PREC_ADD + (0 if isinstance(e, Add) else 1))
        return f"{a}{op}{b}", _PREC_ADD
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        a = _wrap(e.a, _PREC_MUL)
        b = _wrap(e.b, _PREC_MUL + 1)
        return f"{a}{op}{b}", _PREC_MUL
    if isinstance(e, Neg):
        return f"-{_wrap(e.a, _PREC_UNARY)}", _PREC_UNARY
    if isinstance(e, Pow):
        base = _wrap(e.a, _PREC_POW + 1)
        expo = str(e.n) if e.n >= 0 else f"({e.n})"
        return f"{base}^{expo}", _PREC_POW
    for cls, name in ((Exp, "exp"), (Log, "log"), (Sinh, "sinh"), (Cosh, "cosh")):
        if isinstance(e, cls):
            return f"{name}({to_source(e.a)})", _PREC_ATOM
    raise TypeError(f"not an expression node: {e!r}")


def _wrap(e: Expr, min_prec: int) -> str:
    text, prec = _render(e)
    return f"({text})" if prec < min_prec else text


def to_source(e: Expr) -> str:
    """Infix text form; ``parse(to_source(e))`` evaluates identically."""
    return _render(e)[0]


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_FUNCS = {"exp": exp, "log": log, "sinh": sinh, "cosh": cosh}


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        if self.pos >= len(self.text):
            return ("end", None, self.pos)
        t, ch = self.text, self.text[self.pos]
        start = self.pos
        if ch.isdigit() or (ch == "." and start + 1 < len(t) and t[start + 1].isdigit()):
            j = start
            while j < len(t) and (t[j].isdigit() or t[j] == "."):
                j += 1
            if j < len(t) and t[j] in "eE":
                k = j + 1
                if k < len(t) and t[k] in "+-":
                    k += 1
                if k < len(t) and t[k].isdigit():
                    j = k
                    while j < len(t) and t[j].isdigit():
                        j += 1
            if j < len(t) and t[j] == "i":
                return ("number", complex(0.0, float(t[start:j])), start, j + 1)
            return ("number", complex(float(t[start:j]), 0.0), start, j)
        if ch.isalpha() or ch == "_":
            j = start
            while j < len(t) and (t[j].isalnum() or t[j] == "_"):
                j += 1
            return ("name", t[start:j], start, j)
        if t.startswith("**", start):
            return ("op", "^", start, start + 2)
        if ch in "+-*/^(),":
            return ("op", ch, start, start + 1)
        raise ParseError(f"unexpected character {ch!r}", start)

    def next(self):
        tok = self.peek()
        if tok[0] != "end":
            self.pos = tok[3]
        return tok


class _Parser:
    """Recursive descent over +- / */ / unary - / ^ with integer exponents."""

    def __init__(self, text: str):
        self.lex = _Lexer(text)

    def parse(self) -> Expr:
        e = self._sum()
        tok = self.lex.peek()
        if tok[0] != "end":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])
        return e

    def _sum(self) -> Expr:
        e = self._term()
        while True:
            tok = self.lex.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.lex.next()
                rhs = self._term()
                e = add(e, rhs) if tok[1] == "+" else sub(e, rhs)
            else:
                return e

    def _term(self) -> Expr:
        e = self._factor()
        while True:
            tok = self.lex.peek()
            if tok[0] == "op" and tok[1] in "*/":
                self.lex.next()
                rhs = self._factor()
                e = mul(e, rhs) if tok[1] == "*" else div(e, rhs)
            else:
                return e

    def _factor(self) -> Expr:
        tok = self.lex.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.lex.next()
            return neg(self._factor())
        if tok[0] == "op" and tok[1] == "+":
            self.lex.next()
            return self._factor()
        return self._power()

    def _power(self) -> Expr:
        base = self._atom()
        tok = self.lex.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.lex.next()
            return powi(base, self._exponent())
        return base

    def _exponent(self) -> int:
        tok = self.lex.next()
        sign = 1
        if tok[0] == "op" and tok[1] == "(":
            n = self._exponent()
            close = self.lex.next()
            if close[:2] != ("op", ")"):
                raise ParseError("expected ')' after exponent", close[2])
            return n
        if tok[0] == "op" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            tok = self.lex.next()
        if tok[0] != "number" or tok[1].imag != 0 or tok[1].real != int(tok[1].real):
            raise ParseError("exponent must be an integer", tok[2])
        return sign * int(tok[1].real)

    def _atom(self) -> Expr:
        tok = self.lex.next()
        if tok[0] == "number":
            return Const(tok[1])
        if tok[0] == "name":
            name = tok[1]
            if name in ("z", "zeta"):
                return Z
            if name == "i":
                return Const(1j)
            if name in _FUNCS:
                open_ = self.lex.next()
                if open_[:2] != ("op", "("):
                    raise ParseError(f"expected '(' after {name}", open_[2])
                arg = self._sum()
                close = self.lex.next()
                if close[:2] != ("op", ")"):
                    raise ParseError(f"expected ')' closing {name}(...)", close[2])
                return _FUNCS[name](arg)
            raise ParseError(f"unknown identifier {name!r}", tok[2])
        if tok[0] == "op" and tok[1] == "(":
            e = self._sum()
            close = self.lex.next()
            if close[:2] != ("op", ")"):
                raise ParseError("expected ')'", close[2])
            return e
        if tok[0] == "end":
            raise ParseError("unexpected end of input", tok[2])
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2])


def parse(text: str) -> Expr:
    """Parse infix expression text, e.g. ``"-i*exp(-z)"`` or ``"1/z^2"``."""
    return _Parser(text).parse()
