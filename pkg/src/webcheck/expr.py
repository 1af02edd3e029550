"""Small expression language for profiles S(t) and focal curves.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' unary)?          exponent must be constant
    atom   := NUMBER | NAME | FUNC '(' expr ')' | '(' expr ')'
    FUNC   := exp | log

Numbers are read exactly (``0.25`` becomes ``1/4``).  Nodes evaluate on
plain numbers, mpmath numbers and jets, and differentiate symbolically.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, UnsupportedExpression
from .polycore import jets

__all__ = [
    "Node", "Num", "Var", "Neg", "Add", "Sub", "Mul", "Div", "Pow", "Call",
    "parse", "parse_profile", "num", "var",
]

FUNCTIONS = ("exp", "log")


class Node:
    """Base class; subclasses are immutable dataclasses."""

    def evaluate(self, env):
        raise NotImplementedError

    def diff(self, name):
        raise NotImplementedError

    def free_vars(self):
        return frozenset()

    def is_constant(self):
        return not self.free_vars()

    def substitute(self, mapping):
        """Replace variables by nodes (or numbers) from ``mapping``."""
        return self

    def __call__(self, **env):
        return self.evaluate(env)

    # operator sugar for building catalog curves
    def __add__(self, o):
        return _add(self, _wrap(o))

    def __radd__(self, o):
        return _add(_wrap(o), self)

    def __sub__(self, o):
        return _sub(self, _wrap(o))

    def __rsub__(self, o):
        return _sub(_wrap(o), self)

    def __mul__(self, o):
        return _mul(self, _wrap(o))

    def __rmul__(self, o):
        return _mul(_wrap(o), self)

    def __truediv__(self, o):
        return _div(self, _wrap(o))

    def __rtruediv__(self, o):
        return _div(_wrap(o), self)

    def __neg__(self):
        return _neg(self)

    def __pow__(self, o):
        return _pow(self, _wrap(o))


def _wrap(x):
    if isinstance(x, Node):
        return x
    if isinstance(x, int):
        return Num(Fraction(x))
    if isinstance(x, Fraction):
        return Num(x)
    if isinstance(x, float):
        return Num(Fraction(x).limit_denominator(10**12) if x == round(x, 12) else x)
    return Num(x)


@dataclass(frozen=True)
class Num(Node):
    value: object

    def evaluate(self, env):
        v = self.value
        return v.numerator if isinstance(v, Fraction) and v.denominator == 1 else v

    def diff(self, name):
        return ZERO

    def __str__(self):
        v = self.value
        if isinstance(v, Fraction):
            return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        return repr(v)


@dataclass(frozen=True)
class Var(Node):
    name: str

    def evaluate(self, env):
        try:
            return env[self.name]
        except KeyError:
            raise UnsupportedExpression(f"no value bound for variable {self.name!r}") from None

    def diff(self, name):
        return ONE if name == self.name else ZERO

    def free_vars(self):
        return frozenset([self.name])

    def substitute(self, mapping):
        return _wrap(mapping[self.name]) if self.name in mapping else self

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Neg(Node):
    arg: Node

    def evaluate(self, env):
        return -self.arg.evaluate(env)

    def diff(self, name):
        return _neg(self.arg.diff(name))

    def free_vars(self):
        return self.arg.free_vars()

    def substitute(self, mapping):
        return _neg(self.arg.substitute(mapping))

    def __str__(self):
        return f"-{_paren(self.arg, 3)}"


@dataclass(frozen=True)
class _Binary(Node):
    a: Node
    b: Node

    def free_vars(self):
        return self.a.free_vars() | self.b.free_vars()

    def substitute(self, mapping):
        return _BUILD[type(self)](self.a.substitute(mapping), self.b.substitute(mapping))


class Add(_Binary):
    def evaluate(self, env):
        return self.a.evaluate(env) + self.b.evaluate(env)

    def diff(self, name):
        return _add(self.a.diff(name), self.b.diff(name))

    def __str__(self):
        return f"{_paren(self.a, 1)} + {_paren(self.b, 1)}"


class Sub(_Binary):
    def evaluate(self, env):
        return self.a.evaluate(env) - self.b.evaluate(env)

    def diff(self, name):
        return _sub(self.a.diff(name), self.b.diff(name))

    def __str__(self):
        return f"{_paren(self.a, 1)} - {_paren(self.b, 2)}"


class Mul(_Binary):
    def evaluate(self, env):
        return self.a.evaluate(env) * self.b.evaluate(env)

    def diff(self, name):
        return _add(_mul(self.a.diff(name), self.b), _mul(self.a, self.b.diff(name)))

    def __str__(self):
        return f"{_paren(self.a, 2)}*{_paren(self.b, 2)}"


class Div(_Binary):
    def evaluate(self, env):
        a, b = self.a.evaluate(env), self.b.evaluate(env)
        if isinstance(a, int) and isinstance(b, int):
            return Fraction(a, b)
        return a / b

    def diff(self, name):
        num = _sub(_mul(self.a.diff(name), self.b), _mul(self.a, self.b.diff(name)))
        return _div(num, _pow(self.b, Num(Fraction(2))))

    def __str__(self):
        return f"{_paren(self.a, 2)}/{_paren(self.b, 3)}"


class Pow(_Binary):
    """``a ^ b`` with ``b`` constant."""

    def evaluate(self, env):
        base = self.a.evaluate(env)
        e = self.b.evaluate({})
        if isinstance(e, Fraction) and e.denominator == 1:
            e = e.numerator
        if isinstance(e, int):
            if e < 0:
                return (Fraction(1) if isinstance(base, int) else 1) / base ** (-e)
            return base ** e
        return jets.power(base, e)

    def diff(self, name):
        return _mul(_mul(self.b, _pow(self.a, _sub(self.b, ONE))), self.a.diff(name))

    def __str__(self):
        return f"{_paren(self.a, 4)}^{_paren(self.b, 4)}"


@dataclass(frozen=True)
class Call(Node):
    fn: str
    arg: Node

    def evaluate(self, env):
        x = self.arg.evaluate(env)
        return jets.exp(x) if self.fn == "exp" else jets.log(x)

    def diff(self, name):
        d = self.arg.diff(name)
        if self.fn == "exp":
            return _mul(self, d)
        return _div(d, self.arg)

    def free_vars(self):
        return self.arg.free_vars()

    def substitute(self, mapping):
        return Call(self.fn, self.arg.substitute(mapping))

    def __str__(self):
        return f"{self.fn}({self.arg})"


ZERO = Num(Fraction(0))
ONE = Num(Fraction(1))

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4}


def _paren(node, level):
    p = _PREC.get(type(node), 5)
    if isinstance(node, Num) and isinstance(node.value, Fraction) and (node.value < 0 or node.value.denominator != 1):
        p = 2 if node.value >= 0 else 3
    return f"({node})" if p < level else str(node)


def _is_num(n, v=None):
    return isinstance(n, Num) and (v is None or n.value == v)


# smart constructors with constant folding
def _add(a, b):
    if _is_num(a, 0):
        return b
    if _is_num(b, 0):
        return a
    if _is_num(a) and _is_num(b):
        return Num(a.value + b.value)
    return Add(a, b)


def _sub(a, b):
    if _is_num(b, 0):
        return a
    if _is_num(a, 0):
        return _neg(b)
    if _is_num(a) and _is_num(b):
        return Num(a.value - b.value)
    return Sub(a, b)


def _mul(a, b):
    if _is_num(a, 0) or _is_num(b, 0):
        return ZERO
    if _is_num(a, 1):
        return b
    if _is_num(b, 1):
        return a
    if _is_num(a) and _is_num(b):
        return Num(a.value * b.value)
    return Mul(a, b)


def _div(a, b):
    if _is_num(a, 0):
        return ZERO
    if _is_num(b, 1):
        return a
    if _is_num(a) and _is_num(b) and isinstance(a.value, Fraction) and isinstance(b.value, Fraction):
        return Num(a.value / b.value)
    return Div(a, b)


def _neg(a):
    if _is_num(a):
        return Num(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def _pow(a, b):
    if not b.is_constant():
        raise UnsupportedExpression("exponent must be constant")
    if _is_num(b, 0):
        return ONE
    if _is_num(b, 1):
        return a
    return Pow(a, b)


_BUILD = {Add: _add, Sub: _sub, Mul: _mul, Div: _div, Pow: _pow}


def num(v):
    return _wrap(v)


def var(name):
    return Var(name)


# -- parser -----------------------------------------------------------------
_TOKEN = re.compile(r"\s*(?:(\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            off = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[off]!r}", off)
        start = m.start(m.lastindex)
        kind = ("num", "name", "op")[m.lastindex - 1]
        val = m.group(m.lastindex)
        tokens.append((kind, "^" if val == "**" else val, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, variables):
        self.toks = _tokenize(text)
        self.i = 0
        self.variables = variables

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, val):
        kind, v, off = self.take()
        if v != val:
            what = "end of input" if kind == "end" else repr(v)
            raise ParseError(f"expected {val!r}, found {what}", off)

    def parse(self):
        node = self.expr()
        kind, v, off = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", off)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.unary()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def unary(self):
        kind, v, _ = self.peek()
        if kind == "op" and v in ("-", "+"):
            self.take()
            arg = self.unary()
            return Neg(arg) if v == "-" else arg
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            off = self.take()[2]
            exponent = self.unary()
            if not exponent.is_constant():
                raise UnsupportedExpression(f"non-constant exponent at offset {off}")
            return Pow(base, exponent)
        return base

    def atom(self):
        kind, v, off = self.take()
        if kind == "num":
            return Num(Fraction(v))
        if kind == "name":
            if v in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(v, arg)
            if v not in self.variables:
                raise ParseError(f"unknown name {v!r}", off)
            if self.peek()[1] == "(":
                raise ParseError(f"{v!r} is not a function", self.peek()[2])
            return Var(v)
        if v == "(":
            node = self.expr()
            self.expect(")")
            return node
        what = "end of input" if kind == "end" else repr(v)
        raise ParseError(f"unexpected {what}", off)


def parse(text, variables=("t",)):
    """Parse ``text`` into a :class:`Node`; names outside ``variables`` are errors."""
    return _Parser(text, frozenset(variables)).parse()


def parse_profile(text):
    """Parse a profile expression S(t)."""
    return parse(text, ("t",))
