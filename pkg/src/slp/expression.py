"""A small expression language for the coefficient functions f and g.

Grammar (lowest to highest precedence)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | "+" unary | power
    power   := atom ("^" unary)?            # right associative
    atom    := NUMBER | "x" | "pi" | "e" | NAME "(" expr ")" | "(" expr ")"

``**`` is accepted as a synonym of ``^``.  Every node is immutable and evaluates
element-wise on numpy arrays.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Expr",
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "Call",
    "ExpressionError",
    "ExpressionSyntaxError",
    "source_text",
    "UnknownIdentifierError",
    "parse",
    "FUNCTIONS",
    "CONSTANTS",
]

FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "sinh": np.sinh,
    "cosh": np.cosh,
    "abs": np.abs,
}

CONSTANTS = {"pi": math.pi, "e": math.e}


class ExpressionError(ValueError):
    pass


class ExpressionSyntaxError(ExpressionError):
    def __init__(self, message, position):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class UnknownIdentifierError(ExpressionError):
    def __init__(self, name, position):
        super().__init__(f"unknown identifier {name!r} at offset {position}")
        self.name = name
        self.position = position


class Expr:
    """Base class of expression nodes.

    Trees returned by :func:`parse` carry the original text as ``source``; it
    takes no part in equality.
    """

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(all="ignore"):
            out = np.broadcast_to(self.evaluate(x), x.shape)
        return float(out) if out.ndim == 0 else np.array(out, dtype=float)

    def evaluate(self, x):
        raise NotImplementedError

    def is_constant(self):
        return False

    def __add__(self, other):
        return BinOp("+", self, other)

    def __sub__(self, other):
        return BinOp("-", self, other)

    def __mul__(self, other):
        return BinOp("*", self, other)


@dataclass(frozen=True)
class Num(Expr):
    value: float

    def evaluate(self, x):
        return np.full_like(x, self.value)

    def is_constant(self):
        return True

    def __str__(self):
        return repr(float(self.value))


@dataclass(frozen=True)
class Var(Expr):
    def evaluate(self, x):
        return x

    def __str__(self):
        return "x"


@dataclass(frozen=True)
class Const(Expr):
    name: str

    def evaluate(self, x):
        return np.full_like(x, CONSTANTS[self.name])

    def is_constant(self):
        return True

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr

    def evaluate(self, x):
        return -self.operand.evaluate(x)

    def is_constant(self):
        return self.operand.is_constant()

    def __str__(self):
        return f"(-{self.operand})"


_BINOPS = {
    "+": np.add,
    "-": np.subtract,
    "*": np.multiply,
    "/": np.divide,
    "^": np.power,
}


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    def evaluate(self, x):
        return _BINOPS[self.op](self.left.evaluate(x), self.right.evaluate(x))

    def is_constant(self):
        return self.left.is_constant() and self.right.is_constant()

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class Call(Expr):
    name: str
    arg: Expr

    def evaluate(self, x):
        return FUNCTIONS[self.name](self.arg.evaluate(x))

    def is_constant(self):
        return self.arg.is_constant()

    def __str__(self):
        return f"{self.name}({self.arg})"


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if value == "**":
                value = "^"
            tokens.append((kind, value, pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, tv, pos = self.tok
        if tv != value:
            found = "end of input" if kind == "end" else repr(tv)
            raise ExpressionSyntaxError(f"expected {value!r}, found {found}", pos)
        self.advance()

    def parse(self):
        node = self.expr()
        kind, value, pos = self.tok
        if kind != "end":
            raise ExpressionSyntaxError(f"unexpected token {value!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while self.tok[1] in ("+", "-") and self.tok[0] == "op":
            op = self.advance()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.tok[1] in ("*", "/") and self.tok[0] == "op":
            op = self.advance()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.tok[0] == "op" and self.tok[1] == "-":
            self.advance()
            return Neg(self.unary())
        if self.tok[0] == "op" and self.tok[1] == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok[0] == "op" and self.tok[1] == "^":
            self.advance()
            return BinOp("^", base, self.unary())
        return base

    def atom(self):
        kind, value, pos = self.tok
        if kind == "num":
            self.advance()
            return Num(float(value))
        if kind == "name":
            self.advance()
            if value == "x":
                return Var()
            if value in CONSTANTS:
                return Const(value)
            if value in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(value, arg)
            raise UnknownIdentifierError(value, pos)
        if kind == "op" and value == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(value)
        raise ExpressionSyntaxError(f"unexpected {found}", pos)


def parse(text):
    """Parse ``text`` into an expression tree.

    Raises
    ------
    ExpressionSyntaxError
        With the character offset of the offending token.
    UnknownIdentifierError
        For names other than ``x``, the constants and the supported functions.
    """
    if isinstance(text, Expr):
        return text
    if not isinstance(text, str) or not text.strip():
        raise ExpressionSyntaxError("empty expression", 0)
    tree = _Parser(text).parse()
    object.__setattr__(tree, "source", text.strip())
    return tree


def source_text(expr):
    """The text ``expr`` was parsed from, or its canonical form if built directly."""
    return getattr(expr, "source", None) or str(expr)
