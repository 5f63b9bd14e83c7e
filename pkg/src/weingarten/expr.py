"""A small arithmetic expression language for Weingarten relations.

Grammar (``^`` is right-associative and binds looser than unary minus)::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := unary ("^" factor)?
    unary  := "-" unary | atom
    atom   := number | variable | func "(" expr ")" | "(" expr ")"

Evaluation uses plain Python floats, so results are bit-reproducible.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Mapping, Union

from .errors import EvalError, ParseError, UnknownIdentifier

PHI_VARS = ("t", "v")
F_VARS = ("k2", "v")


def _sqrt(x):
    if x < 0:
        raise EvalError(f"sqrt of negative number {x!r}")
    return math.sqrt(x)


def _log(x):
    if x <= 0:
        raise EvalError(f"log of nonpositive number {x!r}")
    return math.log(x)


def _exp(x):
    try:
        return math.exp(x)
    except OverflowError as exc:
        raise EvalError(f"exp overflow at {x!r}") from exc


FUNCTIONS: dict[str, Callable[[float], float]] = {
    "sqrt": _sqrt,
    "exp": _exp,
    "log": _log,
    "sin": math.sin,
    "cos": math.cos,
    "tanh": math.tanh,
    "abs": abs,
}


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Union[Num, Var, Neg, BinOp, Call]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))")


def _tokenize(src: str):
    raw = src.encode("utf-8")
    if len(raw) != len(src):
        # keep offsets byte-exact by rejecting non-ASCII input early
        for i, ch in enumerate(src):
            if ord(ch) > 127:
                raise ParseError(f"unexpected character {ch!r}",
                                 len(src[:i].encode("utf-8")))
    tokens = []
    pos = 0
    n = len(src)
    while pos < n:
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            start = pos + (len(src[pos:]) - len(src[pos:].lstrip()))
            raise ParseError(f"unexpected character {src[start]!r}", start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, src: str, variables):
        self.toks = _tokenize(src)
        self.i = 0
        self.variables = frozenset(variables)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text):
        kind, val, off = self.peek()
        if val != text or kind != "op":
            what = "end of input" if kind == "end" else repr(val)
            raise ParseError(f"expected {text!r}, found {what}", off)
        self.take()

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        base = self.unary()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            return BinOp("^", base, self.factor())
        return base

    def unary(self) -> Node:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> Node:
        kind, val, off = self.take()
        if kind == "num":
            return Num(float(val))
        if kind == "name":
            if val in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(val, arg)
            if val in self.variables:
                return Var(val)
            raise UnknownIdentifier(f"unknown identifier {val!r}", off)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        what = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {what}", off)


def parse_expr(src: str, variables=PHI_VARS) -> Node:
    """Parse ``src`` into an expression tree.

    Parameters
    ----------
    src : str
        Expression text.
    variables : iterable of str
        Identifiers accepted as variables. Relations of the form
        ``H = Phi(t, v)`` use ``("t", "v")``; relations solved for the
        first principal curvature use ``("k2", "v")``.

    Raises
    ------
    ParseError
        With the byte offset of the offending token.
    UnknownIdentifier
        For names that are neither variables nor known functions.
    """
    p = _Parser(src, variables)
    node = p.expr()
    kind, val, off = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected trailing {val!r}", off)
    return node


def to_source(node: Node) -> str:
    """Fully parenthesised text that parses back to the same tree."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_source(node.operand)})"
    if isinstance(node, Call):
        return f"{node.func}({to_source(node.arg)})"
    return f"({to_source(node.left)} {node.op} {to_source(node.right)})"


def free_variables(node: Node) -> frozenset:
    if isinstance(node, Var):
        return frozenset([node.name])
    if isinstance(node, Num):
        return frozenset()
    if isinstance(node, (Neg,)):
        return free_variables(node.operand)
    if isinstance(node, Call):
        return free_variables(node.arg)
    return free_variables(node.left) | free_variables(node.right)


def substitute(node: Node, name: str, repl: Node) -> Node:
    """Replace every occurrence of variable ``name`` by ``repl``."""
    if isinstance(node, Var):
        return repl if node.name == name else node
    if isinstance(node, Num):
        return node
    if isinstance(node, Neg):
        return Neg(substitute(node.operand, name, repl))
    if isinstance(node, Call):
        return Call(node.func, substitute(node.arg, name, repl))
    return BinOp(node.op, substitute(node.left, name, repl),
                 substitute(node.right, name, repl))


def _pow(a, b):
    try:
        r = a ** b
    except ZeroDivisionError as exc:
        raise EvalError("zero raised to a negative power") from exc
    except OverflowError as exc:
        raise EvalError("overflow in power") from exc
    if isinstance(r, complex):
        raise EvalError(f"non-real power {a!r}^{b!r}")
    return r


def _div(a, b):
    if b == 0:
        raise EvalError("division by zero")
    return a / b


_BINOPS = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": _div,
    "^": _pow,
}


def compile_expr(node: Node) -> Callable[[Mapping[str, float]], float]:
    """Turn a tree into a closure taking a variable mapping."""
    if isinstance(node, Num):
        c = node.value
        return lambda env: c
    if isinstance(node, Var):
        name = node.name
        return lambda env: env[name]
    if isinstance(node, Neg):
        f = compile_expr(node.operand)
        return lambda env: -f(env)
    if isinstance(node, Call):
        fn = FUNCTIONS[node.func]
        f = compile_expr(node.arg)
        return lambda env: fn(f(env))
    op = _BINOPS[node.op]
    fl, fr = compile_expr(node.left), compile_expr(node.right)
    return lambda env: op(fl(env), fr(env))


def evaluate(node: Node, **env: float) -> float:
    """Evaluate a tree; raises EvalError on domain problems or non-finite output."""
    try:
        val = float(compile_expr(node)(env))
    except KeyError as exc:
        raise EvalError(f"variable {exc.args[0]!r} has no value") from exc
    except (OverflowError, ValueError) as exc:
        raise EvalError(str(exc)) from exc
    if not math.isfinite(val):
        raise EvalError(f"non-finite value {val!r}")
    return val


class Compiled:
    """An expression bundled with its compiled evaluator."""

    __slots__ = ("node", "_fn", "source")

    def __init__(self, node: Node, source: str | None = None):
        self.node = node
        self._fn = compile_expr(node)
        self.source = source if source is not None else to_source(node)

    def __call__(self, **env: float) -> float:
        try:
            val = float(self._fn(env))
        except (OverflowError, ValueError) as exc:
            raise EvalError(str(exc)) from exc
        if not math.isfinite(val):
            raise EvalError(f"non-finite value {val!r}")
        return val

    def __eq__(self, other):
        return isinstance(other, Compiled) and other.node == self.node

    def __hash__(self):
        return hash(self.node)

    def __repr__(self):
        return f"Compiled({self.source!r})"
