"""Recursive-descent parser for f(x, y, p) expressions evaluated over jets.

Grammar (whitespace insensitive)::

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | power
    power    := primary ('^' exponent)?
    exponent := intlit ('^' exponent)?
    primary  := number | ident | ident '(' expr ')' | '(' expr ')'

so ``^`` binds tighter than unary minus (``-p^2`` is ``-(p^2)``) and is
right associative. Exponents are integer literals whose value lies in
[0, 12].
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Mapping, Optional, Set, Union

from ..core.errors import (
    DomainError,
    ExprSyntaxError,
    UnboundParameterError,
    UnknownIdentifierError,
)
from ..geometry.geometry import SecondOrderODE
from ..geometry.jet import FUNCTIONS, Jet

logger = logging.getLogger(__name__)

VARIABLES = ("x", "y", "p")
CONSTANTS = {"pi": math.pi}
MAX_EXPONENT = 12
MAX_DEPTH = 64  # each level costs several Python frames


# tree

@dataclass(frozen=True)
class Constant:
    value: float


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Parameter:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "neg" or a function name
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str  # + - * / ^
    left: "Expr"
    right: "Expr"


Expr = Union[Constant, Variable, Parameter, Unary, Binary]


# tokens

@dataclass(frozen=True)
class Token:
    kind: str  # number, int, ident, op, end
    text: str
    offset: int


_OPERATORS = set("+-*/^()")


def _byte_offset(source: str, index: int) -> int:
    return len(source[:index].encode("utf-8"))


class Tokenizer:
    """Splits source into tokens, tracking offsets."""

    def __init__(self, source: str):
        self.source = source

    def error(self, index: int, message: str) -> ExprSyntaxError:
        return ExprSyntaxError(_byte_offset(self.source, index), message)

    def tokens(self) -> List[Token]:
        src = self.source
        out: List[Token] = []
        i = 0
        n = len(src)
        while i < n:
            ch = src[i]
            if ch.isspace():
                i += 1
            elif ch in _OPERATORS:
                out.append(Token("op", ch, i))
                i += 1
            elif ch.isdigit() or (ch == "." and i + 1 < n and src[i + 1].isdigit()):
                i = self._number(i, out)
            elif ch.isascii() and (ch.isalpha() or ch == "_"):
                start = i
                while i < n and src[i].isascii() and (src[i].isalnum() or src[i] == "_"):
                    i += 1
                out.append(Token("ident", src[start:i], start))
            else:
                raise self.error(i, f"unexpected character {ch!r}")
        out.append(Token("end", "", n))
        return out

    def _number(self, i: int, out: List[Token]) -> int:
        src = self.source
        n = len(src)
        start = i
        while i < n and src[i].isdigit():
            i += 1
        integral = True
        if i < n and src[i] == ".":
            integral = False
            i += 1
            while i < n and src[i].isdigit():
                i += 1
        if i < n and src[i] in "eE":
            j = i + 1
            if j < n and src[j] in "+-":
                j += 1
            if j < n and src[j].isdigit():
                integral = False
                i = j
                while i < n and src[i].isdigit():
                    i += 1
        text = src[start:i]
        out.append(Token("int" if integral else "number", text, start))
        return i


# parser

class Parser:
    """Recursive-descent parser producing an Expr tree."""

    def __init__(self, source: str, parameters: Optional[Iterable[str]] = None):
        self.source = source
        self.parameters: Optional[Set[str]] = set(parameters) if parameters is not None else None
        self.tokens = Tokenizer(source).tokens()
        self.pos = 0
        self.depth = 0

    def error(self, token: Token, message: str) -> ExprSyntaxError:
        return ExprSyntaxError(_byte_offset(self.source, token.offset), message)

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def accept(self, text: str) -> bool:
        if self.current.kind == "op" and self.current.text == text:
            self.pos += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            found = self.current.text or "end of input"
            raise self.error(self.current, f"expected {text!r}, found {found!r}")

    def _enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error(self.current, "expression nested too deeply")

    def parse(self) -> Expr:
        if self.current.kind == "end":
            raise self.error(self.current, "empty expression")
        node = self.expr()
        if self.current.kind != "end":
            raise self.error(self.current, f"unexpected {self.current.text!r}")
        return node

    def expr(self) -> Expr:
        self._enter()
        node = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self.advance().text
            node = Binary(op, node, self.term())
        self.depth -= 1
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.current.kind == "op" and self.current.text in "*/":
            op = self.advance().text
            node = Binary(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.accept("-"):
            self._enter()
            node = Unary("neg", self.unary())
            self.depth -= 1
            return node
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.accept("^"):
            return Binary("^", base, Constant(float(self.exponent())))
        return base

    def exponent(self) -> int:
        self._enter()
        token = self.current
        if token.kind != "int":
            raise self.error(token, "exponent must be an integer literal")
        self.advance()
        try:
            value = int(token.text)
        except ValueError:
            raise self.error(token, "integer literal too long") from None
        if self.accept("^"):
            value = _bounded_power(value, self.exponent(), lambda m: self.error(token, m))
        if value > MAX_EXPONENT:
            raise self.error(token, f"exponent {value} outside [0, {MAX_EXPONENT}]")
        self.depth -= 1
        return value

    def primary(self) -> Expr:
        token = self.current
        if token.kind in ("int", "number"):
            self.advance()
            try:
                value = float(token.text)
            except ValueError:
                raise self.error(token, "malformed number") from None
            if not math.isfinite(value):
                raise self.error(token, "number out of range")
            return Constant(value)
        if token.kind == "ident":
            self.advance()
            name = token.text
            if self.current.kind == "op" and self.current.text == "(":
                if name not in FUNCTIONS:
                    raise UnknownIdentifierError(name, _byte_offset(self.source, token.offset))
                self.advance()
                argument = self.expr()
                self.expect(")")
                return Unary(name, argument)
            if name in FUNCTIONS:
                raise self.error(token, f"function {name!r} needs an argument")
            if name in VARIABLES:
                return Variable(name)
            if name in CONSTANTS:
                return Constant(CONSTANTS[name])
            if self.parameters is not None and name not in self.parameters:
                raise UnknownIdentifierError(name, _byte_offset(self.source, token.offset))
            return Parameter(name)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        found = token.text or "end of input"
        raise self.error(token, f"unexpected {found!r}")


def _bounded_power(base: int, exponent: int, fail) -> int:
    if base in (0, 1):
        return 1 if exponent == 0 else base
    if exponent == 0:
        return 1
    if base > MAX_EXPONENT or exponent > 4:
        raise fail("exponent outside [0, 12]")
    return base**exponent


def parse(source: str, parameters: Optional[Iterable[str]] = None) -> Expr:
    """Parse source into an Expr.

    Args:
        source: expression text in x, y, p and named parameters.
        parameters: if given, the only identifiers accepted as parameters.

    Raises:
        ExprSyntaxError: malformed input (carries a byte offset).
        UnknownIdentifierError: unknown function, or parameter not in ``parameters``.
    """
    return Parser(source, parameters).parse()


# evaluation

def parameters_of(node: Expr) -> Set[str]:
    """Names of all parameters in the tree."""
    if isinstance(node, Parameter):
        return {node.name}
    if isinstance(node, Unary):
        return parameters_of(node.operand)
    if isinstance(node, Binary):
        return parameters_of(node.left) | parameters_of(node.right)
    return set()


def evaluate(
    node: Expr, x: Jet, y: Jet, p: Jet, params: Mapping[str, float]
) -> Union[Jet, float]:
    """Evaluate the tree over jet scalars."""
    if isinstance(node, Constant):
        return node.value
    if isinstance(node, Variable):
        return {"x": x, "y": y, "p": p}[node.name]
    if isinstance(node, Parameter):
        if node.name not in params:
            raise UnboundParameterError(node.name)
        return float(params[node.name])
    if isinstance(node, Unary):
        value = evaluate(node.operand, x, y, p, params)
        if node.op == "neg":
            return -value
        return FUNCTIONS[node.op](value)
    left = evaluate(node.left, x, y, p, params)
    if node.op == "^":
        exponent = int(node.right.value)  # type: ignore[union-attr]
        return left**exponent if isinstance(left, Jet) else float(left) ** exponent
    right = evaluate(node.right, x, y, p, params)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if isinstance(left, Jet) or isinstance(right, Jet):
        return Jet._lift(left) / right
    if right == 0.0:
        raise DomainError("division", 0.0)
    return left / right


def to_geometry(
    expr: Expr, params: Optional[Mapping[str, float]] = None, name: Optional[str] = None
) -> SecondOrderODE:
    """Wrap a parsed tree as a path geometry.

    Raises:
        UnboundParameterError: a parameter of the tree has no value.
    """
    bound = {k: float(v) for k, v in (params or {}).items()}
    for parameter in sorted(parameters_of(expr)):
        if parameter not in bound:
            raise UnboundParameterError(parameter)

    def evaluator(x: Jet, y: Jet, p: Jet, values: Mapping[str, float]) -> Union[Jet, float]:
        return evaluate(expr, x, y, p, values)

    return SecondOrderODE(name or to_source(expr), evaluator, bound, "parsed expression")


def value_at(
    expr: Expr, x: float, y: float, p: float, params: Optional[Mapping[str, float]] = None
) -> float:
    """Plain value of the expression at a point."""
    out = evaluate(expr, Jet.constant(x), Jet.constant(y), Jet.constant(p), params or {})
    return out.value if isinstance(out, Jet) else float(out)


# printing

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}
_ATOM = 5


def _precedence(node: Expr) -> int:
    if isinstance(node, Binary):
        return _PRECEDENCE[node.op]
    if isinstance(node, Unary) and node.op == "neg":
        return _PRECEDENCE["neg"]
    return _ATOM


def _wrap(node: Expr, minimum: int) -> str:
    text = to_source(node)
    return text if _precedence(node) >= minimum else f"({text})"


def to_source(node: Expr) -> str:
    """Pretty-print a tree so that parse(to_source(t)) evaluates like t."""
    if isinstance(node, Constant):
        return repr(node.value)
    if isinstance(node, (Variable, Parameter)):
        return node.name
    if isinstance(node, Unary):
        if node.op == "neg":
            return f"-{_wrap(node.operand, _PRECEDENCE['neg'] + 1)}"
        return f"{node.op}({to_source(node.operand)})"
    if node.op == "^":
        return f"{_wrap(node.left, _ATOM)}^{int(node.right.value)}"  # type: ignore[union-attr]
    level = _PRECEDENCE[node.op]
    return f"{_wrap(node.left, level)} {node.op} {_wrap(node.right, level + 1)}"
