"""
Recursive-descent parser and printer for workbench expressions.

Grammar:

    expr   := term (("+" | "-") term)*
    term   := factor (("*")? factor)*
    factor := "-" factor | integer | rational | "eta" | "E" | "(" expr ")"
            | "[" unit "]" | "<" unit ">" | "<<" units ">>" | "{" units "}" | "[[" units "]]"
    units  := unit ("," unit)*
    unit   := ("-")? (integer | rational | name)

Juxtaposition binds as multiplication. Names in unit position are resolved
against bindings at evaluation time.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from app.core.errors import ExpressionSyntaxError

UnitToken = Union[Fraction, str]


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Eta:
    pass


@dataclass(frozen=True)
class EConst:
    pass


@dataclass(frozen=True)
class Gen:
    unit: UnitToken


@dataclass(frozen=True)
class Form:
    unit: UnitToken


@dataclass(frozen=True)
class Pfister:
    units: Tuple[UnitToken, ...]


@dataclass(frozen=True)
class Milnor:
    units: Tuple[UnitToken, ...]


@dataclass(frozen=True)
class Bracket:
    units: Tuple[UnitToken, ...]


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


Node = Union[Num, Eta, EConst, Gen, Form, Pfister, Milnor, Bracket, Neg, BinOp]


# ---------------------------------------------------------------------------
# Tokens
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op><<|>>|\[\[|\]\]|[-−+*(),<>\[\]{}]))"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(src: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        match = _TOKEN.match(src, pos)
        if not match or match.end() == pos:
            start = pos + len(src[pos:]) - len(src[pos:].lstrip())
            raise ExpressionSyntaxError(f"Unexpected character {src[start]!r}", start)
        kind = match.lastgroup
        text = match.group(kind)
        if text == "−":
            text = "-"
        tokens.append(Token(kind, text, match.start(kind)))
        pos = match.end()
    tokens.append(Token("end", "", len(src)))
    return tokens


def _fraction(token: Token) -> Fraction:
    try:
        return Fraction(token.text)
    except ZeroDivisionError:
        raise ExpressionSyntaxError(f"Zero denominator in '{token.text}'", token.position)


class _Parser:
    def __init__(self, src: str):
        self.tokens = tokenize(src)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def expect(self, text: str) -> Token:
        if self.current.text != text:
            found = self.current.text or "end of input"
            raise ExpressionSyntaxError(f"Expected '{text}', found '{found}'", self.current.position)
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.current.kind != "end":
            raise ExpressionSyntaxError(f"Unexpected '{self.current.text}'", self.current.position)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.current.text in ("+", "-"):
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def _starts_factor(self) -> bool:
        token = self.current
        return token.kind in ("number", "name") or token.text in ("(", "[", "[[", "<", "<<", "{")

    def term(self) -> Node:
        node = self.factor()
        while True:
            if self.current.text == "*":
                self.advance()
            elif not self._starts_factor():
                return node
            node = BinOp("*", node, self.factor())

    def factor(self) -> Node:
        token = self.current
        if token.text == "-":
            self.advance()
            return Neg(self.factor())
        if token.kind == "number":
            self.advance()
            return Num(_fraction(token))
        if token.kind == "name":
            self.advance()
            if token.text == "eta":
                return Eta()
            if token.text == "E":
                return EConst()
            raise ExpressionSyntaxError(f"Unknown name '{token.text}' outside a symbol", token.position)
        if token.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if token.text == "[":
            self.advance()
            unit = self.unit()
            self.expect("]")
            return Gen(unit)
        if token.text == "<":
            self.advance()
            unit = self.unit()
            self.expect(">")
            return Form(unit)
        if token.text == "<<":
            self.advance()
            units = self.units()
            self.expect(">>")
            return Pfister(units)
        if token.text == "{":
            self.advance()
            units = self.units()
            self.expect("}")
            return Milnor(units)
        if token.text == "[[":
            self.advance()
            units = self.units()
            self.expect("]]")
            return Bracket(units)
        found = token.text or "end of input"
        raise ExpressionSyntaxError(f"Unexpected '{found}'", token.position)

    def units(self) -> Tuple[UnitToken, ...]:
        out = [self.unit()]
        while self.current.text == ",":
            self.advance()
            out.append(self.unit())
        return tuple(out)

    def unit(self) -> UnitToken:
        negative = False
        if self.current.text == "-":
            self.advance()
            negative = True
        token = self.current
        if token.kind == "number":
            self.advance()
            value = _fraction(token)
            return -value if negative else value
        if token.kind == "name":
            if negative:
                raise ExpressionSyntaxError(f"Cannot negate the name '{token.text}'", token.position)
            self.advance()
            return token.text
        found = token.text or "end of input"
        raise ExpressionSyntaxError(f"Expected a unit, found '{found}'", token.position)


def parse(src: str) -> Node:
    """
    Parse an expression into its AST.

    Raises:
        ExpressionSyntaxError: with the offending position
    """
    return _Parser(src).parse()


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------

def _unit(u: UnitToken) -> str:
    return u if isinstance(u, str) else str(u)


def _units(units: Tuple[UnitToken, ...]) -> str:
    return ",".join(_unit(u) for u in units)


def _factor(node: Node) -> str:
    if isinstance(node, BinOp):
        return f"({to_source(node)})"
    return to_source(node)


def to_source(node: Node) -> str:
    """Canonical text; parse(to_source(node)) == node."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Eta):
        return "eta"
    if isinstance(node, EConst):
        return "E"
    if isinstance(node, Gen):
        return f"[{_unit(node.unit)}]"
    if isinstance(node, Form):
        return f"<{_unit(node.unit)}>"
    if isinstance(node, Pfister):
        return f"<<{_units(node.units)}>>"
    if isinstance(node, Milnor):
        return "{" + _units(node.units) + "}"
    if isinstance(node, Bracket):
        return f"[[{_units(node.units)}]]"
    if isinstance(node, Neg):
        return "-" + _factor(node.operand)
    if node.op == "*":
        left = to_source(node.left) if _is_product_level(node.left) else f"({to_source(node.left)})"
        return f"{left} * {_factor(node.right)}"
    right = to_source(node.right)
    if isinstance(node.right, BinOp) and node.right.op in "+-":
        right = f"({right})"
    return f"{to_source(node.left)} {node.op} {right}"


def _is_product_level(node: Node) -> bool:
    return not (isinstance(node, BinOp) and node.op in "+-")


def parse_units(src: str) -> Tuple[UnitToken, ...]:
    """Parse a bare unit list such as '<1,1,-2>' or '1, 1, -2'."""
    text = src.strip()
    if text.startswith("<") and text.endswith(">"):
        text = text[1:-1]
    parser = _Parser(text)
    units = parser.units()
    if parser.current.kind != "end":
        raise ExpressionSyntaxError(f"Unexpected '{parser.current.text}'", parser.current.position)
    return units


def unit_value(u: UnitToken, bindings: Optional[dict] = None) -> Fraction:
    """Resolve a unit token against bindings."""
    if isinstance(u, Fraction):
        return u
    if bindings is None or u not in bindings:
        raise ExpressionSyntaxError(f"Unbound name '{u}'")
    return Fraction(bindings[u])
