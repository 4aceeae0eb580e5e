"""
Evaluate parsed expressions.

The leaves decide the target algebra: [[...]] or E evaluate in the formal S̃
module with ∗ as product, {...} in Milnor K-theory, and everything else in
Milnor-Witt K-theory.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple, Union

from app.core.errors import InputError
from app.services.expression.parser import (
    BinOp,
    Bracket,
    EConst,
    Eta,
    Form,
    Gen,
    Milnor,
    Neg,
    Node,
    Num,
    Pfister,
    UnitToken,
    parse,
    unit_value,
)
from app.services.gpcomplex.product import star_formula
from app.services.gpcomplex.stilde import model_for
from app.services.gpcomplex.symbols import SymbolSum, d_map, symbol_e, t_map
from app.services.groupring import FieldSpec, GroupRingElem, Unit, gr_basis, pfister_product
from app.services.milnor import MilnorClass, milnor_normalize
from app.services.mwk import LetterKind, MWClass, MWExpr, mwk_normalize

logger = logging.getLogger(__name__)

Bindings = Mapping[str, Union[int, Fraction, str]]


class Target(str, Enum):
    MW = "mwk"
    MILNOR = "milnor"
    STILDE = "stilde"


def target_of(node: Node) -> Target:
    kinds = set()

    def walk(n: Node) -> None:
        if isinstance(n, (Bracket, EConst)):
            kinds.add(Target.STILDE)
        elif isinstance(n, Milnor):
            kinds.add(Target.MILNOR)
        elif isinstance(n, (Gen, Eta)):
            kinds.add(Target.MW)
        elif isinstance(n, Neg):
            walk(n.operand)
        elif isinstance(n, BinOp):
            walk(n.left)
            walk(n.right)

    walk(node)
    if len(kinds) > 1:
        raise InputError(f"Expression mixes {sorted(k.value for k in kinds)} symbols")
    return kinds.pop() if kinds else Target.MW


def _integer(node: Num) -> int:
    if node.value.denominator != 1:
        raise InputError(f"Coefficient {node.value} is not an integer")
    return int(node.value)


class _Evaluator:
    def __init__(self, fld: FieldSpec, bindings: Optional[Bindings]):
        self.field = fld
        self.bindings = dict(bindings or {})

    def unit(self, u: UnitToken) -> Unit:
        return self.field.unit(unit_value(u, self.bindings))

    def units(self, units: Tuple[UnitToken, ...]) -> Tuple[Unit, ...]:
        return tuple(self.unit(u) for u in units)

    # -- Milnor-Witt -------------------------------------------------------

    def mw(self, node: Node) -> MWExpr:
        fld = self.field
        if isinstance(node, Num):
            return MWExpr.integer(fld, _integer(node))
        if isinstance(node, Eta):
            return MWExpr.letter(fld, LetterKind.ETA)
        if isinstance(node, Gen):
            return MWExpr.letter(fld, LetterKind.GEN, [self.unit(node.unit)])
        if isinstance(node, Form):
            return MWExpr.letter(fld, LetterKind.FORM, [self.unit(node.unit)])
        if isinstance(node, Pfister):
            return MWExpr.letter(fld, LetterKind.PFISTER, self.units(node.units))
        if isinstance(node, Neg):
            return -self.mw(node.operand)
        if isinstance(node, BinOp):
            left, right = self.mw(node.left), self.mw(node.right)
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            return left * right
        raise InputError(f"{type(node).__name__} has no Milnor-Witt meaning")

    # -- Milnor ------------------------------------------------------------

    def milnor(self, node: Node) -> Dict[Tuple[Unit, ...], int]:
        if isinstance(node, Num):
            return {(): _integer(node)}
        if isinstance(node, Milnor):
            return {self.units(node.units): 1}
        if isinstance(node, Neg):
            return {k: -c for k, c in self.milnor(node.operand).items()}
        if isinstance(node, BinOp):
            left, right = self.milnor(node.left), self.milnor(node.right)
            if node.op == "*":
                out: Dict[Tuple[Unit, ...], int] = {}
                for u, c in left.items():
                    for v, d in right.items():
                        out[u + v] = out.get(u + v, 0) + c * d
                return out
            sign = 1 if node.op == "+" else -1
            out = dict(left)
            for k, c in right.items():
                out[k] = out.get(k, 0) + sign * c
            return out
        raise InputError(f"{type(node).__name__} has no Milnor K-theory meaning")

    # -- S̃ ----------------------------------------------------------------

    def stilde(self, node: Node) -> Union[SymbolSum, GroupRingElem]:
        fld = self.field
        if isinstance(node, Num):
            return GroupRingElem.scalar(fld, _integer(node))
        if isinstance(node, Form):
            return gr_basis(fld, self.unit(node.unit))
        if isinstance(node, Pfister):
            return pfister_product(fld, self.units(node.units))
        if isinstance(node, Bracket):
            return SymbolSum.generator(fld, self.units(node.units))
        if isinstance(node, EConst):
            return symbol_e(fld)
        if isinstance(node, Neg):
            return -self.stilde(node.operand)
        if isinstance(node, BinOp):
            left, right = self.stilde(node.left), self.stilde(node.right)
            if node.op == "*":
                if isinstance(left, GroupRingElem) and isinstance(right, GroupRingElem):
                    return left * right
                if isinstance(left, GroupRingElem):
                    return right.act(left)
                if isinstance(right, GroupRingElem):
                    return left.act(right)
                return star_formula(left, right)
            if type(left) is not type(right):
                raise InputError("Cannot add a group ring scalar to a [[...]] symbol")
            return left + right if node.op == "+" else left - right
        raise InputError(f"{type(node).__name__} has no meaning in S̃")


@dataclass(frozen=True)
class Evaluation:
    """Normal form of an expression in its target algebra."""

    target: Target
    field: FieldSpec
    value: Union[MWClass, MilnorClass, SymbolSum]

    def to_dict(self, check_model: bool = False) -> Dict[str, object]:
        out: Dict[str, object] = {"target": self.target.value, "field": self.field.label}
        if isinstance(self.value, SymbolSum):
            out["degree"] = self.value.degree
            out["symbols"] = self.value.render()
            out["d_image"] = d_map(self.value).render()
            out["t_image"] = t_map(self.value).render()
            if check_model:
                out["is_zero"] = model_for(self.field, self.value.degree).is_zero(self.value)
        else:
            out.update(self.value.to_dict())
            out["normal_form"] = self.value.render()
        return out

    def render(self) -> str:
        return self.value.render()


def evaluate(node: Node, fld: FieldSpec, bindings: Optional[Bindings] = None) -> Evaluation:
    """Normalize an AST over fld."""
    target = target_of(node)
    ev = _Evaluator(fld, bindings)
    if target == Target.MILNOR:
        terms = [(c, entries) for entries, c in ev.milnor(node).items()]
        if not terms:
            raise InputError("Empty Milnor combination has no degree")
        value: Union[MWClass, MilnorClass, SymbolSum] = milnor_normalize(terms, fld)
    elif target == Target.STILDE:
        result = ev.stilde(node)
        if isinstance(result, GroupRingElem):
            raise InputError("Expression has no [[...]] symbol")
        value = result
    else:
        value = mwk_normalize(ev.mw(node))
    logger.debug(f"Evaluator: {target.value} normal form {value.render()}")
    return Evaluation(target=target, field=fld, value=value)


def normalize(src: str, fld: FieldSpec, bindings: Optional[Bindings] = None) -> Evaluation:
    return evaluate(parse(src), fld, bindings)
