"""
Formal Z[F×]-combinations of symbols, and the maps defined on them.

A SymbolSum of kind BRACKET is a combination Σ c·⟨g⟩[[a_1, ..., a_n]] of
generators of S̃(F^n); of kind FREE it lives in the free module on the words
⟨a_1, ..., a_n⟩-f, where the tensor-algebra product concatenates words.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Mapping, Optional, Sequence, Tuple

from app.core.errors import InputError, SamplingError
from app.services.groupring import FieldSpec, GroupRingElem, Unit, UnitLike
from app.services.mwk import MWClass, gw_act, mw_word, mw_zero
from app.services.quadform import GWClass, gw_basis, gw_from_group_ring, gw_zero

logger = logging.getLogger(__name__)

Word = Tuple[Unit, ...]
Key = Tuple[Unit, Word]


class SymbolKind(str, Enum):
    BRACKET = "bracket"
    FREE = "free"


@dataclass(frozen=True)
class SymbolSum:
    """Σ c·⟨g⟩·w over words w of a fixed degree, in canonical term order."""

    field: FieldSpec
    degree: int
    terms: Tuple[Tuple[Key, int], ...] = ()
    kind: SymbolKind = SymbolKind.BRACKET

    @classmethod
    def from_mapping(
        cls, fld: FieldSpec, degree: int, coeffs: Mapping[Key, int], kind: SymbolKind = SymbolKind.BRACKET
    ) -> "SymbolSum":
        items = [(k, c) for k, c in coeffs.items() if c]
        items.sort(key=lambda kc: (fld.sort_key(kc[0][0]), tuple(fld.sort_key(a) for a in kc[0][1])))
        return cls(fld, degree, tuple(items), kind)

    @classmethod
    def zero(cls, fld: FieldSpec, degree: int, kind: SymbolKind = SymbolKind.BRACKET) -> "SymbolSum":
        return cls(fld, degree, (), kind)

    @classmethod
    def generator(
        cls,
        fld: FieldSpec,
        entries: Sequence[UnitLike],
        g: UnitLike = 1,
        kind: SymbolKind = SymbolKind.BRACKET,
    ) -> "SymbolSum":
        """⟨g⟩[[a_1, ..., a_n]] (or ⟨g⟩⟨a_1, ..., a_n⟩-f)."""
        word = tuple(fld.unit(a) for a in entries)
        return cls(fld, len(word), (((fld.unit(g), word), 1),), kind)

    def as_dict(self) -> Dict[Key, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "SymbolSum") -> None:
        self.field.check_same(other.field)
        if self.degree != other.degree or self.kind != other.kind:
            raise InputError(
                f"Cannot add symbols of degree {self.degree} ({self.kind.value}) "
                f"and degree {other.degree} ({other.kind.value})"
            )

    def __add__(self, other: "SymbolSum") -> "SymbolSum":
        self._check(other)
        out = self.as_dict()
        for k, c in other.terms:
            out[k] = out.get(k, 0) + c
        return SymbolSum.from_mapping(self.field, self.degree, out, self.kind)

    def __neg__(self) -> "SymbolSum":
        return self.scale(-1)

    def __sub__(self, other: "SymbolSum") -> "SymbolSum":
        return self + (-other)

    def scale(self, k: int) -> "SymbolSum":
        return SymbolSum.from_mapping(self.field, self.degree, {key: c * k for key, c in self.terms}, self.kind)

    def translate(self, h: Unit) -> "SymbolSum":
        """⟨h⟩·self."""
        fld = self.field
        return SymbolSum.from_mapping(
            fld, self.degree, {(fld.mul(h, g), w): c for (g, w), c in self.terms}, self.kind
        )

    def act(self, alpha: GroupRingElem) -> "SymbolSum":
        """Z[F×]-module action."""
        self.field.check_same(alpha.field)
        out = SymbolSum.zero(self.field, self.degree, self.kind)
        for h, k in alpha.terms:
            out = out + self.translate(h).scale(k)
        return out

    def concat(self, other: "SymbolSum") -> "SymbolSum":
        """Tensor-algebra product ⟨g⟩w · ⟨h⟩w' = ⟨gh⟩ww'."""
        self.field.check_same(other.field)
        fld = self.field
        out: Dict[Key, int] = {}
        for (g, w), c in self.terms:
            for (h, w2), c2 in other.terms:
                key = (fld.mul(g, h), w + w2)
                out[key] = out.get(key, 0) + c * c2
        return SymbolSum.from_mapping(fld, self.degree + other.degree, out, self.kind)

    def as_bracket(self) -> "SymbolSum":
        """p_n: ⟨a⟩-f ↦ [[a]]."""
        return SymbolSum(self.field, self.degree, self.terms, SymbolKind.BRACKET)

    def render(self) -> str:
        if not self.terms:
            return "0"
        fld = self.field
        opening, closing = ("[[", "]]") if self.kind == SymbolKind.BRACKET else ("<", ">-f")
        parts = []
        for (g, w), c in self.terms:
            body = opening + ",".join(fld.render(a) for a in w) + closing
            if g != fld.one:
                body = f"<{fld.render(g)}>{body}"
            if c == -1:
                body = "-" + body
            elif c != 1:
                body = f"{c}*{body}"
            parts.append(body)
        return " + ".join(parts).replace("+ -", "- ")


def symbol_e(fld: FieldSpec) -> SymbolSum:
    """E = [[-1, 1]]."""
    return SymbolSum.generator(fld, [fld.minus_one, fld.one])


def default_auxiliary(fld: FieldSpec, n: int) -> Tuple[Unit, ...]:
    """The auxiliary constants b_i = i; needs p > n over F_p."""
    if fld.is_prime_field and fld.p <= n:
        raise SamplingError(f"F_{fld.p} has fewer than {n} distinct units for b_i = i")
    return tuple(fld.unit(i) for i in range(1, n + 1))


def check_auxiliary(fld: FieldSpec, b: Sequence[UnitLike], n: int) -> Tuple[Unit, ...]:
    units = tuple(fld.unit(x) for x in b)
    if len(units) != n:
        raise InputError(f"Expected {n} auxiliary constants, got {len(units)}")
    if len(set(units)) != n:
        raise InputError(f"Auxiliary constants {[fld.render(u) for u in units]} are not distinct")
    return units


def face_word(fld: FieldSpec, a: Sequence[Unit], b: Sequence[Unit], i: int) -> Word:
    """w_i = (a_j(b_j - b_i) for j != i, then b_i), with i counted from 1."""
    bi = b[i - 1]
    word = [fld.mul(a[j], fld.sub(b[j], bi)) for j in range(len(a)) if j != i - 1]
    return tuple(word) + (bi,)


def relation_instance(
    fld: FieldSpec,
    a: Sequence[UnitLike],
    b: Optional[Sequence[UnitLike]] = None,
    kind: SymbolKind = SymbolKind.BRACKET,
) -> SymbolSum:
    """
    [[b·a]] - [[a]] - Σ_i (-1)^{n+i} ⟨(-1)^{n+i} a_i⟩ [[w_i]], which vanishes in S̃(F^n).

    b·a is the coordinatewise product and the b_i must be distinct.
    """
    units = tuple(fld.unit(x) for x in a)
    n = len(units)
    if n < 1:
        raise InputError("relation_instance: degree must be positive")
    bs = default_auxiliary(fld, n) if b is None else check_auxiliary(fld, b, n)
    out: Dict[Key, int] = {}
    one = fld.one

    def bump(key: Key, c: int) -> None:
        out[key] = out.get(key, 0) + c

    bump((one, tuple(fld.mul(x, y) for x, y in zip(bs, units))), 1)
    bump((one, units), -1)
    for i in range(1, n + 1):
        sign = -1 if (n + i) % 2 else 1
        g = units[i - 1] if sign == 1 else fld.neg(units[i - 1])
        bump((g, face_word(fld, units, bs, i)), -sign)
    return SymbolSum.from_mapping(fld, n, out, kind)


# ---------------------------------------------------------------------------
# Maps out of S̃
# ---------------------------------------------------------------------------

def _signed(fld: FieldSpec, a: Unit, exponent: int) -> Unit:
    return fld.neg(a) if exponent % 2 else a


def generator_determinant_sum(fld: FieldSpec, word: Word) -> GroupRingElem:
    """D_n([[a]]) = Σ_i (-1)^{i+1}⟨(-1)^{n-i} a_i⟩ + (-1)^n⟨1⟩."""
    n = len(word)
    coeffs: Dict[Unit, int] = {}
    for i, a in enumerate(word, start=1):
        g = _signed(fld, a, n - i)
        coeffs[g] = coeffs.get(g, 0) + (1 if i % 2 else -1)
    coeffs[fld.one] = coeffs.get(fld.one, 0) + (-1 if n % 2 else 1)
    return GroupRingElem.from_mapping(fld, coeffs)


def d_map(x: SymbolSum) -> GroupRingElem:
    """D_n: S̃(F^n) → Z[F×], extended Z[F×]-linearly from the generators."""
    fld = x.field
    out = GroupRingElem.zero(fld)
    for (g, w), c in x.terms:
        out = out + generator_determinant_sum(fld, w).translate(g) * c
    return out


def t_map(x: SymbolSum) -> MWClass:
    """T_n: ⟨g⟩[[a_1, ..., a_n]] ↦ ⟨g⟩[a_1]⋯[a_n] in K^MW_n(F)."""
    fld = x.field
    by_word: Dict[Word, Dict[Unit, int]] = {}
    for (g, w), c in x.terms:
        coeffs = by_word.setdefault(w, {})
        coeffs[g] = coeffs.get(g, 0) + c
    out = mw_zero(fld, x.degree)
    for w, coeffs in by_word.items():
        alpha = GroupRingElem.from_mapping(fld, coeffs)
        if not alpha.is_zero():
            out = out + gw_act(gw_from_group_ring(alpha), mw_word(fld, w))
    return out


def phi_map(x: SymbolSum) -> GWClass:
    """S̃(F^2) → GW(F), ⟨g⟩[[a, b]] ↦ ⟨gab⟩."""
    if x.degree != 2:
        raise InputError(f"phi_map is defined on degree 2, got {x.degree}")
    fld = x.field
    out = gw_zero(fld)
    for (g, (a, b)), c in x.terms:
        out = out + gw_basis(fld, fld.prod((g, a, b))) * c
    return out


@dataclass(frozen=True)
class GradedGroupRingElem:
    """α·x^n in Z[F×][x]."""

    coefficient: GroupRingElem
    degree: int

    def render(self) -> str:
        return f"({self.coefficient.render()})·x^{self.degree}"


def pi_map(x: SymbolSum) -> GradedGroupRingElem:
    """Π: ⟨g⟩⟨a_1, ..., a_n⟩-f ↦ ⟨g·a_1⋯a_n⟩xⁿ."""
    fld = x.field
    coeffs: Dict[Unit, int] = {}
    for (g, w), c in x.terms:
        u = fld.mul(g, fld.prod(w))
        coeffs[u] = coeffs.get(u, 0) + c
    return GradedGroupRingElem(GroupRingElem.from_mapping(fld, coeffs), x.degree)


def free_relation(fld: FieldSpec, n: int, b: Optional[Sequence[UnitLike]] = None) -> SymbolSum:
    """R_b: the relation instance with a = (1, ..., 1) in the free symbol module."""
    return relation_instance(fld, [fld.one] * n, b, kind=SymbolKind.FREE)


def symbol_l(fld: FieldSpec, x: UnitLike) -> SymbolSum:
    """L(x) = ⟨-1⟩⟨1-x, 1⟩-f - ⟨x⟩⟨1-1/x, 1/x⟩-f + ⟨1, 1⟩-f."""
    u = fld.unit(x)
    one_minus = fld.one_minus(u)
    if one_minus is None:
        raise InputError("L(x) needs x != 1")
    inv = fld.inv(u)
    free = SymbolKind.FREE
    return (
        SymbolSum.generator(fld, [one_minus, fld.one], fld.minus_one, free)
        - SymbolSum.generator(fld, [fld.one_minus(inv), inv], u, free)
        + SymbolSum.generator(fld, [fld.one, fld.one], fld.one, free)
    )
