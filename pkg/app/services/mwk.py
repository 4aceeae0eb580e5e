"""
Milnor-Witt K-theory K^MW_n(F) as the fiber product K^M_n ×_{i^n} I^n.

A class of degree n >= 0 is a pair (Milnor class, Witt class in I^n) whose
images in I^n/I^{n+1} agree. In negative degrees only the Witt part is kept,
since η-multiplication identifies K^MW_{-n} with W(F). Degree 0 is GW(F),
with the Milnor part carrying the rank.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

from app.core.config import settings
from app.core.errors import InputError, InvariantViolationError
from app.services.groupring import FieldSpec, Unit, UnitLike
from app.services.milnor import MilnorClass, milnor_symbol, milnor_zero, mod2_to_in
from app.services.quadform import (
    GWClass,
    WittClass,
    in_fundamental_power,
    witt_basis,
    witt_one,
    witt_pfister,
    witt_zero,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MWClass:
    """Element of K^MW_n(F) in normal form."""

    degree: int
    milnor: Optional[MilnorClass]
    witt: WittClass

    @property
    def field(self) -> FieldSpec:
        return self.witt.field

    def is_zero(self) -> bool:
        return self.witt.is_zero and (self.milnor is None or self.milnor.is_zero())

    def check(self) -> "MWClass":
        """Raise InvariantViolationError unless the fiber-product condition holds."""
        if self.degree < 0:
            if self.milnor is not None:
                raise InvariantViolationError(f"MWClass: degree {self.degree} carries a Milnor part")
            return self
        if self.milnor is None or self.milnor.degree != self.degree:
            raise InvariantViolationError(f"MWClass: missing Milnor part in degree {self.degree}")
        if not in_fundamental_power(self.witt, self.degree):
            raise InvariantViolationError(f"MWClass: Witt part {self.witt.render()} not in I^{self.degree}")
        if not mod2_to_in(self.milnor).contains(self.witt):
            raise InvariantViolationError(
                f"MWClass: Milnor part {self.milnor.render()} and Witt part "
                f"{self.witt.render()} disagree in I^{self.degree}/I^{self.degree + 1}"
            )
        return self

    def _checked(self) -> "MWClass":
        return self.check() if settings.CHECK_INVARIANTS else self

    def _coerce(self, other) -> "MWClass":
        if isinstance(other, int):
            if self.degree != 0:
                raise InputError(f"Cannot add an integer to a degree-{self.degree} class")
            return mw_integer(self.field, other)
        if isinstance(other, GWClass):
            return mw_from_gw(other)
        if not isinstance(other, MWClass):
            raise InputError(f"Cannot combine a Milnor-Witt class with {type(other).__name__}")
        self.field.check_same(other.field)
        return other

    def __add__(self, other) -> "MWClass":
        other = self._coerce(other)
        if self.degree != other.degree:
            raise InputError(f"Cannot add classes of degrees {self.degree} and {other.degree}")
        milnor = None if self.milnor is None else self.milnor + other.milnor
        return MWClass(self.degree, milnor, self.witt + other.witt)._checked()

    __radd__ = __add__

    def __neg__(self) -> "MWClass":
        milnor = None if self.milnor is None else -self.milnor
        return MWClass(self.degree, milnor, -self.witt)

    def __sub__(self, other) -> "MWClass":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MWClass":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MWClass":
        if isinstance(other, int):
            return self.scale(other)
        return mwk_mul(self, self._coerce(other))

    def __rmul__(self, other) -> "MWClass":
        if isinstance(other, int):
            return self.scale(other)
        return mwk_mul(self._coerce(other), self)

    def scale(self, k: int) -> "MWClass":
        milnor = None if self.milnor is None else self.milnor.scale(k)
        return MWClass(self.degree, milnor, self.witt.scale(k))

    def as_gw(self) -> GWClass:
        if self.degree != 0:
            raise InputError(f"Only degree-0 classes are GW classes, got degree {self.degree}")
        return GWClass(self.milnor.data, self.witt)

    def to_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {
            "degree": self.degree,
            "milnor": None if self.milnor is None else self.milnor.to_dict(),
            "witt": self.witt.to_dict(),
        }
        if self.degree == 0:
            out["rank"] = self.milnor.data
        return out

    def render(self) -> str:
        if self.is_zero():
            return "0"
        if self.degree == 0:
            return f"GW(rank {self.milnor.data}, {self.witt.render()})"
        if self.milnor is None:
            return f"η^{-self.degree}·{self.witt.render()}"
        return f"({self.milnor.render()} | {self.witt.render()})"


def mw_zero(fld: FieldSpec, n: int) -> MWClass:
    return MWClass(n, milnor_zero(fld, n) if n >= 0 else None, witt_zero(fld))


def mw_integer(fld: FieldSpec, k: int) -> MWClass:
    """k·1 in K^MW_0 = GW(F)."""
    return MWClass(0, MilnorClass(fld, 0, k), witt_one(fld).scale(k))


def mw_gen(fld: FieldSpec, a: UnitLike) -> MWClass:
    """[a] ↦ ({a}, ⟨⟨a⟩⟩)."""
    u = fld.unit(a)
    return MWClass(1, milnor_symbol(fld, [u]), witt_pfister(fld, [u]))


def mw_eta(fld: FieldSpec) -> MWClass:
    return MWClass(-1, None, witt_one(fld))


def mw_form(fld: FieldSpec, a: UnitLike) -> MWClass:
    """⟨a⟩ = η[a] + 1."""
    return MWClass(0, MilnorClass(fld, 0, 1), witt_basis(fld, a))


def mw_pfister(fld: FieldSpec, entries: Iterable[UnitLike]) -> MWClass:
    """⟨⟨a_1, ..., a_k⟩⟩ as a degree-0 class; rank 0 unless k = 0."""
    units = [fld.unit(a) for a in entries]
    if not units:
        return mw_integer(fld, 1)
    return MWClass(0, MilnorClass(fld, 0, 0), witt_pfister(fld, units))


def mw_from_gw(g: GWClass) -> MWClass:
    return MWClass(0, MilnorClass(g.field, 0, g.rank), g.witt)


def mw_hyperbolic(fld: FieldSpec) -> MWClass:
    """h = η[-1] + 2."""
    return mw_eta(fld) * mw_gen(fld, fld.minus_one) + 2


def mw_word(fld: FieldSpec, entries: Sequence[UnitLike]) -> MWClass:
    """[a_1][a_2]⋯[a_n]; the empty word is 1."""
    out = mw_integer(fld, 1)
    for a in entries:
        out = out * mw_gen(fld, a)
    return out


def mwk_mul(x: MWClass, y: MWClass) -> MWClass:
    """Componentwise product; the Milnor part vanishes when a factor has negative degree."""
    x.field.check_same(y.field)
    degree = x.degree + y.degree
    if degree < 0:
        milnor = None
    elif x.milnor is None or y.milnor is None:
        milnor = milnor_zero(x.field, degree)
    else:
        milnor = x.milnor * y.milnor
    return MWClass(degree, milnor, x.witt * y.witt)._checked()


def gw_act(g: GWClass, x: MWClass) -> MWClass:
    """GW(F)-module action: the rank acts on the Milnor part, the Witt class on the Witt part."""
    g.field.check_same(x.field)
    milnor = None if x.milnor is None else x.milnor.scale(g.rank)
    return MWClass(x.degree, milnor, g.witt * x.witt)._checked()


# ---------------------------------------------------------------------------
# Formal expressions
# ---------------------------------------------------------------------------

class LetterKind(str, Enum):
    """Letters of a Milnor-Witt word."""
    GEN = "gen"
    ETA = "eta"
    FORM = "form"
    PFISTER = "pfister"


@dataclass(frozen=True)
class MWLetter:
    kind: LetterKind
    entries: Tuple[Unit, ...] = ()

    @property
    def degree(self) -> int:
        if self.kind == LetterKind.GEN:
            return 1
        if self.kind == LetterKind.ETA:
            return -1
        return 0

    def render(self, fld: FieldSpec) -> str:
        body = ",".join(fld.render(a) for a in self.entries)
        if self.kind == LetterKind.GEN:
            return f"[{body}]"
        if self.kind == LetterKind.ETA:
            return "eta"
        if self.kind == LetterKind.FORM:
            return f"<{body}>"
        return f"<<{body}>>"


Word = Tuple[MWLetter, ...]


@dataclass(frozen=True)
class MWExpr:
    """Formal integer combination of words in [a], η, ⟨a⟩ and ⟨⟨a, ...⟩⟩."""

    field: FieldSpec
    terms: Tuple[Tuple[int, Word], ...] = ()

    @classmethod
    def letter(cls, fld: FieldSpec, kind: LetterKind, entries: Iterable[UnitLike] = ()) -> "MWExpr":
        units = tuple(fld.unit(a) for a in entries)
        if kind in (LetterKind.GEN, LetterKind.FORM) and len(units) != 1:
            raise InputError(f"{kind.value} takes exactly one unit")
        if kind == LetterKind.ETA and units:
            raise InputError("eta takes no entries")
        return cls(fld, ((1, (MWLetter(kind, units),)),))

    @classmethod
    def integer(cls, fld: FieldSpec, k: int) -> "MWExpr":
        return cls(fld, ((k, ()),)) if k else cls(fld)

    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted({sum(letter.degree for letter in word) for _, word in self.terms}))

    def _coerce(self, other) -> "MWExpr":
        if isinstance(other, int):
            return MWExpr.integer(self.field, other)
        self.field.check_same(other.field)
        return other

    def __add__(self, other) -> "MWExpr":
        other = self._coerce(other)
        return MWExpr(self.field, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> "MWExpr":
        return MWExpr(self.field, tuple((-c, w) for c, w in self.terms))

    def __sub__(self, other) -> "MWExpr":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "MWExpr":
        if isinstance(other, int):
            return MWExpr(self.field, tuple((c * other, w) for c, w in self.terms if c * other))
        other = self._coerce(other)
        terms = tuple((c * d, u + v) for c, u in self.terms for d, v in other.terms if c * d)
        return MWExpr(self.field, terms)

    __rmul__ = __mul__

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for c, word in self.terms:
            body = "*".join(letter.render(self.field) for letter in word)
            if not body:
                text = str(abs(c))
            else:
                text = body if abs(c) == 1 else f"{abs(c)}*{body}"
            pieces.append(("-" if c < 0 else "+", text))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        return out + "".join(f" {s} {t}" for s, t in pieces[1:])


def _letter_class(fld: FieldSpec, letter: MWLetter) -> MWClass:
    if letter.kind == LetterKind.GEN:
        return mw_gen(fld, letter.entries[0])
    if letter.kind == LetterKind.ETA:
        return mw_eta(fld)
    if letter.kind == LetterKind.FORM:
        return mw_form(fld, letter.entries[0])
    return mw_pfister(fld, letter.entries)


def mwk_normalize(expr: MWExpr, degree: Optional[int] = None) -> MWClass:
    """
    Normal form of a homogeneous expression.

    Args:
        expr: formal combination of words
        degree: degree of the result, required for the empty expression

    Returns:
        MWClass of the common degree

    Raises:
        InputError: words of different degrees, or an empty expression without a degree
    """
    degrees = expr.degrees()
    if len(degrees) > 1:
        raise InputError(f"mwk_normalize: mixed degrees {list(degrees)}")
    if degrees:
        if degree is not None and degree != degrees[0]:
            raise InputError(f"mwk_normalize: expression has degree {degrees[0]}, expected {degree}")
        degree = degrees[0]
    elif degree is None:
        raise InputError("mwk_normalize: the empty expression needs an explicit degree")
    out = mw_zero(expr.field, degree)
    for coefficient, word in expr.terms:
        value = mw_integer(expr.field, 1)
        for letter in word:
            value = value * _letter_class(expr.field, letter)
        out = out + value.scale(coefficient)
    return out


# ---------------------------------------------------------------------------
# Short exact sequences 0 → I^{n+1} → K^MW_n → K^M_n → 0 and 0 → 2K^M_n → K^MW_n → I^n → 0
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SesMaps:
    """The four maps of the two exact sequences in a fixed degree n."""

    field: FieldSpec
    n: int

    def _degree(self, x: MWClass) -> None:
        if x.degree != self.n:
            raise InputError(f"Expected a class of degree {self.n}, got {x.degree}")

    def incl_pfister(self, w: Union[WittClass, GWClass]) -> MWClass:
        """I^{n+1} → K^MW_n, ⟨⟨a_1, ..., a_{n+1}⟩⟩ ↦ η[a_1]⋯[a_{n+1}]."""
        witt = w.witt if isinstance(w, GWClass) else w
        self.field.check_same(witt.field)
        if not in_fundamental_power(witt, max(self.n + 1, 0)):
            raise InputError(f"{witt.render()} is not in I^{self.n + 1}")
        milnor = milnor_zero(self.field, self.n) if self.n >= 0 else None
        return MWClass(self.n, milnor, witt)._checked()

    def incl_pfister_symbol(self, entries: Sequence[UnitLike]) -> MWClass:
        if len(entries) != self.n + 1:
            raise InputError(f"incl_pfister in degree {self.n} takes {self.n + 1} entries")
        return mw_eta(self.field) * mw_word(self.field, entries)

    def proj_milnor(self, x: MWClass) -> MilnorClass:
        self._degree(x)
        if x.milnor is None:
            raise InputError(f"K^M_{self.n} is not defined in negative degree")
        return x.milnor

    def incl_2milnor(self, c: MilnorClass) -> MWClass:
        """2K^M_n → K^MW_n, 2{a_1, ..., a_n} ↦ h[a_1]⋯[a_n]."""
        self.field.check_same(c.field)
        if c.degree != self.n:
            raise InputError(f"Expected a Milnor class of degree {self.n}, got {c.degree}")
        if not mod2_to_in(c).contains(witt_zero(self.field)):
            raise InputError(f"{c.render()} is not divisible by 2 in K^M_{self.n}")
        return MWClass(self.n, c, witt_zero(self.field))._checked()

    def proj_ipower(self, x: MWClass) -> WittClass:
        self._degree(x)
        return x.witt


def ses_maps(fld: FieldSpec, n: int) -> SesMaps:
    return SesMaps(fld, n)
