"""
Coefficient fields and the integral group ring Z[F×].

Fields are odd prime fields F_p and the rationals. A unit of F_p is its
residue in 1..p-1; a unit of Q is a RationalUnit stored in factored form.
"""
import logging
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from sympy import factorint, isprime, legendre_symbol

from app.core.errors import FieldMismatchError, InputError

logger = logging.getLogger(__name__)


@lru_cache(maxsize=8192)
def _factor(n: int) -> Tuple[Tuple[int, int], ...]:
    return tuple(sorted(factorint(n).items())) if n > 1 else ()


@dataclass(frozen=True)
class RationalUnit:
    """Nonzero rational as sign and prime exponents."""

    sign: int
    factors: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def from_fraction(cls, value: Fraction) -> "RationalUnit":
        if value == 0:
            raise InputError("0 is not a unit of Q")
        exps: Dict[int, int] = {}
        for q, e in _factor(abs(value.numerator)):
            exps[q] = exps.get(q, 0) + e
        for q, e in _factor(value.denominator):
            exps[q] = exps.get(q, 0) - e
        return cls(1 if value > 0 else -1, tuple(sorted((q, e) for q, e in exps.items() if e)))

    @property
    def value(self) -> Fraction:
        num, den = 1, 1
        for q, e in self.factors:
            if e > 0:
                num *= q**e
            else:
                den *= q ** (-e)
        return Fraction(self.sign * num, den)

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(q for q, _ in self.factors)

    def valuation(self, q: int) -> int:
        for prime, e in self.factors:
            if prime == q:
                return e
        return 0

    def unit_part_mod(self, q: int) -> int:
        """Residue mod q of self / q^v_q(self)."""
        out = self.sign % q
        for prime, e in self.factors:
            if prime != q:
                out = out * pow(prime, e, q) % q
        return out

    def squarefree(self) -> int:
        """Square-class representative: squarefree integer."""
        out = self.sign
        for q, e in self.factors:
            if e % 2:
                out *= q
        return out

    def __mul__(self, other: "RationalUnit") -> "RationalUnit":
        exps = dict(self.factors)
        for q, e in other.factors:
            exps[q] = exps.get(q, 0) + e
        return RationalUnit(self.sign * other.sign, tuple(sorted((q, e) for q, e in exps.items() if e)))

    def inverse(self) -> "RationalUnit":
        return RationalUnit(self.sign, tuple((q, -e) for q, e in self.factors))

    def __str__(self) -> str:
        value = self.value
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


Unit = Union[int, RationalUnit]
UnitLike = Union[int, Fraction, str, RationalUnit]


class FieldKind(str, Enum):
    """Supported coefficient fields."""
    PRIME = "prime"
    RATIONAL = "rational"


@dataclass(frozen=True)
class FieldSpec:
    """An odd prime field F_p or the rationals Q."""

    kind: FieldKind
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == FieldKind.PRIME:
            if self.p is None or self.p < 3 or not isprime(self.p):
                raise InputError(f"F_p requires an odd prime, got {self.p}")
        elif self.p is not None:
            raise InputError("Q takes no characteristic")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(FieldKind.PRIME, p)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(FieldKind.RATIONAL)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse 'Q', 'Fp:7', 'F7' or 'F_7'."""
        label = text.strip()
        if label.upper() in ("Q", "QQ"):
            return cls.rationals()
        for prefix in ("Fp:", "FP:", "F_", "F"):
            if label.startswith(prefix) and label[len(prefix):].isdigit():
                return cls.prime(int(label[len(prefix):]))
        raise InputError(f"Unrecognized field '{text}', expected Fp:<p> or Q")

    @property
    def is_prime_field(self) -> bool:
        return self.kind == FieldKind.PRIME

    @property
    def label(self) -> str:
        return f"Fp:{self.p}" if self.is_prime_field else "Q"

    def __str__(self) -> str:
        return self.label

    # -- units ---------------------------------------------------------

    def unit(self, value: UnitLike) -> Unit:
        """Coerce a literal to a unit of this field."""
        if isinstance(value, RationalUnit):
            if self.is_prime_field:
                return self.unit(value.value)
            return value
        if isinstance(value, str):
            try:
                value = Fraction(value.replace(" ", ""))
            except (ValueError, ZeroDivisionError):
                raise InputError(f"'{value}' is not a rational literal")
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise InputError(f"Cannot read {value!r} as a field element")
        if self.is_prime_field:
            frac = Fraction(value)
            if frac.denominator % self.p == 0:
                raise InputError(f"{value} has a denominator divisible by {self.p}")
            residue = frac.numerator * pow(frac.denominator, -1, self.p) % self.p
            if residue == 0:
                raise InputError(f"{value} is zero in {self.label}")
            return residue
        return RationalUnit.from_fraction(Fraction(value))

    def element(self, value: Union[int, Fraction]) -> Optional[Unit]:
        """Field element as a unit, or None when it is zero."""
        try:
            return self.unit(value)
        except InputError:
            if self.is_prime_field and Fraction(value).denominator % self.p:
                return None
            if not self.is_prime_field and value == 0:
                return None
            raise

    @property
    def one(self) -> Unit:
        return 1 if self.is_prime_field else RationalUnit(1)

    @property
    def minus_one(self) -> Unit:
        return self.p - 1 if self.is_prime_field else RationalUnit(-1)

    def mul(self, a: Unit, b: Unit) -> Unit:
        if self.is_prime_field:
            return a * b % self.p
        return a * b

    def prod(self, values: Iterable[Unit]) -> Unit:
        out = self.one
        for v in values:
            out = self.mul(out, v)
        return out

    def inv(self, a: Unit) -> Unit:
        if self.is_prime_field:
            return pow(a, -1, self.p)
        return a.inverse()

    def div(self, a: Unit, b: Unit) -> Unit:
        return self.mul(a, self.inv(b))

    def neg(self, a: Unit) -> Unit:
        return self.mul(a, self.minus_one)

    def power(self, a: Unit, k: int) -> Unit:
        if self.is_prime_field:
            return pow(a, k, self.p)
        exps = tuple((q, e * k) for q, e in a.factors) if k else ()
        return RationalUnit(a.sign if k % 2 else 1, exps)

    def to_fraction(self, a: Unit) -> Fraction:
        return Fraction(a) if self.is_prime_field else a.value

    def add(self, a: Unit, b: Unit) -> Optional[Unit]:
        """a + b as a unit, or None when the sum vanishes."""
        if self.is_prime_field:
            s = (a + b) % self.p
            return s or None
        s = a.value + b.value
        return RationalUnit.from_fraction(s) if s else None

    def sub(self, a: Unit, b: Unit) -> Optional[Unit]:
        return self.add(a, self.neg(b))

    def one_minus(self, a: Unit) -> Optional[Unit]:
        return self.sub(self.one, a)

    def from_int(self, k: int) -> Optional[Unit]:
        return self.element(k)

    def sort_key(self, a: Unit):
        return a if self.is_prime_field else a.value

    def render(self, a: Unit) -> str:
        return str(a)

    def is_square(self, a: Unit) -> bool:
        if self.is_prime_field:
            return legendre_symbol(a, self.p) == 1
        return a.squarefree() == 1

    def units(self) -> List[Unit]:
        """All units of F_p in residue order."""
        if not self.is_prime_field:
            raise InputError("Q has infinitely many units")
        return list(range(1, self.p))

    def random_unit(self, rng: random.Random, height: int = 50) -> Unit:
        """Uniform unit of F_p, or a random rational with numerator and denominator up to height."""
        if self.is_prime_field:
            return rng.randrange(1, self.p)
        num = rng.randint(1, height) * rng.choice((1, -1))
        return RationalUnit.from_fraction(Fraction(num, rng.randint(1, height)))

    def random_non_one(self, rng: random.Random, height: int = 50) -> Unit:
        """Random unit a with a ≠ 1, so that 1 - a is also a unit."""
        while True:
            a = self.random_unit(rng, height)
            if a != self.one:
                return a

    def check_same(self, other: "FieldSpec") -> None:
        if self != other:
            raise FieldMismatchError(f"Field mismatch: {self.label} vs {other.label}")


@dataclass(frozen=True)
class GroupRingElem:
    """Finitely supported integer combination of basis elements ⟨a⟩, a ∈ F×."""

    field: FieldSpec
    terms: Tuple[Tuple[Unit, int], ...] = ()

    @classmethod
    def from_mapping(cls, field: FieldSpec, coeffs: Mapping[Unit, int]) -> "GroupRingElem":
        items = [(u, c) for u, c in coeffs.items() if c]
        items.sort(key=lambda uc: field.sort_key(uc[0]))
        return cls(field, tuple(items))

    @classmethod
    def zero(cls, field: FieldSpec) -> "GroupRingElem":
        return cls(field)

    @classmethod
    def scalar(cls, field: FieldSpec, k: int) -> "GroupRingElem":
        return cls.from_mapping(field, {field.one: k})

    def as_dict(self) -> Dict[Unit, int]:
        return dict(self.terms)

    def coefficient(self, a: Unit) -> int:
        return self.as_dict().get(a, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def augment(self) -> int:
        return sum(c for _, c in self.terms)

    def _coerce(self, other) -> "GroupRingElem":
        if isinstance(other, int):
            return GroupRingElem.scalar(self.field, other)
        if not isinstance(other, GroupRingElem):
            raise InputError(f"Cannot combine a group ring element with {type(other).__name__}")
        self.field.check_same(other.field)
        return other

    def __add__(self, other) -> "GroupRingElem":
        other = self._coerce(other)
        acc = self.as_dict()
        for u, c in other.terms:
            acc[u] = acc.get(u, 0) + c
        return GroupRingElem.from_mapping(self.field, acc)

    __radd__ = __add__

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem(self.field, tuple((u, -c) for u, c in self.terms))

    def __sub__(self, other) -> "GroupRingElem":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "GroupRingElem":
        return self._coerce(other) - self

    def __mul__(self, other) -> "GroupRingElem":
        if isinstance(other, int):
            return GroupRingElem.from_mapping(self.field, {u: c * other for u, c in self.terms})
        other = self._coerce(other)
        acc: Dict[Unit, int] = {}
        for u, c in self.terms:
            for v, d in other.terms:
                w = self.field.mul(u, v)
                acc[w] = acc.get(w, 0) + c * d
        return GroupRingElem.from_mapping(self.field, acc)

    __rmul__ = __mul__

    def translate(self, g: Unit) -> "GroupRingElem":
        """⟨g⟩·self."""
        return GroupRingElem.from_mapping(self.field, {self.field.mul(g, u): c for u, c in self.terms})

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for u, c in self.terms:
            body = "" if u == self.field.one else f"<{self.field.render(u)}>"
            magnitude = abs(c)
            if not body:
                text = str(magnitude)
            else:
                text = body if magnitude == 1 else f"{magnitude}{body}"
            pieces.append(("-" if c < 0 else "+", text))
        # constant term last, as in "3<2> - <5> + 1"
        pieces.sort(key=lambda st: st[1][0].isdigit() and "<" not in st[1])
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __str__(self) -> str:
        return self.render()


def gr_basis(field: FieldSpec, a: UnitLike) -> GroupRingElem:
    return GroupRingElem.from_mapping(field, {field.unit(a): 1})


def gr_pfister_gen(field: FieldSpec, a: UnitLike) -> GroupRingElem:
    """⟨⟨a⟩⟩ = ⟨a⟩ - 1."""
    return gr_basis(field, a) - 1


def gr_mul(x: GroupRingElem, y: GroupRingElem) -> GroupRingElem:
    return x * y


def gr_add(x: GroupRingElem, y: GroupRingElem) -> GroupRingElem:
    return x + y


def augment(x: GroupRingElem) -> int:
    return x.augment()


def pfister_product(field: FieldSpec, entries: Iterable[Unit]) -> GroupRingElem:
    """⟨⟨a_1⟩⟩⋯⟨⟨a_n⟩⟩ in Z[F×]."""
    out = GroupRingElem.scalar(field, 1)
    for a in entries:
        out = out * gr_pfister_gen(field, a)
    return out

