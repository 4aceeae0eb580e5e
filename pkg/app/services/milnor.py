"""
Milnor K-theory of F_p and Q with computable normal forms.

Normal-form models:

    F_p:  K_0 = Z, K_1 = F_p×, K_n = 0 for n >= 2
    Q:    K_0 = Z, K_1 = Q×,
          K_2 = Z/2 (dyadic Hilbert symbol) ⊕ ⊕_{p odd} F_p× (tame symbols),
          K_n = Z/2 for n >= 3 (real place: all entries negative)
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union

from sympy import isprime, legendre_symbol

from app.core.errors import InputError, UnsupportedPlaceError
from app.services.groupring import FieldSpec, RationalUnit, UnitLike
from app.services.quadform import (
    GWClass,
    WittClass,
    gw_one,
    gw_zero,
    hilbert_symbol,
    in_fundamental_power,
    pfister,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class K2Data:
    """K_2(Q) normal form: dyadic bit and nontrivial tame symbols at odd primes."""

    bit: int
    tames: Tuple[Tuple[int, int], ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.bit == 0 and not self.tames


MilnorData = Union[int, RationalUnit, K2Data, None]


@dataclass(frozen=True)
class MilnorClass:
    """Element of K^M_n(F) in normal form."""

    field: FieldSpec
    degree: int
    data: MilnorData

    def is_zero(self) -> bool:
        if self.degree == 0:
            return self.data == 0
        if self.degree == 1:
            return self.data == self.field.one
        if self.field.is_prime_field:
            return True
        if self.degree == 2:
            return self.data.is_zero
        return self.data == 0

    def _check(self, other: "MilnorClass") -> None:
        self.field.check_same(other.field)
        if self.degree != other.degree:
            raise InputError(f"Milnor degrees differ: {self.degree} vs {other.degree}")

    def __add__(self, other: "MilnorClass") -> "MilnorClass":
        self._check(other)
        fld, n = self.field, self.degree
        if n == 0:
            return MilnorClass(fld, 0, self.data + other.data)
        if n == 1:
            return MilnorClass(fld, 1, fld.mul(self.data, other.data))
        if fld.is_prime_field:
            return self
        if n == 2:
            return MilnorClass(fld, 2, _k2_add(self.data, other.data))
        return MilnorClass(fld, n, (self.data + other.data) % 2)

    def scale(self, k: int) -> "MilnorClass":
        fld, n = self.field, self.degree
        if n == 0:
            return MilnorClass(fld, 0, self.data * k)
        if n == 1:
            return MilnorClass(fld, 1, fld.power(self.data, k))
        if fld.is_prime_field:
            return self
        if n == 2:
            tames = tuple((p, pow(t, k, p)) for p, t in self.data.tames if pow(t, k, p) != 1)
            return MilnorClass(fld, 2, K2Data(self.data.bit * k % 2, tames))
        return MilnorClass(fld, n, self.data * k % 2)

    def __neg__(self) -> "MilnorClass":
        return self.scale(-1)

    def __sub__(self, other: "MilnorClass") -> "MilnorClass":
        return self + (-other)

    def __mul__(self, other: "MilnorClass") -> "MilnorClass":
        self.field.check_same(other.field)
        fld = self.field
        if self.degree == 0:
            return other.scale(self.data)
        if other.degree == 0:
            return self.scale(other.data)
        total = self.degree + other.degree
        if fld.is_prime_field:
            return milnor_zero(fld, total)
        if total == 2:
            return milnor_symbol(fld, [self.data, other.data])
        return MilnorClass(fld, total, real_sign_bit(self) & real_sign_bit(other))

    def to_dict(self) -> Dict[str, object]:
        fld, n = self.field, self.degree
        if n == 0:
            value = self.data
        elif n == 1:
            value = fld.render(self.data)
        elif fld.is_prime_field:
            value = 0
        elif n == 2:
            value = {"dyadic": self.data.bit, "tame": {str(p): t for p, t in self.data.tames}}
        else:
            value = self.data
        return {"degree": n, "value": value}

    def render(self) -> str:
        fld, n = self.field, self.degree
        if self.is_zero():
            return "0"
        if n == 0:
            return str(self.data)
        if n == 1:
            return "{" + fld.render(self.data) + "}"
        if n == 2:
            parts = ["{-1,-1}"] if self.data.bit else []
            parts += [f"tame_{p}={t}" for p, t in self.data.tames]
            return " + ".join(parts)
        return "{" + ",".join(["-1"] * n) + "}"


def _k2_add(x: K2Data, y: K2Data) -> K2Data:
    tames = dict(x.tames)
    for p, t in y.tames:
        tames[p] = tames.get(p, 1) * t % p
    return K2Data((x.bit + y.bit) % 2, tuple(sorted((p, t) for p, t in tames.items() if t != 1)))


def milnor_zero(fld: FieldSpec, n: int) -> MilnorClass:
    if n < 0:
        raise InputError(f"Milnor K-theory has no degree {n}")
    if n == 0:
        return MilnorClass(fld, 0, 0)
    if n == 1:
        return MilnorClass(fld, 1, fld.one)
    if fld.is_prime_field:
        return MilnorClass(fld, n, None)
    if n == 2:
        return MilnorClass(fld, 2, K2Data(0))
    return MilnorClass(fld, n, 0)


def milnor_symbol(fld: FieldSpec, entries: Sequence[UnitLike]) -> MilnorClass:
    """Normal form of the single symbol {a_1, ..., a_n}."""
    units = [fld.unit(a) for a in entries]
    n = len(units)
    if n == 0:
        return MilnorClass(fld, 0, 1)
    if n == 1:
        return MilnorClass(fld, 1, units[0])
    if fld.is_prime_field:
        return milnor_zero(fld, n)
    if n == 2:
        a, b = units
        bit = 1 if hilbert_symbol(a, b, 2) == -1 else 0
        tames = []
        for p in sorted(set(a.primes) | set(b.primes)):
            if p == 2:
                continue
            t = _tame2(a, b, p)
            if t != 1:
                tames.append((p, t))
        return MilnorClass(fld, 2, K2Data(bit, tuple(tames)))
    return MilnorClass(fld, n, 1 if all(u.sign < 0 for u in units) else 0)


def _tame2(a: RationalUnit, b: RationalUnit, p: int) -> int:
    alpha, beta = a.valuation(p), b.valuation(p)
    u, v = a.unit_part_mod(p), b.unit_part_mod(p)
    value = pow(v, alpha, p) * pow(u, -beta, p) % p
    return (p - value) % p if (alpha * beta) % 2 else value


def milnor_normalize(terms: Sequence[Tuple[int, Sequence[UnitLike]]], fld: FieldSpec) -> MilnorClass:
    """
    Normal form of Σ m_k {a_k1, ..., a_kn}.

    Args:
        terms: (multiplicity, entries) pairs of a common degree
        fld: coefficient field

    Returns:
        MilnorClass of that degree
    """
    if not terms:
        raise InputError("milnor_normalize: empty combination has no degree")
    degrees = {len(entries) for _, entries in terms}
    if len(degrees) != 1:
        raise InputError(f"milnor_normalize: mixed degrees {sorted(degrees)}")
    out = milnor_zero(fld, degrees.pop())
    for multiplicity, entries in terms:
        out = out + milnor_symbol(fld, entries).scale(multiplicity)
    return out


def tame_symbol(entries: Sequence[UnitLike], p: int, multiplicity: int = 1) -> MilnorClass:
    """
    Residue ∂_p: K^M_n(Q) → K^M_{n-1}(F_p) on m·{a_1, ..., a_n}.

    Degree 1 gives the valuation. Degree 2 gives (-1)^{αβ} v^α u^{-β} mod p for
    a = p^α·u, b = p^β·v, so {p, u} ↦ u.
    """
    if p == 2:
        raise UnsupportedPlaceError("Tame symbols are defined at odd primes only")
    if not isinstance(p, int) or p < 3 or not isprime(p):
        raise UnsupportedPlaceError(f"Invalid place {p!r} for a tame symbol")
    q_field = FieldSpec.rationals()
    units = [q_field.unit(a) for a in entries]
    residue_field = FieldSpec.prime(p)
    n = len(units)
    if n == 0:
        raise InputError("tame_symbol: symbol of degree 0")
    if n == 1:
        return MilnorClass(residue_field, 0, units[0].valuation(p) * multiplicity)
    if n == 2:
        return MilnorClass(residue_field, 1, pow(_tame2(units[0], units[1], p), multiplicity, p))
    return milnor_zero(residue_field, n - 1)


def real_sign_bit(c: MilnorClass) -> int:
    """Image in K^M_n(R)/2 = Z/2 (n >= 1) of a class over Q."""
    if c.field.is_prime_field:
        raise InputError("Real sign is only defined over Q")
    if c.degree == 0:
        return c.data % 2
    if c.degree == 1:
        return 1 if c.data.sign < 0 else 0
    if c.degree == 2:
        sign = -1 if c.data.bit else 1
        for p, t in c.data.tames:
            sign *= legendre_symbol(t, p)
        return 1 if sign == -1 else 0
    return c.data


def k2_witness(c: MilnorClass) -> List[Tuple[int, Tuple[RationalUnit, RationalUnit]]]:
    """
    Explicit symbols summing to a K_2(Q) class.

    Odd primes are fixed from the largest down with {p, t}, 0 < t < p, whose
    other tame symbols sit at primes below p. The dyadic bit is fixed last
    with {-1, -1}.
    """
    if c.field.is_prime_field or c.degree != 2:
        raise InputError("k2_witness expects a degree-2 class over Q")
    fld = c.field
    witness: List[Tuple[int, Tuple[RationalUnit, RationalUnit]]] = []
    current = milnor_zero(fld, 2)
    while True:
        residual = c - current
        if not residual.data.tames:
            break
        p, t = residual.data.tames[-1]
        symbol = (fld.unit(p), fld.unit(t))
        witness.append((1, symbol))
        current = current + milnor_symbol(fld, symbol)
    if (c - current).data.bit:
        witness.append((1, (fld.minus_one, fld.minus_one)))
    return witness


@dataclass(frozen=True)
class PfisterCoset:
    """Class in I^n/I^{n+1}, represented by a GW class."""

    degree: int
    representative: GWClass

    def contains(self, x: Union[GWClass, WittClass]) -> bool:
        witt = x.witt if isinstance(x, GWClass) else x
        return in_fundamental_power(witt - self.representative.witt, self.degree + 1)

    def same_coset(self, other: "PfisterCoset") -> bool:
        return self.degree == other.degree and self.contains(other.representative)


def mod2_to_in(c: MilnorClass) -> PfisterCoset:
    """k^M_n → I^n/I^{n+1}, {a_1, ..., a_n} ↦ ⟨⟨a_1, ..., a_n⟩⟩."""
    fld, n = c.field, c.degree
    if n == 0:
        return PfisterCoset(0, gw_one(fld) * c.data)
    if n == 1:
        return PfisterCoset(1, pfister(fld, [c.data]))
    if fld.is_prime_field:
        return PfisterCoset(n, gw_zero(fld))
    if n == 2:
        rep = gw_zero(fld)
        for multiplicity, (a, b) in k2_witness(c):
            if multiplicity % 2:
                rep = rep + pfister(fld, [a, b])
        return PfisterCoset(2, rep)
    rep = pfister(fld, [fld.minus_one] * n) if c.data else gw_zero(fld)
    return PfisterCoset(n, rep)
