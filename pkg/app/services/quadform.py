"""
Diagonal symmetric bilinear forms and the rings GW(F), W(F) for F = F_p, Q.

Witt classes are stored as canonical invariant keys:

* over F_p: (dimension parity, Legendre symbol of the signed discriminant);
* over Q: (signature, second residue at 2, second residues at odd primes),
  using W(Q) ≅ W(Z) ⊕ ⊕_p W(F_p). Every class also carries a short
  canonical representative form, rebuilt from its key, used for products.
"""
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import isprime, legendre_symbol

from app.core.errors import InputError, UnsupportedPlaceError
from app.services.groupring import FieldSpec, GroupRingElem, RationalUnit, Unit, UnitLike

logger = logging.getLogger(__name__)

INFINITY = "inf"
Place = Union[int, str]


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    g = 2
    while legendre_symbol(g, p) != -1:
        g += 1
    return g


def _legendre(a: int, p: int) -> int:
    return int(legendre_symbol(a % p, p))


# ---------------------------------------------------------------------------
# Hilbert symbols
# ---------------------------------------------------------------------------

def _odd_part_mod8(a: RationalUnit) -> int:
    out = a.sign % 8
    for q, e in a.factors:
        if q != 2:
            out = out * pow(q, e, 8) % 8
    return out


def _as_rational(value: UnitLike) -> RationalUnit:
    return FieldSpec.rationals().unit(value)


def hilbert_symbol(a: UnitLike, b: UnitLike, place: Place) -> int:
    """
    Hilbert symbol (a, b)_v over Q.

    Args:
        a: rational unit
        b: rational unit
        place: "inf", 2, or an odd prime

    Returns:
        +1 or -1
    """
    a, b = _as_rational(a), _as_rational(b)
    if place == INFINITY:
        return -1 if a.sign < 0 and b.sign < 0 else 1
    if not isinstance(place, int) or isinstance(place, bool) or not isprime(place):
        raise UnsupportedPlaceError(f"Invalid place {place!r}; expected 'inf' or a prime")
    alpha, beta = a.valuation(place), b.valuation(place)
    if place == 2:
        u, v = _odd_part_mod8(a), _odd_part_mod8(b)
        eps_u, eps_v = ((u - 1) // 2) % 2, ((v - 1) // 2) % 2
        omega_u, omega_v = ((u * u - 1) // 8) % 2, ((v * v - 1) // 8) % 2
        exponent = eps_u * eps_v + alpha * omega_v + beta * omega_u
        return -1 if exponent % 2 else 1
    u, v = a.unit_part_mod(place), b.unit_part_mod(place)
    sign = -1 if (alpha * beta * ((place - 1) // 2)) % 2 else 1
    return sign * _legendre(u, place) ** (beta % 2) * _legendre(v, place) ** (alpha % 2)


# ---------------------------------------------------------------------------
# Diagonal forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiagForm:
    """Diagonal form ⟨a_1, ..., a_n⟩."""

    field: FieldSpec
    entries: Tuple[Unit, ...] = ()

    @classmethod
    def of(cls, fld: FieldSpec, entries: Iterable[UnitLike]) -> "DiagForm":
        return cls(fld, tuple(fld.unit(a) for a in entries))

    @property
    def rank(self) -> int:
        return len(self.entries)

    def determinant(self) -> Unit:
        return self.field.prod(self.entries)

    def signed_determinant(self) -> Unit:
        det = self.determinant()
        r = self.rank
        return self.field.neg(det) if (r * (r - 1) // 2) % 2 else det

    def signature(self) -> int:
        if self.field.is_prime_field:
            raise InputError("Signature is only defined over Q")
        return sum(a.sign for a in self.entries)

    def __add__(self, other: "DiagForm") -> "DiagForm":
        self.field.check_same(other.field)
        return DiagForm(self.field, self.entries + other.entries)

    def __mul__(self, other: "DiagForm") -> "DiagForm":
        self.field.check_same(other.field)
        return DiagForm(self.field, tuple(self.field.mul(a, b) for a in self.entries for b in other.entries))

    def scaled(self, a: Unit) -> "DiagForm":
        return DiagForm(self.field, tuple(self.field.mul(a, x) for x in self.entries))

    def negated(self) -> "DiagForm":
        return self.scaled(self.field.minus_one)

    def relevant_places(self) -> List[Place]:
        primes = set()
        for a in self.entries:
            primes.update(q for q, e in a.factors if e % 2)
        primes.add(2)
        return [INFINITY] + sorted(primes)

    def hasse(self, place: Place) -> int:
        """Hasse invariant ∏_{i<j} (a_i, a_j)_v."""
        out = 1
        entries = self.entries
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                out *= hilbert_symbol(entries[i], entries[j], place)
        return out

    def witt_invariant(self, place: Place) -> int:
        """Clifford-normalized Hasse invariant; a Witt-class invariant."""
        s = self.hasse(place)
        d = self.determinant()
        minus_one = RationalUnit(-1)
        residue = self.rank % 8
        if residue in (3, 4):
            return s * hilbert_symbol(minus_one, self.field.neg(d), place)
        if residue in (5, 6):
            return s * hilbert_symbol(minus_one, minus_one, place)
        if residue in (7, 0):
            return s * hilbert_symbol(minus_one, d, place)
        return s

    def render(self) -> str:
        return "<" + ",".join(self.field.render(a) for a in self.entries) + ">"


@dataclass(frozen=True)
class FormInvariants:
    rank: int
    discriminant: int
    signature: Optional[int]
    hasse: Dict[str, int]

    def to_dict(self) -> Dict[str, object]:
        return {
            "rank": self.rank,
            "discriminant": self.discriminant,
            "signature": self.signature,
            "hasse": dict(self.hasse),
        }


def form_invariants(f: DiagForm) -> FormInvariants:
    """Rank, discriminant square class, signature and Hasse map."""
    if f.field.is_prime_field:
        det = f.determinant()
        disc = 1 if _legendre(det, f.field.p) == 1 else least_nonresidue(f.field.p)
        return FormInvariants(rank=f.rank, discriminant=disc, signature=None, hasse={})
    hasse = {str(v): f.hasse(v) for v in f.relevant_places()}
    return FormInvariants(
        rank=f.rank,
        discriminant=f.determinant().squarefree(),
        signature=f.signature(),
        hasse=hasse,
    )


# ---------------------------------------------------------------------------
# Witt classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FpWittData:
    """Class in W(F_p): dimension parity and Legendre symbol of the signed discriminant."""

    parity: int
    disc: int

    @property
    def is_zero(self) -> bool:
        return self.parity == 0 and self.disc == 1


FP_ZERO = FpWittData(0, 1)


def _fp_from_entries(p: int, entries: Sequence[int]) -> FpWittData:
    k = len(entries)
    det = 1
    for a in entries:
        det = det * a % p
    if (k * (k - 1) // 2) % 2:
        det = -det
    return FpWittData(k % 2, _legendre(det, p))


def _fp_add(p: int, x: FpWittData, y: FpWittData) -> FpWittData:
    twist = _legendre(-1, p) if x.parity and y.parity else 1
    return FpWittData((x.parity + y.parity) % 2, x.disc * y.disc * twist)


def _fp_neg(p: int, x: FpWittData) -> FpWittData:
    return FpWittData(x.parity, x.disc * (_legendre(-1, p) if x.parity else 1))


def _fp_canonical_entries(p: int, x: FpWittData) -> Tuple[int, ...]:
    g = least_nonresidue(p)
    if x.parity:
        return (1,) if x.disc == 1 else (g,)
    if x.disc == 1:
        return ()
    return (1, p - g)


@dataclass(frozen=True)
class QWittData:
    """Class in W(Q) keyed by signature and second residues (the one at 2 is a bit)."""

    signature: int
    dyadic: int
    residues: Tuple[Tuple[int, FpWittData], ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.signature == 0 and self.dyadic == 0 and not self.residues

    @property
    def parity(self) -> int:
        return self.signature % 2


def _q_from_entries(entries: Sequence[RationalUnit]) -> QWittData:
    signature = sum(a.sign for a in entries)
    dyadic = sum(1 for a in entries if a.valuation(2) % 2) % 2
    by_prime: Dict[int, List[int]] = {}
    for a in entries:
        for q, e in a.factors:
            if q != 2 and e % 2:
                by_prime.setdefault(q, []).append(a.unit_part_mod(q))
    residues = []
    for q in sorted(by_prime):
        data = _fp_from_entries(q, by_prime[q])
        if not data.is_zero:
            residues.append((q, data))
    return QWittData(signature, dyadic, tuple(residues))


def _q_combine(x: QWittData, y: QWittData) -> QWittData:
    merged = dict(x.residues)
    for q, data in y.residues:
        merged[q] = _fp_add(q, merged.get(q, FP_ZERO), data)
    residues = tuple((q, d) for q, d in sorted(merged.items()) if not d.is_zero)
    return QWittData(x.signature + y.signature, (x.dyadic + y.dyadic) % 2, residues)


def _q_neg(x: QWittData) -> QWittData:
    return QWittData(-x.signature, x.dyadic, tuple((q, _fp_neg(q, d)) for q, d in x.residues))


def _q_canonical_entries(target: QWittData) -> Tuple[RationalUnit, ...]:
    """Short form with the given key, fixing residues from the largest prime down."""
    wanted = dict(target.residues)
    rep: List[RationalUnit] = []
    done = set()
    while True:
        current = _q_from_entries(rep)
        pending = (set(wanted) | {q for q, _ in current.residues}) - done
        if not pending:
            break
        q = max(pending)
        have = dict(current.residues).get(q, FP_ZERO)
        need = _fp_add(q, wanted.get(q, FP_ZERO), _fp_neg(q, have))
        rep.extend(RationalUnit.from_fraction(q * r) for r in _fp_canonical_entries(q, need))
        done.add(q)
    current = _q_from_entries(rep)
    delta = (target.dyadic - current.dyadic) % 2
    if delta:
        rep.append(RationalUnit(1, ((2, 1),)))
    sigma = target.signature - current.signature - delta
    rep.extend([RationalUnit(1 if sigma > 0 else -1)] * abs(sigma))
    return tuple(rep)


WittData = Union[FpWittData, QWittData]


@dataclass(frozen=True)
class WittClass:
    """Element of W(F), compared by its invariant key."""

    field: FieldSpec
    data: WittData

    @cached_property
    def rep(self) -> DiagForm:
        if self.field.is_prime_field:
            return DiagForm(self.field, _fp_canonical_entries(self.field.p, self.data))
        return DiagForm(self.field, _q_canonical_entries(self.data))

    @property
    def parity(self) -> int:
        return self.data.parity

    @property
    def is_zero(self) -> bool:
        return self.data.is_zero

    @property
    def signature(self) -> int:
        if self.field.is_prime_field:
            raise InputError("Signature is only defined over Q")
        return self.data.signature

    @property
    def residues(self) -> Dict[int, FpWittData]:
        return dict(self.data.residues) if not self.field.is_prime_field else {}

    def signed_discriminant(self) -> Unit:
        return self.rep.signed_determinant()

    def has_trivial_discriminant(self) -> bool:
        return self.field.is_square(self.signed_discriminant())

    def witt_invariant(self, place: Place) -> int:
        return self.rep.witt_invariant(place)

    def relevant_places(self) -> List[Place]:
        return self.rep.relevant_places()

    def __add__(self, other: "WittClass") -> "WittClass":
        self.field.check_same(other.field)
        if self.field.is_prime_field:
            return WittClass(self.field, _fp_add(self.field.p, self.data, other.data))
        return WittClass(self.field, _q_combine(self.data, other.data))

    def __neg__(self) -> "WittClass":
        if self.field.is_prime_field:
            return WittClass(self.field, _fp_neg(self.field.p, self.data))
        return WittClass(self.field, _q_neg(self.data))

    def __sub__(self, other: "WittClass") -> "WittClass":
        return self + (-other)

    def __mul__(self, other: "WittClass") -> "WittClass":
        self.field.check_same(other.field)
        return witt_class(self.rep * other.rep)

    def scale(self, k: int) -> "WittClass":
        out = witt_zero(self.field)
        step = self if k >= 0 else -self
        for _ in range(abs(k)):
            out = out + step
        return out

    def translate(self, a: Unit) -> "WittClass":
        """⟨a⟩·self."""
        return witt_class(self.rep.scaled(a))

    def to_dict(self) -> Dict[str, object]:
        if self.field.is_prime_field:
            return {"parity": self.data.parity, "disc": self.data.disc, "form": self.rep.render()}
        return {
            "signature": self.data.signature,
            "dyadic": self.data.dyadic,
            "residues": {str(q): [d.parity, d.disc] for q, d in self.data.residues},
            "form": self.rep.render(),
        }

    def render(self) -> str:
        return "0" if self.is_zero else self.rep.render()


def witt_class(f: DiagForm) -> WittClass:
    if f.field.is_prime_field:
        return WittClass(f.field, _fp_from_entries(f.field.p, f.entries))
    return WittClass(f.field, _q_from_entries(f.entries))


def witt_zero(fld: FieldSpec) -> WittClass:
    return witt_class(DiagForm(fld))


def witt_basis(fld: FieldSpec, a: UnitLike) -> WittClass:
    return witt_class(DiagForm.of(fld, [a]))


def witt_one(fld: FieldSpec) -> WittClass:
    return witt_basis(fld, 1)


def witt_pfister(fld: FieldSpec, entries: Iterable[Unit]) -> WittClass:
    """∏ (⟨a_i⟩ - 1) in W(F), as the 2^n-dimensional product of the forms ⟨a_i, -1⟩."""
    form = DiagForm(fld, (fld.one,))
    for a in entries:
        form = form * DiagForm(fld, (a, fld.minus_one))
    return witt_class(form)


# ---------------------------------------------------------------------------
# Grothendieck-Witt classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GWClass:
    """Element of GW(F) as (rank, Witt class)."""

    rank: int
    witt: WittClass

    def __post_init__(self):
        if self.rank % 2 != self.witt.parity:
            raise InputError(f"GWClass: rank {self.rank} disagrees with Witt parity {self.witt.parity}")

    @property
    def field(self) -> FieldSpec:
        return self.witt.field

    def __add__(self, other) -> "GWClass":
        other = _gw_coerce(self.field, other)
        return GWClass(self.rank + other.rank, self.witt + other.witt)

    __radd__ = __add__

    def __neg__(self) -> "GWClass":
        return GWClass(-self.rank, -self.witt)

    def __sub__(self, other) -> "GWClass":
        return self + (-_gw_coerce(self.field, other))

    def __rsub__(self, other) -> "GWClass":
        return _gw_coerce(self.field, other) - self

    def __mul__(self, other) -> "GWClass":
        if isinstance(other, int):
            return GWClass(self.rank * other, self.witt.scale(other))
        other = _gw_coerce(self.field, other)
        return GWClass(self.rank * other.rank, self.witt * other.witt)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.rank == 0 and self.witt.is_zero

    def to_dict(self) -> Dict[str, object]:
        return {"rank": self.rank, "witt": self.witt.to_dict()}

    def render(self) -> str:
        return f"rank {self.rank}, witt {self.witt.render()}"


def _gw_coerce(fld: FieldSpec, other) -> GWClass:
    if isinstance(other, int):
        return gw_one(fld) * other if other else gw_zero(fld)
    if not isinstance(other, GWClass):
        raise InputError(f"Cannot combine a GW class with {type(other).__name__}")
    fld.check_same(other.field)
    return other


def gw_class(f: DiagForm) -> GWClass:
    return GWClass(f.rank, witt_class(f))


def gw_zero(fld: FieldSpec) -> GWClass:
    return GWClass(0, witt_zero(fld))


def gw_one(fld: FieldSpec) -> GWClass:
    return GWClass(1, witt_one(fld))


def gw_basis(fld: FieldSpec, a: UnitLike) -> GWClass:
    return gw_class(DiagForm.of(fld, [a]))


def hyperbolic(fld: FieldSpec) -> GWClass:
    """h = ⟨1⟩ + ⟨-1⟩."""
    return gw_class(DiagForm(fld, (fld.one, fld.minus_one)))


def gw_add(x: GWClass, y: GWClass) -> GWClass:
    return x + y


def gw_mul(x: GWClass, y: GWClass) -> GWClass:
    return x * y


def pfister(fld: FieldSpec, entries: Iterable[UnitLike]) -> GWClass:
    """⟨⟨a_1, ..., a_n⟩⟩ = ∏ (⟨a_i⟩ - 1) in GW(F)."""
    units = [fld.unit(a) for a in entries]
    return GWClass(0, witt_pfister(fld, units)) if units else gw_one(fld)


def gw_from_group_ring(x: GroupRingElem) -> GWClass:
    """Image of Σ c⟨a⟩ under Z[F×] → GW(F)."""
    out = gw_zero(x.field)
    for a, c in x.terms:
        out = out + gw_basis(x.field, a) * c
    return out


# ---------------------------------------------------------------------------
# Powers of the fundamental ideal
# ---------------------------------------------------------------------------

def in_fundamental_power(x: Union[GWClass, WittClass], n: int) -> bool:
    """
    Decide membership in I^n(F).

    Over Q, I^n for n >= 3 is detected by trivial discriminant, trivial Witt
    invariants at every place and signature divisible by 2^n.
    """
    if n < 0:
        raise InputError(f"in_fundamental_power: negative power {n}")
    if isinstance(x, GWClass):
        if n == 0:
            return True
        if x.rank != 0:
            return False
        x = x.witt
    if n == 0:
        return True
    if x.parity:
        return False
    if n == 1:
        return True
    if x.field.is_prime_field:
        return x.is_zero
    if not x.has_trivial_discriminant():
        return False
    if n == 2:
        return True
    if x.signature % (2**n):
        return False
    return all(x.witt_invariant(v) == 1 for v in x.relevant_places())
