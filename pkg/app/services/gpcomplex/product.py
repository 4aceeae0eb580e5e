"""
The ∗ product S̃(F^n) ⊗ S̃(F^m) → S̃(F^{n+m}) and the symbols built from it.

Two evaluation paths exist. The closed formula expands [[a]]∗[[a']] with
auxiliary constants b, b'; the chain path multiplies generator cycles in
C_•(F_p^{n+m}) and contracts the product with a homotopy vector.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

from app.core.errors import InputError
from app.services.gpcomplex.chains import chain_product, find_general_vector, generator_cycle
from app.services.gpcomplex.stilde import StildeModel, cycle_to_symbols, model_for
from app.services.gpcomplex.symbols import (
    Key,
    SymbolKind,
    SymbolSum,
    Word,
    check_auxiliary,
    d_map,
    default_auxiliary,
    face_word,
    symbol_e,
)
from app.services.groupring import FieldSpec, GroupRingElem, Unit, UnitLike, gr_pfister_gen

logger = logging.getLogger(__name__)


def _generator_star(fld: FieldSpec, a: Word, a2: Word, b: Word, b2: Word) -> Dict[Key, int]:
    n, m = len(a), len(a2)
    ba = tuple(fld.mul(x, y) for x, y in zip(b, a))
    ba2 = tuple(fld.mul(x, y) for x, y in zip(b2, a2))
    left = [face_word(fld, a, b, i) for i in range(1, n + 1)]
    right = [face_word(fld, a2, b2, j) for j in range(1, m + 1)]
    out: Dict[Key, int] = {}

    def bump(g: Unit, word: Word, c: int) -> None:
        key = (g, word)
        out[key] = out.get(key, 0) + c

    for i in range(1, n + 1):
        for j in range(1, m + 1):
            s = n + m + i + j
            g = fld.mul(a[i - 1], a2[j - 1])
            bump(fld.neg(g) if s % 2 else g, left[i - 1] + right[j - 1], -1 if s % 2 else 1)
    for i in range(1, n + 1):
        g = fld.neg(a[i - 1]) if (n - i) % 2 else a[i - 1]
        bump(g, left[i - 1] + ba2, -1 if (n + i + 1) % 2 else 1)
    for j in range(1, m + 1):
        g = fld.neg(a2[j - 1]) if (m - j) % 2 else a2[j - 1]
        bump(g, ba + right[j - 1], -1 if (m + j + 1) % 2 else 1)
    bump(fld.one, ba + ba2, 1)
    return out


def _bilinear(x: SymbolSum, y: SymbolSum, pair) -> SymbolSum:
    x.field.check_same(y.field)
    fld = x.field
    if x.kind != SymbolKind.BRACKET or y.kind != SymbolKind.BRACKET:
        raise InputError("The ∗ product is defined on [[...]] symbols; use concat for free words")
    out: Dict[Key, int] = {}
    for (g, w), c in x.terms:
        for (h, w2), c2 in y.terms:
            gh = fld.mul(g, h)
            for (k, word), coeff in pair(w, w2).items():
                key = (fld.mul(gh, k), word)
                out[key] = out.get(key, 0) + c * c2 * coeff
    return SymbolSum.from_mapping(fld, x.degree + y.degree, out)


def star_formula(
    x: SymbolSum,
    y: SymbolSum,
    b: Optional[Sequence[UnitLike]] = None,
    b2: Optional[Sequence[UnitLike]] = None,
) -> SymbolSum:
    """
    x∗y by the closed formula.

    [[a]]∗[[a']] = Σ_{i,j} (-1)^{n+m+i+j} ⟨(-1)^{n+m+i+j} a_i a'_j⟩ [[U_i, U'_j]]
                 + (-1)^n Σ_i (-1)^{i+1} ⟨(-1)^{n-i} a_i⟩ [[U_i, b'a']]
                 + (-1)^m Σ_j (-1)^{j+1} ⟨(-1)^{m-j} a'_j⟩ [[ba, U'_j]]
                 + [[ba, b'a']]

    with U_i the face words of (a, b). The b_i default to 1, ..., n.
    """
    fld = x.field
    n, m = x.degree, y.degree
    if n == 0 or m == 0:
        return x.concat(y)
    bs = default_auxiliary(fld, n) if b is None else check_auxiliary(fld, b, n)
    bs2 = default_auxiliary(fld, m) if b2 is None else check_auxiliary(fld, b2, m)
    return _bilinear(x, y, lambda w, w2: _generator_star(fld, w, w2, bs, bs2))


def star_chain(x: SymbolSum, y: SymbolSum) -> SymbolSum:
    """x∗y through generator cycles, contracted with the lexicographically least general vector."""
    fld = x.field
    if not fld.is_prime_field:
        raise InputError("The chain path enumerates vectors and needs a prime field")
    if x.degree == 0 or y.degree == 0:
        return x.concat(y)
    p = fld.p

    def pair(w: Word, w2: Word) -> Dict[Key, int]:
        z = chain_product(generator_cycle(p, w), generator_cycle(p, w2))
        return cycle_to_symbols(z, find_general_vector(z)).as_dict()

    return _bilinear(x, y, pair)


@dataclass(frozen=True)
class StarResult:
    """Both evaluations of x∗y and whether they agree in S̃."""

    formula: SymbolSum
    chain: Optional[SymbolSum]
    agree: Optional[bool]


def star_product(x: SymbolSum, y: SymbolSum, model: Optional[StildeModel] = None) -> StarResult:
    """
    Evaluate x∗y both ways. Over Q only the closed formula is available and
    agree is None.
    """
    formula = star_formula(x, y)
    if not x.field.is_prime_field:
        return StarResult(formula=formula, chain=None, agree=None)
    chain = star_chain(x, y)
    if model is None:
        model = model_for(x.field, x.degree + y.degree)
    agree = model.equal(formula, chain)
    if not agree:
        logger.warning(f"StarProduct: paths disagree for {x.render()} ∗ {y.render()}")
    return StarResult(formula=formula, chain=chain, agree=agree)


def star_power(x: SymbolSum, k: int) -> SymbolSum:
    """x^{∗k}; x^{∗0} = [[ ]]."""
    if k < 0:
        raise InputError(f"star_power: negative exponent {k}")
    out = SymbolSum.generator(x.field, ())
    for _ in range(k):
        out = star_formula(out, x)
    return out


# ---------------------------------------------------------------------------
# Derived symbols
# ---------------------------------------------------------------------------

def _bracket(fld: FieldSpec, *entries: UnitLike) -> SymbolSum:
    return SymbolSum.generator(fld, entries)


def ksp(fld: FieldSpec, a: UnitLike, b: UnitLike) -> SymbolSum:
    """⟦a, b⟧ = [[a]]∗[[b]] - ⟨⟨a⟩⟩⟨⟨b⟩⟩E."""
    pfisters = gr_pfister_gen(fld, a) * gr_pfister_gen(fld, b)
    return star_formula(_bracket(fld, a), _bracket(fld, b)) - symbol_e(fld).act(pfisters)


def ksp_prime(fld: FieldSpec, a: UnitLike, b: UnitLike) -> SymbolSum:
    """⟦a, b⟧' = [[a, b]] - D_2([[a, b]])·E."""
    generator = _bracket(fld, a, b)
    return generator - symbol_e(fld).act(d_map(generator))


def ksb(fld: FieldSpec, entries: Sequence[UnitLike]) -> SymbolSum:
    """
    ⟦a_1, ..., a_n⟧: ⟦a_1, a_2⟧∗⟦a_3, a_4⟧∗⋯ for even n, and
    [[a_1]]∗⟦a_2, a_3⟧∗⋯ for odd n.
    """
    units = [fld.unit(a) for a in entries]
    if len(units) < 2:
        raise InputError("ksb needs at least two entries")
    if len(units) % 2:
        out, rest = _bracket(fld, units[0]), units[1:]
    else:
        out, rest = ksp(fld, units[0], units[1]), units[2:]
    for k in range(0, len(rest), 2):
        out = star_formula(out, ksp(fld, rest[k], rest[k + 1]))
    return out


def d_splitting(fld: FieldSpec, n: int, alpha: GroupRingElem) -> SymbolSum:
    """
    An element x of S̃(F^n) with D_n(x) = alpha.

    For even n this is alpha·E^{∗n/2}. For odd n, alpha must lie in the
    augmentation ideal; writing alpha = Σ c_a (⟨a⟩ - 1) gives
    Σ c_a [[a]]∗E^{∗(n-1)/2}.
    """
    fld.check_same(alpha.field)
    if n < 1:
        raise InputError(f"d_splitting: degree must be positive, got {n}")
    e_power = star_power(symbol_e(fld), n // 2)
    if n % 2 == 0:
        return e_power.act(alpha)
    if alpha.augment():
        raise InputError(f"{alpha.render()} is not in the augmentation ideal")
    base = SymbolSum.zero(fld, 1)
    for a, c in alpha.terms:
        if a != fld.one:
            base = base + _bracket(fld, a).scale(c)
    return star_formula(base, e_power)


def random_generator(fld: FieldSpec, n: int, rng, height: int = 50) -> SymbolSum:
    """⟨g⟩[[a_1, ..., a_n]] with random units."""
    entries = [fld.random_unit(rng, height) for _ in range(n)]
    return SymbolSum.generator(fld, entries, fld.random_unit(rng, height))
