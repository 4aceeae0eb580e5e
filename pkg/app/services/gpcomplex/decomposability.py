"""
Decomposable elements of S̃(F_p^n) and the free-symbol-algebra identities.

S̃_dec(F^n) is spanned by the ∗ products S̃(F^k)∗S̃(F^{n-k}) for 0 < k < n,
together with their Z[F×]-translates.
"""
import itertools
import logging
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from app.core.errors import InputError, SamplingError
from app.services.exactla import IntegerLattice
from app.services.gpcomplex.chains import chain_product, generator_cycle
from app.services.gpcomplex.product import star_formula
from app.services.gpcomplex.stilde import StildeModel, cycle_to_symbols, stilde_presented
from app.services.gpcomplex.symbols import (
    GradedGroupRingElem,
    SymbolKind,
    SymbolSum,
    default_auxiliary,
    free_relation,
    pi_map,
    symbol_l,
)
from app.services.groupring import FieldSpec, GroupRingElem, UnitLike

logger = logging.getLogger(__name__)


@dataclass
class DecomposableSubmodule:
    """S̃_dec(F_p^n) inside the presented model."""

    model: StildeModel
    lattice: IntegerLattice
    products: int

    def contains(self, x: SymbolSum) -> bool:
        return self.lattice.contains(self.model.coordinates(x))


@lru_cache(maxsize=8)
def decomposable_submodule(p: int, n: int) -> DecomposableSubmodule:
    """Relation lattice enlarged by every translate of every generator product."""
    if n < 2:
        raise InputError("S̃_dec needs n >= 2")
    if p < n + 2:
        raise SamplingError(f"Decomposability checks need p >= n + 2, got p={p}, n={n}")
    fld = FieldSpec.prime(p)
    model = stilde_presented(p, n)
    units = fld.units()
    products: List[SymbolSum] = []
    for k in range(1, n):
        for a in itertools.product(units, repeat=k):
            left = SymbolSum.generator(fld, a)
            for c in itertools.product(units, repeat=n - k):
                base = star_formula(left, SymbolSum.generator(fld, c))
                products.extend(base.translate(g) for g in units)
    logger.info(f"Decomposability: {len(products)} products span S̃_dec(F_{p}^{n})")
    return DecomposableSubmodule(model=model, lattice=model.enlarged(products), products=len(products))


def scaling_difference(fld: FieldSpec, a: Sequence[UnitLike], b: UnitLike, i: int = 1) -> SymbolSum:
    """[[a_1, ..., b·a_i, ..., a_n]] - ⟨b⟩[[a_1, ..., a_n]]."""
    units = [fld.unit(x) for x in a]
    if not 1 <= i <= len(units):
        raise InputError(f"Position {i} outside 1..{len(units)}")
    u = fld.unit(b)
    scaled = list(units)
    scaled[i - 1] = fld.mul(u, scaled[i - 1])
    return SymbolSum.generator(fld, scaled) - SymbolSum.generator(fld, units, u)


def congruence_census(p: int, n: int = 2) -> Dict[int, Tuple[int, int]]:
    """For each position i, (instances inside S̃_dec, instances) over every a in (F_p×)^n and b."""
    fld = FieldSpec.prime(p)
    dec = decomposable_submodule(p, n)
    units = fld.units()
    out: Dict[int, Tuple[int, int]] = {}
    for i in range(1, n + 1):
        holds = total = 0
        for a in itertools.product(units, repeat=n):
            for b in units:
                total += 1
                holds += dec.contains(scaling_difference(fld, a, b, i))
        out[i] = (holds, total)
    logger.info(f"Decomposability: congruence census over F_{p}^{n}: {out}")
    return out


def pi_of_free_relation(fld: FieldSpec, n: int) -> GradedGroupRingElem:
    """Π_n(R_b) with b_i = i."""
    return pi_map(free_relation(fld, n, default_auxiliary(fld, n)))


def expected_pi_odd(fld: FieldSpec, n: int) -> GradedGroupRingElem:
    """-⟨1⟩xⁿ."""
    return GradedGroupRingElem(GroupRingElem.scalar(fld, -1), n)


def l_product(fld: FieldSpec, entries: Sequence[UnitLike]) -> SymbolSum:
    """L(a_1)⋯L(a_k) in the free symbol algebra."""
    out = SymbolSum.generator(fld, (), kind=SymbolKind.FREE)
    for a in entries:
        out = out.concat(symbol_l(fld, a))
    return out


def chain_l_product(p: int, entries: Sequence[int]) -> SymbolSum:
    """
    Contract [[1, a_1]]∗⋯∗[[1, a_k]] at chain level with the vector (1, ..., 1).

    Term by term this reproduces p_{2k}(L(a_1)⋯L(a_k)).
    """
    z = generator_cycle(p, (1, entries[0]))
    for a in entries[1:]:
        z = chain_product(z, generator_cycle(p, (1, a)))
    return cycle_to_symbols(z, (1,) * (2 * len(entries)))


@dataclass(frozen=True)
class DecompositionCheck:
    kind: str
    instance: str
    lhs: str
    rhs: str
    ok: bool


@dataclass
class DecomposabilityReport:
    p: int
    n: int
    checks: List[DecompositionCheck] = field(default_factory=list)
    # recorded and counted, never part of passed
    measurements: List[DecompositionCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> List[DecompositionCheck]:
        return [c for c in self.checks if not c.ok]

    def to_dict(self) -> Dict[str, object]:
        counts: Dict[str, int] = {}
        for c in self.checks:
            counts[c.kind] = counts.get(c.kind, 0) + 1
        return {
            "p": self.p,
            "n": self.n,
            "passed": self.passed,
            "checked": counts,
            "failures": [{"kind": c.kind, "instance": c.instance, "lhs": c.lhs, "rhs": c.rhs} for c in self.failures()],
            "findings": self.findings(),
        }

    def findings(self) -> Dict[str, Dict[str, object]]:
        out: Dict[str, Dict[str, object]] = {}
        for kind in dict.fromkeys(c.kind for c in self.measurements):
            group = [c for c in self.measurements if c.kind == kind]
            misses = [c for c in group if not c.ok]
            out[kind] = {
                "measured": len(group),
                "holds": len(group) - len(misses),
                "first_miss": {"instance": misses[0].instance, "lhs": misses[0].lhs, "rhs": misses[0].rhs} if misses else None,
            }
        return out


def decomposability_suite(
    p: int,
    n: int = 2,
    trials: int = 100,
    seed: int = 42,
    pi_degrees: Sequence[int] = (1, 3, 5),
) -> DecomposabilityReport:
    """
    Checks on S̃(F_p^n), plus one measurement:

    1. whether [[a_1, ..., b·a_i, ..., a_n]] - ⟨b⟩[[a]] lies in S̃_dec for random
       (a, b, i). Over F_p this congruence fails for many instances, so it is
       recorded under measurements and reported as a finding;
    2. Π_k(R_b) = -⟨1⟩x^k with b_i = i, for the odd k in pi_degrees below p;
    3. p_2(L(a)) = [[1, a]] in S̃(F_p^2) for every a ≠ 0, 1, and the chain-level
       contraction of [[1, a_1]]∗⋯∗[[1, a_k]] equals L(a_1)⋯L(a_k) term by term, k = 1, 2.

    Trial k draws from random.Random(f"decomposability:{seed}:{k}").
    """
    if p < n + 2:
        raise SamplingError(f"Decomposability checks need p >= n + 2, got p={p}, n={n}")
    fld = FieldSpec.prime(p)
    report = DecomposabilityReport(p=p, n=n)

    dec = decomposable_submodule(p, n)
    for k in range(trials):
        rng = random.Random(f"decomposability:{seed}:{k}")
        a = [fld.random_unit(rng) for _ in range(n)]
        b = fld.random_unit(rng)
        i = rng.randint(1, n)
        diff = scaling_difference(fld, a, b, i)
        report.measurements.append(
            DecompositionCheck("congruence", f"a={a}, b={b}, i={i}", diff.render(), "S̃_dec", dec.contains(diff))
        )

    for k in pi_degrees:
        if k % 2 == 0 or fld.p <= k:
            continue
        value = pi_of_free_relation(fld, k)
        expected = expected_pi_odd(fld, k)
        report.checks.append(DecompositionCheck("pi", f"n={k}", value.render(), expected.render(), value == expected))

    square = stilde_presented(p, 2)
    for a in range(2, p):
        lhs = symbol_l(fld, a).as_bracket()
        rhs = SymbolSum.generator(fld, (1, a))
        report.checks.append(DecompositionCheck("l_identity", f"a={a}", lhs.render(), rhs.render(), square.equal(lhs, rhs)))

    for size in (1, 2):
        for entries in itertools.product(range(2, p), repeat=size):
            lhs = chain_l_product(p, entries)
            rhs = l_product(fld, entries).as_bracket()
            report.checks.append(
                DecompositionCheck("l_chain", f"a={list(entries)}", lhs.render(), rhs.render(), lhs == rhs)
            )

    missed = sum(1 for c in report.measurements if not c.ok)
    if missed:
        logger.info(f"Decomposability: congruence misses S̃_dec in {missed} of {len(report.measurements)} instances")
    logger.info(f"Decomposability: p={p}, n={n}: {len(report.checks)} checks, {len(report.failures())} failures")
    return report
