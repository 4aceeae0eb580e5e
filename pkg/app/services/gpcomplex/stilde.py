"""
The coinvariant module S̃(F_p^n), built two ways.

The presented model takes the free Z[F_p×]-module on [[a_1, ..., a_n]] and
divides by every relation instance, expanded over the group-ring basis so
that everything is an integer lattice in Z^{(p-1)^{n+1}}. Coordinate (g, a)
stands for ⟨g⟩[[a]].

The direct model enumerates X_{n+1}(F_p^n) = {A·(e, a)}, and computes
(im d_{n+1})_SL as the coinvariants of C_{n+1} modulo the image of ker d_{n+1}.
"""
import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from app.core.config import settings
from app.core.errors import BudgetExceededError, GeneralPositionError, InputError, SamplingError
from app.core.metrics import MetricsCollector
from app.services.exactla import (
    IntegerLattice,
    PresentedAbelianGroup,
    cokernel_of_lattice,
    group_from_invariants,
    groups_isomorphic,
)
from app.services.gpcomplex.chains import Chain, find_general_vector
from app.services.gpcomplex.linear import (
    Columns,
    Vector,
    apply_columns,
    det_mod,
    general_linear_group,
    gl_order,
    inverse_mod,
    matmul_mod,
    matvec_mod,
)
from app.services.gpcomplex.symbols import SymbolKind, SymbolSum, relation_instance
from app.services.groupring import FieldSpec

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Orbit normal forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitNormal:
    """
    SL_n-orbit data of an (n+1)-tuple x = (A, v).

    certificate is an SL_n matrix (as rows) with certificate·x equal to
    (diag(1, ..., 1, det)·e, diag(1, ..., 1, det)·w).
    """

    det: int
    w: Vector
    certificate: Tuple[Vector, ...]

    def canonical_tuple(self, p: int) -> Tuple[Vector, ...]:
        n = len(self.w)
        scale = [1] * (n - 1) + [self.det]
        basis = tuple(tuple(scale[i] if i == j else 0 for i in range(n)) for j in range(n))
        return basis + (tuple(s * x % p for s, x in zip(scale, self.w)),)

    def verify(self, tup: Sequence[Vector], p: int) -> bool:
        """Recompute the orbit claim through the certificate."""
        columns = tuple(zip(*self.certificate))
        if det_mod(columns, p) != 1:
            return False
        moved = tuple(matvec_mod(self.certificate, v, p) for v in tup)
        return moved == self.canonical_tuple(p)


def orbit_normalize(tup: Sequence[Sequence[int]], p: int) -> OrbitNormal:
    """
    Reduce x = (v_1, ..., v_n, v) in F_p^n to (det A, A⁻¹v) with A = (v_1 | ... | v_n).

    d(x) then represents ⟨det A⟩[[A⁻¹v]].

    Raises:
        GeneralPositionError: singular leading block, or A⁻¹v with a zero entry
    """
    vectors = tuple(tuple(int(c) % p for c in v) for v in tup)
    n = len(vectors) - 1
    if n < 1 or any(len(v) != n for v in vectors):
        raise InputError(f"orbit_normalize expects n+1 vectors in F_{p}^n, got {vectors}")
    columns: Columns = vectors[:n]
    det = det_mod(columns, p)
    if det == 0:
        raise GeneralPositionError(f"Leading block of {vectors} is singular", offending=vectors)
    inverse = inverse_mod(columns, p)
    w = matvec_mod(inverse, vectors[n], p)
    if 0 in w:
        raise GeneralPositionError(f"Tuple {vectors} is not in general position", offending=vectors)
    scale_rows = tuple(tuple((det if i == n - 1 else 1) if i == j else 0 for j in range(n)) for i in range(n))
    certificate = matmul_mod(scale_rows, inverse, p)
    return OrbitNormal(det=det, w=w, certificate=certificate)


def cycle_to_symbols(z: Chain, v: Optional[Sequence[int]] = None) -> SymbolSum:
    """
    Class in S̃(F_p^n) of an n-cycle z of C_•(F_p^n).

    With z = d((-1)^n s_v z), every (n+1)-tuple (T, v) contributes ⟨det T⟩[[T⁻¹v]].
    When v is omitted the lexicographically least general vector is used.
    """
    space = z.space
    if space.dim_w or z.length != space.dim_v:
        raise InputError(f"cycle_to_symbols expects an {space.dim_v}-cycle of C(F_p^{space.dim_v})")
    vec = tuple(v) if v is not None else find_general_vector(z)
    fld = FieldSpec.prime(space.p)
    sign = -1 if z.length % 2 else 1
    out: Dict[Tuple[int, Vector], int] = {}
    for t, c in z.terms:
        try:
            normal = orbit_normalize(t + (vec,), space.p)
        except GeneralPositionError as exc:
            raise GeneralPositionError(f"Vector {vec} is not in general position with tuple {t}", offending=t) from exc
        key = (normal.det, normal.w)
        out[key] = out.get(key, 0) + sign * c
    return SymbolSum.from_mapping(fld, z.length, out)


# ---------------------------------------------------------------------------
# Presented model
# ---------------------------------------------------------------------------

def _check_budget(p: int, n: int) -> None:
    if n < 1:
        raise InputError(f"S̃ models need n >= 1, got {n}")
    if p > settings.MAX_STILDE_PRIME or n > settings.MAX_STILDE_DIM:
        raise BudgetExceededError(
            f"S̃(F_{p}^{n}) is outside the budget p <= {settings.MAX_STILDE_PRIME}, n <= {settings.MAX_STILDE_DIM}"
        )
    if p - 1 < n:
        raise SamplingError(f"F_{p} has fewer than {n} distinct units for the relation instances")


def relation_row_count(p: int, n: int) -> int:
    """(p-1)^n choices of a, (p-1)!/(p-1-n)! of b, and p-1 translates."""
    perms = 1
    for k in range(n):
        perms *= p - 1 - k
    return (p - 1) ** n * perms * (p - 1)


@lru_cache(maxsize=32)
def coordinate_index(p: int, n: int) -> Dict[Tuple[int, Vector], int]:
    """(g, a) ↦ coordinate, ordered by a then g."""
    units = range(1, p)
    return {
        (g, a): k
        for k, (a, g) in enumerate((a, g) for a in itertools.product(units, repeat=n) for g in units)
    }


@dataclass
class StildeModel:
    """S̃(F_p^n) as Z^{(p-1)^{n+1}} modulo the relation lattice."""

    p: int
    n: int
    lattice: IntegerLattice
    relation_rows: int
    group: PresentedAbelianGroup
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def field(self) -> FieldSpec:
        return FieldSpec.prime(self.p)

    @property
    def index(self) -> Dict[Tuple[int, Vector], int]:
        return coordinate_index(self.p, self.n)

    @property
    def generators(self) -> int:
        return len(self.index)

    def coordinates(self, x: SymbolSum) -> Dict[int, int]:
        if x.kind != SymbolKind.BRACKET:
            x = x.as_bracket()
        if x.field != self.field or x.degree != self.n:
            raise InputError(f"Element of degree {x.degree} over {x.field} is not in S̃(F_{self.p}^{self.n})")
        out: Dict[int, int] = {}
        for key, c in x.terms:
            k = self.index[key]
            out[k] = out.get(k, 0) + c
        return out

    def is_zero(self, x: SymbolSum) -> bool:
        return self.lattice.contains(self.coordinates(x))

    def equal(self, x: SymbolSum, y: SymbolSum) -> bool:
        return self.is_zero(x - y)

    def enlarged(self, extra: Sequence[SymbolSum]) -> IntegerLattice:
        """Relation lattice plus the coordinates of extra elements."""
        out = IntegerLattice(self.lattice.dim)
        out.extend(self.lattice.basis())
        out.extend(self.coordinates(x) for x in extra)
        return out

    def describe(self) -> Dict[str, object]:
        return {
            "p": self.p,
            "n": self.n,
            "generators": self.generators,
            "relation_matrix_shape": [self.relation_rows, self.generators],
            "invariant_factors": self.group.invariant_factors,
        }


def relation_vectors(p: int, n: int) -> List[Dict[int, int]]:
    """Every relation instance with every translate, as coordinate vectors."""
    fld = FieldSpec.prime(p)
    index = coordinate_index(p, n)
    units = list(range(1, p))
    rows: List[Dict[int, int]] = []
    for a in itertools.product(units, repeat=n):
        for b in itertools.permutations(units, n):
            base = relation_instance(fld, a, b)
            for g in units:
                row: Dict[int, int] = {}
                for (h, w), c in base.terms:
                    k = index[(g * h % p, w)]
                    row[k] = row.get(k, 0) + c
                rows.append(row)
    return rows


@lru_cache(maxsize=16)
def stilde_presented(p: int, n: int) -> StildeModel:
    """
    Presented model of S̃(F_p^n).

    Raises:
        BudgetExceededError: p, n or the relation count outside the configured budget
        SamplingError: fewer than n units
    """
    FieldSpec.prime(p)
    _check_budget(p, n)
    rows = relation_row_count(p, n)
    if rows > settings.MAX_RELATION_ROWS:
        raise BudgetExceededError(f"S̃(F_{p}^{n}) needs {rows} relation rows, budget is {settings.MAX_RELATION_ROWS}")
    collector = MetricsCollector(f"stilde_presented(p={p}, n={n})")
    index = coordinate_index(p, n)
    logger.info(f"StildeBuilder: presenting S̃(F_{p}^{n}) with {len(index)} generators and {rows} relations")
    with collector.stage("relations"):
        lattice = IntegerLattice(len(index))
        for row in relation_vectors(p, n):
            lattice.add(row)
    with collector.stage("smith"):
        group = cokernel_of_lattice(lattice)
    metrics = collector.finish()
    logger.info(f"StildeBuilder: S̃(F_{p}^{n}) ≅ {group.describe()}")
    return StildeModel(p=p, n=n, lattice=lattice, relation_rows=rows, group=group, timings=metrics.stages)


# ---------------------------------------------------------------------------
# Direct model
# ---------------------------------------------------------------------------

@dataclass
class DirectResult:
    """(im d_{n+1})_SL and the ker d_n / im d_{n+1} diagnostic."""

    p: int
    n: int
    tuples: int
    group: PresentedAbelianGroup
    ker_vs_im: PresentedAbelianGroup
    timings: Dict[str, float] = field(default_factory=dict)

    def describe(self) -> Dict[str, object]:
        return {
            "p": self.p,
            "n": self.n,
            "tuples": self.tuples,
            "invariant_factors": self.group.invariant_factors,
            "diagnostics": {"ker_vs_im": self.ker_vs_im.invariant_factors},
        }


def _faces(tup: Tuple[Vector, ...]) -> List[Tuple[int, Tuple[Vector, ...]]]:
    return [(1 if i % 2 == 0 else -1, tup[:i] + tup[i + 1:]) for i in range(len(tup))]


def _boundary_rank(gl: Sequence[Columns]) -> int:
    """Rank of d_n on Z[X_n(F_p^n)], with X_n identified with GL_n."""
    index: Dict[Tuple[Vector, ...], int] = {}
    vectors: List[Dict[int, int]] = []
    for cols in gl:
        vec: Dict[int, int] = {}
        for sign, face in _faces(cols):
            k = index.setdefault(face, len(index))
            vec[k] = vec.get(k, 0) + sign
        vectors.append(vec)
    lattice = IntegerLattice(max(len(index), 1))
    lattice.extend(vectors)
    return lattice.rank


@lru_cache(maxsize=16)
def stilde_direct(p: int, n: int) -> DirectResult:
    """
    Direct computation of (im d_{n+1})_SL for F_p^n.

    Each x = A·(e, a) in X_{n+1} contributes the joint vector (d(x), e_{(det A, a)}).
    Lattice vectors with no d-part span π(ker d_{n+1}); those with a d-part
    project to a basis of im d_{n+1}.
    """
    FieldSpec.prime(p)
    _check_budget(p, n)
    tuples = gl_order(p, n) * (p - 1) ** n
    if tuples > settings.MAX_DIRECT_TUPLES:
        raise BudgetExceededError(
            f"Direct S̃(F_{p}^{n}) enumerates {tuples} tuples, budget is {settings.MAX_DIRECT_TUPLES}"
        )
    collector = MetricsCollector(f"stilde_direct(p={p}, n={n})")
    logger.info(f"StildeBuilder: direct pipeline over {tuples} tuples of X_{n + 1}(F_{p}^{n})")
    with collector.stage("enumerate"):
        gl = list(general_linear_group(p, n))
        x_index = {cols: k for k, cols in enumerate(gl)}
        coords = coordinate_index(p, n)
        big = len(gl)
        lattice = IntegerLattice(big + len(coords))
        units = range(1, p)
        for cols in gl:
            det = det_mod(cols, p)
            for a in itertools.product(units, repeat=n):
                tup = cols + (apply_columns(cols, a, p),)
                vec: Dict[int, int] = {big + coords[(det, a)]: 1}
                for sign, face in _faces(tup):
                    k = x_index[face]
                    vec[k] = vec.get(k, 0) + sign
                lattice.add(vec)
    with collector.stage("smith"):
        kernel_image = IntegerLattice(len(coords))
        image = IntegerLattice(big)
        for vec in lattice.basis():
            if min(vec) >= big:
                kernel_image.add({k - big: c for k, c in vec.items()})
            else:
                image.add({k: c for k, c in vec.items() if k < big})
        group = cokernel_of_lattice(kernel_image)
        outside_image = cokernel_of_lattice(image)
        d_rank = _boundary_rank(gl)
        ker_vs_im = group_from_invariants(big - d_rank - image.rank, outside_image.torsion)
    metrics = collector.finish()
    logger.info(
        f"StildeBuilder: direct S̃(F_{p}^{n}) ≅ {group.describe()}, ker/im = {ker_vs_im.describe()}"
    )
    return DirectResult(p=p, n=n, tuples=tuples, group=group, ker_vs_im=ker_vs_im, timings=metrics.stages)


@dataclass(frozen=True)
class StildeComparison:
    presented: StildeModel
    direct: DirectResult

    @property
    def agree(self) -> bool:
        return groups_isomorphic(self.presented.group, self.direct.group)


def compare_models(p: int, n: int) -> StildeComparison:
    presented = stilde_presented(p, n)
    direct = stilde_direct(p, n)
    comparison = StildeComparison(presented, direct)
    if not comparison.agree:
        logger.warning(
            f"StildeBuilder: models of S̃(F_{p}^{n}) differ: presented {presented.group.describe()}, "
            f"direct {direct.group.describe()}"
        )
    return comparison


def model_for(fld: FieldSpec, n: int) -> StildeModel:
    if not fld.is_prime_field:
        raise InputError("S̃ models exist only over prime fields")
    return stilde_presented(fld.p, n)
