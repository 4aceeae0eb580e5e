"""
Exact integer linear algebra.

Sparse integer matrices, Smith normal form with optional unimodular
transforms, finitely presented abelian groups and an incremental echelon
lattice used for bulk membership tests.
"""
import heapq
import logging
from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex

from app.core.errors import InputError

logger = logging.getLogger(__name__)

Entry = Tuple[int, int]
Vector = Dict[int, int]


class SparseIntMatrix:
    """Immutable sparse integer matrix with row-major canonical entry order."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping[Entry, int]] = None):
        if rows < 0 or cols < 0:
            raise InputError(f"SparseIntMatrix: negative shape ({rows}, {cols})")
        cleaned: Dict[Entry, int] = {}
        for (i, j), value in sorted((entries or {}).items()):
            if not (0 <= i < rows and 0 <= j < cols):
                raise InputError(f"SparseIntMatrix: index ({i}, {j}) outside shape ({rows}, {cols})")
            if value:
                cleaned[(i, j)] = int(value)
        self.rows = rows
        self.cols = cols
        self._entries = cleaned

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], cols: Optional[int] = None) -> "SparseIntMatrix":
        """Build from a list of rows."""
        width = cols if cols is not None else (len(data[0]) if data else 0)
        entries = {}
        for i, row in enumerate(data):
            if len(row) != width:
                raise InputError("SparseIntMatrix: ragged dense input")
            for j, value in enumerate(row):
                if value:
                    entries[(i, j)] = value
        return cls(len(data), width, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, int]], height: int) -> "SparseIntMatrix":
        """Build from sparse column vectors of the given height."""
        entries = {(i, j): v for j, col in enumerate(columns) for i, v in col.items()}
        return cls(height, len(columns), entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping[int, int]], width: int) -> "SparseIntMatrix":
        """Build from sparse row vectors of the given width."""
        entries = {(i, j): v for i, row in enumerate(rows) for j, v in row.items()}
        return cls(len(rows), width, entries)

    @classmethod
    def identity(cls, size: int) -> "SparseIntMatrix":
        return cls(size, size, {(i, i): 1 for i in range(size)})

    @property
    def entries(self) -> Mapping[Entry, int]:
        return MappingProxyType(self._entries)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def get(self, i: int, j: int) -> int:
        return self._entries.get((i, j), 0)

    def to_dense(self) -> List[List[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            dense[i][j] = v
        return dense

    def row_vectors(self) -> List[Vector]:
        out: List[Vector] = [{} for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def column_vectors(self) -> List[Vector]:
        out: List[Vector] = [{} for _ in range(self.cols)]
        for (i, j), v in self._entries.items():
            out[j][i] = v
        return out

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()})

    def matvec(self, vec: Sequence[int]) -> List[int]:
        if len(vec) != self.cols:
            raise InputError(f"SparseIntMatrix: vector of length {len(vec)} against {self.cols} columns")
        out = [0] * self.rows
        for (i, j), v in self._entries.items():
            out[i] += v * vec[j]
        return out

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise InputError(f"SparseIntMatrix: cannot multiply {self.shape} by {other.shape}")
        right_rows = other.row_vectors()
        acc: Dict[Entry, int] = {}
        for (i, k), v in self._entries.items():
            for j, w in right_rows[k].items():
                acc[(i, j)] = acc.get((i, j), 0) + v * w
        return SparseIntMatrix(self.rows, other.cols, acc)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __repr__(self) -> str:
        return f"SparseIntMatrix(rows={self.rows}, cols={self.cols}, nnz={self.nnz})"


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors d_1 | d_2 | ... and, optionally, L and R with L·A·R = diag."""

    diag: Tuple[int, ...]
    left: Optional[SparseIntMatrix] = None
    right: Optional[SparseIntMatrix] = None

    @property
    def rank(self) -> int:
        return len(self.diag)


def _axpy(target: Vector, source: Mapping[int, int], factor: int) -> None:
    """target += factor * source, dropping zeros."""
    if not factor:
        return
    for k, v in source.items():
        value = target.get(k, 0) + factor * v
        if value:
            target[k] = value
        else:
            target.pop(k, None)


class _SmithWorkspace:
    """Mutable state of one Smith reduction: rows, column index and transforms."""

    def __init__(self, m: SparseIntMatrix, keep_transforms: bool):
        self.rows: Dict[int, Vector] = {}
        self.col_index: Dict[int, set] = {}
        for (i, j), v in m.entries.items():
            self.rows.setdefault(i, {})[j] = v
            self.col_index.setdefault(j, set()).add(i)
        self.keep = keep_transforms
        self.left: Dict[int, Vector] = {i: {i: 1} for i in range(m.rows)} if keep_transforms else {}
        self.right: Dict[int, Vector] = {j: {j: 1} for j in range(m.cols)} if keep_transforms else {}

    def _set(self, i: int, j: int, value: int) -> None:
        if value:
            self.rows.setdefault(i, {})[j] = value
            self.col_index.setdefault(j, set()).add(i)
        else:
            row = self.rows.get(i)
            if row is not None:
                row.pop(j, None)
                if not row:
                    del self.rows[i]
            col = self.col_index.get(j)
            if col is not None:
                col.discard(i)
                if not col:
                    del self.col_index[j]

    def row_axpy(self, target: int, source: int, factor: int) -> None:
        """row[target] += factor * row[source]."""
        if not factor:
            return
        for j, v in list(self.rows.get(source, {}).items()):
            self._set(target, j, self.rows.get(target, {}).get(j, 0) + factor * v)
        if self.keep:
            _axpy(self.left[target], dict(self.left[source]), factor)

    def col_axpy(self, target: int, source: int, factor: int) -> None:
        """col[target] += factor * col[source]."""
        if not factor:
            return
        for i in list(self.col_index.get(source, ())):
            v = self.rows[i][source]
            self._set(i, target, self.rows.get(i, {}).get(target, 0) + factor * v)
        if self.keep:
            _axpy(self.right[target], dict(self.right[source]), factor)

    def negate_row(self, i: int) -> None:
        for j, v in list(self.rows.get(i, {}).items()):
            self.rows[i][j] = -v
        if self.keep:
            self.left[i] = {k: -v for k, v in self.left[i].items()}

    def remove(self, i: int, j: int) -> None:
        """Retire a finished pivot from the active submatrix."""
        self._set(i, j, 0)

    def smallest_entry(self) -> Optional[Tuple[int, int, int]]:
        best = None
        for i, row in self.rows.items():
            for j, v in row.items():
                if best is None or abs(v) < abs(best[2]):
                    best = (i, j, v)
                    if abs(v) == 1:
                        return best
        return best

    def non_multiple(self, d: int) -> Optional[Tuple[int, int]]:
        for i, row in self.rows.items():
            for j, v in row.items():
                if v % d:
                    return (i, j)
        return None


def smith_normal_form(m: SparseIntMatrix, keep_transforms: bool = False) -> SmithForm:
    """
    Smith normal form by minimal-absolute-value pivoting.

    Args:
        m: input matrix
        keep_transforms: also return unimodular L, R with L·m·R = diag

    Returns:
        SmithForm whose diag holds the nonzero invariant factors in divisibility order
    """
    ws = _SmithWorkspace(m, keep_transforms)
    pivots: List[Tuple[int, int, int]] = []

    while ws.rows:
        r, c, _ = ws.smallest_entry()
        while True:
            d = ws.rows[r][c]
            remainder = False
            for i in list(ws.col_index.get(c, ())):
                if i == r:
                    continue
                ws.row_axpy(i, r, -(ws.rows[i][c] // d))
                if ws.rows.get(i, {}).get(c):
                    remainder = True
            for j in list(ws.rows[r].keys()):
                if j == c:
                    continue
                ws.col_axpy(j, c, -(ws.rows[r][j] // d))
                if ws.rows.get(r, {}).get(j):
                    remainder = True
            if remainder:
                # a remainder smaller than d sits in row r or column c
                candidates = [(i, c) for i in ws.col_index.get(c, ())] + [(r, j) for j in ws.rows[r]]
                r, c = min(candidates, key=lambda rc: abs(ws.rows[rc[0]][rc[1]]))
                continue
            if abs(d) == 1:
                break
            ws.remove(r, c)
            offender = ws.non_multiple(d)
            ws._set(r, c, d)
            if offender is None:
                break
            ws.row_axpy(r, offender[0], 1)

        if ws.rows[r][c] < 0:
            ws.negate_row(r)
        pivots.append((r, c, ws.rows[r][c]))
        ws.remove(r, c)

    diag = tuple(d for _, _, d in pivots)
    if not keep_transforms:
        return SmithForm(diag=diag)

    row_order = [r for r, _, _ in pivots]
    row_order += sorted(set(range(m.rows)) - set(row_order))
    col_order = [c for _, c, _ in pivots]
    col_order += sorted(set(range(m.cols)) - set(col_order))
    left = SparseIntMatrix.from_rows([ws.left[r] for r in row_order], m.rows)
    right = SparseIntMatrix.from_columns([ws.right[c] for c in col_order], m.cols)
    return SmithForm(diag=diag, left=left, right=right)


class IntegerLattice:
    """
    Incrementally maintained Hermite basis of a sublattice of Z^dim.

    Each basis vector is keyed by its leading (smallest) coordinate, with a
    positive leading entry. Insertion combines colliding pivots through the
    extended gcd, so the span is always exactly the span of the inserted vectors.
    Every entry sitting in another vector's pivot column is kept in
    [0, pivot), so coefficients stay bounded by the lattice itself.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._pivots: Dict[int, Vector] = {}
        self._column_rows: Dict[int, Set[int]] = {}

    def __len__(self) -> int:
        return len(self._pivots)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def _check(self, vec: Mapping[int, int]) -> Vector:
        out = {}
        for k, v in vec.items():
            if not 0 <= k < self.dim:
                raise InputError(f"IntegerLattice: coordinate {k} outside dimension {self.dim}")
            if v:
                out[k] = v
        return out

    def _store(self, lead: int, row: Vector) -> None:
        for c in self._pivots.get(lead, ()):
            self._column_rows[c].discard(lead)
        self._pivots[lead] = row
        for c in row:
            self._column_rows.setdefault(c, set()).add(lead)

    def _reduce_tail(self, row: Vector, lead: int) -> None:
        """Bring the entries of row in pivot columns after lead into [0, pivot)."""
        heap = [c for c in row if c > lead and c in self._pivots]
        heapq.heapify(heap)
        queued = set(heap)
        while heap:
            c = heapq.heappop(heap)
            value = row.get(c, 0)
            pivot_row = self._pivots[c]
            q = value // pivot_row[c]
            if not q:
                continue
            for k, x in pivot_row.items():
                updated = row.get(k, 0) - q * x
                if updated:
                    row[k] = updated
                else:
                    row.pop(k, None)
                if k > c and k in self._pivots and k not in queued:
                    heapq.heappush(heap, k)
                    queued.add(k)

    def _install(self, lead: int, row: Vector) -> None:
        if row[lead] < 0:
            row = {k: -x for k, x in row.items()}
        self._reduce_tail(row, lead)
        self._store(lead, row)
        d = row[lead]
        for other in sorted(self._column_rows.get(lead, set()) - {lead}):
            target = dict(self._pivots[other])
            q = target[lead] // d
            if q:
                _axpy(target, row, -q)
                self._reduce_tail(target, other)
                self._store(other, target)

    def add(self, vec: Mapping[int, int]) -> bool:
        """Insert a vector; returns True when the rank grew."""
        v = self._check(vec)
        while v:
            lead = min(v)
            row = self._pivots.get(lead)
            if row is None:
                self._install(lead, v)
                return True
            a, b = row[lead], v[lead]
            if b % a == 0:
                _axpy(v, row, -(b // a))
                continue
            s, t, g = igcdex(a, b)
            combined: Vector = {}
            _axpy(combined, row, s)
            _axpy(combined, v, t)
            rest: Vector = {}
            _axpy(rest, v, a // g)
            _axpy(rest, row, -(b // g))
            self._install(lead, combined)
            v = rest
        return False

    def extend(self, vectors: Iterable[Mapping[int, int]]) -> None:
        for vec in vectors:
            self.add(vec)

    def contains(self, vec: Mapping[int, int]) -> bool:
        v = self._check(vec)
        while v:
            lead = min(v)
            row = self._pivots.get(lead)
            if row is None or v[lead] % row[lead]:
                return False
            _axpy(v, row, -(v[lead] // row[lead]))
        return True

    def basis(self) -> List[Vector]:
        return [dict(self._pivots[k]) for k in sorted(self._pivots)]

    def pivot_entries(self) -> List[int]:
        return [self._pivots[k][k] for k in sorted(self._pivots)]

    def max_entry(self) -> int:
        return max((abs(x) for row in self._pivots.values() for x in row.values()), default=0)


@dataclass(frozen=True)
class PresentedAbelianGroup:
    """Z^generators modulo the column lattice of the relation matrix."""

    generators: int
    relations: SparseIntMatrix
    free_rank: int
    torsion: Tuple[int, ...]

    @property
    def invariant_factors(self) -> Dict[str, object]:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def describe(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def group_from_invariants(free_rank: int, torsion: Sequence[int]) -> PresentedAbelianGroup:
    """Canonical presentation Z^free ⊕ ⊕ Z/t."""
    torsion = tuple(t for t in torsion if t > 1)
    size = free_rank + len(torsion)
    relations = SparseIntMatrix(size, len(torsion), {(i, i): t for i, t in enumerate(torsion)})
    return PresentedAbelianGroup(generators=size, relations=relations, free_rank=free_rank, torsion=torsion)


def cokernel(m: SparseIntMatrix) -> PresentedAbelianGroup:
    """Z^rows modulo the lattice spanned by the columns of m."""
    if m.cols > m.rows:
        lattice = IntegerLattice(m.rows)
        lattice.extend(m.column_vectors())
        logger.debug(f"Cokernel: pre-reduced {m.cols} relations to {lattice.rank}")
        group = cokernel_of_lattice(lattice)
        return PresentedAbelianGroup(m.rows, m, group.free_rank, group.torsion)
    diag = smith_normal_form(m).diag
    return PresentedAbelianGroup(
        generators=m.rows,
        relations=m,
        free_rank=m.rows - len(diag),
        torsion=tuple(d for d in diag if d > 1),
    )


def cokernel_of_lattice(lattice: IntegerLattice) -> PresentedAbelianGroup:
    """
    Z^dim modulo a Hermite lattice.

    A unit pivot eliminates its generator, and no other basis vector touches a
    unit pivot column, so only the non-unit pivot rows restricted to the
    surviving columns reach the Smith step.
    """
    basis = lattice.basis()
    relations = SparseIntMatrix.from_columns(basis, lattice.dim)
    unit_leads = {min(vec) for vec in basis if vec[min(vec)] == 1}
    hard = [vec for vec in basis if min(vec) not in unit_leads]
    if not hard:
        return PresentedAbelianGroup(lattice.dim, relations, lattice.dim - len(basis), ())
    kept = {c: k for k, c in enumerate(c for c in range(lattice.dim) if c not in unit_leads)}
    restricted = [{kept[c]: x for c, x in vec.items() if c in kept} for vec in hard]
    diag = smith_normal_form(SparseIntMatrix.from_columns(restricted, len(kept))).diag
    logger.debug(f"Cokernel: Smith step on {len(hard)} of {len(basis)} basis vectors")
    return PresentedAbelianGroup(
        generators=lattice.dim,
        relations=relations,
        free_rank=len(kept) - len(diag),
        torsion=tuple(d for d in diag if d > 1),
    )


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    certificate: Optional[Tuple[int, ...]] = None


def lattice_membership(v: Sequence[int], m: SparseIntMatrix) -> MembershipResult:
    """
    Decide whether v lies in the integer column span of m.

    The certificate x satisfies m·x = v exactly.
    """
    if len(v) != m.rows:
        raise InputError(f"lattice_membership: vector of length {len(v)} against {m.rows} rows")
    smith = smith_normal_form(m, keep_transforms=True)
    lv = smith.left.matvec(list(v))
    y = [0] * m.cols
    for t, d in enumerate(smith.diag):
        if lv[t] % d:
            return MembershipResult(member=False)
        y[t] = lv[t] // d
    if any(lv[t] for t in range(smith.rank, m.rows)):
        return MembershipResult(member=False)
    x = smith.right.matvec(y)
    return MembershipResult(member=True, certificate=tuple(x))


def groups_isomorphic(a: PresentedAbelianGroup, b: PresentedAbelianGroup) -> bool:
    return a.free_rank == b.free_rank and a.torsion == b.torsion
