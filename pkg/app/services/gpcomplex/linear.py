"""Linear algebra over F_p for small dense matrices given by their columns."""
import itertools
from functools import lru_cache
from typing import Iterator, Sequence, Tuple

from sympy import GF
from sympy.polys.matrices import DomainMatrix

from app.core.errors import InputError

Vector = Tuple[int, ...]
Columns = Tuple[Vector, ...]


@lru_cache(maxsize=64)
def _domain(p: int):
    return GF(p)


def _matrix(columns: Columns, p: int) -> DomainMatrix:
    if not columns:
        raise InputError("Empty matrix")
    K = _domain(p)
    height = len(columns[0])
    rows = [[K(col[i]) for col in columns] for i in range(height)]
    return DomainMatrix(rows, (height, len(columns)), K)


def _to_ints(m: DomainMatrix, p: int) -> Tuple[Vector, ...]:
    return tuple(tuple(int(x) % p for x in row) for row in m.to_Matrix().tolist())


@lru_cache(maxsize=200_000)
def det_mod(columns: Columns, p: int) -> int:
    """Determinant mod p of the square matrix with the given columns."""
    if len(columns) != len(columns[0]):
        raise InputError(f"det_mod: {len(columns)} columns of height {len(columns[0])}")
    return int(_matrix(columns, p).det()) % p


@lru_cache(maxsize=100_000)
def inverse_mod(columns: Columns, p: int) -> Tuple[Vector, ...]:
    """Rows of the inverse matrix; raises InputError on a singular matrix."""
    if det_mod(columns, p) == 0:
        raise InputError(f"Singular matrix over F_{p}: {columns}")
    return _to_ints(_matrix(columns, p).inv(), p)


@lru_cache(maxsize=200_000)
def rank_mod(columns: Columns, p: int) -> int:
    if not columns or not any(any(c) for c in columns):
        return 0
    return _matrix(columns, p).rank()


def matvec_mod(rows: Sequence[Vector], v: Sequence[int], p: int) -> Vector:
    return tuple(sum(r * x for r, x in zip(row, v)) % p for row in rows)


def apply_columns(columns: Sequence[Vector], coeffs: Sequence[int], p: int) -> Vector:
    """Σ coeffs[i]·columns[i] mod p."""
    height = len(columns[0])
    return tuple(sum(c * col[k] for c, col in zip(coeffs, columns)) % p for k in range(height))


def matmul_mod(a_rows: Sequence[Vector], b_rows: Sequence[Vector], p: int) -> Tuple[Vector, ...]:
    cols = list(zip(*b_rows))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in cols) for row in a_rows)


@lru_cache(maxsize=400_000)
def _independent(columns: Columns, p: int) -> bool:
    if len(columns) == len(columns[0]):
        return det_mod(columns, p) != 0
    return rank_mod(columns, p) == len(columns)


def in_general_position(vectors: Sequence[Vector], dim: int, p: int) -> bool:
    """Every subset of size min(len(vectors), dim) is linearly independent."""
    k = min(len(vectors), dim)
    if k == 0:
        return True
    return all(_independent(tuple(sorted(sub)), p) for sub in itertools.combinations(vectors, k))


def extends_general_position(prefix: Sequence[Vector], v: Vector, dim: int, p: int) -> bool:
    """Whether prefix + (v,) is in general position, given that prefix already is."""
    k = min(len(prefix) + 1, dim)
    if k == 0:
        return True
    for sub in itertools.combinations(prefix, k - 1):
        if not _independent(tuple(sorted(sub + (v,))), p):
            return False
    return True


def all_vectors(p: int, dim: int) -> Iterator[Vector]:
    """F_p^dim in lexicographic order of the residues 0..p-1."""
    return itertools.product(range(p), repeat=dim)


def gl_order(p: int, n: int) -> int:
    out = 1
    for i in range(n):
        out *= p ** n - p ** i
    return out


def general_linear_group(p: int, n: int) -> Iterator[Columns]:
    """Invertible n×n matrices over F_p as column tuples, lexicographically."""
    nonzero = [v for v in all_vectors(p, n) if any(v)]

    def extend(prefix: Columns) -> Iterator[Columns]:
        if len(prefix) == n:
            yield prefix
            return
        for v in nonzero:
            if rank_mod(prefix + (v,), p) == len(prefix) + 1:
                yield from extend(prefix + (v,))

    yield from extend(())


def standard_basis(n: int) -> Columns:
    return tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n))
