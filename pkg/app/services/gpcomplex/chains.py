"""
General-position chain complexes C_•(W, V) over F_p.

A q-tuple of vectors in W ⊕ V belongs to X_q(W, V) when its V-components are
in general position in V. C_q(W, V) is the free abelian group on X_q(W, V),
with the simplicial boundary d(x_1, ..., x_q) = Σ (-1)^{i+1} (.., x̂_i, ..).
"""
import logging
import random
from dataclasses import dataclass
from typing import Dict, Iterator, Mapping, Sequence, Tuple

from app.core.errors import GeneralPositionError, InputError, SamplingError
from app.services.gpcomplex.linear import (
    Vector,
    all_vectors,
    extends_general_position,
    in_general_position,
)

logger = logging.getLogger(__name__)

GPTuple = Tuple[Vector, ...]


@dataclass(frozen=True)
class GPSpace:
    """W ⊕ V over F_p; vectors list the W coordinates first."""

    p: int
    dim_v: int
    dim_w: int = 0

    def __post_init__(self):
        if self.dim_v < 1 or self.dim_w < 0:
            raise InputError(f"GPSpace: invalid dimensions W={self.dim_w}, V={self.dim_v}")

    @property
    def dim(self) -> int:
        return self.dim_w + self.dim_v

    def v_part(self, x: Vector) -> Vector:
        return x[self.dim_w:]

    def is_general(self, tup: Sequence[Vector]) -> bool:
        return in_general_position([self.v_part(x) for x in tup], self.dim_v, self.p)

    def check_tuple(self, tup: Sequence[Sequence[int]]) -> GPTuple:
        out = []
        for x in tup:
            if len(x) != self.dim:
                raise InputError(f"Vector {tuple(x)} does not live in F_{self.p}^{self.dim}")
            out.append(tuple(int(c) % self.p for c in x))
        out_t = tuple(out)
        if not self.is_general(out_t):
            raise GeneralPositionError(f"Tuple {out_t} is not in general position", offending=out_t)
        return out_t

    def tuples(self, q: int) -> Iterator[GPTuple]:
        """All of X_q(W, V), depth-first in lexicographic order."""
        vectors = list(all_vectors(self.p, self.dim))

        def extend(prefix: GPTuple, v_parts: Tuple[Vector, ...]) -> Iterator[GPTuple]:
            if len(prefix) == q:
                yield prefix
                return
            for x in vectors:
                vx = self.v_part(x)
                if extends_general_position(v_parts, vx, self.dim_v, self.p):
                    yield from extend(prefix + (x,), v_parts + (vx,))

        yield from extend((), ())

    def random_tuple(self, rng: random.Random, q: int, attempts: int = 1000) -> GPTuple:
        """Uniform-ish element of X_q(W, V) by rejection sampling."""
        for _ in range(attempts):
            prefix: Tuple[Vector, ...] = ()
            v_parts: Tuple[Vector, ...] = ()
            for _ in range(q):
                for _ in range(attempts):
                    x = tuple(rng.randrange(self.p) for _ in range(self.dim))
                    if extends_general_position(v_parts, self.v_part(x), self.dim_v, self.p):
                        prefix += (x,)
                        v_parts += (self.v_part(x),)
                        break
                else:
                    break
            if len(prefix) == q:
                return prefix
        raise SamplingError(f"No {q}-tuple in general position found in F_{self.p}^{self.dim_v}")


@dataclass(frozen=True)
class Chain:
    """Integer combination of q-tuples; zero coefficients are never stored."""

    space: GPSpace
    length: int
    terms: Tuple[Tuple[GPTuple, int], ...] = ()

    @classmethod
    def from_mapping(cls, space: GPSpace, length: int, coeffs: Mapping[GPTuple, int]) -> "Chain":
        return cls(space, length, tuple(sorted((t, c) for t, c in coeffs.items() if c)))

    @classmethod
    def zero(cls, space: GPSpace, length: int) -> "Chain":
        return cls(space, length)

    @classmethod
    def basis(cls, space: GPSpace, tup: Sequence[Sequence[int]]) -> "Chain":
        checked = space.check_tuple(tup)
        return cls(space, len(checked), ((checked, 1),))

    def as_dict(self) -> Dict[GPTuple, int]:
        return dict(self.terms)

    def support(self) -> Tuple[GPTuple, ...]:
        return tuple(t for t, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "Chain") -> None:
        if self.space != other.space or self.length != other.length:
            raise InputError(
                f"Chains of length {self.length} and {other.length} over different complexes cannot be added"
            )

    def __add__(self, other: "Chain") -> "Chain":
        self._check(other)
        out = self.as_dict()
        for t, c in other.terms:
            out[t] = out.get(t, 0) + c
        return Chain.from_mapping(self.space, self.length, out)

    def __neg__(self) -> "Chain":
        return self.scale(-1)

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def scale(self, k: int) -> "Chain":
        return Chain.from_mapping(self.space, self.length, {t: c * k for t, c in self.terms})

    def act(self, rows: Sequence[Vector]) -> "Chain":
        """Left action of an invertible matrix on every vector of every tuple."""
        p = self.space.p
        out: Dict[GPTuple, int] = {}
        for t, c in self.terms:
            moved = tuple(tuple(sum(r * x for r, x in zip(row, v)) % p for row in rows) for v in t)
            out[moved] = out.get(moved, 0) + c
        return Chain.from_mapping(self.space, self.length, out)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t, c in self.terms:
            body = "(" + ", ".join("(" + ",".join(map(str, v)) + ")" for v in t) + ")"
            parts.append(body if c == 1 else f"{c}·{body}")
        return " + ".join(parts)


def boundary(c: Chain) -> Chain:
    """Alternating sum of face deletions."""
    if c.length < 1:
        raise InputError("boundary: chains of length 0 have no faces")
    out: Dict[GPTuple, int] = {}
    for t, coeff in c.terms:
        for i in range(len(t)):
            face = t[:i] + t[i + 1:]
            out[face] = out.get(face, 0) + (coeff if i % 2 == 0 else -coeff)
    return Chain.from_mapping(c.space, c.length - 1, out)


def homotopy(c: Chain, v: Sequence[int]) -> Chain:
    """
    Partial homotopy s_v: append v to every tuple of the support.

    For a cycle z of length q, boundary((-1)^q · homotopy(z, v)) = z.

    Raises:
        GeneralPositionError: naming the first tuple that v is not in general position with
    """
    space = c.space
    vec = tuple(int(x) % space.p for x in v)
    if len(vec) != space.dim:
        raise InputError(f"homotopy: vector {vec} does not live in F_{space.p}^{space.dim}")
    out: Dict[GPTuple, int] = {}
    for t, coeff in c.terms:
        extended = t + (vec,)
        if not space.is_general(extended):
            raise GeneralPositionError(
                f"Vector {vec} is not in general position with tuple {t}", offending=t
            )
        out[extended] = coeff
    return Chain.from_mapping(space, c.length + 1, out)


def contract(z: Chain, v: Sequence[int]) -> Chain:
    """(-1)^q · s_v(z), a chain whose boundary is the cycle z."""
    return homotopy(z, v).scale(-1 if z.length % 2 else 1)


def find_general_vector(c: Chain, exclude_zero: bool = True) -> Vector:
    """Lexicographically least vector in general position with every tuple of c."""
    space = c.space
    support = [tuple(space.v_part(x) for x in t) for t in c.support()]
    for vec in all_vectors(space.p, space.dim):
        if exclude_zero and not any(vec):
            continue
        vv = space.v_part(vec)
        if all(extends_general_position(t, vv, space.dim_v, space.p) for t in support):
            return vec
    raise GeneralPositionError(
        f"No vector of F_{space.p}^{space.dim} is in general position with the chain", offending=c.support()
    )


def include(c: Chain, dim_w: int) -> Chain:
    """C_•(V) → C_•(W, V), padding every vector with zero W coordinates."""
    if c.space.dim_w:
        raise InputError("include: source complex already has a W part")
    if dim_w > 1 or c.space.dim_v > 2:
        raise InputError("W-relative complexes are supported for dim W <= 1 and dim V <= 2")
    target = GPSpace(c.space.p, c.space.dim_v, dim_w)
    pad = (0,) * dim_w
    return Chain.from_mapping(target, c.length, {tuple(pad + v for v in t): k for t, k in c.terms})


def chain_product(x: Chain, y: Chain) -> Chain:
    """
    Exterior product C_q(F^n) ⊗ C_r(F^m) → C_{q+r}(F^{n+m}).

    Tuples are concatenated after embedding F^n as the first n coordinates
    and F^m as the last m.
    """
    if x.space.p != y.space.p:
        raise InputError(f"chain_product: F_{x.space.p} against F_{y.space.p}")
    if x.space.dim_w or y.space.dim_w:
        raise InputError("chain_product: W-relative chains are not supported")
    n, m = x.space.dim_v, y.space.dim_v
    space = GPSpace(x.space.p, n + m)
    left_pad, right_pad = (0,) * m, (0,) * n
    out: Dict[GPTuple, int] = {}
    for s, a in x.terms:
        head = tuple(v + left_pad for v in s)
        for t, b in y.terms:
            key = head + tuple(right_pad + w for w in t)
            out[key] = out.get(key, 0) + a * b
    product = Chain.from_mapping(space, x.length + y.length, out)
    for t in product.support():
        if not space.is_general(t):
            raise GeneralPositionError(f"Product tuple {t} is not in general position", offending=t)
    return product


def generator_cycle(p: int, entries: Sequence[int]) -> Chain:
    """d(e_1, ..., e_n, a_1e_1 + ... + a_ne_n), the cycle representing [[a_1, ..., a_n]]."""
    n = len(entries)
    if n < 1:
        raise InputError("generator_cycle: need at least one entry")
    space = GPSpace(p, n)
    basis_vectors = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    return boundary(Chain.basis(space, basis_vectors + [tuple(entries)]))


def random_cycle(space: GPSpace, q: int, rng: random.Random, size: int = 3) -> Chain:
    """Boundary of a random combination of (q+1)-tuples."""
    out = Chain.zero(space, q + 1)
    for _ in range(size):
        out = out + Chain.basis(space, space.random_tuple(rng, q + 1)).scale(rng.choice((1, -1, 2)))
    return boundary(out)

