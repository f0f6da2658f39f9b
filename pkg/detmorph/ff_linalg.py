"""Exact linear algebra over prime fields F_p.

Matrices are dense int64 numpy arrays with entries in [0, p). Products fall back to
object arrays when p is large enough that an int64 dot product could overflow.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DimensionMismatch, FieldMismatch, StructureError

MAX_PRIME = 2**31

_INT64_SAFE = 2**62


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)) or p > MAX_PRIME:
        raise FieldMismatch(f"field size must be a prime p <= 2^31, got {p!r}")
    return int(p)


def inv_mod(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    return pow(a, -1, p)


def _matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    k = a.shape[1]
    if (p - 1) ** 2 * max(k, 1) < _INT64_SAFE:
        return (a @ b) % p
    out = (a.astype(object) @ b.astype(object)) % p
    return np.asarray(out, dtype=np.int64).reshape(a.shape[0], b.shape[1])


@dataclass(frozen=True)
class FieldElem:
    value: int
    modulus: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _other(self, other: Union["FieldElem", int]) -> int:
        if isinstance(other, FieldElem):
            if other.modulus != self.modulus:
                raise FieldMismatch(f"F_{self.modulus} vs F_{other.modulus}")
            return other.value
        return int(other)

    def __add__(self, other: Union["FieldElem", int]) -> "FieldElem":
        return FieldElem(self.value + self._other(other), self.modulus)

    def __sub__(self, other: Union["FieldElem", int]) -> "FieldElem":
        return FieldElem(self.value - self._other(other), self.modulus)

    def __mul__(self, other: Union["FieldElem", int]) -> "FieldElem":
        return FieldElem(self.value * self._other(other), self.modulus)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self) -> "FieldElem":
        return FieldElem(-self.value, self.modulus)

    def inverse(self) -> "FieldElem":
        return FieldElem(inv_mod(self.value, self.modulus), self.modulus)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0


class FFMatrix:
    """Immutable dense matrix over F_p. 0 x n and n x 0 shapes are legal."""

    __slots__ = ("p", "_data", "_key")

    def __init__(self, data: Union[np.ndarray, Sequence[Sequence[int]]], p: int,
                 shape: Optional[Tuple[int, int]] = None):
        arr = np.array(data, dtype=object if not isinstance(data, np.ndarray) else None)
        if shape is not None and arr.size == 0:
            arr = np.zeros(shape, dtype=np.int64)
        if arr.ndim != 2:
            if arr.size == 0 and shape is None:
                arr = np.zeros((0, 0), dtype=np.int64)
            else:
                raise DimensionMismatch(f"expected a 2-d matrix, got shape {arr.shape}")
        if shape is not None and tuple(arr.shape) != tuple(shape):
            raise DimensionMismatch(f"expected shape {shape}, got {arr.shape}")
        arr = np.asarray(np.mod(arr, p), dtype=np.int64)
        arr.setflags(write=False)
        self.p = p
        self._data = arr
        self._key: Optional[Tuple[int, int, int, bytes]] = None

    # construction helpers
    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FFMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p: int) -> "FFMatrix":
        return cls(np.eye(n, dtype=np.int64), p)

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int, p: int) -> "FFMatrix":
        arr = np.zeros((rows, cols), dtype=np.int64)
        arr[i, j] = 1
        return cls(arr, p)

    @classmethod
    def column(cls, values: Sequence[int], p: int) -> "FFMatrix":
        return cls(np.asarray(values, dtype=np.int64).reshape(-1, 1), p)

    @classmethod
    def from_flat(cls, values: np.ndarray, rows: int, cols: int, p: int) -> "FFMatrix":
        return cls(np.asarray(values, dtype=np.int64).reshape(rows, cols), p)

    @classmethod
    def random(cls, rows: int, cols: int, p: int, rng: np.random.Generator) -> "FFMatrix":
        return cls(rng.integers(0, p, size=(rows, cols), dtype=np.int64), p)

    # accessors
    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def rows(self) -> int:
        return int(self._data.shape[0])

    @property
    def cols(self) -> int:
        return int(self._data.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def T(self) -> "FFMatrix":
        return FFMatrix(self._data.T.copy(), self.p)

    def flat(self) -> np.ndarray:
        return self._data.reshape(-1)

    def to_lists(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self._data]

    def key(self) -> Tuple[int, int, int, bytes]:
        if self._key is None:
            self._key = (self.p, self.rows, self.cols, self._data.tobytes())
        return self._key

    # arithmetic
    def _check(self, other: "FFMatrix") -> None:
        if other.p != self.p:
            raise FieldMismatch(f"F_{self.p} vs F_{other.p}")

    def __matmul__(self, other: "FFMatrix") -> "FFMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return FFMatrix(_matmul(self._data, other._data, self.p), self.p)

    def __add__(self, other: "FFMatrix") -> "FFMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return FFMatrix(self._data + other._data, self.p)

    def __sub__(self, other: "FFMatrix") -> "FFMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return FFMatrix(self._data - other._data, self.p)

    def __neg__(self) -> "FFMatrix":
        return FFMatrix(-self._data, self.p)

    def scale(self, c: int) -> "FFMatrix":
        return FFMatrix(self._data * (int(c) % self.p), self.p)

    def power(self, k: int) -> "FFMatrix":
        if self.rows != self.cols:
            raise DimensionMismatch("power of a non-square matrix")
        out = FFMatrix.identity(self.rows, self.p)
        base = self
        while k > 0:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def trace(self) -> FieldElem:
        return FieldElem(int(np.trace(self._data.astype(object))) % self.p, self.p)

    def is_zero(self) -> bool:
        return not self._data.any()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FFMatrix):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"FFMatrix(p={self.p}, {self.to_lists()})"


def hstack(blocks: Sequence[FFMatrix], p: int, rows: int) -> FFMatrix:
    if not blocks:
        return FFMatrix.zeros(rows, 0, p)
    return FFMatrix(np.hstack([b.data for b in blocks]), p)


def vstack(blocks: Sequence[FFMatrix], p: int, cols: int) -> FFMatrix:
    if not blocks:
        return FFMatrix.zeros(0, cols, p)
    return FFMatrix(np.vstack([b.data for b in blocks]), p)


def block_diag(blocks: Sequence[FFMatrix], p: int) -> FFMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    arr = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for b in blocks:
        arr[r:r + b.rows, c:c + b.cols] = b.data
        r += b.rows
        c += b.cols
    return FFMatrix(arr, p)


def kron(a: FFMatrix, b: FFMatrix) -> FFMatrix:
    a._check(b)
    if a.p ** 2 >= _INT64_SAFE:
        return FFMatrix(np.kron(a.data.astype(object), b.data.astype(object)) % a.p, a.p)
    return FFMatrix(np.kron(a.data, b.data), a.p)


@dataclass(frozen=True)
class RowReduceResult:
    matrix: FFMatrix
    pivots: Tuple[int, ...]
    rank: int


def _row_reduce(arr: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    mat = arr.copy()
    nrows, ncols = mat.shape
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(mat[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            mat[[r, piv]] = mat[[piv, r]]
        inv = inv_mod(int(mat[r, c]), p)
        if inv != 1:
            mat[r] = (mat[r] * inv) % p
        factors = mat[:, c].copy()
        factors[r] = 0
        if factors.any():
            if p ** 2 >= _INT64_SAFE:
                upd = np.outer(factors.astype(object), mat[r].astype(object)) % p
                mat = np.asarray((mat - upd.astype(np.int64)) % p, dtype=np.int64)
            else:
                mat = (mat - np.outer(factors, mat[r])) % p
        pivots.append(c)
        r += 1
    return mat, pivots


def rref(m: FFMatrix) -> RowReduceResult:
    """Unique reduced row echelon form, pivot columns and rank."""
    mat, pivots = _row_reduce(m.data, m.p)
    return RowReduceResult(FFMatrix(mat, m.p), tuple(pivots), len(pivots))


def rank(m: FFMatrix) -> int:
    return rref(m).rank


class Subspace:
    """Subspace of F_p^n stored by its canonical RREF basis (rows, no zero rows).

    Two Subspace values are equal exactly when they span the same space.
    """

    __slots__ = ("ambient_dim", "basis", "pivots", "_hash")

    def __init__(self, ambient_dim: int, basis: FFMatrix, pivots: Tuple[int, ...]):
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots
        self._hash: Optional[int] = None

    @classmethod
    def span(cls, vectors: FFMatrix) -> "Subspace":
        """Span of the rows of `vectors`."""
        red = rref(vectors)
        basis = FFMatrix(red.matrix.data[: red.rank], vectors.p, shape=(red.rank, vectors.cols))
        return cls(vectors.cols, basis, red.pivots)

    @classmethod
    def zero(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls(ambient_dim, FFMatrix.zeros(0, ambient_dim, p), ())

    @classmethod
    def full(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls(ambient_dim, FFMatrix.identity(ambient_dim, p), tuple(range(ambient_dim)))

    @property
    def p(self) -> int:
        return self.basis.p

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> List[np.ndarray]:
        return [row.copy() for row in self.basis.data]

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.dim, tuple(int(x) for x in self.basis.flat()))

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """v minus its component along the pivots; zero iff v lies in the subspace."""
        out = np.asarray(v, dtype=np.int64).reshape(-1) % self.p
        if out.shape[0] != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {out.shape[0]} in ambient {self.ambient_dim}")
        for i, c in enumerate(self.pivots):
            if out[c]:
                out = (out - out[c] * self.basis.data[i]) % self.p
        return out

    def coordinates(self, v: np.ndarray) -> np.ndarray:
        """Coordinates of v in the canonical basis; raises if v is not in the subspace."""
        vec = np.asarray(v, dtype=np.int64).reshape(-1) % self.p
        if self.reduce(vec).any():
            raise StructureError("vector does not lie in the subspace")
        return vec[list(self.pivots)].copy() if self.pivots else np.zeros(0, dtype=np.int64)

    def combine(self, coeffs: np.ndarray) -> np.ndarray:
        c = np.asarray(coeffs, dtype=np.int64).reshape(1, -1)
        if c.shape[1] != self.dim:
            raise DimensionMismatch(f"{c.shape[1]} coefficients for a {self.dim}-dim subspace")
        if self.dim == 0:
            return np.zeros(self.ambient_dim, dtype=np.int64)
        return _matmul(c, self.basis.data, self.p).reshape(-1)

    def complement_columns(self) -> Tuple[int, ...]:
        piv = set(self.pivots)
        return tuple(c for c in range(self.ambient_dim) if c not in piv)

    def quotient_map(self) -> FFMatrix:
        """Matrix of F_p^n -> F_p^n / S in the coordinates of the non-pivot columns."""
        cols = self.complement_columns()
        out = np.zeros((len(cols), self.ambient_dim), dtype=np.int64)
        for j in range(self.ambient_dim):
            if cols:
                red = self.reduce(np.eye(1, self.ambient_dim, j, dtype=np.int64))
                out[:, j] = red[list(cols)]
        return FFMatrix(out, self.p, shape=(len(cols), self.ambient_dim))

    def quotient_section(self) -> FFMatrix:
        """Right inverse of `quotient_map`: the standard vectors at the non-pivot columns."""
        cols = self.complement_columns()
        out = np.zeros((self.ambient_dim, len(cols)), dtype=np.int64)
        for k, c in enumerate(cols):
            out[c, k] = 1
        return FFMatrix(out, self.p, shape=(self.ambient_dim, len(cols)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ambient_dim, self.basis.key()))
        return self._hash

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, p={self.p})"


def _check_same(s1: Subspace, s2: Subspace) -> None:
    if s1.p != s2.p:
        raise FieldMismatch(f"F_{s1.p} vs F_{s2.p}")
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionMismatch(f"ambient {s1.ambient_dim} vs {s2.ambient_dim}")


def kernel_basis(m: FFMatrix) -> Subspace:
    """Canonical basis of {x : m x = 0}."""
    red = rref(m)
    n = m.cols
    free = [c for c in range(n) if c not in set(red.pivots)]
    vecs = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        vecs[k, f] = 1
        for i, c in enumerate(red.pivots):
            vecs[k, c] = (-red.matrix.data[i, f]) % m.p
    return Subspace.span(FFMatrix(vecs, m.p, shape=(len(free), n)))


def image_basis(m: FFMatrix) -> Subspace:
    """Column space of m, as a subspace of F_p^rows."""
    return Subspace.span(m.T)


def solve(m: FFMatrix, b: Union[FFMatrix, np.ndarray, Sequence[int]]) -> Optional[np.ndarray]:
    """Some x with m x = b, or None if the system is inconsistent."""
    vec = b.flat() if isinstance(b, FFMatrix) else np.asarray(b, dtype=np.int64).reshape(-1)
    if vec.shape[0] != m.rows:
        raise DimensionMismatch(f"right-hand side of length {vec.shape[0]} for {m.rows} rows")
    aug = np.hstack([m.data, (vec % m.p).reshape(-1, 1)])
    mat, pivots = _row_reduce(aug, m.p)
    if pivots and pivots[-1] == m.cols:
        return None
    x = np.zeros(m.cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = mat[i, -1]
    return x


def solve_matrix(m: FFMatrix, rhs: FFMatrix) -> Optional[FFMatrix]:
    """Some X with m X = rhs, column by column."""
    cols = []
    for j in range(rhs.cols):
        x = solve(m, rhs.data[:, j])
        if x is None:
            return None
        cols.append(x)
    if not cols:
        return FFMatrix.zeros(m.cols, 0, m.p)
    return FFMatrix(np.stack(cols, axis=1), m.p)


def inverse(m: FFMatrix) -> Optional[FFMatrix]:
    if m.rows != m.cols:
        return None
    return solve_matrix(m, FFMatrix.identity(m.rows, m.p))


def is_invertible(m: FFMatrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def contains(s: Subspace, v: np.ndarray) -> bool:
    return not s.reduce(v).any()


def is_subset(s1: Subspace, s2: Subspace) -> bool:
    _check_same(s1, s2)
    return all(contains(s2, row) for row in s1.basis.data)


def subspace_sum(s1: Subspace, s2: Subspace) -> Subspace:
    _check_same(s1, s2)
    return Subspace.span(vstack([s1.basis, s2.basis], s1.p, s1.ambient_dim))


def annihilator(s: Subspace) -> Subspace:
    return kernel_basis(s.basis)


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    _check_same(s1, s2)
    both = vstack([annihilator(s1).basis, annihilator(s2).basis], s1.p, s1.ambient_dim)
    return kernel_basis(both)


def span_vectors(vectors: Iterable[np.ndarray], ambient_dim: int, p: int) -> Subspace:
    rows = [np.asarray(v, dtype=np.int64).reshape(-1) for v in vectors]
    if not rows:
        return Subspace.zero(ambient_dim, p)
    return Subspace.span(FFMatrix(np.stack(rows), p, shape=(len(rows), ambient_dim)))


def iter_vectors(dim: int, p: int) -> Iterator[np.ndarray]:
    """All p**dim coefficient vectors, in lexicographic order (zero first)."""
    for coeffs in itertools.product(range(p), repeat=dim):
        yield np.array(coeffs, dtype=np.int64)


def iter_lines(dim: int, p: int) -> Iterator[np.ndarray]:
    """One representative per 1-dim subspace: vectors whose first nonzero entry is 1."""
    for v in iter_vectors(dim, p):
        nz = np.nonzero(v)[0]
        if nz.size and v[nz[0]] == 1:
            yield v
