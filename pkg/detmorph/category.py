"""The contract a category instance offers to the determined-morphism engine.

Hom spaces are finite-dimensional subspaces of a flattened matrix ambient. Coordinates of a
morphism are its entries at the pivot columns of the canonical basis, so every question about
composites reduces to linear algebra over F_p.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import (
    Any,
    Callable,
    Dict,
    Generic,
    Iterator,
    List,
    Optional,
    Sequence,
    Protocol,
    Tuple,
    TypeVar,
)

import numpy as np

from . import ff_linalg as fl
from .errors import DimensionMismatch, LimitExceeded

M = TypeVar("M")


class HomSpace(Generic[M]):
    """Hom(source, target) as a coordinate space."""

    def __init__(
        self,
        source: Any,
        target: Any,
        space: fl.Subspace,
        build: Callable[[np.ndarray], M],
        flatten: Callable[[M], np.ndarray],
    ):
        self.source = source
        self.target = target
        self.space = space
        self._build = build
        self._flatten = flatten
        self._basis: Optional[List[M]] = None

    @property
    def p(self) -> int:
        return self.space.p

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def size(self) -> int:
        return self.p ** self.dim

    @property
    def basis(self) -> List[M]:
        if self._basis is None:
            self._basis = [self._build(v) for v in self.space.vectors()]
        return self._basis

    def build(self, flat: np.ndarray) -> M:
        return self._build(np.asarray(flat, dtype=np.int64) % self.p)

    def flatten(self, f: M) -> np.ndarray:
        return self._flatten(f)

    def coordinates(self, f: M) -> np.ndarray:
        return self.space.coordinates(self._flatten(f))

    def element(self, coeffs: np.ndarray) -> M:
        return self._build(self.space.combine(coeffs))

    def zero(self) -> M:
        return self._build(np.zeros(self.space.ambient_dim, dtype=np.int64))

    def elements(self, limit: int) -> Iterator[M]:
        """Every element, zero first; refuses when p**dim exceeds `limit`."""
        if self.size > limit:
            raise LimitExceeded(
                f"Hom set has {self.p}^{self.dim} elements, over the enumeration limit {limit}"
            )
        for coeffs in fl.iter_vectors(self.dim, self.p):
            yield self.element(coeffs)

    def matrix_of(self, func: Callable[[M], Any], codomain: "HomSpace[Any]") -> fl.FFMatrix:
        """Matrix (codomain.dim x self.dim) of a linear map given on morphisms."""
        cols = [codomain.coordinates(func(b)) for b in self.basis]
        if not cols:
            return fl.FFMatrix.zeros(codomain.dim, 0, self.p)
        return fl.FFMatrix(np.stack(cols, axis=1), self.p, shape=(codomain.dim, self.dim))

    def image_of(self, func: Callable[[M], Any], codomain: "HomSpace[Any]") -> fl.Subspace:
        """Span of func(b) over the basis, in codomain coordinates."""
        return fl.image_basis(self.matrix_of(func, codomain))

    def add(self, f: M, g: M) -> M:
        return self.build(self._flatten(f) + self._flatten(g))

    def scale(self, c: int, f: M) -> M:
        return self.build(self._flatten(f) * (int(c) % self.p))


@dataclass
class Biproduct(Generic[M]):
    obj: Any
    summands: List[Any]
    injections: List[M]
    projections: List[M]


@dataclass
class Image(Generic[M]):
    obj: Any
    epi: M
    mono: M


@dataclass
class ShortExactSequence(Generic[M]):
    left: Any
    middle: Any
    right: Any
    iota: M
    pi: M


@dataclass
class Summand(Generic[M]):
    obj: Any
    injection: M
    projection: M


@dataclass
class Decomposition(Generic[M]):
    summands: List[Summand[M]]
    certified: bool = True
    warnings: List[str] = field(default_factory=list)


class Category(Protocol):
    """What the engine needs from a Hom-finite k-linear category over F_p."""

    p: int

    def hom(self, x: Any, y: Any) -> HomSpace[Any]: ...

    def compose(self, g: Any, f: Any) -> Any: ...

    def identity(self, x: Any) -> Any: ...

    def zero(self, x: Any, y: Any) -> Any: ...

    def zero_object(self) -> Any: ...

    def kernel(self, f: Any) -> Tuple[Any, Any]: ...

    def cokernel(self, f: Any) -> Tuple[Any, Any]: ...

    def image(self, f: Any) -> Image[Any]: ...

    def is_epi(self, f: Any) -> bool: ...

    def is_mono(self, f: Any) -> bool: ...

    def direct_sum(self, objs: Sequence[Any]) -> Biproduct[Any]: ...

    def iso_test(self, x: Any, y: Any) -> Optional[Any]: ...

    def split(self, x: Any) -> Decomposition[Any]: ...

    def is_indecomposable(self, x: Any) -> bool: ...

    def indecomposables(self, bound: int) -> List[Any]: ...

    def objects(self, bound: int) -> List[Any]: ...

    def pool_exhaustive(self, bound: int) -> bool: ...

    def length(self, x: Any) -> int: ...

    def maxpart(self, x: Any) -> int: ...

    def describe(self, x: Any) -> str: ...


@dataclass(frozen=True)
class OpMorphism:
    """A morphism of C^op: `inner` runs from `target` to `source` in C."""

    inner: Any

    @property
    def source(self) -> Any:
        return self.inner.target

    @property
    def target(self) -> Any:
        return self.inner.source


class Opposite:
    """C^op over the same objects. Left-handed questions in C are right-handed here."""

    def __init__(self, inner: Any):
        self.inner = inner
        self.p = inner.p
        self.limits = inner.limits

    @property
    def name(self) -> str:
        return f"{self.inner.name}^op"

    def hom(self, x: Any, y: Any) -> HomSpace[OpMorphism]:
        h = self.inner.hom(y, x)
        return HomSpace(
            x,
            y,
            h.space,
            build=lambda v, _h=h: OpMorphism(_h.build(v)),
            flatten=lambda m, _h=h: _h.flatten(m.inner),
        )

    def compose(self, g: OpMorphism, f: OpMorphism) -> OpMorphism:
        return OpMorphism(self.inner.compose(f.inner, g.inner))

    def identity(self, x: Any) -> OpMorphism:
        return OpMorphism(self.inner.identity(x))

    def zero(self, x: Any, y: Any) -> OpMorphism:
        return OpMorphism(self.inner.zero(y, x))

    def zero_object(self) -> Any:
        return self.inner.zero_object()

    def kernel(self, f: OpMorphism) -> Tuple[Any, OpMorphism]:
        q_obj, q = self.inner.cokernel(f.inner)
        return q_obj, OpMorphism(q)

    def cokernel(self, f: OpMorphism) -> Tuple[Any, OpMorphism]:
        k_obj, k = self.inner.kernel(f.inner)
        return k_obj, OpMorphism(k)

    def image(self, f: OpMorphism) -> Image[OpMorphism]:
        im = self.inner.image(f.inner)
        return Image(im.obj, OpMorphism(im.mono), OpMorphism(im.epi))

    def is_epi(self, f: OpMorphism) -> bool:
        return bool(self.inner.is_mono(f.inner))

    def is_mono(self, f: OpMorphism) -> bool:
        return bool(self.inner.is_epi(f.inner))

    def direct_sum(self, objs: Sequence[Any]) -> Biproduct[OpMorphism]:
        b = self.inner.direct_sum(objs)
        return Biproduct(
            b.obj,
            list(b.summands),
            [OpMorphism(pr) for pr in b.projections],
            [OpMorphism(inj) for inj in b.injections],
        )

    def iso_test(self, x: Any, y: Any) -> Optional[OpMorphism]:
        iso = self.inner.iso_test(y, x)
        return None if iso is None else OpMorphism(iso)

    def split(self, x: Any) -> Decomposition[OpMorphism]:
        d = self.inner.split(x)
        return Decomposition(
            [Summand(s.obj, OpMorphism(s.projection), OpMorphism(s.injection)) for s in d.summands],
            d.certified,
            list(d.warnings),
        )

    def is_indecomposable(self, x: Any) -> bool:
        return bool(self.inner.is_indecomposable(x))

    def indecomposables(self, bound: int) -> List[Any]:
        return list(self.inner.indecomposables(bound))

    def objects(self, bound: int) -> List[Any]:
        return list(self.inner.objects(bound))

    def pool_exhaustive(self, bound: int) -> bool:
        return bool(self.inner.pool_exhaustive(bound))

    def length(self, x: Any) -> int:
        return int(self.inner.length(x))

    def maxpart(self, x: Any) -> int:
        return int(self.inner.maxpart(x))

    def describe(self, x: Any) -> str:
        return str(self.inner.describe(x))

    def morphism_to_json(self, f: OpMorphism) -> Dict[str, Any]:
        out = dict(self.inner.morphism_to_json(f.inner))
        out["opposite"] = True
        return out


def lift_through(cat: Any, t: Any, alpha: Any) -> Optional[Any]:
    """Some t' with alpha o t' = t, or None. t and alpha must share their target."""
    if t.target != alpha.target:
        raise DimensionMismatch("t and alpha must have a common target")
    h_tx = cat.hom(t.source, alpha.source)
    h_ty = cat.hom(t.source, alpha.target)
    a = h_tx.matrix_of(lambda g: cat.compose(alpha, g), h_ty)
    x = fl.solve(a, h_ty.coordinates(t))
    if x is None:
        return None
    return h_tx.element(x)


def extend_through(cat: Any, t: Any, beta: Any) -> Optional[Any]:
    """Some t' with t' o beta = t, or None. t and beta must share their source."""
    lifted = lift_through(Opposite(cat), OpMorphism(t), OpMorphism(beta))
    return None if lifted is None else lifted.inner


def is_iso(cat: Any, f: Any) -> bool:
    return bool(cat.is_epi(f) and cat.is_mono(f))


def morphism_from_components(cat: Any, components: Sequence[Any], target: Any) -> Any:
    """(t_1, ..., t_n): T_1 + ... + T_n -> target, built as the sum of t_i o pi_i."""
    b = cat.direct_sum([t.source for t in components])
    h = cat.hom(b.obj, target)
    total = h.zero()
    for t, pr in zip(components, b.projections):
        total = h.add(total, cat.compose(t, pr))
    return b, total
