"""Finite-dimensional representations of an acyclic quiver over F_p (the category mod A)."""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import ff_linalg as fl
from .category import Biproduct, Decomposition, HomSpace, Image, Summand
from .config import DEFAULT_LIMITS, Limits
from .errors import DimensionMismatch, FieldMismatch, LimitExceeded, Inconclusive, StructureError
from .ff_linalg import FFMatrix


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    start: str
    end: str
    arrows: Tuple[int, ...] = ()

    def then(self, other: "Path") -> "Path":
        """Traverse self, then other."""
        if self.end != other.start:
            raise StructureError(f"path ending at {self.end} cannot continue from {other.start}")
        return Path(self.start, other.end, self.arrows + other.arrows)


class Quiver:
    def __init__(self, vertices: Sequence[str], arrows: Sequence[Any]):
        self.vertices: Tuple[str, ...] = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise StructureError("duplicate vertex names")
        built: List[Arrow] = []
        for i, a in enumerate(arrows):
            if isinstance(a, Arrow):
                built.append(a)
            elif len(a) == 2:
                built.append(Arrow(f"a{i}", str(a[0]), str(a[1])))
            else:
                built.append(Arrow(str(a[0]), str(a[1]), str(a[2])))
        self.arrows: Tuple[Arrow, ...] = tuple(built)
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise StructureError("duplicate arrow names")
        self._index = {v: i for i, v in enumerate(self.vertices)}
        for a in self.arrows:
            if a.source not in self._index or a.target not in self._index:
                raise StructureError(f"arrow {a.name} has an unknown endpoint")
        self.order = self._topological_order()
        self._paths: Dict[str, List[Path]] = {}

    def _topological_order(self) -> Tuple[str, ...]:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        ready = [v for v in self.vertices if indeg[v] == 0]
        out: List[str] = []
        while ready:
            v = ready.pop(0)
            out.append(v)
            for a in self.arrows:
                if a.source == v:
                    indeg[a.target] -= 1
                    if indeg[a.target] == 0:
                        ready.append(a.target)
        if len(out) != len(self.vertices):
            raise StructureError("quiver has an oriented cycle")
        return tuple(out)

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise StructureError(f"unknown vertex {v!r}") from None

    def arrow_index(self, name: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.name == name:
                return i
        raise StructureError(f"unknown arrow {name!r}")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [Arrow(a.name, a.target, a.source) for a in self.arrows])

    def paths_from(self, v: str) -> List[Path]:
        """All paths starting at v, trivial path first, ordered by (length, arrows)."""
        if v not in self._paths:
            out = [Path(v, v)]
            frontier = [Path(v, v)]
            while frontier:
                nxt = []
                for path in frontier:
                    for i, a in enumerate(self.arrows):
                        if a.source == path.end:
                            nxt.append(Path(path.start, a.target, path.arrows + (i,)))
                out.extend(nxt)
                frontier = nxt
            self._paths[v] = sorted(out, key=lambda q: (len(q.arrows), q.arrows))
        return self._paths[v]

    def paths(self, start: str, end: str) -> List[Path]:
        return [q for q in self.paths_from(start) if q.end == end]

    def neighbours(self, v: str) -> List[str]:
        out = set()
        for a in self.arrows:
            if a.source == v:
                out.add(a.target)
            if a.target == v:
                out.add(a.source)
        return sorted(out, key=self.index)

    def is_type_a(self) -> bool:
        """Underlying graph is a path (any orientation)."""
        if self.n == 0 or len(self.arrows) != self.n - 1:
            return False
        pairs = {frozenset((a.source, a.target)) for a in self.arrows}
        if len(pairs) != len(self.arrows):
            return False
        if any(len(self.neighbours(v)) > 2 for v in self.vertices):
            return False
        return self.support_connected(self.vertices)

    def support_connected(self, support: Sequence[str]) -> bool:
        support = set(support)
        if not support:
            return False
        start = next(iter(sorted(support, key=self.index)))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self.neighbours(v):
                if w in support and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == support

    def positive_root_count(self) -> Optional[int]:
        if self.is_type_a():
            return self.n * (self.n + 1) // 2
        return None

    def max_indecomposable_dim(self) -> Optional[int]:
        return self.n if self.is_type_a() else None

    def to_json(self) -> Dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in self.arrows],
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows))

    def __repr__(self) -> str:
        arrows = ", ".join(f"{a.name}:{a.source}->{a.target}" for a in self.arrows)
        return f"Quiver({list(self.vertices)}; {arrows})"


def linear_quiver(n: int) -> Quiver:
    """A_n with linear orientation 1 -> 2 -> ... -> n."""
    vs = [str(i) for i in range(1, n + 1)]
    return Quiver(vs, [Arrow(f"a{i}", vs[i - 1], vs[i]) for i in range(1, n)])


class Representation:
    """A vector space per vertex and a matrix dim(target) x dim(source) per arrow."""

    __slots__ = ("quiver", "p", "dims", "maps", "_key")

    def __init__(self, quiver: Quiver, p: int, dims: Sequence[int], maps: Sequence[FFMatrix]):
        self.quiver = quiver
        self.p = p
        self.dims: Tuple[int, ...] = tuple(int(d) for d in dims)
        if len(self.dims) != quiver.n or any(d < 0 for d in self.dims):
            raise DimensionMismatch(f"need {quiver.n} nonnegative vertex dimensions")
        if len(maps) != len(quiver.arrows):
            raise DimensionMismatch(f"need {len(quiver.arrows)} arrow matrices")
        for a, m in zip(quiver.arrows, maps):
            if m.p != p:
                raise FieldMismatch(f"arrow {a.name} is over F_{m.p}, not F_{p}")
            want = (self.dim_at(a.target), self.dim_at(a.source))
            if m.shape != want:
                raise DimensionMismatch(f"arrow {a.name} has shape {m.shape}, expected {want}")
        self.maps: Tuple[FFMatrix, ...] = tuple(maps)
        self._key: Optional[Tuple[Any, ...]] = None

    def dim_at(self, v: str) -> int:
        return self.dims[self.quiver.index(v)]

    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def dimension_vector(self) -> Tuple[int, ...]:
        return self.dims

    def sort_key(self) -> Tuple[Any, ...]:
        entries = tuple(int(x) for m in self.maps for x in m.flat())
        return (self.dim, self.dims, entries)

    def key(self) -> Tuple[Any, ...]:
        if self._key is None:
            self._key = (self.p, self.quiver, self.dims, tuple(m.key() for m in self.maps))
        return self._key

    def dual(self) -> "Representation":
        """D M as a representation of the opposite quiver."""
        return Representation(self.quiver.opposite(), self.p, self.dims, [m.T for m in self.maps])

    def path_map(self, path: Path) -> FFMatrix:
        out = FFMatrix.identity(self.dim_at(path.start), self.p)
        for i in path.arrows:
            out = self.maps[i] @ out
        return out

    def digest(self) -> str:
        h = hashlib.sha256(repr(self.sort_key()).encode()).hexdigest()
        return h[:8]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims}, p={self.p})"


class RepMorphism:
    """Vertex-indexed matrices commuting with every arrow; checked on construction."""

    __slots__ = ("source", "target", "maps")

    def __init__(self, source: Representation, target: Representation, maps: Sequence[FFMatrix],
                 check: bool = True):
        if source.quiver != target.quiver or source.p != target.p:
            raise FieldMismatch("morphism between representations of different quivers or fields")
        q = source.quiver
        if len(maps) != q.n:
            raise DimensionMismatch(f"need {q.n} vertex matrices")
        for v, m in zip(q.vertices, maps):
            want = (target.dim_at(v), source.dim_at(v))
            if m.shape != want:
                raise DimensionMismatch(f"vertex {v} map has shape {m.shape}, expected {want}")
        self.source = source
        self.target = target
        self.maps: Tuple[FFMatrix, ...] = tuple(maps)
        if check:
            for i, a in enumerate(q.arrows):
                s, t = q.index(a.source), q.index(a.target)
                if target.maps[i] @ self.maps[s] != self.maps[t] @ source.maps[i]:
                    raise StructureError(f"square at arrow {a.name} does not commute")

    def at(self, v: str) -> FFMatrix:
        return self.maps[self.source.quiver.index(v)]

    def flatten(self) -> np.ndarray:
        if not self.maps:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([m.flat() for m in self.maps])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RepMorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and all(a == b for a, b in zip(self.maps, other.maps))
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, tuple(m.key() for m in self.maps)))

    def __repr__(self) -> str:
        return f"RepMorphism({self.source.dims} -> {self.target.dims})"


@dataclass
class KSDecomposition:
    """Krull-Schmidt decomposition up to iso: parts with multiplicities, canonical order."""

    parts: List[Tuple[Representation, int]]
    certified: bool = True
    warnings: List[str] = field(default_factory=list)

    def flat(self) -> List[Representation]:
        return [rep for rep, mult in self.parts for _ in range(mult)]


class QuiverCategory:
    """mod A for the path algebra A of an acyclic quiver over F_p."""

    name = "mod A"

    def __init__(self, quiver: Quiver, p: int, limits: Limits = DEFAULT_LIMITS):
        self.quiver = quiver
        self.p = fl.check_prime(p)
        self.limits = limits
        self._hom_cache: Dict[Tuple[Any, Any], HomSpace[RepMorphism]] = {}
        self._split_cache: Dict[Any, Decomposition[RepMorphism]] = {}
        self._indec_cache: Dict[int, List[Representation]] = {}
        self.names: Dict[Representation, str] = {}

    # objects
    def rep(self, dims: Sequence[int], maps: Optional[Sequence[Any]] = None) -> Representation:
        q = self.quiver
        if maps is None:
            maps = [None] * len(q.arrows)
        built = []
        for a, m in zip(q.arrows, maps):
            shape = (dims[q.index(a.target)], dims[q.index(a.source)])
            if m is None:
                built.append(FFMatrix.zeros(shape[0], shape[1], self.p))
            elif isinstance(m, FFMatrix):
                built.append(m)
            else:
                built.append(FFMatrix(m, self.p, shape=shape))
        return Representation(q, self.p, dims, built)

    def zero_object(self) -> Representation:
        return self.rep([0] * self.quiver.n)

    def _own(self, m: Representation) -> None:
        if m.quiver != self.quiver:
            raise StructureError("representation of a different quiver")
        if m.p != self.p:
            raise FieldMismatch(f"representation over F_{m.p} in a category over F_{self.p}")

    # morphisms
    def morphism(self, source: Representation, target: Representation,
                 maps: Sequence[Any]) -> RepMorphism:
        built = []
        for v, m in zip(self.quiver.vertices, maps):
            shape = (target.dim_at(v), source.dim_at(v))
            built.append(m if isinstance(m, FFMatrix) else FFMatrix(m, self.p, shape=shape))
        return RepMorphism(source, target, built)

    def identity(self, m: Representation) -> RepMorphism:
        return RepMorphism(m, m, [FFMatrix.identity(d, self.p) for d in m.dims], check=False)

    def zero(self, m: Representation, n: Representation) -> RepMorphism:
        return RepMorphism(
            m, n, [FFMatrix.zeros(b, a, self.p) for a, b in zip(m.dims, n.dims)], check=False
        )

    def compose(self, g: RepMorphism, f: RepMorphism) -> RepMorphism:
        if f.target != g.source:
            raise DimensionMismatch("composable morphisms need f.target == g.source")
        return RepMorphism(f.source, g.target, [b @ a for a, b in zip(f.maps, g.maps)], check=False)

    def _layout(self, m: Representation, n: Representation) -> List[Tuple[int, int, int]]:
        out = []
        off = 0
        for a, b in zip(m.dims, n.dims):
            out.append((off, b, a))
            off += a * b
        return out

    def _builder(self, m: Representation, n: Representation):
        layout = self._layout(m, n)

        def build(vec: np.ndarray) -> RepMorphism:
            maps = [
                FFMatrix.from_flat(vec[off:off + r * c], r, c, self.p) for off, r, c in layout
            ]
            return RepMorphism(m, n, maps)

        return build

    def hom(self, m: Representation, n: Representation) -> HomSpace[RepMorphism]:
        """Hom(M, N) as the solution space of N(a) f_s = f_t M(a) over all arrows."""
        self._own(m)
        self._own(n)
        cache_key = (m, n)
        if cache_key in self._hom_cache:
            return self._hom_cache[cache_key]
        q = self.quiver
        layout = self._layout(m, n)
        unknowns = sum(r * c for _, r, c in layout)
        blocks = []
        for i, a in enumerate(q.arrows):
            s, t = q.index(a.source), q.index(a.target)
            rows = n.dims[t] * m.dims[s]
            if rows == 0:
                continue
            block = np.zeros((rows, unknowns), dtype=np.int64)
            off_s, r_s, c_s = layout[s]
            off_t, r_t, c_t = layout[t]
            left = fl.kron(n.maps[i], FFMatrix.identity(c_s, self.p))
            right = fl.kron(FFMatrix.identity(r_t, self.p), m.maps[i].T)
            block[:, off_s:off_s + r_s * c_s] += left.data
            block[:, off_t:off_t + r_t * c_t] -= right.data
            blocks.append(block)
        if blocks:
            constraints = FFMatrix(np.vstack(blocks), self.p)
            space = fl.kernel_basis(constraints)
        else:
            space = fl.Subspace.full(unknowns, self.p)
        h = HomSpace(m, n, space, build=self._builder(m, n), flatten=RepMorphism.flatten)
        self._hom_cache[cache_key] = h
        return h

    def hom_basis(self, m: Representation, n: Representation) -> List[RepMorphism]:
        return list(self.hom(m, n).basis)

    # abelian structure
    def kernel(self, phi: RepMorphism) -> Tuple[Representation, RepMorphism]:
        src = phi.source
        subs = [fl.kernel_basis(f) for f in phi.maps]
        incl = [s.basis.T for s in subs]
        maps = []
        for i, a in enumerate(self.quiver.arrows):
            s, t = self.quiver.index(a.source), self.quiver.index(a.target)
            moved = src.maps[i] @ incl[s]
            maps.append(self._coords_in(subs[t], moved))
        k = Representation(self.quiver, self.p, [s.dim for s in subs], maps)
        return k, RepMorphism(k, src, incl)

    def _coords_in(self, sub: fl.Subspace, cols: FFMatrix) -> FFMatrix:
        """Coordinates of columns lying in `sub` (values at its pivot rows)."""
        if sub.dim == 0:
            return FFMatrix.zeros(0, cols.cols, self.p)
        return FFMatrix(cols.data[list(sub.pivots), :], self.p, shape=(sub.dim, cols.cols))

    def image(self, phi: RepMorphism) -> Image[RepMorphism]:
        tgt = phi.target
        subs = [fl.image_basis(f) for f in phi.maps]
        mono = [s.basis.T for s in subs]
        epi = [self._coords_in(s, f) for s, f in zip(subs, phi.maps)]
        maps = []
        for i, a in enumerate(self.quiver.arrows):
            s, t = self.quiver.index(a.source), self.quiver.index(a.target)
            maps.append(self._coords_in(subs[t], tgt.maps[i] @ mono[s]))
        im = Representation(self.quiver, self.p, [s.dim for s in subs], maps)
        return Image(im, RepMorphism(phi.source, im, epi), RepMorphism(im, tgt, mono))

    def cokernel(self, phi: RepMorphism) -> Tuple[Representation, RepMorphism]:
        tgt = phi.target
        subs = [fl.image_basis(f) for f in phi.maps]
        quot = [s.quotient_map() for s in subs]
        sect = [s.quotient_section() for s in subs]
        maps = []
        for i, a in enumerate(self.quiver.arrows):
            s, t = self.quiver.index(a.source), self.quiver.index(a.target)
            maps.append(quot[t] @ tgt.maps[i] @ sect[s])
        c = Representation(self.quiver, self.p, [qm.rows for qm in quot], maps)
        return c, RepMorphism(tgt, c, quot)

    def is_epi(self, phi: RepMorphism) -> bool:
        return all(fl.rank(f) == f.rows for f in phi.maps)

    def is_mono(self, phi: RepMorphism) -> bool:
        return all(fl.rank(f) == f.cols for f in phi.maps)

    def is_iso(self, phi: RepMorphism) -> bool:
        return all(f.rows == f.cols and fl.rank(f) == f.rows for f in phi.maps)

    def inverse(self, phi: RepMorphism) -> RepMorphism:
        maps = []
        for f in phi.maps:
            inv = fl.inverse(f)
            if inv is None:
                raise StructureError("morphism is not invertible")
            maps.append(inv)
        return RepMorphism(phi.target, phi.source, maps)

    def direct_sum(self, objs: Sequence[Representation]) -> Biproduct[RepMorphism]:
        objs = list(objs)
        for m in objs:
            self._own(m)
        q = self.quiver
        dims = [sum(m.dims[i] for m in objs) for i in range(q.n)]
        maps = [fl.block_diag([m.maps[i] for m in objs], self.p) for i in range(len(q.arrows))]
        total = Representation(q, self.p, dims, maps)
        injections, projections = [], []
        offsets = [0] * q.n
        for m in objs:
            inj, proj = [], []
            for i in range(q.n):
                e = np.zeros((dims[i], m.dims[i]), dtype=np.int64)
                e[offsets[i]:offsets[i] + m.dims[i], :] = np.eye(m.dims[i], dtype=np.int64)
                inj.append(FFMatrix(e, self.p, shape=(dims[i], m.dims[i])))
                proj.append(FFMatrix(e.T.copy(), self.p, shape=(m.dims[i], dims[i])))
                offsets[i] += m.dims[i]
            injections.append(RepMorphism(m, total, inj, check=False))
            projections.append(RepMorphism(total, m, proj, check=False))
        return Biproduct(total, objs, injections, projections)

    def iso_test(self, m: Representation, n: Representation) -> Optional[RepMorphism]:
        """An isomorphism M -> N, or None when they are certainly not isomorphic."""
        self._own(m)
        self._own(n)
        if m.dims != n.dims:
            return None
        if m == n:
            return self.identity(m)
        h = self.hom(m, n)
        if not (h.dim == self.hom(m, m).dim == self.hom(n, n).dim == self.hom(n, m).dim):
            return None
        for f in h.basis:
            if self.is_iso(f):
                return f
        if h.size <= self.limits.iso_threshold:
            for f in h.elements(self.limits.iso_threshold):
                if self.is_iso(f):
                    return f
            return None
        rng = self.limits.rng()
        for _ in range(self.limits.random_attempts):
            f = h.element(rng.integers(0, self.p, size=h.dim))
            if self.is_iso(f):
                return f
        raise Inconclusive(
            f"Hom has {self.p}^{h.dim} elements and invariants agree; raise iso_threshold"
        )

    # Krull-Schmidt
    def _splitting_power(self, m: Representation, warnings: List[str]) -> Optional[RepMorphism]:
        """phi^dim for an endomorphism phi that is neither nilpotent nor invertible."""
        end = self.hom(m, m)
        power = max(m.dim, 1)

        def fitting(phi: RepMorphism) -> Optional[RepMorphism]:
            psi = RepMorphism(m, m, [f.power(power) for f in phi.maps], check=False)
            if all(f.is_zero() for f in psi.maps) or self.is_iso(psi):
                return None
            return psi

        for phi in end.basis:
            psi = fitting(phi)
            if psi is not None:
                return psi
        if end.size <= self.limits.endomorphism_threshold:
            for coeffs in fl.iter_vectors(end.dim, self.p):
                psi = fitting(end.element(coeffs))
                if psi is not None:
                    return psi
            return None
        warnings.append(
            f"End of a {m.dims} summand has {self.p}^{end.dim} elements; "
            f"used {self.limits.random_attempts} random Fitting trials"
        )
        rng = self.limits.rng()
        for _ in range(self.limits.random_attempts):
            psi = fitting(end.element(rng.integers(0, self.p, size=end.dim)))
            if psi is not None:
                return psi
        warnings.append(f"summand {m.dims} kept whole without a locality certificate")
        return None

    def _split(self, m: Representation, warnings: List[str]) -> List[Summand[RepMorphism]]:
        if m.dim == 0:
            return []
        psi = self._splitting_power(m, warnings)
        if psi is None:
            ident = self.identity(m)
            return [Summand(m, ident, ident)]
        im = self.image(psi)
        k_obj, k = self.kernel(psi)
        stacked = [fl.hstack([a, b], self.p, a.rows) for a, b in zip(im.mono.maps, k.maps)]
        inverses = [fl.inverse(s) for s in stacked]
        r = im.obj.dims
        p_im = RepMorphism(m, im.obj, [
            FFMatrix(inv.data[:ri], self.p, shape=(ri, inv.cols)) for inv, ri in zip(inverses, r)
        ])
        p_k = RepMorphism(m, k_obj, [
            FFMatrix(inv.data[ri:], self.p, shape=(inv.rows - ri, inv.cols))
            for inv, ri in zip(inverses, r)
        ])
        out = []
        for obj, inj, proj in ((im.obj, im.mono, p_im), (k_obj, k, p_k)):
            for s in self._split(obj, warnings):
                out.append(Summand(s.obj, self.compose(inj, s.injection),
                                   self.compose(s.projection, proj)))
        return out

    def split(self, m: Representation) -> Decomposition[RepMorphism]:
        """Indecomposable summands of M with their injections and projections."""
        self._own(m)
        if m.dim > self.limits.decompose_bound:
            raise LimitExceeded(
                f"total dimension {m.dim} over the decomposition bound {self.limits.decompose_bound}"
            )
        if m not in self._split_cache:
            warnings: List[str] = []
            parts = self._split(m, warnings)
            certified = not any("without a locality certificate" in w for w in warnings)
            self._split_cache[m] = Decomposition(parts, certified, warnings)
        return self._split_cache[m]

    def decompose(self, m: Representation) -> KSDecomposition:
        d = self.split(m)
        groups: List[List[Any]] = []
        for s in d.summands:
            for g in groups:
                if self.iso_test(g[0], s.obj) is not None:
                    g[1] += 1
                    break
            else:
                groups.append([s.obj, 1])
        parts = sorted(((g[0], g[1]) for g in groups), key=lambda t: t[0].sort_key())
        return KSDecomposition(parts, d.certified, list(d.warnings))

    def is_indecomposable(self, m: Representation) -> bool:
        return m.dim > 0 and len(self.split(m).summands) == 1

    def _tuples(self, dims: Tuple[int, ...]) -> Iterator[List[FFMatrix]]:
        shapes = [(dims[self.quiver.index(a.target)], dims[self.quiver.index(a.source)])
                  for a in self.quiver.arrows]
        sizes = [r * c for r, c in shapes]
        for entries in itertools.product(range(self.p), repeat=sum(sizes)):
            maps, off = [], 0
            for (r, c), s in zip(shapes, sizes):
                maps.append(FFMatrix.from_flat(np.array(entries[off:off + s], dtype=np.int64),
                                               r, c, self.p))
                off += s
            yield maps

    def enumerate_indecomposables(self, dim_bound: int) -> List[Representation]:
        """One representative per iso-class of indecomposables of total dimension <= bound."""
        top = self.quiver.max_indecomposable_dim()
        if top is not None:
            dim_bound = min(dim_bound, top)
        if dim_bound > self.limits.pool_limit:
            raise LimitExceeded(f"bound {dim_bound} over the pool limit {self.limits.pool_limit}")
        if dim_bound in self._indec_cache:
            return list(self._indec_cache[dim_bound])
        q = self.quiver
        vectors = []
        for total in range(1, dim_bound + 1):
            for dims in itertools.product(range(total + 1), repeat=q.n):
                if sum(dims) != total:
                    continue
                support = [v for v, d in zip(q.vertices, dims) if d]
                if q.support_connected(support):
                    vectors.append(tuple(dims))
        vectors.sort(key=lambda d: (sum(d), d))
        budget = 0
        for dims in vectors:
            budget += self.p ** sum(
                dims[q.index(a.target)] * dims[q.index(a.source)] for a in q.arrows
            )
        if budget > self.limits.indecomposable_search_limit:
            raise LimitExceeded(
                f"exhaustive search over {budget} arrow-matrix tuples exceeds "
                f"{self.limits.indecomposable_search_limit}"
            )
        found: List[Representation] = []
        for dims in vectors:
            same: List[Representation] = []
            for maps in self._tuples(dims):
                m = Representation(q, self.p, dims, maps)
                if not self.is_indecomposable(m):
                    continue
                if any(self.iso_test(x, m) is not None for x in same):
                    continue
                same.append(m)
            found.extend(same)
        found.sort(key=Representation.sort_key)
        self._indec_cache[dim_bound] = found
        return list(found)

    def indecomposables(self, bound: int) -> List[Representation]:
        return self.enumerate_indecomposables(bound)

    def objects(self, bound: int) -> List[Representation]:
        """Direct sums of pool indecomposables with total dimension <= bound."""
        indec = self.enumerate_indecomposables(bound)
        out: List[Representation] = []

        def grow(start: int, chosen: List[Representation], total: int) -> None:
            if chosen:
                out.append(chosen[0] if len(chosen) == 1 else self.direct_sum(chosen).obj)
            for i in range(start, len(indec)):
                if total + indec[i].dim <= bound:
                    grow(i, chosen + [indec[i]], total + indec[i].dim)

        grow(0, [], 0)
        out.sort(key=Representation.sort_key)
        return out

    def pool_exhaustive(self, bound: int) -> bool:
        top = self.quiver.max_indecomposable_dim()
        return top is not None and bound >= top

    def length(self, m: Representation) -> int:
        return m.dim

    def maxpart(self, m: Representation) -> int:
        return max((s.obj.dim for s in self.split(m).summands), default=0)

    def describe(self, m: Representation) -> str:
        if m in self.names:
            return self.names[m]
        if m.dim == 0:
            return "0"
        for known, label in self.names.items():
            if known.dims == m.dims:
                try:
                    if self.iso_test(known, m) is not None:
                        return f"{label}~"
                except Inconclusive:
                    continue
        return f"M{list(m.dims)}#{m.digest()}"

    # serialization
    def object_to_json(self, m: Representation) -> Dict[str, Any]:
        q = self.quiver
        return {
            "dims": {v: m.dims[i] for i, v in enumerate(q.vertices)},
            "maps": {a.name: m.maps[i].to_lists() for i, a in enumerate(q.arrows)},
        }

    def morphism_to_json(self, f: RepMorphism) -> Dict[str, Any]:
        return {
            "source": self.describe(f.source),
            "target": self.describe(f.target),
            "maps": {v: f.maps[i].to_lists() for i, v in enumerate(self.quiver.vertices)},
        }
