"""Auslander-Reiten constructions in mod A, plus the category-generic almost split check.

Presentations come from the top of M: P0 = sum of P(v)^(dim top_v), P1 = the projective cover of
the (projective) kernel. tau is computed as the kernel of the Nakayama image of d, tau^-1 through
the dual representation on the opposite quiver.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import ff_linalg as fl
from .category import (
    Biproduct,
    HomSpace,
    ShortExactSequence,
    extend_through,
    is_iso,
    lift_through,
    morphism_from_components,
)
from .errors import CounterexampleFound, Inconclusive, NotApplicable
from .ff_linalg import FFMatrix
from .quiver_rep import Path, QuiverCategory, RepMorphism, Representation


@dataclass
class ProjectivePresentation:
    """P1 --d--> P0 --cover--> M --> 0, with the vertex of every indecomposable summand."""

    module: Representation
    p1: Representation
    p0: Representation
    d: RepMorphism
    cover: RepMorphism
    p1_vertices: List[str]
    p0_vertices: List[str]
    p1_sum: Biproduct[RepMorphism]
    p0_sum: Biproduct[RepMorphism]


@dataclass
class ExtSpace:
    """Ext^1(X, Y) as Hom(P1, Y) modulo the coboundaries g o d."""

    x: Any
    y: Any
    presentation: ProjectivePresentation
    cocycles: HomSpace[RepMorphism]
    coboundaries: fl.Subspace
    class_reps: List[RepMorphism]

    @property
    def dim(self) -> int:
        return len(self.class_reps)

    def is_coboundary(self, phi: RepMorphism) -> bool:
        return fl.contains(self.coboundaries, self.cocycles.coordinates(phi))

    def class_coordinates(self, phi: RepMorphism) -> np.ndarray:
        q = self.coboundaries.quotient_map()
        coords = self.cocycles.coordinates(phi).reshape(-1, 1)
        return (q @ FFMatrix(coords, q.p, shape=(q.cols, 1))).flat()

    def cocycle(self, coeffs: Sequence[int]) -> RepMorphism:
        flat = np.zeros(self.cocycles.space.ambient_dim, dtype=np.int64)
        for c, rep in zip(coeffs, self.class_reps):
            flat = flat + int(c) * self.cocycles.flatten(rep)
        return self.cocycles.build(flat)


@dataclass
class AlmostSplitCheck:
    passed: bool
    reason: str
    bound: int
    exhaustive: bool
    certificate: List[Dict[str, Any]] = field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "reason": self.reason,
            "bound": self.bound,
            "exhaustive": self.exhaustive,
            "certificate": self.certificate,
        }


def almost_split_check(cat: Any, seq: ShortExactSequence[Any], test_bound: int) -> AlmostSplitCheck:
    """Definitional check of 0 -> left -> middle -> right -> 0 against the pool up to test_bound.

    Works in any category following the protocol. Non-retractions T -> right are all morphisms
    when T is not isomorphic to right, and the non-isomorphisms otherwise.
    """
    exhaustive = bool(cat.pool_exhaustive(test_bound))

    def fail(reason: str) -> AlmostSplitCheck:
        return AlmostSplitCheck(False, reason, test_bound, exhaustive)

    if not (cat.is_mono(seq.iota) and cat.is_epi(seq.pi)):
        return fail("iota is not mono or pi is not epi")
    composite = cat.compose(seq.pi, seq.iota)
    if cat.hom(seq.left, seq.right).coordinates(composite).any():
        return fail("pi o iota is not zero")
    if cat.length(seq.middle) != cat.length(seq.left) + cat.length(seq.right):
        return fail("sequence is not exact in the middle")
    if lift_through(cat, cat.identity(seq.right), seq.pi) is not None:
        return fail("sequence splits")
    if not cat.is_indecomposable(seq.right):
        return fail("right term is decomposable")
    if not cat.is_indecomposable(seq.left):
        return fail("left term is decomposable")

    certificate: List[Dict[str, Any]] = []
    for t_obj in cat.indecomposables(test_bound):
        h = cat.hom(t_obj, seq.right)
        through = cat.hom(t_obj, seq.middle).image_of(lambda g: cat.compose(seq.pi, g), h)
        entry = {"object": cat.describe(t_obj), "morphisms": h.size,
                 "non_retractions": 0, "lifted": 0}
        try:
            same = cat.iso_test(t_obj, seq.right) is not None
        except Inconclusive:
            same = True
        if not same:
            if through.dim != h.dim:
                missing = next(b for b in h.basis if not fl.contains(through, h.coordinates(b)))
                entry["failed"] = cat.morphism_to_json(missing)
                certificate.append(entry)
                return AlmostSplitCheck(False, f"a morphism from {entry['object']} does not lift",
                                        test_bound, exhaustive, certificate)
            entry["non_retractions"] = entry["lifted"] = h.size
        else:
            for t in h.elements(cat.limits.enumeration_limit):
                if is_iso(cat, t):
                    continue
                entry["non_retractions"] += 1
                if not fl.contains(through, h.coordinates(t)):
                    entry["failed"] = cat.morphism_to_json(t)
                    certificate.append(entry)
                    return AlmostSplitCheck(False, f"a non-retraction from {entry['object']} "
                                            "does not lift", test_bound, exhaustive, certificate)
                entry["lifted"] += 1
        certificate.append(entry)
    return AlmostSplitCheck(True, "ok", test_bound, exhaustive, certificate)


class ARTheory:
    """Path-algebra constructions and the AR translate for one QuiverCategory."""

    def __init__(self, cat: QuiverCategory):
        self.cat = cat
        self.quiver = cat.quiver
        self.p = cat.p
        self._presentations: Dict[Representation, ProjectivePresentation] = {}
        self._dual: Optional["ARTheory"] = None
        self.register_names()

    # standard modules
    def simple(self, v: str) -> Representation:
        dims = [1 if w == v else 0 for w in self.quiver.vertices]
        return self.cat.rep(dims)

    def projective(self, i: str) -> Representation:
        """P(i): paths starting at i, arrows act by extending the path."""
        q = self.quiver
        bases = {v: q.paths(i, v) for v in q.vertices}
        maps = []
        for k, a in enumerate(q.arrows):
            src, tgt = bases[a.source], bases[a.target]
            m = np.zeros((len(tgt), len(src)), dtype=np.int64)
            for col, path in enumerate(src):
                m[tgt.index(path.then(Path(a.source, a.target, (k,)))), col] = 1
            maps.append(FFMatrix(m, self.p, shape=m.shape))
        return self.cat.rep([len(bases[v]) for v in q.vertices], maps)

    def injective(self, i: str) -> Representation:
        """I(i): dual of the paths ending at i."""
        q = self.quiver
        bases = {v: q.paths(v, i) for v in q.vertices}
        maps = []
        for k, a in enumerate(q.arrows):
            src, tgt = bases[a.source], bases[a.target]
            m = np.zeros((len(tgt), len(src)), dtype=np.int64)
            for row, path in enumerate(tgt):
                m[row, src.index(Path(a.source, a.target, (k,)).then(path))] = 1
            maps.append(FFMatrix(m, self.p, shape=m.shape))
        return self.cat.rep([len(bases[v]) for v in q.vertices], maps)

    def simples(self) -> List[Representation]:
        return [self.simple(v) for v in self.quiver.vertices]

    def projectives(self) -> List[Representation]:
        return [self.projective(v) for v in self.quiver.vertices]

    def injectives(self) -> List[Representation]:
        return [self.injective(v) for v in self.quiver.vertices]

    def register_names(self) -> None:
        for v in self.quiver.vertices:
            self.cat.names.setdefault(self.simple(v), f"S{v}")
        for v in self.quiver.vertices:
            self.cat.names.setdefault(self.projective(v), f"P{v}")
        for v in self.quiver.vertices:
            self.cat.names.setdefault(self.injective(v), f"I{v}")

    # radical, top, socle
    def _subrep(self, m: Representation,
                subs: List[fl.Subspace]) -> Tuple[Representation, RepMorphism]:
        incl = [s.basis.T for s in subs]
        maps = []
        for k, a in enumerate(self.quiver.arrows):
            s, t = self.quiver.index(a.source), self.quiver.index(a.target)
            maps.append(self.cat._coords_in(subs[t], m.maps[k] @ incl[s]))
        sub = Representation(self.quiver, self.p, [s.dim for s in subs], maps)
        return sub, RepMorphism(sub, m, incl)

    def _radical_spaces(self, m: Representation) -> List[fl.Subspace]:
        q = self.quiver
        out = []
        for v in q.vertices:
            images = [m.maps[k] for k, a in enumerate(q.arrows) if a.target == v]
            if images:
                out.append(fl.image_basis(fl.hstack(images, self.p, m.dim_at(v))))
            else:
                out.append(fl.Subspace.zero(m.dim_at(v), self.p))
        return out

    def radical(self, m: Representation) -> Tuple[Representation, RepMorphism]:
        return self._subrep(m, self._radical_spaces(m))

    def top(self, m: Representation) -> Tuple[Representation, RepMorphism]:
        _, incl = self.radical(m)
        return self.cat.cokernel(incl)

    def socle(self, m: Representation) -> Tuple[Representation, RepMorphism]:
        q = self.quiver
        subs = []
        for v in q.vertices:
            outgoing = [m.maps[k] for k, a in enumerate(q.arrows) if a.source == v]
            if outgoing:
                subs.append(fl.kernel_basis(fl.vstack(outgoing, self.p, m.dim_at(v))))
            else:
                subs.append(fl.Subspace.full(m.dim_at(v), self.p))
        return self._subrep(m, subs)

    # presentations
    def _generated_by(self, v: str, m: Representation, vector: np.ndarray) -> RepMorphism:
        """The map P(v) -> M sending the trivial path at v to `vector`."""
        col = FFMatrix.column(vector, self.p)
        maps = []
        for w in self.quiver.vertices:
            paths = self.quiver.paths(v, w)
            if paths:
                maps.append(fl.hstack([m.path_map(path) @ col for path in paths], self.p,
                                      m.dim_at(w)))
            else:
                maps.append(FFMatrix.zeros(m.dim_at(w), 0, self.p))
        return RepMorphism(self.projective(v), m, maps)

    def _cover(self, m: Representation) -> Tuple[List[str], Biproduct[RepMorphism], RepMorphism]:
        vertices, components = [], []
        for v, rad in zip(self.quiver.vertices, self._radical_spaces(m)):
            section = rad.quotient_section()
            for j in range(section.cols):
                vertices.append(v)
                components.append(self._generated_by(v, m, section.data[:, j]))
        if not components:
            b = self.cat.direct_sum([])
            return vertices, b, self.cat.zero(b.obj, m)
        b, total = morphism_from_components(self.cat, components, m)
        return vertices, b, total

    def projective_cover(self, m: Representation) -> ProjectivePresentation:
        """Minimal projective presentation; cover induces an isomorphism on tops."""
        if m in self._presentations:
            return self._presentations[m]
        p0_vertices, p0_sum, cover = self._cover(m)
        k_obj, k = self.cat.kernel(cover)
        p1_vertices, p1_sum, k_cover = self._cover(k_obj)
        d = self.cat.compose(k, k_cover)
        pres = ProjectivePresentation(m, p1_sum.obj, p0_sum.obj, d, cover,
                                      p1_vertices, p0_vertices, p1_sum, p0_sum)
        self._presentations[m] = pres
        return pres

    def is_projective(self, m: Representation) -> bool:
        return self.projective_cover(m).p1.dim == 0

    def is_injective(self, m: Representation) -> bool:
        return self.dual().is_projective(m.dual())

    # Nakayama functor and tau
    def _path_coefficients(self, u: RepMorphism, i: str, j: str) -> Dict[Tuple[int, ...], int]:
        """u: P(i) -> P(j) is determined by u(e_i), a combination of the paths j -> i."""
        column = u.at(i).data[:, 0]
        return {path.arrows: int(c) for path, c in zip(self.quiver.paths(j, i), column) if c}

    def _nakayama_component(self, u: RepMorphism, i: str, j: str) -> RepMorphism:
        """nu(u): I(i) -> I(j), sending the functional on paths v -> i to q |-> f(q then r)."""
        coeffs = self._path_coefficients(u, i, j)
        maps = []
        for v in self.quiver.vertices:
            rows = self.quiver.paths(v, j)
            cols = self.quiver.paths(v, i)
            m = np.zeros((len(rows), len(cols)), dtype=np.int64)
            for a, q in enumerate(rows):
                for arrows, c in coeffs.items():
                    target = q.arrows + arrows
                    for b, s in enumerate(cols):
                        if s.arrows == target:
                            m[a, b] += c
            maps.append(FFMatrix(m, self.p, shape=m.shape))
        return RepMorphism(self.injective(i), self.injective(j), maps)

    def nakayama(self, pres: ProjectivePresentation) -> RepMorphism:
        src = self.cat.direct_sum([self.injective(v) for v in pres.p1_vertices])
        tgt = self.cat.direct_sum([self.injective(v) for v in pres.p0_vertices])
        h = self.cat.hom(src.obj, tgt.obj)
        total = h.zero()
        for k, i in enumerate(pres.p1_vertices):
            for l, j in enumerate(pres.p0_vertices):
                comp = self.cat.compose(
                    pres.p0_sum.projections[l],
                    self.cat.compose(pres.d, pres.p1_sum.injections[k]),
                )
                nu = self._nakayama_component(comp, i, j)
                piece = self.cat.compose(tgt.injections[l],
                                         self.cat.compose(nu, src.projections[k]))
                total = h.add(total, piece)
        return total

    def tau(self, m: Representation) -> Representation:
        pres = self.projective_cover(m)
        if pres.p1.dim == 0:
            return self.cat.zero_object()
        k_obj, _ = self.cat.kernel(self.nakayama(pres))
        return k_obj

    def dual(self) -> "ARTheory":
        if self._dual is None:
            self._dual = ARTheory(QuiverCategory(self.quiver.opposite(), self.p, self.cat.limits))
        return self._dual

    def tau_inverse(self, m: Representation) -> Representation:
        t = self.dual().tau(m.dual())
        back = t.dual()
        return Representation(self.quiver, self.p, back.dims, back.maps)

    # Ext^1
    def ext1(self, x: Representation, y: Representation) -> ExtSpace:
        pres = self.projective_cover(x)
        cocycles = self.cat.hom(pres.p1, y)
        boundaries = self.cat.hom(pres.p0, y).image_of(
            lambda g: self.cat.compose(g, pres.d), cocycles
        )
        section = boundaries.quotient_section()
        reps = [cocycles.element(section.data[:, j]) for j in range(section.cols)]
        return ExtSpace(x, y, pres, cocycles, boundaries, reps)

    def materialize(self, ext: ExtSpace, phi: RepMorphism) -> ShortExactSequence[RepMorphism]:
        """0 -> Y -> E -> X -> 0 with E the pushout of d along the cocycle phi."""
        pres = ext.presentation
        b = self.cat.direct_sum([pres.p0, ext.y])
        h = self.cat.hom(pres.p1, b.obj)
        psi = h.add(self.cat.compose(b.injections[0], pres.d),
                    h.scale(-1, self.cat.compose(b.injections[1], phi)))
        e_obj, q = self.cat.cokernel(psi)
        iota = self.cat.compose(q, b.injections[1])
        pi = extend_through(self.cat, self.cat.compose(pres.cover, b.projections[0]), q)
        if pi is None:
            raise CounterexampleFound("pushout does not map onto X", {"x": ext.x.dims})
        return ShortExactSequence(ext.y, e_obj, ext.x, iota, pi)

    # almost split sequences
    def almost_split_ending_at(self, y: Representation,
                               test_bound: Optional[int] = None
                               ) -> Tuple[ShortExactSequence[RepMorphism], AlmostSplitCheck]:
        if not self.cat.is_indecomposable(y):
            raise NotApplicable("almost split sequences end at indecomposables")
        if self.is_projective(y):
            raise NotApplicable(f"{self.cat.describe(y)} is projective")
        left = self.tau(y)
        ext = self.ext1(y, left)
        bound = test_bound or 1 + left.dim + y.dim
        candidates: List[RepMorphism] = list(ext.class_reps)
        if self.p ** ext.dim <= self.cat.limits.enumeration_limit:
            candidates += [ext.cocycle(c) for c in fl.iter_vectors(ext.dim, self.p) if c.any()]
        last: Optional[AlmostSplitCheck] = None
        for phi in candidates:
            seq = self.materialize(ext, phi)
            last = almost_split_check(self.cat, seq, bound)
            if last.passed:
                return seq, last
        raise CounterexampleFound(
            f"no extension class of {self.cat.describe(y)} by its translate is almost split",
            {"last_check": last.to_json() if last else None},
        )

    # projectively trivial morphisms
    def _lift_to_presentations(self, f: RepMorphism) -> RepMorphism:
        src, tgt = self.projective_cover(f.source), self.projective_cover(f.target)
        f0 = lift_through(self.cat, self.cat.compose(f, src.cover), tgt.cover)
        if f0 is None:
            raise CounterexampleFound("projective cover does not lift", {})
        f1 = lift_through(self.cat, self.cat.compose(f0, src.d), tgt.d)
        if f1 is None:
            raise CounterexampleFound("presentation map does not lift to P1", {})
        return f1

    def projectively_trivial_witness(self, f: RepMorphism, test_bound: int
                                     ) -> Optional[Tuple[Representation, RepMorphism]]:
        """A (W, cocycle) whose class survives Ext^1(f, W), or None."""
        f1 = self._lift_to_presentations(f)
        for w in self.cat.indecomposables(test_bound):
            ext_tgt = self.ext1(f.target, w)
            if ext_tgt.dim == 0:
                continue
            ext_src = self.ext1(f.source, w)
            for phi in ext_tgt.class_reps:
                if not ext_src.is_coboundary(self.cat.compose(phi, f1)):
                    return w, phi
        return None

    def projectively_trivial_check(self, f: RepMorphism, test_bound: int) -> bool:
        return self.projectively_trivial_witness(f, test_bound) is None

    # AR duality bookkeeping
    def ar_duality_record(self, bound: int) -> Dict[str, Any]:
        pool = self.cat.indecomposables(bound)
        rows, exact = [], 0
        for x in pool:
            if self.is_projective(x):
                continue
            tx = self.tau(x)
            for y in pool:
                e = self.ext1(x, y).dim
                h = self.cat.hom(y, tx).dim
                if e > h:
                    raise CounterexampleFound(
                        "dim Ext^1(X, Y) exceeds dim Hom(Y, tau X)",
                        {"x": self.cat.describe(x), "y": self.cat.describe(y), "ext": e, "hom": h},
                    )
                exact += e == h
                rows.append({"x": self.cat.describe(x), "y": self.cat.describe(y),
                             "ext": e, "hom": h, "equal": e == h})
        return {"pairs": len(rows), "equal": exact, "rows": rows}
