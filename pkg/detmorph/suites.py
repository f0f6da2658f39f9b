"""Acceptance suites run by `detmorph verify`.

Each suite works on the category of the loaded instance and declares the instance kinds it
applies to; suites that do not apply are reported as skipped, so an empty instance passes
vacuously with zero checks.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from . import ff_linalg as fl
from .ar_theory import ARTheory, almost_split_check
from .errors import CounterexampleFound, UnknownName
from .determined import (
    FALSE,
    TRUE,
    Engine,
    GammaSubmodule,
    ar_determiner,
    epi_mono_dichotomy_report,
)
from .ff_linalg import FFMatrix
from .instance import Instance
from .report import canonical_json
from .quiver_rep import QuiverCategory
from .tube_cat import TubeCategory, hom_dim_formula

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class SuiteResult:
    name: str
    status: str
    checks: int = 0
    details: Dict[str, Any] = field(default_factory=dict)
    reason: str = ""

    def to_json(self) -> Dict[str, Any]:
        out = {"suite": self.name, "status": self.status, "checks": self.checks,
               "details": self.details}
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass
class SuiteRun:
    requested: str
    results: List[SuiteResult]

    @property
    def checks(self) -> int:
        return sum(r.checks for r in self.results)

    @property
    def passed(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    def to_json(self) -> Dict[str, Any]:
        return {
            "suite": self.requested,
            "passed": self.passed,
            "checks": self.checks,
            "vacuous": self.checks == 0,
            "results": [r.to_json() for r in self.results],
        }


SuiteFn = Callable[[Instance, Optional[int]], Tuple[int, Dict[str, Any]]]


@dataclass
class _Suite:
    fn: SuiteFn
    kinds: Tuple[str, ...]
    help_text: str


SUITES: Dict[str, _Suite] = {}


def suite(name: str, kinds: Tuple[str, ...] = ("quiver", "tube")):
    def deco(fn: SuiteFn) -> SuiteFn:
        SUITES[name] = _Suite(fn, kinds, (fn.__doc__ or "").strip().splitlines()[0])
        return fn

    return deco


def suite_names() -> List[str]:
    return list(SUITES) + ["all"]


def run_suite(inst: Instance, name: str, bound: Optional[int] = None) -> SuiteRun:
    if name != "all" and name not in SUITES:
        raise UnknownName(f"unknown suite {name!r}; choose from {', '.join(suite_names())}")
    names = list(SUITES) if name == "all" else [name]
    results = []
    for n in names:
        s = SUITES[n]
        if inst.empty:
            results.append(SuiteResult(n, SKIPPED, reason="instance defines no category"))
            continue
        if inst.kind not in s.kinds:
            results.append(SuiteResult(n, SKIPPED, reason=f"does not apply to {inst.kind}"))
            continue
        try:
            checks, details = s.fn(inst, bound)
        except CounterexampleFound as exc:
            results.append(SuiteResult(n, FAIL, details=exc.to_json(), reason=str(exc)))
            continue
        results.append(SuiteResult(n, PASS, checks, details))
    return SuiteRun(name, results)


def _default(bound: Optional[int], value: int) -> int:
    return value if bound is None else bound


@suite("serre-dim", kinds=("tube",))
def serre_dim(inst: Instance, bound: Optional[int]) -> Tuple[int, Dict[str, Any]]:
    """dim Ext^1(X, Y) = dim Hom(Y, X) on the tube, with a nondegenerate trace pairing."""
    bound = _default(bound, 5)
    checks, per_field = 0, {}
    for p in sorted({inst.p, 2, 3}):
        cat = inst.category if p == inst.p else TubeCategory(p, inst.category.limits)
        objs = [cat.zero_object()] + cat.objects(bound)
        pairs = grams = 0
        for x in objs:
            for y in objs:
                e = cat.ext1(x, y).dim
                h = cat.hom(y, x).dim
                checks += 1
                pairs += 1
                if e != h or h != hom_dim_formula(cat.partition(y), cat.partition(x)):
                    raise CounterexampleFound(
                        "dim Ext^1(X, Y) differs from dim Hom(Y, X)",
                        {"field": p, "X": cat.describe(x), "Y": cat.describe(y),
                         "ext": e, "hom": h},
                    )
                if x.dim <= 4 and y.dim <= 4:
                    gram = cat.serre_gram(x, y)
                    checks += 1
                    grams += 1
                    if fl.rank(gram) != e:
                        raise CounterexampleFound(
                            "Serre pairing is degenerate",
                            {"field": p, "X": cat.describe(x), "Y": cat.describe(y),
                             "gram": gram.to_lists()},
                        )
        per_field[str(p)] = {"pairs": pairs, "gram_checks": grams}
    return checks, {"bound": bound, "fields": per_field}


@suite("epi-dichotomy", kinds=("tube",))
def epi_dichotomy(inst: Instance, bound: Optional[int]) -> Tuple[int, Dict[str, Any]]:
    """Epis are right determined by their kernel, non-epis by nothing; dually for monos."""
    bound = _default(bound, 3)
    report = epi_mono_dichotomy_report(inst.category, bound)
    checks = sum(side["determined_checks"] + side["witness_checks"]
                 for side in report.values())
    return checks, {"bound": bound, **report}


def _table_pairs(inst: Instance, bound: int) -> List[Tuple[Any, Any]]:
    cat = inst.category
    if inst.kind == "tube":
        j1, j2 = cat.block(1), cat.block(2)
        return [(j1, j1), (j2, j2), (cat.direct_sum([j1, j2]).obj, j2)]
    c = cat.direct_sum(inst.ar.projectives()).obj
    top = inst.quiver.max_indecomposable_dim()
    return [(c, y) for y in cat.indecomposables(min(bound, top) if top else bound)]


@suite("auslander-tables")
def auslander_tables(inst: Instance, bound: Optional[int]) -> Tuple[int, Dict[str, Any]]:
    """Auslander tables round trip and match a brute-force class count."""
    cat = inst.category
    engine = Engine(cat)
    checks, tables = 0, []
    for c, y in _table_pairs(inst, _default(bound, 3)):
        table = engine.auslander_table(c, y)
        submodules = engine.enumerate_submodules(engine.gamma_module(c, y))
        if len(table.rows) != len(submodules):
            raise CounterexampleFound("row count differs from the submodule count",
                                      {"C": cat.describe(c), "Y": cat.describe(y)})
        source_bound = max((cat.length(r.morphism.source) for r in table.rows), default=0)
        oracle = engine.determined_class_count(c, y, max(source_bound, 1), table.bound)
        if oracle != len(table.rows):
            raise CounterexampleFound(
                "brute-force class count differs from the table",
                {"C": cat.describe(c), "Y": cat.describe(y), "rows": len(table.rows),
                 "oracle": oracle, "source_bound": source_bound},
            )
        checks += sum(len(r.checks) for r in table.rows) + 2
        tables.append({"C": cat.describe(c), "Y": cat.describe(y), "rows": len(table.rows),
                       "oracle": oracle, "source_bound": source_bound})
    return checks, {"tables": tables}


@suite("dualizing-contrast")
def dualizing_contrast(inst: Instance, bound: Optional[int]) -> Tuple[int, Dict[str, Any]]:
    """mod A has determined morphisms everywhere; the tube's zero map onto J1 has none."""
    cat = inst.category
    engine = Engine(cat)
    bound = _default(bound, 3)
    checks = 0
    if inst.kind == "tube":
        alpha = cat.zero(cat.zero_object(), cat.block(1))
        for c in cat.objects(bound):
            v = engine.is_right_determined(alpha, c)
            checks += 1
            if v.verdict != FALSE:
                raise CounterexampleFound("the zero map onto J1 passed", {"C": cat.describe(c)})
        return checks, {"bound": bound, "pool_objects": checks, "exact": False}
    if inst.quiver.max_indecomposable_dim() is None:
        return 0, {"note": "quiver is not of finite representation type"}
    pool = cat.indecomposables(bound)
    determiners: Dict[str, int] = {}
    exact = 0
    for x in pool:
        for y in pool:
            for alpha in cat.hom(x, y).elements(cat.limits.enumeration_limit):
                scan = engine.minimal_determiner_scan(alpha, bound)
                checks += len(scan.verdicts)
                if scan.determiner is None:
                    raise CounterexampleFound("no pool object right-determines a morphism",
                                              {"morphism": cat.morphism_to_json(alpha)})
                exact += scan.verdicts[-1][1].verdict == TRUE
                c = ar_determiner(inst.ar, alpha)
                checks += 1
                if not engine.is_right_determined(alpha, c).holds:
                    raise CounterexampleFound("alpha is not determined by tau^-1 Ker + projectives",
                                              {"morphism": cat.morphism_to_json(alpha)})
                name = scan.verdicts[-1][0]
                determiners[name] = determiners.get(name, 0) + 1
    return checks, {"bound": bound, "exact_verdicts": exact,
                    "minimal_determiners": dict(sorted(determiners.items()))}


@suite("almost-split")
def almost_split(inst: Instance, bound: Optional[int]) -> Tuple[int, Dict[str, Any]]:
    """Constructed almost split sequences pass the definitional check."""
    cat = inst.category
    bound = _default(bound, 3)
    checks, rows = 0, []
    if inst.kind == "tube":
        for length in range(1, bound + 1):
            seq = cat.almost_split_sequence(length)
            check = almost_split_check(cat, seq, length + 2)
            middle = sorted((cat.length(s.obj) for s in cat.split(seq.middle).summands),
                            reverse=True)
            checks += 1 + len(check.certificate)
            expected = [length + 1] + ([length - 1] if length > 1 else [])
            if not check.passed or middle != expected:
                raise CounterexampleFound(f"almost split sequence ending at J{length} failed",
                                          {"check": check.to_json(), "middle": middle})
            rows.append({"Y": f"J{length}", "middle": middle, "bound": length + 2})
        return checks, {"sequences": rows}
    for y in cat.indecomposables(bound):
        if inst.ar.is_projective(y):
            continue
        _, check = inst.ar.almost_split_ending_at(y, bound)
        checks += 1 + len(check.certificate)
        rows.append({"Y": cat.describe(y), "bound": check.bound, "exhaustive": check.exhaustive})
    record = inst.ar.ar_duality_record(bound)
    checks += record["pairs"]
    return checks, {"sequences": rows,
                    "ar_duality": {"pairs": record["pairs"], "equal": record["equal"]}}


@suite("proj-trivial")
def proj_trivial(inst: Instance, bound: Optional[int]) -> Tuple[int, Dict[str, Any]]:
    """Only the zero morphism has Ext^1(f, -) = 0 on the tube; mod A sanity checks."""
    cat = inst.category
    bound = _default(bound, 3)
    checks = 0
    if inst.kind == "tube":
        test_pool = cat.indecomposables(bound + 1)
        objs = cat.objects(bound)
        for x in objs:
            for y in objs:
                sub = cat.projectively_trivial_subspace(x, y, test_pool)
                checks += cat.hom(x, y).size
                if sub.dim:
                    f = cat.hom(x, y).element(sub.vectors()[0])
                    raise CounterexampleFound("a nonzero morphism is projectively trivial",
                                              {"morphism": cat.morphism_to_json(f)})
                if not cat.projectively_trivial_check(cat.zero(x, y), bound + 1):
                    raise CounterexampleFound("zero morphism is not projectively trivial",
                                              {"X": cat.describe(x), "Y": cat.describe(y)})
        return checks, {"bound": bound, "test_bound": bound + 1}
    ar = inst.ar
    pool = cat.indecomposables(bound)
    for x in pool:
        for y in pool:
            for f in cat.hom(x, y).basis:
                checks += 1
                if ar.is_projective(x) and not ar.projectively_trivial_check(f, bound):
                    raise CounterexampleFound("a morphism out of a projective survives Ext^1",
                                              {"morphism": cat.morphism_to_json(f)})
        if not ar.is_projective(x):
            checks += 1
            if ar.projectively_trivial_check(cat.identity(x), bound):
                raise CounterexampleFound("identity of a non-projective is projectively trivial",
                                          {"X": cat.describe(x)})
    return checks, {"bound": bound}


@suite("right-equivalence")
def right_equivalence(inst: Instance, bound: Optional[int]) -> Tuple[int, Dict[str, Any]]:
    """Seeded random pairs: right equivalent exactly when Im Hom(C, -) agrees."""
    cat = inst.category
    engine = Engine(cat)
    size = _default(bound, 2)
    rng = cat.limits.rng()
    cs = cat.objects(size)
    ys = cat.indecomposables(size)
    subs: Dict[Tuple[int, int], List[GammaSubmodule]] = {}
    reps: Dict[Tuple[int, int, int, bool], Any] = {}
    # determinedness of a representative is searched up to the pool limit at most
    verdicts: Dict[str, int] = {}

    def representative(ci: int, yi: int, hi: int, minimal: bool) -> Any:
        key = (ci, yi, hi, minimal)
        if key not in reps:
            h = subs[(ci, yi)][hi]
            alpha = engine.represent_pair(cs[ci], h)
            if minimal:
                alpha = engine.right_minimize(alpha).morphism
            if engine.im_hom(cs[ci], alpha) != h:
                raise CounterexampleFound("represented pair does not round trip",
                                          {"C": cat.describe(cs[ci]), "Y": cat.describe(ys[yi])})
            limit = min(engine.default_bound(alpha, cs[ci]), cat.limits.pool_limit)
            verdict = engine.is_right_determined(alpha, cs[ci], limit)
            if not verdict.holds:
                raise CounterexampleFound("represented morphism is not C-determined",
                                          {"morphism": cat.morphism_to_json(alpha)})
            verdicts[verdict.verdict] = verdicts.get(verdict.verdict, 0) + 1
            reps[key] = alpha
        return reps[key]

    pairs = 200
    equivalent = 0
    for _ in range(pairs):
        ci, yi = int(rng.integers(len(cs))), int(rng.integers(len(ys)))
        if (ci, yi) not in subs:
            subs[(ci, yi)] = engine.enumerate_submodules(engine.gamma_module(cs[ci], ys[yi]))
        n = len(subs[(ci, yi)])
        h1 = int(rng.integers(n))
        h2 = h1 if rng.integers(2) else int(rng.integers(n))
        a1 = representative(ci, yi, h1, True)
        a2 = representative(ci, yi, h2, h1 != h2 or bool(rng.integers(2)))
        same = engine.right_equivalent(a1, a2)
        if same != (h1 == h2):
            raise CounterexampleFound(
                "right equivalence disagrees with Im Hom(C, -)",
                {"C": cat.describe(cs[ci]), "first": cat.morphism_to_json(a1),
                 "second": cat.morphism_to_json(a2)},
            )
        if same and cat.is_epi(a1) != cat.is_epi(a2):
            raise CounterexampleFound("right equivalent morphisms differ in epi-ness",
                                      {"first": cat.morphism_to_json(a1),
                                       "second": cat.morphism_to_json(a2)})
        equivalent += same
    return 2 * pairs, {"pairs": pairs, "equivalent": equivalent, "seed": cat.limits.seed,
                       "representatives": len(reps),
                       "verdicts": dict(sorted(verdicts.items()))}


@suite("infrastructure")
def infrastructure(inst: Instance, bound: Optional[int]) -> Tuple[int, Dict[str, Any]]:
    """Rank-nullity, rref idempotence, decompose/direct-sum round trip, report determinism."""
    cat = inst.category
    rng = cat.limits.rng()
    checks = 0
    for p in (2, 3, 5):
        for _ in range(10):
            rows, cols = int(rng.integers(1, 7)), int(rng.integers(1, 7))
            m = FFMatrix.random(rows, cols, p, rng)
            r = fl.rref(m)
            checks += 2
            if r.rank + fl.kernel_basis(m).dim != cols:
                raise CounterexampleFound("rank-nullity fails", {"matrix": m.to_lists()})
            if fl.rref(r.matrix).matrix != r.matrix:
                raise CounterexampleFound("rref is not idempotent", {"matrix": m.to_lists()})
    objs = cat.objects(_default(bound, 3))
    for x in objs:
        parts = [s.obj for s in cat.split(x).summands]
        checks += 1
        if cat.iso_test(cat.direct_sum(parts).obj, x) is None:
            raise CounterexampleFound("direct sum of the summands is not isomorphic",
                                      {"object": cat.object_to_json(x)})

    def table_report(category: Any) -> str:
        c, y = category.objects(2)[-1], category.indecomposables(2)[-1]
        return canonical_json(Engine(category).auslander_table(c, y).to_json(category))

    def fresh() -> Any:
        if inst.kind == "quiver":
            return ARTheory(QuiverCategory(inst.quiver, cat.p, cat.limits)).cat
        return TubeCategory(cat.p, cat.limits)

    checks += 1
    first, second = table_report(fresh()), table_report(fresh())
    if first != second:
        raise CounterexampleFound("reports differ between identical runs", {})
    digest = hashlib.sha256(first.encode("utf-8")).hexdigest()
    return checks, {"objects": len(objs), "report_sha256": digest}
