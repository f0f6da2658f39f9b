"""Subcommands. Each one loads an instance, computes, and hands a JSON payload to the report."""
from __future__ import annotations

import pathlib
import sys
from typing import Any, Dict, List, Optional

from . import ff_linalg as fl
from .app import App, Arg, Opt
from .ar_theory import almost_split_check
from .determined import BOUNDED, Engine, GammaSubmodule, ar_determiner
from .errors import CounterexampleFound, DimensionMismatch, NotApplicable
from .instance import Instance
from .suites import run_suite, suite_names

app = App("detmorph", title="detmorph: morphisms determined by objects")

INSTANCE = Arg("instance", pathlib.Path)


def _summands(cat: Any, obj: Any) -> List[str]:
    return sorted(cat.describe(s.obj) for s in cat.split(obj).summands)


def _object(cat: Any, obj: Any) -> Dict[str, Any]:
    return {"name": cat.describe(obj), "dim": cat.length(obj), "summands": _summands(cat, obj),
            "json": cat.object_to_json(obj)}


def _cocycle_json(inst: Instance, phi: Any) -> Any:
    return phi.to_lists() if inst.kind == "tube" else inst.category.morphism_to_json(phi)


def _ext(inst: Instance, x: Any, y: Any) -> Any:
    return inst.category.ext1(x, y) if inst.kind == "tube" else inst.ar.ext1(x, y)


def _materialize(inst: Instance, ext: Any, phi: Any) -> Any:
    target = inst.category if inst.kind == "tube" else inst.ar
    return target.materialize(ext, phi)


def _warn_verdict(verdict: Any) -> None:
    if verdict.verdict == BOUNDED:
        app.warn(f"verdict holds on the pool up to length {verdict.bound} only")


@app.command("hom", args=[INSTANCE, Arg("x"), Arg("y")])
def cmd_hom(instance, x, y):
    """Basis and dimension of Hom(X, Y)."""
    inst = app.load(instance)
    cat = inst.require()
    h = cat.hom(inst.object(x), inst.object(y))
    basis = [cat.morphism_to_json(f) for f in h.basis]
    rows = [{"k": k, "morphism": b} for k, b in enumerate(basis)]
    app.emit({"source": x, "target": y, "dim": h.dim, "basis": basis}, rows)
    app.ok(f"dim Hom({x}, {y}) = {h.dim}")


@app.command("kernel", args=[INSTANCE, Arg("morphism")])
def cmd_kernel(instance, morphism):
    """Kernel, image and cokernel of a morphism."""
    inst = app.load(instance)
    cat = inst.require()
    f = inst.morphism(morphism)
    k_obj, _ = cat.kernel(f)
    im = cat.image(f)
    c_obj, _ = cat.cokernel(f)
    results = {"morphism": cat.morphism_to_json(f), "kernel": _object(cat, k_obj),
               "image": _object(cat, im.obj), "cokernel": _object(cat, c_obj),
               "is_epi": cat.is_epi(f), "is_mono": cat.is_mono(f)}
    rows = [{"part": part, "object": results[part]["name"], "dim": results[part]["dim"]}
            for part in ("kernel", "image", "cokernel")]
    app.emit(results, rows)
    app.table(f"{morphism}", rows)


@app.command("ext", args=[INSTANCE, Arg("x"), Arg("y")])
def cmd_ext(instance, x, y):
    """Ext^1(X, Y) with one materialized extension per basis class."""
    inst = app.load(instance)
    cat = inst.require()
    ext = _ext(inst, inst.object(x), inst.object(y))
    classes = []
    for phi in ext.class_reps:
        seq = _materialize(inst, ext, phi)
        classes.append({"cocycle": _cocycle_json(inst, phi),
                        "middle": _summands(cat, seq.middle)})
    rows = [{"k": k, "middle": "+".join(c["middle"]) or "0"} for k, c in enumerate(classes)]
    app.emit({"X": x, "Y": y, "dim": ext.dim, "classes": classes}, rows)
    app.ok(f"dim Ext^1({x}, {y}) = {ext.dim}")


@app.command("tau", args=[INSTANCE, Arg("x")])
def cmd_tau(instance, x):
    """Auslander-Reiten translate and its inverse."""
    inst = app.load(instance)
    cat = inst.require()
    obj = inst.object(x)
    if inst.kind == "tube":
        tau = tau_inv = obj
        app.info("tau is the identity on the tube")
    else:
        tau, tau_inv = inst.ar.tau(obj), inst.ar.tau_inverse(obj)
    results = {"X": x, "tau": _object(cat, tau), "tau_inverse": _object(cat, tau_inv)}
    rows = [{"functor": k, "object": results[k]["name"]} for k in ("tau", "tau_inverse")]
    app.emit(results, rows)
    app.table(f"translates of {x}", rows)


@app.command("decompose", args=[INSTANCE, Arg("x")])
def cmd_decompose(instance, x):
    """Krull-Schmidt decomposition with multiplicities."""
    inst = app.load(instance)
    cat = inst.require()
    obj = inst.object(x)
    if inst.kind == "tube":
        lam = cat.partition(obj)
        parts = [(cat.block(k), lam.count(k)) for k in sorted(set(lam), reverse=True)]
        certified, warnings = True, []
    else:
        d = cat.decompose(obj)
        parts, certified, warnings = d.parts, d.certified, d.warnings
    for w in warnings:
        app.warn(w)
    rows = [{"summand": cat.describe(p), "dim": cat.length(p), "multiplicity": m}
            for p, m in parts]
    app.emit({"X": x, "certified": certified,
              "parts": [{**r, "json": cat.object_to_json(p)} for r, (p, _) in zip(rows, parts)]},
             rows)
    app.table(f"summands of {x}", rows)


@app.command("determined", args=[INSTANCE, Arg("morphism"), Arg("c"), Opt("left", bool)])
def cmd_determined(instance, morphism, c, left):
    """Is the morphism right (or --left) determined by C?"""
    inst = app.load(instance)
    cat = inst.require()
    engine = Engine(cat)
    alpha, c_obj = inst.morphism(morphism), inst.object(c)
    bound = app.settings.bound
    verdict = (engine.is_left_determined(alpha, c_obj, bound) if left
               else engine.is_right_determined(alpha, c_obj, bound))
    _warn_verdict(verdict)
    results = {"morphism": cat.morphism_to_json(alpha), "C": c,
               "side": "left" if left else "right", **verdict.to_json()}
    if not left and inst.kind == "quiver":
        results["ar_determiner"] = cat.describe(ar_determiner(inst.ar, alpha))
    app.emit(results, [{"C": c, "verdict": verdict.verdict, "bound": verdict.bound,
                        "checks": verdict.checks_performed}])
    app.ok(f"{morphism} determined by {c}: {verdict.verdict}")


@app.command("represent", args=[INSTANCE, Arg("c"), Arg("y"), Opt("gen", repeat=True)])
def cmd_represent(instance, c, y, gen):
    """Morphism right-representing (C, H), H generated by --gen morphisms C -> Y."""
    inst = app.load(instance)
    cat = inst.require()
    engine = Engine(cat)
    c_obj, y_obj = inst.object(c), inst.object(y)
    g = engine.gamma_module(c_obj, y_obj)
    vectors = []
    for name in gen or []:
        f = inst.morphism(name)
        if f.source != c_obj or f.target != y_obj:
            raise DimensionMismatch(f"generator {name} is not a morphism {c} -> {y}")
        vectors.append(g.hom.coordinates(f))
    h = GammaSubmodule(g, g.closure(vectors))
    alpha = engine.represent_pair(c_obj, h, app.settings.bound)
    if engine.im_hom(c_obj, alpha) != h:
        raise CounterexampleFound("Im Hom(C, alpha) differs from H",
                                  {"carrier": h.carrier.basis.to_lists()})
    minimized = engine.right_minimize(alpha)
    for w in minimized.warnings:
        app.warn(w)
    verdict = engine.is_right_determined(minimized.morphism, c_obj, app.settings.bound)
    _warn_verdict(verdict)
    app.emit({"C": c, "Y": y, "dim_H": h.dim, "carrier": h.carrier.basis.to_lists(),
              "unminimized_source": _summands(cat, alpha.source),
              "morphism": cat.morphism_to_json(minimized.morphism),
              "source": _summands(cat, minimized.morphism.source),
              "certified_minimal": minimized.certified, "verdict": verdict.to_json()})
    app.ok(f"H of dimension {h.dim} represented from {cat.describe(minimized.morphism.source)}")


@app.command("minimize", args=[INSTANCE, Arg("morphism"), Opt("left", bool)])
def cmd_minimize(instance, morphism, left):
    """Right (or --left) minimal version of a morphism."""
    inst = app.load(instance)
    cat = inst.require()
    engine = Engine(cat)
    f = inst.morphism(morphism)
    result = engine.left_minimize(f) if left else engine.right_minimize(f)
    for w in result.warnings:
        app.warn(w)
    if not result.certified:
        app.warn("minimality is not certified")
    app.emit({"morphism": cat.morphism_to_json(result.morphism),
              "side": "left" if left else "right",
              "certified": result.certified, "dropped": result.dropped})
    app.ok(f"dropped {len(result.dropped)} summand(s)")


@app.command("table", args=[INSTANCE, Arg("c"), Arg("y")])
def cmd_table(instance, c, y):
    """Auslander bijection table between Gamma(C)-submodules of Hom(C, Y) and morphisms."""
    inst = app.load(instance)
    cat = inst.require()
    engine = Engine(cat)
    table = engine.auslander_table(inst.object(c), inst.object(y), app.settings.bound)
    payload = table.to_json(cat)
    rows = [{"dim_H": r["dim_H"], "carrier": r["carrier"], "source": r["source"],
             "verdict": r["verdict"]["verdict"], "checks": all(r["checks"].values())}
            for r in payload["rows"]]
    if any(not r.minimize.certified for r in table.rows):
        app.warn("some representatives are not certified right minimal")
    app.emit(payload, rows, ["dim_H", "carrier", "source", "verdict", "checks"])
    app.table(f"Auslander table for C = {c}, Y = {y}", rows)


@app.command("almost-split", args=[INSTANCE, Arg("y")])
def cmd_almost_split(instance, y):
    """Almost split sequence ending at an indecomposable non-projective Y."""
    inst = app.load(instance)
    cat = inst.require()
    obj = inst.object(y)
    bound = app.settings.bound
    if inst.kind == "tube":
        if not cat.is_indecomposable(obj):
            raise NotApplicable("almost split sequences end at indecomposables")
        seq = cat.almost_split_sequence(obj.dim)
        check = almost_split_check(cat, seq, bound or obj.dim + 2)
    else:
        seq, check = inst.ar.almost_split_ending_at(obj, bound)
    if not check.exhaustive:
        app.warn(f"almost split check ran on the pool up to length {check.bound} only")
    results = {"left": _object(cat, seq.left), "middle": _object(cat, seq.middle),
               "right": _object(cat, seq.right), "check": check.to_json()}
    if not check.passed:
        raise CounterexampleFound(check.reason, results)
    app.emit(results, check.certificate)
    app.ok(f"0 -> {results['left']['name']} -> {'+'.join(results['middle']['summands'])} "
           f"-> {results['right']['name']} -> 0")


@app.command("serre-pairing", args=[INSTANCE, Arg("x"), Arg("y")])
def cmd_serre_pairing(instance, x, y):
    """Gram matrix of the trace pairing Ext^1(X, Y) x Hom(Y, X) on the tube."""
    inst = app.load(instance)
    cat = inst.require("tube")
    x_obj, y_obj = inst.object(x), inst.object(y)
    gram = cat.serre_gram(x_obj, y_obj)
    ext_dim, hom_dim, rank = cat.ext1(x_obj, y_obj).dim, cat.hom(y_obj, x_obj).dim, fl.rank(gram)
    results = {"X": x, "Y": y, "ext_dim": ext_dim, "hom_dim": hom_dim,
               "gram": gram.to_lists(), "rank": rank,
               "nondegenerate": rank == ext_dim == hom_dim}
    if not results["nondegenerate"]:
        raise CounterexampleFound("Serre pairing is degenerate", results)
    app.emit(results, [{"ext": ext_dim, "hom": hom_dim, "rank": rank}])
    app.ok(f"pairing of rank {rank} is perfect")


@app.command("verify", args=[INSTANCE, Arg("suite")])
def cmd_verify(instance, suite):
    """Run an acceptance suite (or 'all') on the instance's category."""
    inst = app.load(instance)
    run = run_suite(inst, suite, app.settings.bound)
    rows = [{"suite": r.name, "status": r.status, "checks": r.checks} for r in run.results]
    for r in run.results:
        if r.status == "fail":
            app.err(f"{r.name}: {r.reason}")
    if run.checks == 0:
        app.warn("vacuous pass: no checks ran")
    app.emit(run.to_json(), rows)
    app.table(f"verify {suite}", rows)
    return 0 if run.passed else CounterexampleFound.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    return app.run(sys.argv[1:] if argv is None else argv)


__all__ = ["app", "main", "suite_names"]
