"""Instance files: a category over F_p plus named objects and morphisms.

Builtin object names resolve without being declared: ``S<v>``, ``P<v>``, ``I<v>`` in a quiver
instance, ``J<l>`` in a tube instance, ``0`` in both, and ``+``-joined direct sums of any of
these (``J2+J1``, ``P1+P2``). Builtin morphisms: ``id:X``, ``zero:X:Y``, ``hom:X:Y:k`` (the k-th
canonical basis element of Hom(X, Y)) and, in the tube, ``proj:Jm:Jl`` / ``incl:Jl:Jm``.
"""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .ar_theory import ARTheory
from .config import DEFAULT_LIMITS, Limits
from .errors import InputError, NotApplicable, UnknownName
from .ff_linalg import FFMatrix
from .quiver_rep import Arrow, Quiver, QuiverCategory, linear_quiver
from .tube_cat import TubeCategory

KINDS = ("quiver", "tube")
_DYNKIN_A = re.compile(r"^A(\d+)$")
_BLOCK = re.compile(r"^J(\d+)$")


def locate(text: str, token: str) -> Tuple[Optional[int], Optional[int]]:
    """Line and column (1-based) of the first quoted occurrence of token in text."""
    idx = text.find(json.dumps(token))
    if idx < 0:
        return None, None
    line = text.count("\n", 0, idx) + 1
    col = idx - (text.rfind("\n", 0, idx) + 1) + 1
    return line, col


@dataclass
class Instance:
    kind: Optional[str]
    p: Optional[int]
    category: Any = None
    ar: Optional[ARTheory] = None
    objects: Dict[str, Any] = field(default_factory=dict)
    morphisms: Dict[str, Any] = field(default_factory=dict)
    morphism_ends: Dict[str, Tuple[str, str]] = field(default_factory=dict)
    quiver: Optional[Quiver] = None
    text: str = ""

    @property
    def empty(self) -> bool:
        return self.category is None

    def require(self, kind: Optional[str] = None) -> Any:
        if self.category is None:
            raise InputError("instance defines no category")
        if kind is not None and self.kind != kind:
            raise NotApplicable(f"this needs a {kind} instance, got {self.kind}")
        return self.category

    def digest(self) -> str:
        return hashlib.sha256(self.text.encode("utf-8")).hexdigest()

    def _unknown(self, what: str, name: str) -> UnknownName:
        line, col = locate(self.text, name)
        return UnknownName(f"unknown {what} {name!r}", line=line, column=col)

    # name resolution
    def object(self, name: str) -> Any:
        cat = self.require()
        if name in self.objects:
            return self.objects[name]
        if "+" in name:
            return cat.direct_sum([self.object(part) for part in name.split("+")]).obj
        if name == "0":
            return cat.zero_object()
        if self.kind == "tube":
            m = _BLOCK.match(name)
            if m and int(m.group(1)) > 0:
                return cat.block(int(m.group(1)))
        elif len(name) > 1 and name[0] in "SPI" and name[1:] in self.quiver.vertices:
            build = {"S": self.ar.simple, "P": self.ar.projective, "I": self.ar.injective}
            return build[name[0]](name[1:])
        raise self._unknown("object", name)

    def morphism(self, name: str) -> Any:
        cat = self.require()
        if name in self.morphisms:
            return self.morphisms[name]
        head, _, rest = name.partition(":")
        args = rest.split(":") if rest else []
        try:
            if head == "id" and len(args) == 1:
                return cat.identity(self.object(args[0]))
            if head == "zero" and len(args) == 2:
                return cat.zero(self.object(args[0]), self.object(args[1]))
            if head == "hom" and len(args) == 3:
                basis = cat.hom(self.object(args[0]), self.object(args[1])).basis
                k = int(args[2])
                if k < 0:
                    raise IndexError(k)
                return basis[k]
            if self.kind == "tube" and head in ("proj", "incl") and len(args) == 2:
                return self._tube_canonical(head, args[0], args[1])
        except (IndexError, ValueError):
            pass
        raise self._unknown("morphism", name)

    def _tube_canonical(self, head: str, src: str, tgt: str) -> Any:
        cat = self.category
        a, b = _BLOCK.match(src), _BLOCK.match(tgt)
        if not (a and b):
            raise ValueError(src)
        m, l = int(a.group(1)), int(b.group(1))
        if head == "proj" and m >= l:
            mat = FFMatrix([[1 if i == j else 0 for j in range(m)] for i in range(l)], cat.p)
            return cat.morphism(cat.block(m), cat.block(l), mat)
        if head == "incl" and l >= m:
            mat = FFMatrix([[1 if i == j + l - m else 0 for j in range(m)] for i in range(l)],
                           cat.p)
            return cat.morphism(cat.block(m), cat.block(l), mat)
        raise ValueError(head)

    # serialization
    def to_json(self) -> Dict[str, Any]:
        if self.category is None:
            return {}
        cat = self.category
        out: Dict[str, Any] = {"kind": self.kind, "field": self.p}
        if self.quiver is not None:
            out["quiver"] = self.quiver.to_json()
        out["objects"] = {name: cat.object_to_json(obj) for name, obj in self.objects.items()}
        morphs = {}
        for name, f in self.morphisms.items():
            src, tgt = self.morphism_ends[name]
            body = cat.morphism_to_json(f)
            body["source"], body["target"] = src, tgt
            morphs[name] = body
        out["morphisms"] = morphs
        return out


def _build_quiver(raw: Any) -> Quiver:
    if isinstance(raw, str):
        m = _DYNKIN_A.match(raw)
        if not m:
            raise InputError(f"unknown quiver shorthand {raw!r}")
        return linear_quiver(int(m.group(1)))
    if not isinstance(raw, dict) or "vertices" not in raw:
        raise InputError("quiver needs a 'vertices' list")
    arrows = []
    for i, a in enumerate(raw.get("arrows", [])):
        if isinstance(a, dict):
            arrows.append(Arrow(str(a.get("name", f"a{i}")), str(a["source"]), str(a["target"])))
        else:
            arrows.append(tuple(a))
    return Quiver([str(v) for v in raw["vertices"]], arrows)


def _quiver_object(inst: Instance, name: str, body: Dict[str, Any]) -> Any:
    cat, q = inst.category, inst.quiver
    dims_in = body.get("dims", {})
    if isinstance(dims_in, list):
        dims = [int(d) for d in dims_in]
    else:
        dims = [int(dims_in.get(v, 0)) for v in q.vertices]
    maps_in = body.get("maps", {})
    maps = [maps_in.get(a.name) for a in q.arrows]
    return cat.rep(dims, maps)


def _quiver_morphism(inst: Instance, body: Dict[str, Any]) -> Any:
    cat, q = inst.category, inst.quiver
    src, tgt = inst.object(str(body["source"])), inst.object(str(body["target"]))
    maps_in = body.get("maps", {})
    maps = []
    for v in q.vertices:
        shape = (tgt.dim_at(v), src.dim_at(v))
        raw = maps_in.get(v)
        maps.append(FFMatrix.zeros(*shape, cat.p) if raw is None
                    else FFMatrix(raw, cat.p, shape=shape))
    return cat.morphism(src, tgt, maps)


def _tube_object(inst: Instance, name: str, body: Dict[str, Any]) -> Any:
    cat = inst.category
    if "partition" in body:
        return cat.from_partition([int(x) for x in body["partition"]])
    dim = int(body.get("dim", 0))
    return cat.pair(FFMatrix(body.get("N", []), cat.p, shape=(dim, dim)))


def _tube_morphism(inst: Instance, body: Dict[str, Any]) -> Any:
    cat = inst.category
    src, tgt = inst.object(str(body["source"])), inst.object(str(body["target"]))
    return cat.morphism(src, tgt, FFMatrix(body.get("matrix", []), cat.p,
                                           shape=(tgt.dim, src.dim)))


def load_instance(text: str, field: Optional[int] = None,
                  limits: Limits = DEFAULT_LIMITS) -> Instance:
    """Parse and validate an instance; every matrix is checked on load."""
    try:
        raw = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, line=exc.lineno, column=exc.colno) from None
    if not isinstance(raw, dict):
        raise InputError("instance must be a JSON object", line=1, column=1)
    if not raw:
        return Instance(None, field, text=text)
    kind = raw.get("kind")
    if kind not in KINDS:
        line, col = locate(text, "kind")
        raise InputError(f"kind must be one of {', '.join(KINDS)}", line=line, column=col)
    p = int(field if field is not None else raw.get("field", 2))
    inst = Instance(kind, p, text=text)
    if kind == "quiver":
        inst.quiver = _build_quiver(raw.get("quiver", {}))
        inst.category = QuiverCategory(inst.quiver, p, limits)
        inst.ar = ARTheory(inst.category)
        make_object, make_morphism = _quiver_object, _quiver_morphism
    else:
        inst.category = TubeCategory(p, limits)
        make_object, make_morphism = _tube_object, _tube_morphism

    for name, body in raw.get("objects", {}).items():
        try:
            obj = make_object(inst, name, body)
        except InputError as exc:
            line, col = locate(text, name)
            raise type(exc)(f"object {name}: {exc}", line=line, column=col) from None
        inst.objects[name] = obj
        inst.category.names.setdefault(obj, name)
    for name, body in raw.get("morphisms", {}).items():
        try:
            inst.morphisms[name] = make_morphism(inst, body)
        except KeyError as exc:
            line, col = locate(text, name)
            raise InputError(f"morphism {name}: missing field {exc}", line=line,
                             column=col) from None
        except UnknownName:
            raise
        except InputError as exc:
            line, col = locate(text, name)
            raise type(exc)(f"morphism {name}: {exc}", line=line, column=col) from None
        inst.morphism_ends[name] = (str(body["source"]), str(body["target"]))
    return inst


def dump_instance(inst: Instance) -> str:
    return json.dumps(inst.to_json(), sort_keys=True, indent=2) + "\n"


def builtin_names(inst: Instance) -> List[str]:
    if inst.kind == "quiver":
        return [f"{k}{v}" for k in "SPI" for v in inst.quiver.vertices]
    if inst.kind == "tube":
        return [f"J{k}" for k in range(1, 5)]
    return []
