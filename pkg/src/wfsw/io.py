"""Loading categories, probe sets and specs from JSON, and rendering results back.

Every load error names the file and a JSON path to the offending value.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .factorization import (
    CoalgebraStructure,
    AlgebraStructure,
    ConcreteMorphism,
    Factored,
    FunctorialFactorization,
    TableFactorization,
)
from .fincat import CategoryError, FinAb, FinCategory, FinSet, Mor, Obj, Square, TableCategory
from .lifting import ArrowClass, builtin_class
from .probes import ProbeSet, all_arrows, all_squares, composable_pairs


class LoadError(Exception):
    def __init__(self, path, where: str, message: str):
        self.path, self.where, self.message = str(path), where, message
        super().__init__(f"{self.path}: {where}: {message}")


def read_json(path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise LoadError(path, "$", f"cannot read file ({e.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise LoadError(path, f"line {e.lineno} column {e.colno}", e.msg) from None


class _Doc:
    """A parsed JSON document with path-aware accessors."""

    def __init__(self, path, data):
        self.path, self.data = path, data

    def fail(self, where: str, message: str):
        raise LoadError(self.path, where, message)

    def get(self, obj, key: str, where: str, kind=None, default=...):
        if not isinstance(obj, dict):
            self.fail(where, "expected an object")
        if key not in obj:
            if default is ...:
                self.fail(where, f"missing key {key!r}")
            return default
        val = obj[key]
        if kind is not None and not isinstance(val, kind):
            self.fail(f"{where}.{key}", f"expected {_kind_name(kind)}")
        return val


def _kind_name(kind) -> str:
    names = {list: "a list", dict: "an object", str: "a string", int: "an integer", bool: "a boolean"}
    if isinstance(kind, tuple):
        return " or ".join(names.get(k, k.__name__) for k in kind)
    return names.get(kind, kind.__name__)


# -- categories ----------------------------------------------------------------

def load_category(path) -> FinCategory:
    doc = _Doc(path, read_json(path))
    flavor = doc.get(doc.data, "flavor", "$", str)
    objects = doc.get(doc.data, "objects", "$", list)
    morphisms = doc.get(doc.data, "morphisms", "$", list, default=[])
    if flavor == "finset":
        C = FinSet()
    elif flavor == "finab":
        C = FinAb()
    elif flavor == "table":
        return _load_table(doc, objects, morphisms)
    else:
        doc.fail("$.flavor", f"unknown flavor {flavor!r}")
    for k, o in enumerate(objects):
        where = f"$.objects[{k}]"
        oid = doc.get(o, "id", where, str)
        try:
            if flavor == "finset":
                A = C.obj(doc.get(o, "elements", where, list))
            else:
                A = C.obj(doc.get(o, "orders", where, list))
        except (CategoryError, TypeError) as e:
            doc.fail(where, str(e))
        if oid in C.object_names:
            doc.fail(f"{where}.id", f"duplicate object id {oid!r}")
        C.object_names[oid] = A
        C.objects.append(A)
    for k, m in enumerate(morphisms):
        where = f"$.morphisms[{k}]"
        mid = doc.get(m, "id", where, str)
        dom = _object_ref(doc, C, doc.get(m, "dom", where, str), f"{where}.dom")
        cod = _object_ref(doc, C, doc.get(m, "cod", where, str), f"{where}.cod")
        try:
            if flavor == "finset":
                f = C.mor(dom, cod, _finset_map(doc.get(m, "map", where, (list, dict)), dom))
            else:
                f = C.mor(dom, cod, doc.get(m, "matrix", where, list))
        except (CategoryError, TypeError, ValueError) as e:
            doc.fail(where, str(e))
        if mid in C.names:
            doc.fail(f"{where}.id", f"duplicate morphism id {mid!r}")
        C.add_name(mid, f)
    return C


def _finset_map(mapping, dom: Obj):
    """JSON keys are strings; match them against the domain's elements."""
    if isinstance(mapping, list):
        return mapping
    keys = {str(x): x for x in dom.data}
    return {keys.get(k, k): v for k, v in mapping.items()}


def _object_ref(doc: _Doc, C: FinCategory, oid: str, where: str) -> Obj:
    try:
        return C.object_names[oid]
    except KeyError:
        doc.fail(where, f"unknown object {oid!r}")


def _load_table(doc: _Doc, objects, morphisms) -> TableCategory:
    obj_ids = []
    for k, o in enumerate(objects):
        oid = o if isinstance(o, str) else doc.get(o, "id", f"$.objects[{k}]", str)
        if oid in obj_ids:
            doc.fail(f"$.objects[{k}]", f"duplicate object id {oid!r}")
        obj_ids.append(oid)
    mors, identities, seen = [], {}, set()
    for k, m in enumerate(morphisms):
        where = f"$.morphisms[{k}]"
        mid = doc.get(m, "id", where, str)
        dom = doc.get(m, "dom", where, str)
        cod = doc.get(m, "cod", where, str)
        for key, o in (("dom", dom), ("cod", cod)):
            if o not in obj_ids:
                doc.fail(f"{where}.{key}", f"unknown object {o!r}")
        if mid in seen:
            doc.fail(f"{where}.id", f"duplicate morphism id {mid!r}")
        seen.add(mid)
        mors.append((mid, dom, cod))
        if doc.get(m, "identity", where, bool, default=False):
            if dom != cod:
                doc.fail(f"{where}.identity", "an identity must be an endomorphism")
            identities[dom] = mid
    table = {}
    for k, entry in enumerate(doc.get(doc.data, "compose", "$", list, default=[])):
        if not (isinstance(entry, list) and len(entry) == 3 and all(isinstance(x, str) for x in entry)):
            doc.fail(f"$.compose[{k}]", "expected [g, f, g.f] morphism ids")
        g, f, h = entry
        table[g, f] = h
    for o in obj_ids:
        if o not in identities:
            e = _infer_identity(o, mors, table)
            if e is not None:
                identities[o] = e
    return TableCategory(obj_ids, mors, identities, table)


def _infer_identity(o: str, mors, table) -> str | None:
    """The endomorphism of ``o`` that the composition table treats as a unit, if exactly one does."""
    into = [m for m, _, c in mors if c == o]
    out = [m for m, d, _ in mors if d == o]
    units = [e for e, d, c in mors if d == c == o
             and all(table.get((e, f)) == f for f in into) and all(table.get((g, e)) == g for g in out)]
    return units[0] if len(units) == 1 else None


def morphism_ref(doc: _Doc, C: FinCategory, mid, where: str) -> Mor:
    if not isinstance(mid, str):
        doc.fail(where, "expected a morphism id")
    if isinstance(C, TableCategory):
        try:
            return C.mor(mid)
        except CategoryError:
            doc.fail(where, f"unknown morphism {mid!r}")
    try:
        return C.names[mid]
    except KeyError:
        doc.fail(where, f"unknown morphism {mid!r}")


def _square_ref(doc: _Doc, C: FinCategory, entry, where: str) -> Square:
    if not (isinstance(entry, list) and len(entry) == 4):
        doc.fail(where, "expected [f, g, u, v]")
    sq = Square(*(morphism_ref(doc, C, x, f"{where}[{i}]") for i, x in enumerate(entry)))
    if not C.commutes(sq):
        doc.fail(where, "square does not commute")
    return sq


# -- probe sets ------------------------------------------------------------------

def load_probes(path, C: FinCategory) -> ProbeSet:
    """Explicit lists, or generated ones.

    ``{"all_arrows": true}`` takes every arrow among the category's objects;
    ``"square_objects": [ids]`` then generates squares and composable pairs
    among those objects (default: none).
    """
    doc = _Doc(path, read_json(path))
    data = doc.data
    if not isinstance(data, dict):
        doc.fail("$", "expected an object")
    universe = doc.get(data, "universe", "$", str, default=None)
    if doc.get(data, "all_arrows", "$", bool, default=False):
        arrows = all_arrows(C)
        window = [_object_ref(doc, C, o, f"$.square_objects[{k}]")
                  for k, o in enumerate(doc.get(data, "square_objects", "$", list, default=[]))]
        small = all_arrows(C, window) if window else []
        squares, triples = all_squares(C, small), composable_pairs(small)
        _name_unnamed(C, arrows)
        return ProbeSet(arrows, squares, triples,
                        universe or f"all {C.flavor} arrows among {len(C.objects)} objects"
                        + (f"; squares among {len(window)} objects" if window else ""))
    arrows = [morphism_ref(doc, C, x, f"$.arrows[{k}]")
              for k, x in enumerate(doc.get(data, "arrows", "$", list))]
    squares = [_square_ref(doc, C, x, f"$.squares[{k}]")
               for k, x in enumerate(doc.get(data, "squares", "$", list, default=[]))]
    triples = []
    for k, t in enumerate(doc.get(data, "triples", "$", list, default=[])):
        if not (isinstance(t, list) and len(t) == 2):
            doc.fail(f"$.triples[{k}]", "expected [f, g]")
        f = morphism_ref(doc, C, t[0], f"$.triples[{k}][0]")
        g = morphism_ref(doc, C, t[1], f"$.triples[{k}][1]")
        if f.cod != g.dom:
            doc.fail(f"$.triples[{k}]", "not composable")
        triples.append((f, g))
    return ProbeSet(arrows, squares, triples, universe or f"{len(arrows)} listed {C.flavor} arrows")


def _name_unnamed(C: FinCategory, arrows: list[Mor]) -> None:
    known = set(C.names.values())
    width = len(str(len(arrows)))
    for k, f in enumerate(arrows):
        if f not in known:
            C.add_name(f"a{k:0{width}d}", f)


# -- arrow classes and factorizations ---------------------------------------------------

PREDICATE_KINDS = ("isos", "all", "none", "identities", "split_mono", "split_epi", "injective", "surjective")


def arrow_class(doc: _Doc, C: FinCategory, spec, where: str) -> ArrowClass:
    if isinstance(spec, str):
        spec = {"kind": "builtin", "name": spec}
    elif isinstance(spec, list):
        spec = {"kind": "list", "arrows": spec}
    if not isinstance(spec, dict):
        doc.fail(where, "expected a predicate object")
    kind = doc.get(spec, "kind", where, str)
    if kind == "list":
        arrows = [morphism_ref(doc, C, x, f"{where}.arrows[{k}]")
                  for k, x in enumerate(doc.get(spec, "arrows", where, list))]
        return ArrowClass.of(spec.get("name", "list"), arrows)
    name = doc.get(spec, "name", where, str) if kind == "builtin" else kind
    if name not in PREDICATE_KINDS:
        doc.fail(where, f"unknown predicate {name!r}")
    try:
        return builtin_class(C, name)
    except CategoryError as e:
        doc.fail(where, str(e))


def _resolve(base: Path, ref) -> Path:
    p = Path(ref)
    return p if p.is_absolute() else base.parent / p


def factorization_from(doc: _Doc, C: FinCategory, spec, where: str, max_steps: int = 8,
                       garner: bool = False, probes: ProbeSet | None = None) -> FunctorialFactorization:
    """A factorization from an inline spec object or a path to a spec file."""
    if isinstance(spec, str):
        sub = _Doc(_resolve(Path(doc.path), spec), None)
        sub.data = read_json(sub.path)
        return factorization_from(sub, C, sub.data, "$", max_steps, garner, probes)
    kind = doc.get(spec, "kind", where, str)
    if kind == "split":
        from .splitab import SplitFactorization
        if C.flavor != "finab":
            doc.fail(f"{where}.kind", "the split factorization needs a finab category")
        return SplitFactorization(C)
    if kind == "soa":
        from .smallobject import SoaFactorization, soa_build_factorization
        gens = [morphism_ref(doc, C, x, f"{where}.generators[{k}]")
                for k, x in enumerate(doc.get(spec, "generators", where, list))]
        if not C.has_colimits():
            doc.fail(where, f"{C.flavor} categories do not support the small object argument")
        steps = doc.get(spec, "max_steps", where, int, default=max_steps)
        use_garner = doc.get(spec, "garner", where, bool, default=garner)
        if "stages" in spec:
            return SoaFactorization(C, gens, doc.get(spec, "stages", where, int), use_garner)
        return soa_build_factorization(C, gens, probes or ProbeSet([]), steps, use_garner)
    if kind == "table":
        arrows, squares = {}, {}
        for k, e in enumerate(doc.get(spec, "entries", where, list)):
            w = f"{where}.entries[{k}]"
            f = morphism_ref(doc, C, doc.get(e, "arrow", w), f"{w}.arrow")
            L = morphism_ref(doc, C, doc.get(e, "left", w), f"{w}.left")
            R = morphism_ref(doc, C, doc.get(e, "right", w), f"{w}.right")
            arrows[f] = Factored(L, L.cod, R)
        for k, e in enumerate(doc.get(spec, "squares", where, list, default=[])):
            w = f"{where}.squares[{k}]"
            squares[_square_ref(doc, C, doc.get(e, "square", w), f"{w}.square")] = \
                morphism_ref(doc, C, doc.get(e, "mid", w), f"{w}.mid")
        return TableFactorization(C, arrows, squares)
    doc.fail(f"{where}.kind", f"unknown factorization kind {kind!r}")


def family_arrows(doc: _Doc, C: FinCategory, spec, where: str) -> list[Mor]:
    """Arrows carrying a coalgebra family: ``{"objects": [ids]}`` or ``{"arrows": [ids]}``."""
    if "arrows" in spec:
        return [morphism_ref(doc, C, x, f"{where}.arrows[{k}]")
                for k, x in enumerate(doc.get(spec, "arrows", where, list))]
    objs = [_object_ref(doc, C, o, f"{where}.objects[{k}]")
            for k, o in enumerate(doc.get(spec, "objects", where, list))]
    return all_arrows(C, objs)


def load_doc(path) -> _Doc:
    return _Doc(path, read_json(path))


def category_ref(path) -> Path | None:
    """The category file a probe, generator or spec file points at, if any."""
    doc = load_doc(path)
    ref = doc.get(doc.data, "category", "$", str, default=None) if isinstance(doc.data, dict) else None
    return None if ref is None else _resolve(Path(path), ref)


# -- rendering ------------------------------------------------------------------------

class Namer:
    """Stable ids for everything a witness can contain."""

    def __init__(self, C: FinCategory):
        self.C = C
        self._objs = {v: k for k, v in sorted(C.object_names.items(), reverse=True)}

    def obj(self, A: Obj) -> str:
        if isinstance(self.C, TableCategory):
            return str(A.data)
        return self._objs.get(A, repr(A))

    def mor(self, m: Mor) -> str:
        if isinstance(self.C, TableCategory):
            return str(m.data)
        return self.C.name_of(m)

    def __call__(self, x) -> Any:
        if isinstance(x, Square):
            return [self.mor(m) for m in x]
        if isinstance(x, Mor):
            return self.mor(x)
        if isinstance(x, Obj):
            return self.obj(x)
        if isinstance(x, CoalgebraStructure):
            return {"arrow": self.mor(x.f), "s": self.mor(x.s)}
        if isinstance(x, AlgebraStructure):
            return {"arrow": self.mor(x.g), "t": self.mor(x.t)}
        if isinstance(x, ConcreteMorphism):
            return {"src": self(x.src), "tgt": self(x.tgt), "square": self(x.square)}
        if isinstance(x, dict):
            return {str(k): self(v) for k, v in x.items()}
        if isinstance(x, (list, tuple)):
            return [self(v) for v in x]
        if isinstance(x, (str, int, float, bool)) or x is None:
            return x
        return repr(x)
