"""Validation, arrow categories, hom enumeration and colimits."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Mapping

from .core import CategoryError, Colimit, FinCategory, Mor, Obj, Square, Violation
from .table import TableCategory


def validate_category(C: FinCategory, max_triples: int | None = None) -> list[Violation]:
    """All violated category laws; an empty list means the category is valid.

    Malformed references come back with kind ``"malformed"`` and are checked
    first; the law checks only run on well-formed input.
    """
    out: list[Violation] = []
    for A in C.objects:
        out += C.validate_object(A)
    if isinstance(C, TableCategory):
        for label in C._dangling:
            out.append(Violation("malformed", f"morphism {label!r} references an unknown object", label))
        for obj, label in C._ids.items():
            if label not in C._mors:
                out.append(Violation("malformed", f"identity of {obj!r} is unknown morphism {label!r}", label))
        for (g, f), h in C._table.items():
            for x in (g, f, h):
                if x not in C._mors:
                    out.append(Violation("malformed", f"composition entry names unknown morphism {x!r}", (g, f, h)))
        for A in C.objects:
            if A.data not in C._ids:
                out.append(Violation("malformed", f"object {A!r} has no identity", A))
        if out:
            return out
    else:
        for name, m in C.names.items():
            out += C.validate_morphism(m)
        if out:
            return out

    mors = list(C.morphisms())
    listed = set(mors)
    for A in C.objects:
        i = C.identity(A)
        if i.dom != A or i.cod != A:
            out.append(Violation("identity", f"identity of {A!r} has wrong type", A))
    composable: dict[Obj, list[Mor]] = {}
    for f in mors:
        composable.setdefault(f.dom, []).append(f)
    comp: dict[tuple[Mor, Mor], Mor] = {}
    for f in mors:
        for g in composable.get(f.cod, ()):
            try:
                h = C.compose(g, f)
            except CategoryError:
                out.append(Violation("totality", f"composite {C.name_of(g)} . {C.name_of(f)} undefined", (g, f)))
                continue
            if h not in listed or h.dom != f.dom or h.cod != g.cod:
                out.append(Violation("closure", f"composite {C.name_of(g)} . {C.name_of(f)} is not a listed morphism of the right type", (g, f)))
                continue
            comp[g, f] = h
    for f in mors:
        try:
            left = comp.get((C.identity(f.cod), f))
            right = comp.get((f, C.identity(f.dom)))
        except CategoryError:
            continue
        if left is not None and left != f or right is not None and right != f:
            out.append(Violation("identity", f"identity law fails for {C.name_of(f)}", f))
    count = 0
    for (g, f), gf in comp.items():
        for h in composable.get(g.cod, ()):
            count += 1
            if max_triples is not None and count > max_triples:
                return out
            hg = comp.get((h, g))
            lhs = comp.get((h, gf))
            rhs = comp.get((hg, f)) if hg is not None else None
            if lhs is None or rhs is None:
                continue
            if lhs != rhs:
                out.append(Violation(
                    "associativity",
                    f"({C.name_of(h)} . {C.name_of(g)}) . {C.name_of(f)} != {C.name_of(h)} . ({C.name_of(g)} . {C.name_of(f)})",
                    (h, g, f),
                ))
    return out


def hom_enumerate(C: FinCategory, A: Obj, B: Obj) -> list[Mor]:
    if C.flavor == "table" and (A not in C.objects or B not in C.objects):
        raise CategoryError(f"unknown object in hom({A!r}, {B!r})")
    return C.hom(A, B)


def arrow_category(C: FinCategory) -> TableCategory:
    """The category of morphisms of ``C`` and commuting squares, as a table."""
    mors = list(C.morphisms())
    squares: list[Square] = []
    for f in mors:
        for g in mors:
            squares.extend(C.squares(f, g))
    by_src: dict[Mor, list[Square]] = {}
    for s in squares:
        by_src.setdefault(s.src, []).append(s)
    table = {}
    for s1 in squares:
        for s2 in by_src.get(s1.tgt, ()):
            table[s2, s1] = C.compose_squares(s2, s1)
    identities = {f: C.identity_square(f) for f in mors}
    return TableCategory(mors, [(s, s.src, s.tgt) for s in squares], identities, table)


@dataclass
class FinDiagram:
    """A functor from a finite ``shape`` (table category) into an ambient category."""

    shape: TableCategory
    on_objects: Mapping[Hashable, Obj]
    on_morphisms: Mapping[Hashable, Mor] = field(default_factory=dict)

    def image(self, m: Mor) -> Mor:
        if m.data in self.on_morphisms:
            return self.on_morphisms[m.data]
        if m == self.shape.identity(m.dom):
            return None  # filled in by the caller's ambient identity
        raise CategoryError(f"diagram undefined on shape morphism {m.data!r}")

    def functoriality_violations(self, C: FinCategory) -> list[str]:
        out = []
        nodes = {o.data: self.on_objects[o.data] for o in self.shape.objects}

        def D(m: Mor) -> Mor:
            img = self.image(m)
            return C.identity(nodes[m.dom.data]) if img is None else img

        for m in self.shape.morphisms():
            d = D(m)
            if d.dom != nodes[m.dom.data] or d.cod != nodes[m.cod.data]:
                out.append(f"image of {m.data!r} has the wrong type")
        if out:
            return out
        for o in self.shape.objects:
            if D(self.shape.identity(o)) != C.identity(nodes[o.data]):
                out.append(f"identity of {o.data!r} not preserved")
        for f in self.shape.morphisms():
            for g in self.shape.morphisms():
                if f.cod == g.dom and D(self.shape.compose(g, f)) != C.compose(D(g), D(f)):
                    out.append(f"composite {g.data!r} . {f.data!r} not preserved")
        return out

    def graph(self, C: FinCategory):
        keys = [o.data for o in self.shape.objects]
        index = {k: i for i, k in enumerate(keys)}
        nodes = [self.on_objects[k] for k in keys]
        edges = []
        for m in self.shape.morphisms():
            img = self.image(m)
            if img is None:
                continue
            edges.append((index[m.dom.data], index[m.cod.data], img))
        return keys, nodes, edges


def discrete_diagram(objects: list[Obj]) -> FinDiagram:
    shape = TableCategory(range(len(objects)), [(("id", i), i, i) for i in range(len(objects))],
                          {i: ("id", i) for i in range(len(objects))},
                          {(("id", i), ("id", i)): ("id", i) for i in range(len(objects))})
    return FinDiagram(shape, dict(enumerate(objects)))


def span_diagram(left: Mor, right: Mor) -> FinDiagram:
    """``left.cod <- left.dom -> right.cod`` as a three-object diagram (apex key 0)."""
    shape = TableCategory(
        [0, 1, 2],
        [("i0", 0, 0), ("i1", 1, 1), ("i2", 2, 2), ("l", 0, 1), ("r", 0, 2)],
        {0: "i0", 1: "i1", 2: "i2"},
        {("i0", "i0"): "i0", ("i1", "i1"): "i1", ("i2", "i2"): "i2",
         ("l", "i0"): "l", ("i1", "l"): "l", ("r", "i0"): "r", ("i2", "r"): "r"},
    )
    return FinDiagram(shape, {0: left.dom, 1: left.cod, 2: right.cod}, {"l": left, "r": right})


def parallel_diagram(f: Mor, g: Mor) -> FinDiagram:
    shape = TableCategory(
        [0, 1],
        [("i0", 0, 0), ("i1", 1, 1), ("a", 0, 1), ("b", 0, 1)],
        {0: "i0", 1: "i1"},
        {("i0", "i0"): "i0", ("i1", "i1"): "i1", ("a", "i0"): "a", ("i1", "a"): "a",
         ("b", "i0"): "b", ("i1", "b"): "b"},
    )
    return FinDiagram(shape, {0: f.dom, 1: f.cod}, {"a": f, "b": g})


@dataclass
class DiagramColimit:
    apex: Obj
    cocone: dict[Hashable, Mor]
    colimit: Colimit | None = None


def colimit(C: FinCategory, D: FinDiagram) -> DiagramColimit:
    """Constructive colimit for the finset and finab flavors."""
    if not C.has_colimits():
        raise CategoryError("table categories need colimit_search")
    bad = D.functoriality_violations(C)
    if bad:
        raise CategoryError("diagram is not functorial: " + "; ".join(bad))
    keys, nodes, edges = D.graph(C)
    col = C.graph_colimit(nodes, edges)
    return DiagramColimit(col.apex, dict(zip(keys, col.legs)), col)


class GuardExceeded(RuntimeError):
    """A size guard stopped an exhaustive search before it finished."""


def _cocones(C: FinCategory, keys, nodes, edges, X: Obj):
    """All cocones of the diagram with vertex ``X``."""
    for legs in product(*(C.hom(A, X) for A in nodes)):
        if all(C.compose(legs[j], m) == legs[i] for i, j, m in edges):
            yield legs


def colimit_search(C: FinCategory, D: FinDiagram, size_guard: int = 10**6) -> DiagramColimit | None:
    """Exhaustive search for a colimit in any finite category.

    Every cocone is checked against every other cocone for a unique
    mediating morphism.  Returns ``None`` if no cocone is universal; raises
    ``GuardExceeded`` if the number of candidate cocones passes the guard.
    """
    bad = D.functoriality_violations(C)
    if bad:
        raise CategoryError("diagram is not functorial: " + "; ".join(bad))
    keys, nodes, edges = D.graph(C)
    budget = 0
    for X in C.objects:
        n = 1
        for A in nodes:
            n *= len(C.hom(A, X))
        budget += n
    if budget > size_guard:
        raise GuardExceeded(f"{budget} candidate cocones exceed guard {size_guard}")
    cocones = [(X, legs) for X in C.objects for legs in _cocones(C, keys, nodes, edges, X)]
    for X, legs in cocones:
        universal = True
        for Y, other in cocones:
            mediators = [
                m for m in C.hom(X, Y)
                if all(C.compose(m, l) == o for l, o in zip(legs, other))
            ]
            if len(mediators) != 1:
                universal = False
                break
        if universal:
            return DiagramColimit(X, dict(zip(keys, legs)))
    return None
