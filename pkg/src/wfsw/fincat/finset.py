"""Finite sets and total functions."""

from __future__ import annotations

from itertools import product
from typing import Any, Iterable, Mapping, Sequence

from .core import CategoryError, Colimit, Edge, FinCategory, Mor, Obj, Violation


def _elem_key(x):
    return (type(x).__name__, x)


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        # smaller representative wins, so class reps are minimal members
        if y < x:
            x, y = y, x
        self.parent[y] = x
        return True


class FinSet(FinCategory):
    """Finite sets; objects carry their sorted element tuple.

    A morphism payload is the tuple of images listed in domain element order.
    """

    flavor = "finset"

    def obj(self, elements: Iterable[Any]) -> Obj:
        elems = tuple(sorted(set(elements), key=_elem_key))
        return Obj("finset", elems)

    def size(self, n: int) -> Obj:
        return self.obj(range(n))

    def mor(self, dom: Obj, cod: Obj, mapping: Mapping | Sequence) -> Mor:
        if isinstance(mapping, Mapping):
            try:
                images = tuple(mapping[x] for x in dom.data)
            except KeyError as e:
                raise CategoryError(f"map is not total on {dom!r}: missing {e}") from None
        else:
            images = tuple(mapping)
        m = Mor(dom, cod, images)
        bad = self.validate_morphism(m)
        if bad:
            raise CategoryError(bad[0].message)
        return m

    def apply(self, m: Mor, x):
        return m.data[m.dom.data.index(x)]

    def identity(self, A: Obj) -> Mor:
        return Mor(A, A, A.data)

    def _compose(self, g: Mor, f: Mor) -> Mor:
        index = {x: i for i, x in enumerate(g.dom.data)}
        gd = g.data
        return Mor(f.dom, g.cod, tuple(gd[index[y]] for y in f.data))

    def hom(self, A: Obj, B: Obj) -> list[Mor]:
        return [Mor(A, B, images) for images in product(B.data, repeat=len(A.data))]

    def hom_size(self, A: Obj, B: Obj) -> int:
        return len(B.data) ** len(A.data)

    def is_injective(self, m: Mor) -> bool:
        return len(set(m.data)) == len(m.data)

    def is_surjective(self, m: Mor) -> bool:
        return set(m.data) == set(m.cod.data)

    def is_iso(self, m: Mor) -> bool:
        return self.is_injective(m) and self.is_surjective(m)

    def validate_object(self, A: Obj) -> list[Violation]:
        if len(set(A.data)) != len(A.data):
            return [Violation("payload", f"repeated elements in {A!r}", A)]
        return []

    def validate_morphism(self, m: Mor) -> list[Violation]:
        if len(m.data) != len(m.dom.data):
            return [Violation("payload", f"map not total on domain: {m!r}", m)]
        cod = set(m.cod.data)
        stray = [y for y in m.data if y not in cod]
        if stray:
            return [Violation("payload", f"image {stray[0]!r} outside codomain in {m!r}", m)]
        return []

    # -- lifting ------------------------------------------------------------
    def _diagonal_choices(self, f: Mor, g: Mor, u: Mor, v: Mor) -> list[tuple] | None:
        """Allowed images of each point of ``cod f``; ``None`` if some point has none."""
        B, C = f.cod, g.dom
        fixed: dict[Any, Any] = {}
        for a, b in zip(f.dom.data, f.data):
            c = self.apply(u, a)
            if fixed.setdefault(b, c) != c:
                return None
        g_index = {x: i for i, x in enumerate(C.data)}
        choices = []
        for b in B.data:
            target = self.apply(v, b)
            if b in fixed:
                c = fixed[b]
                if g.data[g_index[c]] != target:
                    return None
                choices.append((c,))
            else:
                options = tuple(c for c, gc in zip(C.data, g.data) if gc == target)
                if not options:
                    return None
                choices.append(options)
        return choices

    def diagonals(self, f: Mor, g: Mor, u: Mor, v: Mor) -> list[Mor]:
        choices = self._diagonal_choices(f, g, u, v)
        if choices is None:
            return []
        return [Mor(f.cod, g.dom, images) for images in product(*choices)]

    def some_diagonal(self, f: Mor, g: Mor, u: Mor, v: Mor) -> Mor | None:
        choices = self._diagonal_choices(f, g, u, v)
        return None if choices is None else Mor(f.cod, g.dom, tuple(c[0] for c in choices))

    # -- colimits -------------------------------------------------------------
    def has_colimits(self) -> bool:
        return True

    def graph_colimit(self, nodes: Sequence[Obj], edges: Sequence[Edge]) -> Colimit:
        tags = [(i, k) for i, A in enumerate(nodes) for k in range(len(A.data))]
        uf = UnionFind(tags)
        position = [{x: k for k, x in enumerate(A.data)} for A in nodes]
        for i, j, m in edges:
            if m.dom != nodes[i] or m.cod != nodes[j]:
                raise CategoryError("diagram edge does not match its nodes")
            for k, y in enumerate(m.data):
                uf.union((i, k), (j, position[j][y]))
        reps = sorted({uf.find(t) for t in tags})
        label = {r: n for n, r in enumerate(reps)}
        apex = self.size(len(reps))
        legs = [
            Mor(A, apex, tuple(label[uf.find((i, k))] for k in range(len(A.data))))
            for i, A in enumerate(nodes)
        ]

        def induce(cocone: Sequence[Mor], target: Obj) -> Mor:
            return Mor(apex, target, tuple(cocone[i].data[k] for i, k in reps))

        return Colimit(apex, legs, induce)
