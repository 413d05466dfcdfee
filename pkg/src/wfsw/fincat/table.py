"""Categories given by explicit composition tables."""

from __future__ import annotations

from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .core import CategoryError, FinCategory, Mor, Obj


class TableCategory(FinCategory):
    """Objects and morphisms are labels; ``table[(g, f)]`` is ``g . f``.

    Construction does not validate anything, so that ``validate_category``
    can report defects in hand-written tables.  Hom-sets are listed in order
    of ``str(label)``.
    """

    flavor = "table"

    def __init__(
        self,
        objects: Iterable[Hashable],
        morphisms: Iterable[tuple[Hashable, Hashable, Hashable]],
        identities: Mapping[Hashable, Hashable],
        table: Mapping[tuple[Hashable, Hashable], Hashable],
    ):
        super().__init__(Obj("table", o) for o in objects)
        self._mors: dict[Hashable, Mor] = {}
        self._dangling: list[Hashable] = []
        known = set(self.objects)
        for label, dom, cod in morphisms:
            m = Mor(Obj("table", dom), Obj("table", cod), label)
            self._mors[label] = m
            if m.dom not in known or m.cod not in known:
                self._dangling.append(label)
        self._ids = dict(identities)
        self._table = dict(table)
        self._homs: dict[tuple[Obj, Obj], list[Mor]] = {}
        for m in sorted(self._mors.values(), key=lambda m: str(m.data)):
            self._homs.setdefault((m.dom, m.cod), []).append(m)
        for label, m in self._mors.items():
            if isinstance(label, str):
                self.names.setdefault(label, m)
        for o in self.objects:
            if isinstance(o.data, str):
                self.object_names.setdefault(o.data, o)

    # access to raw tables for validation
    def labels(self) -> list[Hashable]:
        return list(self._mors)

    def mor(self, label: Hashable) -> Mor:
        try:
            return self._mors[label]
        except KeyError:
            raise CategoryError(f"unknown morphism {label!r}") from None

    def obj(self, label: Hashable) -> Obj:
        o = Obj("table", label)
        if o not in self.objects:
            raise CategoryError(f"unknown object {label!r}")
        return o

    def identity(self, A: Obj) -> Mor:
        try:
            return self._mors[self._ids[A.data]]
        except KeyError:
            raise CategoryError(f"no identity for {A!r}") from None

    def _compose(self, g: Mor, f: Mor) -> Mor:
        try:
            label = self._table[g.data, f.data]
        except KeyError:
            raise CategoryError(f"composite {g.data!r} . {f.data!r} undefined") from None
        try:
            return self._mors[label]
        except KeyError:
            raise CategoryError(f"composite {label!r} is not a listed morphism") from None

    def hom(self, A: Obj, B: Obj) -> list[Mor]:
        return list(self._homs.get((A, B), ()))

    def morphisms(self) -> Iterator[Mor]:
        return iter(sorted(self._mors.values(), key=lambda m: str(m.data)))


def poset_category(elements: Sequence[Hashable], leq: Callable[[Any, Any], bool]) -> TableCategory:
    """The thin category of a finite poset; the morphism ``a <= b`` is labelled ``(a, b)``."""
    morphisms = [((a, b), a, b) for a in elements for b in elements if leq(a, b)]
    identities = {a: (a, a) for a in elements}
    table = {}
    for (b1, c), _, _ in morphisms:
        for (a, b2), _, _ in morphisms:
            if b1 == b2:
                table[(b1, c), (a, b2)] = (a, c)
    return TableCategory(elements, morphisms, identities, table)


def terminal_category() -> TableCategory:
    return TableCategory(["*"], [("id*", "*", "*")], {"*": "id*"}, {("id*", "id*"): "id*"})
