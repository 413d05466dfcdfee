"""Coalgebra and algebra structures and the concrete categories they form."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, NamedTuple

from ..fincat import CategoryError, FinCategory, Mor, Square
from ..lifting import fill_square
from ..report import Report, checklist
from .base import FunctorialFactorization


class CoalgebraStructure(NamedTuple):
    f: Mor
    s: Mor  # cod f -> E0 f


class AlgebraStructure(NamedTuple):
    g: Mor
    t: Mor  # E0 g -> dom g


def coalgebra_structures(F: FunctorialFactorization, f: Mor) -> list[CoalgebraStructure]:
    """Every ``s`` with ``s . f == Lf`` and ``Rf . s == id``."""
    C = F.category
    Lf, _, Rf = F.factor(f)
    sq = Square(f, Rf, Lf, C.identity(f.cod))
    return [CoalgebraStructure(f, s) for s in fill_square(C, sq)]


def algebra_structures(F: FunctorialFactorization, g: Mor) -> list[AlgebraStructure]:
    """Every ``t`` with ``g . t == Rg`` and ``t . Lg == id``."""
    C = F.category
    Lg, _, Rg = F.factor(g)
    sq = Square(Lg, g, C.identity(g.dom), Rg)
    return [AlgebraStructure(g, t) for t in fill_square(C, sq)]


def is_coalgebra(F: FunctorialFactorization, c: CoalgebraStructure) -> bool:
    C = F.category
    Lf, E, Rf = F.factor(c.f)
    return (c.s.dom == c.f.cod and c.s.cod == E and C.compose(c.s, c.f) == Lf
            and C.compose(Rf, c.s) == C.identity(c.f.cod))


def is_algebra(F: FunctorialFactorization, a: AlgebraStructure) -> bool:
    C = F.category
    Lg, E, Rg = F.factor(a.g)
    return (a.t.dom == E and a.t.cod == a.g.dom and C.compose(a.g, a.t) == Rg
            and C.compose(a.t, Lg) == C.identity(a.g.dom))


def coalgebra_morphism_check(F: FunctorialFactorization, sq: Square,
                             c1: CoalgebraStructure, c2: CoalgebraStructure) -> bool:
    """``E(x, y) . s == s' . y`` for a square ``(x, y): f -> f'``."""
    C = F.category
    if not (is_coalgebra(F, c1) and is_coalgebra(F, c2)):
        raise CategoryError("invalid coalgebra structure")
    if sq.src != c1.f or sq.tgt != c2.f or not C.commutes(sq):
        raise CategoryError("square is not a commuting square between the underlying arrows")
    return C.compose(F.square(sq), c1.s) == C.compose(c2.s, sq.bottom)


def algebra_morphism_check(F: FunctorialFactorization, sq: Square,
                           a1: AlgebraStructure, a2: AlgebraStructure) -> bool:
    """``z . t == t' . E(z, w)`` for a square ``(z, w): g -> g'``."""
    C = F.category
    if not (is_algebra(F, a1) and is_algebra(F, a2)):
        raise CategoryError("invalid algebra structure")
    if sq.src != a1.g or sq.tgt != a2.g or not C.commutes(sq):
        raise CategoryError("square is not a commuting square between the underlying arrows")
    return C.compose(sq.top, a1.t) == C.compose(a2.t, F.square(sq))


# -- concrete categories over the arrow category ---------------------------------

class ConcreteMorphism(NamedTuple):
    src: Hashable
    tgt: Hashable
    square: Square


@dataclass
class ConcreteOverArrows:
    """A finite category with a functor to the arrow category.

    Objects are hashable keys with an underlying arrow each; a morphism is
    recorded with its endpoints and underlying square, composition being
    composition of squares.  Optional ``labels`` let user data list the same
    square twice, which makes the forgetful functor non-faithful.
    """

    category: FinCategory
    objects: list[Hashable]
    underlying: dict[Hashable, Mor]
    morphisms: list[ConcreteMorphism] = field(default_factory=list)
    labels: list[Hashable] | None = None

    def __post_init__(self):
        self._into: dict[Hashable, list[ConcreteMorphism]] = {}
        self._from: dict[Hashable, list[ConcreteMorphism]] = {}
        for m in self.morphisms:
            self._into.setdefault(m.tgt, []).append(m)
            self._from.setdefault(m.src, []).append(m)

    def into(self, key: Hashable) -> list[ConcreteMorphism]:
        return self._into.get(key, [])

    def out_of(self, key: Hashable) -> list[ConcreteMorphism]:
        return self._from.get(key, [])

    def non_identity(self) -> list[ConcreteMorphism]:
        C = self.category
        return [m for m in self.morphisms
                if not (m.src == m.tgt and C.is_identity(m.square.top) and C.is_identity(m.square.bottom))]

    def check(self) -> Report:
        """Category laws of the listed data plus faithfulness of the underlying functor."""
        C = self.category
        report = Report("concrete_check", "listed objects and morphisms")
        listed = set(self.morphisms)
        bad_types = [m for m in self.morphisms
                     if m.square.src != self.underlying[m.src] or m.square.tgt != self.underlying[m.tgt]
                     or not C.commutes(m.square)]
        report.add(checklist("underlying squares", bad_types))
        ids = [k for k in self.objects
               if ConcreteMorphism(k, k, C.identity_square(self.underlying[k])) not in listed]
        report.add(checklist("identities", ids))
        closure = []
        for m1 in self.morphisms:
            for m2 in self.out_of(m1.tgt):
                comp = ConcreteMorphism(m1.src, m2.tgt, C.compose_squares(m2.square, m1.square))
                if comp not in listed:
                    closure.append((m1, m2))
        report.add(checklist("composition closed", closure))
        dupes = []
        if self.labels is not None and len(set(self.morphisms)) != len(self.morphisms):
            seen: dict[ConcreteMorphism, Hashable] = {}
            for label, m in zip(self.labels, self.morphisms):
                if m in seen:
                    dupes.append((seen[m], label))
                else:
                    seen[m] = label
        report.add(checklist("faithful", dupes))
        return report


def _category_of(C: FinCategory, objects: list, underlying: dict, is_morphism) -> ConcreteOverArrows:
    morphisms = []
    for k1 in objects:
        for k2 in objects:
            for sq in C.squares(underlying[k1], underlying[k2]):
                if is_morphism(sq, k1, k2):
                    morphisms.append(ConcreteMorphism(k1, k2, sq))
    return ConcreteOverArrows(C, objects, underlying, morphisms)


def coalgebra_category(F: FunctorialFactorization, structures: Iterable[CoalgebraStructure],
                       with_morphisms: bool = True) -> ConcreteOverArrows:
    """Given coalgebras and every coalgebra morphism among them (or only identities)."""
    C = F.category
    objects = list(dict.fromkeys(structures))
    underlying = {c: c.f for c in objects}
    if not with_morphisms:
        return discrete_concrete(C, objects, underlying)

    def is_morphism(sq, c1, c2):
        return C.compose(F.square(sq), c1.s) == C.compose(c2.s, sq.bottom)

    return _category_of(C, objects, underlying, is_morphism)


def algebra_category(F: FunctorialFactorization, structures: Iterable[AlgebraStructure],
                     with_morphisms: bool = True) -> ConcreteOverArrows:
    C = F.category
    objects = list(dict.fromkeys(structures))
    underlying = {a: a.g for a in objects}
    if not with_morphisms:
        return discrete_concrete(C, objects, underlying)

    def is_morphism(sq, a1, a2):
        return C.compose(sq.top, a1.t) == C.compose(a2.t, F.square(sq))

    return _category_of(C, objects, underlying, is_morphism)


def discrete_concrete(C: FinCategory, objects: list, underlying: dict) -> ConcreteOverArrows:
    return ConcreteOverArrows(C, list(objects), dict(underlying),
                              [ConcreteMorphism(k, k, C.identity_square(underlying[k])) for k in objects])


def all_coalgebras(F: FunctorialFactorization, arrows: Iterable[Mor]) -> list[CoalgebraStructure]:
    return [c for f in arrows for c in coalgebra_structures(F, f)]


def all_algebras(F: FunctorialFactorization, arrows: Iterable[Mor]) -> list[AlgebraStructure]:
    return [a for g in arrows for a in algebra_structures(F, g)]
