"""Coherent lifting functions over concrete categories of arrows.

A right lifting function on ``g`` chooses, for every object ``X`` of a
concrete category and every square ``|X| -> g``, a diagonal; coherence asks
that precomposing a square with a morphism ``X1 -> X2`` precomposes the
chosen diagonal.  Left lifting functions are the mirror image: a fixed left
arrow ``f`` lifting against every object of a category of right arrows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Hashable, Iterator

from ..fincat import CategoryError, FinCategory, GuardExceeded, Mor, Square
from ..lifting import LiftCache
from ..probes import ProbeSet
from ..report import Report, checklist
from .base import FunctorialFactorization, accuracy_check
from .coalgebra import (
    AlgebraStructure,
    CoalgebraStructure,
    ConcreteOverArrows,
    algebra_morphism_check,
    algebra_structures,
)

Entry = tuple[Hashable, Square]


@dataclass
class LiftingFunction:
    """``side="right"``: ``arrow`` is the right map g, squares run ``|X| -> g``.
    ``side="left"``: ``arrow`` is the left map f, squares run ``f -> |Y|``."""

    arrow: Mor
    table: dict[Entry, Mor] = field(default_factory=dict)
    side: str = "right"

    @property
    def g(self) -> Mor:
        return self.arrow

    def __call__(self, key: Hashable, sq: Square) -> Mor:
        return self.table[key, sq]

    def rows(self, name_obj=str, name_mor=None) -> list[tuple]:
        """Dump rows ``(object, u, v, d)`` in insertion order."""
        nm = name_mor or repr
        return [(name_obj(k), nm(sq.top), nm(sq.bottom), nm(d)) for (k, sq), d in self.table.items()]


def entry_squares(C: FinCategory, X: ConcreteOverArrows, arrow: Mor, side: str = "right") -> list[Entry]:
    """Every (object, square) pair a total lifting function must cover."""
    out = []
    for k in X.objects:
        a = X.underlying[k]
        sqs = C.squares(a, arrow) if side == "right" else C.squares(arrow, a)
        out.extend((k, sq) for sq in sqs)
    return out


def gamma(F: FunctorialFactorization, alg: AlgebraStructure, X: ConcreteOverArrows) -> LiftingFunction:
    """Lifting function of an algebra: ``t . E(u, v) . s`` for each coalgebra ``(f, s)`` in ``X``."""
    C = F.category
    phi = LiftingFunction(alg.g)
    for k in X.objects:
        if not isinstance(k, CoalgebraStructure):
            raise CategoryError("gamma needs a family of coalgebra structures")
        for sq in C.squares(k.f, alg.g):
            phi.table[k, sq] = C.chain(alg.t, F.square(sq), k.s)
    return phi


def delta(F: FunctorialFactorization, coalg: CoalgebraStructure, Y: ConcreteOverArrows) -> LiftingFunction:
    """Left lifting function of a coalgebra over a family of algebras."""
    C = F.category
    phi = LiftingFunction(coalg.f, side="left")
    for k in Y.objects:
        if not isinstance(k, AlgebraStructure):
            raise CategoryError("delta needs a family of algebra structures")
        for sq in C.squares(coalg.f, k.g):
            phi.table[k, sq] = C.chain(k.t, F.square(sq), coalg.s)
    return phi


def _coherence_pairs(C: FinCategory, X: ConcreteOverArrows, arrow: Mor, side: str):
    """``(entry_a, entry_b, m, forward)``: coherence demands ``phi(a) == forward(phi(b))``.

    Right side: for ``(x, y): X1 -> X2`` and square ``(u, v)`` at ``X2``,
    ``phi(X1, ux, vy) = phi(X2, u, v) . y``.  Left side: for ``(z, w): Y1 -> Y2``
    and square ``(u, v)`` at ``Y1``, ``phi(Y2, zu, wv) = z . phi(Y1, u, v)``.
    """
    for m in X.non_identity():
        sqm = m.square
        if side == "right":
            for sq in C.squares(X.underlying[m.tgt], arrow):
                moved = Square(X.underlying[m.src], arrow,
                               C.compose(sq.top, sqm.top), C.compose(sq.bottom, sqm.bottom))
                y = sqm.bottom
                yield (m.src, moved), (m.tgt, sq), m, (lambda d, y=y: C.compose(d, y))
        else:
            for sq in C.squares(arrow, X.underlying[m.src]):
                moved = Square(arrow, X.underlying[m.tgt],
                               C.compose(sqm.top, sq.top), C.compose(sqm.bottom, sq.bottom))
                z = sqm.top
                yield (m.tgt, moved), (m.src, sq), m, (lambda d, z=z: C.compose(z, d))


def validate_lifting_function(phi: LiftingFunction, X: ConcreteOverArrows) -> Report:
    C = X.category
    report = Report("validate_lifting_function", "objects and morphisms of the given family")
    entries = entry_squares(C, X, phi.arrow, phi.side)
    undefined = [e for e in entries if e not in phi.table]
    report.add(checklist("total", undefined))
    laws = []
    for (k, sq), d in phi.table.items():
        if d.dom != sq.src.cod or d.cod != sq.tgt.dom or C.compose(d, sq.src) != sq.top \
                or C.compose(sq.tgt, d) != sq.bottom:
            laws.append({"object": k, "square": sq, "diagonal": d})
    report.add(checklist("diagonal laws", laws))
    incoherent = []
    for a, b, m, fwd in _coherence_pairs(C, X, phi.arrow, phi.side):
        if a not in phi.table or b not in phi.table:
            continue
        if phi.table[a] != fwd(phi.table[b]):
            incoherent.append({"morphism": m, "entry": a, "from": b})
    report.add(checklist("coherence", incoherent))
    report.detail.update(entries=len(entries))
    return report


def boxplus_morphism_witness(sq: Square, phi1: LiftingFunction, phi2: LiftingFunction,
                             X: ConcreteOverArrows):
    """First entry violating ``z . phi1(X, u, v) == phi2(X, zu, wv)``, or ``None``."""
    C = X.category
    z, w = sq.top, sq.bottom
    for (k, s), d in phi1.table.items():
        moved = Square(s.src, phi2.arrow, C.compose(z, s.top), C.compose(w, s.bottom))
        other = phi2.table.get((k, moved))
        if other is None or C.compose(z, d) != other:
            return {"object": k, "square": s}
    return None


def boxplus_morphism_check(sq: Square, phi1: LiftingFunction, phi2: LiftingFunction,
                           X: ConcreteOverArrows) -> bool:
    C = X.category
    if sq.src != phi1.arrow or sq.tgt != phi2.arrow or not C.commutes(sq):
        raise CategoryError("square must commute and run between the two lifted arrows")
    return boxplus_morphism_witness(sq, phi1, phi2, X) is None


def restrict_boxplus(source: ConcreteOverArrows, target: ConcreteOverArrows,
                     on_objects: dict[Hashable, Hashable], phi: LiftingFunction) -> LiftingFunction:
    """Pull a lifting function back along a concrete functor ``source -> target``.

    The functor is given on objects; on morphisms it must keep the underlying
    square, so it is determined, and it exists only if every image is listed.
    """
    tmors = set(target.morphisms)
    for k in source.objects:
        if target.underlying[on_objects[k]] != source.underlying[k]:
            raise CategoryError(f"functor is not concrete at object {k!r}")
    for m in source.morphisms:
        if (on_objects[m.src], on_objects[m.tgt], m.square) not in tmors:
            raise CategoryError("functor has no image for a morphism with the same square")
    out = LiftingFunction(phi.arrow, side=phi.side)
    C = source.category
    for k in source.objects:
        a = source.underlying[k]
        sqs = C.squares(a, phi.arrow) if phi.side == "right" else C.squares(phi.arrow, a)
        for sq in sqs:
            out.table[k, sq] = phi.table[on_objects[k], sq]
    return out


# -- exhaustive search --------------------------------------------------------------

class _Search:
    """Backtracking over diagonal choices with coherence propagation."""

    def __init__(self, C: FinCategory, X: ConcreteOverArrows, arrow: Mor, side: str, size_guard: int):
        self.C = C
        self.entries = entry_squares(C, X, arrow, side)
        self.candidates = {e: C.diagonals(*e[1]) for e in self.entries}
        self.forward: dict[Entry, list] = {e: [] for e in self.entries}
        self.backward: dict[Entry, int] = {e: 0 for e in self.entries}
        for a, b, _, fwd in _coherence_pairs(C, X, arrow, side):
            self.forward[b].append((a, fwd))
            self.backward[a] += 1
        # branch first where a choice forces the most
        self.order = sorted(self.entries, key=lambda e: (self.backward[e], -len(self.forward[e])))
        self.product = prod(len(c) for c in self.candidates.values())
        self.size_guard = size_guard
        self.nodes = 0
        self.arrow, self.side = arrow, side

    def _assign(self, assign: dict, e: Entry, d: Mor, trail: list) -> bool:
        stack = [(e, d)]
        while stack:
            e, d = stack.pop()
            have = assign.get(e)
            if have is not None:
                if have != d:
                    return False
                continue
            assign[e] = d
            trail.append(e)
            for a, fwd in self.forward[e]:
                stack.append((a, fwd(d)))
        return True

    def solutions(self, fixed: dict[Entry, Mor] | None = None) -> Iterator[dict[Entry, Mor]]:
        if any(not c for c in self.candidates.values()):
            return
        assign: dict[Entry, Mor] = {}
        trail: list[Entry] = []
        for e, d in (fixed or {}).items():
            if e not in self.candidates or not self._assign(assign, e, d, trail):
                return
        yield from self._dfs(assign, 0)

    def _dfs(self, assign: dict, i: int):
        while i < len(self.order) and self.order[i] in assign:
            i += 1
        if i == len(self.order):
            yield dict(assign)
            return
        e = self.order[i]
        for d in self.candidates[e]:
            self.nodes += 1
            if self.nodes > self.size_guard:
                raise GuardExceeded(f"search visited more than {self.size_guard} nodes")
            trail: list[Entry] = []
            if self._assign(assign, e, d, trail):
                yield from self._dfs(assign, i + 1)
            for t in trail:
                del assign[t]


def search_lifting_functions(C: FinCategory, X: ConcreteOverArrows, arrow: Mor, side: str = "right",
                             size_guard: int = 10**6, fixed: dict | None = None,
                             limit: int | None = None) -> list[LiftingFunction]:
    """Coherent lifting functions on ``arrow`` over ``X`` (up to ``limit`` of them).

    Raises ``GuardExceeded`` once the search has tried ``size_guard`` choices.
    """
    s = _Search(C, X, arrow, side, size_guard)
    out = []
    for sol in s.solutions(fixed):
        out.append(LiftingFunction(arrow, {e: sol[e] for e in s.entries}, side))
        if limit is not None and len(out) >= limit:
            break
    return out


# -- the comparison checks ------------------------------------------------------------

def underlying_boxplus_equals_box(F: FunctorialFactorization | None, X: ConcreteOverArrows,
                                  probes: ProbeSet, size_guard: int = 10**6,
                                  cache: LiftCache | None = None) -> Report:
    """Per probe arrow g: g lifts against every ``|X|`` iff a coherent lifting function exists.

    The right side is decided by an algebra's gamma image when ``F`` offers
    one, otherwise by guarded search.
    """
    C = X.category
    cache = cache or LiftCache(C)
    report = Report("underlying_boxplus_equals_box", probes.universe)
    arrows_of_X = list(dict.fromkeys(X.underlying[k] for k in X.objects))
    fails, undecided, invalid_gamma = [], [], []
    how = {"gamma": 0, "search": 0, "no diagonal": 0}
    for g in probes.arrows:
        lifts = all(cache.lifts(f, g) for f in arrows_of_X)
        algs = algebra_structures(F, g) if F is not None else []
        if algs:
            phi = gamma(F, algs[0], X)
            if not validate_lifting_function(phi, X).passed:
                invalid_gamma.append(g)
            exists = True
            how["gamma"] += 1
        elif not lifts:
            # some square has no diagonal, so no table is even total
            exists = False
            how["no diagonal"] += 1
        else:
            how["search"] += 1
            try:
                exists = bool(search_lifting_functions(C, X, g, "right", size_guard, limit=1))
            except GuardExceeded:
                undecided.append(g)
                continue
        if exists != lifts:
            fails.append({"arrow": g, "lifts": lifts, "coherent table": exists})
    report.add(checklist("equivalence", fails, undecided))
    report.add(checklist("gamma valid", invalid_gamma))
    report.detail.update(decided_by=how, family_objects=len(X.objects))
    return report


def gamma_full_embedding_check(F: FunctorialFactorization, X: ConcreteOverArrows, probes: ProbeSet) -> Report:
    """Injectivity and fullness of algebras -> lifting functions on the probe arrows.

    Fullness is tested on every commuting square between probe arrows that
    carry algebras; the full tables of both relations are kept in ``detail``.
    """
    C = F.category
    report = Report("gamma_full_embedding_check", probes.universe)
    images: list[tuple[AlgebraStructure, LiftingFunction]] = []
    for g in probes.arrows:
        for a in algebra_structures(F, g):
            images.append((a, gamma(F, a, X)))
    clashes = []
    for i, (a1, p1) in enumerate(images):
        for a2, p2 in images[i + 1:]:
            if a1.g == a2.g and p1.table == p2.table:
                clashes.append({"arrow": a1.g, "structures": (a1.t, a2.t)})
    report.add(checklist("injective", clashes))

    boxplus_rel, algebra_rel, not_full = [], [], []
    for i, (a1, p1) in enumerate(images):
        for j, (a2, p2) in enumerate(images):
            for sq in C.squares(a1.g, a2.g):
                is_bp = boxplus_morphism_witness(sq, p1, p2, X) is None
                is_alg = algebra_morphism_check(F, sq, a1, a2)
                if is_bp:
                    boxplus_rel.append((i, j, sq))
                if is_alg:
                    algebra_rel.append((i, j, sq))
                if is_bp and not is_alg:
                    not_full.append({"square": sq, "from": a1, "to": a2})
    report.add(checklist("full", not_full))
    acc = accuracy_check(F, "left", probes)
    report.detail.update(
        structures=[a for a, _ in images],
        boxplus_morphisms=boxplus_rel,
        algebra_morphisms=algebra_rel,
        left_accurate=acc.verdict,
    )
    return report


def small_generated_check(F: FunctorialFactorization | None, Csub: ConcreteOverArrows,
                          X_full: ConcreteOverArrows, probes: ProbeSet, size_guard: int = 10**6) -> Report:
    """Every coherent lifting function over ``Csub`` extends uniquely to ``X_full``.

    ``Csub`` must be a concrete subcategory of ``X_full`` (same keys, same squares).
    """
    C = X_full.category
    full_mors = set(X_full.morphisms)
    if any(k not in X_full.underlying or X_full.underlying[k] != Csub.underlying[k] for k in Csub.objects) \
            or any(m not in full_mors for m in Csub.morphisms):
        raise CategoryError("Csub is not a concrete subcategory of X_full")
    report = Report("small_generated_check", probes.universe)
    fails, undecided = [], []
    counts = {}
    for g in probes.arrows:
        try:
            small = search_lifting_functions(C, Csub, g, "right", size_guard)
            ext_counts = []
            for phi in small:
                ext = search_lifting_functions(C, X_full, g, "right", size_guard, fixed=phi.table, limit=2)
                ext_counts.append(len(ext))
        except GuardExceeded:
            undecided.append(g)
            continue
        counts[C.name_of(g)] = ext_counts
        for phi, n in zip(small, ext_counts):
            if n != 1:
                fails.append({"arrow": g, "extensions": n if n < 2 else ">=2"})
                break
    report.add(checklist("unique extension", fails, undecided))
    report.detail.update(extension_counts=counts)
    return report
