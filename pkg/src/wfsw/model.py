"""Model-structure axioms on probe sets, and composite factorizations.

A model structure is given by classes of cofibrations C, fibrations F and
weak equivalences W, with factorizations for (C, F and W) and (C and W, F).
"""

from __future__ import annotations

from dataclasses import dataclass

from .factorization import (
    CoalgebraStructure,
    ConcreteOverArrows,
    Factored,
    FunctorialFactorization,
    all_coalgebras,
    coalgebra_category,
    coalgebra_structures,
    is_coalgebra,
    underlying_boxplus_equals_box,
)
from .fincat import FinCategory, Mor, Square
from .lifting import ArrowClass, LiftCache, WfsSpec, box, retract_witness, verify_wfs
from .probes import ProbeSet
from .report import INCONCLUSIVE, Check, Report, checklist


@dataclass
class ModelSpec:
    category: FinCategory
    cofibrations: ArrowClass
    fibrations: ArrowClass
    weak: ArrowClass
    fact_cof: FunctorialFactorization | None = None   # for (C, F and W)
    fact_triv: FunctorialFactorization | None = None  # for (C and W, F)


def two_out_of_three(C: FinCategory, W: ArrowClass, triples: list[tuple[Mor, Mor]]) -> Check:
    """For composable ``(f, g)``: two of ``f, g, g . f`` in W force the third."""
    bad = []
    for f, g in triples:
        inside = (f in W, g in W, C.compose(g, f) in W)
        if sum(inside) == 2:
            missing = ("f", "g", "g.f")[inside.index(False)]
            bad.append({"f": f, "g": g, "missing": missing})
    return checklist("two-out-of-three", bad, triples=len(triples))


def retract_closed_check(C: FinCategory, W: ArrowClass, probes: ProbeSet) -> Check:
    """No probe arrow outside W is a retract of a probe arrow inside W."""
    members = W.restrict(probes.arrows)
    bad = []
    for g in probes.arrows:
        if g in W:
            continue
        for f in members:
            w = retract_witness(C, g, f)
            if w is not None:
                bad.append({"arrow": g, "retract of": f, "squares": w})
                break
    return checklist("retract closed", bad)


def pullback_family(W: ArrowClass, F: FunctorialFactorization, probes: ProbeSet,
                    with_morphisms: bool = True) -> ConcreteOverArrows:
    """Coalgebras whose underlying arrow is a probe arrow in W, with their coalgebra morphisms."""
    return coalgebra_category(F, all_coalgebras(F, W.restrict(probes.arrows)), with_morphisms)


def prop53_check(C: FinCategory, left: ArrowClass, right0: ArrowClass, W: ArrowClass,
                 F: FunctorialFactorization, probes: ProbeSet, size_guard: int = 10**6,
                 family_probes: ProbeSet | None = None, cache: LiftCache | None = None) -> Report:
    """Conditions on (left, right0, W) for W to be the weak equivalences of a model structure.

    ``F`` factors for (left, right0).  The coalgebra family of the last
    condition is built over ``family_probes`` (default: the probes).
    """
    cache = cache or LiftCache(C)
    report = Report("prop53_check", probes.universe)
    report.detail["vacuous"] = not probes.arrows
    c = two_out_of_three(C, W, probes.triples)
    c.name = "(1) two-out-of-three"
    report.add(c)
    report.add(checklist("(2) right0 inside W",
                         [g for g in probes.arrows if g in right0 and g not in W]))
    LW = [f for f in probes.arrows if f in left and f in W]
    inner = box(C, LW, "right", probes, cache)
    outer = box(C, inner, "left", probes, cache)
    lw = set(LW)
    extra = [f for f in outer if f not in lw]
    report.add(checklist("(3) double box of left and W", extra, box_right=len(inner), box_left=len(outer)))
    report.add(Check("(4) accessibility", INCONCLUSIVE, detail={"out_of_scope": True}))
    family = pullback_family(W, F, family_probes or probes)
    sub = underlying_boxplus_equals_box(F, family, probes, size_guard, cache)
    c5 = Check("(5) lifting functions against the pullback family", sub.verdict,
               detail={"family_objects": len(family.objects), **sub.detail})
    c5.counterexamples = [x for ch in sub.checks for x in ch.counterexamples]
    c5.witness = c5.counterexamples[0] if c5.counterexamples else None
    report.add(c5)
    return report


class ComposedFactorization(FunctorialFactorization):
    """Factor by ``cof`` first, then factor its left leg by ``triv``.

    ``L0 f = L'(Lf)``, ``E0 f = E0'(Lf)`` and ``R f = R0 f . R'(Lf)``.
    """

    name = "composed"

    def __init__(self, triv: FunctorialFactorization, cof: FunctorialFactorization):
        super().__init__(cof.category)
        self.triv, self.cof = triv, cof

    def _factor(self, f: Mor) -> Factored:
        Lf, _, R0f = self.cof.factor(f)
        L0, E, Rp = self.triv.factor(Lf)
        return Factored(L0, E, self.category.compose(R0f, Rp))

    def _square(self, sq: Square) -> Mor:
        mid = self.cof.square(sq)
        return self.triv.square(Square(self.cof.left(sq.src), self.cof.left(sq.tgt), sq.top, mid))

    def xi(self, f: Mor) -> Mor:
        """``R'(Lf): E0 f -> E0_cof f``"""
        return self.triv.right(self.cof.left(f))


def compose_factorizations(triv: FunctorialFactorization, cof: FunctorialFactorization,
                           probes: ProbeSet | None = None) -> ComposedFactorization:
    return ComposedFactorization(triv, cof)


def xi_morphism_check(triv: FunctorialFactorization, cof: FunctorialFactorization,
                      probes: ProbeSet, composed: ComposedFactorization | None = None) -> Report:
    """``xi_f = R'(Lf)`` is a morphism of factorizations from the composite to ``cof``."""
    G = composed or ComposedFactorization(triv, cof)
    C = G.category
    report = Report("xi_morphism_check", probes.universe)
    bad = []
    for f in probes.arrows:
        xi = G.xi(f)
        if C.compose(xi, G.left(f)) != cof.left(f):
            bad.append({"arrow": f, "law": "xi . L0 f == L f"})
        if C.compose(cof.right(f), xi) != G.right(f):
            bad.append({"arrow": f, "law": "R0 f . xi == R f"})
    report.add(checklist("factorization laws", bad))
    bad = []
    for sq in probes.squares:
        if C.compose(cof.square(sq), G.xi(sq.src)) != C.compose(G.xi(sq.tgt), G.square(sq)):
            bad.append(sq)
    report.add(checklist("naturality", bad))
    return report


def f0_functor_check(triv: FunctorialFactorization, cof: FunctorialFactorization, probes: ProbeSet,
                     W: ArrowClass | None = None, size_guard: int = 10**6,
                     composed: ComposedFactorization | None = None) -> Report:
    """The functor from composite-coalgebras to cof-coalgebras, ``(f, s) |-> (f, xi_f . s)``.

    (a) it lands in cof-coalgebras; (b) every cof-coalgebra ``(f, r)`` with
    ``f`` in W is hit, via a diagonal ``t`` with ``t . Lf == L0 f`` and
    ``xi_f . t == id``, taking ``(f, t . r)``.
    """
    G = composed or ComposedFactorization(triv, cof)
    C = G.category
    report = Report("f0_functor_check", probes.universe)
    bad = []
    for f in probes.arrows:
        xi = G.xi(f)
        for c in coalgebra_structures(G, f):
            if not is_coalgebra(cof, CoalgebraStructure(f, C.compose(xi, c.s))):
                bad.append({"arrow": f, "structure": c.s})
    report.add(checklist("(a) lands in coalgebras", bad))

    misses, guard_hits, bad_preimage = [], [], []
    checked = 0
    for f in probes.arrows:
        if W is not None and f not in W:
            continue
        structures = coalgebra_structures(cof, f)
        if not structures:
            continue
        Lf, L0f, xi = cof.left(f), G.left(f), G.xi(f)
        sq = Square(Lf, xi, L0f, C.identity(cof.mid(f)))
        if C.flavor == "table" and C.hom_size(sq.src.cod, sq.tgt.dom) > size_guard:
            guard_hits.extend(structures)
            continue
        t = C.some_diagonal(*sq)
        for c in structures:
            checked += 1
            if t is None:
                misses.append({"arrow": f, "structure": c.s})
                continue
            pre = CoalgebraStructure(f, C.compose(t, c.s))
            if not is_coalgebra(G, pre) or C.compose(xi, pre.s) != c.s:
                bad_preimage.append({"arrow": f, "structure": c.s})
    report.add(checklist("(b) surjective on objects", misses + bad_preimage, guard_hits,
                         structures=checked, misses=len(misses)))
    return report


def model_axioms_check(spec: ModelSpec, probes: ProbeSet, cache: LiftCache | None = None) -> Report:
    C = spec.category
    cache = cache or LiftCache(C)
    report = Report("model_axioms_check", probes.universe)
    report.add(two_out_of_three(C, spec.weak, probes.triples))
    report.add(retract_closed_check(C, spec.weak, probes))
    triv_fib = spec.fibrations & spec.weak
    triv_cof = spec.cofibrations & spec.weak
    report.extend(verify_wfs(WfsSpec(C, spec.cofibrations, triv_fib, spec.fact_cof), probes, cache),
                  "(C, F and W) ")
    report.extend(verify_wfs(WfsSpec(C, triv_cof, spec.fibrations, spec.fact_triv), probes, cache),
                  "(C and W, F) ")
    return report
