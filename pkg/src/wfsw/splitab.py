"""Split monomorphisms and split epimorphisms of finite abelian groups.

``f: A -> B`` factors as ``A -> A (+) B -> B`` through ``<id, f>`` and the
second projection; squares act by ``u (+) v``.  Direct sums always list the
factors of ``A`` first.
"""

from __future__ import annotations

from .factorization import (
    Factored,
    FunctorialFactorization,
    accuracy_check,
    algebra_structures,
    coalgebra_structures,
)
from .fincat import CategoryError, FinAb, Mor, Square
from .lifting import (
    LiftCache,
    WfsSpec,
    builtin_class,
    is_split_epi,
    is_split_mono,
    retractions,
    sections,
    verify_wfs,
)
from .probes import ProbeSet
from .report import Report, checklist

__all__ = [
    "SplitFactorization", "split_factorization", "is_split_mono", "is_split_epi",
    "verify_split_wfs", "verify_split_accuracy", "split_witnesses",
]


class SplitFactorization(FunctorialFactorization):
    name = "split"

    def __init__(self, category: FinAb | None = None):
        super().__init__(category or FinAb())
        if self.category.flavor != "finab":
            raise CategoryError("the split factorization lives on finite abelian groups")

    def _factor(self, f: Mor) -> Factored:
        Ab = self.category
        if f.dom.flavor != "finab":
            raise CategoryError("not a finab arrow")
        A, B = f.dom, f.cod
        return Factored(Ab.pair(Ab.identity(A), f), Ab.direct_sum(A, B), Ab.proj2(A, B))

    def _square(self, sq: Square) -> Mor:
        return self.category.oplus(sq.top, sq.bottom)


_default = SplitFactorization()


def split_factorization(f: Mor, F: SplitFactorization | None = None) -> Factored:
    return (F or _default).factor(f)


def split_witnesses(F: SplitFactorization, f: Mor) -> tuple[Mor, Mor]:
    """The retraction ``p1`` of ``Lf`` and the section ``<0, id>`` of ``Rf``."""
    Ab = F.category
    return Ab.proj1(f.dom, f.cod), Ab.inj2(f.dom, f.cod)


def verify_split_wfs(probes: ProbeSet, F: SplitFactorization | None = None,
                     cache: LiftCache | None = None) -> Report:
    F = F or SplitFactorization()
    Ab = F.category
    spec = WfsSpec(Ab, builtin_class(Ab, "split_mono"), builtin_class(Ab, "split_epi"), F)
    report = verify_wfs(spec, probes, cache)
    report.command = "verify_split_wfs"
    bad = []
    for f in probes.arrows:
        L, _, R = F.factor(f)
        r, s = split_witnesses(F, f)
        if Ab.compose(r, L) != Ab.identity(f.dom):
            bad.append({"arrow": f, "witness": "retraction of Lf"})
        if Ab.compose(R, s) != Ab.identity(f.cod):
            bad.append({"arrow": f, "witness": "section of Rf"})
    report.add(checklist("factor witnesses", bad))
    return report


def verify_split_accuracy(probes: ProbeSet, F: SplitFactorization | None = None) -> Report:
    """Computed left and right accuracy of the split factorization, arrow by arrow."""
    F = F or SplitFactorization()
    report = accuracy_check(F, "both", probes)
    report.command = "verify_split_accuracy"
    for c in report.checks:
        c.detail["failing_arrows"] = sum(1 for v in c.detail["per_arrow"].values() if not v)
    return report


def structure_count_check(probes: ProbeSet, F: SplitFactorization | None = None) -> Report:
    """Coalgebras on f match retractions of f; algebras on g match sections of g."""
    F = F or SplitFactorization()
    Ab = F.category
    report = Report("structure_count_check", probes.universe)
    bad_c, bad_a = [], []
    for f in probes.arrows:
        nc, nr = len(coalgebra_structures(F, f)), len(retractions(Ab, f))
        if nc != nr:
            bad_c.append({"arrow": f, "coalgebras": nc, "retractions": nr})
        na, ns = len(algebra_structures(F, f)), len(sections(Ab, f))
        if na != ns:
            bad_a.append({"arrow": f, "algebras": na, "sections": ns})
    report.add(checklist("coalgebras = retractions", bad_c))
    report.add(checklist("algebras = sections", bad_a))
    return report
