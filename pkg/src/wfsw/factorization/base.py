"""Functorial factorizations as memoized rules, with law and accuracy checks."""

from __future__ import annotations

from typing import NamedTuple

from ..fincat import CategoryError, FinCategory, Mor, Obj, Square
from ..probes import ProbeSet
from ..report import Report, checklist


class Undefined(CategoryError):
    """The factorization has no entry for this arrow or square."""


class Factored(NamedTuple):
    left: Mor
    mid: Obj
    right: Mor


class FunctorialFactorization:
    """``f |-> (Lf, E0 f, Rf)`` on arrows and ``(u, v) |-> E(u, v)`` on squares.

    Subclasses implement ``_factor`` and ``_square``; results are memoized, so
    every visited entry is computed once and then fixed.
    """

    name = "factorization"

    def __init__(self, category: FinCategory):
        self.category = category
        self._arrows: dict[Mor, Factored] = {}
        self._squares: dict[Square, Mor] = {}

    def _factor(self, f: Mor) -> Factored:
        raise NotImplementedError

    def _square(self, sq: Square) -> Mor:
        raise NotImplementedError

    def factor(self, f: Mor) -> Factored:
        hit = self._arrows.get(f)
        if hit is None:
            hit = self._arrows[f] = self._factor(f)
        return hit

    def square(self, sq: Square) -> Mor:
        """The middle map ``E(u, v): E0 f -> E0 g`` of a square ``f -> g``."""
        hit = self._squares.get(sq)
        if hit is None:
            hit = self._squares[sq] = self._square(sq)
        return hit

    def left(self, f: Mor) -> Mor:
        return self.factor(f).left

    def right(self, f: Mor) -> Mor:
        return self.factor(f).right

    def mid(self, f: Mor) -> Obj:
        return self.factor(f).mid

    def counit_square(self, f: Mor) -> Square:
        """``(id, Rf): Lf -> f``"""
        return Square(self.left(f), f, self.category.identity(f.dom), self.right(f))

    def unit_square(self, f: Mor) -> Square:
        """``(Lf, id): f -> Rf``"""
        return Square(f, self.right(f), self.left(f), self.category.identity(f.cod))


class TableFactorization(FunctorialFactorization):
    """Explicit finite tables, for categories without a generating rule."""

    name = "table"

    def __init__(self, category: FinCategory, arrows: dict[Mor, Factored], squares: dict[Square, Mor]):
        super().__init__(category)
        self._given_arrows = dict(arrows)
        self._given_squares = dict(squares)

    def _factor(self, f: Mor) -> Factored:
        try:
            return self._given_arrows[f]
        except KeyError:
            raise Undefined(f"no factorization entry for {self.category.name_of(f)}") from None

    def _square(self, sq: Square) -> Mor:
        if sq in self._given_squares:
            return self._given_squares[sq]
        if sq.src == sq.tgt and self.category.is_identity(sq.top) and self.category.is_identity(sq.bottom):
            return self.category.identity(self.mid(sq.src))
        raise Undefined(f"no middle map for square {sq!r}")


def validate_ff(F: FunctorialFactorization, probes: ProbeSet) -> Report:
    """Factorization, naturality and functoriality on the probe arrows and squares."""
    C = F.category
    report = Report("validate_ff", probes.universe)
    undefined, bad_comp, bad_types = [], [], []
    for f in probes.arrows:
        try:
            L, E, R = F.factor(f)
        except Undefined:
            undefined.append(f)
            continue
        if L.dom != f.dom or L.cod != E or R.dom != E or R.cod != f.cod:
            bad_types.append(f)
        elif C.compose(R, L) != f:
            bad_comp.append(f)
    report.add(checklist("defined", undefined))
    report.add(checklist("factorization", bad_types + bad_comp))

    bad_nat, missing = [], []
    for sq in probes.squares:
        f, g, u, v = sq
        try:
            m = F.square(sq)
            Lf, _, Rf = F.factor(f)
            Lg, _, Rg = F.factor(g)
        except Undefined:
            missing.append(sq)
            continue
        if (m.dom != F.mid(f) or m.cod != F.mid(g)
                or C.compose(m, Lf) != C.compose(Lg, u) or C.compose(Rg, m) != C.compose(v, Rf)):
            bad_nat.append(sq)
    report.add(checklist("naturality", bad_nat + missing))

    bad_fun = []
    for f in probes.arrows:
        try:
            if F.square(C.identity_square(f)) != C.identity(F.mid(f)):
                bad_fun.append({"identity": f})
        except Undefined:
            bad_fun.append({"identity": f, "undefined": True})
    for s1, s2 in probes.square_pairs():
        try:
            if F.square(C.compose_squares(s2, s1)) != C.compose(F.square(s2), F.square(s1)):
                bad_fun.append({"composite": (s1, s2)})
        except Undefined:
            bad_fun.append({"composite": (s1, s2), "undefined": True})
    report.add(checklist("functoriality", bad_fun))
    report.detail.update(arrows=len(probes.arrows), squares=len(probes.squares))
    return report


def accuracy_comparands(F: FunctorialFactorization, f: Mor, side: str) -> tuple[Mor, Mor]:
    """The two maps that accuracy requires to be equal.

    left: ``E(id, Rf)`` and ``R(Lf)``, both ``E0(Lf) -> E0 f``;
    right: ``E(Lf, id)`` and ``L(Rf)``, both ``E0 f -> E0(Rf)``.
    """
    if side == "left":
        return F.square(F.counit_square(f)), F.right(F.left(f))
    if side == "right":
        return F.square(F.unit_square(f)), F.left(F.right(f))
    raise ValueError("side must be 'left' or 'right'")


def accuracy_check(F: FunctorialFactorization, side: str, probes: ProbeSet) -> Report:
    """Per-arrow accuracy verdicts; ``side`` is "left", "right" or "both"."""
    C = F.category
    sides = ["left", "right"] if side == "both" else [side]
    report = Report("accuracy_check", probes.universe)
    for s in sides:
        per_arrow, fails = {}, []
        for f in probes.arrows:
            a, b = accuracy_comparands(F, f, s)
            per_arrow[C.name_of(f)] = a == b
            if a != b:
                fails.append({"arrow": f, "induced": a, "leg": b})
        report.add(checklist(f"{s} accuracy", fails, per_arrow=per_arrow))
    return report


def forced_identity_check(F: FunctorialFactorization, probes: ProbeSet) -> Report:
    """``E(id, Rf) . L(Lf) == Lf`` and ``R(Lf) . L(Lf) == Lf``; these hold for any factorization."""
    C = F.category
    report = Report("forced_identity_check", probes.universe)
    fails = []
    for f in probes.arrows:
        a, b = accuracy_comparands(F, f, "left")
        LLf, Lf = F.left(F.left(f)), F.left(f)
        for label, m in (("induced", a), ("leg", b)):
            if C.compose(m, LLf) != Lf:
                fails.append({"arrow": f, "which": label})
    report.add(checklist("forced identities", fails))
    return report
