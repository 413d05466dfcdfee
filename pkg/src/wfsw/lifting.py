"""Lifting problems, the box operators, retract closure and WFS verification.

Every universally quantified condition is relativized to a ``ProbeSet``;
reports carry the probe universe they were checked on.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Iterable

from .fincat import CategoryError, FinCategory, Mor, Obj, Square
from .probes import ProbeSet
from .report import Report, checklist


class NotCommuting(CategoryError):
    pass


class ArrowClass:
    """A decidable class of arrows, evaluated lazily and cached per arrow.

    ``key`` maps an arrow to its cache key; an isomorphism-invariant class
    can pass ``C.arrow_class`` so that one evaluation serves a whole orbit.
    """

    def __init__(self, name: str, predicate: Callable[[Mor], bool],
                 key: Callable[[Mor], Mor] | None = None):
        self.name = name
        self._predicate = predicate
        self._key = key
        self._cache: dict[Mor, bool] = {}

    def __contains__(self, f: Mor) -> bool:
        k = f if self._key is None else self._key(f)
        hit = self._cache.get(k)
        if hit is None:
            hit = self._cache[k] = bool(self._predicate(k))
        return hit

    def __repr__(self) -> str:
        return f"ArrowClass({self.name})"

    @classmethod
    def of(cls, name: str, arrows: Iterable[Mor]) -> "ArrowClass":
        members = frozenset(arrows)
        return cls(name, members.__contains__)

    def __and__(self, other: "ArrowClass") -> "ArrowClass":
        return ArrowClass(f"{self.name}&{other.name}", lambda f: f in self and f in other)

    def restrict(self, arrows: Iterable[Mor]) -> list[Mor]:
        return [f for f in arrows if f in self]


def _terminal_map(C: FinCategory, A: Obj) -> tuple[Obj, Mor] | None:
    if C.flavor == "finab":
        return C.zero(), C.zero_map(A, C.zero())
    return None


def retractions(C: FinCategory, f: Mor) -> list[Mor]:
    """All ``r`` with ``r . f == id``."""
    A, B = f.dom, f.cod
    term = _terminal_map(C, A)
    if term is not None:
        # r is a diagonal of the square (id_A, !) from f to A -> 0
        Z, bang = term
        return C.diagonals(f, bang, C.identity(A), C.zero_map(B, Z))
    ident = C.identity(A)
    return [r for r in C.hom(B, A) if C.compose(r, f) == ident]


def sections(C: FinCategory, g: Mor) -> list[Mor]:
    """All ``s`` with ``g . s == id``."""
    X, D = g.dom, g.cod
    if C.flavor == "finab":
        Z = C.zero()
        return C.diagonals(C.zero_map(Z, D), g, C.zero_map(Z, X), C.identity(D))
    ident = C.identity(D)
    return [s for s in C.hom(D, X) if C.compose(g, s) == ident]


def is_split_mono(C: FinCategory, f: Mor) -> bool:
    return bool(retractions(C, f))


def is_split_epi(C: FinCategory, g: Mor) -> bool:
    return bool(sections(C, g))


def builtin_class(C: FinCategory, kind: str) -> ArrowClass:
    preds: dict[str, Callable[[Mor], bool]] = {
        "all": lambda f: True,
        "none": lambda f: False,
        "identities": C.is_identity,
        "split_mono": lambda f: is_split_mono(C, f),
        "split_epi": lambda f: is_split_epi(C, f),
    }
    preds["isos"] = C.is_iso
    if C.flavor == "finset":
        preds["injective"] = C.is_injective
        preds["surjective"] = C.is_surjective
    if kind not in preds:
        raise CategoryError(f"unknown arrow class {kind!r} for {C.flavor}")
    # every builtin class is closed under isomorphism of arrows
    key = C.arrow_class if C.flavor in ("finset", "finab") else None
    return ArrowClass(kind, preds[kind], key)


# -- lifting problems ----------------------------------------------------------

def fill_square(C: FinCategory, sq: Square) -> list[Mor]:
    """Every diagonal of a commuting square, in canonical order."""
    if not C.commutes(sq):
        raise NotCommuting(f"square does not commute: {sq!r}")
    return sorted(C.diagonals(*sq), key=lambda d: d.data) if C.flavor != "table" else C.diagonals(*sq)


def has_rlp(C: FinCategory, f: Mor, g: Mor) -> bool:
    """``g`` has the right lifting property with respect to ``f``."""
    return C.rlp_witness(f, g) is None


class LiftCache:
    """Memoized lifting checks; one instance per verification run.

    Whether ``g`` lifts against ``f`` only depends on both arrows up to
    isomorphism, so verdicts are cached per pair of orbit representatives.
    Witness squares are always computed for the arrows actually asked about.
    """

    def __init__(self, C: FinCategory, use_orbits: bool | None = None):
        self.C = C
        self.use_orbits = C.flavor in ("finset", "finab") if use_orbits is None else use_orbits
        self._verdicts: dict[tuple[Mor, Mor], bool] = {}
        self._witnesses: dict[tuple[Mor, Mor], Square | None] = {}

    def _key(self, f: Mor, g: Mor) -> tuple[Mor, Mor]:
        if self.use_orbits:
            return self.C.arrow_class(f), self.C.arrow_class(g)
        return f, g

    def lifts(self, f: Mor, g: Mor) -> bool:
        key = self._key(f, g)
        hit = self._verdicts.get(key)
        if hit is None:
            hit = self._verdicts[key] = self.C.rlp_witness(*key) is None
        return hit

    def witness(self, f: Mor, g: Mor) -> Square | None:
        if self.lifts(f, g):
            return None
        if (f, g) not in self._witnesses:
            self._witnesses[f, g] = self.C.rlp_witness(f, g)
        return self._witnesses[f, g]


def box(C: FinCategory, S: list[Mor], side: str, probes: ProbeSet,
        cache: LiftCache | None = None) -> list[Mor]:
    """``S^box`` (side="right") or ``^box S`` (side="left") within the probe arrows."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if any(f not in probes for f in S):
        warnings.warn("box: some arrows of S are outside the probe set", stacklevel=2)
    cache = cache or LiftCache(C)
    if side == "right":
        return [g for g in probes.arrows if all(cache.lifts(f, g) for f in S)]
    return [f for f in probes.arrows if all(cache.lifts(f, g) for g in S)]


def retract_witness(C: FinCategory, g: Mor, f: Mor) -> tuple[Square, Square] | None:
    """Squares ``i: g -> f`` and ``r: f -> g`` with ``r . i == id_g``, if ``g`` is a retract of ``f``."""
    for i0 in C.hom(g.dom, f.dom):
        r0s = retractions(C, i0)
        if not r0s:
            continue
        for i1 in C.hom(g.cod, f.cod):
            if C.compose(f, i0) != C.compose(i1, g):
                continue
            for r1 in retractions(C, i1):
                for r0 in r0s:
                    if C.compose(g, r0) == C.compose(r1, f):
                        return Square(g, f, i0, i1), Square(f, g, r0, r1)
    return None


def retract_closure(C: FinCategory, S: list[Mor], probes: ProbeSet) -> list[Mor]:
    """Smallest retract-closed subset of the probes containing ``S`` (within probes)."""
    members = {f for f in S if f in probes}
    changed = True
    while changed:
        changed = False
        for g in probes.arrows:
            if g in members:
                continue
            if any(retract_witness(C, g, f) for f in sorted(members, key=probes.arrows.index)):
                members.add(g)
                changed = True
    return [f for f in probes.arrows if f in members]


# -- weak factorization systems ---------------------------------------------------

@dataclass
class WfsSpec:
    category: FinCategory
    left: ArrowClass
    right: ArrowClass
    factorization: object = None  # a FunctorialFactorization, or None


def _search_factorization(C: FinCategory, h: Mor, spec: WfsSpec, objects: list[Obj]):
    for E in objects:
        rights = [g for g in C.hom(E, h.cod) if g in spec.right]
        if not rights:
            continue
        for f in C.hom(h.dom, E):
            if f not in spec.left:
                continue
            for g in rights:
                if C.compose(g, f) == h:
                    return f, g
    return None


def verify_wfs(spec: WfsSpec, probes: ProbeSet, cache: LiftCache | None = None) -> Report:
    C = spec.category
    cache = cache or LiftCache(C)
    report = Report("verify_wfs", probes.universe)
    L = spec.left.restrict(probes.arrows)
    R = spec.right.restrict(probes.arrows)
    report.detail.update(left=spec.left.name, right=spec.right.name, n_left=len(L), n_right=len(R),
                         n_probes=len(probes))

    # R = L^box: members lift against all of L; non-members fail against some f in L
    fails = []
    for g in probes.arrows:
        if g in spec.right:
            for f in L:
                if not cache.lifts(f, g):
                    fails.append({"kind": "right member without lift", "arrow": g,
                                  "square": cache.witness(f, g)})
                    break
        elif all(cache.lifts(f, g) for f in L):
            fails.append({"kind": "in box but not right", "arrow": g})
    report.add(checklist("right=box(left)", fails))

    fails = []
    for f in probes.arrows:
        if f in spec.left:
            for g in R:
                if not cache.lifts(f, g):
                    fails.append({"kind": "left member without lift", "arrow": f,
                                  "square": cache.witness(f, g)})
                    break
        elif all(cache.lifts(f, g) for g in R):
            fails.append({"kind": "in box but not left", "arrow": f})
    report.add(checklist("left=box(right)", fails))

    fails, undecided = [], []
    F = spec.factorization
    objects = list(dict.fromkeys(C.objects + probes.objects()))
    for h in probes.arrows:
        if F is not None:
            fac = F.factor(h)
            if C.compose(fac.right, fac.left) != h:
                fails.append({"kind": "does not compose", "arrow": h})
            elif fac.left not in spec.left:
                fails.append({"kind": "left factor not in left class", "arrow": h, "factor": fac.left})
            elif fac.right not in spec.right:
                fails.append({"kind": "right factor not in right class", "arrow": h, "factor": fac.right})
        elif _search_factorization(C, h, spec, objects) is None:
            undecided.append(h)
    report.add(checklist("factorization", fails, undecided,
                         method="functorial" if F is not None else "search over probe objects"))
    return report


def unique_fill_check(C: FinCategory, S: list[Mor], T: list[Mor], probes: ProbeSet) -> Report:
    """Orthogonality: every square from ``S`` to ``T`` has exactly one diagonal."""
    report = Report("unique_fill_check", probes.universe)
    none, many = [], []
    for f in S:
        for g in T:
            for sq in C.squares(f, g):
                n = len(C.diagonals(*sq))
                if n == 0:
                    none.append(sq)
                elif n > 1:
                    many.append({"square": sq, "diagonals": n})
    report.add(checklist("existence", none))
    report.add(checklist("uniqueness", many))
    report.detail.update(no_diagonal=len(none), several_diagonals=len(many))
    return report
