"""Probe sets: the explicit finite universes every check quantifies over."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

from .fincat import FinAb, FinCategory, FinSet, Mor, Obj, Square


@dataclass
class ProbeSet:
    arrows: list[Mor]
    squares: list[Square] = field(default_factory=list)
    triples: list[tuple[Mor, Mor]] = field(default_factory=list)
    universe: str = "explicit probe list"

    def __post_init__(self):
        self._members = set(self.arrows)

    def __contains__(self, f: Mor) -> bool:
        return f in self._members

    def __len__(self) -> int:
        return len(self.arrows)

    def objects(self) -> list[Obj]:
        seen: dict[Obj, None] = {}
        for f in self.arrows:
            seen.setdefault(f.dom)
            seen.setdefault(f.cod)
        return list(seen)

    def square_pairs(self) -> list[tuple[Square, Square]]:
        """Composable pairs ``(s1, s2)`` of probe squares (``s1.tgt == s2.src``)."""
        by_src: dict[Mor, list[Square]] = {}
        for s in self.squares:
            by_src.setdefault(s.src, []).append(s)
        return [(s1, s2) for s1 in self.squares for s2 in by_src.get(s1.tgt, ())]


def all_arrows(C: FinCategory, objects: list[Obj] | None = None) -> list[Mor]:
    objects = C.objects if objects is None else objects
    return [f for A in objects for B in objects for f in C.hom(A, B)]


def all_squares(C: FinCategory, arrows: list[Mor]) -> list[Square]:
    return [s for f in arrows for g in arrows for s in C.squares(f, g)]


def composable_pairs(arrows: list[Mor]) -> list[tuple[Mor, Mor]]:
    by_dom: dict[Obj, list[Mor]] = {}
    for g in arrows:
        by_dom.setdefault(g.dom, []).append(g)
    return [(f, g) for f in arrows for g in by_dom.get(f.cod, ())]


def full_probes(
    C: FinCategory,
    objects: list[Obj] | None = None,
    square_objects: list[Obj] | None = None,
    universe: str | None = None,
) -> ProbeSet:
    """Every arrow among ``objects``; squares and triples among ``square_objects``.

    Squares and composable pairs grow quickly, so they may be restricted to a
    smaller window (default: the same objects).
    """
    arrows = all_arrows(C, objects)
    window = objects if square_objects is None else square_objects
    small = arrows if square_objects is None else all_arrows(C, window)
    return ProbeSet(arrows, all_squares(C, small), composable_pairs(small),
                    universe or f"all {C.flavor} arrows among {len(objects or C.objects)} objects")


def finset_upto(n: int) -> FinSet:
    """Finite sets ``{0..k-1}`` for ``k = 0..n``."""
    S = FinSet()
    S.objects = [S.size(k) for k in range(n + 1)]
    for A in S.objects:
        S.object_names[f"s{len(A.data)}"] = A
    return S


def invariant_factor_lists(max_order: int) -> list[tuple[int, ...]]:
    """Every finite abelian group of order ``<= max_order``, once, as ``d1 | d2 | ...``."""
    out = [()]

    def extend(prefix: tuple[int, ...], size: int):
        step = prefix[-1] if prefix else 1
        d = max(step, 2)
        while size * d <= max_order:
            out.append(prefix + (d,))
            extend(prefix + (d,), size * d)
            d += step

    extend((), 1)
    return sorted(out, key=lambda t: (prod(t), t))


def finab_upto(max_order: int) -> FinAb:
    Ab = FinAb()
    Ab.objects = [Ab.obj(t) for t in invariant_factor_lists(max_order)]
    for A in Ab.objects:
        Ab.object_names["Z" + "_".join(map(str, A.data)) if A.data else "Z0"] = A
    return Ab


def name_all(C: FinCategory, arrows: list[Mor], prefix: str = "m") -> None:
    """Give every arrow a stable id ``<prefix><index>`` (canonical order)."""
    width = len(str(max(len(arrows) - 1, 0)))
    for k, f in enumerate(arrows):
        C.add_name(f"{prefix}{k:0{width}d}", f)
