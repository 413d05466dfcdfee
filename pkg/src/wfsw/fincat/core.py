"""Objects, morphisms, squares and the finite-category interface."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, NamedTuple, Sequence


class CategoryError(ValueError):
    """Raised on ill-typed input: unknown objects, non-composable pairs, bad payloads."""


class Obj(NamedTuple):
    flavor: str
    data: Any  # finset: tuple of elements; finab: tuple of cyclic orders; table: label

    def __repr__(self) -> str:
        if self.flavor == "finab":
            return "Z" + repr(list(self.data))
        if self.flavor == "finset":
            return "{" + ",".join(map(str, self.data)) + "}"
        return str(self.data)


class Mor(NamedTuple):
    dom: Obj
    cod: Obj
    data: Any  # finset: image tuple; finab: matrix rows; table: label

    def __repr__(self) -> str:
        return f"<{self.dom!r} -{self.data}-> {self.cod!r}>"


class Square(NamedTuple):
    """A morphism ``(top, bottom): src -> tgt`` of the arrow category.

    ``tgt . top == bottom . src`` when the square commutes.
    """

    src: Mor
    tgt: Mor
    top: Mor
    bottom: Mor


@dataclass
class Violation:
    kind: str  # identity | totality | closure | associativity | malformed | payload
    message: str
    witness: Any = None


@dataclass
class Colimit:
    """A colimit cocone with its universal property as a callable.

    ``induce(cocone)`` returns the unique morphism ``apex -> T`` through which
    a cocone (one morphism per diagram node, all into ``T``) factors.
    """

    apex: Obj
    legs: list[Mor]
    _induce: Callable[[Sequence[Mor], Obj], Mor] = field(repr=False)

    def induce(self, cocone: Sequence[Mor], target: Obj | None = None) -> Mor:
        if len(cocone) != len(self.legs):
            raise CategoryError("cocone has the wrong number of legs")
        if target is None:
            if not cocone:
                raise CategoryError("empty cocone needs an explicit target")
            target = cocone[0].cod
        if any(c.cod != target for c in cocone):
            raise CategoryError("cocone legs have different codomains")
        return self._induce(cocone, target)


# arrow_class only enumerates hom-sets up to this size
ORBIT_LIMIT = 4096

# an edge of a diagram graph: (source node index, target node index, morphism)
Edge = tuple[int, int, Mor]


class FinCategory:
    """A finite category (or a finite window onto a concrete one).

    For the ``finset`` and ``finab`` flavors the listed ``objects`` select a
    full subcategory, but composition, identities and hom enumeration work
    for any object of the flavor; this is what lets colimits manufacture new
    objects.  ``names`` maps morphism ids from files to morphisms.
    """

    flavor: str = "abstract"

    def __init__(self, objects: Iterable[Obj] = ()):
        self.objects: list[Obj] = list(objects)
        self.names: dict[str, Mor] = {}
        self.object_names: dict[str, Obj] = {}

    # -- structure -------------------------------------------------------
    def identity(self, A: Obj) -> Mor:
        raise NotImplementedError

    def _compose(self, g: Mor, f: Mor) -> Mor:
        raise NotImplementedError

    def compose(self, g: Mor, f: Mor) -> Mor:
        """``g . f``"""
        if f.cod != g.dom:
            raise CategoryError(f"not composable: {g!r} after {f!r}")
        return self._compose(g, f)

    def chain(self, *ms: Mor) -> Mor:
        """``chain(h, g, f) == h . g . f``"""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.compose(m, out)
        return out

    def hom(self, A: Obj, B: Obj) -> list[Mor]:
        raise NotImplementedError

    def hom_size(self, A: Obj, B: Obj) -> int:
        return len(self.hom(A, B))

    def morphisms(self) -> Iterator[Mor]:
        for A in self.objects:
            for B in self.objects:
                yield from self.hom(A, B)

    def is_identity(self, m: Mor) -> bool:
        return m.dom == m.cod and m == self.identity(m.dom)

    def is_iso(self, m: Mor) -> bool:
        return any(
            self.compose(i, m) == self.identity(m.dom) and self.compose(m, i) == self.identity(m.cod)
            for i in self.hom(m.cod, m.dom)
        )

    # -- symmetry ----------------------------------------------------------
    def automorphism_generators(self, A: Obj) -> list[Mor]:
        """A generating set of ``Aut(A)``, chosen greedily in hom order."""
        memo = self.__dict__.setdefault("_aut_gens", {})
        if A in memo:
            return memo[A]
        group = {self.identity(A)}
        gens: list[Mor] = []
        for a in self.hom(A, A):
            if a in group or not self.is_iso(a):
                continue
            gens.append(a)
            frontier = list(group)
            while frontier:
                nxt = []
                for x in frontier:
                    for s in gens:
                        y = self.compose(s, x)
                        if y not in group:
                            group.add(y)
                            nxt.append(y)
                frontier = nxt
        memo[A] = gens
        return gens

    def arrow_class(self, f: Mor) -> Mor:
        """Canonical representative of ``f`` up to isomorphism of arrows with the same ends.

        The orbit of ``f`` under ``Aut(cod) x Aut(dom)`` acting by ``b . f . a``;
        lifting properties depend only on this orbit.
        """
        memo = self.__dict__.setdefault("_orbit_rep", {})
        hit = memo.get(f)
        if hit is not None:
            return hit
        A, B = f.dom, f.cod
        if max(self.hom_size(A, A), self.hom_size(B, B), self.hom_size(A, B)) > ORBIT_LIMIT:
            return f  # too large to canonicalize; the arrow stands for itself
        homs = self.hom(A, B)
        index = {m: k for k, m in enumerate(homs)}
        parent = list(range(len(homs)))

        def find(k):
            while parent[k] != k:
                parent[k] = parent[parent[k]]
                k = parent[k]
            return k

        ga, gb = self.automorphism_generators(A), self.automorphism_generators(B)
        for k, m in enumerate(homs):
            for img in [self.compose(b, m) for b in gb] + [self.compose(m, a) for a in ga]:
                r1, r2 = find(k), find(index[img])
                if r1 != r2:
                    parent[max(r1, r2)] = min(r1, r2)
        for k, m in enumerate(homs):
            memo[m] = homs[find(k)]
        return memo[f]

    def has_colimits(self) -> bool:
        return False

    def graph_colimit(self, nodes: Sequence[Obj], edges: Sequence[Edge]) -> Colimit:
        raise CategoryError(f"{self.flavor} categories have no constructive colimits")

    # -- naming ----------------------------------------------------------
    def name_of(self, m: Mor) -> str:
        if getattr(self, "_reverse", None) is None or len(self._reverse) != len(self.names):
            self._reverse = {}
            for k, v in self.names.items():
                self._reverse.setdefault(v, k)
        return self._reverse.get(m, repr(m))

    def add_name(self, name: str, m: Mor) -> None:
        self.names[name] = m
        self._reverse = None

    # -- squares and lifting ---------------------------------------------
    def commutes(self, sq: Square) -> bool:
        f, g, u, v = sq
        return (
            u.dom == f.dom and u.cod == g.dom and v.dom == f.cod and v.cod == g.cod
            and self.compose(g, u) == self.compose(v, f)
        )

    def squares(self, f: Mor, g: Mor) -> list[Square]:
        """All commuting squares ``f -> g`` in canonical (u, v) order."""
        by_key: dict[Mor, list[Mor]] = {}
        for v in self.hom(f.cod, g.cod):
            by_key.setdefault(self.compose(v, f), []).append(v)
        out = []
        for u in self.hom(f.dom, g.dom):
            for v in by_key.get(self.compose(g, u), ()):
                out.append(Square(f, g, u, v))
        return out

    def diagonals(self, f: Mor, g: Mor, u: Mor, v: Mor) -> list[Mor]:
        """All ``d`` with ``d . f == u`` and ``g . d == v``."""
        return [
            d for d in self.hom(f.cod, g.dom)
            if self.compose(d, f) == u and self.compose(g, d) == v
        ]

    def some_diagonal(self, f: Mor, g: Mor, u: Mor, v: Mor) -> Mor | None:
        """A diagonal, or ``None``; the first in canonical order when enumerated."""
        ds = self.diagonals(f, g, u, v)
        return ds[0] if ds else None

    def rlp_witness(self, f: Mor, g: Mor) -> Square | None:
        """A commuting square ``f -> g`` without diagonal, or ``None``.

        Counts instead of solving square by square: ``d -> (d.f, g.d)`` maps
        ``hom(cod f, dom g)`` into the squares, and ``g`` lifts against ``f``
        exactly when that map is onto.
        """
        cnt_u = Counter(self.compose(g, u) for u in self.hom(f.dom, g.dom))
        cnt_v = Counter(self.compose(v, f) for v in self.hom(f.cod, g.cod))
        n_squares = sum(n * cnt_v[k] for k, n in cnt_u.items())
        if n_squares == 0:
            return None
        hit = {(self.compose(d, f), self.compose(g, d)) for d in self.hom(f.cod, g.dom)}
        if len(hit) == n_squares:
            return None
        for sq in self.squares(f, g):
            if (sq.top, sq.bottom) not in hit:
                return sq
        raise AssertionError("square count disagrees with enumeration")

    def has_rlp(self, f: Mor, g: Mor) -> bool:
        return self.rlp_witness(f, g) is None

    # -- arrow category helpers -------------------------------------------
    def compose_squares(self, s2: Square, s1: Square) -> Square:
        """``s2 . s1`` for ``s1: f -> g`` and ``s2: g -> h``."""
        if s1.tgt != s2.src:
            raise CategoryError("squares not composable")
        return Square(s1.src, s2.tgt, self.compose(s2.top, s1.top), self.compose(s2.bottom, s1.bottom))

    def identity_square(self, f: Mor) -> Square:
        return Square(f, f, self.identity(f.dom), self.identity(f.cod))

    def validate_object(self, A: Obj) -> list[Violation]:
        return []

    def validate_morphism(self, m: Mor) -> list[Violation]:
        return []
