"""Finite abelian groups as tuples of cyclic orders, homomorphisms as residue matrices.

A group ``Z[n_1, ..., n_k]`` is the direct sum of ``Z/n_i``.  A homomorphism
``A -> B`` is a matrix with one row per factor of ``B`` and one column per
factor of ``A``; entry ``m[i][j]`` is the image of the ``j``-th generator in
the ``i``-th factor, reduced modulo ``B``'s order ``q_i`` and subject to
``q_i | m[i][j] * n_j``.
"""

from __future__ import annotations

from itertools import product
from math import gcd, prod
from typing import Iterable, Sequence

from .core import CategoryError, Colimit, Edge, FinCategory, Mor, Obj, Square, Violation
from .snf import CongruenceSystem, image_order, smith_normal_form

# below this many candidate diagonals, filtering the hom-set beats linear algebra
ENUMERATION_CUTOFF = 2048
# lifting checks compose every candidate twice, so counting by SNF pays off sooner
RLP_ENUMERATION_CUTOFF = 128


def orders(A: Obj) -> tuple[int, ...]:
    return A.data


def group_order(A: Obj) -> int:
    return prod(A.data)


class _HomParams:
    """Coordinates on ``hom(A, B)``: entry ``(i, j)`` is ``step[i][j] * x`` with ``x mod period[i][j]``."""

    def __init__(self, A: Obj, B: Obj, offset: int = 0):
        self.A, self.B = A, B
        self.offset = offset
        self.period = [[gcd(q, n) for n in A.data] for q in B.data]
        self.step = [[q // gcd(q, n) for n in A.data] for q in B.data]
        self.index = {}
        k = offset
        for i in range(len(B.data)):
            for j in range(len(A.data)):
                self.index[i, j] = k
                k += 1
        self.size = k - offset

    def box(self) -> list[int]:
        return [self.period[i][j] for (i, j) in self.index]

    def to_matrix(self, x: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        rows = []
        for i, q in enumerate(self.B.data):
            rows.append(tuple(
                (self.step[i][j] * x[self.index[i, j]]) % q for j in range(len(self.A.data))
            ))
        return tuple(rows)


class FinAb(FinCategory):
    flavor = "finab"

    def obj(self, orders_: Iterable[int]) -> Obj:
        A = Obj("finab", tuple(int(n) for n in orders_))
        bad = self.validate_object(A)
        if bad:
            raise CategoryError(bad[0].message)
        return A

    def zero(self) -> Obj:
        return Obj("finab", ())

    def mor(self, dom: Obj, cod: Obj, matrix: Sequence[Sequence[int]]) -> Mor:
        if len(matrix) != len(cod.data) or any(len(r) != len(dom.data) for r in matrix):
            raise CategoryError(f"matrix shape does not fit {dom!r} -> {cod!r}")
        m = Mor(dom, cod, tuple(tuple(x % q for x in row) for row, q in zip(matrix, cod.data)))
        bad = self.validate_morphism(m)
        if bad:
            raise CategoryError(bad[0].message)
        return m

    def validate_object(self, A: Obj) -> list[Violation]:
        if any(not isinstance(n, int) or n < 1 for n in A.data):
            return [Violation("payload", f"cyclic orders must be positive integers: {A!r}", A)]
        return []

    def validate_morphism(self, m: Mor) -> list[Violation]:
        out = []
        for i, (row, q) in enumerate(zip(m.data, m.cod.data)):
            for j, (x, n) in enumerate(zip(row, m.dom.data)):
                if not 0 <= x < q:
                    out.append(Violation("payload", f"entry ({i},{j}) of {m!r} not reduced", m))
                elif (x * n) % q:
                    out.append(Violation("payload", f"entry ({i},{j}) of {m!r} violates {q} | {x}*{n}", m))
        return out

    # -- elements (used by oracles and the trace dump) -----------------------
    def elements(self, A: Obj) -> list[tuple[int, ...]]:
        return list(product(*(range(n) for n in A.data)))

    def apply(self, m: Mor, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(row, x)) % q for row, q in zip(m.data, m.cod.data))

    # -- category structure -------------------------------------------------
    def identity(self, A: Obj) -> Mor:
        k = len(A.data)
        return Mor(A, A, tuple(tuple(int(i == j) % A.data[i] for j in range(k)) for i in range(k)))

    def _compose(self, g: Mor, f: Mor) -> Mor:
        fd = f.data
        inner = range(len(fd))
        cols = range(len(f.dom.data))
        return Mor(f.dom, g.cod, tuple(
            tuple(sum(row[k] * fd[k][j] for k in inner) % q for j in cols)
            for row, q in zip(g.data, g.cod.data)
        ))

    def hom(self, A: Obj, B: Obj) -> list[Mor]:
        choices = [
            range(0, q, q // gcd(q, n)) for q in B.data for n in A.data
        ]
        k = len(A.data)
        out = []
        for flat in product(*choices):
            out.append(Mor(A, B, tuple(tuple(flat[i * k:(i + 1) * k]) for i in range(len(B.data)))))
        return out

    def hom_size(self, A: Obj, B: Obj) -> int:
        return prod(gcd(q, n) for q in B.data for n in A.data)

    def zero_map(self, A: Obj, B: Obj) -> Mor:
        return Mor(A, B, tuple(tuple(0 for _ in A.data) for _ in B.data))

    def image_size(self, m: Mor) -> int:
        return image_order([list(r) for r in m.data], m.cod.data)

    def is_iso(self, m: Mor) -> bool:
        n = group_order(m.dom)
        return n == group_order(m.cod) and self.image_size(m) == n

    # -- sums -------------------------------------------------------------------
    def direct_sum(self, A: Obj, B: Obj) -> Obj:
        return Obj("finab", A.data + B.data)

    def pair(self, f: Mor, g: Mor) -> Mor:
        """``<f, g>: X -> A (+) B``"""
        if f.dom != g.dom:
            raise CategoryError("pairing needs a common domain")
        return Mor(f.dom, self.direct_sum(f.cod, g.cod), f.data + g.data)

    def copair(self, f: Mor, g: Mor) -> Mor:
        """``[f, g]: A (+) B -> X``"""
        if f.cod != g.cod:
            raise CategoryError("copairing needs a common codomain")
        return Mor(self.direct_sum(f.dom, g.dom), f.cod,
                   tuple(r1 + r2 for r1, r2 in zip(f.data, g.data)))

    def oplus(self, f: Mor, g: Mor) -> Mor:
        """Block-diagonal ``f (+) g``."""
        a, b = len(f.dom.data), len(g.dom.data)
        rows = [r + (0,) * b for r in f.data] + [(0,) * a + r for r in g.data]
        return Mor(self.direct_sum(f.dom, g.dom), self.direct_sum(f.cod, g.cod), tuple(rows))

    def proj1(self, A: Obj, B: Obj) -> Mor:
        return self.copair(self.identity(A), self.zero_map(B, A))

    def proj2(self, A: Obj, B: Obj) -> Mor:
        return self.copair(self.zero_map(A, B), self.identity(B))

    def inj1(self, A: Obj, B: Obj) -> Mor:
        return self.pair(self.identity(A), self.zero_map(A, B))

    def inj2(self, A: Obj, B: Obj) -> Mor:
        return self.pair(self.zero_map(B, A), self.identity(B))

    # -- lifting ------------------------------------------------------------------
    def _diagonal_system(self, f: Mor, g: Mor, u: Mor | None, v: Mor | None):
        B, C = f.cod, g.dom
        P = _HomParams(B, C)
        sys = CongruenceSystem(P.box())
        n_vars = P.size
        for i, q in enumerate(C.data):
            for k in range(len(f.dom.data)):
                coeffs = [0] * n_vars
                for j in range(len(B.data)):
                    coeffs[P.index[i, j]] = P.step[i][j] * f.data[j][k]
                sys.add(coeffs, u.data[i][k] if u is not None else 0, q)
        for l, p in enumerate(g.cod.data):
            for j in range(len(B.data)):
                coeffs = [0] * n_vars
                for i in range(len(C.data)):
                    coeffs[P.index[i, j]] = g.data[l][i] * P.step[i][j]
                sys.add(coeffs, v.data[l][j] if v is not None else 0, p)
        return P, sys

    def diagonals(self, f: Mor, g: Mor, u: Mor, v: Mor) -> list[Mor]:
        if self.hom_size(f.cod, g.dom) <= ENUMERATION_CUTOFF:
            return super().diagonals(f, g, u, v)
        P, sys = self._diagonal_system(f, g, u, v)
        return sorted(Mor(f.cod, g.dom, P.to_matrix(x)) for x in sys.solutions())

    def some_diagonal(self, f: Mor, g: Mor, u: Mor, v: Mor) -> Mor | None:
        if self.hom_size(f.cod, g.dom) <= ENUMERATION_CUTOFF:
            return super().some_diagonal(f, g, u, v)
        P, sys = self._diagonal_system(f, g, u, v)
        x = sys.particular()
        return None if x is None else Mor(f.cod, g.dom, P.to_matrix(x))

    def _square_system(self, f: Mor, g: Mor):
        A, B, C, D = f.dom, f.cod, g.dom, g.cod
        U = _HomParams(A, C)
        V = _HomParams(B, D, offset=U.size)
        sys = CongruenceSystem(U.box() + V.box())
        n_vars = U.size + V.size
        for l, p in enumerate(D.data):
            for k in range(len(A.data)):
                coeffs = [0] * n_vars
                for i in range(len(C.data)):
                    coeffs[U.index[i, k]] += g.data[l][i] * U.step[i][k]
                for j in range(len(B.data)):
                    coeffs[V.index[l, j]] -= V.step[l][j] * f.data[j][k]
                sys.add(coeffs, 0, p)
        return U, V, sys

    def square_count(self, f: Mor, g: Mor) -> int:
        """Number of commuting squares ``f -> g``."""
        return self._square_system(f, g)[2].solution_count()

    def rlp_witness(self, f: Mor, g: Mor) -> Square | None:
        small = (self.hom_size(f.dom, g.dom) + self.hom_size(f.cod, g.cod)
                 + self.hom_size(f.cod, g.dom))
        if small <= RLP_ENUMERATION_CUTOFF:
            return super().rlp_witness(f, g)
        _, kernel = self._diagonal_system(f, g, None, None)
        if self.hom_size(f.cod, g.dom) == kernel.solution_count() * self.square_count(f, g):
            return None
        for sq in self.squares(f, g):
            if not self.diagonals(*sq):
                return sq
        raise AssertionError("square count disagrees with enumeration")

    def squares(self, f: Mor, g: Mor) -> list[Square]:
        if self.hom_size(f.dom, g.dom) * self.hom_size(f.cod, g.cod) <= ENUMERATION_CUTOFF ** 2:
            return super().squares(f, g)
        A, B, C, D = f.dom, f.cod, g.dom, g.cod
        U, V, sys = self._square_system(f, g)
        out = [
            Square(f, g, Mor(A, C, U.to_matrix(x)), Mor(B, D, V.to_matrix(x)))
            for x in sys.solutions()
        ]
        return sorted(out, key=lambda s: (s.top.data, s.bottom.data))

    # -- colimits -------------------------------------------------------------------
    def has_colimits(self) -> bool:
        return True

    def graph_colimit(self, nodes: Sequence[Obj], edges: Sequence[Edge]) -> Colimit:
        gens = [(i, k) for i, A in enumerate(nodes) for k in range(len(A.data))]
        pos = {t: r for r, t in enumerate(gens)}
        N = len(gens)
        relations = []
        for (i, k) in gens:
            col = [0] * N
            col[pos[i, k]] = nodes[i].data[k]
            relations.append(col)
        for i, j, m in edges:
            if m.dom != nodes[i] or m.cod != nodes[j]:
                raise CategoryError("diagram edge does not match its nodes")
            for k in range(len(nodes[i].data)):
                col = [0] * N
                for l in range(len(nodes[j].data)):
                    col[pos[j, l]] += m.data[l][k]
                col[pos[i, k]] -= 1
                relations.append(col)
        if N == 0:
            apex = self.zero()
            legs = [Mor(A, apex, ()) for A in nodes]

            def induce_zero(cocone, target):
                return self.zero_map(apex, target)

            return Colimit(apex, legs, induce_zero)

        R = [[relations[c][r] for c in range(len(relations))] for r in range(N)]
        snf = smith_normal_form(R)
        keep = [t for t in range(N) if snf.diag[t] != 1]
        apex = Obj("finab", tuple(snf.diag[t] for t in keep))
        legs = []
        for i, A in enumerate(nodes):
            rows = tuple(
                tuple(snf.P[t][pos[i, k]] % snf.diag[t] for k in range(len(A.data)))
                for t in keep
            )
            legs.append(Mor(A, apex, rows))

        def induce(cocone: Sequence[Mor], target: Obj) -> Mor:
            rows = []
            for l, x in enumerate(target.data):
                row = []
                for t in keep:
                    acc = 0
                    for (i, k) in gens:
                        c = snf.P_inv[pos[i, k]][t]
                        if c:
                            acc += c * cocone[i].data[l][k]
                    row.append(acc % x)
                rows.append(tuple(row))
            return Mor(apex, target, tuple(rows))

        return Colimit(apex, legs, induce)
