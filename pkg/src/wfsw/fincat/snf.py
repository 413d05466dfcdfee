"""Exact integer linear algebra for finite abelian groups.

Smith normal form with both transforms, cokernels, and solution sets of
linear congruence systems.  Everything is plain Python ``int``; matrices are
lists of row lists.
"""

from __future__ import annotations

from math import gcd, prod
from typing import Sequence

Matrix = list[list[int]]


def identity_matrix(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


class SmithForm:
    """``P @ M @ Q == D`` with ``P``, ``Q`` unimodular and ``D`` diagonal.

    ``diag`` holds the diagonal entries (length ``min(m, n)``), non-negative
    and with each nonzero entry dividing the next.  ``P_inv`` is the inverse
    of ``P``.
    """

    def __init__(self, D, P, P_inv, Q, diag):
        self.D = D
        self.P = P
        self.P_inv = P_inv
        self.Q = Q
        self.diag = diag

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)


def smith_normal_form(M: Sequence[Sequence[int]], n_cols: int | None = None) -> SmithForm:
    A = [list(row) for row in M]
    m = len(A)
    n = len(A[0]) if m else (n_cols or 0)
    P = identity_matrix(m)
    P_inv = identity_matrix(m)
    Q = identity_matrix(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        P[i], P[j] = P[j], P[i]
        for row in P_inv:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        if c == 0:
            return
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        P[dst] = [x + c * y for x, y in zip(P[dst], P[src])]
        for row in P_inv:
            row[src] -= c * row[dst]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        P[i] = [-x for x in P[i]]
        for row in P_inv:
            row[i] = -row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    def add_col(dst, src, c):
        if c == 0:
            return
        for row in A:
            row[dst] += c * row[src]
        for row in Q:
            row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                row = A[i]
                for j in range(t, n):
                    if row[j] and (pivot is None or abs(row[j]) < abs(A[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            i, j = pivot
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(A[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            negate_row(t)

    diag = [A[i][i] for i in range(min(m, n))]
    return SmithForm(A, P, P_inv, Q, diag)


def cokernel_order(M: Sequence[Sequence[int]], n_rows: int) -> int | None:
    """Order of ``Z^n_rows / M Z^k``; ``None`` when infinite."""
    if n_rows == 0:
        return 1
    if not M or not M[0]:
        return None
    snf = smith_normal_form(M)
    if snf.rank < n_rows:
        return None
    return prod(snf.diag[:n_rows])


def image_order(M: Sequence[Sequence[int]], target_orders: Sequence[int]) -> int:
    """Size of the image of ``Z^k -> (+) Z/t_i`` given by ``M``."""
    r = len(target_orders)
    if r == 0:
        return 1
    aug = [list(M[i]) + [target_orders[i] * (i == j) for j in range(r)] for i in range(r)]
    return prod(target_orders) // cokernel_order(aug, r)


class CongruenceSystem:
    """Rows ``a . x == b (mod modulus)`` in unknowns with periods ``box``.

    The solution set is assumed invariant under ``x_v -> x_v + box[v]``; the
    callers (hom-set parametrizations) guarantee this.
    """

    def __init__(self, box: Sequence[int]):
        self.box = list(box)
        self.rows: list[tuple[list[int], int, int]] = []

    def add(self, coeffs: Sequence[int], rhs: int, modulus: int) -> None:
        if modulus == 1:
            return
        self.rows.append((list(coeffs), rhs % modulus, modulus))

    def _integer_system(self):
        n = len(self.box)
        r = len(self.rows)
        A = []
        b = []
        for k, (coeffs, rhs, modulus) in enumerate(self.rows):
            A.append(coeffs + [-modulus * (k == j) for j in range(r)])
            b.append(rhs)
        return A, b, n + r

    def solution_count(self) -> int:
        """Number of solutions modulo the box (0 when inconsistent)."""
        if not self.rows:
            return prod(self.box)
        if self.particular() is None:
            return 0
        coeffs = [row[0] for row in self.rows]
        moduli = [row[2] for row in self.rows]
        # kernel of box group -> (+) Z/modulus, well defined by periodicity
        return prod(self.box) // image_order(coeffs, moduli)

    def particular(self) -> list[int] | None:
        sol = self._solve()
        return None if sol is None else sol[0]

    def _solve(self):
        n = len(self.box)
        if not self.rows:
            return [0] * n, [[int(i == j) for i in range(n)] for j in range(n)]
        A, b, width = self._integer_system()
        snf = smith_normal_form(A)
        c = [sum(p * x for p, x in zip(row, b)) for row in snf.P]
        w = [0] * width
        for i, ci in enumerate(c):
            d = snf.diag[i] if i < len(snf.diag) else 0
            if d == 0:
                if ci != 0:
                    return None
            else:
                if ci % d:
                    return None
                w[i] = ci // d
        z0 = [sum(q * x for q, x in zip(row, w)) for row in snf.Q]
        x0 = [z0[v] % self.box[v] for v in range(n)]
        gens = []
        for i in range(width):
            if i < len(snf.diag) and snf.diag[i] != 0:
                continue
            col = [snf.Q[v][i] % self.box[v] for v in range(n)]
            if any(col):
                gens.append(col)
        return x0, gens

    def solutions(self, limit: int | None = None) -> list[tuple[int, ...]] | None:
        """All solutions modulo the box, sorted.  ``None`` if more than ``limit``."""
        sol = self._solve()
        if sol is None:
            return []
        x0, gens = sol
        box = self.box
        seen = {tuple([0] * len(box))}
        frontier = list(seen)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = tuple((a + b) % m for a, b, m in zip(x, g, box))
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if limit is not None and len(seen) > limit:
                            return None
            frontier = nxt
        return sorted(tuple((a + b) % m for a, b, m in zip(x, x0, box)) for x in seen)


def invariant_factors(orders: Sequence[int]) -> tuple[int, ...]:
    """Canonical invariant factors of ``(+) Z/n_i`` (1s dropped)."""
    k = len(orders)
    if k == 0:
        return ()
    snf = smith_normal_form([[orders[i] * (i == j) for j in range(k)] for i in range(k)])
    return tuple(d for d in snf.diag if d != 1)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
