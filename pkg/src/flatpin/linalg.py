"""Exact integer linear algebra: Smith normal form, integer systems, char polys."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass
class SmithForm:
    """U @ A @ V == D with U, V unimodular and D diagonal, d_1 | d_2 | ..."""

    factors: list[int]
    U: list[list[int]]
    V: list[list[int]]
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return len(self.factors)


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Smith normal form over Z by repeated pivoting on the smallest entry.

    Only the nonzero invariant factors are returned; ``rank`` is their count.
    """
    M = [[int(x) for x in row] for row in A]
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row dst += k * row src
        M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col dst += k * col src
        for row in M:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    factors = []
    t = 0
    while t < min(m, n):
        nonzero = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // M[t][t]))
                    if M[i][t]:
                        done = False
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // M[t][t]))
                    if M[t][j]:
                        done = False
            if done:
                # pivot must divide the remaining block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if M[i][j] % M[t][t]), None)
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                continue
            nonzero = [(abs(M[i][t]), i, t) for i in range(t, m) if M[i][t]]
            nonzero += [(abs(M[t][j]), t, j) for j in range(t, n) if M[t][j]]
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]
        factors.append(M[t][t])
        t += 1
    return SmithForm(factors, U, V, (m, n))


def invariant_factors(A: Sequence[Sequence[int]]) -> list[int]:
    return smith_normal_form(A).factors


def solve_integer(A: Sequence[Sequence[int]], rhs: Sequence, ncols: int | None = None):
    """An integer solution x of A x = rhs (rhs may be rational), or None."""
    m = len(A)
    n = len(A[0]) if m else ncols
    snf = smith_normal_form(A, ncols=n)
    b = [Fraction(x) for x in rhs]
    Ub = [sum(u * bj for u, bj in zip(row, b)) for row in snf.U]
    y = [0] * n
    for i, val in enumerate(Ub):
        if i < snf.rank:
            q = val / snf.factors[i]
            if q.denominator != 1:
                return None
            y[i] = int(q)
        elif val != 0:
            return None
    return [sum(snf.V[i][j] * y[j] for j in range(n)) for i in range(n)]


def charpoly(A: Sequence[Sequence[int]]) -> list[int]:
    """Coefficients c_0..c_n of det(x I - A) = sum c_i x^(n-i) (Faddeev-LeVerrier)."""
    n = len(A)
    coeffs = [1]
    M = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M <- A M + c_{k-1} I
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            AM[i][i] += coeffs[-1]
        M = AM
        trace = sum(sum(A[i][t] * M[t][i] for t in range(n)) for i in range(n))
        c, rem = divmod(-trace, k)
        assert rem == 0
        coeffs.append(c)
    return coeffs


def det_one_plus_tB(B: Sequence[Sequence[int]]) -> list[int]:
    """Coefficients of det(Id + t B) in increasing powers of t."""
    neg = [[-x for x in row] for row in B]
    return charpoly(neg)
