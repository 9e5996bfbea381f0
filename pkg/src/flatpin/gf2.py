"""Gaussian elimination over GF(2) on int bitsets, with row provenance."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence


@dataclass
class GF2Solution:
    consistent: bool
    rank: int
    ncols: int
    particular: int = 0
    nullspace: list[int] = field(default_factory=list)
    pivots: list[int] = field(default_factory=list)
    # indices of original rows whose sum is 0 = 1, when inconsistent
    certificate: list[int] = field(default_factory=list)

    def solutions(self) -> Iterator[int]:
        """particular + span(nullspace), counting through the basis in binary."""
        if not self.consistent:
            return
        for counter in range(1 << len(self.nullspace)):
            x = self.particular
            for t, vec in enumerate(self.nullspace):
                if counter >> t & 1:
                    x ^= vec
            yield x


def gf2_solve(rows: Sequence[tuple[int, int]], ncols: int) -> GF2Solution:
    """Solve coef . x = rhs for every (coef, rhs) row; bit i of coef is column i."""
    work = [[coef, rhs, 1 << idx] for idx, (coef, rhs) in enumerate(rows)]
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][0] >> col & 1), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and work[i][0] >> col & 1:
                work[i][0] ^= work[r][0]
                work[i][1] ^= work[r][1]
                work[i][2] ^= work[r][2]
        pivots.append(col)
        r += 1
    rank = r
    for coef, rhs, combo in work[rank:]:
        if rhs:
            cert = [i for i in range(len(rows)) if combo >> i & 1]
            return GF2Solution(False, rank, ncols, pivots=pivots, certificate=cert)
    particular = 0
    for i, col in enumerate(pivots):
        if work[i][1]:
            particular |= 1 << col
    free = [c for c in range(ncols) if c not in pivots]
    nullspace = []
    for f in free:
        vec = 1 << f
        for i, col in enumerate(pivots):
            if work[i][0] >> f & 1:
                vec |= 1 << col
        nullspace.append(vec)
    return GF2Solution(True, rank, ncols, particular, nullspace, pivots)


def gf2_rank(rows: Sequence[int], ncols: int) -> int:
    return gf2_solve([(r, 0) for r in rows], ncols).rank


def row_space_basis(rows: Sequence[int], ncols: int) -> list[int]:
    """Reduced row echelon basis; equal lists iff equal row spaces."""
    work = [r for r in rows if r]
    basis = []
    for col in reversed(range(ncols)):
        pivot = next((r for r in work if r >> col & 1), None)
        if pivot is None:
            continue
        work.remove(pivot)
        work = [r ^ pivot if r >> col & 1 else r for r in work]
        basis = [b ^ pivot if b >> col & 1 else b for b in basis]
        basis.append(pivot)
    return sorted(basis)
