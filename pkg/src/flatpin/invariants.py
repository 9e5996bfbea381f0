"""Sunada numbers, Betti numbers, first homology and shortest closed geodesics."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .bieberbach import BieberbachGroup, as_int_vector
from .errors import DimensionMismatch, NotDiagonalType
from . import linalg
from .linalg import det_one_plus_tB

SunadaProfile = dict  # (d, t) -> number of holonomy elements


def sunada_profile(group: BieberbachGroup) -> SunadaProfile:
    """c_{d,t}: holonomy elements with d fixed axes, t of them carrying 1/2."""
    if not group.is_diagonal_type():
        raise NotDiagonalType(f"{group.name or 'group'} is not of diagonal type")
    prof: dict[tuple[int, int], int] = {}
    for _, B, b in group.holonomy_reps():
        fixed = B.fixed_axes()
        key = (len(fixed), sum(1 for i in fixed if b[i] == Fraction(1, 2)))
        prof[key] = prof.get(key, 0) + 1
    return dict(sorted(prof.items()))


def isospectral_diagonal(g1: BieberbachGroup, g2: BieberbachGroup) -> bool:
    if g1.n != g2.n:
        raise DimensionMismatch(f"dimensions {g1.n} and {g2.n} differ")
    return sunada_profile(g1) == sunada_profile(g2)


def betti(group: BieberbachGroup, p: int) -> int:
    """Dimension of the holonomy-invariant p-forms: the average of tr(wedge^p B)."""
    if not 0 <= p <= group.n:
        raise ValueError(f"p must lie in 0..{group.n}")
    total = sum(det_one_plus_tB(B.matrix())[p] for _, B, _ in group.holonomy_reps())
    q, r = divmod(total, 1 << group.k)
    assert r == 0, "trace average is not an integer"
    return q


def betti_numbers(group: BieberbachGroup) -> list[int]:
    n, size = group.n, 1 << group.k
    sums = [0] * (n + 1)
    for _, B, _ in group.holonomy_reps():
        for p, c in enumerate(det_one_plus_tB(B.matrix())):
            sums[p] += c
    return [s // size for s in sums]


def betti_closed_form_z2(j: int, h: int, l: int, p: int) -> int:
    return sum(comb(j + h, 2 * i) * comb(j + l, p - 2 * i) for i in range(p // 2 + 1))


@dataclass
class HomologyResult:
    free_rank: int
    torsion: list[int] = field(default_factory=list)

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        for d in self.torsion:
            parts.append(f"Z_{d}")
        return " + ".join(parts) or "0"


def h1_relations(group: BieberbachGroup) -> list[list[int]]:
    """Relation rows of the abelianization on x_1..x_n (lattice) and y_1..y_k."""
    n, k = group.n, group.k
    rows = []
    for g in group.generators:
        for j in range(n):
            e = [0] * n
            e[j] = 1
            moved = g.B.apply(e)
            rows.append([m - x for m, x in zip(moved, e)] + [0] * k)
    for (i, g), (j, h) in itertools.combinations(enumerate(group.generators), 2):
        # gamma_i gamma_j = gamma_j gamma_i L_c
        c = as_int_vector([x - y for x, y in zip((g * h).b, (h * g).b)])
        rows.append(list(c) + [0] * k)
    for i, g in enumerate(group.generators):
        sq = as_int_vector(g.square_translation())
        y = [0] * k
        y[i] = 2
        rows.append([-x for x in sq] + y)
    return rows


def homology_h1(group: BieberbachGroup) -> HomologyResult:
    size = group.n + group.k
    rows = h1_relations(group)
    factors = linalg.smith_normal_form(rows, ncols=size).factors if rows else []
    return HomologyResult(size - len(factors), [d for d in factors if d > 1])


def smith_normal_form(matrix, ncols: int | None = None) -> tuple[list[int], int]:
    """Nonzero invariant factors d_1 | d_2 | ... and the rank."""
    form = linalg.smith_normal_form(matrix, ncols=ncols)
    return list(form.factors), form.rank


def shortest_geodesic_sq(group: BieberbachGroup, box_radius: int = 3) -> Fraction:
    """Squared length of the shortest closed geodesic, searched over a lattice box.

    For B L_c the minimal displacement is the length of the projection of c
    onto the fixed space of B.  That squared norm splits into independent
    terms per fixed axis and per 2-cycle, so each term is minimized over its
    own coordinates in [-box_radius, box_radius].
    """
    if box_radius < 1:
        raise ValueError("box_radius must be at least 1")
    best = Fraction(1)  # shortest nonzero vector of Z^n
    rng = range(-box_radius, box_radius + 1)
    for S in group.subsets(include_empty=False):
        g = group.word_element(S)
        fixed, _, cycles = g.B.involution_blocks()
        total = Fraction(0)
        for i in fixed:
            total += min((g.b[i] + m) ** 2 for m in rng)
        for p, q, s in cycles:
            total += min((g.b[p] + m1 + s * (g.b[q] + m2)) ** 2 for m1 in rng for m2 in rng) / 2
        best = min(best, total)
    return best


def shortest_geodesic_sq_bruteforce(group: BieberbachGroup, box_radius: int = 1) -> Fraction:
    """Same search enumerating every lattice vector of the box (small n only)."""
    best = None
    rng = range(-box_radius, box_radius + 1)
    for lam in itertools.product(rng, repeat=group.n):
        if any(lam):
            v = Fraction(sum(x * x for x in lam))
            best = v if best is None else min(best, v)
        for S in group.subsets(include_empty=False):
            g = group.word_element(S)
            c = [x + y for x, y in zip(g.b, lam)]
            v = g.B.fixed_projection_sq(c)
            best = v if best is None else min(best, v)
    return best
