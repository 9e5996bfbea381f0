"""Recompute every published value held by the catalog and compare."""

from __future__ import annotations

from dataclasses import dataclass

from . import catalog
from .invariants import (betti_numbers, homology_h1, shortest_geodesic_sq,
                         sunada_profile)
from .pinspin import count

CONVENTIONS = ("pin+", "pin-", "spin")


@dataclass
class Check:
    block: str
    label: str
    expected: object
    got: object

    @property
    def ok(self) -> bool:
        return self.expected == self.got


def structure_counts(group) -> dict:
    out = {}
    for conv in CONVENTIONS:
        if conv == "spin" and not group.is_orientable():
            out[conv] = None
        else:
            out[conv] = count(group, conv).total
    return out


def count_table() -> list[Check]:
    checks = []
    for a, b in catalog.isospectral_pairs():
        for name in (a, b):
            e = catalog.builtin(name)
            got = structure_counts(e.group)
            want = {c: e.expected[c] for c in CONVENTIONS}
            checks.append(Check("counts", name, want, got))
    return checks


def squares_table() -> list[Check]:
    checks = []
    for a, b in catalog.isospectral_pairs():
        for name in (a, b):
            e = catalog.builtin(name)
            if "squares" not in e.expected:
                continue
            got = tuple(tuple(i + 1 for i, v in enumerate(e.group.word_square(S)) if v)
                        for S in ((1,), (2,), (1, 2)))
            checks.append(Check("squares", name, e.expected["squares"], got))
    return checks


def sunada_table() -> list[Check]:
    checks = []
    for a, b in catalog.isospectral_pairs():
        pa = sunada_profile(catalog.builtin(a).group)
        pb = sunada_profile(catalog.builtin(b).group)
        want = dict(catalog.builtin(a).expected["sunada"])
        want[(catalog.builtin(a).group.n, 0)] = 1
        checks.append(Check("sunada", a, want, pa))
        checks.append(Check("sunada", b, want, pb))
    return checks


def dim3_table() -> list[Check]:
    checks = []
    totals = {"pin+": 0, "pin-": 0}
    for name in ("G_1_0(3)", "G_0_1(3)", "Gp_0_1(3)", "G_0_2(3)"):
        e = catalog.builtin(name)
        got = structure_counts(e.group)
        want = {c: e.expected[c] for c in CONVENTIONS}
        checks.append(Check("dim 3", name, want, got))
        for c in totals:
            totals[c] += got[c]
        if "geodesic_sq" in e.expected:
            checks.append(Check("geodesic", name, e.expected["geodesic_sq"],
                                shortest_geodesic_sq(e.group, 3)))
    checks.append(Check("dim 3", "total", {"pin+": 28, "pin-": 28}, totals))
    return checks


def doubled_table() -> list[Check]:
    checks = []
    for name in ("dG1", "dG1p"):
        e = catalog.builtin(name)
        checks.append(Check("doubled", name, e.expected["spin"], count(e.group, "spin").total))
    return checks


def family_table(max_n: int = 8, max_size_n: int = 20) -> list[Check]:
    checks = []
    for n in range(2, max_size_n + 1):
        checks.append(Check("family size", f"n={n}", catalog.family_size_formula(n),
                            len(catalog.family_F(n))))
    for n in range(2, max_n + 1):
        for e in catalog.family_F(n):
            h1 = homology_h1(e.group)
            checks.append(Check("H1", e.name, e.expected["h1"], (h1.free_rank, h1.torsion)))
            checks.append(Check("betti", e.name, e.expected["betti"], betti_numbers(e.group)))
    return checks


def run_all() -> list[Check]:
    return (count_table() + squares_table() + sunada_table() + dim3_table()
            + doubled_table() + family_table())
