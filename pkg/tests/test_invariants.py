import random
from fractions import Fraction
from math import comb

import pytest

from flatpin import catalog
from flatpin.bieberbach import torus
from flatpin.errors import DimensionMismatch, NotDiagonalType
from flatpin.invariants import (betti, betti_closed_form_z2, betti_numbers, homology_h1,
                                isospectral_diagonal, shortest_geodesic_sq,
                                shortest_geodesic_sq_bruteforce, smith_normal_form,
                                sunada_profile)
from flatpin.signperm import SignedPermutation


def group(name):
    return catalog.builtin(name).group


def test_profiles():
    assert sunada_profile(group("M1")) == {(4, 0): 1, (2, 2): 1, (3, 1): 1, (3, 2): 1}
    assert sunada_profile(group("M5")) == {(4, 0): 1, (2, 1): 3}
    assert sunada_profile(torus(5)) == {(5, 0): 1}
    with pytest.raises(NotDiagonalType):
        sunada_profile(group("G_1_0(3)"))


def test_isospectral():
    assert isospectral_diagonal(group("M1"), group("M1p"))
    assert isospectral_diagonal(group("M1tilde"), group("M1tildep"))
    assert not isospectral_diagonal(group("M1"), group("M5"))
    assert not isospectral_diagonal(group("M1"), group("M2"))
    with pytest.raises(DimensionMismatch):
        isospectral_diagonal(group("M1"), group("M1tilde"))
    with pytest.raises(NotDiagonalType):
        isospectral_diagonal(group("G_1_0(3)"), group("G_0_1(3)"))


def test_profile_invariances():
    rng = random.Random(5)
    for name in ("M2", "M4p", "M1tilde"):
        g = group(name)
        assert sunada_profile(g.with_generators([(2,), (1,)])) == sunada_profile(g)
        assert sunada_profile(g.with_generators([(1, 2), (2,)])) == sunada_profile(g)
        image = list(range(g.n))
        rng.shuffle(image)
        C = SignedPermutation(tuple(image), (1,) * g.n)
        assert sunada_profile(g.conjugate(C)) == sunada_profile(g)


def test_betti_examples():
    g = group("G_0_1(3)")
    assert [betti(g, p) for p in range(4)] == [1, 2, 1, 0]
    assert betti_numbers(torus(6)) == [comb(6, p) for p in range(7)]
    assert betti_closed_form_z2(0, 1, 2, 1) == 2
    with pytest.raises(ValueError):
        betti(g, 4)


def test_betti_closed_form_z2_range():
    for n in range(2, 11):
        for e in catalog.family_F(n):
            j, h = map(int, e.name[2:].split("(")[0].split("_"))
            l = n - 2 * j - h
            assert betti_numbers(e.group) == [betti_closed_form_z2(j, h, l, p) for p in range(n + 1)]


def test_betti_propagation():
    # equal beta_1 forces all beta_p to agree
    for n in range(3, 9):
        fam = catalog.family_F(n)
        for a in fam:
            for b in fam:
                ba, bb = betti_numbers(a.group), betti_numbers(b.group)
                if ba[1] == bb[1]:
                    assert ba == bb


def test_euler_characteristic_and_top_betti():
    names = catalog.names() + [e.name for n in range(2, 8) for e in catalog.family_F(n)]
    for name in names:
        g = group(name)
        b = betti_numbers(g)
        assert sum((-1) ** p * x for p, x in enumerate(b)) == 0
        assert b[0] == 1
        assert b[-1] == (1 if g.is_orientable() else 0)
        assert homology_h1(g).free_rank == b[1]


def test_h1_examples():
    r = homology_h1(group("G_0_2(3)"))
    assert (r.free_rank, r.torsion) == (1, [2, 2])
    assert str(r) == "Z + Z_2 + Z_2"
    r = homology_h1(torus(4))
    assert (r.free_rank, r.torsion) == (4, [])
    for n in range(2, 9):
        for e in catalog.family_F(n):
            r = homology_h1(e.group)
            assert (r.free_rank, r.torsion) == e.expected["h1"]


def test_snf_wrapper():
    assert smith_normal_form([[2, 0], [0, 3]]) == ([1, 6], 2)
    assert smith_normal_form([[0, 0]]) == ([], 0)


def test_geodesics():
    assert shortest_geodesic_sq(group("G_0_1(3)"), 3) == Fraction(1, 4)
    assert shortest_geodesic_sq(group("Gp_0_1(3)"), 3) == Fraction(1, 2)
    assert shortest_geodesic_sq(torus(3), 3) == 1
    with pytest.raises(ValueError):
        shortest_geodesic_sq(torus(2), 0)


def test_geodesic_matches_bruteforce_and_is_monotone():
    for name in ("G_0_1(3)", "Gp_0_1(3)", "G_1_0(3)", "G_0_2(3)", "M1", "M5p", "G_1_1(4)"):
        g = group(name)
        vals = [shortest_geodesic_sq(g, r) for r in (1, 2, 3)]
        assert vals[0] >= vals[1] >= vals[2]
        assert vals[0] == shortest_geodesic_sq_bruteforce(g, 1)
