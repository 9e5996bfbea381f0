"""Randomized invariance properties over the catalog."""

from hypothesis import given, settings, strategies as st

from flatpin import catalog
from flatpin.groupfile import format_group, parse_group
from flatpin.invariants import betti_numbers, homology_h1, shortest_geodesic_sq
from flatpin.pinspin import count
from flatpin.signperm import SignedPermutation

SMALL = [n for n in catalog.names() if catalog.builtin(n).group.n <= 6]


@st.composite
def group_and_basis_change(draw):
    g = catalog.builtin(draw(st.sampled_from(SMALL))).group
    image = draw(st.permutations(range(g.n)))
    sign = draw(st.lists(st.sampled_from((1, -1)), min_size=g.n, max_size=g.n))
    return g, SignedPermutation(tuple(image), tuple(sign))


@settings(max_examples=40, deadline=None)
@given(group_and_basis_change())
def test_counts_survive_basis_change(data):
    g, C = data
    h = g.conjugate(C)
    for conv in ("pin+", "pin-"):
        assert count(h, conv).total == count(g, conv).total
    if g.is_orientable():
        assert count(h, "spin").total == count(g, "spin").total


@settings(max_examples=40, deadline=None)
@given(group_and_basis_change())
def test_topology_survives_basis_change(data):
    g, C = data
    h = g.conjugate(C)
    assert betti_numbers(h) == betti_numbers(g)
    a, b = homology_h1(h), homology_h1(g)
    assert (a.free_rank, a.torsion) == (b.free_rank, b.torsion)
    assert shortest_geodesic_sq(h, 2) == shortest_geodesic_sq(g, 2)


@settings(max_examples=40, deadline=None)
@given(group_and_basis_change())
def test_group_file_round_trip_after_basis_change(data):
    g, C = data
    h = g.conjugate(C)
    back = parse_group(format_group(h))
    assert [(x.B, x.b) for x in back.generators] == [(x.B, x.b) for x in h.generators]


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(SMALL))
def test_spin_count_is_power_of_two_times_holonomy(name):
    g = catalog.builtin(name).group
    for conv in ("pin+", "pin-") + (("spin",) if g.is_orientable() else ()):
        r = count(g, conv)
        if r.exists:
            assert r.total == 2 ** r.exponent and r.exponent >= g.k
