import itertools
import random

import pytest

from flatpin import catalog
from flatpin.bieberbach import ReducedWord, torus
from flatpin.clifford import CliffordElement, Convention
from flatpin.errors import NotOrientable, StructuresExist, TooMany
from flatpin.pinspin import (PinStructure, assemble, count, enumerate_structures, evaluate,
                             homomorphism_check, iter_structures, nonexistence_witness,
                             preimage_product, solve, z2_closed_form)
from flatpin.signperm import SignedPermutation


def group(name):
    return catalog.builtin(name).group


def bits(*axes):
    return sum(1 << (a - 1) for a in axes)


def eps1(system):
    return sorted((r.coef, r.rhs) for r in system.eps1_rows())


def test_assemble_m1_pin_plus():
    sys_ = assemble(group("M1"), "pin+")
    assert len(sys_.rows) == 4 * 2 + 3
    assert eps1(sys_) == sorted([(bits(3), 0), (bits(1, 2), 0), (bits(1, 2), 1)])
    assert all(r.coef == 0 for r in sys_.eps2_rows())
    assert sys_.row_for((1, 2)).describe(4) == "d1*d2 = -1"


def test_assemble_torus_and_gamma02():
    sys_ = assemble(torus(3), "pin-")
    assert sys_.rows == [] and solve(sys_).rank == 0
    sys_ = assemble(group("G_0_2(3)"), "pin+")
    assert eps1(sys_) == [(bits(3), 1)]


def test_spin_needs_orientation():
    with pytest.raises(NotOrientable):
        assemble(group("M1"), "spin")


def test_solve_examples():
    assert count(group("M1"), "pin+").total == 0
    assert count(group("M1"), "pin-").total == 16
    assert count(group("M5"), "spin").total == 16
    assert count(group("M5p"), "spin").total == 8
    r = count(torus(4), Convention.SPIN)
    assert r.total == 16 and r.exponent == 4


def test_constraints_text():
    r = count(group("M1"), "pin-")
    assert r.constraints() == ["d1 = -d2", "d3 = -1"]
    assert r.free_deltas() == [2, 4]
    r = count(group("M4"), "pin+")
    assert r.constraints() == ["d1 = d2", "d4 = -1"]
    assert count(group("M1"), "pin+").constraints() == []


def deltas(structs):
    return {s.delta for s in structs}


def test_enumerate_examples():
    s = enumerate_structures(group("M1"), "pin-")
    assert len(s) == 16
    assert all(d[1] == -d[0] and d[2] == -1 for d in deltas(s))
    s = enumerate_structures(group("M1tildep"), "spin")
    assert len(s) == 32
    assert all(d[0] == d[1] == -1 and d[3] == 1 for d in deltas(s))
    s = enumerate_structures(group("G_0_2(3)"), "pin-")
    assert len(s) == 8 and deltas(s) == {(a, b, -1) for a in (1, -1) for b in (1, -1)}
    with pytest.raises(TooMany):
        enumerate_structures(group("dG1p"), "spin", limit=100)


def test_enumeration_order_deterministic():
    a = [str(s) for s in iter_structures(group("M5"), "spin")]
    b = [str(s) for s in iter_structures(group("M5"), "spin")]
    assert a == b
    # sigma counts fastest
    first = list(iter_structures(group("M5"), "spin"))[:4]
    assert len({s.delta for s in first}) == 1


def test_evaluate_examples():
    g = group("M1")
    st = enumerate_structures(g, "pin-")[5]
    assert evaluate(st, g, ReducedWord((), (0, 0, 0, 0))) == 1
    assert evaluate(st, g, ReducedWord((), (1, 0, 0, 0))) == st.delta[0]
    e4 = CliffordElement.blade(4, Convention.MINUS, [4])
    assert evaluate(st, g, ReducedWord((1,), (0, 0, 0, 0))) == e4 * st.sigma[0]


def test_homomorphism_check_examples():
    g = group("G_0_1(3)")
    for conv in ("pin+", "pin-"):
        for st in enumerate_structures(g, conv):
            assert homomorphism_check(st, g, 1)
    st = enumerate_structures(g, "pin+")[0]
    system = assemble(g, "pin+")
    row = system.eps1_rows()[0]
    flip = (row.coef & -row.coef).bit_length() - 1
    delta = list(st.delta)
    delta[flip] = -delta[flip]
    bad = PinStructure(st.convention, tuple(delta), st.sigma)
    assert not system.satisfied_by(bad.delta_bits)
    assert not homomorphism_check(bad, g, 1)
    T = torus(3)
    for d in itertools.product((1, -1), repeat=3):
        assert homomorphism_check(PinStructure(Convention.PLUS, d, ()), T, 1)


def test_homomorphism_check_sampled_path():
    g = group("M1tildep")
    sts = enumerate_structures(g, "spin")
    assert all(homomorphism_check(s, g, 1, sample_budget=2000, seed=3) for s in sts[:4])
    bad = PinStructure(sts[0].convention, (1,) + sts[0].delta[1:], sts[0].sigma)
    assert not homomorphism_check(bad, g, 1, sample_budget=2000)


def test_witness_m1_pin_plus():
    g = group("M1")
    w = nonexistence_witness(g, "pin+")
    assert w.kind == "squares"
    assert w.subsets == ((2,), (1, 2))
    assert w.square == (1, 1, 0, 0)
    assert w.preimage_squares == (1, -1)
    assert w.replay(assemble(g, "pin+"))


def test_witness_m1tilde_spin():
    g = group("M1tilde")
    w = nonexistence_witness(g, "spin")
    assert w.kind == "squares" and w.subsets == ((2,), (1, 2))
    assert w.preimage_squares == (-1, 1)


def test_witness_m3_pin_plus_rows():
    g = group("M3")
    system = assemble(g, "pin+")
    w = nonexistence_witness(g, "pin+")
    rows = sorted((system.rows[i].coef, system.rows[i].rhs, system.rows[i].tag) for i in w.rows)
    assert rows == [(bits(4), 0, ("eps1", (1,))), (bits(4), 1, ("eps1", (2,)))]
    assert w.replay(system)


def test_certificate_fallback_replays():
    g = group("M2p")
    for conv in ("pin+", "pin-"):
        w = nonexistence_witness(g, conv)
        assert w.replay(assemble(g, conv))


def test_witness_requires_nonexistence():
    with pytest.raises(StructuresExist):
        nonexistence_witness(group("M5"), "spin")


def test_z2_closed_form_examples():
    cf = z2_closed_form(1, 0, 1, "pin+")
    assert cf.count == 4 and cf.equal_pairs == [(1, 2)] and cf.last_delta == 1
    assert z2_closed_form(0, 1, 2, "pin+").last_delta == 1
    assert z2_closed_form(0, 1, 2, "pin-").last_delta == -1
    assert z2_closed_form(1, 1, 1, "spin").last_delta == -1
    with pytest.raises(ValueError):
        z2_closed_form(0, 0, 3, "pin+")
    with pytest.raises(NotOrientable):
        z2_closed_form(0, 1, 2, "spin")


def test_preimage_sign_independence():
    # negating any generator's preimage only changes the sign of U_S, never U_S^2
    for name in ("M1", "M3p", "M1tildep", "G_1_1(5)"):
        g = group(name)
        for conv in (Convention.PLUS, Convention.MINUS):
            for S in g.subsets(include_empty=False):
                U = preimage_product(g, S, conv)
                for signs in itertools.product((1, -1), repeat=len(S)):
                    V = U * (1 if signs.count(-1) % 2 == 0 else -1)
                    assert V * V == U * U


def test_conjugation_invariance_of_counts():
    rng = random.Random(1)
    for name in ("M1", "M2p", "M3p", "M4", "M5p", "G_1_1(4)", "G_0_1(3)"):
        g = group(name)
        for _ in range(3):
            image = list(range(g.n))
            rng.shuffle(image)
            C = SignedPermutation(tuple(image), tuple(rng.choice((1, -1)) for _ in image))
            h = g.conjugate(C)
            for conv in ("pin+", "pin-"):
                assert count(h, conv).total == count(g, conv).total
