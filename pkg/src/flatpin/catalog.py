"""Built-in groups, the family of Z_2-manifolds, and a search for isospectral pairs."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .bieberbach import BieberbachGroup, frac_mod1, torus, validate
from .clifford import Convention, u_square_formula
from .errors import BudgetExceeded, UnknownName
from .gf2 import gf2_solve
from .invariants import betti_closed_form_z2
from .signperm import SignedPermutation

HALF = Fraction(1, 2)


@dataclass
class CatalogEntry:
    name: str
    group: BieberbachGroup
    expected: dict = field(default_factory=dict)
    note: str = ""


def _half(n, axes):
    return tuple(HALF if i + 1 in axes else Fraction(0) for i in range(n))


# Pair data: diagonal of B_i, then the 1-based axes carrying 1/2 in
# b_i, b_i' and in the derived b_3, b_3' used only as a cross-check.
_PAIRS = {
    1: dict(B1=(1, 1, 1, -1), B2=(1, 1, -1, 1),
            b1=(3,), b1p=(2,), b2=(1, 2), b2p=(1, 4), b3=(1, 2, 3), b3p=(1, 2, 4)),
    2: dict(B1=(1, 1, 1, -1), B2=(1, 1, -1, 1),
            b1=(3,), b1p=(2,), b2=(2, 4), b2p=(1, 2), b3=(2, 3, 4), b3p=(1,)),
    3: dict(B1=(1, 1, -1, 1), B2=(-1, -1, -1, 1),
            b1=(4,), b1p=(2,), b2=(3, 4), b2p=(4,), b3=(3,), b3p=(2, 4)),
    4: dict(B1=(1, 1, -1, 1), B2=(-1, -1, -1, 1),
            b1=(1, 2), b1p=(2, 4), b2=(4,), b2p=(3, 4), b3=(1, 2, 4), b3p=(2, 3)),
    5: dict(B1=(-1, -1, 1, 1), B2=(1, -1, -1, 1),
            b1=(4,), b1p=(3,), b2=(2, 4), b2p=(1, 2), b3=(2,), b3p=(1, 2, 3)),
}
# characters adjoined to B_1, B_2 for the 6-dimensional pair
_TILDE_EXTRA = ((-1, 1), (1, -1))

# published structure counts; None marks a non-orientable manifold (no spin question)
_COUNTS = {
    "M1": (0, 2**4, None), "M1p": (2**3, 2**3, None),
    "M1tilde": (0, 0, 0), "M1tildep": (2**5, 2**5, 2**5),
    "M2": (2**3, 2**3, None), "M2p": (0, 0, None),
    "M3": (0, 0, None), "M3p": (2**4, 0, None),
    "M4": (2**4, 0, None), "M4p": (2**3, 2**3, None),
    "M5": (2**4, 2**4, 2**4), "M5p": (2**3, 2**3, 2**3),
}

# published nontrivial Sunada numbers per pair (identity excluded)
_SUNADA = {
    1: {(2, 2): 1, (3, 1): 1, (3, 2): 1},
    "1tilde": {(2, 2): 1, (4, 1): 1, (4, 2): 1},
    2: {(2, 1): 1, (3, 1): 1, (3, 2): 1},
    3: {(1, 1): 1, (2, 1): 1, (3, 1): 1},
    4: {(1, 1): 1, (2, 1): 1, (3, 2): 1},
    5: {(2, 1): 3},
}

# squares of gamma_1, gamma_2, gamma_3 = gamma_1 gamma_2 as axis lists
_SQUARES = {
    "M1": ((3,), (1, 2), (1, 2)), "M1p": ((2,), (1, 4), (1, 2)),
    "M2": ((3,), (2, 4), (2,)), "M2p": ((2,), (1, 2), (1,)),
    "M3": ((4,), (4,), (3,)), "M3p": ((2,), (4,), (4,)),
    "M4": ((1, 2), (4,), (4,)), "M4p": ((2, 4), (4,), (3,)),
    "M5": ((4,), (4,), (2,)), "M5p": ((3,), (1,), (2,)),
}


def _pair_group(i: int, primed: bool, tilde: bool = False) -> BieberbachGroup:
    row = _PAIRS[i]
    B1, B2 = row["B1"], row["B2"]
    b1 = row["b1p" if primed else "b1"]
    b2 = row["b2p" if primed else "b2"]
    b3 = row["b3p" if primed else "b3"]
    n = 4
    if tilde:
        B1 = B1 + _TILDE_EXTRA[0]
        B2 = B2 + _TILDE_EXTRA[1]
        n = 6
    D1, D2 = SignedPermutation.diag(B1), SignedPermutation.diag(B2)
    v1, v2 = _half(n, b1), _half(n, b2)
    derived = frac_mod1([x + y for x, y in zip(D2.apply(v1), v2)])
    if derived != _half(n, b3):
        raise AssertionError(f"pair data: b3 of pair {i} does not match B2 b1 + b2")
    name = f"M{i}" + ("tilde" if tilde else "") + ("p" if primed else "")
    return validate(n, [(D1, v1), (D2, v2)], name=name)


def _j_block_matrix(j: int, h: int, n: int) -> SignedPermutation:
    image = list(range(n))
    sign = [1] * n
    for c in range(j):
        image[2 * c], image[2 * c + 1] = 2 * c + 1, 2 * c
    for i in range(2 * j, 2 * j + h):
        sign[i] = -1
    return SignedPermutation(tuple(image), tuple(sign))


def gamma_jh(j: int, h: int, n: int) -> BieberbachGroup:
    """Gamma_{j,h} = <B_{j,h} L_{e_n/2}, Z^n>."""
    l = n - 2 * j - h
    if j < 0 or h < 0 or l < 1 or j + h == 0:
        raise ValueError(f"no Gamma_{{{j},{h}}} in dimension {n}")
    return validate(n, [(_j_block_matrix(j, h, n), _half(n, (n,)))], name=f"G_{j}_{h}({n})")


def _z2_expected(j: int, h: int, n: int) -> dict:
    l = n - 2 * j - h
    return {
        "pin+": 2 ** (n - j), "pin-": 2 ** (n - j),
        "spin": 2 ** (n - j) if (j + h) % 2 == 0 else None,
        "h1": (j + l, [2] * h),
        "betti": [betti_closed_form_z2(j, h, l, p) for p in range(n + 1)],
        "orientable": (j + h) % 2 == 0,
    }


def _pair_entry(i: int, primed: bool, tilde: bool = False) -> CatalogEntry:
    group = _pair_group(i, primed, tilde)
    pp, pm, sp = _COUNTS[group.name]
    expected = {"pin+": pp, "pin-": pm, "spin": sp,
                "orientable": sp is not None,
                "sunada": _SUNADA["1tilde" if tilde else i]}
    if not tilde:
        expected["squares"] = _SQUARES[group.name]
    return CatalogEntry(group.name, group, expected, "isospectral pair")


def _doubled_entry(primed: bool) -> CatalogEntry:
    group = _pair_group(1, primed).double()
    name = "dG1p" if primed else "dG1"
    group.name = name
    expected = {"spin": 2**7 if primed else 0, "orientable": True}
    return CatalogEntry(name, group, expected, "doubled manifold")


def _dim3_entries() -> list[CatalogEntry]:
    out = []
    for j, h in ((1, 0), (0, 1), (0, 2)):
        g = gamma_jh(j, h, 3)
        exp = _z2_expected(j, h, 3)
        out.append(CatalogEntry(g.name, g, exp, "dimension 3, holonomy Z2"))
    gp = validate(3, [(SignedPermutation.diag((-1, 1, 1)), _half(3, (2, 3)))], name="Gp_0_1(3)")
    out.insert(2, CatalogEntry(gp.name, gp, {"pin+": 8, "pin-": 8, "spin": None,
                                              "orientable": False}, "dimension 3, holonomy Z2"))
    out[1].expected["geodesic_sq"] = Fraction(1, 4)
    out[2].expected["geodesic_sq"] = Fraction(1, 2)
    return out


@lru_cache(maxsize=None)
def _fixed_entries() -> dict[str, CatalogEntry]:
    entries = {}
    for i in range(1, 6):
        for primed in (False, True):
            e = _pair_entry(i, primed)
            entries[e.name] = e
    for primed in (False, True):
        e = _pair_entry(1, primed, tilde=True)
        entries[e.name] = e
    for primed in (False, True):
        e = _doubled_entry(primed)
        entries[e.name] = e
    for e in _dim3_entries():
        entries[e.name] = e
    return entries


_JH = re.compile(r"^G_(\d+)_(\d+)\((\d+)\)$")
_TORUS = re.compile(r"^T(\d+)$")
# Gamma_1, Gamma_1' are the groups of M1, M1'
_ALIASES = {"G1": "M1", "G1p": "M1p"}


def names() -> list[str]:
    return list(_fixed_entries())


def builtin(name: str) -> CatalogEntry:
    """Look up a named group: the fixed catalog, G_j_h(n), tori Tn, and d / d2 prefixes."""
    fixed = _fixed_entries()
    name = _ALIASES.get(name, name)
    if name in fixed:
        return fixed[name]
    m = _JH.match(name)
    if m:
        j, h, n = map(int, m.groups())
        try:
            g = gamma_jh(j, h, n)
        except ValueError as exc:
            raise UnknownName(str(exc)) from None
        return CatalogEntry(name, g, _z2_expected(j, h, n), "Z_2 family")
    m = _TORUS.match(name)
    if m:
        n = int(m.group(1))
        return CatalogEntry(name, torus(n), {"pin+": 2**n, "pin-": 2**n, "spin": 2**n,
                                             "orientable": True}, "torus")
    if name.startswith("d2") and len(name) > 2:
        base = builtin(name[2:]).group
        g = base.double().double()
        g.name = name
        return CatalogEntry(name, g, {"orientable": True}, "double of a double")
    if name.startswith("d") and len(name) > 1:
        try:
            base = builtin(name[1:]).group
        except UnknownName:
            raise UnknownName(f"unknown group {name!r}") from None
        g = base.double()
        g.name = name
        return CatalogEntry(name, g, {"orientable": True}, "double")
    raise UnknownName(f"unknown group {name!r}")


def isospectral_pairs() -> list[tuple[str, str]]:
    pairs = [(f"M{i}", f"M{i}p") for i in range(1, 6)]
    pairs.insert(1, ("M1tilde", "M1tildep"))
    return pairs


def family_F(n: int) -> list[CatalogEntry]:
    """All M_{j,h}: 0 <= j <= (n-1)//2, 0 <= h < n - 2j, j + h != 0."""
    if n < 2:
        raise ValueError("the family is defined for n >= 2")
    out = []
    for j in range((n - 1) // 2 + 1):
        for h in range(n - 2 * j):
            if j + h == 0:
                continue
            out.append(builtin(f"G_{j}_{h}({n})"))
    return out


def family_size_formula(n: int) -> int:
    return (n * n + 2 * n - (4 if n % 2 == 0 else 3)) // 4


def charlap_n2(n: int) -> Fraction:
    m = (n - 1) // 2
    return Fraction(m * (m + 3), 2) + Fraction(((n - 1) - m) * (n - m), 2)


# --- search -----------------------------------------------------------------

def _bit_reps(gens):
    """All 2^k (flip mask, half mask) pairs of a diagonal group given bitwise."""
    k = len(gens)
    reps = []
    for s in range(1 << k):
        f = t = 0
        for i in range(k):
            if s >> i & 1:
                f ^= gens[i][0]
                t ^= gens[i][1]
        reps.append((f, t))
    return reps


def _bit_valid(gens, n):
    reps = _bit_reps(gens)
    for f, t in reps[1:]:
        if f == 0 or not (t & ~f & ((1 << n) - 1)):
            return False
    return True


def _independent_bases(k):
    vectors = range(1, 1 << k)
    for basis in itertools.permutations(vectors, k):
        span = {0}
        for v in basis:
            span |= {x ^ v for x in span}
        if len(span) == 1 << k:
            yield basis


def _canonical_key(gens, n):
    reps = _bit_reps(gens)
    best = None
    for basis in _independent_bases(len(gens)):
        new = [reps[b] for b in basis]
        cols = sorted(tuple((f >> i & 1, t >> i & 1) for f, t in new) for i in range(n))
        key = tuple(cols)
        if best is None or key < best:
            best = key
    return best


def _bit_profile(gens, n):
    prof = {}
    for f, t in _bit_reps(gens):
        d = n - f.bit_count()
        key = (d, (t & ~f).bit_count())
        prof[key] = prof.get(key, 0) + 1
    return tuple(sorted(prof.items()))


def _bit_exists(gens, n, convention):
    rows = []
    for f, t in _bit_reps(gens)[1:]:
        sq = u_square_formula(0, f.bit_count(), convention)
        rows.append((t & ~f, int(sq == -1)))
    return gf2_solve(rows, n).consistent


def _bits_to_group(gens, n) -> BieberbachGroup:
    out = []
    for f, t in gens:
        B = SignedPermutation.diag(tuple(-1 if f >> i & 1 else 1 for i in range(n)))
        out.append((B, tuple(HALF if t >> i & 1 else Fraction(0) for i in range(n))))
    return validate(n, out)


def search_pairs(n: int, k: int, budget: int = 100_000):
    """Isospectral pairs of diagonal Z_2^k-manifolds whose structure existence differs.

    Candidates are k-tuples of distinct nontrivial diagonal matrices with
    translations in {0, 1/2}^n.  ``budget`` caps the number of candidates.
    """
    if n > 8 or k > 3 or n < 1 or k < 1:
        raise ValueError("search is limited to n <= 8 and 1 <= k <= 3")
    if budget <= 0:
        return []
    total = comb((1 << n) - 1, k) * (1 << (n * k))
    if total > budget:
        raise BudgetExceeded(f"{total} candidates exceed budget {budget}")
    classes = {}
    for flips in itertools.combinations(range(1, 1 << n), k):
        for halves in itertools.product(range(1 << n), repeat=k):
            gens = tuple(zip(flips, halves))
            if not _bit_valid(gens, n):
                continue
            key = _canonical_key(gens, n)
            classes.setdefault(key, gens)
    by_profile = {}
    for gens in classes.values():
        by_profile.setdefault(_bit_profile(gens, n), []).append(gens)
    conventions = [Convention.PLUS, Convention.MINUS]
    out = []
    for profile, members in sorted(by_profile.items()):
        info = []
        for gens in members:
            orientable = all(f.bit_count() % 2 == 0 for f, _ in gens)
            ex = {c.value: _bit_exists(gens, n, c) for c in conventions}
            ex["spin"] = ex["pin+"] if orientable else None
            info.append((gens, ex))
        for (g1, e1), (g2, e2) in itertools.combinations(info, 2):
            differs = [c for c in ("pin+", "pin-", "spin") if e1[c] != e2[c]]
            if differs:
                out.append((_bits_to_group(g1, n), _bits_to_group(g2, n),
                            {"sunada": dict(profile), "differs": differs,
                             "exists": (e1, e2)}))
    return out
