"""Pin+/pin-/spin structures on Z_2^k-manifolds as a linear system over GF(2).

A structure is a character delta on the lattice together with signs sigma
on the generators.  Writing delta_i = (-1)^{x_i}, the compatibility
conditions become linear equations in the bits x:

* one row per generator g and axis i: (B_g - Id) e_i . x = 0 (mod 2);
* one row per nonempty generator subset S: (w_S^2 mod 2) . x = [u_S^2 == -1],
  where u_S is the product of the distinguished preimages over S.

Lattice tails and sigma drop out of the second family (they square away), and
shifting a tail by lam moves w^2 by (B + Id) lam, which agrees mod 2 with
(B - Id) lam, already covered by the first family.  So these finitely many
rows are the whole system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .bieberbach import (BieberbachGroup, ReducedWord,
                         mask_subset, subset_mask)
from .clifford import CliffordElement, Convention, u_pre, u_square_formula
from .errors import NotOrientable, StructuresExist, TooMany
from .gf2 import GF2Solution, gf2_solve


def _bits(vec: Sequence[int]) -> int:
    out = 0
    for i, v in enumerate(vec):
        if v % 2:
            out |= 1 << i
    return out


@dataclass(frozen=True)
class Row:
    coef: int
    rhs: int
    tag: tuple  # ("eps2", generator, axis) or ("eps1", subset)

    def describe(self, n: int) -> str:
        lhs = "*".join(f"d{i + 1}" for i in range(n) if self.coef >> i & 1) or "1"
        return f"{lhs} = {'-1' if self.rhs else '+1'}"


@dataclass
class GF2System:
    n: int
    k: int
    convention: Convention
    rows: list[Row]

    def eps1_rows(self) -> list[Row]:
        return [r for r in self.rows if r.tag[0] == "eps1"]

    def eps2_rows(self) -> list[Row]:
        return [r for r in self.rows if r.tag[0] == "eps2"]

    def satisfied_by(self, x: int) -> bool:
        return all(((r.coef & x).bit_count() & 1) == r.rhs for r in self.rows)

    def row_for(self, subset) -> Row:
        tag = ("eps1", tuple(subset))
        return next(r for r in self.rows if r.tag == tag)


@dataclass
class StructureCount:
    convention: Convention
    exists: bool
    total: int
    rank: int
    exponent: int | None
    solution: GF2Solution
    system: GF2System

    def constraints(self) -> list[str]:
        """Pivot deltas expressed through the free ones, e.g. 'd2 = -d1'."""
        sol = self.solution
        if not sol.consistent:
            return []
        free = [c for c in range(sol.ncols) if c not in sol.pivots]
        out = []
        for p in sol.pivots:
            deps = [f for f, vec in zip(free, sol.nullspace) if vec >> p & 1]
            sign = "-" if sol.particular >> p & 1 else ""
            if deps:
                rhs = sign + "*".join(f"d{f + 1}" for f in deps)
            else:
                rhs = "-1" if sign else "+1"
            out.append(f"d{p + 1} = {rhs}")
        return out

    def free_deltas(self) -> list[int]:
        return [c + 1 for c in range(self.solution.ncols) if c not in self.solution.pivots]


@dataclass(frozen=True)
class PinStructure:
    convention: Convention
    delta: tuple[int, ...]
    sigma: tuple[int, ...]

    @property
    def delta_bits(self) -> int:
        return sum(1 << i for i, d in enumerate(self.delta) if d == -1)

    def character(self, lam: Sequence[int]) -> int:
        """delta evaluated on a lattice vector: product of delta_i over odd lam_i."""
        out = 1
        for d, m in zip(self.delta, lam):
            if m % 2:
                out *= d
        return out

    def __str__(self):
        d = ",".join(f"{x:+d}" for x in self.delta)
        s = ",".join(f"{x:+d}" for x in self.sigma)
        return f"({d}; {s})"


@dataclass
class NonexistenceWitness:
    """Either two words with equal squares and opposite preimage squares, or
    a set of system rows summing to 0 = 1."""

    kind: str  # "squares" or "certificate"
    rows: list[int]
    subsets: tuple | None = None
    square: tuple | None = None
    preimage_squares: tuple | None = None

    def replay(self, system: GF2System) -> bool:
        coef = rhs = 0
        for i in self.rows:
            coef ^= system.rows[i].coef
            rhs ^= system.rows[i].rhs
        return coef == 0 and rhs == 1

    def describe(self, system: GF2System) -> str:
        if self.kind == "squares":
            S, T = self.subsets
            a, b = self.preimage_squares
            return (f"w{list(S)}^2 = w{list(T)}^2 = L{list(self.square)} but "
                    f"u^2 = {a:+d} vs {b:+d}")
        return " + ".join(f"[{system.rows[i].describe(system.n)}]" for i in self.rows) + \
            " is inconsistent"


def _check_convention(group: BieberbachGroup, convention) -> Convention:
    convention = Convention.parse(convention)
    if convention is Convention.SPIN and not group.is_orientable():
        raise NotOrientable(f"{group.name or 'group'} is not orientable")
    return convention


@lru_cache(maxsize=None)
def _preimage_products(group: BieberbachGroup, algebra: Convention) -> tuple:
    """u_S = u(B_{i_1}) ... u(B_{i_r}) for every subset mask."""
    gens = [u_pre(g.B, algebra) for g in group.generators]
    out = []
    for mask in range(1 << group.k):
        u = CliffordElement.scalar(group.n, algebra)
        for i in mask_subset(mask):
            u = u * gens[i - 1]
        out.append(u)
    return tuple(out)


def preimage_product(group: BieberbachGroup, subset, convention) -> CliffordElement:
    algebra = Convention.parse(convention).algebra
    return _preimage_products(group, algebra)[subset_mask(subset)]


def assemble(group: BieberbachGroup, convention) -> GF2System:
    convention = _check_convention(group, convention)
    n = group.n
    rows = []
    for g_idx, g in enumerate(group.generators, 1):
        for i in range(n):
            e = [0] * n
            e[i] = 1
            moved = g.B.apply(e)
            rows.append(Row(_bits([m - x for m, x in zip(moved, e)]), 0, ("eps2", g_idx, i + 1)))
    products = _preimage_products(group, convention.algebra)
    for mask in range(1, 1 << group.k):
        u = products[mask]
        sq = (u * u).scalar_part()
        if sq is None or sq not in (1, -1):
            raise ArithmeticError(f"preimage square {u * u} is not +-1")
        S = mask_subset(mask)
        rows.append(Row(_bits(group.word_square(S)), int(sq == -1), ("eps1", S)))
    return GF2System(n, group.k, convention, rows)


def solve(system: GF2System) -> StructureCount:
    sol = gf2_solve([(r.coef, r.rhs) for r in system.rows], system.n)
    if not sol.consistent:
        return StructureCount(system.convention, False, 0, sol.rank, None, sol, system)
    exponent = system.n - sol.rank + system.k
    return StructureCount(system.convention, True, 1 << exponent, sol.rank, exponent, sol,
                          system)


def count(group: BieberbachGroup, convention) -> StructureCount:
    return solve(assemble(group, convention))


def _signs(bits: int, width: int) -> tuple[int, ...]:
    return tuple(-1 if bits >> i & 1 else 1 for i in range(width))


def iter_structures(group: BieberbachGroup, convention) -> Iterator[PinStructure]:
    result = count(group, convention)
    for x in result.solution.solutions():
        delta = _signs(x, group.n)
        for s in range(1 << group.k):
            yield PinStructure(result.convention, delta, _signs(s, group.k))


def enumerate_structures(group: BieberbachGroup, convention, limit: int = 4096) -> list[PinStructure]:
    result = count(group, convention)
    if result.total > limit:
        raise TooMany(f"{result.total} structures exceed limit {limit}")
    return list(iter_structures(group, convention))


def evaluate(structure: PinStructure, group: BieberbachGroup, word: ReducedWord) -> CliffordElement:
    """epsilon(gamma_{i_1} ... gamma_{i_r} L_lam) = sigma_S * delta(lam) * u_S."""
    scalar = structure.character(word.tail)
    for i in word.subset:
        scalar *= structure.sigma[i - 1]
    return preimage_product(group, word.subset, structure.convention) * scalar


@dataclass
class _PairTables:
    """Word pairs (S, lam1) x (T, lam2) flattened for vectorized checking.

    ``odd1``, ``odd2`` and ``odd12`` hold the parities of the tails of the two
    words and of their product; ``rho`` the Clifford sign with
    U_S U_T = rho U_{S xor T}.
    """

    ok: bool
    s: np.ndarray = None
    t: np.ndarray = None
    rho: np.ndarray = None
    odd1: np.ndarray = None
    odd2: np.ndarray = None
    odd12: np.ndarray = None


@lru_cache(maxsize=64)
def _pair_tables(group: BieberbachGroup, algebra: Convention, box_radius: int,
                 sample_budget: int, seed: int) -> _PairTables:
    n, k = group.n, group.k
    U = _preimage_products(group, algebra)
    size = 1 << k
    rho = np.zeros((size, size), dtype=np.int64)
    for s in range(size):
        for t in range(size):
            prod = U[s] * U[t]
            if prod == U[s ^ t]:
                rho[s, t] = 1
            elif prod == -U[s ^ t]:
                rho[s, t] = -1
            else:
                return _PairTables(False)
    exact = [group._products[m] for m in range(size)]

    width = 2 * box_radius + 1
    n_words = size * width ** n
    if n_words * n_words <= sample_budget:
        grid = np.array(np.meshgrid(*[np.arange(-box_radius, box_radius + 1)] * n,
                                    indexing="ij"), dtype=np.int64).reshape(n, -1).T
        l1, l2 = np.broadcast_arrays(grid[:, None, :], grid[None, :, :])
        tails = [(l1.reshape(-1, n), l2.reshape(-1, n))]
    else:
        basic = [np.zeros(n, dtype=np.int64)]
        for i in range(n):
            for sgn in (1, -1):
                v = np.zeros(n, dtype=np.int64)
                v[i] = sgn
                basic.append(v)
        basic = np.array(basic)
        l1, l2 = np.broadcast_arrays(basic[:, None, :], basic[None, :, :])
        tails = [(l1.reshape(-1, n), l2.reshape(-1, n))]
        rng = np.random.default_rng(seed)
        per_block = max(1, sample_budget // (size * size))
        tails.append((rng.integers(-box_radius, box_radius + 1, size=(per_block, n)),
                      rng.integers(-box_radius, box_radius + 1, size=(per_block, n))))

    parts = {key: [] for key in ("s", "t", "odd1", "odd2", "odd12")}
    for s in range(size):
        for t in range(size):
            # (w_S L_lam1)(w_T L_lam2) = w_{S xor T} L_{offset + B_T^{-1} lam1 + lam2}
            Binv = exact[t].B.inverse()
            c = Binv.apply(exact[s].b)
            offset = [ci + bt - bst for ci, bt, bst in zip(c, exact[t].b, exact[s ^ t].b)]
            if any(x.denominator != 1 for x in offset):
                raise ArithmeticError("product translation left the lattice")
            offset = np.array([int(x) for x in offset], dtype=np.int64)
            for lam1, lam2 in tails:
                moved = np.zeros_like(lam1)
                for i, (j, sg) in enumerate(zip(Binv.image, Binv.sign)):
                    moved[:, j] = sg * lam1[:, i]
                m = len(lam1)
                parts["s"].append(np.full(m, s))
                parts["t"].append(np.full(m, t))
                parts["odd1"].append(lam1 & 1)
                parts["odd2"].append(lam2 & 1)
                parts["odd12"].append((offset + moved + lam2) & 1)
    cat = {key: np.concatenate(v) for key, v in parts.items()}
    for key in ("odd1", "odd2", "odd12"):
        cat[key] = cat[key].astype(np.float64)
    return _PairTables(True, cat["s"], cat["t"], rho[cat["s"], cat["t"]],
                       cat["odd1"], cat["odd2"], cat["odd12"])


def homomorphism_check(structure: PinStructure, group: BieberbachGroup, box_radius: int = 1,
                       sample_budget: int = 250_000, seed: int = 0) -> bool:
    """Check evaluate(w w') == evaluate(w) evaluate(w') on pairs of words.

    Words range over every generator subset with lattice tails in the box
    [-box_radius, box_radius]^n.  When the number of pairs fits in
    ``sample_budget`` every pair is checked; otherwise ``sample_budget``
    seeded random pairs are checked along with every pair whose tails lie
    in {0, +-e_i}.
    """
    tables = _pair_tables(group, structure.convention.algebra, box_radius, sample_budget, seed)
    if not tables.ok:
        return False
    size = 1 << group.k
    sigma = np.array([np.prod([structure.sigma[i - 1] for i in mask_subset(m)] or [1])
                      for m in range(size)], dtype=np.int64)
    xbits = np.array([1.0 if d == -1 else 0.0 for d in structure.delta])

    def chi(odd):
        # delta evaluated on tails given by their odd coordinates
        return 1 - 2 * ((odd @ xbits).astype(np.int64) & 1)

    lhs = sigma[tables.s ^ tables.t] * chi(tables.odd12)
    rhs = sigma[tables.s] * sigma[tables.t] * chi(tables.odd1) * chi(tables.odd2) * tables.rho
    return bool(np.all(lhs == rhs))


def nonexistence_witness(group: BieberbachGroup, convention) -> NonexistenceWitness:
    system = assemble(group, convention)
    result = solve(system)
    if result.exists:
        raise StructuresExist(f"{result.total} structures exist")
    row_index = {r.tag: i for i, r in enumerate(system.rows)}
    words = [((), (0,) * group.n, 0)]
    for r in system.eps1_rows():
        S = r.tag[1]
        words.append((S, group.word_square(S), r.rhs))
    for a in range(len(words)):
        for b in range(a + 1, len(words)):
            S, sq_s, rhs_s = words[a]
            T, sq_t, rhs_t = words[b]
            if sq_s == sq_t and rhs_s != rhs_t:
                rows = [row_index[("eps1", W)] for W in (S, T) if W]
                return NonexistenceWitness(
                    "squares", rows, (S, T), sq_s,
                    (-1 if rhs_s else 1, -1 if rhs_t else 1))
    return NonexistenceWitness("certificate", result.solution.certificate)


@dataclass
class Z2ClosedForm:
    n: int
    count: int
    equal_pairs: list[tuple[int, int]] = field(default_factory=list)
    last_delta: int = 1

    def satisfied_by(self, delta: Sequence[int]) -> bool:
        return (all(delta[p - 1] == delta[q - 1] for p, q in self.equal_pairs)
                and delta[self.n - 1] == self.last_delta)


def z2_closed_form(j: int, h: int, l: int, convention) -> Z2ClosedForm:
    """Structure count and delta constraints for the Z_2-manifold M_{j,h}."""
    convention = Convention.parse(convention)
    if j < 0 or h < 0 or l < 1 or j + h == 0:
        raise ValueError(f"invalid (j, h, l) = ({j}, {h}, {l})")
    if convention is Convention.SPIN and (j + h) % 2:
        raise NotOrientable(f"M_{{{j},{h}}} is not orientable")
    n = 2 * j + h + l
    last = u_square_formula(j, h, convention.algebra)
    if convention is Convention.SPIN:
        assert last == (-1) ** ((j + h) // 2)
    pairs = [(2 * i + 1, 2 * i + 2) for i in range(j)]
    return Z2ClosedForm(n, 1 << (n - j), pairs, last)
