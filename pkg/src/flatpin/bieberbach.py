"""Bieberbach groups with holonomy Z_2^k over the canonical lattice Z^n.

Group elements are pairs (B, b) standing for the isometry B L_b, that is
x -> B(x + b).  Composition is therefore

    (B, b) (B', b') = (B B', B'^{-1} b + b')

so that a product of generators gamma_1 gamma_2 has translation B_2 b_1 + b_2,
and (B, b)^2 = L_{(B + Id) b} whenever B is an involution.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ValidationError
from .linalg import solve_integer
from .signperm import SignedPermutation


def _is_dyadic(x: Fraction) -> bool:
    d = x.denominator
    return d & (d - 1) == 0


def as_vector(v: Iterable) -> tuple[Fraction, ...]:
    out = tuple(Fraction(x) for x in v)
    for x in out:
        if not _is_dyadic(x):
            raise ValueError(f"translation entry {x} has a non power-of-two denominator")
    return out


def frac_mod1(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(x - math.floor(x) for x in v)


def as_int_vector(v: Sequence[Fraction]) -> tuple[int, ...] | None:
    if all(Fraction(x).denominator == 1 for x in v):
        return tuple(int(x) for x in v)
    return None


@dataclass(frozen=True)
class AffineElement:
    B: SignedPermutation
    b: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", as_vector(self.b))
        if len(self.b) != self.B.n:
            raise ValueError("translation length differs from matrix size")

    @property
    def n(self) -> int:
        return self.B.n

    @classmethod
    def translation(cls, v: Sequence) -> "AffineElement":
        return cls(SignedPermutation.identity(len(v)), tuple(v))

    @classmethod
    def identity(cls, n: int) -> "AffineElement":
        return cls.translation((0,) * n)

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        moved = other.B.inverse().apply(self.b)
        return AffineElement(self.B @ other.B,
                             tuple(x + y for x, y in zip(moved, other.b)))

    def inverse(self) -> "AffineElement":
        return AffineElement(self.B.inverse(), tuple(-x for x in self.B.apply(self.b)))

    def __call__(self, x: Sequence) -> tuple:
        return self.B.apply([Fraction(xi) + bi for xi, bi in zip(x, self.b)])

    def square_translation(self) -> tuple[Fraction, ...]:
        sq = self * self
        if not sq.B.is_identity():
            raise ValueError("square is not a translation")
        return sq.b


@dataclass(frozen=True)
class ReducedWord:
    """gamma_{i_1} ... gamma_{i_r} L_tail with i_1 < ... < i_r (1-based)."""

    subset: tuple[int, ...]
    tail: tuple[int, ...]

    @property
    def mask(self) -> int:
        return subset_mask(self.subset)


def subset_mask(subset: Iterable[int]) -> int:
    mask = 0
    for i in subset:
        mask |= 1 << (i - 1)
    return mask


def mask_subset(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


@dataclass(frozen=True)
class Issue:
    kind: str
    message: str
    data: dict = field(default_factory=dict, compare=False)

    def __str__(self):
        return f"{self.kind}: {self.message}"


def torsion_witness(B: SignedPermutation, c: Sequence[Fraction], method: str = "blocks"):
    """Lattice shift lam with (B + Id)(c + lam) = 0, i.e. B L_{c+lam} of order 2.

    ``method="blocks"`` reads the answer off the cycle structure of the involution,
    ``method="snf"`` solves the integer system through Smith normal form.
    Returns None when the coset B L_c Lambda is torsion-free.
    """
    n = B.n
    if method == "snf":
        M = [[int(i == j) for j in range(n)] for i in range(n)]
        Bm = B.matrix()
        A = [[M[i][j] + Bm[i][j] for j in range(n)] for i in range(n)]
        Ac = [sum(A[i][j] * c[j] for j in range(n)) for i in range(n)]
        sol = solve_integer(A, [-x for x in Ac], ncols=n)
        return None if sol is None else tuple(sol)
    fixed, _, cycles = B.involution_blocks()
    lam = [0] * n
    for i in fixed:
        if Fraction(c[i]).denominator != 1:
            return None
        lam[i] = -int(c[i])
    for p, q, s in cycles:
        v = Fraction(c[p]) + s * Fraction(c[q])
        if v.denominator != 1:
            return None
        lam[p] = -int(v)
    return tuple(lam)


class BieberbachGroup:
    """A validated group <gamma_1, ..., gamma_k, Z^n> with holonomy Z_2^k.

    Build instances with :func:`validate`; the constructor trusts its input.
    """

    def __init__(self, n: int, generators: Sequence[AffineElement], name: str | None = None):
        self.n = n
        self.generators = tuple(generators)
        self.name = name

    @property
    def k(self) -> int:
        return len(self.generators)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<BieberbachGroup{label} n={self.n} k={self.k}>"

    def __eq__(self, other):
        if not isinstance(other, BieberbachGroup):
            return NotImplemented
        return self.n == other.n and self.generators == other.generators

    def __hash__(self):
        return hash((self.n, self.generators))

    @cached_property
    def _products(self) -> dict[int, AffineElement]:
        # exact product gamma_{i_1} ... gamma_{i_r} for each subset mask
        out = {0: AffineElement.identity(self.n)}
        for mask in range(1, 1 << self.k):
            low = mask & -mask
            i = low.bit_length() - 1
            # lowest index first, so prepend it to the product of the rest
            out[mask] = self.generators[i] * out[mask ^ low]
        return out

    @cached_property
    def _rotation_index(self) -> dict[SignedPermutation, int]:
        return {g.B: mask for mask, g in self._products.items()}

    def subsets(self, include_empty: bool = True) -> list[tuple[int, ...]]:
        start = 0 if include_empty else 1
        return [mask_subset(m) for m in range(start, 1 << self.k)]

    def word_element(self, subset: Iterable[int]) -> AffineElement:
        """Exact product gamma_{i_1} ... gamma_{i_r}."""
        return self._products[subset_mask(subset)]

    def rotation(self, subset: Iterable[int]) -> SignedPermutation:
        return self.word_element(subset).B

    def element(self, word: ReducedWord) -> AffineElement:
        w = self._products[word.mask]
        return w * AffineElement.translation(word.tail)

    def reduce(self, word: Sequence) -> ReducedWord:
        """Canonical form of a word in generators and lattice translations.

        Items are generator indices (1-based; -i for the inverse) or lattice
        vectors given as length-n sequences of integers.
        """
        g = AffineElement.identity(self.n)
        for item in word:
            if isinstance(item, int):
                gen = self.generators[abs(item) - 1]
                g = g * (gen if item > 0 else gen.inverse())
            else:
                vec = tuple(item)
                if len(vec) != self.n or as_int_vector(vec) is None:
                    raise ValueError(f"{vec} is not a lattice vector of Z^{self.n}")
                g = g * AffineElement.translation(vec)
        return self.reduce_element(g)

    def reduce_element(self, g: AffineElement) -> ReducedWord:
        mask = self._rotation_index.get(g.B)
        if mask is None:
            raise ValueError(f"rotation {g.B} is not in the holonomy group")
        base = self._products[mask]
        tail = as_int_vector([x - y for x, y in zip(g.b, base.b)])
        if tail is None:
            raise ValueError("element is not in the group")
        return ReducedWord(mask_subset(mask), tail)

    def holonomy_reps(self):
        """(subset, B_S, b_S mod Z^n) for all 2^k holonomy elements."""
        return [(mask_subset(m), g.B, frac_mod1(g.b)) for m, g in self._products.items()]

    def word_square(self, subset: Iterable[int]) -> tuple[int, ...]:
        """Lattice vector lam with w^2 = L_lam for the coset representative w of B_S.

        The representative is the product over the subset with its translation
        reduced into [0, 1)^n.
        """
        g = self.word_element(subset)
        rep = AffineElement(g.B, frac_mod1(g.b))
        return as_int_vector(rep.square_translation())

    def is_orientable(self) -> bool:
        return all(g.B.det() == 1 for g in self.generators)

    def is_diagonal_type(self) -> bool:
        return all(g.B.is_diagonal() and all((2 * x).denominator == 1 for x in g.b)
                   for g in self.generators)

    def double(self) -> "BieberbachGroup":
        gens = [(g.B.direct_sum(g.B), g.b + g.b) for g in self.generators]
        name = f"d{self.name}" if self.name else None
        return validate(2 * self.n, gens, name=name)

    def conjugate(self, C: SignedPermutation) -> "BieberbachGroup":
        """The group C Gamma C^{-1}, a change of orthonormal lattice basis."""
        gens = [(g.B.conjugate_by(C), C.apply(g.b)) for g in self.generators]
        return validate(self.n, gens, name=self.name)

    def with_generators(self, subsets: Sequence[Iterable[int]]) -> "BieberbachGroup":
        """Same group presented by the reduced-translation words of ``subsets``."""
        gens = []
        for s in subsets:
            g = self.word_element(s)
            gens.append((g.B, frac_mod1(g.b)))
        return validate(self.n, gens, name=self.name)


def validate(n: int, generators: Sequence, name: str | None = None) -> BieberbachGroup:
    """Check the Bieberbach conditions and return the group.

    ``generators`` holds AffineElements or (SignedPermutation, translation)
    pairs.  Raises ValidationError listing every violated condition.
    """
    gens = []
    for g in generators:
        if not isinstance(g, AffineElement):
            B, b = g
            if len(b) != B.n:
                raise ValidationError([Issue("DimensionMismatch",
                                             f"translation of length {len(b)} for a {B.n}x{B.n} B")])
            g = AffineElement(B, b)
        if g.n != n:
            raise ValidationError([Issue("DimensionMismatch",
                                         f"generator of dimension {g.n} in dimension {n}")])
        gens.append(g)
    issues: list[Issue] = []
    for i, g in enumerate(gens, 1):
        if not g.B.is_involution():
            issues.append(Issue("NotInvolution", f"B_{i} does not square to Id", {"gen": i}))
    for (i, g), (j, h) in itertools.combinations(enumerate(gens, 1), 2):
        if g.B @ h.B != h.B @ g.B:
            issues.append(Issue("NonCommuting", f"B_{i} and B_{j} do not commute",
                                {"gens": (i, j)}))
        elif as_int_vector([x - y for x, y in zip((g * h).b, (h * g).b)]) is None:
            issues.append(Issue("NonIntegralCommutator",
                                f"[gamma_{i}, gamma_{j}] is not a lattice translation",
                                {"gens": (i, j)}))
    if issues:
        raise ValidationError(issues)

    group = BieberbachGroup(n, gens, name=name)
    seen: dict[SignedPermutation, tuple[int, ...]] = {}
    for mask, w in group._products.items():
        S = mask_subset(mask)
        if w.B in seen:
            issues.append(Issue("HolonomyCollapse",
                                f"words {list(seen[w.B])} and {list(S)} share a rotation",
                                {"words": (seen[w.B], S)}))
        else:
            seen[w.B] = S
    for i, g in enumerate(gens, 1):
        if as_int_vector(g.square_translation()) is None:
            issues.append(Issue("NonIntegralSquare",
                                f"gamma_{i}^2 is not a lattice translation", {"gen": i}))
    if issues:
        raise ValidationError(issues)

    for mask, w in group._products.items():
        if not mask:
            continue
        lam = torsion_witness(w.B, w.b)
        if lam is not None:
            c = tuple(x + y for x, y in zip(w.b, lam))
            fixed_point = tuple(-x / 2 for x in c)
            S = mask_subset(mask)
            issues.append(Issue("Torsion",
                                f"word {list(S)} L_{list(lam)} fixes "
                                f"({', '.join(str(x) for x in fixed_point)})",
                                {"word": ReducedWord(S, lam), "fixed_point": fixed_point}))
    if issues:
        raise ValidationError(issues)
    return group


def torus(n: int) -> BieberbachGroup:
    return validate(n, [], name=f"T{n}")
