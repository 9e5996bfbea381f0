"""Exact arithmetic in Cl+(n) and Cl-(n), the covering maps, and preimages.

Blades are n-bit masks: bit i-1 set means e_i occurs.  Cl+ has e_i^2 = +1,
Cl- has e_i^2 = -1; both have e_i e_j = -e_j e_i for i != j.
"""

from __future__ import annotations

import enum
from typing import Iterable, Mapping

from .dyadic import ONE, RootTwoDyadic
from .errors import (ConventionMismatch, NotInvolution, NotPinElement,
                     NotSignedPermutation)
from .signperm import SignedPermutation

MAX_DIM = 64


class Convention(enum.Enum):
    PLUS = "pin+"
    MINUS = "pin-"
    SPIN = "spin"

    @property
    def algebra(self) -> "Convention":
        # spin structures are computed inside Cl+
        return Convention.MINUS if self is Convention.MINUS else Convention.PLUS

    @property
    def q(self) -> int:
        return -1 if self is Convention.MINUS else 1

    @classmethod
    def parse(cls, text) -> "Convention":
        if isinstance(text, Convention):
            return text
        aliases = {"pin+": cls.PLUS, "+": cls.PLUS, "plus": cls.PLUS,
                   "pin-": cls.MINUS, "-": cls.MINUS, "minus": cls.MINUS,
                   "spin": cls.SPIN}
        try:
            return aliases[str(text).lower()]
        except KeyError:
            raise ValueError(f"unknown convention {text!r}") from None


def blade_mul(x: int, y: int, n: int, convention: Convention) -> tuple[int, int]:
    """Product of basis blades x*y as (sign, blade)."""
    if (x | y) >> n:
        raise ValueError(f"blade outside dimension {n}")
    swaps = 0
    rest = y
    while rest:
        low = rest & -rest
        j = low.bit_length() - 1
        swaps += (x >> (j + 1)).bit_count()
        rest ^= low
    sign = -1 if swaps & 1 else 1
    if Convention.parse(convention).q == -1 and (x & y).bit_count() & 1:
        sign = -sign
    return sign, x ^ y


def blade_from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        if i < 1:
            raise ValueError("generator indices are 1-based")
        mask |= 1 << (i - 1)
    return mask


def blade_indices(mask: int) -> list[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class CliffordElement:
    """Sparse element of Cl+(n) or Cl-(n) with RootTwoDyadic coefficients."""

    __slots__ = ("n", "convention", "terms")

    def __init__(self, n: int, convention: Convention,
                 terms: Mapping[int, object] | None = None):
        if not 0 <= n <= MAX_DIM:
            raise ValueError(f"dimension must lie in 0..{MAX_DIM}")
        self.n = n
        self.convention = Convention.parse(convention).algebra
        clean = {}
        for mask, coef in (terms or {}).items():
            if mask < 0 or mask >> n:
                raise ValueError(f"blade {mask:b} outside dimension {n}")
            coef = RootTwoDyadic.coerce(coef)
            if coef:
                clean[mask] = coef
        self.terms = clean

    @classmethod
    def scalar(cls, n, convention, value=1) -> "CliffordElement":
        return cls(n, convention, {0: value})

    @classmethod
    def vector(cls, n, convention, coords: Mapping[int, object]) -> "CliffordElement":
        """Vector sum of coef * e_i, keys are 1-based axes."""
        return cls(n, convention, {1 << (i - 1): c for i, c in coords.items()})

    @classmethod
    def blade(cls, n, convention, indices: Iterable[int], coef=1) -> "CliffordElement":
        indices = list(indices)
        if sorted(indices) == indices and len(set(indices)) == len(indices):
            return cls(n, convention, {blade_from_indices(indices): coef})
        out = cls.scalar(n, convention, coef)
        for i in indices:
            out = out * cls(n, convention, {1 << (i - 1): 1})
        return out

    def _check(self, other: "CliffordElement"):
        if self.n != other.n or self.convention is not other.convention:
            raise ConventionMismatch(
                f"Cl{self.convention.value[-1]}({self.n}) vs "
                f"Cl{other.convention.value[-1]}({other.n})")

    def _promote(self, other) -> "CliffordElement":
        if isinstance(other, CliffordElement):
            self._check(other)
            return other
        return CliffordElement.scalar(self.n, self.convention, other)

    def __add__(self, other):
        other = self._promote(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return CliffordElement(self.n, self.convention, terms)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement(self.n, self.convention,
                               {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._promote(other))

    def __rsub__(self, other):
        return self._promote(other) - self

    def __mul__(self, other):
        if not isinstance(other, CliffordElement):
            try:
                c = RootTwoDyadic.coerce(other)
            except TypeError:
                return NotImplemented
            return CliffordElement(self.n, self.convention,
                                   {m: v * c for m, v in self.terms.items()})
        return elem_mul(self, other)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if isinstance(other, CliffordElement):
            return (self.n, self.convention, self.terms) == (
                other.n, other.convention, other.terms)
        try:
            return self.terms == CliffordElement.scalar(
                self.n, self.convention, other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.n, self.convention, frozenset(self.terms.items())))

    def scalar_part(self):
        """The value if this element is a pure scalar, else None."""
        if not self.terms:
            return RootTwoDyadic(0)
        if set(self.terms) == {0}:
            return self.terms[0]
        return None

    def grades(self) -> set[int]:
        return {m.bit_count() for m in self.terms}

    def __repr__(self):
        return f"CliffordElement({self.n}, {self.convention.name}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mask in sorted(self.terms, key=lambda m: (m.bit_count(), blade_indices(m))):
            coef = self.terms[mask]
            name = "".join(f"e{i}" for i in blade_indices(mask))
            text = str(coef)
            if not name:
                body = text
            elif coef == 1:
                body = name
            elif coef == -1:
                body = "-" + name
            elif coef.a and coef.b:
                body = f"({text})*{name}"
            else:
                body = f"{text}*{name}"
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def elem_mul(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    """Bilinear extension of blade_mul."""
    x._check(y)
    acc: dict[int, RootTwoDyadic] = {}
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            s, m = blade_mul(mx, my, x.n, x.convention)
            c = cx * cy
            acc[m] = acc.get(m, 0) + (c if s == 1 else -c)
    return CliffordElement(x.n, x.convention, acc)


def grade_involution(x: CliffordElement) -> CliffordElement:
    return CliffordElement(x.n, x.convention, {
        m: (-c if m.bit_count() & 1 else c) for m, c in x.terms.items()})


def reversal(x: CliffordElement) -> CliffordElement:
    def flip(m):
        g = m.bit_count()
        return (g * (g - 1) // 2) & 1

    return CliffordElement(x.n, x.convention, {
        m: (-c if flip(m) else c) for m, c in x.terms.items()})


def norm_sign(u: CliffordElement) -> int:
    """u * reversal(u) as +1 or -1; NotPinElement if it is not such a scalar."""
    s = (u * reversal(u)).scalar_part()
    if s is None or s not in (1, -1):
        raise NotPinElement(f"{u} * reversal({u}) is not +-1")
    return 1 if s == 1 else -1


def inverse(u: CliffordElement) -> CliffordElement:
    return reversal(u) * norm_sign(u)


def mu_apply(u: CliffordElement) -> SignedPermutation:
    """The orthogonal map x -> alpha(u) x u^{-1}, required to be a signed permutation."""
    u_inv = inverse(u)
    alpha_u = grade_involution(u)
    image, sign = [], []
    for i in range(u.n):
        e_i = CliffordElement(u.n, u.convention, {1 << i: 1})
        out = alpha_u * e_i * u_inv
        if len(out.terms) != 1:
            raise NotSignedPermutation(f"image of e{i + 1} is {out}")
        (mask, coef), = out.terms.items()
        if mask.bit_count() != 1 or coef not in (1, -1):
            raise NotSignedPermutation(f"image of e{i + 1} is {out}")
        image.append(mask.bit_length() - 1)
        sign.append(1 if coef == 1 else -1)
    try:
        return SignedPermutation(tuple(image), tuple(sign))
    except ValueError as exc:
        raise NotSignedPermutation(str(exc)) from None


def u_pre(B: SignedPermutation, convention) -> CliffordElement:
    """Distinguished preimage of an involutive signed permutation under mu.

    Factors, in ascending order of their least axis: e_i for a flipped axis,
    (sqrt2/2)(e_p - s e_q) for a 2-cycle e_p -> s e_q.
    """
    convention = Convention.parse(convention)
    _, flipped, cycles = B.involution_blocks()
    factors = [(i, {i + 1: 1}) for i in flipped]
    h = RootTwoDyadic.sqrt2_over_2()
    factors += [(p, {p + 1: h, q + 1: -s * h}) for p, q, s in cycles]
    factors.sort(key=lambda f: f[0])
    out = CliffordElement.scalar(B.n, convention)
    for _, coords in factors:
        out = out * CliffordElement.vector(B.n, convention, coords)
    return out


def u_square_formula(j: int, h: int, convention) -> int:
    """Closed-form square of the preimage of an involution with j 2-cycles and h flips."""
    if j < 0 or h < 0:
        raise ValueError("j and h must be non-negative")
    if Convention.parse(convention).algebra is Convention.PLUS:
        exponent = j * h + j // 2 + h // 2
    else:
        exponent = j * h + (j + 1) // 2 + (h + 1) // 2
    return -1 if exponent & 1 else 1


def u_square(B: SignedPermutation, convention) -> int:
    """Square of u_pre(B) computed in the algebra, as +1 or -1."""
    u = u_pre(B, convention)
    s = (u * u).scalar_part()
    if s is None or s not in (1, -1):
        raise NotInvolution(f"square of preimage of {B} is {u * u}")
    return 1 if s == ONE else -1
