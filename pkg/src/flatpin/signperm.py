"""Signed permutation matrices, the holonomy matrices of this package."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotInvolution


@dataclass(frozen=True)
class SignedPermutation:
    """Orthogonal integer matrix sending e_i to sign[i] * e_{image[i]}.

    Axes are 0-based internally; all text rendering uses 1-based axes.
    """

    image: tuple[int, ...]
    sign: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(i) for i in self.image)
        sign = tuple(int(s) for s in self.sign)
        if len(image) != len(sign):
            raise ValueError("image and sign lengths differ")
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"{image} is not a permutation")
        if any(s not in (1, -1) for s in sign):
            raise ValueError("signs must be +1 or -1")
        object.__setattr__(self, "image", image)
        object.__setattr__(self, "sign", sign)

    @property
    def n(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def diag(cls, signs: Sequence[int]) -> "SignedPermutation":
        return cls(tuple(range(len(signs))), tuple(signs))

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]]) -> "SignedPermutation":
        n = len(rows)
        image = [None] * n
        sign = [None] * n
        for i in range(n):
            column = [(r, rows[r][i]) for r in range(n) if rows[r][i] != 0]
            if len(column) != 1 or column[0][1] not in (1, -1):
                raise ValueError("matrix is not a signed permutation")
            image[i], sign[i] = column[0]
        return cls(tuple(image), tuple(sign))

    def matrix(self) -> list[list[int]]:
        m = [[0] * self.n for _ in range(self.n)]
        for i, (j, s) in enumerate(zip(self.image, self.sign)):
            m[j][i] = s
        return m

    def __matmul__(self, other: "SignedPermutation") -> "SignedPermutation":
        # (self @ other) e_i = self(other e_i)
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        image = tuple(self.image[other.image[i]] for i in range(self.n))
        sign = tuple(other.sign[i] * self.sign[other.image[i]] for i in range(self.n))
        return SignedPermutation(image, sign)

    def inverse(self) -> "SignedPermutation":
        image = [0] * self.n
        sign = [0] * self.n
        for i, (j, s) in enumerate(zip(self.image, self.sign)):
            image[j] = i
            sign[j] = s
        return SignedPermutation(tuple(image), tuple(sign))

    def apply(self, v: Sequence) -> tuple:
        out = [0] * self.n
        for i, (j, s) in enumerate(zip(self.image, self.sign)):
            out[j] = s * v[i]
        return tuple(out)

    def is_identity(self) -> bool:
        return self == SignedPermutation.identity(self.n)

    def is_involution(self) -> bool:
        return (self @ self).is_identity()

    def is_diagonal(self) -> bool:
        return all(j == i for i, j in enumerate(self.image))

    def det(self) -> int:
        d = 1
        for s in self.sign:
            d *= s
        seen = [False] * self.n
        for i in range(self.n):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self.image[j]
                length += 1
            if length % 2 == 0:
                d = -d
        return d

    def fixed_axes(self) -> list[int]:
        return [i for i in range(self.n) if self.image[i] == i and self.sign[i] == 1]

    def involution_blocks(self):
        """Split an involution into (fixed, flipped, two_cycles).

        two_cycles holds (p, q, s) with p < q and e_p -> s*e_q, e_q -> s*e_p.
        Raises NotInvolution otherwise, including 2-cycles with mixed signs.
        """
        fixed, flipped, cycles = [], [], []
        for i in range(self.n):
            j = self.image[i]
            if j == i:
                (fixed if self.sign[i] == 1 else flipped).append(i)
            elif self.image[j] != i:
                raise NotInvolution(f"axis {i + 1} lies on a cycle of length > 2")
            elif self.sign[i] != self.sign[j]:
                raise NotInvolution(
                    f"2-cycle ({i + 1} {j + 1}) has mixed signs; its square is -Id there")
            elif i < j:
                cycles.append((i, j, self.sign[i]))
        return fixed, flipped, cycles

    def cycle_type(self) -> tuple[int, int]:
        """(j, h): number of 2-cycles and of flipped axes of an involution."""
        _, flipped, cycles = self.involution_blocks()
        return len(cycles), len(flipped)

    def fixed_projection_sq(self, v: Sequence) -> Fraction:
        """Squared norm of the orthogonal projection of v onto ker(B - Id)."""
        fixed, _, cycles = self.involution_blocks()
        total = Fraction(0)
        for i in fixed:
            total += Fraction(v[i]) ** 2
        for p, q, s in cycles:
            total += (Fraction(v[p]) + s * Fraction(v[q])) ** 2 / 2
        return total

    def direct_sum(self, other: "SignedPermutation") -> "SignedPermutation":
        shift = self.n
        return SignedPermutation(
            self.image + tuple(j + shift for j in other.image), self.sign + other.sign)

    def conjugate_by(self, c: "SignedPermutation") -> "SignedPermutation":
        return c @ self @ c.inverse()

    def __str__(self):
        if self.is_diagonal():
            return "diag(" + ",".join(str(s) for s in self.sign) + ")"
        return "perm " + " ".join(self.tokens())

    def tokens(self) -> list[str]:
        """Cycle tokens in group-file syntax; only defined for involutions."""
        fixed, flipped, cycles = self.involution_blocks()
        by_axis = {}
        for i in fixed:
            by_axis[i] = f"{i + 1}+"
        for i in flipped:
            by_axis[i] = f"{i + 1}-"
        for p, q, s in cycles:
            by_axis[p] = f"({p + 1} {q + 1}){'+' if s == 1 else '-'}"
        return [by_axis[i] for i in sorted(by_axis)]
