"""Exact arithmetic for signed permutations and rational matrices.

A signed permutation on V points is stored by rows: vertex i is sent to
``targets[i-1]`` with sign ``signs[i-1]``.  In matrix form this is the V x V
matrix with single non-zero entry ``signs[i-1]`` at position
``(i, targets[i-1])``, so ``compose(p, q)`` is the matrix product ``p * q``.

All arithmetic is exact; rational matrices use :class:`fractions.Fraction`
throughout and no floating point appears anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Rational = int | Fraction


class SizeMismatchError(ValueError):
    """Operands have incompatible dimensions."""


@dataclass(frozen=True)
class SignedPerm:
    """A signed permutation on ``size`` points (1-based)."""

    targets: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.targets)
        if len(self.signs) != n:
            raise ValueError("targets and signs must have equal length")
        if sorted(self.targets) != list(range(1, n + 1)):
            raise ValueError(f"targets {self.targets} are not a permutation of 1..{n}")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @property
    def size(self) -> int:
        return len(self.targets)

    @staticmethod
    def identity(n: int) -> "SignedPerm":
        return SignedPerm(tuple(range(1, n + 1)), (1,) * n)

    @staticmethod
    def from_image(image: Sequence[tuple[int, int]]) -> "SignedPerm":
        """Build from a sequence of ``(target, sign)`` pairs."""
        return SignedPerm(tuple(t for t, _ in image), tuple(s for _, s in image))

    def image(self, i: int) -> tuple[int, int]:
        """Target and sign of vertex ``i`` (1-based)."""
        return self.targets[i - 1], self.signs[i - 1]

    def encode(self) -> tuple[int, ...]:
        """Hashable encoding: target with the sign folded in."""
        return tuple(t * s for t, s in zip(self.targets, self.signs))

    def as_action(self) -> tuple[int, ...]:
        """The induced permutation of the 2n signed basis vectors.

        Point ``2*(i-1)`` stands for +e_i and ``2*(i-1)+1`` for -e_i; the map
        is a plain permutation of ``0 .. 2n-1``, which is how the group
        generated by adjacency matrices acts on a double cover.
        """
        out = [0] * (2 * self.size)
        for i, (t, s) in enumerate(zip(self.targets, self.signs)):
            flip = 1 if s < 0 else 0
            out[2 * i] = 2 * (t - 1) + flip
            out[2 * i + 1] = 2 * (t - 1) + (1 - flip)
        return tuple(out)

    def is_identity(self) -> bool:
        return all(t == i + 1 and s == 1 for i, (t, s) in enumerate(zip(self.targets, self.signs)))

    def is_involution(self) -> bool:
        return compose(self, self).is_identity()

    def is_symmetric(self) -> bool:
        """True iff the matrix form is symmetric."""
        for i, (t, s) in enumerate(zip(self.targets, self.signs), start=1):
            if self.targets[t - 1] != i or self.signs[t - 1] != s:
                return False
        return True

    def to_matrix(self) -> "RatMatrix":
        n = self.size
        rows = [[0] * n for _ in range(n)]
        for i, (t, s) in enumerate(zip(self.targets, self.signs)):
            rows[i][t - 1] = s
        return RatMatrix.from_rows(rows)


def compose(p: SignedPerm, q: SignedPerm) -> SignedPerm:
    """Matrix product ``p * q``; as a vertex map, p is applied first."""
    if p.size != q.size:
        raise SizeMismatchError(f"sizes {p.size} and {q.size} differ")
    qt, qs = q.targets, q.signs
    targets = []
    signs = []
    for t, s in zip(p.targets, p.signs):
        targets.append(qt[t - 1])
        signs.append(s * qs[t - 1])
    return SignedPerm(tuple(targets), tuple(signs))


def inverse(p: SignedPerm) -> SignedPerm:
    targets = [0] * p.size
    signs = [1] * p.size
    for i, (t, s) in enumerate(zip(p.targets, p.signs), start=1):
        targets[t - 1] = i
        signs[t - 1] = s
    return SignedPerm(tuple(targets), tuple(signs))


def trace(p: SignedPerm) -> int:
    """Signed number of fixed points, i.e. the matrix trace."""
    return sum(s for i, (t, s) in enumerate(zip(p.targets, p.signs), start=1) if t == i)


def kronecker(p: SignedPerm, q: SignedPerm) -> SignedPerm:
    """Kronecker product; point ``(i, j)`` becomes ``(i-1)*q.size + j``."""
    n = q.size
    targets = []
    signs = []
    for i, (ti, si) in enumerate(zip(p.targets, p.signs)):
        for tj, sj in zip(q.targets, q.signs):
            targets.append((ti - 1) * n + tj)
            signs.append(si * sj)
    return SignedPerm(tuple(targets), tuple(signs))


def shuffle_perm(m: int, n: int) -> SignedPerm:
    """The perfect-shuffle permutation S with S (A x B) S^-1 = B x A.

    Here ``A x B`` uses the index convention of :func:`kronecker` with A of
    size m and B of size n.
    """
    targets = [0] * (m * n)
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            targets[(i - 1) * n + (j - 1)] = (j - 1) * m + i
    return SignedPerm(tuple(targets), (1,) * (m * n))


def conjugate_by_diagonal(p: SignedPerm, signs: Sequence[int]) -> SignedPerm:
    """``D * p * D`` for the diagonal sign matrix D = diag(signs)."""
    if len(signs) != p.size:
        raise SizeMismatchError(f"got {len(signs)} signs for size {p.size}")
    if any(s not in (1, -1) for s in signs):
        raise ValueError("diagonal entries must be +1 or -1")
    new_signs = tuple(
        s * signs[i] * signs[t - 1] for i, (t, s) in enumerate(zip(p.targets, p.signs))
    )
    return SignedPerm(p.targets, new_signs)


def _as_fraction(x: Rational) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RatMatrix:
    """Dense matrix with exact rational entries."""

    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Rational]]) -> "RatMatrix":
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        return RatMatrix(tuple(tuple(_as_fraction(x) for x in r) for r in rows))

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return RatMatrix.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zero(rows: int, cols: int) -> "RatMatrix":
        return RatMatrix.from_rows([[0] * cols for _ in range(rows)])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise SizeMismatchError("shape mismatch in addition")
        return RatMatrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            )
        )

    def __neg__(self) -> "RatMatrix":
        return self.scale(-1)

    def scale(self, k: Rational) -> "RatMatrix":
        kf = _as_fraction(k)
        return RatMatrix(tuple(tuple(kf * x for x in r) for r in self.entries))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise SizeMismatchError("shape mismatch in product")
        cols = list(zip(*other.entries))
        return RatMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.entries
            )
        )

    def transpose(self) -> "RatMatrix":
        return RatMatrix(tuple(zip(*self.entries)))

    def kronecker(self, other: "RatMatrix") -> "RatMatrix":
        out = []
        for ra in self.entries:
            for rb in other.entries:
                out.append(tuple(a * b for a in ra for b in rb))
        return RatMatrix(tuple(out))

    def det(self) -> Fraction:
        if not self.is_square():
            raise SizeMismatchError("determinant of a non-square matrix")
        n = self.rows
        m = [list(r) for r in self.entries]
        det = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
            if pivot is None:
                return Fraction(0)
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = -det
            det *= m[col][col]
            inv = 1 / m[col][col]
            for r in range(col + 1, n):
                if m[r][col] == 0:
                    continue
                factor = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
        return det

    def is_invertible(self) -> bool:
        return self.is_square() and self.det() != 0

    def inverse(self) -> "RatMatrix":
        if not self.is_square():
            raise SizeMismatchError("inverse of a non-square matrix")
        n = self.rows
        m = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.entries)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            m[col], m[pivot] = m[pivot], m[col]
            inv = 1 / m[col][col]
            m[col] = [x * inv for x in m[col]]
            for r in range(n):
                if r != col and m[r][col] != 0:
                    factor = m[r][col]
                    m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
        return RatMatrix(tuple(tuple(row[n:]) for row in m))


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free Bareiss)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(map(int, r)) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
