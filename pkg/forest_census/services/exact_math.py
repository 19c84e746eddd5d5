from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, List, Sequence, Tuple

from forest_census.errors import DomainError, FormulaError, InvalidInputError


BigCount = int
BigFraction = Fraction


@dataclass(frozen=True)
class IntMatrix:
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        size = len(self.rows)
        for row in self.rows:
            if len(row) != size:
                raise InvalidInputError(f"matrix is not square: row of length {len(row)} in dimension {size}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return cls(rows=tuple(tuple(int(value) for value in row) for row in rows))

    @classmethod
    def identity(cls, dimension: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(dimension)] for i in range(dimension)])

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.rows[i][j]

    def plus(self, other: "IntMatrix") -> "IntMatrix":
        if other.dimension != self.dimension:
            raise InvalidInputError("matrix dimensions differ")
        return IntMatrix.from_rows(
            [a + b for a, b in zip(row, other_row)] for row, other_row in zip(self.rows, other.rows)
        )

    def without(self, indices: Iterable[int]) -> "IntMatrix":
        """Principal submatrix with the given rows and columns deleted."""
        dropped = set(indices)
        keep = [i for i in range(self.dimension) if i not in dropped]
        return IntMatrix.from_rows([self.rows[i][j] for j in keep] for i in keep)


def binomial(n: int, k: int) -> BigCount:
    if n < 0:
        raise InvalidInputError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def signed_power(base: int, exp: int) -> BigFraction:
    """``base ** exp`` as an exact fraction, with 0^0 = 1."""
    if base < 0:
        raise InvalidInputError(f"signed_power needs a non-negative base, got {base}")
    if exp >= 0:
        return Fraction(base**exp)
    if base == 0:
        raise DomainError(f"0 raised to negative exponent {exp}")
    return Fraction(1, base ** (-exp))


def det_bareiss(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = a.dimension
    if n == 0:
        return 1
    work: List[List[int]] = [list(row) for row in a.rows]
    sign = 1
    previous = 1
    for k in range(n - 1):
        if work[k][k] == 0:
            for i in range(k + 1, n):
                if work[i][k] != 0:
                    work[k], work[i] = work[i], work[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = work[k][k]
        row_k = work[k]
        for i in range(k + 1, n):
            row_i = work[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                row_i[j] = (pivot * row_i[j] - lead * row_k[j]) // previous
            row_i[k] = 0
        previous = pivot
    return sign * work[n - 1][n - 1]


def product_to_count(factors: Sequence[BigFraction]) -> BigCount:
    result = Fraction(1)
    for factor in factors:
        result *= factor
    if result.denominator != 1:
        raise FormulaError(f"formula product {result} is not an integer")
    if result < 0:
        raise FormulaError(f"formula product {result} is negative")
    return int(result)
