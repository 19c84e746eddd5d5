"""Closed formulas for trees and rooted forests of K_{m,n,p}, plus their sum forms.

The sum forms expand each count over the root profile (l, k) of the bipartite forest
left behind when H_p is peeled off. They share nothing with the closed forms except
``exact_math`` and the bipartite base count, so the two families check each other.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from forest_census.errors import InvalidInputError, UnsupportedInputError
from forest_census.graph.models import PartSizes
from forest_census.services.exact_math import BigCount, binomial, product_to_count, signed_power

logger = logging.getLogger(__name__)

QUANTITIES = ("trees", "rooted-trees", "forests-r", "total-forests")


@dataclass(frozen=True)
class FormulaRequest:
    parts: PartSizes
    l: Optional[int] = None
    k: Optional[int] = None
    r: Optional[int] = None

    def __post_init__(self) -> None:
        bounds = (("l", self.l, self.parts.m), ("k", self.k, self.parts.n), ("r", self.r, self.parts.p))
        for name, value, upper in bounds:
            if value is not None and not 0 <= value <= upper:
                raise InvalidInputError(f"{name}={value} is outside 0..{upper}")


def _require_vertices(parts: PartSizes) -> None:
    if parts.total == 0:
        raise InvalidInputError("all part sizes are zero")


def _require_root_count(parts: PartSizes, r: int) -> None:
    if r < 1:
        raise InvalidInputError(f"r must be at least 1, got {r}")
    if r > parts.p:
        raise InvalidInputError(f"r={r} exceeds p={parts.p}")


def bipartite_forest_count(m: int, l: int, n: int, k: int) -> BigCount:
    """Rooted spanning forests of K_{m,n} with l roots in H_m and k roots in H_n."""
    if m < 0 or n < 0 or m + n < 1:
        raise InvalidInputError(f"K_{{{m},{n}}} needs m + n >= 1")
    if not 0 <= l <= m or not 0 <= k <= n:
        raise InvalidInputError(f"root counts l={l}, k={k} outside 0..{m}, 0..{n}")
    if m == 0 or n == 0:
        # edgeless: every vertex is its own root
        return 1 if (l, k) == (m, n) else 0
    factor = k * m + l * n - l * k
    if factor == 0:
        return 0
    return product_to_count(
        [
            Fraction(binomial(m, l)),
            Fraction(binomial(n, k)),
            signed_power(n, m - l - 1),
            signed_power(m, n - k - 1),
            Fraction(factor),
        ]
    )


def tripartite_tree_count(parts: PartSizes) -> BigCount:
    _require_vertices(parts)
    m, n, p = parts.as_tuple()
    return product_to_count(
        [
            signed_power(m + n, p - 1),
            signed_power(m + p, n - 1),
            signed_power(n + p, m - 1),
            Fraction(m + n + p),
        ]
    )


def rooted_tree_count_root_in_part(parts: PartSizes) -> BigCount:
    if parts.p < 1:
        raise InvalidInputError("no vertices in H_p to root at")
    return parts.p * tripartite_tree_count(parts)


def forest_count_r_roots_in_part(parts: PartSizes, r: int) -> BigCount:
    _require_root_count(parts, r)
    m, n, p = parts.as_tuple()
    return product_to_count(
        [
            Fraction(binomial(p, r)),
            Fraction(r),
            signed_power(m + n, p - r),
            signed_power(m + p, n - 1),
            signed_power(n + p, m - 1),
            Fraction(m + n + p),
        ]
    )


def total_rooted_forest_count(parts: PartSizes) -> BigCount:
    _require_vertices(parts)
    m, n, p = parts.as_tuple()
    return product_to_count(
        [
            signed_power(m + n + 1, p - 1),
            signed_power(m + p + 1, n - 1),
            signed_power(n + p + 1, m - 1),
            Fraction((m + n + p + 1) ** 2),
        ]
    )


def tree_count_via_sum(parts: PartSizes) -> BigCount:
    m, n, p = parts.as_tuple()
    if p < 1 or m + n < 1:
        raise InvalidInputError("the sum form needs p >= 1 and m + n >= 1")
    total = Fraction(0)
    for l in range(m + 1):
        for k in range(n + 1):
            base = bipartite_forest_count(m, l, n, k)
            if base == 0:
                continue
            total += base * signed_power(m + n, p - 1) * signed_power(p, l + k - 1)
    return product_to_count([total])


def forest_count_via_sum(parts: PartSizes, r: int) -> BigCount:
    _require_root_count(parts, r)
    m, n, p = parts.as_tuple()
    if m + n < 1:
        raise UnsupportedInputError("the sum form needs m + n >= 1")
    total = Fraction(0)
    for l in range(m + 1):
        for k in range(n + 1):
            base = bipartite_forest_count(m, l, n, k)
            if base == 0:
                continue
            total += base * signed_power(m + n, p - r) * signed_power(p, l + k - 1) * r
    return product_to_count([binomial(p, r) * total])


def total_via_sum(parts: PartSizes) -> BigCount:
    m, n, p = parts.as_tuple()
    if m + n < 1:
        raise UnsupportedInputError("K_{0,0,p} has no bipartite base; the sum form is undefined")
    total = Fraction(0)
    for l in range(m + 1):
        for k in range(n + 1):
            base = bipartite_forest_count(m, l, n, k)
            if base == 0:
                continue
            for r in range(p + 1):
                total += (
                    binomial(p, r)
                    * base
                    * signed_power(m + n, p - r)
                    * (r + 1)
                    * signed_power(p + 1, l + k - 1)
                )
    return product_to_count([total])


def collapse_identity_check(s: int, p: int, r: int) -> Tuple[BigCount, BigCount]:
    """Both sides of sum_t C(s,t)(p-r)^t (r+1)^(s+1-t) = (r+1)(p+1)^s."""
    if s < 0 or not 0 <= r <= p:
        raise InvalidInputError(f"need s >= 0 and 0 <= r <= p, got s={s}, p={p}, r={r}")
    lhs = sum(
        (binomial(s, t) * signed_power(p - r, t) * signed_power(r + 1, s + 1 - t) for t in range(s + 1)),
        Fraction(0),
    )
    rhs = (r + 1) * signed_power(p + 1, s)
    return product_to_count([lhs]), product_to_count([rhs])


def root_closing_collapse_check(s: int, p: int, r: int, printed_reading: bool = False) -> Tuple[BigCount, BigCount]:
    """Both sides of sum_t C(s,t) q^t r^(s+1-t) = r p^s for the r-roots construction.

    ``q`` is the number of merge targets per step: p - r (the non-root H_p vertices)
    or, with ``printed_reading``, p - 1. Only the former holds for every r.
    """
    if s < 0 or not 1 <= r <= p:
        raise InvalidInputError(f"need s >= 0 and 1 <= r <= p, got s={s}, p={p}, r={r}")
    q = p - 1 if printed_reading else p - r
    lhs = sum(
        (binomial(s, t) * signed_power(q, t) * signed_power(r, s + 1 - t) for t in range(s + 1)),
        Fraction(0),
    )
    return product_to_count([lhs]), product_to_count([r * signed_power(p, s)])


def evaluate(request: FormulaRequest, quantity: str) -> BigCount:
    parts = request.parts
    logger.debug("closed form %s for %s r=%s", quantity, parts.as_tuple(), request.r)
    if quantity == "trees":
        return tripartite_tree_count(parts)
    if quantity == "rooted-trees":
        return rooted_tree_count_root_in_part(parts)
    if quantity == "forests-r":
        if request.r is None:
            raise InvalidInputError("forests-r needs r")
        return forest_count_r_roots_in_part(parts, request.r)
    if quantity == "total-forests":
        return total_rooted_forest_count(parts)
    raise InvalidInputError(f"unknown quantity {quantity!r}")


def evaluate_sum_form(request: FormulaRequest, quantity: str) -> BigCount:
    parts = request.parts
    logger.debug("sum form %s for %s r=%s", quantity, parts.as_tuple(), request.r)
    if quantity == "trees":
        return tree_count_via_sum(parts)
    if quantity == "rooted-trees":
        return forest_count_via_sum(parts, 1)
    if quantity == "forests-r":
        if request.r is None:
            raise InvalidInputError("forests-r needs r")
        return forest_count_via_sum(parts, request.r)
    if quantity == "total-forests":
        return total_via_sum(parts)
    raise InvalidInputError(f"unknown quantity {quantity!r}")
