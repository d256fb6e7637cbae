"""Linkage coefficients and the two distance-update formulas.

``pair_update`` is the classical Lance-Williams recurrence used when two
clusters are merged.  ``group_distance`` is its generalization to the
distance between two *superclusters* formed by several clusters merged at
once.  Both are evaluated in exact rational arithmetic; sizes enter as
integers and distances as the exact value of their decimal repr, and only
the final result is converted back to float.

Size notation: for a supercluster ``X_I`` made of clusters ``X_i`` (i in I),
``|I|`` is the number of member clusters and ``|X_I|`` is the total number
of individuals, ``sum(|X_i| for i in I)``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .numeric import Number, to_fraction


class Method(enum.Enum):
    SINGLE_LINKAGE = "Single Linkage"
    COMPLETE_LINKAGE = "Complete Linkage"
    UNWEIGHTED_AVERAGE = "Unweighted Average"
    WEIGHTED_AVERAGE = "Weighted Average"
    UNWEIGHTED_CENTROID = "Unweighted Centroid"
    WEIGHTED_CENTROID = "Weighted Centroid"
    WARD = "Ward"

    @property
    def slug(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, name: str) -> "Method":
        """Case-insensitive lookup; ``_``, ``-`` and spaces are equivalent."""
        key = re.sub(r"[\s_\-]+", "_", name.strip()).lower()
        aliases = {"ward_s": "ward", "wards": "ward", "ward_s_method": "ward"}
        key = aliases.get(key, key)
        for m in cls:
            if m.slug == key:
                return m
        choices = ", ".join(m.slug for m in cls)
        raise ValueError(f"unknown clustering method {name!r}; choose one of {choices}")


_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class PairCoefficients:
    alpha_i: Fraction
    alpha_i_prime: Fraction
    beta: Fraction
    gamma: Fraction


def pair_coefficients(method: Method, size_i: int, size_i2: int, size_j: int) -> PairCoefficients:
    ni, ni2, nj = size_i, size_i2, size_j
    if method is Method.SINGLE_LINKAGE:
        return PairCoefficients(_HALF, _HALF, Fraction(0), -_HALF)
    if method is Method.COMPLETE_LINKAGE:
        return PairCoefficients(_HALF, _HALF, Fraction(0), _HALF)
    if method is Method.UNWEIGHTED_AVERAGE:
        return PairCoefficients(Fraction(ni, ni + ni2), Fraction(ni2, ni + ni2), Fraction(0), Fraction(0))
    if method is Method.WEIGHTED_AVERAGE:
        return PairCoefficients(_HALF, _HALF, Fraction(0), Fraction(0))
    if method is Method.UNWEIGHTED_CENTROID:
        s = ni + ni2
        return PairCoefficients(Fraction(ni, s), Fraction(ni2, s), -Fraction(ni * ni2, s * s), Fraction(0))
    if method is Method.WEIGHTED_CENTROID:
        return PairCoefficients(_HALF, _HALF, Fraction(-1, 4), Fraction(0))
    if method is Method.WARD:
        s = ni + ni2 + nj
        return PairCoefficients(Fraction(ni + nj, s), Fraction(ni2 + nj, s), -Fraction(nj, s), Fraction(0))
    raise ValueError(method)


def pair_update_exact(
    method: Method, size_i: int, size_i2: int, size_j: int,
    d_ij: Fraction, d_i2j: Fraction, d_ii2: Fraction,
) -> Fraction:
    c = pair_coefficients(method, size_i, size_i2, size_j)
    return c.alpha_i * d_ij + c.alpha_i_prime * d_i2j + c.beta * d_ii2 + c.gamma * abs(d_ij - d_i2j)


def pair_update(
    method: Method, size_i: int, size_i2: int, size_j: int,
    d_ij: Number, d_i2j: Number, d_ii2: Number,
) -> float:
    """Distance from ``X_i ∪ X_i'`` to ``X_j`` after a pairwise merge.

    No rounding is applied; callers round to their working precision.
    """
    return float(pair_update_exact(
        method, size_i, size_i2, size_j,
        to_fraction(d_ij), to_fraction(d_i2j), to_fraction(d_ii2),
    ))


@dataclass(frozen=True)
class GroupCoefficients:
    """Coefficient functions for one method at given supercluster sizes.

    ``delta`` is ``None`` for the methods whose ``gamma`` vanishes.
    """

    method: Method
    sizes_i: Sequence[int]
    sizes_j: Sequence[int]

    @property
    def total_i(self) -> int:
        return sum(self.sizes_i)

    @property
    def total_j(self) -> int:
        return sum(self.sizes_j)

    @property
    def delta(self) -> Optional[int]:
        if self.method is Method.SINGLE_LINKAGE:
            return 0
        if self.method is Method.COMPLETE_LINKAGE:
            return 1
        return None

    def alpha(self, a: int, b: int) -> Fraction:
        m = self.method
        p, q = len(self.sizes_i), len(self.sizes_j)
        if m in (Method.UNWEIGHTED_AVERAGE, Method.UNWEIGHTED_CENTROID):
            return Fraction(self.sizes_i[a] * self.sizes_j[b], self.total_i * self.total_j)
        if m is Method.WARD:
            return Fraction(self.sizes_i[a] + self.sizes_j[b], self.total_i + self.total_j)
        return Fraction(1, p * q)

    def gamma(self, a: int, b: int) -> Fraction:
        if self.method in (Method.SINGLE_LINKAGE, Method.COMPLETE_LINKAGE):
            return Fraction(1, len(self.sizes_i) * len(self.sizes_j))
        return Fraction(0)

    def beta_i(self, a: int, a2: int) -> Fraction:
        return self._beta(self.sizes_i, self.total_i, self.total_j, a, a2)

    def beta_j(self, b: int, b2: int) -> Fraction:
        return self._beta(self.sizes_j, self.total_j, self.total_i, b, b2)

    def _beta(self, sizes, own_total, other_total, a, a2) -> Fraction:
        m = self.method
        if m is Method.UNWEIGHTED_CENTROID:
            return -Fraction(sizes[a] * sizes[a2], own_total * own_total)
        if m is Method.WEIGHTED_CENTROID:
            return -Fraction(1, len(sizes) ** 2)
        if m is Method.WARD:
            return -Fraction(other_total * (sizes[a] + sizes[a2]), own_total * (own_total + other_total))
        return Fraction(0)


@dataclass(frozen=True)
class GroupDistanceInput:
    """Distances needed to evaluate ``D(X_I, X_J)``.

    ``cross[a][b]`` is ``D(X_ia, X_jb)``; ``within_i`` / ``within_j`` are
    square tables of the distances among members of each side (only the
    strict upper triangle is read).
    """

    cross: Sequence[Sequence[Number]]
    within_i: Sequence[Sequence[Number]]
    within_j: Sequence[Sequence[Number]]
    sizes_i: Sequence[int]
    sizes_j: Sequence[int]

    @property
    def d_max(self) -> float:
        return max(max(row) for row in self.cross)

    @property
    def d_min(self) -> float:
        return min(min(row) for row in self.cross)

    def swapped(self) -> "GroupDistanceInput":
        cross_t = [list(col) for col in zip(*self.cross)]
        return GroupDistanceInput(cross_t, self.within_j, self.within_i, self.sizes_j, self.sizes_i)


def group_distance_exact(
    method: Method,
    cross: Sequence[Sequence[Fraction]],
    within_i: Sequence[Sequence[Fraction]],
    within_j: Sequence[Sequence[Fraction]],
    sizes_i: Sequence[int],
    sizes_j: Sequence[int],
) -> Fraction:
    p, q = len(sizes_i), len(sizes_j)
    if p == 1 and q == 1:
        return cross[0][0]
    coef = GroupCoefficients(method, tuple(sizes_i), tuple(sizes_j))
    total = Fraction(0)
    for a in range(p):
        for b in range(q):
            total += coef.alpha(a, b) * cross[a][b]
    for a in range(p):
        for a2 in range(a + 1, p):
            total += coef.beta_i(a, a2) * within_i[a][a2]
    for b in range(q):
        for b2 in range(b + 1, q):
            total += coef.beta_j(b, b2) * within_j[b][b2]
    delta = coef.delta
    if delta is not None:
        d_max = max(max(row) for row in cross)
        d_min = min(min(row) for row in cross)
        for a in range(p):
            for b in range(q):
                g = coef.gamma(a, b)
                if delta:
                    total += g * (d_max - cross[a][b])
                else:
                    total -= g * (cross[a][b] - d_min)
    return total


def group_distance(method: Method, data: GroupDistanceInput) -> float:
    """Distance between two superclusters formed in the same iteration."""

    def exact(table):
        return [[to_fraction(v) for v in row] for row in table]

    return float(group_distance_exact(
        method, exact(data.cross), exact(data.within_i), exact(data.within_j),
        data.sizes_i, data.sizes_j,
    ))
