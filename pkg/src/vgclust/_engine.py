"""Plumbing shared by the pair-group and variable-group engines.

Both engines run on distances.  Weights are negated on the way in and
every reported height is negated back, so "merge the closest pair" means
"merge the largest weight" in weights mode.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Tuple

from .numeric import settle, to_fraction
from .proximity_io import Measure, ProximityData

Pair = Tuple[int, int]


def sign_of(measure: Measure) -> int:
    return -1 if measure is Measure.WEIGHT else 1


def initial_distances(data: ProximityData) -> Dict[Pair, Fraction]:
    sign = sign_of(data.measure)
    n = data.n
    dist = {}
    for i in range(n):
        for j in range(i + 1, n):
            q = to_fraction(data.values[i][j]) if data.precision is not None else Fraction(data.values[i][j])
            dist[(i, j)] = sign * settle(q, data.precision)
    return dist


def report(q: Fraction, sign: int) -> float:
    return float(sign * q) + 0.0


def key(a: int, b: int) -> Pair:
    return (a, b) if a < b else (b, a)
