"""Exact rational helpers shared by the clustering engines.

Proximities are read as decimal text, so every engine works on
:class:`fractions.Fraction` values built from the shortest decimal
representation of each float.  Rounding is then applied to the exact
value, which keeps tie detection reproducible bit for bit.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Union

Number = Union[int, float, Fraction]


def to_fraction(x: Number) -> Fraction:
    """Exact rational for *x*; floats go through their shortest repr."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"non-finite value: {x!r}")
    return Fraction(repr(x))


def round_fraction(q: Fraction, precision: int) -> Fraction:
    """Round half away from zero to *precision* decimal places."""
    if precision < 0:
        raise ValueError("precision must be non-negative")
    scale = 10**precision
    scaled = abs(q) * scale
    n = math.floor(scaled + Fraction(1, 2))
    if q < 0:
        n = -n
    return Fraction(n, scale)


def round_half_away(x: Number, precision: int) -> float:
    """Float-valued :func:`round_fraction`; never returns ``-0.0``."""
    return float(round_fraction(to_fraction(x), precision)) + 0.0


def settle(q: Fraction, precision: Optional[int]) -> Fraction:
    """Bring a freshly computed distance to its stored form.

    With a precision the value is rounded; without one it is snapped to
    the nearest float so denominators stay bounded.
    """
    if precision is None:
        return Fraction(float(q))
    return round_fraction(q, precision)


def format_fixed(x: float, precision: Optional[int]) -> str:
    """Locale-free fixed-point text; shortest repr when *precision* is None."""
    if precision is None:
        text = repr(float(x) + 0.0)
        return text
    text = f"{round_half_away(x, precision):.{precision}f}"
    if text.startswith("-") and float(text) == 0:
        text = text[1:]
    return text
