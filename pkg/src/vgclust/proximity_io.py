"""Reading proximity matrices from text.

Two layouts are accepted.  A *matrix-like* file holds one matrix row per
line, optionally with a label row or a label column (never both).  A
*list-like* file holds one ``label label value`` triple per line.  Fields
may be separated by spaces, tabs, ``;``, ``,`` or ``|``; separators may be
mixed within a line.  Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .numeric import round_half_away, to_fraction

SEPARATORS = (" ", "\t", ";", ",", "|")

_SPLIT = re.compile(r"[ \t]*[;,|][ \t]*|[ \t]+")
_NUMBER = re.compile(r"^[+-]?(?:\d+(?:\.(\d*))?|\.(\d+))(?:[eE]([+-]?\d+))?$")


class Measure(enum.Enum):
    DISTANCE = "distances"
    WEIGHT = "weights"

    @classmethod
    def parse(cls, name: str) -> "Measure":
        key = name.strip().lower()
        for m in cls:
            if key in (m.value, m.value[:-1]):
                return m
        raise ValueError(f"unknown measure type: {name!r} (expected distances or weights)")


class FormatKind(enum.Enum):
    MATRIX_LIKE = "matrix"
    LIST_LIKE = "list"


class ProximityFormatError(ValueError):
    """Base class for every input-format problem."""


class EmptyInputError(ProximityFormatError):
    pass


class EmptyFieldError(ProximityFormatError):
    def __init__(self, line_no: int):
        self.line_no = line_no
        super().__init__(f"line {line_no}: empty field between separators")


class AsymmetricMatrixError(ProximityFormatError):
    def __init__(self, i: int, j: int, a: float, b: float):
        self.i, self.j, self.values = i, j, (a, b)
        super().__init__(f"matrix not symmetric at ({i}, {j}): {a!r} != {b!r}")


class NonZeroDiagonalError(ProximityFormatError):
    def __init__(self, i: int, value: float):
        self.i, self.value = i, value
        super().__init__(f"diagonal entry {i} is {value!r}, expected 0")


class RaggedRowsError(ProximityFormatError):
    def __init__(self, line_no: int, detail: str = ""):
        self.line_no = line_no
        super().__init__(f"line {line_no}: row length does not fit a square matrix{detail}")


class LabelsBothRowAndColumnError(ProximityFormatError):
    def __init__(self):
        super().__init__("labels given both as first row and first column")


class NonNumericCellError(ProximityFormatError):
    def __init__(self, line_no: int, col: int, token: str):
        self.line_no, self.col, self.token = line_no, col, token
        super().__init__(f"line {line_no}, field {col}: not a number: {token!r}")


class DuplicateLabelError(ProximityFormatError):
    def __init__(self, label: str):
        self.label = label
        super().__init__(f"duplicate label: {label!r}")


class BadFieldCountError(ProximityFormatError):
    def __init__(self, line_no: int, count: int):
        self.line_no, self.count = line_no, count
        super().__init__(f"line {line_no}: expected 3 fields, found {count}")


class SelfDistanceLineError(ProximityFormatError):
    def __init__(self, line_no: int, label: str):
        self.line_no, self.label = line_no, label
        super().__init__(f"line {line_no}: self-proximity for {label!r} must not be listed")


class ConflictingSymmetricPairError(ProximityFormatError):
    def __init__(self, a: str, b: str, v: float, w: float):
        self.a, self.b, self.v, self.w = a, b, v, w
        super().__init__(f"pair ({a}, {b}) listed with different values {v!r} and {w!r}")


class MissingPairError(ProximityFormatError):
    def __init__(self, a: str, b: str):
        self.a, self.b = a, b
        super().__init__(f"no value given for pair ({a}, {b})")


class ValueOutOfUnitIntervalError(ProximityFormatError):
    def __init__(self, i: int, j: int, value: float):
        self.i, self.j, self.value = i, j, value
        super().__init__(f"similarity at ({i}, {j}) is {value!r}, outside [0, 1]")


@dataclass(frozen=True)
class ProximityData:
    """Labeled symmetric proximity matrix.

    ``precision`` is the number of decimal places kept by the clustering
    engines; ``None`` disables rounding.  ``source_decimals`` records the
    largest count of decimals seen in the input text, when parsed.
    """

    labels: Tuple[str, ...]
    values: Tuple[Tuple[float, ...], ...]
    measure: Measure = Measure.DISTANCE
    precision: Optional[int] = None
    source_decimals: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        labels = tuple(str(lab) for lab in self.labels)
        values = tuple(tuple(float(v) for v in row) for row in self.values)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "values", values)
        n = len(labels)
        if n < 2:
            raise ProximityFormatError("at least two items are required")
        if len(values) != n or any(len(row) != n for row in values):
            raise ProximityFormatError(f"values must be a {n}x{n} matrix")
        seen = set()
        for lab in labels:
            if not lab or any(s in lab for s in SEPARATORS) or "\n" in lab:
                raise ProximityFormatError(f"invalid label: {lab!r}")
            if lab in seen:
                raise DuplicateLabelError(lab)
            seen.add(lab)
        for i in range(n):
            if self.measure is Measure.DISTANCE and values[i][i] != 0:
                raise NonZeroDiagonalError(i, values[i][i])
            for j in range(i + 1, n):
                if values[i][j] != values[j][i]:
                    raise AsymmetricMatrixError(i, j, values[i][j], values[j][i])
        if self.precision is not None and self.precision < 0:
            raise ValueError("precision must be non-negative")

    @property
    def n(self) -> int:
        return len(self.labels)


def _decimals(token: str) -> Optional[int]:
    """Decimal places written in a numeric token, or None if not numeric."""
    m = _NUMBER.match(token)
    if m is None:
        return None
    frac = m.group(1) if m.group(1) is not None else (m.group(2) or "")
    exp = int(m.group(3)) if m.group(3) else 0
    return max(0, len(frac) - exp)


def _is_number(token: str) -> bool:
    return _NUMBER.match(token) is not None


def tokenize(line: str, line_no: int = 0) -> List[str]:
    """Split a data line on any mix of the accepted separators."""
    fields = _SPLIT.split(line.strip(" \t\r"))
    if any(f == "" for f in fields):
        raise EmptyFieldError(line_no)
    return fields


def _data_lines(text: str) -> List[Tuple[int, List[str]]]:
    rows = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        rows.append((line_no, tokenize(line, line_no)))
    if not rows:
        raise EmptyInputError("input contains no data lines")
    return rows


def _matrix_shape(rows) -> Optional[str]:
    """Classify token rows as 'plain', 'row', 'column' or 'both' layouts."""
    m = len(rows)
    first = len(rows[0][1])
    rest = {len(toks) for _, toks in rows[1:]}
    if len(rest) > 1:
        return None
    k = rest.pop() if rest else first
    if first == k == m:
        return "plain"
    if first == k == m - 1:
        return "row"
    if first == k == m + 1:
        return "column"
    if k == m and first in (m - 1, m):
        return "both"
    return None


def _split_matrix(rows, shape):
    """Return (labels or None, numeric token grid with line numbers)."""
    if shape == "plain":
        row_tokens = [toks for _, toks in rows]
        col_labels = all(not _is_number(toks[0]) for toks in row_tokens)
        head_labels = all(not _is_number(t) for t in row_tokens[0])
        if col_labels and head_labels:
            raise LabelsBothRowAndColumnError()
        return None, [(ln, toks) for ln, toks in rows]
    if shape == "row":
        return list(rows[0][1]), [(ln, toks) for ln, toks in rows[1:]]
    if shape == "column":
        return [toks[0] for _, toks in rows], [(ln, toks[1:]) for ln, toks in rows]
    raise LabelsBothRowAndColumnError()


def _looks_like_matrix(rows) -> bool:
    shape = _matrix_shape(rows)
    if shape is None or shape == "both":
        return False
    try:
        _, grid = _split_matrix(rows, shape)
    except ProximityFormatError:
        return False
    if not all(_is_number(t) for _, toks in grid for t in toks):
        return False
    vals = [[float(t) for t in toks] for _, toks in grid]
    n = len(vals)
    return all(vals[i][j] == vals[j][i] for i in range(n) for j in range(i + 1, n))


def detect_format(text: str) -> FormatKind:
    """Guess whether *text* is matrix-like or list-like.

    A file is list-like when every line has three fields with a numeric
    third field and the lines do not also form a symmetric numeric matrix
    (optionally labeled).  Anything ambiguous is treated as matrix-like.
    """
    rows = _data_lines(text)
    list_candidate = all(len(toks) == 3 and _is_number(toks[2]) for _, toks in rows)
    if list_candidate and not _looks_like_matrix(rows):
        return FormatKind.LIST_LIKE
    return FormatKind.MATRIX_LIKE


def parse_matrix(text: str, measure: Measure = Measure.DISTANCE) -> ProximityData:
    rows = _data_lines(text)
    shape = _matrix_shape(rows)
    if shape is None:
        lengths = [len(toks) for _, toks in rows]
        expected = lengths[1] if len(lengths) > 1 else lengths[0]
        for ln, toks in rows[1:]:
            if len(toks) != expected:
                raise RaggedRowsError(ln)
        raise RaggedRowsError(rows[0][0], f" ({len(rows)} rows of {expected} fields)")
    labels, grid = _split_matrix(rows, shape)
    n = len(grid)
    values = []
    decimals = 0
    for ln, toks in grid:
        row = []
        for col, tok in enumerate(toks, start=1):
            d = _decimals(tok)
            if d is None:
                raise NonNumericCellError(ln, col, tok)
            decimals = max(decimals, d)
            row.append(float(tok))
        values.append(row)
    if labels is None:
        labels = [str(i) for i in range(1, n + 1)]
    for i in range(n):
        if values[i][i] != 0:
            if measure is Measure.DISTANCE:
                raise NonZeroDiagonalError(i, values[i][i])
        for j in range(i + 1, n):
            if values[i][j] != values[j][i]:
                raise AsymmetricMatrixError(i, j, values[i][j], values[j][i])
    return ProximityData(labels, values, measure, decimals, decimals)


def parse_list(text: str, measure: Measure = Measure.DISTANCE) -> ProximityData:
    rows = _data_lines(text)
    labels: List[str] = []
    index = {}
    pairs = {}
    decimals = 0
    for ln, toks in rows:
        if len(toks) != 3:
            raise BadFieldCountError(ln, len(toks))
        a, b, tok = toks
        d = _decimals(tok)
        if d is None:
            raise NonNumericCellError(ln, 3, tok)
        if a == b:
            raise SelfDistanceLineError(ln, a)
        decimals = max(decimals, d)
        for lab in (a, b):
            if lab not in index:
                index[lab] = len(labels)
                labels.append(lab)
        v = float(tok)
        key = (min(index[a], index[b]), max(index[a], index[b]))
        if key in pairs and pairs[key] != v:
            first, second = (a, b) if index[a] < index[b] else (b, a)
            raise ConflictingSymmetricPairError(first, second, pairs[key], v)
        pairs[key] = v
    n = len(labels)
    values = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in pairs:
                raise MissingPairError(labels[i], labels[j])
            values[i][j] = values[j][i] = pairs[(i, j)]
    return ProximityData(labels, values, measure, decimals, decimals)


def parse_proximity(text: str, measure: Measure = Measure.DISTANCE) -> ProximityData:
    if detect_format(text) is FormatKind.LIST_LIKE:
        return parse_list(text, measure)
    return parse_matrix(text, measure)


def load_proximity(path, measure: Measure = Measure.DISTANCE) -> ProximityData:
    text = Path(path).read_text(encoding="utf-8")
    return parse_proximity(text, measure)


def infer_precision(data: ProximityData) -> int:
    """Largest number of decimal places among the off-diagonal values.

    Uses the decimals as written in the source text when available, so
    trailing zeros count; otherwise falls back to each float's repr.
    """
    if data.source_decimals is not None:
        return data.source_decimals
    best = 0
    n = data.n
    for i in range(n):
        for j in range(i + 1, n):
            q = to_fraction(data.values[i][j])
            p = 0
            while q.denominator != 1:
                q *= 10
                p += 1
            best = max(best, p)
    return best


def apply_precision(data: ProximityData, p: int) -> ProximityData:
    if p < 0:
        raise ValueError("precision must be non-negative")
    n = data.n
    values = [
        [0.0 if i == j and data.measure is Measure.DISTANCE else round_half_away(data.values[i][j], p)
         for j in range(n)]
        for i in range(n)
    ]
    return replace(data, values=values, precision=p)


def similarity_to_dissimilarity(data: ProximityData) -> ProximityData:
    """Turn weights ``s`` in [0, 1] into distances ``1 - s``."""
    if data.measure is not Measure.WEIGHT:
        raise ValueError("data are already distances")
    n = data.n
    values = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            s = data.values[i][j]
            if not 0 <= s <= 1:
                raise ValueOutOfUnitIntervalError(i, j, s)
            values[i][j] = float(1 - to_fraction(s))
    return replace(data, values=values, measure=Measure.DISTANCE)


def format_matrix(data: ProximityData, sep: str = "\t", labels: bool = True) -> str:
    """Matrix-like text rendering (label row first) of *data*."""
    lines = [sep.join(data.labels)] if labels else []
    for row in data.values:
        lines.append(sep.join(repr(v) for v in row))
    return "\n".join(lines) + "\n"


def format_list(data: ProximityData, sep: str = " ") -> str:
    lines = []
    n = data.n
    for i in range(n):
        for j in range(i + 1, n):
            lines.append(sep.join((data.labels[i], data.labels[j], repr(data.values[i][j]))))
    return "\n".join(lines) + "\n"
