"""Plain-text exports: tree details and the ultrametric matrix."""

from __future__ import annotations

import re
from typing import Iterable, List, Optional, Union

from ..dendro import NodeDetails, UltrametricMatrix
from ..numeric import format_fixed

_UNSAFE = re.compile(r"[ \t;,|():\[\]'\"]")


def sanitize_labels(labels: Iterable[str]) -> List[str]:
    """Replace structurally unsafe characters with ``_``; keep names unique."""
    out: List[str] = []
    used = set()
    for lab in labels:
        base = _UNSAFE.sub("_", lab) or "_"
        name, k = base, 1
        while name in used:
            name = f"{base}_{k}"
            k += 1
        used.add(name)
        out.append(name)
    return out


def to_text_details(tree_details: Union[NodeDetails, str], precision: Optional[int] = None) -> str:
    """Indented tree listing, one node or leaf per line.

    Internal nodes print as ``* <leaves> leaves [<lower>, <upper>]``.
    """
    lines: List[str] = []

    def walk(item, depth):
        pad = "    " * depth
        if isinstance(item, str):
            lines.append(f"{pad}{item}")
            return
        lo = format_fixed(item.band_lower, precision)
        hi = format_fixed(item.band_upper, precision)
        lines.append(f"{pad}* {item.leaf_count} leaves [{lo}, {hi}]")
        for child in item.children:
            walk(child, depth + 1)

    walk(tree_details, 0)
    return "\n".join(lines) + "\n"


def ultrametric_to_txt(ultra: UltrametricMatrix) -> str:
    """Tab-separated matrix with a label row; re-readable as matrix input."""
    rows = ["\t".join(sanitize_labels(ultra.labels))]
    for row in ultra.values:
        rows.append("\t".join(format_fixed(v, ultra.precision) for v in row))
    return "\n".join(rows) + "\n"
