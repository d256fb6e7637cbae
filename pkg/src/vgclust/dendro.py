"""Cophenetic matrix, goodness-of-fit measures and tree details."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from .proximity_io import ProximityData
from .tree import Leaf, Multidendrogram, Node


@dataclass(frozen=True)
class UltrametricMatrix:
    labels: Tuple[str, ...]
    values: Tuple[Tuple[float, ...], ...]
    precision: Optional[int] = None


@dataclass(frozen=True)
class DeviationReport:
    """``ccc`` is NaN when either side has zero variance."""

    ccc: float
    nmse: float
    nmae: float


def cophenetic_matrix(tree: Multidendrogram) -> UltrametricMatrix:
    """Fusion value of the lowest common ancestor for every leaf pair."""
    n = tree.n
    u = [[0.0] * n for _ in range(n)]
    stack = [tree.root]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            continue
        blocks = [list(c.leaves()) for c in node.children]
        for x, bx in enumerate(blocks):
            for by in blocks[x + 1:]:
                for i in bx:
                    for j in by:
                        u[i][j] = u[j][i] = node.band_lower
        stack.extend(node.children)
    return UltrametricMatrix(tree.labels, tuple(tuple(r) for r in u), tree.precision)


def deviation_measures(original: ProximityData, ultra: UltrametricMatrix) -> DeviationReport:
    """Cophenetic correlation and normalized squared / absolute errors.

    Sums run over the strict upper triangle:
    ``nmse = sum((d - u)**2) / sum(d**2)`` and
    ``nmae = sum(|d - u|) / sum(|d|)``.
    """
    if tuple(original.labels) != tuple(ultra.labels):
        raise ValueError("original and ultrametric matrices have different labels")
    n = original.n
    d = [original.values[i][j] for i in range(n) for j in range(i + 1, n)]
    u = [ultra.values[i][j] for i in range(n) for j in range(i + 1, n)]
    m = len(d)
    mean_d = math.fsum(d) / m
    mean_u = math.fsum(u) / m
    sxy = math.fsum((a - mean_d) * (b - mean_u) for a, b in zip(d, u))
    sxx = math.fsum((a - mean_d) ** 2 for a in d)
    syy = math.fsum((b - mean_u) ** 2 for b in u)
    ccc = sxy / math.sqrt(sxx * syy) if sxx > 0 and syy > 0 else math.nan
    if not math.isnan(ccc):
        ccc = max(-1.0, min(1.0, ccc))
    sq = math.fsum(a * a for a in d)
    ab = math.fsum(abs(a) for a in d)
    nmse = math.fsum((a - b) ** 2 for a, b in zip(d, u)) / sq if sq > 0 else math.nan
    nmae = math.fsum(abs(a - b) for a, b in zip(d, u)) / ab if ab > 0 else math.nan
    return DeviationReport(ccc, nmse, nmae)


@dataclass(frozen=True)
class NodeDetails:
    leaf_count: int
    band_lower: float
    band_upper: float
    children: Tuple[Union[str, "NodeDetails"], ...]

    def depth(self) -> int:
        sub = [c.depth() for c in self.children if isinstance(c, NodeDetails)]
        return 1 + max(sub, default=0)


def details(tree: Multidendrogram) -> Union[NodeDetails, str]:
    """Folder-like view of the tree; children in smallest-leaf order."""

    def walk(node):
        if isinstance(node, Leaf):
            return tree.labels[node.index]
        return NodeDetails(
            node.leaf_count, node.band_lower, node.band_upper,
            tuple(walk(c) for c in node.children),
        )

    return walk(tree.root)
