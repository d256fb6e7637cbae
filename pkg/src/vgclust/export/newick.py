"""Newick serialization.

Only the fusion value of each node survives: a node at height ``h`` below
a parent at height ``H`` gets branch length ``H - h``, leaves sitting at
height 0.  In weights mode lengths are ``h - H`` and the leaves sit at
the largest fusion weight in the tree, so lengths stay non-negative
unless the tree has reversals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from ..numeric import format_fixed
from ..proximity_io import Measure
from ..tree import Leaf, Multidendrogram
from .text import sanitize_labels


def leaf_height(tree: Multidendrogram) -> float:
    if tree.measure is Measure.WEIGHT:
        return max((node.band_lower for node in tree.internal_nodes()), default=0.0)
    return 0.0


def to_newick(tree: Multidendrogram, precision: Optional[int] = None) -> str:
    if precision is None:
        precision = tree.precision
    names = sanitize_labels(tree.labels)
    sign = -1 if tree.measure is Measure.WEIGHT else 1
    base = leaf_height(tree)

    def height(node):
        return base if isinstance(node, Leaf) else node.band_lower

    def walk(node, parent_h):
        if isinstance(node, Leaf):
            text = names[node.index]
        else:
            text = "(" + ",".join(walk(c, node.band_lower) for c in node.children) + ")"
        if parent_h is None:
            return text
        return f"{text}:{format_fixed(sign * (parent_h - height(node)), precision)}"

    return walk(tree.root, None) + ";\n"


class NewickSyntaxError(ValueError):
    pass


@dataclass
class NewickNode:
    name: str = ""
    length: Optional[float] = None
    children: List["NewickNode"] = field(default_factory=list)

    def heights(self, base: float = 0.0) -> dict:
        """Map of leaf-set (frozenset of names) to node height above leaves."""
        out = {}

        def depth_to_leaf(node):
            if not node.children:
                return 0.0
            return (node.children[0].length or 0.0) + depth_to_leaf(node.children[0])

        def walk(node):
            if not node.children:
                return frozenset([node.name])
            leaves = frozenset().union(*(walk(c) for c in node.children))
            out[leaves] = base + depth_to_leaf(node)
            return leaves

        walk(self)
        return out


def parse_newick(text: str) -> NewickNode:
    """Parse a single Newick tree (unquoted labels, optional lengths)."""
    s = text.strip()
    pos = 0

    def peek():
        return s[pos] if pos < len(s) else ""

    def read_until(stops):
        nonlocal pos
        start = pos
        while pos < len(s) and s[pos] not in stops:
            pos += 1
        return s[start:pos]

    def subtree():
        nonlocal pos
        node = NewickNode()
        if peek() == "(":
            pos += 1
            node.children.append(subtree())
            while peek() == ",":
                pos += 1
                node.children.append(subtree())
            if peek() != ")":
                raise NewickSyntaxError(f"expected ')' at offset {pos}")
            pos += 1
        node.name = read_until(",():;").strip()
        if peek() == ":":
            pos += 1
            raw = read_until(",();").strip()
            try:
                node.length = float(raw)
            except ValueError:
                raise NewickSyntaxError(f"bad branch length {raw!r}") from None
        if not node.children and not node.name:
            raise NewickSyntaxError(f"unnamed leaf at offset {pos}")
        return node

    root = subtree()
    if peek() != ";":
        raise NewickSyntaxError("tree must end with ';'")
    pos += 1
    if s[pos:].strip():
        raise NewickSyntaxError("trailing text after ';'")
    return root
