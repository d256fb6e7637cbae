"""Tree types shared by both clustering engines."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Tuple, Union

from .linkage import Method
from .proximity_io import Measure


@dataclass(frozen=True)
class Leaf:
    index: int

    @property
    def leaf_count(self) -> int:
        return 1

    @property
    def first_leaf(self) -> int:
        return self.index

    def leaves(self) -> Iterator[int]:
        yield self.index


@dataclass(frozen=True)
class Node:
    """Internal node.  ``band_lower`` is the fusion value.

    In distance mode ``band_lower <= band_upper``.  In weights mode the
    values are reported as weights, so the fusion value is the larger one
    and ``band_upper`` (the least similar pair inside) is the smaller.
    """

    children: Tuple["TreeNode", ...]
    band_lower: float
    band_upper: float
    leaf_count: int = field(init=False)
    first_leaf: int = field(init=False)

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("internal nodes need at least two children")
        kids = tuple(sorted(self.children, key=lambda c: c.first_leaf))
        object.__setattr__(self, "children", kids)
        object.__setattr__(self, "leaf_count", sum(c.leaf_count for c in kids))
        object.__setattr__(self, "first_leaf", kids[0].first_leaf)

    @property
    def height(self) -> float:
        return self.band_lower

    @property
    def has_band(self) -> bool:
        return self.band_lower != self.band_upper

    def leaves(self) -> Iterator[int]:
        for c in self.children:
            yield from c.leaves()

    def internal_nodes(self) -> Iterator["Node"]:
        yield self
        for c in self.children:
            if isinstance(c, Node):
                yield from c.internal_nodes()


TreeNode = Union[Leaf, Node]


@dataclass(frozen=True)
class MergeStep:
    """One node formed during clustering, with its iteration context."""

    iteration: int
    node: Node
    d_lower: float
    d_next: Optional[float]
    tied_pairs: int


@dataclass(frozen=True)
class Multidendrogram:
    """A clustering result: the root plus enough context to export it.

    Pair-group results are the binary special case, so the same type
    serves as the plain dendrogram.
    """

    root: TreeNode
    labels: Tuple[str, ...]
    method: Method
    measure: Measure = Measure.DISTANCE
    precision: Optional[int] = None
    steps: Tuple[MergeStep, ...] = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return len(self.labels)

    def internal_nodes(self) -> Iterator[Node]:
        if isinstance(self.root, Node):
            yield from self.root.internal_nodes()

    @property
    def tied_iterations(self) -> int:
        seen = {s.iteration for s in self.steps if s.tied_pairs > 1}
        return len(seen)

    @property
    def band_count(self) -> int:
        return sum(1 for node in self.internal_nodes() if node.has_band)

    def is_binary(self) -> bool:
        return all(len(node.children) == 2 for node in self.internal_nodes())


Dendrogram = Multidendrogram


def canonical(node: TreeNode):
    """Hashable nested-tuple form; children ordered by smallest leaf."""
    if isinstance(node, Leaf):
        return node.index
    return (node.band_lower, node.band_upper, tuple(canonical(c) for c in node.children))


def relabel(node: TreeNode, mapping) -> TreeNode:
    """Copy of *node* with every leaf index ``k`` replaced by ``mapping[k]``."""
    if isinstance(node, Leaf):
        return Leaf(mapping[node.index])
    return Node(tuple(relabel(c, mapping) for c in node.children), node.band_lower, node.band_upper)


def leaf_order(node: TreeNode) -> list:
    return list(node.leaves())
