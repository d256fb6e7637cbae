"""Variable-group agglomeration.

At each iteration every pair of clusters at the current minimum distance
``d_lower`` is merged at once: the clusters are grouped into the connected
components of the graph whose edges are those tied pairs, and each
multi-member component becomes one supercluster.  The result does not
depend on the order of the input.

A supercluster carries the band ``[d_lower, d_max]`` where ``d_max`` is
the largest distance among its member clusters.  ``d_lower`` is the
fusion value wherever a single height is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from ._engine import Pair, initial_distances, key, report, sign_of
from .linkage import Method, group_distance_exact
from .numeric import settle
from .proximity_io import ProximityData
from .tree import Leaf, MergeStep, Multidendrogram, Node, TreeNode


class DisjointSet:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def groups(self) -> List[List]:
        out: Dict = {}
        for x in sorted(self.parent):
            out.setdefault(self.find(x), []).append(x)
        return sorted(out.values())


@dataclass
class AgglomerationState:
    """Live partition of the items.

    Clusters are keyed by their smallest leaf index.  ``dist`` holds the
    current (rounded) inter-cluster distances in engine units.
    """

    nodes: Dict[int, TreeNode]
    sizes: Dict[int, int]
    dist: Dict[Pair, Fraction]
    d_lower: Optional[Fraction] = None
    d_next: Optional[Fraction] = None

    @classmethod
    def start(cls, data: ProximityData) -> "AgglomerationState":
        n = data.n
        state = cls({i: Leaf(i) for i in range(n)}, {i: 1 for i in range(n)}, initial_distances(data))
        state.d_lower = min(state.dist.values())
        return state

    def distance(self, a: int, b: int) -> Fraction:
        return self.dist[key(a, b)]


def tie_groups(state: AgglomerationState) -> Tuple[List[List[int]], int]:
    """Connected components of the graph of pairs at ``d_lower``.

    Returns the components (singletons included, sorted) and the number
    of tied pairs.
    """
    ds = DisjointSet(state.nodes)
    edges = 0
    for (a, b), d in state.dist.items():
        if d == state.d_lower:
            ds.union(a, b)
            edges += 1
    return ds.groups(), edges


def agglomeration_interval(component, state: AgglomerationState) -> Tuple[Fraction, Fraction]:
    """``(d_lower, d_max)`` for a multi-member component, in engine units."""
    if len(component) < 2:
        raise ValueError("an agglomeration interval needs at least two clusters")
    within = [state.distance(a, b) for a, b in combinations(component, 2)]
    d_min = min(within)
    if d_min != state.d_lower:
        raise AssertionError(f"tie component minimum {d_min} differs from d_lower {state.d_lower}")
    return state.d_lower, max(within)


def _supercluster_distance(state, method, g, h) -> Fraction:
    cross = [[state.distance(a, b) for b in h] for a in g]
    within_g = [[state.distance(a, b) if a != b else Fraction(0) for b in g] for a in g]
    within_h = [[state.distance(a, b) if a != b else Fraction(0) for b in h] for a in h]
    return group_distance_exact(
        method, cross, within_g, within_h,
        [state.sizes[a] for a in g], [state.sizes[b] for b in h],
    )


def _iterate(state: AgglomerationState, method: Method, precision, sign: int, iteration: int):
    groups, edges = tie_groups(state)
    merged = []
    for g in groups:
        if len(g) > 1:
            lo, hi = agglomeration_interval(g, state)
            node = Node(tuple(state.nodes[a] for a in g), report(lo, sign), report(hi, sign))
            merged.append((g, node))
    new_dist = {}
    for g, h in combinations(groups, 2):
        if len(g) == 1 and len(h) == 1:
            q = state.distance(g[0], h[0])
        else:
            q = settle(_supercluster_distance(state, method, g, h), precision)
        new_dist[key(g[0], h[0])] = q
    d_next = min(new_dist.values()) if new_dist else None
    state.d_next = d_next
    steps = [
        MergeStep(iteration, node, node.band_lower, None if d_next is None else report(d_next, sign), edges)
        for _, node in merged
    ]
    for g, node in merged:
        state.nodes[g[0]] = node
        state.sizes[g[0]] = sum(state.sizes[a] for a in g)
        for a in g[1:]:
            del state.nodes[a]
            del state.sizes[a]
    state.dist = new_dist
    state.d_lower = d_next
    return steps


@dataclass(frozen=True)
class ReversalEvent:
    """A supercluster whose band reaches past the next fusion value."""

    node: Node
    band_upper: float
    d_next: float


def detect_band_reversals(tree: Multidendrogram) -> List[ReversalEvent]:
    """Nodes whose ``band_upper`` passes the ``d_next`` of their iteration.

    "Passes" means greater in distance mode and smaller in weights mode.
    Events are listed in formation order.
    """
    sign = sign_of(tree.measure)
    events = []
    for step in tree.steps:
        if step.d_next is None:
            continue
        if sign * step.node.band_upper > sign * step.d_next:
            events.append(ReversalEvent(step.node, step.node.band_upper, step.d_next))
    return events


def variable_group_cluster(data: ProximityData, method: Method):
    """Cluster *data*; returns ``(multidendrogram, reversal_events)``."""
    sign = sign_of(data.measure)
    state = AgglomerationState.start(data)
    steps: List[MergeStep] = []
    iteration = 0
    while len(state.nodes) > 1:
        steps.extend(_iterate(state, method, data.precision, sign, iteration))
        iteration += 1
    root = next(iter(state.nodes.values()))
    tree = Multidendrogram(root, data.labels, method, data.measure, data.precision, tuple(steps))
    return tree, detect_band_reversals(tree)
