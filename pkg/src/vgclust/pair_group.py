"""Classical pair-group agglomeration with an explicit tie-breaking policy.

Every step merges exactly two clusters, so the result depends on how ties
at the minimum distance are broken.  Clusters are identified by their
smallest leaf index; the candidates at a step are the pairs ``(a, b)``,
``a < b``, of such identifiers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Set

from ._engine import initial_distances, key, report, sign_of
from .linkage import Method, pair_update_exact
from .numeric import settle
from .proximity_io import ProximityData
from .tree import Leaf, MergeStep, Multidendrogram, Node, TreeNode, canonical


class EnumerationBudgetExceeded(RuntimeError):
    def __init__(self, max_count: int):
        self.max_count = max_count
        super().__init__(f"tie enumeration exceeded the budget of {max_count} states")


@dataclass(frozen=True)
class TiePolicy:
    """How to pick among pairs tied at the minimum distance.

    ``first`` merges the lexicographically smallest pair, ``last`` the
    largest, ``random`` draws one with a seeded generator.  ``enumerate``
    only makes sense for :func:`enumerate_tie_dendrograms`.
    """

    kind: str = "first"
    seed: Optional[int] = None

    KINDS = ("first", "last", "random", "enumerate")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown tie policy {self.kind!r}")
        if self.kind == "random" and self.seed is None:
            raise ValueError("random tie policy needs a seed")

    @classmethod
    def first(cls) -> "TiePolicy":
        return cls("first")

    @classmethod
    def last(cls) -> "TiePolicy":
        return cls("last")

    @classmethod
    def random(cls, seed: int) -> "TiePolicy":
        return cls("random", seed)

    @classmethod
    def parse(cls, text: str) -> "TiePolicy":
        """Accepts ``first``, ``last`` or ``random:SEED``."""
        kind, _, seed = text.strip().lower().partition(":")
        if kind == "random":
            if not seed:
                raise ValueError("random tie policy needs a seed, e.g. random:42")
            return cls("random", int(seed))
        if seed:
            raise ValueError(f"tie policy {kind!r} takes no argument")
        return cls(kind)


@dataclass
class _Cluster:
    node: TreeNode
    size: int


class _State:
    def __init__(self, clusters: Dict[int, _Cluster], dist: Dict[tuple, Fraction]):
        self.clusters = clusters
        self.dist = dist

    def copy(self) -> "_State":
        return _State(dict(self.clusters), dict(self.dist))

    def tied(self):
        d_min = min(self.dist.values())
        return d_min, sorted(p for p, d in self.dist.items() if d == d_min)

    def merge(self, a: int, b: int, method: Method, precision, sign: int) -> Node:
        ca, cb = self.clusters.pop(a), self.clusters.pop(b)
        d_ab = self.dist.pop((a, b))
        h = report(d_ab, sign)
        node = Node((ca.node, cb.node), h, h)
        for j, cj in self.clusters.items():
            d_aj = self.dist.pop(key(a, j))
            d_bj = self.dist.pop(key(b, j))
            q = pair_update_exact(method, ca.size, cb.size, cj.size, d_aj, d_bj, d_ab)
            self.dist[key(a, j)] = settle(q, precision)
        self.clusters[a] = _Cluster(node, ca.size + cb.size)
        return node

    def signature(self):
        # rounding makes distances path-dependent, so they are part of the state
        return (
            frozenset(canonical(c.node) for c in self.clusters.values()),
            frozenset(self.dist.items()),
        )


def _start(data: ProximityData) -> _State:
    clusters = {i: _Cluster(Leaf(i), 1) for i in range(data.n)}
    return _State(clusters, initial_distances(data))


def _finish(data, method, root, steps) -> Multidendrogram:
    done = []
    for k, (node, h, ties) in enumerate(steps):
        d_next = steps[k + 1][1] if k + 1 < len(steps) else None
        done.append(MergeStep(k, node, h, d_next, ties))
    return Multidendrogram(root, data.labels, method, data.measure, data.precision, tuple(done))


def pair_group_cluster(
    data: ProximityData, method: Method, policy: TiePolicy = TiePolicy()
) -> Multidendrogram:
    """Binary dendrogram built two clusters at a time.

    Each merge height is the current minimum distance; updated distances
    come from the Lance-Williams recurrence and are rounded to
    ``data.precision`` before they take part in any comparison.
    """
    if policy.kind == "enumerate":
        raise ValueError("use enumerate_tie_dendrograms for the enumerate policy")
    rng = random.Random(policy.seed) if policy.kind == "random" else None
    sign = sign_of(data.measure)
    state = _start(data)
    steps = []
    node = None
    while len(state.clusters) > 1:
        _, tied = state.tied()
        if policy.kind == "first":
            a, b = tied[0]
        elif policy.kind == "last":
            a, b = tied[-1]
        else:
            a, b = rng.choice(tied)
        h = report(state.dist[(a, b)], sign)
        node = state.merge(a, b, method, data.precision, sign)
        steps.append((node, h, len(tied)))
    return _finish(data, method, node, steps)


def enumerate_tie_dendrograms(
    data: ProximityData, method: Method, max_count: int = 10_000
) -> List[Multidendrogram]:
    """Every distinct dendrogram reachable by some tie-breaking order.

    The search follows each tied choice; partial states (clusters plus
    their distance table) already reached by another order are expanded
    once, since the rest of the run depends on nothing else.  ``max_count``
    caps the number of distinct states expanded.  Results are
    deduplicated by topology and heights and returned in canonical order.
    """
    sign = sign_of(data.measure)
    found = {}
    seen: Set = set()
    stack = [(_start(data), [])]
    while stack:
        state, steps = stack.pop()
        sig = state.signature()
        if sig in seen:
            continue
        seen.add(sig)
        if len(seen) > max_count:
            raise EnumerationBudgetExceeded(max_count)
        if len(state.clusters) == 1:
            root = next(iter(state.clusters.values())).node
            found.setdefault(canonical(root), _finish(data, method, root, steps))
            continue
        _, tied = state.tied()
        for a, b in reversed(tied):
            branch = state.copy()
            h = report(branch.dist[(a, b)], sign)
            node = branch.merge(a, b, method, data.precision, sign)
            stack.append((branch, steps + [(node, h, len(tied))]))
    return [found[k] for k in sorted(found, key=repr)]
