import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vgclust import (
    Measure,
    Method,
    ProximityData,
    TiePolicy,
    cophenetic_matrix,
    detect_band_reversals,
    enumerate_tie_dendrograms,
    pair_group_cluster,
    variable_group_cluster,
)
from vgclust.tree import Leaf, Node, canonical
from vgclust.variable_group import AgglomerationState, agglomeration_interval, tie_groups

from helpers import (
    METHODS,
    canonical_in_original_order,
    distinct_matrix,
    from_upper,
    has_ties,
    permuted,
    tied_matrix,
    triangle,
)


def tie_components_oracle(data):
    g = nx.Graph()
    g.add_nodes_from(range(data.n))
    off = [data.values[i][j] for i in range(data.n) for j in range(i + 1, data.n)]
    low = min(off)
    g.add_edges_from((i, j) for i in range(data.n) for j in range(i + 1, data.n) if data.values[i][j] == low)
    return sorted(sorted(c) for c in nx.connected_components(g))


class TestTieGroups:
    def test_chain(self):
        groups, edges = tie_groups(AgglomerationState.start(triangle()))
        assert groups == [[0, 1, 2]]
        assert edges == 2

    def test_distinct(self):
        d = from_upper(3, [2.0, 1.0, 3.0], 0)
        groups, _ = tie_groups(AgglomerationState.start(d))
        assert groups == [[0, 2], [1]]

    def test_two_disjoint_pairs(self):
        d = ProximityData(list("ABCD"), [[0, 1, 3, 4], [1, 0, 5, 6], [3, 5, 0, 1], [4, 6, 1, 0]], precision=0)
        groups, _ = tie_groups(AgglomerationState.start(d))
        assert groups == [[0, 1], [2, 3]]
        tree, _ = variable_group_cluster(d, Method.COMPLETE_LINKAGE)
        assert [len(tree.steps), tree.steps[0].iteration, tree.steps[1].iteration] == [3, 0, 0]

    def test_against_graph_oracle(self):
        rng = random.Random(8)
        for _ in range(100):
            d = tied_matrix(rng, rng.randint(2, 9), 3)
            groups, _ = tie_groups(AgglomerationState.start(d))
            assert groups == tie_components_oracle(d)


class TestInterval:
    def test_triangle(self):
        state = AgglomerationState.start(triangle())
        lo, hi = agglomeration_interval([0, 1, 2], state)
        assert (float(lo), float(hi)) == (0.4, 0.5)

    def test_pair(self):
        state = AgglomerationState.start(triangle())
        lo, hi = agglomeration_interval([0, 1], state)
        assert lo == hi

    def test_clique(self):
        d = from_upper(3, [2.0, 2.0, 2.0], 0)
        lo, hi = agglomeration_interval([0, 1, 2], AgglomerationState.start(d))
        assert lo == hi == 2


def test_triangle_band():
    tree, events = variable_group_cluster(triangle(), Method.COMPLETE_LINKAGE)
    assert tree.root == Node((Leaf(0), Leaf(1), Leaf(2)), 0.4, 0.5)
    assert events == []
    assert tree.band_count == 1 and tree.tied_iterations == 1


@pytest.mark.parametrize("method", METHODS)
def test_no_ties_matches_pair_group(method):
    rng = random.Random(METHODS.index(method) + 100)
    checked = 0
    while checked < 25:
        d = distinct_matrix(rng, rng.randint(3, 9))
        pair = pair_group_cluster(d, method)
        vg, _ = variable_group_cluster(d, method)
        if has_ties(pair) or has_ties(vg):
            continue
        assert vg.is_binary()
        assert canonical(vg.root) == canonical(pair.root)
        checked += 1


def test_single_linkage_recovers_pair_group():
    rng = random.Random(9)
    for _ in range(25):
        d = tied_matrix(rng, rng.randint(3, 7), 3)
        vg, _ = variable_group_cluster(d, Method.SINGLE_LINKAGE)
        u = cophenetic_matrix(vg).values
        for t in enumerate_tie_dendrograms(d, Method.SINGLE_LINKAGE):
            assert cophenetic_matrix(t).values == u


class TestReversals:
    # {A, B, C} tie at 0.4 with d(A, C) = 0.5, D at 0.45 from all three
    FOUR = ProximityData(
        list("ABCD"),
        [[0, .4, .5, .45], [.4, 0, .4, .45], [.5, .4, 0, .45], [.45, .45, .45, 0]],
        precision=2,
    )

    @pytest.mark.parametrize("method", [Method.SINGLE_LINKAGE, Method.COMPLETE_LINKAGE])
    def test_band_passes_next_fusion(self, method):
        tree, events = variable_group_cluster(self.FOUR, method)
        assert len(events) == 1
        ev = events[0]
        assert (ev.band_upper, ev.d_next) == (0.5, 0.45)
        assert sorted(ev.node.leaves()) == [0, 1, 2]
        assert detect_band_reversals(tree) == events

    def test_binary_monotone_run_has_none(self):
        d = distinct_matrix(random.Random(12), 8)
        tree, events = variable_group_cluster(d, Method.COMPLETE_LINKAGE)
        assert tree.is_binary() and events == []

    def test_centroid_search_reports(self):
        rng = random.Random(13)
        total = 0
        for _ in range(200):
            d = tied_matrix(rng, rng.randint(3, 7), 4)
            _, events = variable_group_cluster(d, Method.UNWEIGHTED_CENTROID)
            assert all(ev.band_upper > ev.d_next for ev in events)
            total += len(events)
        print(f"unweighted centroid reversal events over 200 tied inputs: {total}")
        assert total > 0


@pytest.mark.parametrize("method", METHODS)
def test_band_sanity_and_conservation(method):
    rng = random.Random(METHODS.index(method) + 200)
    for _ in range(40):
        d = tied_matrix(rng, rng.randint(2, 9), 4)
        tree, _ = variable_group_cluster(d, method)
        assert sorted(tree.root.leaves()) == list(range(d.n))
        assert len({s.iteration for s in tree.steps}) <= d.n - 1
        for node in tree.internal_nodes():
            assert node.band_lower <= node.band_upper
            if len(node.children) == 2:
                assert node.band_lower == node.band_upper
        if method in (Method.SINGLE_LINKAGE, Method.COMPLETE_LINKAGE):
            lows = [s.d_lower for s in tree.steps]
            assert lows == sorted(lows)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(METHODS))
def test_permutation_invariance(seed, method):
    rng = random.Random(seed)
    d = tied_matrix(rng, rng.randint(3, 8), rng.randint(2, 5))
    perm = list(range(d.n))
    rng.shuffle(perm)
    base, _ = variable_group_cluster(d, method)
    moved, _ = variable_group_cluster(permuted(d, perm), method)
    assert canonical_in_original_order(moved, perm) == canonical(base.root)


def test_deterministic():
    d = tied_matrix(random.Random(14), 8)
    runs = [variable_group_cluster(d, Method.WARD)[0] for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]


def test_weights_are_negated_distances():
    rng = random.Random(15)
    for _ in range(20):
        d = tied_matrix(rng, rng.randint(3, 7), 4)
        neg = [[-v for v in row] for row in d.values]
        w = ProximityData(d.labels, neg, Measure.WEIGHT, d.precision)
        for method in METHODS:
            td, ev_d = variable_group_cluster(d, method)
            tw, ev_w = variable_group_cluster(w, method)
            flipped = [(-n.band_lower, -n.band_upper) for n in tw.internal_nodes()]
            assert flipped == [(n.band_lower, n.band_upper) for n in td.internal_nodes()]
            assert len(ev_d) == len(ev_w)


def test_weights_band_orientation():
    w = ProximityData(["A", "B", "C"], [[0, .6, .5], [.6, 0, .6], [.5, .6, 0]], Measure.WEIGHT, 1)
    tree, _ = variable_group_cluster(w, Method.COMPLETE_LINKAGE)
    assert (tree.root.band_lower, tree.root.band_upper) == (0.6, 0.5)
