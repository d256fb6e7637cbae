import random

from vgclust import Measure, Method, ProximityData
from vgclust.tree import canonical, relabel

METHODS = list(Method)


def labels_for(n):
    return [f"x{i}" for i in range(n)]


def from_upper(n, upper, precision, measure=Measure.DISTANCE):
    vals = [[0.0] * n for _ in range(n)]
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            vals[i][j] = vals[j][i] = upper[k]
            k += 1
    return ProximityData(labels_for(n), vals, measure, precision)


def distinct_matrix(rng: random.Random, n: int, decimals: int = 4):
    """Symmetric matrix whose off-diagonal entries are pairwise distinct."""
    m = n * (n - 1) // 2
    ints = rng.sample(range(1, 10 ** (decimals + 1)), m)
    return from_upper(n, [k / 10**decimals for k in ints], decimals)


def tied_matrix(rng: random.Random, n: int, levels: int = 4):
    """Integer distances drawn from a few levels, so ties are frequent."""
    m = n * (n - 1) // 2
    return from_upper(n, [float(rng.randint(1, levels)) for _ in range(m)], 0)


def permuted(data: ProximityData, perm):
    """New data whose item k is the original item perm[k]."""
    n = data.n
    vals = [[data.values[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
    labels = [data.labels[p] for p in perm]
    return ProximityData(labels, vals, data.measure, data.precision)


def canonical_in_original_order(tree, perm):
    """Canonical form of a tree computed on permuted data, mapped back."""
    return canonical(relabel(tree.root, {k: perm[k] for k in range(len(perm))}))


def has_ties(tree):
    return any(step.tied_pairs > 1 for step in tree.steps)


def triangle():
    return ProximityData(["A", "B", "C"], [[0, 0.4, 0.5], [0.4, 0, 0.4], [0.5, 0.4, 0]], precision=1)
