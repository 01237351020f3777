"""Random instance and parent generators shared by the test modules."""

from __future__ import annotations

import numpy as np

from orprec.blp_orp import COVERING, PACKING, PARTITION, SetSystemInstance, SplpInstance
from orprec.core import EQ, GE, LE, MAX, MIN, BlpInstance, Row
from orprec.graph_orp import WeightedGraph
from orprec.sched_orp import SetupInstance
from orprec.tsp_orp import Tour, TspInstance


def random_graph(rng, n, p=None, max_w=9):
    p = rng.uniform(0.2, 0.8) if p is None else p
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return WeightedGraph.from_edges([int(w) for w in rng.integers(0, max_w + 1, size=n)], edges)


def _greedy(rng, n, conflicts):
    chosen = set()
    for v in rng.permutation(n):
        v = int(v)
        if not conflicts[v] & chosen:
            chosen.add(v)
    # drop a few so parents are not always maximal
    for v in list(chosen):
        if rng.random() < 0.2:
            chosen.discard(v)
    return tuple(int(v in chosen) for v in range(n))


def graph_parents(rng, g, kind):
    n = g.n
    if kind == "clique":
        everyone = frozenset(range(n))
        conflicts = [everyone - g.adj[v] - {v} for v in range(n)]
    else:
        conflicts = list(g.adj)
    p1, p2 = _greedy(rng, n, conflicts), _greedy(rng, n, conflicts)
    if kind == "vc":
        p1, p2 = tuple(1 - b for b in p1), tuple(1 - b for b in p2)
    return p1, p2


def random_packing(rng, m, n):
    A = (rng.random((m, n)) < rng.uniform(0.15, 0.5)).astype(int)
    inst = SetSystemInstance(tuple(map(tuple, A.tolist())), tuple(int(c) for c in rng.integers(0, 10, n)), PACKING)
    conflicts = inst.conflict_sets()
    return inst, _greedy(rng, n, conflicts), _greedy(rng, n, conflicts)


def _random_partition_blocks(rng, m):
    labels = rng.integers(0, rng.integers(1, m + 1), size=m)
    return [tuple(int(i) for i in np.flatnonzero(labels == b)) for b in np.unique(labels)]


def random_partition(rng, m, max_n):
    """Set system with two built-in exact covers, padded with random columns."""
    while True:
        b1, b2 = _random_partition_blocks(rng, m), _random_partition_blocks(rng, m)
        if len(b1) + len(b2) <= max_n:
            break
    cols = [(blk, 1) for blk in b1] + [(blk, 2) for blk in b2]
    while len(cols) < max_n and rng.random() < 0.7:
        size = int(rng.integers(1, m + 1))
        cols.append((tuple(sorted(int(i) for i in rng.choice(m, size=size, replace=False))), 0))
    order = rng.permutation(len(cols))
    cols = [cols[i] for i in order]
    A = tuple(tuple(int(i in blk) for blk, _ in cols) for i in range(m))
    c = tuple(int(v) for v in rng.integers(0, 10, len(cols)))
    inst = SetSystemInstance(A, c, PARTITION)
    p1 = tuple(int(tag == 1) for _, tag in cols)
    p2 = tuple(int(tag == 2) for _, tag in cols)
    return inst, p1, p2


def random_two_var_blp(rng, n, m, width=2):
    """Rows over ``width`` random variables, right-hand sides chosen so both parents are feasible."""
    p1 = tuple(int(b) for b in rng.integers(0, 2, n))
    p2 = tuple(int(b) for b in rng.integers(0, 2, n))
    rows = []
    for _ in range(m):
        support = rng.choice(n, size=min(width, n), replace=False)
        a = [0] * n
        for j in support:
            a[int(j)] = int(rng.choice([-3, -2, -1, 1, 2, 3]))
        v1 = sum(x * y for x, y in zip(a, p1))
        v2 = sum(x * y for x, y in zip(a, p2))
        rel = [LE, GE, EQ][int(rng.integers(3))]
        if rel == EQ and v1 != v2:
            rel = LE
        if rel == LE:
            b = max(v1, v2) + int(rng.integers(0, 2))
        elif rel == GE:
            b = min(v1, v2) - int(rng.integers(0, 2))
        else:
            b = v1
        rows.append(Row(tuple(a), rel, b))
    c = tuple(int(v) for v in rng.integers(-5, 6, n))
    sense = MAX if rng.random() < 0.5 else MIN
    return BlpInstance(c, tuple(rows), sense), p1, p2


def random_splp(rng, K, L):
    inst = SplpInstance(
        tuple(int(v) for v in rng.integers(0, 10, K)),
        tuple(tuple(int(v) for v in rng.integers(0, 10, L)) for _ in range(K)),
    )

    def parent():
        u = [0] * K
        Y = [[0] * L for _ in range(K)]
        for l in range(L):
            k = int(rng.integers(K))
            Y[k][l] = 1
            u[k] = 1
        for k in range(K):
            if rng.random() < 0.2:
                u[k] = 1
        return tuple(map(tuple, Y)), tuple(u)

    return inst, parent(), parent()


def random_cover(rng, m, n):
    A = (rng.random((m, n)) < 0.4).astype(int)
    for i in range(m):
        if not A[i].any():
            A[i, rng.integers(n)] = 1
    return SetSystemInstance(tuple(map(tuple, A.tolist())), tuple(int(c) for c in rng.integers(1, 10, n)), COVERING)


def random_tsp(rng, n, symmetric):
    dist = rng.integers(0, 20, size=(n, n))
    if symmetric:
        dist = np.triu(dist, 1)
        dist = dist + dist.T
    np.fill_diagonal(dist, 0)
    inst = TspInstance(tuple(map(tuple, dist.tolist())), symmetric)
    t1 = Tour.from_sequence(rng.permutation(n))
    while True:
        t2 = Tour.from_sequence(rng.permutation(n))
        if t2 != t1 and not (symmetric and t2 == t1.reversed()):
            return inst, t1, t2


def mutate_tour(rng, t, swaps=1):
    """A parent close to ``t``, so the two share long common paths."""
    seq = list(t.sequence())
    for _ in range(swaps):
        i, j = sorted(int(v) for v in rng.choice(len(seq), size=2, replace=False))
        seq[i:j + 1] = seq[i:j + 1][::-1]
    return Tour.from_sequence(seq)


def random_setup(rng, k):
    s = rng.integers(0, 30, size=(k, k))
    np.fill_diagonal(s, 0)
    return SetupInstance(tuple(map(tuple, s.tolist())), tuple(int(v) for v in rng.integers(1, 10, k)))


def random_job_parents(rng, k):
    p1 = tuple(int(v) for v in rng.permutation(k))
    if rng.random() < 0.5:
        return p1, tuple(int(v) for v in rng.permutation(k))
    # few swaps: keeps some special edges around
    p2 = list(p1)
    for _ in range(int(rng.integers(1, k))):
        i, j = (int(v) for v in rng.integers(k, size=2))
        p2[i], p2[j] = p2[j], p2[i]
    return p1, tuple(p2)
