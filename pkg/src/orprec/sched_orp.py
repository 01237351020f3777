"""Recombination for single machine makespan with sequence dependent setups.

Position ``i`` of an offspring may hold ``p1[i]`` or ``p2[i]``.  In the
bipartite graph between positions and jobs, a position where the parents
agree is a *special* edge; the remaining edges split into cycles (*blocks*)
and every block admits exactly two perfect matchings, the one copying
``p1`` and the one copying ``p2``.  An offspring is therefore a binary
vector ``delta`` with one bit per block, and there are ``2**q`` of them.

The setup cost of an offspring is a constant plus per-block terms plus
terms for pairs of blocks that sit next to each other.  Enumerating
``delta`` in reflected Gray code changes one block per step, so each step
updates the cost in ``O(q)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterator, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .core import InfeasibleParentError, MIN, as_rational


@dataclass(frozen=True)
class SetupInstance:
    """Jobs ``0..k-1`` with setup times ``setup[v][u]`` and processing times."""

    setup: tuple[tuple[Fraction, ...], ...]
    processing: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        setup = tuple(tuple(as_rational(v) for v in row) for row in self.setup)
        k = len(setup)
        if any(len(row) != k for row in setup):
            raise ValueError("setup matrix must be square")
        if any(setup[v][u] < 0 for v in range(k) for u in range(k) if u != v):
            raise ValueError("setup times must be nonnegative")
        processing = tuple(as_rational(v) for v in self.processing) or (Fraction(1),) * k
        if len(processing) != k:
            raise ValueError("need one processing time per job")
        if any(p <= 0 for p in processing):
            raise ValueError("processing times must be positive")
        object.__setattr__(self, "setup", setup)
        object.__setattr__(self, "processing", processing)

    sense = MIN

    @property
    def k(self) -> int:
        return len(self.setup)

    def setup_cost(self, perm: Sequence[int]) -> Fraction:
        s = self.setup
        return sum((s[a][b] for a, b in zip(perm, perm[1:])), Fraction(0))

    objective = setup_cost

    def makespan(self, perm: Sequence[int]) -> Fraction:
        return sum(self.processing, Fraction(0)) + self.setup_cost(perm)

    def is_feasible(self, perm: Sequence[int]) -> bool:
        return sorted(perm) == list(range(self.k))

    def encode(self, perm: Sequence[int]) -> tuple[int, ...]:
        k = self.k
        return tuple(int(perm[i] == u) for i in range(k) for u in range(k))


@dataclass(frozen=True)
class Block:
    positions: tuple[int, ...]
    matchings: tuple[dict[int, int], dict[int, int]]


@dataclass(frozen=True)
class RequisitionGraph:
    """Positions ``0..k-1`` against jobs, with requisitions ``X^i``.

    ``block_of[i]`` is the block holding position ``i`` or ``-1`` when the
    position carries a special edge.
    """

    requisitions: tuple[tuple[int, ...], ...]
    special: tuple[tuple[int, int], ...]
    blocks: tuple[Block, ...]
    block_of: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.requisitions)

    @property
    def q(self) -> int:
        return len(self.blocks)

    def assignment(self, delta: Sequence[int]) -> tuple[int, ...]:
        """The job sequence selected by one matching per block."""
        special = dict(self.special)
        return tuple(
            special[i] if b < 0 else self.blocks[b].matchings[delta[b]][i]
            for i, b in enumerate(self.block_of)
        )


def requisition_graph(requisitions: Sequence[Sequence[int]]) -> RequisitionGraph:
    """Build the graph for any requisition family with the degree conditions.

    Each requisition has one or two jobs; each job lies in one or two
    requisitions, in two only if both have two jobs and in one only if that
    one is a singleton.  Families breaking these rules are rejected.  In a
    two-job requisition the first job is the one matching 0 takes.
    """
    reqs = tuple(tuple(int(x) for x in X) for X in requisitions)
    k = len(reqs)
    where: dict[int, list[int]] = {}
    for i, X in enumerate(reqs):
        if not 1 <= len(X) <= 2 or len(set(X)) != len(X):
            raise ValueError(f"requisition {i + 1} must hold one or two distinct jobs")
        for x in X:
            where.setdefault(x, []).append(i)
    if len(where) != k:
        raise ValueError(f"{len(where)} jobs for {k} positions; no perfect matching exists")
    for x, pos in where.items():
        sizes = {len(reqs[i]) for i in pos}
        if len(pos) > 2 or (len(pos) == 2 and sizes != {2}) or (len(pos) == 1 and sizes != {1}):
            raise ValueError(f"job {x + 1} breaks the requisition degree conditions")

    special = tuple((i, X[0]) for i, X in enumerate(reqs) if len(X) == 1)
    block_of = [-1] * k
    blocks: list[Block] = []
    for start in range(k):
        if len(reqs[start]) != 2 or block_of[start] >= 0:
            continue
        b = len(blocks)
        m0: dict[int, int] = {}
        m1: dict[int, int] = {}
        order = []
        pos, leave = start, reqs[start][0]
        while True:
            block_of[pos] = b
            order.append(pos)
            m0[pos] = leave
            nxt = where[leave][0] if where[leave][1] == pos else where[leave][1]
            m1[nxt] = leave
            if nxt == start:
                break
            a, c = reqs[nxt]
            pos, leave = nxt, (c if a == leave else a)
        blocks.append(Block(tuple(order), (m0, m1)))
    return RequisitionGraph(reqs, special, tuple(blocks), tuple(block_of))


def build_requisition_graph(p1: Sequence[int], p2: Sequence[int]) -> RequisitionGraph:
    p1, p2 = [int(v) for v in p1], [int(v) for v in p2]
    k = len(p1)
    for name, p in (("p1", p1), ("p2", p2)):
        if len(p) != k or sorted(p) != list(range(k)):
            raise InfeasibleParentError(f"parent {name} is not a permutation of the {k} jobs")
    return requisition_graph([(a,) if a == b else (a, b) for a, b in zip(p1, p2)])


def count_feasible(g: RequisitionGraph) -> int:
    return 2 ** g.q


@dataclass(frozen=True)
class ContactTables:
    """Precomputed setup sums.

    ``base``: contacts between special positions.  ``single[j][a]``:
    contacts inside block ``j`` and between block ``j`` and special
    positions when ``j`` uses matching ``a``.  ``pair[j][j2][a][b]``:
    contacts between blocks ``j`` and ``j2`` under matchings ``a`` and ``b``.
    """

    base: Fraction
    single: tuple[tuple[Fraction, Fraction], ...]
    pair: tuple[dict[int, list[list[Fraction]]], ...]

    def neighbours(self, j: int) -> list[int]:
        return sorted(self.pair[j])

    def cost(self, delta: Sequence[int]) -> Fraction:
        total = self.base + sum((self.single[j][a] for j, a in enumerate(delta)), Fraction(0))
        for j, row in enumerate(self.pair):
            for j2, table in row.items():
                if j < j2:
                    total += table[delta[j]][delta[j2]]
        return total


def precompute_contacts(g: RequisitionGraph, inst: SetupInstance) -> ContactTables:
    s = inst.setup
    special = dict(g.special)
    single = [[Fraction(0), Fraction(0)] for _ in range(g.q)]
    pair: list[dict[int, list[list[Fraction]]]] = [{} for _ in range(g.q)]
    base = Fraction(0)

    def job(i: int, a: int) -> int:
        b = g.block_of[i]
        return special[i] if b < 0 else g.blocks[b].matchings[a][i]

    for i in range(g.k - 1):
        b1, b2 = g.block_of[i], g.block_of[i + 1]
        if b1 < 0 and b2 < 0:
            base += s[special[i]][special[i + 1]]
        elif b1 < 0 or b2 < 0 or b1 == b2:
            j = b1 if b1 >= 0 else b2
            for a in (0, 1):
                single[j][a] += s[job(i, a)][job(i + 1, a)]
        else:
            fwd = pair[b1].setdefault(b2, [[Fraction(0)] * 2 for _ in range(2)])
            back = pair[b2].setdefault(b1, [[Fraction(0)] * 2 for _ in range(2)])
            for a in (0, 1):
                for c in (0, 1):
                    w = s[job(i, a)][job(i + 1, c)]
                    fwd[a][c] += w
                    back[c][a] += w
    return ContactTables(base, tuple((a, b) for a, b in single), tuple(pair))


def gray_code_sweep(tables: ContactTables, q: int) -> Iterator[tuple[tuple[int, ...], Fraction]]:
    """Yield ``(delta, cost)`` for all ``2**q`` selectors in reflected Gray order."""
    delta = [0] * q
    rho = tables.cost(delta)
    yield tuple(delta), rho
    nbrs = [tables.neighbours(j) for j in range(q)]
    for step in range(1, 2 ** q):
        j = (step & -step).bit_length() - 1
        old = delta[j]
        new = 1 - old
        row = tables.pair[j]
        rho = rho - tables.single[j][old] + tables.single[j][new]
        for j2 in nbrs[j]:
            rho = rho - row[j2][old][delta[j2]] + row[j2][new][delta[j2]]
        delta[j] = new
        yield tuple(delta), rho


def solve_makespan_orp(inst: SetupInstance, p1: Sequence[int], p2: Sequence[int]) -> tuple[int, ...]:
    """Job sequence with least total setup time among the gene-transmitting ones.

    Ties go to the lexicographically smallest block selector.
    """
    g = build_requisition_graph(p1, p2)
    if g.k != inst.k:
        raise InfeasibleParentError(f"parents have {g.k} jobs, instance has {inst.k}")
    tables = precompute_contacts(g, inst)
    best_delta, best_rho = None, None
    for delta, rho in gray_code_sweep(tables, g.q):
        if best_rho is None or rho < best_rho or (rho == best_rho and delta < best_delta):
            best_delta, best_rho = delta, rho
    return g.assignment(best_delta)


def block_count(p1: Sequence[int], p2: Sequence[int]) -> int:
    """Number of blocks: cycles of length at least two of ``i -> pos2[p1[i]]``."""
    k = len(p1)
    if k <= 64:
        # scipy's per-call overhead dominates on tiny permutations
        pos2 = {job: i for i, job in enumerate(p2)}
        seen = [False] * k
        cycles = 0
        for i in range(k):
            if seen[i]:
                continue
            length, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = pos2[p1[j]]
                length += 1
            cycles += length > 1
        return cycles
    p1, p2 = np.asarray(p1), np.asarray(p2)
    pos2 = np.empty(k, dtype=np.int64)
    pos2[p2] = np.arange(k)
    tau = pos2[p1]
    graph = csr_matrix((np.ones(k), (np.arange(k), tau)), shape=(k, k))
    ncomp, _ = connected_components(graph, directed=True, connection="weak")
    return int(ncomp - np.count_nonzero(tau == np.arange(k)))


def is_good_pair(p1: Sequence[int], p2: Sequence[int]) -> bool:
    k = len(p1)
    return block_count(p1, p2) <= 1.1 * math.log(k)


def good_pair_fraction(k: int, samples: int, seed=None, identical_pairs: bool = False) -> float:
    """Fraction of random parent pairs with at most ``1.1 ln k`` blocks.

    Pairs are drawn as independent uniform permutations; with
    ``identical_pairs`` the second parent repeats the first.
    """
    if k < 2 or samples < 1:
        raise ValueError("need k >= 2 and at least one sample")
    rng = np.random.default_rng(seed)
    good = 0
    for _ in range(samples):
        p1 = rng.permutation(k)
        p2 = p1 if identical_pairs else rng.permutation(k)
        good += is_good_pair(p1, p2)
    return good / samples


def exact_good_pair_fraction(k: int) -> Fraction:
    """Exact fraction over all ``(k!)**2`` ordered parent pairs."""
    if not 2 <= k <= 6:
        raise ValueError("exact enumeration is limited to 2 <= k <= 6")
    perms = list(permutations(range(k)))
    good = sum(is_good_pair(a, b) for a in perms for b in perms)
    return Fraction(good, len(perms) ** 2)
