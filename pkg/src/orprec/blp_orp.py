"""Recombination for Boolean linear programs and set systems.

Every free variable ``j`` (a position where the parents differ) gets two
hypergraph vertices: ``j`` stands for ``x_j = 1`` and ``n + j`` for
``x_j = 0``.  A constraint contributes one hyperedge per assignment of its
free variables that violates it, and a pairing edge ``{j, n + j}`` forbids
choosing both values.  With weights ``c_j + lam`` and ``lam`` a maximum
weight independent set picks exactly one vertex per pair and spells out an
optimal offspring.

The vertex sets of the two parents form a 2-coloring of the hypergraph.
When every constraint has at most two variables the hypergraph is an
ordinary bipartite graph and a single minimum cut solves the problem.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .core import (
    GE,
    LE,
    MAX,
    MIN,
    BlpInstance,
    GuardExceededError,
    InfeasibleParentError,
    OrpInstance,
    Row,
    WrongSolverError,
    as_bits,
    as_rational,
    difference_set,
    normalize_rows,
)
from .flows import BipartiteGraph, bipartite_max_weight_independent_set
from .graph_orp import recombine_bipartite

MAX_ROW_FREE = 20
MAX_EXACT_FREE = 40


@dataclass(frozen=True)
class WeightedHypergraph:
    vertices: tuple[Hashable, ...]
    weights: Mapping[Hashable, Fraction]
    edges: tuple[frozenset, ...]
    coloring: tuple[frozenset, frozenset] | None = None

    def __post_init__(self) -> None:
        vset = set(self.vertices)
        for e in self.edges:
            if not e:
                raise ValueError("hyperedges must be nonempty")
            if not e <= vset:
                raise ValueError(f"hyperedge {sorted(e)} uses unknown vertices")
        if self.coloring is not None:
            c1, c2 = self.coloring
            if c1 & c2 or (c1 | c2) != vset:
                raise ValueError("coloring must partition the vertex set")
            if not (self.is_independent(c1) and self.is_independent(c2)):
                raise ValueError("a color class contains a whole hyperedge")

    def is_independent(self, S: Iterable[Hashable]) -> bool:
        S = set(S)
        return not any(e <= S for e in self.edges)

    def weight(self, S: Iterable[Hashable]) -> Fraction:
        return sum((self.weights[v] for v in S), Fraction(0))


@dataclass(frozen=True)
class OrpHypergraph:
    """Hypergraph encoding of one Boolean linear program recombination.

    ``hypergraph`` is the reduced hypergraph: vertices that form a singleton
    edge can never be chosen and are deleted along with every edge through
    them.  ``full_edges`` keeps the edges as generated.
    """

    n: int
    p1: tuple[int, ...]
    p2: tuple[int, ...]
    free: tuple[int, ...]
    lam: Fraction
    hypergraph: WeightedHypergraph
    full_edges: tuple[frozenset, ...]
    removed: frozenset[int]
    pairing_edges: tuple[frozenset, ...] = field(repr=False)

    @property
    def d(self) -> int:
        return len(self.free)

    def vertex_set(self, x: Sequence[int]) -> frozenset[int]:
        """``S(x)``: the chosen vertex of every free pair."""
        return frozenset(j if x[j] else self.n + j for j in self.free)

    def assignment(self, S: Iterable[int]) -> tuple[int, ...]:
        """``x(S)``: fixed genes from the parents, free genes set by one-vertices in ``S``."""
        S = set(S)
        return tuple(
            (1 if j in S else 0) if self.p1[j] != self.p2[j] else self.p1[j]
            for j in range(self.n)
        )


def _parents(blp: BlpInstance, p1, p2) -> tuple[tuple[int, ...], tuple[int, ...]]:
    p1, p2 = as_bits(p1), as_bits(p2)
    for name, p in (("p1", p1), ("p2", p2)):
        if len(p) != blp.n or not blp.is_feasible(p):
            raise InfeasibleParentError(f"parent {name} is infeasible")
    return p1, p2


def _max_objective(blp: BlpInstance) -> tuple[Fraction, ...]:
    return blp.c if blp.sense == MAX else tuple(-v for v in blp.c)


def build_orp_hypergraph(blp: BlpInstance, p1: Sequence[int], p2: Sequence[int]) -> OrpHypergraph:
    p1, p2 = _parents(blp, p1, p2)
    n = blp.n
    free = tuple(sorted(difference_set(p1, p2)))
    free_set = set(free)
    c = _max_objective(blp)
    lam = 2 * sum((abs(c[j]) for j in free), Fraction(0)) + 1

    edges: dict[frozenset, None] = {}
    for i, (coeffs, rhs) in enumerate(normalize_rows(blp)):
        support = [j for j, a in enumerate(coeffs) if a != 0]
        S = [j for j in support if j in free_set]
        fixed = sum((coeffs[j] for j in support if j not in free_set and p1[j]), Fraction(0))
        if not S:
            if fixed > rhs:
                raise InfeasibleParentError(f"constraint {i + 1} is violated by the common genes")
            continue
        if len(S) > MAX_ROW_FREE:
            raise GuardExceededError(
                f"constraint {i + 1} has {len(S)} free variables, limit is {MAX_ROW_FREE}"
            )
        for mask in range(1 << len(S)):
            lhs = fixed + sum((coeffs[j] for t, j in enumerate(S) if mask >> t & 1), Fraction(0))
            if lhs > rhs:
                edges[frozenset(j if mask >> t & 1 else n + j for t, j in enumerate(S))] = None
    pairing = tuple(frozenset((j, n + j)) for j in free)
    for e in pairing:
        edges[e] = None
    full_edges = tuple(edges)

    removed = frozenset(next(iter(e)) for e in full_edges if len(e) == 1)
    kept_edges = tuple(e for e in full_edges if not (e & removed))
    vertices = tuple(v for j in free for v in (j, n + j) if v not in removed)
    weights = {}
    for j in free:
        weights[j] = c[j] + lam
        weights[n + j] = lam
    weights = {v: weights[v] for v in vertices}
    S1 = frozenset(j if p1[j] else n + j for j in free)
    S2 = frozenset(j if p2[j] else n + j for j in free)
    hyper = WeightedHypergraph(vertices, weights, kept_edges, (S1, S2))
    return OrpHypergraph(n, p1, p2, free, lam, hyper, full_edges, removed, pairing)


def solve_two_var_orp(blp: BlpInstance, p1: Sequence[int], p2: Sequence[int]) -> tuple[int, ...]:
    """Optimal offspring when no constraint has more than two variables."""
    if blp.n_max > 2:
        raise WrongSolverError(
            f"a constraint has {blp.n_max} variables; use solve_blp_orp_exact"
        )
    orp = build_orp_hypergraph(blp, p1, p2)
    H = orp.hypergraph
    side1, side2 = H.coloring
    left = tuple(v for v in H.vertices if v in side1)
    right = tuple(v for v in H.vertices if v in side2)
    edges = []
    for e in H.edges:
        u, v = sorted(e, key=lambda w: w not in side1)
        edges.append((u, v))
    S = bipartite_max_weight_independent_set(BipartiteGraph(left, right, tuple(edges), H.weights))
    return _checked_assignment(orp, S, blp)


def _checked_assignment(orp: OrpHypergraph, S, blp: BlpInstance) -> tuple[int, ...]:
    n = orp.n
    if any((j in S) == (n + j in S) for j in orp.free):
        raise AssertionError("independent set does not pick one vertex per free variable")
    x = orp.assignment(S)
    if not blp.is_feasible(x):
        raise AssertionError("decoded offspring is infeasible")
    return x


def solve_blp_orp_exact(
    blp: BlpInstance,
    p1: Sequence[int],
    p2: Sequence[int],
    max_free: int = MAX_EXACT_FREE,
) -> tuple[int, ...]:
    """Exact recombination for any Boolean linear program by branch and bound.

    Searches independent sets of the reduced hypergraph that take one vertex
    from every free pair.  Undecided pairs are ordered by how many live
    edges still touch them, fewest first; the bound adds the heavier vertex
    of every undecided pair.
    """
    p1, p2 = _parents(blp, p1, p2)
    d = len(difference_set(p1, p2))
    if d > max_free:
        raise GuardExceededError(f"{d} free variables exceed the exact-search limit {max_free}")
    orp = build_orp_hypergraph(blp, p1, p2)
    H = orp.hypergraph
    n = orp.n
    w = H.weights
    present = set(H.vertices)
    edges = list(H.edges)
    incident: dict[int, list[int]] = {v: [] for v in H.vertices}
    for k, e in enumerate(edges):
        for v in e:
            incident[v].append(k)
    size = [len(e) for e in edges]
    chosen_in = [0] * len(edges)
    dead = [0] * len(edges)  # edges holding a vertex whose partner was chosen
    options = {j: [v for v in (j, n + j) if v in present] for j in orp.free}
    for j in orp.free:
        options[j].sort(key=lambda v: -w[v])
    cap = {j: max(w[v] for v in options[j]) for j in orp.free}

    S_best = max((orp.vertex_set(p1), orp.vertex_set(p2)), key=H.weight)
    best = [H.weight(S_best), set(S_best)]
    current: set[int] = set()

    def live_conflicts(j: int) -> int:
        return sum(1 for v in options[j] for k in incident[v] if not dead[k])

    def search(undecided: list[int], value: Fraction, bound: Fraction) -> None:
        if not undecided:
            if value > best[0]:
                best[0] = value
                best[1] = set(current)
            return
        if value + bound <= best[0]:
            return
        j = min(undecided, key=lambda t: (live_conflicts(t), t))
        rest = [t for t in undecided if t != j]
        for v in options[j]:
            if any(chosen_in[k] + 1 == size[k] for k in incident[v]):
                continue
            other = n + j if v == j else j
            for k in incident[v]:
                chosen_in[k] += 1
            for k in incident.get(other, ()):
                dead[k] += 1
            current.add(v)
            search(rest, value + w[v], bound - cap[j])
            current.discard(v)
            for k in incident.get(other, ()):
                dead[k] -= 1
            for k in incident[v]:
                chosen_in[k] -= 1

    search(list(orp.free), Fraction(0), sum(cap.values(), Fraction(0)))
    return _checked_assignment(orp, best[1], blp)


def solve_blp_orp(blp: BlpInstance, p1: Sequence[int], p2: Sequence[int]) -> tuple[int, ...]:
    """Dispatch to the flow-based solver when possible, exact search otherwise."""
    if blp.n_max <= 2:
        return solve_two_var_orp(blp, p1, p2)
    return solve_blp_orp_exact(blp, p1, p2)


PACKING = "packing"
PARTITION = "partition"
COVERING = "covering"


@dataclass(frozen=True)
class SetSystemInstance:
    """``max c x : A x <= e`` (packing), ``min c x : A x = e`` (partition)
    or ``min c x : A x >= e`` (covering) with a 0/1 matrix ``A``."""

    A: tuple[tuple[int, ...], ...]
    c: tuple[Fraction, ...]
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in (PACKING, PARTITION, COVERING):
            raise ValueError(f"unknown set-system kind {self.kind!r}")
        A = tuple(tuple(int(a) for a in row) for row in self.A)
        c = tuple(as_rational(v) for v in self.c)
        for row in A:
            if len(row) != len(c):
                raise ValueError("matrix rows must have one entry per column")
            if any(a not in (0, 1) for a in row):
                raise ValueError("set-system matrix entries must be 0 or 1")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "c", c)

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def sense(self) -> str:
        return MAX if self.kind == PACKING else MIN

    def row_sums(self, x: Sequence[int]) -> list[int]:
        return [sum(a for a, v in zip(row, x) if v) for row in self.A]

    def is_feasible(self, x: Sequence[int]) -> bool:
        if len(x) != self.n:
            return False
        sums = self.row_sums(x)
        if self.kind == PACKING:
            return all(s <= 1 for s in sums)
        if self.kind == PARTITION:
            return all(s == 1 for s in sums)
        return all(s >= 1 for s in sums)

    def objective(self, x: Sequence[int]) -> Fraction:
        return sum((cj for cj, v in zip(self.c, x) if v), Fraction(0))

    def encode(self, x: Sequence[int]) -> tuple[int, ...]:
        return as_bits(x)

    def to_blp(self) -> BlpInstance:
        relation = {PACKING: LE, PARTITION: "eq", COVERING: GE}[self.kind]
        rows = tuple(Row(tuple(Fraction(a) for a in row), relation, Fraction(1)) for row in self.A)
        return BlpInstance(self.c, rows, self.sense)

    def conflict_sets(self) -> list[frozenset[int]]:
        """For every column, the other columns sharing a row with it."""
        cols_of_row = [[j for j, a in enumerate(row) if a] for row in self.A]
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for cols in cols_of_row:
            for j in cols:
                nbrs[j].update(cols)
        return [frozenset(s - {j}) for j, s in enumerate(nbrs)]


def _set_parents(inst: SetSystemInstance, p1, p2):
    p1, p2 = as_bits(p1), as_bits(p2)
    for name, p in (("p1", p1), ("p2", p2)):
        if not inst.is_feasible(p):
            raise InfeasibleParentError(f"parent {name} is not a feasible {inst.kind}")
    return p1, p2


def set_packing_orp(inst: SetSystemInstance, p1: Sequence[int], p2: Sequence[int]) -> tuple[int, ...]:
    """Columns conflict when they share a row; recombine as an independent set."""
    if inst.kind != PACKING:
        raise WrongSolverError(f"expected a packing instance, got {inst.kind}")
    p1, p2 = _set_parents(inst, p1, p2)
    adj = inst.conflict_sets()
    return recombine_bipartite(inst.c, p1, p2, lambda u, v: v in adj[u])


def partition_penalty(inst: SetSystemInstance) -> Fraction:
    return 2 * sum((abs(v) for v in inst.c), Fraction(0)) + 1


def partition_as_packing(inst: SetSystemInstance) -> tuple[SetSystemInstance, Fraction]:
    """Packing instance whose objective is ``lam * m - f_part(x)`` on partitions."""
    lam = partition_penalty(inst)
    weights = tuple(lam * sum(row[j] for row in inst.A) - inst.c[j] for j in range(inst.n))
    return SetSystemInstance(inst.A, weights, PACKING), lam


def set_partition_orp(inst: SetSystemInstance, p1: Sequence[int], p2: Sequence[int]) -> tuple[int, ...]:
    if inst.kind != PARTITION:
        raise WrongSolverError(f"expected a partition instance, got {inst.kind}")
    p1, p2 = _set_parents(inst, p1, p2)
    packing, _ = partition_as_packing(inst)
    x = set_packing_orp(packing, p1, p2)
    if not inst.is_feasible(x):
        raise AssertionError("penalised packing optimum is not a partition")
    return x


@dataclass(frozen=True)
class SplpInstance:
    """Simple plant location with assignment variables ``Y`` (K x L) and opening flags ``u``."""

    opening: tuple[Fraction, ...]
    service: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        opening = tuple(as_rational(v) for v in self.opening)
        service = tuple(tuple(as_rational(v) for v in row) for row in self.service)
        if len(service) != len(opening):
            raise ValueError("need one service-cost row per facility")
        if len({len(row) for row in service}) > 1:
            raise ValueError("service-cost rows must have equal length")
        if any(v < 0 for v in opening) or any(v < 0 for row in service for v in row):
            raise ValueError("plant location costs must be nonnegative")
        object.__setattr__(self, "opening", opening)
        object.__setattr__(self, "service", service)

    @property
    def K(self) -> int:
        return len(self.opening)

    @property
    def L(self) -> int:
        return len(self.service[0]) if self.service else 0

    sense = MIN

    def encode(self, sol) -> tuple[int, ...]:
        Y, u = sol
        return tuple(int(b) for row in Y for b in row) + tuple(int(b) for b in u)

    def decode(self, bits: Sequence[int]) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
        K, L = self.K, self.L
        Y = tuple(tuple(bits[k * L:(k + 1) * L]) for k in range(K))
        return Y, tuple(bits[K * L:K * L + K])

    def is_feasible(self, sol) -> bool:
        Y, u = sol
        if len(Y) != self.K or len(u) != self.K or any(len(row) != self.L for row in Y):
            return False
        served_once = all(sum(Y[k][l] for k in range(self.K)) == 1 for l in range(self.L))
        opened = all(u[k] >= Y[k][l] for k in range(self.K) for l in range(self.L))
        return served_once and opened

    def objective(self, sol) -> Fraction:
        Y, u = sol
        total = sum((self.opening[k] for k in range(self.K) if u[k]), Fraction(0))
        return total + sum(
            (self.service[k][l] for k in range(self.K) for l in range(self.L) if Y[k][l]),
            Fraction(0),
        )


def splp_penalty(inst: SplpInstance) -> Fraction:
    worst = sum((max(inst.service[k][l] for k in range(inst.K)) for l in range(inst.L)), Fraction(0))
    return sum(inst.opening, Fraction(0)) + worst + 1


def splp_as_packing(inst: SplpInstance) -> tuple[SetSystemInstance, Fraction, Fraction]:
    """Packing instance over ``(Y, 1 - u)``; returns it with the penalty and the additive constant.

    On a feasible plant location ``(Y, u)`` the packing objective plus the
    constant equals ``-f_splp(Y, u)``.
    """
    K, L = inst.K, inst.L
    lam = splp_penalty(inst)
    n = K * L + K
    rows = []
    for l in range(L):
        row = [0] * n
        for k in range(K):
            row[k * L + l] = 1
        rows.append(row)
    for k in range(K):
        for l in range(L):
            row = [0] * n
            row[K * L + k] = 1
            row[k * L + l] = 1
            rows.append(row)
    c = [lam - inst.service[k][l] for k in range(K) for l in range(L)] + list(inst.opening)
    constant = -lam * L - sum(inst.opening, Fraction(0))
    return SetSystemInstance(tuple(map(tuple, rows)), tuple(c), PACKING), lam, constant


def _splp_beta(inst: SplpInstance, Y, u) -> tuple[int, ...]:
    return tuple(int(b) for row in Y for b in row) + tuple(1 - int(b) for b in u)


def splp_orp(inst: SplpInstance, Y1, u1, Y2, u2):
    """Optimal gene-transmitting ``(Y, u)`` for two feasible plant locations."""
    for name, sol in (("p1", (Y1, u1)), ("p2", (Y2, u2))):
        if not inst.is_feasible(sol):
            raise InfeasibleParentError(f"parent {name} is not a feasible plant location")
    packing, _, _ = splp_as_packing(inst)
    z = set_packing_orp(packing, _splp_beta(inst, Y1, u1), _splp_beta(inst, Y2, u2))
    Y, ubar = inst.decode(z)
    u = tuple(1 - b for b in ubar)
    if not inst.is_feasible((Y, u)):
        raise AssertionError("penalised packing optimum is not a feasible plant location")
    return Y, u


def gen_hard_setcover_orp(cover: SetSystemInstance) -> OrpInstance:
    """Recombination instance as hard as the covering instance itself.

    Columns are doubled; one parent takes every original column, the other
    every copy, so every covering solution of the original is reachable.
    """
    if cover.kind != COVERING:
        raise WrongSolverError(f"expected a covering instance, got {cover.kind}")
    for i, row in enumerate(cover.A):
        if not any(row):
            raise ValueError(f"row {i + 1} cannot be covered")
    n = cover.n
    doubled = SetSystemInstance(
        tuple(row + row for row in cover.A), cover.c + cover.c, COVERING
    )
    p1 = (1,) * n + (0,) * n
    p2 = (0,) * n + (1,) * n
    return OrpInstance(doubled.to_blp(), p1, p2)
