"""Recombination of travelling salesman tours.

An offspring tour may only use arcs (edges, in the symmetric case) found in
a parent and must keep every arc both parents share.  Paths common to both
parents are contracted, which leaves a sparse graph: at most two arcs in
and two out per vertex in the directed case, degree at most four in the
symmetric case.  Hamiltonian cycles through the contracted paths are then
enumerated by backtracking.

Directed case: each vertex ``v`` of the contracted digraph is split into an
entry node ``2*i`` and an exit node ``2*i + 1`` joined by a zero-length
artificial arc, every arc ``(u, v)`` becomes ``(exit(u), entry(v))``, and
Hamiltonian cycles of the undirected shadow are enumerated with the
artificial arcs and contracted paths forced.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .core import InfeasibleParentError, MIN, as_rational


@dataclass(frozen=True)
class TspInstance:
    dist: tuple[tuple[Fraction, ...], ...]
    symmetric: bool = False

    def __post_init__(self) -> None:
        dist = tuple(tuple(as_rational(v) for v in row) for row in self.dist)
        n = len(dist)
        if n < 3:
            raise ValueError("a tour needs at least three vertices")
        if any(len(row) != n for row in dist):
            raise ValueError("distance matrix must be square")
        if any(dist[i][j] < 0 for i in range(n) for j in range(n) if i != j):
            raise ValueError("arc lengths must be nonnegative")
        if self.symmetric and any(dist[i][j] != dist[j][i] for i in range(n) for j in range(i)):
            raise ValueError("symmetric instance has an asymmetric distance matrix")
        object.__setattr__(self, "dist", dist)

    sense = MIN

    @property
    def n(self) -> int:
        return len(self.dist)

    def length(self, tour: "Tour") -> Fraction:
        return sum((self.dist[i][j] for i, j in tour.arcs()), Fraction(0))

    objective = length

    def is_feasible(self, tour: "Tour") -> bool:
        return isinstance(tour, Tour) and tour.n == self.n

    def encode(self, tour: "Tour") -> tuple[int, ...]:
        """Successor matrix, or its strict upper triangle for symmetric instances."""
        n = self.n
        if self.symmetric:
            edges = tour.edges()
            return tuple(int((i, j) in edges) for i in range(n) for j in range(i + 1, n))
        succ = tour.succ
        return tuple(int(succ[i] == j) for i in range(n) for j in range(n))


@dataclass(frozen=True)
class Tour:
    """Hamiltonian circuit stored as a successor array."""

    succ: tuple[int, ...]

    def __post_init__(self) -> None:
        succ = tuple(int(v) for v in self.succ)
        n = len(succ)
        if sorted(succ) != list(range(n)):
            raise InfeasibleParentError("successor array is not a permutation")
        v, steps = 0, 0
        while True:
            v = succ[v]
            steps += 1
            if v == 0:
                break
        if steps != n:
            raise InfeasibleParentError("successor array has more than one cycle")
        object.__setattr__(self, "succ", succ)

    @classmethod
    def from_sequence(cls, seq: Sequence[int]) -> "Tour":
        seq = [int(v) for v in seq]
        if sorted(seq) != list(range(len(seq))):
            raise InfeasibleParentError("tour must visit every vertex exactly once")
        succ = [0] * len(seq)
        for a, b in zip(seq, seq[1:] + seq[:1]):
            succ[a] = b
        return cls(tuple(succ))

    @property
    def n(self) -> int:
        return len(self.succ)

    def sequence(self) -> tuple[int, ...]:
        out = [0]
        while len(out) < self.n:
            out.append(self.succ[out[-1]])
        return tuple(out)

    def arcs(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i, j in enumerate(self.succ))

    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((min(i, j), max(i, j)) for i, j in enumerate(self.succ))

    def reversed(self) -> "Tour":
        return Tour.from_sequence(self.sequence()[::-1])


def _key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class ContractedTspGraph:
    """Contracted graph for one tour recombination.

    ``arcs`` lists the surviving parent arcs and the pseudo-arcs as
    ``(tail, head, length)`` in original vertex ids (``tail < head`` edges in
    the symmetric case, where forced edges have length zero).  ``paths``
    maps each pseudo-arc / forced edge to the common path it replaces.
    ``ham_*`` describe the undirected graph whose Hamiltonian cycles are
    enumerated: the shadow of the split digraph in the general case and
    the contracted graph itself in the symmetric case.
    """

    symmetric: bool
    vertices: tuple[int, ...]
    arcs: tuple[tuple[int, int, Fraction], ...]
    paths: Mapping[tuple[int, int], tuple[int, ...]]
    offset: Fraction
    ham_size: int
    ham_edges: frozenset[tuple[int, int]]
    forced: frozenset[tuple[int, int]]
    directed_arcs: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)
    whole: bool = False

    @property
    def d(self) -> int:
        """Number of free (non-forced) edges to enumerate over."""
        return len(self.ham_edges) - len(self.forced)

    def degrees(self) -> list[int]:
        deg = [0] * self.ham_size
        for a, b in self.ham_edges:
            deg[a] += 1
            deg[b] += 1
        return deg


def _check_tours(inst: TspInstance, t1: Tour, t2: Tour) -> None:
    for name, t in (("t1", t1), ("t2", t2)):
        if not isinstance(t, Tour) or t.n != inst.n:
            raise InfeasibleParentError(f"parent {name} is not a tour on {inst.n} vertices")


def _whole(inst: TspInstance, symmetric: bool) -> ContractedTspGraph:
    return ContractedTspGraph(symmetric, (), (), {}, Fraction(0), 0, frozenset(), frozenset(), {}, True)


def contract_common_general(inst: TspInstance, t1: Tour, t2: Tour) -> ContractedTspGraph:
    _check_tours(inst, t1, t2)
    n = inst.n
    common = t1.arcs() & t2.arcs()
    if len(common) == n:
        return _whole(inst, False)
    pred1 = {j: i for i, j in enumerate(t1.succ)}
    interior: set[int] = set()
    paths: dict[tuple[int, int], tuple[int, ...]] = {}
    for start in range(n):
        if (start, t1.succ[start]) in common and (pred1[start], start) not in common:
            path = [start]
            while (path[-1], t1.succ[path[-1]]) in common:
                path.append(t1.succ[path[-1]])
            interior.update(path[1:-1])
            paths[(path[0], path[-1])] = tuple(path)
    vertices = tuple(v for v in range(n) if v not in interior)
    arcs: list[tuple[int, int, Fraction]] = []
    for (u, v), path in paths.items():
        arcs.append((u, v, sum((inst.dist[a][b] for a, b in zip(path, path[1:])), Fraction(0))))
    for u, v in sorted((t1.arcs() | t2.arcs()) - common):
        arcs.append((u, v, inst.dist[u][v]))

    index = {v: i for i, v in enumerate(vertices)}
    directed: dict[tuple[int, int], Fraction] = {}
    forced: set[tuple[int, int]] = set()
    for i in range(len(vertices)):
        directed[(2 * i, 2 * i + 1)] = Fraction(0)
        forced.add((2 * i, 2 * i + 1))
    for u, v, length in arcs:
        a, b = 2 * index[u] + 1, 2 * index[v]
        directed[(a, b)] = length
        if (u, v) in paths:
            forced.add(_key(a, b))
    ham_edges = frozenset(_key(a, b) for a, b in directed)
    return ContractedTspGraph(
        False, vertices, tuple(arcs), paths, Fraction(0), 2 * len(vertices),
        ham_edges, frozenset(forced), directed,
    )


def contract_common_symmetric(inst: TspInstance, t1: Tour, t2: Tour) -> ContractedTspGraph:
    if not inst.symmetric:
        raise ValueError("symmetric contraction needs a symmetric instance")
    _check_tours(inst, t1, t2)
    n = inst.n
    E1, E2 = t1.edges(), t2.edges()
    common = E1 & E2
    if common == E1:
        return _whole(inst, True)
    nbrs: dict[int, list[int]] = {v: [] for v in range(n)}
    for a, b in common:
        nbrs[a].append(b)
        nbrs[b].append(a)
    interior = {v for v in range(n) if len(nbrs[v]) == 2}
    paths: dict[tuple[int, int], tuple[int, ...]] = {}
    offset = Fraction(0)
    seen: set[int] = set()
    for v in range(n):
        if len(nbrs[v]) != 1 or v in seen:
            continue
        path = [v]
        prev = None
        while True:
            nxt = [w for w in nbrs[path[-1]] if w != prev]
            if not nxt:
                break
            prev = path[-1]
            path.append(nxt[0])
        seen.update((path[0], path[-1]))
        if path[0] > path[-1]:
            path.reverse()
        paths[(path[0], path[-1])] = tuple(path)
        offset += sum((inst.dist[a][b] for a, b in zip(path, path[1:])), Fraction(0))
    vertices = tuple(v for v in range(n) if v not in interior)
    index = {v: i for i, v in enumerate(vertices)}
    arcs = [(u, v, Fraction(0)) for (u, v) in paths]
    arcs += [(u, v, inst.dist[u][v]) for u, v in sorted((E1 | E2) - common)]
    ham_edges = frozenset(_key(index[u], index[v]) for u, v, _ in arcs)
    forced = frozenset(_key(index[u], index[v]) for u, v in paths)
    return ContractedTspGraph(
        True, vertices, tuple(arcs), paths, offset, len(vertices), ham_edges, forced,
    )


def enumerate_hamiltonian_cycles(
    n: int,
    edges: Iterator[tuple[int, int]] | frozenset[tuple[int, int]],
    forced: frozenset[tuple[int, int]] | set = frozenset(),
    first: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield every Hamiltonian cycle containing all ``forced`` edges exactly once.

    Cycles start at vertex 0 and are yielded in the direction whose second
    vertex is smaller than the last one.  ``first`` restricts the second
    vertex, which lets callers split the search.
    """
    if n < 3:
        return
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in sorted(set(_key(a, b) for a, b in edges)):
        adj[a].append(b)
        adj[b].append(a)
    for nb in adj:
        nb.sort()
    fadj: list[set[int]] = [set() for _ in range(n)]
    for a, b in forced:
        if b not in adj[a]:
            raise ValueError(f"forced edge ({a}, {b}) is not an edge")
        fadj[a].add(b)
        fadj[b].add(a)
    if any(len(f) > 2 for f in fadj) or any(len(nb) < 2 for nb in adj):
        return

    visited = [False] * n
    visited[0] = True
    path = [0]

    def open_degree(w: int, end: int) -> int:
        return sum(1 for x in adj[w] if not visited[x] or x == end or x == 0)

    def extend() -> Iterator[tuple[int, ...]]:
        u = path[-1]
        if len(path) == n:
            if 0 in adj[u] and path[1] < u and fadj[0] <= {path[1], u} and fadj[u] <= {path[-2], 0}:
                yield tuple(path)
            return
        if len(path) == 1:
            cands = adj[0] if first is None else [first]
        else:
            need = fadj[u] - {path[-2]}
            if len(need) > 1:
                return
            cands = sorted(need) if need else adj[u]
        last_step = len(path) + 1 == n
        for v in cands:
            if visited[v]:
                continue
            if any(visited[w] and w != u and not (w == 0 and last_step) for w in fadj[v]):
                continue
            visited[v] = True
            path.append(v)
            # u is now interior: its other unvisited neighbours lose one option
            if len(path) == 2 or all(
                open_degree(w, v) >= 2 for w in adj[u] if not visited[w]
            ):
                yield from extend()
            path.pop()
            visited[v] = False

    yield from extend()


def _orient(cycle: Sequence[int], directed: Mapping[tuple[int, int], Fraction]):
    for seq in (list(cycle), list(cycle[:1]) + list(cycle[:0:-1])):
        pairs = list(zip(seq, seq[1:] + seq[:1]))
        if all(p in directed for p in pairs):
            return seq, sum((directed[p] for p in pairs), Fraction(0))
    return None


def _expand_general(g: ContractedTspGraph, oriented: Sequence[int]) -> Tour:
    order = [g.vertices[a // 2] for a in oriented if a % 2 == 0]
    seq: list[int] = []
    for u, v in zip(order, order[1:] + order[:1]):
        seq.extend(g.paths[(u, v)][:-1] if (u, v) in g.paths else (u,))
    return Tour.from_sequence(seq)


def _expand_symmetric(g: ContractedTspGraph, cycle: Sequence[int]) -> Tour:
    order = [g.vertices[a] for a in cycle]
    seq: list[int] = []
    for u, v in zip(order, order[1:] + order[:1]):
        key = _key(u, v)
        if key in g.paths:
            path = g.paths[key]
            if path[0] != u:
                path = path[::-1]
            seq.extend(path[:-1])
        else:
            seq.append(u)
    return Tour.from_sequence(seq)


def _best_general(g: ContractedTspGraph, first: int | None):
    best = None
    for cycle in enumerate_hamiltonian_cycles(g.ham_size, g.ham_edges, g.forced, first):
        found = _orient(cycle, g.directed_arcs)
        if found is not None and (best is None or found[1] < best[1]):
            best = found
    return best


def _best_symmetric(g: ContractedTspGraph, first: int | None):
    index = {v: i for i, v in enumerate(g.vertices)}
    length = {_key(index[u], index[v]): w for u, v, w in g.arcs}
    best = None
    for cycle in enumerate_hamiltonian_cycles(g.ham_size, g.ham_edges, g.forced, first):
        cost = sum((length[_key(a, b)] for a, b in zip(cycle, cycle[1:] + cycle[:1])), Fraction(0))
        if best is None or cost < best[1]:
            best = (list(cycle), cost)
    return best


def _search(g: ContractedTspGraph, workers: int):
    worker = _best_symmetric if g.symmetric else _best_general
    if workers <= 1:
        return worker(g, None)
    firsts = sorted({b for a, b in g.ham_edges if a == 0} | {a for a, b in g.ham_edges if b == 0})
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(worker, [g] * len(firsts), firsts))
    best = None
    for res in results:
        if res is not None and (best is None or res[1] < best[1]):
            best = res
    return best


def tsp_orp_general(inst: TspInstance, t1: Tour, t2: Tour, workers: int = 1) -> Tour:
    """Shortest directed tour built from parent arcs that keeps every shared arc."""
    g = contract_common_general(inst, t1, t2)
    if g.whole:
        return t1
    best = _search(g, workers)
    if best is None:
        raise AssertionError("no Hamiltonian circuit found although the parents are feasible")
    return _expand_general(g, best[0])


def tsp_orp_symmetric(inst: TspInstance, t1: Tour, t2: Tour, workers: int = 1) -> Tour:
    """Shortest tour over parent edges that keeps every shared edge."""
    g = contract_common_symmetric(inst, t1, t2)
    if g.whole:
        return t1
    best = _search(g, workers)
    if best is None:
        raise AssertionError("no Hamiltonian cycle found although the parents are feasible")
    return _expand_symmetric(g, best[0])


def tsp_orp(inst: TspInstance, t1: Tour, t2: Tour, workers: int = 1) -> Tour:
    if inst.symmetric:
        return tsp_orp_symmetric(inst, t1, t2, workers)
    return tsp_orp_general(inst, t1, t2, workers)
