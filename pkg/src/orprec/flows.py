"""Maximum flow / minimum cut and weighted bipartite vertex cover.

Capacities are exact rationals.  Internally they are scaled by the least
common multiple of their denominators so the blocking-flow loop runs on
Python ints.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Hashable, Iterable, Mapping

from .core import as_rational


@dataclass(frozen=True)
class FlowNetwork:
    n_nodes: int
    source: int
    sink: int
    arcs: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self) -> None:
        arcs = []
        for tail, head, cap in self.arcs:
            cap = as_rational(cap)
            if cap < 0:
                raise ValueError("arc capacities must be nonnegative")
            if not (0 <= tail < self.n_nodes and 0 <= head < self.n_nodes):
                raise ValueError(f"arc ({tail}, {head}) refers to a missing node")
            arcs.append((tail, head, cap))
        if self.source == self.sink:
            raise ValueError("source and sink must differ")
        object.__setattr__(self, "arcs", tuple(arcs))


@dataclass(frozen=True)
class FlowResult:
    value: Fraction
    cut: frozenset[int]  # indices into FlowNetwork.arcs
    source_side: frozenset[int]
    flows: tuple[Fraction, ...]


class _Dinic:
    def __init__(self, n: int) -> None:
        self.n = n
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_arc(self, u: int, v: int, c: int) -> None:
        self.adj[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.adj[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def _bfs(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        to, cap, adj = self.to, self.cap, self.adj
        while queue:
            u = queue.popleft()
            for e in adj[u]:
                v = to[e]
                if cap[e] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def _blocking_flow(self, s: int, t: int, level: list[int]) -> int:
        to, cap, adj = self.to, self.cap, self.adj
        it = [0] * self.n
        total = 0
        while True:
            path: list[int] = []
            u = s
            while u != t:
                edges = adj[u]
                i = it[u]
                while i < len(edges):
                    e = edges[i]
                    v = to[e]
                    if cap[e] > 0 and level[v] == level[u] + 1:
                        break
                    i += 1
                it[u] = i
                if i < len(edges):
                    path.append(edges[i])
                    u = to[edges[i]]
                    continue
                if u == s:
                    return total
                level[u] = -1
                e = path.pop()
                u = to[e ^ 1]
                it[u] += 1
            f = min(cap[e] for e in path)
            for e in path:
                cap[e] -= f
                cap[e ^ 1] += f
            total += f

    def run(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = self._bfs(s, t)
            if level is None:
                return flow
            flow += self._blocking_flow(s, t, level)

    def reachable(self, s: int) -> set[int]:
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in self.adj[u]:
                v = self.to[e]
                if self.cap[e] > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen


def max_flow_min_cut(net: FlowNetwork) -> FlowResult:
    """Maximum flow value and a minimum cut of ``net``.

    The returned cut is the one with the smallest source side, which is the
    same for every maximum flow, so the output does not depend on
    augmentation order.
    """
    scale = lcm(1, *(cap.denominator for _, _, cap in net.arcs))
    solver = _Dinic(net.n_nodes)
    for tail, head, cap in net.arcs:
        solver.add_arc(tail, head, int(cap * scale))
    value = solver.run(net.source, net.sink)
    side = solver.reachable(net.source)
    cut = frozenset(
        i for i, (tail, head, _) in enumerate(net.arcs) if tail in side and head not in side
    )
    flows = tuple(
        Fraction(solver.cap[2 * i + 1], scale) for i in range(len(net.arcs))
    )
    return FlowResult(Fraction(value, scale), cut, frozenset(side), flows)


@dataclass(frozen=True)
class BipartiteGraph:
    """Vertex-weighted bipartite graph with explicit sides."""

    left: tuple[Hashable, ...]
    right: tuple[Hashable, ...]
    edges: tuple[tuple[Hashable, Hashable], ...]
    weights: Mapping[Hashable, Fraction]

    def __post_init__(self) -> None:
        left, right = tuple(self.left), tuple(self.right)
        lset, rset = set(left), set(right)
        if lset & rset:
            raise ValueError("bipartition sides overlap")
        seen = set()
        edges = []
        for u, v in self.edges:
            if u in rset and v in lset:
                u, v = v, u
            if u not in lset or v not in rset:
                raise ValueError(f"edge ({u!r}, {v!r}) does not cross the bipartition")
            if (u, v) not in seen:
                seen.add((u, v))
                edges.append((u, v))
        weights = {v: as_rational(self.weights[v]) for v in left + right}
        if any(w < 0 for w in weights.values()):
            raise ValueError("vertex weights must be nonnegative")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "weights", weights)

    @property
    def vertices(self) -> tuple[Hashable, ...]:
        return self.left + self.right

    def weight(self, vertices: Iterable[Hashable]) -> Fraction:
        return sum((self.weights[v] for v in vertices), Fraction(0))


def cover_network(g: BipartiteGraph) -> FlowNetwork:
    """Source feeds the left side, the right side drains to the sink.

    Left-to-right arcs carry ``max(w(u), w(v))``.  Node 0 is the source,
    node 1 the sink, then left vertices, then right vertices.
    """
    index = {v: 2 + i for i, v in enumerate(g.vertices)}
    arcs = [(0, index[u], g.weights[u]) for u in g.left]
    arcs += [(index[v], 1, g.weights[v]) for v in g.right]
    arcs += [(index[u], index[v], max(g.weights[u], g.weights[v])) for u, v in g.edges]
    return FlowNetwork(2 + len(index), 0, 1, tuple(arcs))


def bipartite_min_weight_vertex_cover(g: BipartiteGraph) -> frozenset[Hashable]:
    """Minimum weight vertex cover of a bipartite graph via one minimum cut.

    A left vertex still on the source side with a crossing left-to-right arc
    is moved to the sink side; that swaps the crossing arcs (each of
    capacity at least ``w(u)``) for the source arc of capacity ``w(u)``, so
    the cut stays minimal and consists only of source and sink arcs.
    """
    if not g.vertices:
        return frozenset()
    net = cover_network(g)
    result = max_flow_min_cut(net)
    index = {v: 2 + i for i, v in enumerate(g.vertices)}
    side = set(result.source_side)
    for u, v in g.edges:
        if index[u] in side and index[v] not in side:
            side.discard(index[u])
    cover = {u for u in g.left if index[u] not in side}
    cover |= {v for v in g.right if index[v] in side}
    return frozenset(cover)


def bipartite_max_weight_independent_set(g: BipartiteGraph) -> frozenset[Hashable]:
    """Complement of the minimum weight vertex cover."""
    cover = bipartite_min_weight_vertex_cover(g)
    return frozenset(v for v in g.vertices if v not in cover)
