"""Polynomial recombination for clique, independent set and vertex cover.

Solutions are indicator vectors over the ordered vertex set.  For the
clique problem the parents' common vertices are kept, vertices outside both
parents are dropped, and the free vertices split into "only in p1" and
"only in p2".  Each side is a clique, so the complement of the induced
subgraph on the free vertices is bipartite and a maximum weight clique
there is a maximum weight independent set of that bipartite complement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import InfeasibleParentError, MAX, MIN, as_bits, as_rational, difference_set
from .flows import BipartiteGraph, bipartite_max_weight_independent_set


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph on vertices ``0..n-1`` with nonnegative weights."""

    weights: tuple[Fraction, ...]
    adj: tuple[frozenset[int], ...]

    @classmethod
    def from_edges(cls, weights: Iterable, edges: Iterable[tuple[int, int]]) -> "WeightedGraph":
        weights = tuple(as_rational(w) for w in weights)
        n = len(weights)
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u + 1}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u + 1}, {v + 1}) refers to a missing vertex")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(weights, tuple(frozenset(s) for s in nbrs))

    def __post_init__(self) -> None:
        if any(w < 0 for w in self.weights):
            raise ValueError("vertex weights must be nonnegative")
        if len(self.adj) != len(self.weights):
            raise ValueError("adjacency and weights disagree on the vertex count")

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def complement(self) -> "WeightedGraph":
        everyone = frozenset(range(self.n))
        return WeightedGraph(
            self.weights, tuple(everyone - self.adj[v] - {v} for v in range(self.n))
        )

    def weight(self, x: Sequence[int]) -> Fraction:
        return sum((w for w, b in zip(self.weights, x) if b), Fraction(0))

    def is_clique(self, x: Sequence[int]) -> bool:
        members = [v for v, b in enumerate(x) if b]
        return all(members[j] in self.adj[u] for i, u in enumerate(members) for j in range(i + 1, len(members)))

    def is_independent(self, x: Sequence[int]) -> bool:
        members = {v for v, b in enumerate(x) if b}
        return all(not (self.adj[u] & members) for u in members)

    def is_vertex_cover(self, x: Sequence[int]) -> bool:
        return all(x[u] or x[v] for u, v in self.edges)


class _GraphProblem:
    """Adapter giving a graph + feasibility predicate the generic instance protocol."""

    def __init__(self, graph: WeightedGraph, kind: str) -> None:
        self.graph = graph
        self.kind = kind
        self.sense = MIN if kind == "vc" else MAX

    def is_feasible(self, x: Sequence[int]) -> bool:
        if len(x) != self.graph.n:
            return False
        if self.kind == "clique":
            return self.graph.is_clique(x)
        if self.kind == "is":
            return self.graph.is_independent(x)
        return self.graph.is_vertex_cover(x)

    def encode(self, x: Sequence[int]) -> tuple[int, ...]:
        return as_bits(x)

    def objective(self, x: Sequence[int]) -> Fraction:
        return self.graph.weight(x)


def clique_problem(g: WeightedGraph) -> _GraphProblem:
    return _GraphProblem(g, "clique")


def independent_set_problem(g: WeightedGraph) -> _GraphProblem:
    return _GraphProblem(g, "is")


def vertex_cover_problem(g: WeightedGraph) -> _GraphProblem:
    return _GraphProblem(g, "vc")


def _check_parents(p1, p2, n, feasible, what):
    p1, p2 = as_bits(p1), as_bits(p2)
    for name, p in (("p1", p1), ("p2", p2)):
        if len(p) != n:
            raise InfeasibleParentError(f"parent {name} has length {len(p)}, expected {n}")
        if not feasible(p):
            raise InfeasibleParentError(f"parent {name} is not {what}")
    return p1, p2


def recombine_bipartite(
    weights: Sequence[Fraction],
    p1: Sequence[int],
    p2: Sequence[int],
    conflict,
) -> tuple[int, ...]:
    """Best gene-transmitting mix when free vertices only conflict across sides.

    ``conflict(u, v)`` reports whether ``u`` (only in ``p1``) and ``v`` (only
    in ``p2``) may not both be chosen.  Free vertices with negative weight
    are never worth taking in a downward-closed family and are left out.
    """
    D = sorted(difference_set(p1, p2))
    side1 = [j for j in D if p1[j] and weights[j] >= 0]
    side2 = [j for j in D if p2[j] and weights[j] >= 0]
    edges = [(u, v) for u in side1 for v in side2 if conflict(u, v)]
    bip = BipartiteGraph(tuple(side1), tuple(side2), tuple(edges), {j: weights[j] for j in side1 + side2})
    chosen = bipartite_max_weight_independent_set(bip)
    return tuple(1 if (a and b) or j in chosen else 0 for j, (a, b) in enumerate(zip(p1, p2)))


def clique_orp(g: WeightedGraph, p1: Sequence[int], p2: Sequence[int]) -> tuple[int, ...]:
    """Maximum weight clique among the gene-transmitting mixes of two cliques."""
    p1, p2 = _check_parents(p1, p2, g.n, g.is_clique, "a clique")
    adj = g.adj
    return recombine_bipartite(g.weights, p1, p2, lambda u, v: v not in adj[u])


def independent_set_orp(g: WeightedGraph, p1: Sequence[int], p2: Sequence[int]) -> tuple[int, ...]:
    """Maximum weight independent set mix; the clique ORP on the complement graph.

    Only the edges between the two free sides matter, so the complement is
    never materialised.
    """
    p1, p2 = _check_parents(p1, p2, g.n, g.is_independent, "an independent set")
    adj = g.adj
    return recombine_bipartite(g.weights, p1, p2, lambda u, v: v in adj[u])


def vertex_cover_orp(g: WeightedGraph, p1: Sequence[int], p2: Sequence[int]) -> tuple[int, ...]:
    """Minimum weight vertex cover mix.

    Flipping every bit maps covers to independent sets and minimising the
    cover weight to maximising the weight of the complement.
    """
    p1, p2 = _check_parents(p1, p2, g.n, g.is_vertex_cover, "a vertex cover")
    flip = lambda x: tuple(1 - b for b in x)  # noqa: E731
    return flip(independent_set_orp(g, flip(p1), flip(p2)))
