"""Brute-force reference solvers.

Each oracle enumerates the whole feasible set of a recombination problem
straight from its definition and shares no code path with the solvers it
certifies.  Size guards raise instead of truncating.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Any, Callable, Sequence

from .core import MAX, GuardExceededError, as_bits, as_rational, better, difference_set
from .sched_orp import SetupInstance
from .tsp_orp import Tour, TspInstance

BINARY_GUARD = 25
TOUR_GUARD = 10
REQUISITION_GUARD = 12


@dataclass(frozen=True)
class OracleReport:
    value: Fraction
    witness: Any
    examined: int


def brute_force_binary_orp(
    evaluator: Callable[[tuple[int, ...]], tuple[bool, Any]],
    p1: Sequence[int],
    p2: Sequence[int],
    sense: str = MAX,
    guard: int = BINARY_GUARD,
) -> OracleReport:
    """Enumerate all ``2**|D|`` completions and keep the best feasible one.

    ``evaluator(x)`` returns ``(feasible, value)``.  Parents always count as
    feasible.  ``examined`` is the number of feasible candidates seen.
    """
    p1, p2 = as_bits(p1), as_bits(p2)
    D = sorted(difference_set(p1, p2))
    if len(D) > guard:
        raise GuardExceededError(f"{len(D)} free positions exceed the oracle guard {guard}")
    x = list(p1)
    best_value, best_x, examined = None, None, 0
    for bits in product((0, 1), repeat=len(D)):
        for j, b in zip(D, bits):
            x[j] = b
        cand = tuple(x)
        feasible, value = evaluator(cand)
        if not feasible and cand not in (p1, p2):
            continue
        examined += 1
        value = as_rational(value)
        if best_value is None or better(value, best_value, sense):
            best_value, best_x = value, cand
    return OracleReport(best_value, best_x, examined)


def tour_is_transmitted(inst: TspInstance, tour: Tour, t1: Tour, t2: Tour) -> bool:
    """Uses only parent arcs (edges) and keeps every arc (edge) both parents share."""
    if inst.symmetric:
        mine, a, b = tour.edges(), t1.edges(), t2.edges()
    else:
        mine, a, b = tour.arcs(), t1.arcs(), t2.arcs()
    return mine <= (a | b) and (a & b) <= mine


def brute_force_tour_orp(
    inst: TspInstance, t1: Tour, t2: Tour, guard: int = TOUR_GUARD
) -> OracleReport:
    """Try every circular order of the vertices.

    For symmetric instances a tour and its reversal are counted once.
    """
    n = inst.n
    if n > guard:
        raise GuardExceededError(f"{n} vertices exceed the tour oracle guard {guard}")
    if inst.symmetric:
        a, b = t1.edges(), t2.edges()
    else:
        a, b = t1.arcs(), t2.arcs()
    allowed, required = a | b, a & b
    best_value, best_seq = None, None
    seen = set()
    for rest in permutations(range(1, n)):
        seq = (0,) + rest
        arcs = list(zip(seq, rest + (0,)))
        if inst.symmetric:
            key = frozenset((min(u, v), max(u, v)) for u, v in arcs)
        else:
            key = frozenset(arcs)
        if not (key <= allowed and required <= key) or key in seen:
            continue
        seen.add(key)
        value = sum((inst.dist[u][v] for u, v in arcs), Fraction(0))
        if best_value is None or value < best_value:
            best_value, best_seq = value, seq
    return OracleReport(best_value, Tour.from_sequence(best_seq), len(seen))


def brute_force_requisition_orp(
    inst: SetupInstance, p1: Sequence[int], p2: Sequence[int], guard: int = REQUISITION_GUARD
) -> OracleReport:
    """Pick ``p1[i]`` or ``p2[i]`` at every position and keep the bijective choices."""
    k = len(p1)
    if k > guard:
        raise GuardExceededError(f"{k} jobs exceed the requisition oracle guard {guard}")
    options = [sorted({a, b}) for a, b in zip(p1, p2)]
    best_value, best_perm, examined = None, None, 0
    for perm in product(*options):
        if len(set(perm)) != k:
            continue
        examined += 1
        value = sum((inst.setup[a][b] for a, b in zip(perm, perm[1:])), Fraction(0))
        if best_value is None or value < best_value:
            best_value, best_perm = value, perm
    return OracleReport(best_value, best_perm, examined)
