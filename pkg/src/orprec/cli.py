"""Command-line interface: ``orprec solve|verify|ga|bench|gen``.

Exit codes: 0 success, 2 bad input (parse error, invalid parameters),
3 infeasible parent, 4 size guard exceeded, 5 solver/oracle mismatch.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from . import formats as fmt
from .blp_orp import (
    COVERING,
    PACKING,
    PARTITION,
    SetSystemInstance,
    gen_hard_setcover_orp,
    set_packing_orp,
    set_partition_orp,
    solve_blp_orp,
    solve_blp_orp_exact,
    splp_orp,
)
from .core import (
    MAX,
    MIN,
    FormatError,
    GuardExceededError,
    InfeasibleParentError,
    WrongSolverError,
    format_rational,
)
from .ga import GaConfig, SequenceProblem, SubsetProblem, TourProblem, run
from .graph_orp import WeightedGraph, clique_orp, independent_set_orp, vertex_cover_orp
from .oracle import brute_force_binary_orp, brute_force_requisition_orp, brute_force_tour_orp
from .sched_orp import SetupInstance, build_requisition_graph, solve_makespan_orp
from .tsp_orp import Tour, TspInstance, tsp_orp

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_GUARD, EXIT_MISMATCH = 0, 2, 3, 4, 5

GRAPH_KINDS = ("clique", "is", "vc")
SET_KINDS = (PACKING, PARTITION, COVERING)
KINDS = GRAPH_KINDS + ("blp",) + SET_KINDS + ("splp", "tsp", "sched")


@dataclass
class Task:
    """A loaded recombination problem with uniform hooks for the commands."""

    kind: str
    instance: Any
    p1: Any
    p2: Any
    sense: str
    solve: Callable[[], Any]
    value: Callable[[Any], Fraction]
    render: Callable[[Any], str]
    oracle: Callable[[], tuple[Fraction, int]]


def _binary_oracle(feasible, objective, p1, p2, sense):
    def go():
        rep = brute_force_binary_orp(lambda x: (feasible(x), objective(x)), p1, p2, sense)
        return rep.value, rep.examined
    return go


def load_task(kind: str, instance_text: str, parents_text: str, workers: int = 1, cmax: bool = False) -> Task:
    if kind in GRAPH_KINDS:
        g = fmt.parse_graph(instance_text)
        p1, p2 = fmt.parse_bit_parents(parents_text, g.n)
        solver = {"clique": clique_orp, "is": independent_set_orp, "vc": vertex_cover_orp}[kind]
        check = {"clique": g.is_clique, "is": g.is_independent, "vc": g.is_vertex_cover}[kind]
        sense = MIN if kind == "vc" else MAX
        return Task(kind, g, p1, p2, sense, lambda: solver(g, p1, p2), g.weight, fmt.write_bits,
                    _binary_oracle(check, g.weight, p1, p2, sense))
    if kind == "blp":
        blp = fmt.parse_blp(instance_text)
        p1, p2 = fmt.parse_bit_parents(parents_text, blp.n)
        return Task(kind, blp, p1, p2, blp.sense, lambda: solve_blp_orp(blp, p1, p2), blp.objective,
                    fmt.write_bits, _binary_oracle(blp.is_feasible, blp.objective, p1, p2, blp.sense))
    if kind in SET_KINDS:
        inst = fmt.parse_setsys(instance_text)
        if inst.kind != kind:
            raise FormatError(f"setsys: file holds a {inst.kind} instance, --kind says {kind}")
        p1, p2 = fmt.parse_bit_parents(parents_text, inst.n)
        if kind == PACKING:
            solve = lambda: set_packing_orp(inst, p1, p2)  # noqa: E731
        elif kind == PARTITION:
            solve = lambda: set_partition_orp(inst, p1, p2)  # noqa: E731
        else:
            solve = lambda: solve_blp_orp_exact(inst.to_blp(), p1, p2)  # noqa: E731
        return Task(kind, inst, p1, p2, inst.sense, solve, inst.objective, fmt.write_bits,
                    _binary_oracle(inst.is_feasible, inst.objective, p1, p2, inst.sense))
    if kind == "splp":
        inst = fmt.parse_splp(instance_text)
        b1, b2 = fmt.parse_bit_parents(parents_text, inst.K * inst.L + inst.K)
        s1, s2 = inst.decode(b1), inst.decode(b2)

        def solve():
            return inst.encode(splp_orp(inst, *s1, *s2))

        def value(bits):
            return inst.objective(inst.decode(bits))

        def feasible(bits):
            return inst.is_feasible(inst.decode(bits))

        return Task(kind, inst, b1, b2, MIN, solve, value, fmt.write_bits,
                    _binary_oracle(feasible, value, b1, b2, MIN))
    if kind == "tsp":
        inst = fmt.parse_tsp(instance_text)
        t1, t2 = fmt.parse_tours(parents_text, inst.n)

        def tour_oracle():
            rep = brute_force_tour_orp(inst, t1, t2)
            return rep.value, rep.examined

        return Task(kind, inst, t1, t2, MIN, lambda: tsp_orp(inst, t1, t2, workers), inst.length,
                    fmt.write_tour, tour_oracle)
    if kind == "sched":
        inst = fmt.parse_sched(instance_text)
        p1, p2 = fmt.parse_job_parents(parents_text, inst.k)
        extra = sum(inst.processing, Fraction(0)) if cmax else Fraction(0)

        def sched_oracle():
            rep = brute_force_requisition_orp(inst, p1, p2)
            return rep.value + extra, rep.examined

        return Task(kind, inst, p1, p2, MIN, lambda: solve_makespan_orp(inst, p1, p2),
                    lambda perm: inst.setup_cost(perm) + extra, fmt.write_jobs, sched_oracle)
    raise FormatError(f"unknown kind {kind!r}")


def _load(args) -> Task:
    return load_task(args.kind, fmt.read_text(args.instance), fmt.read_text(args.parents),
                     workers=args.workers, cmax=args.cmax)


def cmd_solve(args, out) -> int:
    task = _load(args)
    x = task.solve()
    out.write(f"objective {format_rational(task.value(x))}\n")
    out.write(task.render(x))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    task = _load(args)
    x = task.solve()
    got = task.value(x)
    want, examined = task.oracle()
    verdict = "MATCH" if got == want else "MISMATCH"
    out.write(f"{verdict} solver {format_rational(got)} oracle {format_rational(want)} "
              f"candidates {examined}\n")
    return EXIT_OK if got == want else EXIT_MISMATCH


# -- GA ------------------------------------------------------------------------

GA_KEYS = {"pop", "pc", "pm", "gens", "seed", "problem", "instance", "parents", "workers", "crossover"}


def parse_ga_config(text: str) -> dict[str, str]:
    cfg: dict[str, str] = {}
    for no, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FormatError(f"ga config: expected 'key = value' (line {no})")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in GA_KEYS:
            raise FormatError(f"ga config: unknown key {key!r} (line {no})")
        cfg[key] = value
    for key in ("problem", "instance"):
        if key not in cfg:
            raise FormatError(f"ga config: missing {key!r}")
    return cfg


def ga_config_from(cfg: dict[str, str], base: Path = Path("."), seed: int | None = None) -> GaConfig:
    kind = cfg["problem"]
    text = fmt.read_text(base / cfg["instance"])
    workers = int(cfg.get("workers", 1))
    initial: list = []
    if kind in ("clique", "is", "vc"):
        problem = SubsetProblem(kind, fmt.parse_graph(text))
    elif kind == PACKING:
        problem = SubsetProblem("packing", fmt.parse_setsys(text))
        if problem.data.kind != PACKING:
            raise FormatError("ga: the packing problem needs a packing set system")
    elif kind == "tsp":
        problem = TourProblem(fmt.parse_tsp(text), workers)
    elif kind == "sched":
        problem = SequenceProblem(fmt.parse_sched(text))
    else:
        raise FormatError(f"ga: unsupported problem {kind!r}")
    if "parents" in cfg:
        ptext = fmt.read_text(base / cfg["parents"])
        if kind == "tsp":
            initial = list(fmt.parse_tours(ptext, problem.inst.n))
        elif kind == "sched":
            initial = list(fmt.parse_job_parents(ptext, problem.inst.k))
        else:
            initial = list(fmt.parse_bit_parents(ptext, problem.n))
    try:
        return GaConfig(
            problem,
            pop_size=int(cfg.get("pop", 10)),
            pc=float(cfg.get("pc", 1.0)),
            pm=float(cfg.get("pm", 0.05)),
            generations=int(cfg.get("gens", 50)),
            seed=int(cfg.get("seed", 0)) if seed is None else seed,
            crossover=cfg.get("crossover", "orp"),
            initial=initial,
        )
    except ValueError as exc:
        raise FormatError(f"ga config: {exc}") from exc


def _render_any(problem, x) -> str:
    if isinstance(problem, TourProblem):
        return fmt.write_tour(x)
    if isinstance(problem, SequenceProblem):
        return fmt.write_jobs(x)
    return fmt.write_bits(x)


def cmd_ga(args, out) -> int:
    path = Path(args.config)
    cfg = ga_config_from(parse_ga_config(fmt.read_text(path)), path.parent, args.seed)
    result = run(cfg)
    out.write(f"objective {format_rational(result.best_value)}\n")
    out.write(_render_any(cfg.problem, result.best))
    if args.history:
        Path(args.history).write_text(result.history_csv())
    return EXIT_OK


# -- generators ----------------------------------------------------------------

def random_clique_orp(n: int, d: int, rng: np.random.Generator, density: float = 0.9):
    """Graph with two overlapping cliques whose symmetric difference has ``d`` vertices.

    Returns ``(graph, p1, p2)``.  Cross edges between the private parts appear
    with probability ``density``; the rest of the graph is a sparse random
    scatter.
    """
    if d > n:
        raise ValueError("cannot have more differing vertices than vertices")
    perm = [int(v) for v in rng.permutation(n)]
    a, b = d // 2, d - d // 2
    shared = perm[d:d + max(0, min(n - d, d // 10))]
    only1, only2 = perm[:a], perm[a:d]
    edges = set()
    q1, q2 = only1 + shared, only2 + shared
    for clique in (q1, q2):
        for i, u in enumerate(clique):
            for v in clique[i + 1:]:
                edges.add((min(u, v), max(u, v)))
    if a and b:
        mask = rng.random((a, b)) < density
        for i, j in zip(*np.nonzero(mask)):
            u, v = only1[i], only2[j]
            edges.add((min(u, v), max(u, v)))
    for _ in range(n):
        u, v = (int(t) for t in rng.integers(n, size=2))
        if u != v:
            edges.add((min(u, v), max(u, v)))
    weights = [int(w) for w in rng.integers(1, 100, size=n)]
    g = WeightedGraph.from_edges(weights, edges)
    members1, members2 = set(q1), set(q2)
    p1 = tuple(int(v in members1) for v in range(n))
    p2 = tuple(int(v in members2) for v in range(n))
    return g, p1, p2


def random_sched_orp(k: int, rng: np.random.Generator, q: int | None = None):
    """Random setup instance and parents; with ``q`` the parents differ by ``q`` disjoint swaps."""
    setup = rng.integers(0, 100, size=(k, k))
    np.fill_diagonal(setup, 0)
    processing = rng.integers(1, 20, size=k)
    inst = SetupInstance(tuple(map(tuple, setup.tolist())), tuple(processing.tolist()))
    p1 = [int(v) for v in rng.permutation(k)]
    if q is None:
        p2 = [int(v) for v in rng.permutation(k)]
    else:
        if 2 * q > k:
            raise ValueError("q disjoint swaps need at least 2q jobs")
        p2 = list(p1)
        pos = [int(v) for v in rng.permutation(k)[: 2 * q]]
        for i, j in zip(pos[::2], pos[1::2]):
            p2[i], p2[j] = p2[j], p2[i]
    return inst, tuple(p1), tuple(p2)


def random_tsp_orp(n: int, rng: np.random.Generator, symmetric: bool = True):
    dist = rng.integers(1, 100, size=(n, n))
    if symmetric:
        dist = np.triu(dist, 1)
        dist = dist + dist.T
    np.fill_diagonal(dist, 0)
    inst = TspInstance(tuple(map(tuple, dist.tolist())), symmetric)
    t1 = Tour.from_sequence(rng.permutation(n))
    t2 = Tour.from_sequence(rng.permutation(n))
    return inst, t1, t2


def _gen_params(pairs: Sequence[str]) -> dict[str, str]:
    params = {}
    for item in pairs:
        if "=" not in item:
            raise FormatError(f"gen: parameter {item!r} is not key=value")
        key, value = item.split("=", 1)
        params[key] = value
    return params


def _int_param(params, key, default, minimum):
    try:
        v = int(params.get(key, default))
    except ValueError:
        raise FormatError(f"gen: {key} must be an integer") from None
    if v < minimum:
        raise FormatError(f"gen: {key} must be at least {minimum}")
    return v


def generate(generator: str, params: dict[str, str], seed: int) -> tuple[str, str, str]:
    """Return ``(instance_text, parents_text, instance_extension)``."""
    rng = np.random.default_rng(seed)
    allowed = {
        "setcover-hard": {"n", "instance"},
        "sched-random": {"k", "q"},
        "tsp-random": {"n", "kind"},
        "clique-random": {"n", "d"},
    }
    if generator not in allowed:
        raise FormatError(f"gen: unknown generator {generator!r}")
    unknown = set(params) - allowed[generator]
    if unknown:
        raise FormatError(f"gen: unknown parameters {sorted(unknown)} for {generator}")
    if generator == "setcover-hard":
        if "instance" in params:
            cover = fmt.parse_setsys(fmt.read_text(params["instance"]))
            if cover.kind != COVERING:
                raise FormatError("gen: setcover-hard needs a covering set system")
        else:
            n = _int_param(params, "n", 3, 1)
            eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
            cover = SetSystemInstance(eye, (1,) * n, COVERING)
        orp = gen_hard_setcover_orp(cover)
        return fmt.write_blp(orp.instance), fmt.write_bit_parents(orp.p1, orp.p2), "blp"
    if generator == "sched-random":
        k = _int_param(params, "k", 7, 2)
        q = _int_param(params, "q", 0, 0) if "q" in params else None
        try:
            inst, p1, p2 = random_sched_orp(k, rng, q)
        except ValueError as exc:
            raise FormatError(f"gen: {exc}") from exc
        return fmt.write_sched(inst), fmt.write_job_parents(p1, p2), "sched"
    if generator == "tsp-random":
        n = _int_param(params, "n", 6, 3)
        kind = params.get("kind", "sym")
        if kind not in ("sym", "gen"):
            raise FormatError("gen: kind must be sym or gen")
        inst, t1, t2 = random_tsp_orp(n, rng, kind == "sym")
        return fmt.write_tsp(inst), fmt.write_tours(t1, t2), "tsp"
    n = _int_param(params, "n", 20, 1)
    d = _int_param(params, "d", min(n, 8), 0)
    if d > n:
        raise FormatError("gen: d cannot exceed n")
    g, p1, p2 = random_clique_orp(n, d, rng)
    return fmt.write_graph(g), fmt.write_bit_parents(p1, p2), "graph"


def cmd_gen(args, out) -> int:
    inst_text, parents_text, ext = generate(args.generator, _gen_params(args.params), args.seed)
    prefix = Path(args.out)
    inst_path = prefix.with_name(prefix.name + "." + ext)
    parents_path = prefix.with_name(prefix.name + ".parents")
    inst_path.write_text(inst_text)
    parents_path.write_text(parents_text)
    out.write(f"wrote {inst_path} {parents_path}\n")
    return EXIT_OK


# -- benchmarks ------------------------------------------------------------------

BENCH_KINDS = ("clique", "sched", "tsp")


def _median_micros(fn: Callable[[], Any], reps: int) -> int:
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return int(round(float(np.median(times)) * 1e6))


def bench_rows(kind: str, sizes: Sequence[int], seed: int, reps: int = 3) -> list[tuple[str, int, int, int]]:
    """One ``(kind, n, d_or_q, micros)`` row per size, instances drawn from ``seed``.

    ``clique``: sizes are ``|D|`` with ``n = 5 |D|``; ``sched``: sizes are
    ``q`` with ``k = 2q + 4``; ``tsp``: sizes are ``n`` with random
    symmetric instances, reporting the contracted ``d``.
    """
    rows = []
    for size in sizes:
        rng = np.random.default_rng([seed, size])
        if kind == "clique":
            n = 5 * size
            g, p1, p2 = random_clique_orp(n, size, rng)
            micros = _median_micros(lambda: clique_orp(g, p1, p2), reps)
            rows.append((kind, n, size, micros))
        elif kind == "sched":
            k = 2 * size + 4
            inst, p1, p2 = random_sched_orp(k, rng, size)
            q = build_requisition_graph(p1, p2).q
            micros = _median_micros(lambda: solve_makespan_orp(inst, p1, p2), reps)
            rows.append((kind, k, q, micros))
        elif kind == "tsp":
            from .tsp_orp import contract_common_symmetric

            inst, t1, t2 = random_tsp_orp(size, rng, True)
            d = contract_common_symmetric(inst, t1, t2).d
            micros = _median_micros(lambda: tsp_orp(inst, t1, t2), reps)
            rows.append((kind, size, d, micros))
        else:
            raise FormatError(f"bench: unknown kind {kind!r}")
    return rows


def cmd_bench(args, out) -> int:
    if args.kind not in BENCH_KINDS:
        raise FormatError(f"bench: kind must be one of {', '.join(BENCH_KINDS)}")
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise FormatError("bench: sizes must be comma-separated integers") from None
    if any(s < 1 for s in sizes):
        raise FormatError("bench: sizes must be positive")
    out.write("kind,n,d_or_q,micros\n")
    for row in bench_rows(args.kind, sizes, args.seed, args.reps):
        out.write(",".join(map(str, row)) + "\n")
    return EXIT_OK


# -- entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orprec", description="Optimal recombination solvers.")
    sub = p.add_subparsers(dest="command", required=True)

    def problem_args(sp):
        sp.add_argument("--kind", required=True, choices=KINDS)
        sp.add_argument("--instance", required=True)
        sp.add_argument("--parents", required=True)
        sp.add_argument("--workers", type=int, default=1, help="processes for tour enumeration")
        sp.add_argument("--cmax", action="store_true", help="sched: report makespan incl. processing")

    sp = sub.add_parser("solve", help="solve one recombination problem")
    problem_args(sp)
    sp.set_defaults(func=cmd_solve)
    sp = sub.add_parser("verify", help="compare the solver with brute force")
    problem_args(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("ga", help="run the genetic algorithm from a config file")
    sp.add_argument("config")
    sp.add_argument("--seed", type=int, default=None, help="override the config seed")
    sp.add_argument("--history", help="write generation,best,mean CSV here")
    sp.set_defaults(func=cmd_ga)

    sp = sub.add_parser("bench", help="time the solvers over a size sweep")
    sp.add_argument("--kind", required=True)
    sp.add_argument("--sizes", default="", help="comma-separated sizes")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--reps", type=int, default=3)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("gen", help="write a generated instance and parents")
    sp.add_argument("generator")
    sp.add_argument("params", nargs="*", help="key=value parameters")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True, help="output path prefix")
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (FormatError, WrongSolverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InfeasibleParentError as exc:
        print(f"infeasible parent: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except GuardExceededError as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
