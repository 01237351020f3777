"""Plain-text instance and solution formats.

Every format is line oriented with whitespace-separated tokens.  Blank
lines and lines starting with ``#`` are ignored.  Vertex, job and column
ids are 1-based in files and 0-based in memory.  Numbers may be integers,
decimals or fractions such as ``3/2``; writers emit integers or fractions
so that ``parse(write(x))`` reproduces ``x`` exactly.

Formats
-------
blp       ``blp n m max|min``, a cost line, then ``m`` lines ``a_1 .. a_n le|ge|eq b``
parents   ``parents`` then two lines of ``n`` 0/1 values
graph     ``graph n m``, ``n`` lines ``v id w``, ``m`` lines ``e u v``
setsys    ``setsys packing|partition|covering m n``, a cost line, ``m`` 0/1 rows
splp      ``splp K L``, an opening-cost line, ``K`` lines of ``L`` service costs
tsp       ``tsp n sym|gen`` then ``n`` rows of ``n`` distances
tours     two lines of ``n`` vertex ids, each a cyclic sequence
sched     ``sched k``, a processing-time line, ``k`` rows of ``k`` setups
jobs      two lines of ``k`` job ids
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .blp_orp import COVERING, PACKING, PARTITION, SetSystemInstance, SplpInstance
from .core import EQ, GE, LE, MAX, MIN, BlpInstance, FormatError, Row, as_rational, format_rational
from .graph_orp import WeightedGraph
from .sched_orp import SetupInstance
from .tsp_orp import Tour, TspInstance


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for no, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if line and not line.startswith("#"):
            out.append((no, line.split()))
    return out


class _Reader:
    def __init__(self, text: str, what: str) -> None:
        self.lines = _lines(text)
        self.pos = 0
        self.what = what

    def fail(self, msg: str, no: int | None = None) -> FormatError:
        where = f" (line {no})" if no is not None else ""
        return FormatError(f"{self.what}: {msg}{where}")

    def next(self, expect: str) -> tuple[int, list[str]]:
        if self.pos >= len(self.lines):
            raise self.fail(f"unexpected end of input, expected {expect}")
        item = self.lines[self.pos]
        self.pos += 1
        return item

    def header(self, keyword: str, nargs: int) -> tuple[int, list[str]]:
        no, tok = self.next(f"'{keyword}' header")
        if tok[0].lower() != keyword or len(tok) != nargs + 1:
            raise self.fail(f"expected '{keyword}' header with {nargs} fields", no)
        return no, tok[1:]

    def count(self, token: str, no: int, minimum: int = 0) -> int:
        try:
            v = int(token)
        except ValueError:
            raise self.fail(f"{token!r} is not an integer", no) from None
        if v < minimum:
            raise self.fail(f"count {v} below {minimum}", no)
        return v

    def numbers(self, tokens: Sequence[str], no: int) -> list[Fraction]:
        try:
            return [as_rational(t) for t in tokens]
        except (ValueError, ZeroDivisionError):
            raise self.fail("bad number", no) from None

    def row(self, length: int, expect: str) -> tuple[int, list[str]]:
        no, tok = self.next(expect)
        if len(tok) != length:
            raise self.fail(f"expected {length} values in {expect}, got {len(tok)}", no)
        return no, tok

    def ids(self, tokens: Sequence[str], no: int, n: int) -> list[int]:
        out = [self.count(t, no, 1) - 1 for t in tokens]
        if any(v >= n for v in out):
            raise self.fail(f"id out of range 1..{n}", no)
        return out

    def done(self) -> None:
        if self.pos != len(self.lines):
            raise self.fail("trailing content", self.lines[self.pos][0])


def _join(values) -> str:
    return " ".join(format_rational(v) for v in values)


def _build(cls, what: str, *args, **kwargs):
    try:
        return cls(*args, **kwargs)
    except ValueError as exc:
        raise FormatError(f"{what}: {exc}") from exc


# -- Boolean linear programs -------------------------------------------------

def parse_blp(text: str) -> BlpInstance:
    r = _Reader(text, "blp")
    no, (n, m, sense) = r.header("blp", 3)
    n, m = r.count(n, no, 1), r.count(m, no)
    if sense not in (MAX, MIN):
        raise r.fail(f"sense must be max or min, got {sense!r}", no)
    no, tok = r.row(n, "the cost line")
    c = r.numbers(tok, no)
    rows = []
    for _ in range(m):
        no, tok = r.row(n + 2, "a constraint row")
        if tok[n] not in (LE, GE, EQ):
            raise r.fail(f"relation must be le, ge or eq, got {tok[n]!r}", no)
        nums = r.numbers(tok[:n] + tok[n + 1:], no)
        rows.append(Row(tuple(nums[:n]), tok[n], nums[n]))
    r.done()
    return _build(BlpInstance, "blp", tuple(c), tuple(rows), sense)


def write_blp(inst: BlpInstance) -> str:
    lines = [f"blp {inst.n} {inst.m} {inst.sense}", _join(inst.c)]
    for row in inst.rows:
        lines.append(f"{_join(row.coeffs)} {row.relation} {format_rational(row.rhs)}")
    return "\n".join(lines) + "\n"


def parse_bit_parents(text: str, n: int | None = None) -> tuple[tuple[int, ...], tuple[int, ...]]:
    r = _Reader(text, "parents")
    no, tok = r.next("'parents' header")
    if tok != ["parents"]:
        raise r.fail("expected a 'parents' line", no)
    out = []
    for _ in range(2):
        no, tok = r.next("a parent vector")
        if any(t not in ("0", "1") for t in tok):
            raise r.fail("parent entries must be 0 or 1", no)
        if n is not None and len(tok) != n:
            raise r.fail(f"expected {n} entries, got {len(tok)}", no)
        out.append(tuple(int(t) for t in tok))
    if len(out[0]) != len(out[1]):
        raise r.fail("parents have different lengths")
    r.done()
    return out[0], out[1]


def write_bit_parents(p1: Sequence[int], p2: Sequence[int]) -> str:
    return "parents\n" + " ".join(map(str, p1)) + "\n" + " ".join(map(str, p2)) + "\n"


def write_bits(x: Sequence[int]) -> str:
    return " ".join(str(int(b)) for b in x) + "\n"


# -- graphs ------------------------------------------------------------------

def parse_graph(text: str) -> WeightedGraph:
    r = _Reader(text, "graph")
    no, (n, m) = r.header("graph", 2)
    n, m = r.count(n, no, 1), r.count(m, no)
    weights: list[Fraction | None] = [None] * n
    for _ in range(n):
        no, tok = r.row(3, "a vertex line")
        if tok[0] != "v":
            raise r.fail("expected a 'v' line", no)
        (v,) = r.ids(tok[1:2], no, n)
        if weights[v] is not None:
            raise r.fail(f"vertex {v + 1} listed twice", no)
        weights[v] = r.numbers(tok[2:], no)[0]
    edges = []
    for _ in range(m):
        no, tok = r.row(3, "an edge line")
        if tok[0] != "e":
            raise r.fail("expected an 'e' line", no)
        edges.append(tuple(r.ids(tok[1:], no, n)))
    r.done()
    try:
        return WeightedGraph.from_edges(weights, edges)
    except ValueError as exc:
        raise FormatError(f"graph: {exc}") from exc


def write_graph(g: WeightedGraph) -> str:
    edges = g.edges
    lines = [f"graph {g.n} {len(edges)}"]
    lines += [f"v {v + 1} {format_rational(w)}" for v, w in enumerate(g.weights)]
    lines += [f"e {u + 1} {v + 1}" for u, v in edges]
    return "\n".join(lines) + "\n"


# -- set systems and plant location -----------------------------------------

def parse_setsys(text: str) -> SetSystemInstance:
    r = _Reader(text, "setsys")
    no, (kind, m, n) = r.header("setsys", 3)
    if kind not in (PACKING, PARTITION, COVERING):
        raise r.fail(f"kind must be packing, partition or covering, got {kind!r}", no)
    m, n = r.count(m, no), r.count(n, no, 1)
    no, tok = r.row(n, "the cost line")
    c = r.numbers(tok, no)
    A = []
    for _ in range(m):
        no, tok = r.row(n, "a matrix row")
        if any(t not in ("0", "1") for t in tok):
            raise r.fail("matrix entries must be 0 or 1", no)
        A.append(tuple(int(t) for t in tok))
    r.done()
    return _build(SetSystemInstance, "setsys", tuple(A), tuple(c), kind)


def write_setsys(inst: SetSystemInstance) -> str:
    lines = [f"setsys {inst.kind} {inst.m} {inst.n}", _join(inst.c)]
    lines += [" ".join(map(str, row)) for row in inst.A]
    return "\n".join(lines) + "\n"


def parse_splp(text: str) -> SplpInstance:
    r = _Reader(text, "splp")
    no, (K, L) = r.header("splp", 2)
    K, L = r.count(K, no, 1), r.count(L, no, 1)
    no, tok = r.row(K, "the opening-cost line")
    opening = r.numbers(tok, no)
    service = []
    for _ in range(K):
        no, tok = r.row(L, "a service-cost line")
        service.append(tuple(r.numbers(tok, no)))
    r.done()
    return _build(SplpInstance, "splp", tuple(opening), tuple(service))


def write_splp(inst: SplpInstance) -> str:
    lines = [f"splp {inst.K} {inst.L}", _join(inst.opening)]
    lines += [_join(row) for row in inst.service]
    return "\n".join(lines) + "\n"


# -- tours -------------------------------------------------------------------

def parse_tsp(text: str) -> TspInstance:
    r = _Reader(text, "tsp")
    no, (n, kind) = r.header("tsp", 2)
    n = r.count(n, no, 3)
    if kind not in ("sym", "gen"):
        raise r.fail(f"kind must be sym or gen, got {kind!r}", no)
    dist = []
    for _ in range(n):
        no, tok = r.row(n, "a distance row")
        dist.append(tuple(r.numbers(tok, no)))
    r.done()
    return _build(TspInstance, "tsp", tuple(dist), kind == "sym")


def write_tsp(inst: TspInstance) -> str:
    lines = [f"tsp {inst.n} {'sym' if inst.symmetric else 'gen'}"]
    lines += [_join(row) for row in inst.dist]
    return "\n".join(lines) + "\n"


def _two_sequences(text: str, what: str, n: int | None) -> tuple[list[int], list[int]]:
    r = _Reader(text, what)
    out = []
    for _ in range(2):
        no, tok = r.next("a sequence line")
        size = n if n is not None else len(tok)
        if len(tok) != size:
            raise r.fail(f"expected {size} ids, got {len(tok)}", no)
        seq = r.ids(tok, no, size)
        if sorted(seq) != list(range(size)):
            raise r.fail("line is not a permutation of 1..n", no)
        out.append(seq)
    if len(out[0]) != len(out[1]):
        raise r.fail("sequences have different lengths")
    r.done()
    return out[0], out[1]


def parse_tours(text: str, n: int | None = None) -> tuple[Tour, Tour]:
    a, b = _two_sequences(text, "tours", n)
    return Tour.from_sequence(a), Tour.from_sequence(b)


def write_tour(t: Tour) -> str:
    return " ".join(str(v + 1) for v in t.sequence()) + "\n"


def write_tours(t1: Tour, t2: Tour) -> str:
    return write_tour(t1) + write_tour(t2)


# -- scheduling --------------------------------------------------------------

def parse_sched(text: str) -> SetupInstance:
    r = _Reader(text, "sched")
    no, (k,) = r.header("sched", 1)
    k = r.count(k, no, 1)
    no, tok = r.row(k, "the processing-time line")
    processing = r.numbers(tok, no)
    setup = []
    for _ in range(k):
        no, tok = r.row(k, "a setup row")
        setup.append(tuple(r.numbers(tok, no)))
    r.done()
    # the diagonal is unused; normalise it so writing is canonical
    setup = [tuple(Fraction(0) if i == j else v for j, v in enumerate(row)) for i, row in enumerate(setup)]
    return _build(SetupInstance, "sched", tuple(setup), tuple(processing))


def write_sched(inst: SetupInstance) -> str:
    lines = [f"sched {inst.k}", _join(inst.processing)]
    lines += [_join(row) for row in inst.setup]
    return "\n".join(lines) + "\n"


def parse_job_parents(text: str, k: int | None = None) -> tuple[tuple[int, ...], tuple[int, ...]]:
    a, b = _two_sequences(text, "jobs", k)
    return tuple(a), tuple(b)


def write_jobs(perm: Sequence[int]) -> str:
    return " ".join(str(v + 1) for v in perm) + "\n"


def write_job_parents(p1: Sequence[int], p2: Sequence[int]) -> str:
    return write_jobs(p1) + write_jobs(p2)


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
