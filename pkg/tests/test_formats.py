from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from _gen import (
    random_graph,
    random_packing,
    random_partition,
    random_setup,
    random_splp,
    random_tsp,
    random_two_var_blp,
)
from orprec import formats as fmt
from orprec.core import FormatError


def round_trip(parse, write, obj):
    text = write(obj)
    back = parse(text)
    assert back == obj
    assert write(back) == text


@given(st.integers(0, 2**31 - 1))
def test_random_round_trips(seed):
    rng = np.random.default_rng(seed)
    blp, p1, p2 = random_two_var_blp(rng, int(rng.integers(1, 8)), int(rng.integers(0, 6)), 3)
    round_trip(fmt.parse_blp, fmt.write_blp, blp)
    assert fmt.parse_bit_parents(fmt.write_bit_parents(p1, p2)) == (p1, p2)
    round_trip(fmt.parse_graph, fmt.write_graph, random_graph(rng, int(rng.integers(1, 9))))
    round_trip(fmt.parse_setsys, fmt.write_setsys, random_packing(rng, 3, 5)[0])
    round_trip(fmt.parse_setsys, fmt.write_setsys, random_partition(rng, 4, 8)[0])
    round_trip(fmt.parse_splp, fmt.write_splp, random_splp(rng, 2, 3)[0])
    inst, t1, t2 = random_tsp(rng, int(rng.integers(4, 9)), bool(rng.integers(2)))
    round_trip(fmt.parse_tsp, fmt.write_tsp, inst)
    assert fmt.parse_tours(fmt.write_tours(t1, t2)) == (t1, t2)
    sched = random_setup(rng, int(rng.integers(1, 8)))
    round_trip(fmt.parse_sched, fmt.write_sched, sched)
    perm = tuple(int(v) for v in rng.permutation(sched.k))
    assert fmt.parse_job_parents(fmt.write_job_parents(perm, perm)) == (perm, perm)


def test_rational_values_survive():
    text = "blp 2 1 min\n1/3 0.25\n1 -2/7 ge -1\n"
    blp = fmt.parse_blp(text)
    assert blp.c == (Fraction(1, 3), Fraction(1, 4))
    assert fmt.write_blp(blp) == "blp 2 1 min\n1/3 1/4\n1 -2/7 ge -1\n"


def test_comments_and_blank_lines(fixtures):
    g = fmt.parse_graph((fixtures / "k4_minus_edge.graph").read_text())
    assert g.n == 4 and len(g.edges) == 5 and g.weights == (1, 2, 3, 4)


def test_tours_are_canonical():
    t1, _ = fmt.parse_tours("3 1 2\n1 2 3\n")
    assert fmt.write_tour(t1) == "1 2 3\n"


def test_sched_diagonal_ignored():
    inst = fmt.parse_sched("sched 2\n1 1\n9 4\n5 9\n")
    assert inst.setup == ((0, 4), (5, 0))


@pytest.mark.parametrize(
    "parse,text",
    [
        (fmt.parse_blp, "blp 2 1 max\n1 2\n1 1 lt 1\n"),
        (fmt.parse_blp, "blp 2 1 max\n1 2\n"),
        (fmt.parse_blp, "blp 2 0 best\n1 2\n"),
        (fmt.parse_blp, "blp two 0 max\n1 2\n"),
        (fmt.parse_blp, "blp 2 0 max\n1 x\n"),
        (fmt.parse_graph, "graph 2 1\nv 1 1\nv 1 2\ne 1 2\n"),
        (fmt.parse_graph, "graph 2 1\nv 1 1\nv 2 2\ne 1 3\n"),
        (fmt.parse_graph, "graph 2 1\nv 1 1\nv 2 2\ne 1 1\n"),
        (fmt.parse_graph, "graph 1 0\nv 1 -1\n"),
        (fmt.parse_setsys, "setsys cover 1 1\n1\n1\n"),
        (fmt.parse_setsys, "setsys packing 1 2\n1 1\n1 2\n"),
        (fmt.parse_splp, "splp 1 2\n1\n1\n"),
        (fmt.parse_tsp, "tsp 3 sym\n0 1 2\n1 0 1\n3 1 0\n"),
        (fmt.parse_tsp, "tsp 3 gen\n0 1 2\n1 0 1\n"),
        (fmt.parse_sched, "sched 2\n1 1\n0 1\n1 0\nextra\n"),
        (fmt.parse_bit_parents, "parents\n0 1\n0 2\n"),
        (fmt.parse_bit_parents, "0 1\n1 0\n"),
        (fmt.parse_tours, "1 2 3\n1 2 2\n"),
        (fmt.parse_job_parents, "1 2 3\n1 2\n"),
    ],
)
def test_malformed_inputs(parse, text):
    with pytest.raises(FormatError):
        parse(text)


def test_parent_length_checked():
    with pytest.raises(FormatError):
        fmt.parse_bit_parents("parents\n0 1\n1 0\n", n=3)
