from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from polylat.foundations import (
    GroundSet,
    Partition,
    as_rational,
    bits_of,
    format_rational,
    partition_join,
    partition_meet,
    popcount,
    submasks,
)


def test_as_rational_accepts_exact_values_only():
    assert as_rational("3/2") == Fraction(3, 2)
    assert as_rational(4) == 4
    with pytest.raises(TypeError):
        as_rational(1.5)
    with pytest.raises(TypeError):
        as_rational(True)


def test_format_rational():
    assert format_rational(Fraction(3, 2)) == "3/2"
    assert format_rational(Fraction(4, 2)) == "2"


@given(st.integers(0, 1 << 12))
def test_bits_and_popcount(mask):
    bits = list(bits_of(mask))
    assert len(bits) == popcount(mask)
    assert sum(1 << b for b in bits) == mask


@given(st.integers(0, 1 << 8))
def test_submasks_match_itertools(mask):
    bits = list(bits_of(mask))
    oracle = {sum(1 << b for b in c) for k in range(len(bits) + 1) for c in combinations(bits, k)}
    subs = list(submasks(mask))
    assert len(subs) == len(oracle) == 2 ** len(bits)
    assert set(subs) == oracle


def test_ground_set_masks():
    g = GroundSet(("a", "b", "c"))
    assert g.mask(["a", "c"]) == 0b101
    assert g.format(0b101) == "{a,c}"
    assert g.format(0) == "{}"
    with pytest.raises(KeyError):
        g.index("z")
    with pytest.raises(ValueError):
        GroundSet(("a", "a"))


@given(st.integers(0, 63), st.integers(0, 63))
def test_project_lift_roundtrip(mask, keep):
    g = GroundSet.range(6)
    sub = mask & keep
    assert g.lift(g.project(sub, keep), keep) == sub
    assert popcount(g.project(mask, keep)) == popcount(sub)


def test_partition_parse_and_print():
    p = Partition.parse("12/3/4")
    assert str(p) == "12/3/4"
    assert p.block_of("2") == frozenset("12")
    assert Partition.parse("3/21/4") == p
    with pytest.raises(ValueError):
        Partition([["1", "2"], ["2"]])


def test_partition_join_and_meet():
    a, b = Partition.parse("12/3/4"), Partition.parse("1/2/34")
    assert str(partition_join(a, b)) == "12/34"
    assert str(partition_meet(Partition.parse("123/4"), Partition.parse("134/2"))) == "13/2/4"


names = st.sampled_from("123456")


@given(st.lists(st.lists(names, min_size=1), max_size=4), st.lists(st.lists(names, min_size=1), max_size=4))
def test_partition_join_is_least_upper_bound(xs, ys):
    def from_pairs(groups):
        # union-find over the given groups, on the fixed vertex set
        blocks = [{v} for v in "123456"]
        for grp in groups:
            hit = [b for b in blocks if b & set(grp)]
            merged = set().union(*hit)
            blocks = [b for b in blocks if not b & set(grp)] + [merged]
        return Partition(blocks)

    p, q = from_pairs(xs), from_pairs(ys)
    j = partition_join(p, q)
    m = partition_meet(p, q)
    assert p.refines(j) and q.refines(j)
    assert m.refines(p) and m.refines(q)
