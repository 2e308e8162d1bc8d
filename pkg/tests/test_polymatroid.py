import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import coverage_polymatroid, five_flats, four_flats, pair_ranks, seeds
from polylat.foundations import GroundSet, bits_of
from polylat.polymatroid import (
    Polymatroid,
    PolymatroidError,
    are_parallel,
    closure,
    closure_table,
    contract,
    delete,
    flats,
    free_matroid,
    is_simple,
    is_submodular_local,
    is_submodular_pairs,
    is_valid,
    loops,
    minor,
    parallel_classes,
    same_closure,
    simplify,
    validate,
    zero_polymatroid,
)


def brute_closure(p, x):
    return x | sum(1 << e for e in range(p.n) if p.rank[x | 1 << e] == p.rank[x])


def test_five_flats_is_valid_and_has_five_flats():
    p = five_flats()
    assert validate(p) == []
    assert [p.ground.format(f) for f in flats(p)] == ["{}", "{1}", "{3}", "{1,2}", "{1,2,3}"]
    assert closure(p, p.ground.mask(["2"])) == p.ground.mask(["1", "2"])


def test_four_flats_closure_of_3_is_everything():
    p = four_flats()
    assert closure(p, p.ground.mask(["3"])) == p.ground.full


def test_zero_polymatroid_valid_and_all_loops():
    z = zero_polymatroid(GroundSet.range(3))
    assert is_valid(z)
    assert loops(z) == 0b111
    assert flats(z) == [0b111]


def test_monotonicity_witness():
    p = Polymatroid(GroundSet.range(2), tuple(map(Fraction, (0, 2, 2, 1))))
    bad = validate(p)
    assert bad and bad[0].axiom == "monotone"
    assert bad[0].sets == (0b01, 0b11)


def test_rejects_wrong_table_length():
    with pytest.raises(PolymatroidError):
        Polymatroid(GroundSet.range(2), (Fraction(0),) * 3)


def test_pair_rank_functions_share_identity_closure():
    for r in ("3/2", 2):
        ct = closure_table(pair_ranks(r))
        assert ct.cl == (0, 1, 2, 3)
    assert same_closure(pair_ranks("3/2"), pair_ranks(2))


@given(seeds)
def test_closure_matches_definition(seed):
    rng = random.Random(seed)
    p = coverage_polymatroid(rng, rng.randint(0, 5))
    assert is_valid(p)
    ct = closure_table(p)
    assert ct.check_invariants() == []
    for x in range(1 << p.n):
        c = ct.cl[x]
        assert c == brute_closure(p, x)
        assert p.rank[c] == p.rank[x]
    # flats are closed under intersection
    fl = set(ct.flats())
    assert all(a & b in fl for a in fl for b in fl)


@given(seeds)
def test_local_and_pair_submodularity_agree(seed):
    rng = random.Random(seed)
    n = rng.randint(0, 4)
    table = [Fraction(0)] + [Fraction(rng.randint(0, 5), rng.randint(1, 2)) for _ in range((1 << n) - 1)]
    assert is_submodular_local(table, n) == is_submodular_pairs(table, n)


def test_loops_and_parallel_classes():
    # 1 is a loop, 2 and 3 are parallel, 4 is free
    def r(m):
        return Fraction(bool(m & 0b0110) + bool(m & 0b1000))
    p = Polymatroid.from_function(GroundSet.range(4), r)
    assert loops(p) == 0b0001
    assert parallel_classes(p) == [0b0110, 0b1000]
    assert are_parallel(p, 1, 2) and not are_parallel(p, 1, 3)
    assert not is_simple(p)
    s, classes = simplify(p)
    assert s.ground.labels == ("2", "4")
    assert classes == {"2": ("2", "3"), "4": ("4",)}
    assert is_simple(s)
    assert is_simple(free_matroid(GroundSet.range(3)))


@given(seeds)
def test_minor_definitions(seed):
    rng = random.Random(seed)
    p = coverage_polymatroid(rng, 4)
    X = rng.randrange(16)
    Y = rng.randrange(16) & ~X
    q = minor(p, X, Y)
    assert is_valid(q)
    keep = p.ground.full & ~(X | Y)
    assert q.ground.labels == p.ground.members(keep)
    for m in range(1 << q.n):
        Z = p.ground.lift(m, keep)
        assert q.rank[m] == p.rank[Z | X] - p.rank[X]
    # deletion and contraction of disjoint sets commute for polymatroids
    assert contract(delete(p, Y), p.ground.project(X, p.ground.full & ~Y)) == q
