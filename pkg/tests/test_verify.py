import random

import pytest
from hypothesis import given

from conftest import coverage_polymatroid, five_flats, seeds
from polylat.genlattice import flats_genlattice, minimally_generated
from polylat.lattice import boolean_lattice, partition_lattice
from polylat.polymatroid import is_valid
from polylat.report import VerificationReport, summary
from polylat.verify import (
    KINDS,
    SUITES,
    ParallelClosedPair,
    RandomSpec,
    count_parallel_closed_pairs,
    enumerate_parallel_closed_pairs,
    random_instance,
    run_suite,
    verify_closure_theorem,
    verify_genlattice_minors,
    verify_geometric_minors,
    verify_minor_closure,
    verify_parallel_pairs_bijection,
    verify_submodularity_equivalence,
)
from polylat.graphs import complete_graph, cycle_matroid


def test_random_instances_are_deterministic():
    for kind in KINDS:
        a = random_instance(RandomSpec(7, kind))
        b = random_instance(RandomSpec(7, kind))
        assert repr(a) == repr(b)
    with pytest.raises(ValueError):
        RandomSpec(0, "nope")


@given(seeds)
def test_random_polymatroids_are_valid(seed):
    p = random_instance(RandomSpec(seed, "polymatroid"))
    assert is_valid(p)
    assert all(v.denominator == 1 for v in p.rank)


def test_parallel_pairs_on_k3():
    p = cycle_matroid(complete_graph(3))
    assert count_parallel_closed_pairs(p) == 15
    rep = verify_parallel_pairs_bijection(p)
    assert rep.passed and rep.lhs == rep.rhs == 15


def test_parallel_pairs_five_flats():
    p = five_flats()
    pairs = list(enumerate_parallel_closed_pairs(p))
    assert len(pairs) == count_parallel_closed_pairs(p)
    assert all(isinstance(x, ParallelClosedPair) for x in pairs)
    assert verify_parallel_pairs_bijection(p).passed


@given(seeds)
def test_theorem_checks_on_coverage_functions(seed):
    # coverage functions are an independent source of polymatroids
    p = coverage_polymatroid(random.Random(seed), 4)
    assert verify_closure_theorem(p).passed
    assert verify_parallel_pairs_bijection(p).passed
    assert verify_genlattice_minors(p).passed
    assert verify_minor_closure(p).passed


def test_geometric_minors():
    rep = verify_geometric_minors(minimally_generated(partition_lattice(3)), "Pi3")
    assert rep.passed and rep.lhs == 15
    rep = verify_geometric_minors(minimally_generated(boolean_lattice(2)), "B2")
    assert rep.passed and rep.lhs == 9


def test_submod_equiv_small():
    assert verify_submodularity_equivalence(3, 200, seed=1).passed
    with pytest.raises(ValueError):
        verify_submodularity_equivalence(5, 1)


def test_run_suite_ordering_and_parallel_agree():
    a = run_suite("order-minors", seed=3, count=6)
    b = run_suite("order-minors", seed=3, count=6, jobs=2)
    assert [r.seed for r in a] == list(range(3, 9))
    assert [(r.seed, r.lhs, r.rhs, r.passed) for r in a] == [(r.seed, r.lhs, r.rhs, r.passed) for r in b]
    with pytest.raises(ValueError):
        run_suite("nope")


@pytest.mark.parametrize("theorem", sorted(SUITES))
def test_every_suite_passes_a_few_seeds(theorem):
    assert all(r.passed for r in run_suite(theorem, seed=11, count=3))


def test_report_line_format():
    r = VerificationReport("graph-minors", "x", 3, 3, True, None, 1.25, 4)
    assert r.line() == "theorem=graph-minors seed=4 status=pass lhs=3 rhs=3 ms=1.2"
    bad = VerificationReport("t", "x", 1, 2, False)
    assert bad.status == "fail" and "witness" in bad.line()
    assert summary([r, bad]).startswith("summary: 1/2 passed")


def test_parallel_pairs_small_cases():
    from polylat.foundations import GroundSet
    from polylat.genlattice import count_minors
    from polylat.polymatroid import zero_polymatroid
    assert count_parallel_closed_pairs(zero_polymatroid(GroundSet.range(1))) == 1
    gl, _ = flats_genlattice(five_flats())
    assert count_parallel_closed_pairs(five_flats()) == count_minors(gl)


def test_closure_theorem_identity_surjection():
    from polylat.genlattice import closure_of_surjection, identity_surjection
    t = identity_surjection(minimally_generated(boolean_lattice(3)))
    assert closure_of_surjection(t).cl == tuple(range(8))
    assert verify_closure_theorem(t).passed
    assert verify_closure_theorem(five_flats()).passed
