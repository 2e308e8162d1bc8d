import random

import pytest
from hypothesis import given

from conftest import five_flats, seeds
from polylat.genlattice import (
    GenLattice,
    GenLatticeError,
    MinorHandle,
    StrongSurjection,
    apply_ops,
    closure_of_surjection,
    count_minors,
    default_labeling,
    diagram_dot,
    diagram_edges,
    enumerate_minors,
    flats_genlattice,
    genlattice_new,
    gl_contract,
    gl_delete,
    gl_delete_by_ground,
    gl_isomorphic,
    gl_restrict,
    handle_of,
    identity_surjection,
    is_strong_map,
    minimally_generated,
    realize,
    replay_normal_form,
    span,
)
from polylat.lattice import boolean_lattice, chain, diamond, partition_lattice, pentagon
from polylat.polymatroid import closure_table, flats, is_valid
from polylat.verify import random_genlattice


def m3():
    return minimally_generated(diamond())


def test_generators_must_generate_and_exclude_bottom():
    l = diamond()
    with pytest.raises(GenLatticeError):
        genlattice_new(l, ["g1", "g2"])  # g3 unreachable
    with pytest.raises(GenLatticeError):
        genlattice_new(l, ["0", "g1", "g2", "g3"])
    gl = genlattice_new(l, ["g1", "g2", "g3", "1"])
    assert not gl.is_minimally_generated()
    assert m3().is_minimally_generated()


def test_span_of_diamond():
    l = diamond()
    s = span(l, [l.index("g1"), l.index("g2")], l.bottom)
    assert s.lattice.labels == ("0", "g1", "g2", "1")
    with pytest.raises(GenLatticeError):
        span(l, [l.index("g1")], l.index("1"))


def test_deletion_and_contraction_do_not_commute():
    gl = m3()
    a, _ = apply_ops(gl, [("delete", ["g1"]), ("contract", ["g2"])])
    assert a.lattice.labels == ("g2", "1")
    assert a.gen_labels() == ["1"]
    assert a.lattice.labels[a.bottom] == "g2"
    b, _ = apply_ops(gl, [("contract", ["g2"]), ("delete", ["1"])])
    assert b.lattice.labels == ("g2",)
    # the same with ground labels 1,2,3 for g1,g2,g3
    lab = default_labeling(gl)
    b2, lab2 = apply_ops(gl, [("contract", ["2"]), ("delete", ["1"])], lab)
    assert b2.size == 1
    assert lab2 == {"3": b2.bottom}


def test_pi4_deletion_changes_meets():
    gl = minimally_generated(partition_lattice(4))
    m = gl_delete(gl, [gl.lattice.index("13/2/4")])
    L = m.lattice
    assert L.labels[L.meet(L.index("123/4"), L.index("134/2"))] == "1/2/3/4"


def test_delete_by_ground_collapses_shared_generator_to_loop():
    gl = m3()
    lab = {"a": gl.lattice.index("g1"), "b": gl.lattice.index("g1"), "c": gl.lattice.index("g2"),
           "d": gl.lattice.index("g3")}
    res, lab2 = gl_delete_by_ground(gl, lab, ["a"])
    assert lab2["b"] == res.bottom
    assert res.gen_labels() == ["g2", "g3"]


def oracle_minor_keys(gl):
    """All minors reachable by single-generator deletions and contractions (BFS)."""
    J = gl.lattice.join

    def closure(H, z):
        elems = {z}
        for h in H:
            elems |= {J[x][h] for x in elems}
        return elems

    start = (gl.bottom, frozenset(gl.gens))
    seen = {start}
    todo = [start]
    while todo:
        z, H = todo.pop()
        for h in H:
            nxt = [(z, H - {h})]
            nxt.append((h, frozenset({J[g][h] for g in H}) - {h}))
            for st in nxt:
                if st not in seen:
                    seen.add(st)
                    todo.append(st)
    return {(z, tuple(sorted(H))) for z, H in seen}


@pytest.mark.parametrize("lat", [diamond(), pentagon(), boolean_lattice(3), partition_lattice(3),
                                 chain(3)])
def test_minor_enumeration_matches_bfs_oracle(lat):
    gl = minimally_generated(lat)
    keys = [h.key() for h in enumerate_minors(gl)]
    assert len(keys) == len(set(keys)) == count_minors(gl)
    assert set(keys) == oracle_minor_keys(gl)


@given(seeds)
def test_minor_enumeration_random(seed):
    gl = random_genlattice(random.Random(seed), 10)
    keys = {h.key() for h in enumerate_minors(gl)}
    assert keys == oracle_minor_keys(gl)
    assert len(keys) == count_minors(gl)


@given(seeds)
def test_replay_normal_form(seed):
    rng = random.Random(seed)
    gl = random_genlattice(rng, 10)
    hs = list(enumerate_minors(gl))
    h = rng.choice(hs)
    r = replay_normal_form(h)
    assert handle_of(r, gl).key() == h.key()
    assert gl_isomorphic(r, h.materialize()) is not None


def test_handle_validation():
    gl = m3()
    with pytest.raises(GenLatticeError):
        MinorHandle(gl, gl.lattice.index("g1"), frozenset({gl.lattice.index("g2")}))


def test_counts_on_catalogue():
    assert count_minors(minimally_generated(boolean_lattice(2))) == 9
    assert count_minors(minimally_generated(boolean_lattice(4))) == 3 ** 4
    assert count_minors(minimally_generated(partition_lattice(3))) == 15


def test_strong_maps():
    gl = m3()
    ident = list(range(gl.size))
    assert is_strong_map(ident, gl, gl)[0]
    # collapsing everything to bottom is join preserving and sends gens to bottom
    assert is_strong_map([0] * gl.size, gl, gl)[0]
    swap = ident[:]
    swap[1], swap[4] = swap[4], swap[1]  # g1 <-> 1 breaks joins
    assert not is_strong_map(swap, gl, gl)[0]


def test_flats_genlattice_five_flats():
    gl, t = flats_genlattice(five_flats())
    assert gl.gen_labels() == ["{1}", "{3}", "{1,2}"]
    assert closure_of_surjection(t) == closure_table(five_flats())


def test_surjection_must_cover_generators():
    gl = m3()
    from polylat.foundations import GroundSet
    with pytest.raises(GenLatticeError):
        StrongSurjection(GroundSet.range(2), gl, (1, 2))


@given(seeds)
def test_realize_roundtrip(seed):
    gl = random_genlattice(random.Random(seed), 14)
    p = realize(gl)
    assert is_valid(p)
    assert all(v.denominator == 1 for v in p.rank)
    fl, _ = flats_genlattice(p)
    iso = gl_isomorphic(fl, gl)
    assert iso is not None
    # identity surjection closes exactly as the realization does
    assert closure_of_surjection(identity_surjection(gl)) == closure_table(p)


def test_realize_diamond_values():
    p = realize(m3())
    assert [int(v) for v in p.rank] == [0, 2, 2, 3, 2, 3, 3, 3]
    assert len(flats(p)) == 5


def test_isomorphism_negative_cases():
    assert gl_isomorphic(m3(), minimally_generated(pentagon())) is None
    a = minimally_generated(diamond())
    b = genlattice_new(diamond(), ["g1", "g2", "g3", "1"])
    assert gl_isomorphic(a, b) is None


def test_restrict_is_delete_of_complement():
    gl = minimally_generated(boolean_lattice(3))
    g = gl.sorted_gens()
    assert gl_restrict(gl, g[:2]).lattice == gl_delete(gl, g[2:]).lattice
    assert gl_contract(gl, [g[0]]).size == 4


def test_diagram_dot_is_stable():
    gl = m3()
    assert diagram_dot(gl) == diagram_dot(m3())
    edges = diagram_edges(gl)
    assert (0, 1, (1,)) in edges
    assert diagram_dot(gl).startswith("digraph genlattice {")


def test_diagram_of_b2_with_top_generator():
    gl = genlattice_new(boolean_lattice(2), ["{1}", "{2}", "{1,2}"])
    edges = diagram_edges(gl)
    assert len(edges) == 5
    assert (gl.bottom, gl.lattice.top, (gl.lattice.top,)) in edges
