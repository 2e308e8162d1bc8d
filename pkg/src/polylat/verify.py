"""Seeded random instances and executable checks of the bijection theorems.

Every check returns a :class:`VerificationReport`; ``run_suite`` runs a
checker over consecutive seeds, optionally in worker processes, and
returns the reports sorted by seed.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .foundations import GroundSet, bits_of, submasks
from .genlattice import (
    GenLattice,
    StrongSurjection,
    closure_of_surjection,
    compose_rank,
    count_minors,
    enumerate_minors,
    flats_genlattice,
    gl_contract,
    gl_isomorphic,
    gl_restrict,
    handle_of,
    minimally_generated,
    realize,
    surjection_minor,
)
from .graphs import LabeledGraph, complete_graph, verify_graph_minor_bijection
from .lattice import (
    FinLattice,
    boolean_lattice,
    check_weighting,
    is_geometric,
    join_irreducibles,
    partition_lattice,
    submodular_weighting,
)
from .polymatroid import (
    Polymatroid,
    closure,
    closure_table,
    contract,
    delete,
    flats,
    is_submodular_local,
    is_submodular_pairs,
    is_valid,
    minor,
    parallel_classes,
    same_closure,
)
from .posets import random_poset, verify_order_minor_bijection
from .report import VerificationReport

KINDS = ("polymatroid", "lattice", "genlattice", "poset", "graph", "surjection")


@dataclass(frozen=True)
class RandomSpec:
    seed: int
    kind: str
    max_n: int = 5
    max_elements: int = 16

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if not 0 <= self.max_n <= 12:
            raise ValueError("max_n must lie in 0..12")
        if not 1 <= self.max_elements <= 4096:
            raise ValueError("max_elements must lie in 1..4096")


def _rng(seed: int) -> random.Random:
    return random.Random(seed)


def random_lattice(rng: random.Random, max_elements: int = 16, universe: int = 5) -> FinLattice:
    """Union-closure of random subsets of a small universe, capped at ``max_elements``.

    Every finite lattice arises this way (send x to the meet-irreducibles
    not above it), so small shapes are covered.
    """
    names = GroundSet(tuple("abcdefghijkl"[:universe]))
    family = {0}
    for _ in range(rng.randint(0, 2 * universe)):
        s = rng.randrange(1, 1 << universe)
        grown = family | {f | s for f in family}
        if len(grown) <= max_elements:
            family = grown
    fam = sorted(family, key=lambda m: (m.bit_count(), m))
    pos = {m: i for i, m in enumerate(fam)}
    join = tuple(tuple(pos[a | b] for b in fam) for a in fam)
    return FinLattice(tuple(names.format(m) for m in fam), join, tuple(fam))


def random_genlattice(rng: random.Random, max_elements: int = 16, max_gens: int | None = None
                      ) -> GenLattice:
    """Random lattice plus a random superset of its irreducibles (at most ``max_gens``)."""
    while True:
        universe = rng.randint(1, 5)
        l = random_lattice(rng, max_elements, universe)
        irr = set(join_irreducibles(l))
        if max_gens is None or len(irr) <= max_gens:
            break
    others = [x for x in range(l.size) if x != l.bottom and x not in irr]
    rng.shuffle(others)
    room = len(others) if max_gens is None else max_gens - len(irr)
    extra = others[: rng.randint(0, max(0, min(room, len(others))))]
    return GenLattice(l, frozenset(irr | set(extra)))


def random_surjection(rng: random.Random, max_n: int = 5, max_elements: int = 16) -> StrongSurjection:
    """Random strong surjection from a Boolean algebra on at most ``max_n`` elements."""
    gl = random_genlattice(rng, max_elements, max_gens=rng.randint(0, max_n))
    gens = gl.sorted_gens()
    n = rng.randint(len(gens), max_n)
    pool = gens + [gl.bottom]
    assign = gens + [rng.choice(pool) for _ in range(n - len(gens))]
    rng.shuffle(assign)
    return StrongSurjection(GroundSet(tuple("abcdefghijkl"[:n])), gl, tuple(assign))


def random_polymatroid(rng: random.Random, max_n: int = 5, max_elements: int = 16) -> Polymatroid:
    """Integer polymatroid realized from a random surjection.

    The surjection may repeat generators and send elements to the bottom,
    which produces parallel elements and loops.
    """
    t = random_surjection(rng, max_n, max_elements)
    _, w = submodular_weighting(t.target.lattice, base=rng.choice((2, 2, 3)))
    return compose_rank(t, w)


def random_graph(rng: random.Random, max_n: int = 5) -> LabeledGraph:
    k = rng.randint(1, max(1, min(max_n, 5)))
    names = [str(i) for i in range(1, k + 1)]
    edges = [(a, b) for i, a in enumerate(names) for b in names[i + 1:] if rng.random() < 0.5]
    return LabeledGraph.from_edges(names, edges)


def random_instance(spec: RandomSpec):
    rng = _rng(spec.seed)
    if spec.kind == "polymatroid":
        return random_polymatroid(rng, spec.max_n, spec.max_elements)
    if spec.kind == "lattice":
        return random_lattice(rng, spec.max_elements)
    if spec.kind == "genlattice":
        return random_genlattice(rng, spec.max_elements)
    if spec.kind == "surjection":
        return random_surjection(rng, spec.max_n, spec.max_elements)
    if spec.kind == "poset":
        return random_poset(rng.randint(0, spec.max_n), rng)
    return random_graph(rng, spec.max_n)


# ------------------------------------------------------- parallel closed pairs

@dataclass(frozen=True)
class ParallelClosedPair:
    """A flat F and a parallel-closed ground set Y of r/F (both masks in E)."""

    F: int
    Y: int

    def polymatroid(self, p: Polymatroid) -> Polymatroid:
        """s = (r/F)|_Y."""
        q = contract(p, self.F)
        keep = p.ground.full & ~self.F
        return delete(q, p.ground.project(keep & ~self.Y, keep))

    def describe(self, p: Polymatroid) -> str:
        return f"({p.ground.format(self.F)}, {p.ground.format(self.Y)})"


def _classes_after(p: Polymatroid, F: int) -> list[int]:
    """Parallel classes of r/F as masks in the original ground set."""
    keep = p.ground.full & ~F
    return [p.ground.lift(c, keep) for c in parallel_classes(contract(p, F))]


def enumerate_parallel_closed_pairs(p: Polymatroid) -> Iterator[ParallelClosedPair]:
    for F in flats(p):
        classes = _classes_after(p, F)
        for code in range(1 << len(classes)):
            Y = 0
            for j, c in enumerate(classes):
                if code >> j & 1:
                    Y |= c
            yield ParallelClosedPair(F, Y)


def count_parallel_closed_pairs(p: Polymatroid) -> int:
    return sum(1 << len(_classes_after(p, F)) for F in flats(p))


def pair_to_minor(p: Polymatroid, gl: GenLattice, pair: ParallelClosedPair):
    """((L,G)|_{Y u F}) / F, returned as a handle on gl."""
    ct = closure_table(p)
    L = gl.lattice
    keep = {L.find(ct.cl[1 << e]) for e in bits_of(pair.Y | pair.F)} & gl.gens
    restricted = gl_restrict(gl, keep)
    RL = restricted.lattice
    I = {RL.index(L.labels[L.find(ct.cl[1 << e])]) for e in bits_of(pair.F)} & restricted.gens
    return handle_of(gl_contract(restricted, I), gl)


def minor_to_pair(p: Polymatroid, handle) -> ParallelClosedPair:
    L = handle.base.lattice
    F = L.data[handle.apex]
    Y = 0
    for y in range(p.n):
        if L.find(closure(p, F | 1 << y)) in handle.kept:
            Y |= 1 << y
    return ParallelClosedPair(F, Y)


def verify_parallel_pairs_bijection(p: Polymatroid, seed: int | None = None) -> VerificationReport:
    t0 = time.perf_counter()
    gl, _ = flats_genlattice(p)
    pairs = list(enumerate_parallel_closed_pairs(p))
    handles = list(enumerate_minors(gl))
    witness = None
    for pair in pairs:
        if closure(p, pair.F) != pair.F:
            witness = f"{pair.describe(p)}: F is not a flat"
            break
        h = pair_to_minor(p, gl, pair)
        if minor_to_pair(p, h) != pair:
            witness = f"g(f{pair.describe(p)}) != {pair.describe(p)}"
            break
    if witness is None:
        for h in handles:
            pair = minor_to_pair(p, h)
            if pair_to_minor(p, gl, pair).key() != h.key():
                witness = f"f(g({h.describe()})) != {h.describe()}"
                break
    if witness is None and len(pairs) != len(handles):
        witness = f"{len(pairs)} pairs vs {len(handles)} minors"
    ms = (time.perf_counter() - t0) * 1000
    return VerificationReport("parallel-pairs", str(p), len(pairs), len(handles), witness is None,
                              witness, ms, seed)


# ---------------------------------------------------------- closure theorem

def verify_closure_theorem(instance, seed: int | None = None) -> VerificationReport:
    """Polymatroid side: closure table equals cl_theta of its flats surjection.
    Surjection side: the longest-chain weighting composed with theta has closure cl_theta."""
    t0 = time.perf_counter()
    witness = None
    if isinstance(instance, Polymatroid):
        ct = closure_table(instance)
        _, t = flats_genlattice(instance)
        cs = closure_of_surjection(t)
    else:
        t = instance
        _, w = submodular_weighting(t.target.lattice)
        s = compose_rank(t, w)
        if not is_valid(s):
            witness = "composed rank is not a polymatroid"
        ct = closure_table(s)
        cs = closure_of_surjection(t)
    n_flats, n_lat = len(set(ct.cl)), len(set(cs.cl))
    if witness is None:
        for x, (a, b) in enumerate(zip(ct.cl, cs.cl)):
            if a != b:
                witness = f"closures differ at {ct.ground.format(x)}"
                break
    ms = (time.perf_counter() - t0) * 1000
    return VerificationReport("closure-theorem", str(instance), n_flats, n_lat, witness is None,
                              witness, ms, seed)


# ------------------------------------------------------------- minors

def disjoint_pairs(n: int) -> Iterator[tuple[int, int]]:
    full = (1 << n) - 1
    for X in range(1 << n):
        for Y in submasks(full & ~X):
            yield X, Y


def verify_genlattice_minors(p: Polymatroid, seed: int | None = None) -> VerificationReport:
    """closure of (p/X)\\Y equals cl of (theta/X)\\Y for every disjoint X, Y."""
    t0 = time.perf_counter()
    _, t = flats_genlattice(p)
    witness = None
    checked = 0
    for X, Y in disjoint_pairs(p.n):
        a = closure_table(minor(p, X, Y))
        b = closure_of_surjection(surjection_minor(t, X, Y))
        checked += 1
        if a != b:
            witness = f"X={p.ground.format(X)} Y={p.ground.format(Y)}"
            break
    ms = (time.perf_counter() - t0) * 1000
    return VerificationReport("genlattice-minors", str(p), checked, 3 ** p.n, witness is None,
                              witness, ms, seed)


def verify_minor_closure(p: Polymatroid, seed: int | None = None) -> VerificationReport:
    """Two polymatroids sharing a closure operator keep sharing it under every minor.

    The partner is built from the same surjection with the base-3 weighting.
    """
    t0 = time.perf_counter()
    gl, t = flats_genlattice(p)
    _, w = submodular_weighting(gl.lattice, base=3)
    q = compose_rank(t, w)
    witness = None if same_closure(p, q) else "partner does not share the closure operator"
    checked = 0
    if witness is None:
        for X, Y in disjoint_pairs(p.n):
            checked += 1
            if not same_closure(minor(p, X, Y), minor(q, X, Y)):
                witness = f"X={p.ground.format(X)} Y={p.ground.format(Y)}"
                break
    ms = (time.perf_counter() - t0) * 1000
    return VerificationReport("minor-closure", str(p), checked, 3 ** p.n, witness is None,
                              witness, ms, seed)


def verify_geometric_minors(gl: GenLattice, name: str = "", seed: int | None = None
                            ) -> VerificationReport:
    """Every minor of a minimally generated geometric genlattice is minimally
    generated, geometric, and generated by covers of its apex."""
    t0 = time.perf_counter()
    witness = None
    L = gl.lattice
    ok, why = is_geometric(L)
    if not ok or not gl.is_minimally_generated():
        witness = f"input is not minimally generated and geometric: {why}"
    count = 0
    if witness is None:
        for h in enumerate_minors(gl):
            count += 1
            m = h.materialize()
            if not m.is_minimally_generated():
                witness = f"{h.describe()} is not minimally generated"
            elif not is_geometric(m.lattice)[0]:
                witness = f"{h.describe()} is not geometric"
            elif not all(L.covers(h.apex, k) for k in h.kept):
                witness = f"{h.describe()} has a generator not covering the apex"
            if witness:
                break
    ms = (time.perf_counter() - t0) * 1000
    return VerificationReport("geometric-minors", name or repr(gl), count, count_minors(gl),
                              witness is None, witness, ms, seed)


# ------------------------------------------------------- lattice checks

def verify_weighting(l: FinLattice, seed: int | None = None) -> VerificationReport:
    t0 = time.perf_counter()
    rational, integer = submodular_weighting(l)
    problems = check_weighting(l, rational) + check_weighting(l, integer)
    ms = (time.perf_counter() - t0) * 1000
    return VerificationReport("weighting", repr(l), l.size, l.size, not problems,
                              problems[0] if problems else None, ms, seed)


def verify_realization(gl: GenLattice, seed: int | None = None) -> VerificationReport:
    t0 = time.perf_counter()
    p = realize(gl)
    witness = None
    if not is_valid(p):
        witness = "realized table is not a polymatroid"
    elif any(v.denominator != 1 for v in p.rank):
        witness = "realized ranks are not integers"
    else:
        fl, _ = flats_genlattice(p)
        if gl_isomorphic(fl, gl) is None:
            witness = "flats genlattice is not isomorphic to the input"
    ms = (time.perf_counter() - t0) * 1000
    return VerificationReport("realization", repr(gl), gl.size, len(flats(p)), witness is None,
                              witness, ms, seed)


# ------------------------------------------------- submodularity equivalence

def _random_table(rng: random.Random, n: int) -> list[Fraction]:
    """Either a uniformly random table or a submodular one with one entry nudged."""
    size = 1 << n
    mode = rng.random()
    if mode < 0.4:
        t = [Fraction(rng.randint(0, 6), rng.randint(1, 3)) for _ in range(size)]
        t[0] = Fraction(0)
        return t
    # coverage function: submodular by construction
    cover = [rng.randrange(1 << 6) for _ in range(n)]
    weights = [Fraction(rng.randint(1, 4), rng.randint(1, 2)) for _ in range(6)]
    t = []
    for m in range(size):
        u = 0
        for i in bits_of(m):
            u |= cover[i]
        t.append(sum((weights[b] for b in bits_of(u)), Fraction(0)))
    if mode < 0.8:
        k = rng.randrange(size)
        t[k] += Fraction(rng.choice((-2, -1, 1, 2)), rng.randint(1, 4))
    return t


def verify_submodularity_equivalence(n: int, count: int = 1000, seed: int = 0) -> VerificationReport:
    if not 0 <= n <= 4:
        raise ValueError("n must lie in 0..4")
    t0 = time.perf_counter()
    rng = _rng(seed)
    witness = None
    accepted = 0
    for k in range(count):
        table = _random_table(rng, n)
        a, b = is_submodular_local(table, n), is_submodular_pairs(table, n)
        accepted += a
        if a != b:
            witness = f"table #{k} {[str(v) for v in table]}: local={a} pairs={b}"
            break
    ms = (time.perf_counter() - t0) * 1000
    return VerificationReport("submod-equiv", f"n={n} tables={count} accepted={accepted}", count,
                              count, witness is None, witness, ms, seed)


# ------------------------------------------------------------- suites

def _check_closure_theorem(seed: int) -> VerificationReport:
    rng = _rng(seed)
    inst = random_polymatroid(rng) if seed % 2 == 0 else random_surjection(rng)
    return verify_closure_theorem(inst, seed)


def _check_parallel_pairs(seed: int) -> VerificationReport:
    return verify_parallel_pairs_bijection(random_polymatroid(_rng(seed)), seed)


def _check_genlattice_minors(seed: int) -> VerificationReport:
    return verify_genlattice_minors(random_polymatroid(_rng(seed)), seed)


def _check_minor_closure(seed: int) -> VerificationReport:
    return verify_minor_closure(random_polymatroid(_rng(seed)), seed)


def _check_order_minors(seed: int) -> VerificationReport:
    rng = _rng(seed)
    return verify_order_minor_bijection(random_poset(rng.randint(0, 5), rng), seed)


def _check_graph_minors(seed: int) -> VerificationReport:
    return verify_graph_minor_bijection(random_graph(_rng(seed), 4), seed)


def _check_weighting(seed: int) -> VerificationReport:
    return verify_weighting(random_lattice(_rng(seed), 24), seed)


def _check_realization(seed: int) -> VerificationReport:
    return verify_realization(random_genlattice(_rng(seed), 16), seed)


def _check_submod_equiv(seed: int) -> VerificationReport:
    n = 3 + seed % 2
    return verify_submodularity_equivalence(n, 200, seed)


def _check_geometric_minors(seed: int) -> VerificationReport:
    cases = [("B4", minimally_generated(boolean_lattice(4))),
             ("Pi3", minimally_generated(partition_lattice(3))),
             ("Pi4", minimally_generated(partition_lattice(4)))]
    name, gl = cases[seed % len(cases)]
    return verify_geometric_minors(gl, name, seed)


SUITES: dict[str, Callable[[int], VerificationReport]] = {
    "closure-theorem": _check_closure_theorem,
    "graph-minors": _check_graph_minors,
    "parallel-pairs": _check_parallel_pairs,
    "order-minors": _check_order_minors,
    "geometric-minors": _check_geometric_minors,
    "submod-equiv": _check_submod_equiv,
    "minor-closure": _check_minor_closure,
    "genlattice-minors": _check_genlattice_minors,
    "weighting": _check_weighting,
    "realization": _check_realization,
}


def run_suite(theorem: str, seed: int = 0, count: int = 10, jobs: int = 1) -> list[VerificationReport]:
    try:
        checker = SUITES[theorem]
    except KeyError:
        raise ValueError(f"unknown theorem {theorem!r}; expected one of {sorted(SUITES)}") from None
    seeds = range(seed, seed + count)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, os.cpu_count() or 1)) as pool:
            reports = list(pool.map(checker, seeds))
    else:
        reports = [checker(s) for s in seeds]
    return sorted(reports, key=lambda r: r.seed)

