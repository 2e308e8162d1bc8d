"""Finite posets, lower order ideals, order minors and distributive lattices."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .foundations import GroundSet, bits_of, submasks
from .genlattice import (
    GenLattice,
    MinorHandle,
    apply_ops,
    count_minors,
    enumerate_minors,
    gl_isomorphic,
    handle_of,
)
from .lattice import FinLattice, join_irreducibles, lattice_from_closed_sets
from .report import VerificationReport


@dataclass(frozen=True)
class Poset:
    """Elements ``0..k-1`` with labels; ``below[x]`` is the mask of all y <= x."""

    labels: tuple[str, ...]
    below: tuple[int, ...]

    @classmethod
    def from_relations(cls, labels: Sequence, relations: Iterable[tuple]) -> "Poset":
        """Order generated by pairs ``(a, b)`` meaning a < b; rejects cycles."""
        labels = tuple(str(x) for x in labels)
        idx = {x: i for i, x in enumerate(labels)}
        if len(idx) != len(labels):
            raise ValueError("poset labels must be distinct")
        k = len(labels)
        below = [1 << i for i in range(k)]
        for a, b in relations:
            try:
                below[idx[str(b)]] |= 1 << idx[str(a)]
            except KeyError as e:
                raise ValueError(f"unknown poset element {e.args[0]!r}") from None
        changed = True
        while changed:
            changed = False
            for x in range(k):
                acc = below[x]
                for y in bits_of(below[x]):
                    acc |= below[y]
                if acc != below[x]:
                    below[x] = acc
                    changed = True
        for x in range(k):
            for y in bits_of(below[x] & ~(1 << x)):
                if below[y] >> x & 1:
                    raise ValueError(f"cycle through {labels[x]} and {labels[y]}")
        return cls(labels, tuple(below))

    @property
    def size(self) -> int:
        return len(self.labels)

    def leq(self, a: int, b: int) -> bool:
        return bool(self.below[b] >> a & 1)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Hasse diagram pairs (a, b) with b covering a."""
        out = []
        for b in range(self.size):
            strict = self.below[b] & ~(1 << b)
            for a in bits_of(strict):
                if not any(self.below[c] >> a & 1 for c in bits_of(strict & ~(1 << a))):
                    out.append((a, b))
        return tuple(sorted(out))

    def is_ideal(self, mask: int) -> bool:
        return all(self.below[x] & ~mask == 0 for x in bits_of(mask))

    def ideals(self) -> list[int]:
        """All lower order ideals as masks, ordered by (size, mask)."""
        found = [m for m in range(1 << self.size) if self.is_ideal(m)]
        return sorted(found, key=lambda m: (m.bit_count(), m))

    def induced(self, mask: int) -> "Poset":
        keep = list(bits_of(mask))
        pos = {x: j for j, x in enumerate(keep)}
        below = tuple(sum(1 << pos[y] for y in bits_of(self.below[x] & mask)) for x in keep)
        return Poset(tuple(self.labels[x] for x in keep), below)

    @property
    def ground(self) -> GroundSet:
        return GroundSet(self.labels)


@dataclass(frozen=True)
class OrderMinor:
    I: int
    J: int

    def describe(self, p: Poset) -> str:
        g = p.ground
        return f"({g.format(self.I)}, {g.format(self.J)})"


def ideal_lattice(p: Poset) -> GenLattice:
    """Lattice of lower order ideals (join = union) generated by principal ideals."""
    lat = lattice_from_closed_sets(p.ground, p.ideals())
    gens = frozenset(lat.find(p.below[x]) for x in range(p.size))
    return GenLattice(lat, gens)


def principal_labeling(p: Poset, gl: GenLattice) -> dict[str, int]:
    return {p.labels[x]: gl.lattice.find(p.below[x]) for x in range(p.size)}


def enumerate_order_minors(p: Poset) -> Iterator[OrderMinor]:
    full = (1 << p.size) - 1
    for J in sorted(p.ideals()):
        for I in submasks(full & ~J):
            yield OrderMinor(I, J)


def count_order_minors(p: Poset) -> int:
    return sum(1 << (p.size - J.bit_count()) for J in p.ideals())


def order_minor_to_lattice_minor(p: Poset, om: OrderMinor, gl: GenLattice | None = None
                                 ) -> MinorHandle:
    """((L, irr L)|_{I u J}) / J as a handle on the ideal lattice."""
    if om.I & om.J or not p.is_ideal(om.J):
        raise ValueError(f"{om.describe(p)} is not an order minor")
    gl = gl or ideal_lattice(p)
    names = p.labels
    keep = om.I | om.J
    ops = [
        ("delete", [names[x] for x in range(p.size) if not keep >> x & 1]),
        ("contract", [names[x] for x in bits_of(om.J)]),
    ]
    minor, _ = apply_ops(gl, ops, principal_labeling(p, gl))
    return handle_of(minor, gl)


def lattice_minor_to_order_minor(p: Poset, handle: MinorHandle) -> OrderMinor:
    """J = irreducibles under the apex; I = those whose join with the apex is kept."""
    l = handle.base.lattice
    J = I = 0
    for x in range(p.size):
        i = l.find(p.below[x])
        if l.leq(i, handle.apex):
            J |= 1 << x
        elif l.join[i][handle.apex] in handle.kept:
            I |= 1 << x
    return OrderMinor(I, J)


def verify_order_minor_bijection(p: Poset, seed: int | None = None,
                                 check_isomorphism: bool = True) -> VerificationReport:
    t0 = time.perf_counter()
    gl = ideal_lattice(p)
    witness = None
    image: dict = {}
    oms = list(enumerate_order_minors(p))
    expected = count_order_minors(p)
    for om in oms:
        h = order_minor_to_lattice_minor(p, om, gl)
        if h.key() in image:
            witness = f"{om.describe(p)} and {image[h.key()].describe(p)} give the same minor"
            break
        image[h.key()] = om
        if lattice_minor_to_order_minor(p, h) != om:
            witness = f"inverse map does not return {om.describe(p)}"
            break
        if check_isomorphism:
            target = ideal_lattice(p.induced(om.I))
            if gl_isomorphic(h.materialize(), target) is None:
                witness = f"minor of {om.describe(p)} is not the ideal lattice of I"
                break
    n_minors = count_minors(gl)
    if witness is None:
        for h in enumerate_minors(gl):
            if h.key() not in image:
                witness = f"lattice minor {h.describe()} has no order minor"
                break
    if witness is None and not (len(oms) == expected == n_minors):
        witness = f"counts: order minors {len(oms)}, formula {expected}, lattice minors {n_minors}"
    ms = (time.perf_counter() - t0) * 1000
    return VerificationReport("order-minors", f"poset {list(p.labels)} covers={list(p.covers)}",
                              len(oms), n_minors, witness is None, witness, ms, seed)


def check_distr_no_paras(l: FinLattice) -> tuple[bool, tuple | None]:
    """Distinct irreducibles never give equal proper joins with a common element."""
    irr = join_irreducibles(l)
    J = l.join
    for x in range(l.size):
        for a, i in enumerate(irr):
            xi = J[i][x]
            if xi == x:
                continue
            for j in irr[a + 1:]:
                if J[j][x] == xi:
                    return False, (l.labels[x], l.labels[i], l.labels[j])
    return True, None


def irreducibles_poset(l: FinLattice) -> Poset:
    irr = join_irreducibles(l)
    rel = [(l.labels[a], l.labels[b]) for a in irr for b in irr if a != b and l.leq(a, b)]
    return Poset.from_relations([l.labels[i] for i in irr], rel)


def random_poset(k: int, rng: random.Random) -> Poset:
    """Random DAG on labeled elements (each forward pair kept with probability 1/2)."""
    labels = [chr(ord("a") + i) for i in range(k)] if k <= 26 else [f"p{i}" for i in range(k)]
    rel = [(labels[i], labels[j]) for i in range(k) for j in range(i + 1, k) if rng.random() < 0.5]
    return Poset.from_relations(labels, rel)


def antichain(k: int) -> Poset:
    return Poset.from_relations([chr(ord("a") + i) for i in range(k)], [])


def chain_poset(k: int) -> Poset:
    labels = [chr(ord("a") + i) for i in range(k)]
    return Poset.from_relations(labels, list(zip(labels, labels[1:])))
