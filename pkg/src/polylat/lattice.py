"""Finite lattices stored as dense join tables."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .foundations import GroundSet, Partition, bits_of, format_blocks, partition_join

FULL_ASSOC_LIMIT = 512


class NotALatticeError(ValueError):
    """Raised when the input order or table does not define a lattice."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


def _mask_items(mask: int) -> list[int]:
    return list(bits_of(mask))


@dataclass(frozen=True)
class FinLattice:
    """A finite lattice on ids ``0..m-1``.

    ``join[x][y]`` is the id of x v y. ``labels`` are unique display names;
    ``data`` optionally carries the concrete object behind each element
    (a subset mask, a Partition, ...). Order, meets and covers are derived.
    """

    labels: tuple[str, ...]
    join: tuple[tuple[int, ...], ...]
    data: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        object.__setattr__(self, "join", tuple(tuple(row) for row in self.join))
        if self.data is not None:
            object.__setattr__(self, "data", tuple(self.data))
        _validate_join_table(self)

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"FinLattice({len(self)} elements, labels={list(self.labels)})"

    @property
    def size(self) -> int:
        return len(self.labels)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.labels)}

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise KeyError(f"no element labeled {label!r}") from None

    @cached_property
    def _data_index(self) -> dict:
        if self.data is None:
            return {}
        return {d: i for i, d in enumerate(self.data)}

    def find(self, obj) -> int:
        """Id of the element whose ``data`` equals ``obj``."""
        return self._data_index[obj]

    @cached_property
    def up(self) -> tuple[int, ...]:
        """up[x] is the bitmask of all y with x <= y."""
        m = self.size
        return tuple(sum(1 << y for y in range(m) if self.join[x][y] == y) for x in range(m))

    @cached_property
    def down(self) -> tuple[int, ...]:
        m = self.size
        return tuple(sum(1 << x for x in range(m) if self.join[x][y] == y) for y in range(m))

    def leq(self, x: int, y: int) -> bool:
        return self.join[x][y] == y

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.join[x][y] == y

    @cached_property
    def bottom(self) -> int:
        return _find_bottom(self.join)

    @cached_property
    def top(self) -> int:
        return self.join_all(range(self.size))

    def join_all(self, items: Iterable[int]) -> int:
        acc = self.bottom
        for x in items:
            acc = self.join[acc][x]
        return acc

    @cached_property
    def meet_table(self) -> tuple[tuple[int, ...], ...]:
        m = self.size
        rows = []
        for x in range(m):
            row = []
            for y in range(m):
                row.append(self.join_all(bits_of(self.down[x] & self.down[y])))
            rows.append(tuple(row))
        return tuple(rows)

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for y in range(self.size):
            below = self.down[y] & ~(1 << y)
            out.append(tuple(x for x in bits_of(below) if (self.up[x] & self.down[y]) == (1 << x | 1 << y)))
        return tuple(out)

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        ups: list[list[int]] = [[] for _ in range(self.size)]
        for y, lows in enumerate(self.lower_covers):
            for x in lows:
                ups[x].append(y)
        return tuple(tuple(u) for u in ups)

    def covers(self, x: int, y: int) -> bool:
        """True when y covers x."""
        return x in self.lower_covers[y]

    def cover_pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for y in range(self.size) for x in self.lower_covers[y]]

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        return tuple(sorted(range(self.size), key=lambda x: (self.down[x].bit_count(), x)))

    @cached_property
    def heights(self) -> tuple[int, ...]:
        """Length of the longest chain from the bottom to each element."""
        k = [0] * self.size
        for y in self.linear_extension:
            k[y] = max((k[x] + 1 for x in self.lower_covers[y]), default=0)
        return tuple(k)

    @cached_property
    def atoms(self) -> tuple[int, ...]:
        return self.upper_covers[self.bottom]

    def interval(self, a: int, b: int) -> list[int]:
        return _mask_items(self.up[a] & self.down[b])

    def relabel(self, labels: Sequence[str], data=None) -> "FinLattice":
        return FinLattice(tuple(labels), self.join, self.data if data is None else tuple(data))

    def to_dot(self, name: str = "lattice") -> str:
        """Hasse diagram in DOT, edges directed upward, ids in canonical order."""
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i, lab in enumerate(self.labels):
            lines.append(f'  n{i} [label="{_dot_escape(lab)}"];')
        for x, y in sorted(self.cover_pairs()):
            lines.append(f"  n{x} -> n{y};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def _find_bottom(join) -> int:
    m = len(join)
    for x in range(m):
        if all(join[x][y] == y for y in range(m)):
            return x
    raise NotALatticeError("no bottom element")


def _validate_join_table(l: FinLattice) -> None:
    m = len(l.labels)
    join = l.join
    if m == 0:
        raise NotALatticeError("a lattice has at least one element")
    if len(set(l.labels)) != m:
        raise NotALatticeError("element labels must be distinct")
    if len(join) != m or any(len(row) != m for row in join):
        raise NotALatticeError(f"join table is not {m}x{m}")
    if l.data is not None and len(l.data) != m:
        raise NotALatticeError("data length differs from element count")
    for x in range(m):
        if join[x][x] != x:
            raise NotALatticeError(f"join not idempotent at {l.labels[x]}", (x,))
        for y in range(x + 1, m):
            v = join[x][y]
            if not 0 <= v < m:
                raise NotALatticeError(f"join entry out of range at ({x},{y})", (x, y))
            if v != join[y][x]:
                raise NotALatticeError(f"join not commutative at {l.labels[x]}, {l.labels[y]}", (x, y))
    if m <= FULL_ASSOC_LIMIT:
        triples = ((x, y, z) for x in range(m) for y in range(m) for z in range(m))
    else:
        rng = random.Random(m)
        triples = ((rng.randrange(m), rng.randrange(m), rng.randrange(m)) for _ in range(200_000))
    for x, y, z in triples:
        if join[join[x][y]][z] != join[x][join[y][z]]:
            raise NotALatticeError("join not associative at "
                                   f"{l.labels[x]}, {l.labels[y]}, {l.labels[z]}", (x, y, z))
    # bottom exists; top exists since the join of everything is absorbing
    bot = _find_bottom(join)
    top = bot
    for x in range(m):
        top = join[top][x]
    if any(join[top][x] != top for x in range(m)):
        raise NotALatticeError("no top element")


def lattice_from_join_table(labels, join, data=None) -> FinLattice:
    return FinLattice(tuple(labels), tuple(tuple(r) for r in join), data)


def lattice_from_covers(labels: Sequence, covers: Iterable[tuple]) -> FinLattice:
    """Build a lattice from its Hasse diagram.

    ``covers`` holds pairs ``(a, b)`` of labels meaning a < b. Raises
    NotALatticeError on a cycle or on a pair without a least upper bound.
    """
    labels = [str(x) for x in labels]
    idx = {x: i for i, x in enumerate(labels)}
    if len(idx) != len(labels):
        raise NotALatticeError("element labels must be distinct")
    m = len(labels)
    succ: list[set[int]] = [set() for _ in range(m)]
    for a, b in covers:
        try:
            succ[idx[str(a)]].add(idx[str(b)])
        except KeyError as e:
            raise NotALatticeError(f"cover mentions unknown element {e.args[0]!r}") from None
    indeg = [0] * m
    for s in succ:
        for b in s:
            indeg[b] += 1
    queue = deque(i for i in range(m) if indeg[i] == 0)
    order = []
    while queue:
        x = queue.popleft()
        order.append(x)
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    if len(order) != m:
        stuck = [labels[i] for i in range(m) if indeg[i] > 0]
        raise NotALatticeError(f"cycle among {stuck}", tuple(stuck))
    up = [1 << i for i in range(m)]
    for x in reversed(order):
        for y in succ[x]:
            up[x] |= up[y]
    down = [0] * m
    for x in range(m):
        for y in bits_of(up[x]):
            down[y] |= 1 << x
    join = [[0] * m for _ in range(m)]
    for x in range(m):
        for y in range(x, m):
            common = up[x] & up[y]
            lub = [u for u in bits_of(common) if up[u] == common]
            if not lub:
                minimal = [labels[u] for u in bits_of(common) if down[u] & common == 1 << u]
                raise NotALatticeError(
                    f"{labels[x]} and {labels[y]} have minimal upper bounds {minimal}",
                    (labels[x], labels[y], tuple(minimal)),
                )
            join[x][y] = join[y][x] = lub[0]
    return FinLattice(tuple(labels), tuple(tuple(r) for r in join))


def lattice_from_closed_sets(ground: GroundSet, family: Iterable[int]) -> FinLattice:
    """Lattice of an intersection-closed family of subsets, ordered by inclusion."""
    fam = sorted(set(family), key=lambda s: (s.bit_count(), s))
    if not fam:
        raise NotALatticeError("empty family")
    members = set(fam)
    top = fam[-1]
    for s in fam:
        if s & ~top:
            raise NotALatticeError("family has no maximum set", (ground.format(s),))
    for a, b in combinations(fam, 2):
        if a & b not in members:
            raise NotALatticeError(
                f"{ground.format(a)} and {ground.format(b)} intersect outside the family",
                (a, b),
            )
    pos = {s: i for i, s in enumerate(fam)}
    m = len(fam)
    join = [[0] * m for _ in range(m)]
    for i, a in enumerate(fam):
        for j in range(i, m):
            u = a | fam[j]
            acc = top
            for s in fam:
                if s & u == u:
                    acc &= s
            join[i][j] = join[j][i] = pos[acc]
    return FinLattice(tuple(ground.format(s) for s in fam), tuple(tuple(r) for r in join), tuple(fam))


def join_irreducibles(l: FinLattice) -> list[int]:
    return [x for x in range(l.size) if x != l.bottom and len(l.lower_covers[x]) == 1]


def is_atomistic(l: FinLattice) -> tuple[bool, int | None]:
    atoms = set(l.atoms)
    for x in range(l.size):
        if l.join_all(a for a in bits_of(l.down[x]) if a in atoms) != x:
            return False, x
    return True, None


def is_semimodular(l: FinLattice) -> tuple[bool, tuple | None]:
    """Upper semimodularity in cover form."""
    for x in range(l.size):
        for y in range(x + 1, l.size):
            m = l.meet(x, y)
            if l.covers(m, x) and l.covers(m, y):
                j = l.join[x][y]
                if not (l.covers(x, j) and l.covers(y, j)):
                    return False, (x, y)
    return True, None


def is_geometric(l: FinLattice) -> tuple[bool, dict | None]:
    """Atomistic and semimodular; on failure the witness names the reason."""
    ok, x = is_atomistic(l)
    if not ok:
        return False, {"reason": "not atomistic", "element": l.labels[x]}
    ok, pair = is_semimodular(l)
    if not ok:
        return False, {"reason": "not semimodular", "pair": tuple(l.labels[i] for i in pair)}
    return True, None


def is_distributive(l: FinLattice) -> tuple[bool, tuple | None]:
    """Scan x ^ (y v z) = (x ^ y) v (x ^ z); witness is a label triple."""
    J, M = l.join, l.meet_table
    for x in range(l.size):
        for y in range(l.size):
            for z in range(y + 1, l.size):
                if M[x][J[y][z]] != J[M[x][y]][M[x][z]]:
                    return False, (l.labels[x], l.labels[y], l.labels[z])
    return True, None


def chain_heights(l: FinLattice) -> tuple[int, ...]:
    return l.heights


def submodular_weighting(l: FinLattice, base: int = 2) -> tuple[tuple[Fraction, ...], tuple[int, ...]]:
    """Weights 1 - base**(-k) where k is the longest-chain height.

    Returns the rational table and the integer table obtained by scaling by
    base**k(top), the least power of ``base`` clearing every denominator.
    Any ``base >= 2`` yields a strictly order-preserving submodular weighting.
    """
    if base < 2:
        raise ValueError("base must be at least 2")
    k = l.heights
    top = k[l.top]
    rational = tuple(1 - Fraction(1, base ** h) for h in k)
    scale = base ** top
    integer = tuple(scale - base ** (top - h) for h in k)
    return rational, integer


def check_weighting(l: FinLattice, w: Sequence) -> list[str]:
    """Problems preventing ``w`` from being a strictly order-preserving
    submodular weighting with w(bottom) = 0."""
    problems = []
    if w[l.bottom] != 0:
        problems.append(f"weight of bottom is {w[l.bottom]}")
    for x in range(l.size):
        for y in bits_of(l.up[x] & ~(1 << x)):
            if not w[x] < w[y]:
                problems.append(f"not strictly increasing: {l.labels[x]} < {l.labels[y]}")
                break
    for x in range(l.size):
        for y in range(x + 1, l.size):
            if w[l.meet(x, y)] + w[l.join[x][y]] > w[x] + w[y]:
                problems.append(f"not submodular at {l.labels[x]}, {l.labels[y]}")
    return problems


# small catalogue of named lattices

def boolean_lattice(n: int, names: Sequence[str] | None = None) -> FinLattice:
    g = GroundSet(tuple(names) if names else GroundSet.range(n).labels)
    return lattice_from_closed_sets(g, range(1 << n))


def chain(k: int) -> FinLattice:
    """Chain 0 < 1 < ... < k (k+1 elements)."""
    labels = [str(i) for i in range(k + 1)]
    return FinLattice(tuple(labels), tuple(tuple(max(i, j) for j in range(k + 1)) for i in range(k + 1)))


def diamond() -> FinLattice:
    """M_3 with atoms g1, g2, g3."""
    return lattice_from_covers(
        ["0", "g1", "g2", "g3", "1"],
        [("0", "g1"), ("0", "g2"), ("0", "g3"), ("g1", "1"), ("g2", "1"), ("g3", "1")],
    )


def pentagon() -> FinLattice:
    """N_5: 0 < a < b < 1 and 0 < c < 1."""
    return lattice_from_covers(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )


def partition_lattice(n: int) -> FinLattice:
    """Pi_n on vertices 1..n, elements labeled like ``12/3/4``."""
    names = [str(i) for i in range(1, n + 1)]
    parts = _all_partitions(names)
    parts.sort(key=lambda p: (-len(p), format_blocks(p)))
    pos = {p: i for i, p in enumerate(parts)}
    join = [[pos[partition_join(a, b)] for b in parts] for a in parts]
    return FinLattice(tuple(str(p) for p in parts), tuple(tuple(r) for r in join), tuple(parts))


def _all_partitions(names: list[str]) -> list[Partition]:
    if not names:
        return [Partition([])]
    first, rest = names[0], names[1:]
    out = []
    for p in _all_partitions(rest):
        blocks = list(p)
        out.append(Partition(blocks + [[first]]))
        for i in range(len(blocks)):
            nb = blocks[:i] + [blocks[i] | {first}] + blocks[i + 1:]
            out.append(Partition(nb))
    return out
