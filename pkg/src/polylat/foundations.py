"""Ground sets, bitmask subsets, exact rationals and set partitions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

MAX_GROUND = 20


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: a binary float is never what the caller meant.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not ranks")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {value!r} as an exact rational")


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits_of(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in increasing numeric order."""
    bits = list(bits_of(mask))
    for code in range(1 << len(bits)):
        sub = 0
        for j, b in enumerate(bits):
            if code >> j & 1:
                sub |= 1 << b
        yield sub


@dataclass(frozen=True)
class GroundSet:
    """An ordered finite set of element names; position i is bit i."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate ground labels in {labels}")
        if len(labels) > MAX_GROUND:
            raise ValueError(f"ground set of {len(labels)} elements exceeds {MAX_GROUND}")

    @classmethod
    def range(cls, n: int, start: int = 1) -> "GroundSet":
        return cls(tuple(str(i) for i in range(start, start + n)))

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise KeyError(f"unknown element {label!r}") from None

    def mask(self, items: Iterable) -> int:
        """Bitmask for an iterable of labels."""
        m = 0
        for x in items:
            m |= 1 << self.index(x)
        return m

    def members(self, mask: int) -> tuple[str, ...]:
        if mask & ~self.full:
            raise ValueError(f"mask {mask:#x} has bits outside the ground set")
        return tuple(self.labels[i] for i in bits_of(mask))

    def format(self, mask: int) -> str:
        return "{" + ",".join(self.members(mask)) + "}"

    def minus(self, mask: int) -> "GroundSet":
        return GroundSet(tuple(x for i, x in enumerate(self.labels) if not mask >> i & 1))

    def project(self, mask: int, keep: int) -> int:
        """Re-index ``mask`` (restricted to ``keep``) onto the ground set that keeps only ``keep``."""
        out = 0
        for j, i in enumerate(bits_of(keep)):
            if mask >> i & 1:
                out |= 1 << j
        return out

    def lift(self, mask: int, keep: int) -> int:
        """Inverse of :meth:`project`: map a mask over the kept elements back into this ground set."""
        out = 0
        for j, i in enumerate(bits_of(keep)):
            if mask >> j & 1:
                out |= 1 << i
        return out


def subset_iter(g: GroundSet) -> Iterator[int]:
    """All 2^n subsets of ``g`` as masks, in increasing mask order."""
    return iter(range(1 << len(g)))


class Partition(frozenset):
    """A set partition: a frozenset of disjoint nonempty frozensets of names."""

    def __new__(cls, blocks: Iterable[Iterable]):
        bs = [frozenset(str(x) for x in b) for b in blocks]
        seen: set = set()
        for b in bs:
            if not b:
                raise ValueError("empty block in partition")
            if seen & b:
                raise ValueError(f"blocks overlap on {sorted(seen & b)}")
            seen |= b
        return super().__new__(cls, bs)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"12/3/4"`` (single-character names) or ``"a,b/c"``."""
        blocks = []
        for chunk in text.strip().split("/"):
            chunk = chunk.strip()
            blocks.append(chunk.split(",") if "," in chunk else list(chunk))
        return cls(blocks)

    @classmethod
    def discrete(cls, names: Iterable) -> "Partition":
        return cls([x] for x in names)

    @property
    def ground(self) -> frozenset:
        return frozenset().union(*self) if self else frozenset()

    def block_of(self, x) -> frozenset:
        for b in self:
            if x in b:
                return b
        raise KeyError(x)

    def refines(self, other: "Partition") -> bool:
        """True when every block of self lies inside a block of ``other``."""
        return all(any(b <= c for c in other) for b in self)

    def __str__(self):
        return format_blocks(self)

    def __repr__(self):
        return f"Partition({format_blocks(self)!r})"


def _block_key(block) -> tuple:
    return tuple(sorted(block, key=name_key))


def name_key(x: str):
    return (0, int(x), x) if x.isdigit() else (1, 0, x)


def format_block(block) -> str:
    names = sorted(block, key=name_key)
    if all(len(x) == 1 for x in names):
        return "".join(names)
    return ",".join(names)


def format_blocks(blocks) -> str:
    ordered = sorted(blocks, key=lambda b: [name_key(x) for x in _block_key(b)])
    return "/".join(format_block(b) for b in ordered)


def partition_join(p: Partition, q: Partition) -> Partition:
    """Finest partition coarser than both ``p`` and ``q``."""
    if p.ground != q.ground:
        raise ValueError("partitions are over different vertex sets")
    parent = {x: x for x in p.ground}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for block in list(p) + list(q):
        it = iter(block)
        first = find(next(it))
        for x in it:
            rx = find(x)
            if rx != first:
                parent[rx] = first
    groups: dict = {}
    for x in p.ground:
        groups.setdefault(find(x), set()).add(x)
    return Partition(groups.values())


def partition_meet(p: Partition, q: Partition) -> Partition:
    if p.ground != q.ground:
        raise ValueError("partitions are over different vertex sets")
    return Partition(b & c for b in p for c in q if b & c)
