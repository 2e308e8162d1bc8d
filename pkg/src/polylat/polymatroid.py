"""Polymatroid rank tables, closure operators, flats and minors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .foundations import GroundSet, as_rational, bits_of, format_rational


class PolymatroidError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    """One failed axiom together with the subsets that witness it."""

    axiom: str  # "normalized" | "nonnegative" | "monotone" | "submodular"
    sets: tuple[int, ...]
    detail: str = ""

    def describe(self, ground: GroundSet) -> str:
        names = ", ".join(ground.format(s) for s in self.sets)
        msg = f"{self.axiom} violated at ({names})"
        return f"{msg}: {self.detail}" if self.detail else msg


@dataclass(frozen=True)
class Polymatroid:
    """A rank function stored as a dense table indexed by subset mask."""

    ground: GroundSet
    rank: tuple[Fraction, ...]

    def __post_init__(self):
        if not isinstance(self.ground, GroundSet):
            object.__setattr__(self, "ground", GroundSet(tuple(self.ground)))
        ranks = tuple(as_rational(v) for v in self.rank)
        if len(ranks) != 1 << len(self.ground):
            raise PolymatroidError(
                f"rank table has {len(ranks)} entries, expected {1 << len(self.ground)}"
            )
        object.__setattr__(self, "rank", ranks)

    @classmethod
    def from_function(cls, ground: GroundSet, fn) -> "Polymatroid":
        return cls(ground, tuple(fn(m) for m in range(1 << len(ground))))

    @classmethod
    def from_dict(cls, ground: GroundSet, values: dict) -> "Polymatroid":
        """Build from ``{frozenset_of_labels: rank}``; every subset must appear."""
        table: list = [None] * (1 << len(ground))
        for key, v in values.items():
            table[ground.mask(key)] = v
        missing = [ground.format(m) for m, v in enumerate(table) if v is None]
        if missing:
            raise PolymatroidError(f"missing ranks for {', '.join(missing)}")
        return cls(ground, tuple(table))

    @property
    def n(self) -> int:
        return len(self.ground)

    def __call__(self, mask: int) -> Fraction:
        return self.rank[mask]

    def rank_of(self, labels: Iterable) -> Fraction:
        return self.rank[self.ground.mask(labels)]

    def __str__(self):
        rows = [f"{self.ground.format(m)}={format_rational(r)}" for m, r in enumerate(self.rank)]
        return "Polymatroid(" + " ".join(rows) + ")"


def _check_submodular_local(rank: Sequence, n: int, limit: int | None = None) -> list[Violation]:
    out: list[Violation] = []
    for x in range(1 << n):
        rx = rank[x]
        free = [i for i in range(n) if not x >> i & 1]
        for a, e in enumerate(free):
            xe = x | 1 << e
            for f in free[a + 1:]:
                xf = x | 1 << f
                if rank[xe] + rank[xf] < rank[xe | 1 << f] + rx:
                    out.append(Violation("submodular", (xe, xf)))
                    if limit and len(out) >= limit:
                        return out
    return out


def is_submodular_local(rank: Sequence, n: int) -> bool:
    """Diminishing-returns test r(X+e) + r(X+f) >= r(X+e+f) + r(X)."""
    return not _check_submodular_local(rank, n, limit=1)


def is_submodular_pairs(rank: Sequence, n: int) -> bool:
    """Direct scan of r(X&Y) + r(X|Y) <= r(X) + r(Y) over all pairs."""
    size = 1 << n
    for x in range(size):
        for y in range(x + 1, size):
            if rank[x & y] + rank[x | y] > rank[x] + rank[y]:
                return False
    return True


def validate(p: Polymatroid, limit: int | None = 20) -> list[Violation]:
    """Return the list of axiom violations of ``p`` (empty when valid).

    Monotonicity is checked on covering pairs X < X+e, which is enough by
    transitivity; submodularity uses the local two-element form.
    """
    r, n = p.rank, p.n
    out: list[Violation] = []
    if r[0] != 0:
        out.append(Violation("normalized", (0,), f"rank of empty set is {format_rational(r[0])}"))
    for m, v in enumerate(r):
        if v < 0:
            out.append(Violation("nonnegative", (m,), f"rank {format_rational(v)}"))
    for m in range(1 << n):
        for i in range(n):
            if not m >> i & 1 and r[m] > r[m | 1 << i]:
                out.append(Violation("monotone", (m, m | 1 << i),
                                     f"{format_rational(r[m])} > {format_rational(r[m | 1 << i])}"))
    out.extend(_check_submodular_local(r, n, limit))
    return out[:limit] if limit else out


def is_valid(p: Polymatroid) -> bool:
    return not validate(p, limit=1)


def check(p: Polymatroid) -> Polymatroid:
    """Raise PolymatroidError listing violations, else return ``p``."""
    bad = validate(p)
    if bad:
        raise PolymatroidError("; ".join(v.describe(p.ground) for v in bad))
    return p


def closure(p: Polymatroid, x: int) -> int:
    """Elements whose addition to ``x`` leaves the rank unchanged."""
    r = p.rank
    out = x
    for i in range(p.n):
        if r[x | 1 << i] == r[x]:
            out |= 1 << i
    return out


@dataclass(frozen=True)
class ClosureTable:
    """A closure operator tabulated as mask -> closed mask."""

    ground: GroundSet
    cl: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.cl[x]

    def flats(self) -> list[int]:
        """Distinct closed sets ordered by (size, mask)."""
        return sorted(set(self.cl), key=lambda m: (bin(m).count("1"), m))

    def check_invariants(self) -> list[str]:
        """Closure-operator axioms; returns human-readable failures."""
        problems = []
        cl, size = self.cl, len(self.cl)
        for x in range(size):
            if x & ~cl[x]:
                problems.append(f"not extensive at {self.ground.format(x)}")
            if cl[cl[x]] != cl[x]:
                problems.append(f"not idempotent at {self.ground.format(x)}")
            for i in range(len(self.ground)):
                y = x | 1 << i
                if cl[x] & ~cl[y]:
                    problems.append(f"not monotone at {self.ground.format(x)} < {self.ground.format(y)}")
        flats = set(cl)
        for a in flats:
            for b in flats:
                if a & b not in flats:
                    problems.append(f"flats {self.ground.format(a)}, {self.ground.format(b)} "
                                    "have a non-closed intersection")
        return problems


def closure_table(p: Polymatroid) -> ClosureTable:
    return ClosureTable(p.ground, tuple(closure(p, x) for x in range(1 << p.n)))


def flats(p: Polymatroid) -> list[int]:
    return closure_table(p).flats()


def loops(p: Polymatroid) -> int:
    return sum(1 << i for i in range(p.n) if p.rank[1 << i] == 0)


def parallel_classes(p: Polymatroid) -> list[int]:
    """Classes of non-loops with equal singleton closures, ordered by least element."""
    groups: dict[int, int] = {}
    for i in range(p.n):
        if p.rank[1 << i] == 0:
            continue
        c = closure(p, 1 << i)
        groups[c] = groups.get(c, 0) | 1 << i
    return sorted(groups.values(), key=lambda m: m & -m)


def are_parallel(p: Polymatroid, i: int, j: int) -> bool:
    """The defining rank test r({e,f}) = r({e}) = r({f})."""
    r = p.rank
    return r[1 << i | 1 << j] == r[1 << i] == r[1 << j]


def is_simple(p: Polymatroid) -> bool:
    return loops(p) == 0 and all(c & (c - 1) == 0 for c in parallel_classes(p))


def delete(p: Polymatroid, x: int) -> Polymatroid:
    """Restriction of the rank function to subsets of E - X."""
    keep = p.ground.full & ~x
    g = p.ground.minus(x)
    return Polymatroid(g, tuple(p.rank[p.ground.lift(m, keep)] for m in range(1 << len(g))))


def contract(p: Polymatroid, x: int) -> Polymatroid:
    """Contraction: Y -> r(Y | X) - r(X) on subsets of E - X."""
    keep = p.ground.full & ~x
    g = p.ground.minus(x)
    base = p.rank[x]
    return Polymatroid(g, tuple(p.rank[p.ground.lift(m, keep) | x] - base for m in range(1 << len(g))))


def minor(p: Polymatroid, contract_mask: int, delete_mask: int) -> Polymatroid:
    """(p / X) \\ Y with both masks given in p's own ground set."""
    if contract_mask & delete_mask:
        raise PolymatroidError("contraction and deletion sets must be disjoint")
    q = contract(p, contract_mask)
    keep = p.ground.full & ~contract_mask
    return delete(q, p.ground.project(delete_mask, keep))


def same_closure(p: Polymatroid, q: Polymatroid) -> bool:
    if p.ground != q.ground:
        raise PolymatroidError("polymatroids have different ground sets")
    return closure_table(p).cl == closure_table(q).cl


def simplify(p: Polymatroid) -> tuple[Polymatroid, dict[str, tuple[str, ...]]]:
    """Delete loops and all but the least element of each parallel class.

    Returns the simple polymatroid and a map from each kept element to the
    labels of its parallel class.
    """
    classes = parallel_classes(p)
    keep = 0
    rep: dict[str, tuple[str, ...]] = {}
    for c in classes:
        low = c & -c
        keep |= low
        rep[p.ground.labels[low.bit_length() - 1]] = p.ground.members(c)
    return delete(p, p.ground.full & ~keep), rep


def free_matroid(ground: GroundSet) -> Polymatroid:
    return Polymatroid.from_function(ground, lambda m: bin(m).count("1"))


def zero_polymatroid(ground: GroundSet) -> Polymatroid:
    return Polymatroid.from_function(ground, lambda m: 0)
