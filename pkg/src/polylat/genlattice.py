"""Generator-enriched lattices (L, G), strong maps and the minor calculus.

A minor of (L, G) is always materialized as a fresh :class:`GenLattice`
whose element labels (and ``data``) are inherited from the ambient
lattice, so elements can be matched across minors by label.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .foundations import GroundSet, bits_of
from .lattice import (
    FinLattice,
    check_weighting,
    join_irreducibles,
    lattice_from_closed_sets,
    submodular_weighting,
)
from .polymatroid import ClosureTable, Polymatroid, closure_table


class GenLatticeError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True)
class GenLattice:
    """A finite lattice together with a join-generating set of non-bottom ids."""

    lattice: FinLattice
    gens: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "gens", frozenset(self.gens))
        l = self.lattice
        if l.bottom in self.gens:
            raise GenLatticeError("the bottom element cannot be a generator", l.labels[l.bottom])
        for g in self.gens:
            if not 0 <= g < l.size:
                raise GenLatticeError(f"generator id {g} out of range")
        reach = _join_closure(l, self.gens)
        missing = [l.labels[x] for x in range(l.size) if x not in reach]
        if missing:
            raise GenLatticeError(f"not generated by the generators: {missing}", tuple(missing))

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @property
    def size(self) -> int:
        return self.lattice.size

    def sorted_gens(self) -> list[int]:
        return sorted(self.gens)

    def gen_labels(self) -> list[str]:
        return [self.lattice.labels[g] for g in self.sorted_gens()]

    def is_minimally_generated(self) -> bool:
        return self.gens == frozenset(join_irreducibles(self.lattice))

    def element_set(self) -> frozenset[str]:
        return frozenset(self.lattice.labels)

    def __repr__(self):
        return f"GenLattice(elements={list(self.lattice.labels)}, gens={self.gen_labels()})"


def _join_closure(l: FinLattice, gens: Iterable[int]) -> set[int]:
    reach = {l.bottom}
    for g in gens:
        reach |= {l.join[x][g] for x in reach}
    return reach


def genlattice_new(l: FinLattice, gens: Iterable) -> GenLattice:
    """Validated (L, G); generators may be given as ids or labels."""
    ids = []
    for g in gens:
        ids.append(g if isinstance(g, int) else l.index(g))
    return GenLattice(l, frozenset(ids))


def minimally_generated(l: FinLattice) -> GenLattice:
    return GenLattice(l, frozenset(join_irreducibles(l)))


def diagram_edges(gl: GenLattice) -> list[tuple[int, int, tuple[int, ...]]]:
    """Edges (x, x v g) with x v g != x, merged per pair, with contributing generators."""
    edges: dict[tuple[int, int], list[int]] = {}
    J = gl.lattice.join
    for x in range(gl.size):
        for g in gl.sorted_gens():
            y = J[x][g]
            if y != x:
                edges.setdefault((x, y), []).append(g)
    return [(x, y, tuple(gs)) for (x, y), gs in sorted(edges.items())]


def diagram_dot(gl: GenLattice, name: str = "genlattice") -> str:
    l = gl.lattice
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, lab in enumerate(l.labels):
        shape = ', shape=box' if i in gl.gens else ""
        lines.append(f'  n{i} [label="{_esc(lab)}"{shape}];')
    for x, y, gs in diagram_edges(gl):
        tag = ",".join(l.labels[g] for g in gs)
        lines.append(f'  n{x} -> n{y} [label="{_esc(tag)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _esc(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


# ---------------------------------------------------------------- strong maps

def is_strong_map(f: Sequence[int] | Mapping[int, int], src: GenLattice, dst: GenLattice
                  ) -> tuple[bool, str | None]:
    """Join-preserving (empty join included) and sending generators to generators or bottom."""
    L, K = src.lattice, dst.lattice
    if len(f) != L.size:
        return False, "map is not total on the source lattice"
    if f[L.bottom] != K.bottom:
        return False, f"bottom maps to {K.labels[f[L.bottom]]}"
    for x in range(L.size):
        for y in range(x + 1, L.size):
            if f[L.join[x][y]] != K.join[f[x]][f[y]]:
                return False, f"join of {L.labels[x]}, {L.labels[y]} not preserved"
    allowed = dst.gens | {K.bottom}
    for g in sorted(src.gens):
        if f[g] not in allowed:
            return False, f"generator {L.labels[g]} maps to {K.labels[f[g]]}"
    return True, None


def is_injective(f, src: GenLattice) -> bool:
    return len({f[x] for x in range(src.size)}) == src.size


def is_surjective(f, src: GenLattice, dst: GenLattice) -> bool:
    return {f[g] for g in src.gens} | {f[src.bottom]} == dst.gens | {dst.bottom}


@dataclass(frozen=True)
class StrongSurjection:
    """Ground-element assignment into G + {bottom}, inducing theta on subsets."""

    ground: GroundSet
    target: GenLattice
    assign: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assign", tuple(self.assign))
        tgt = self.target
        if len(self.assign) != len(self.ground):
            raise GenLatticeError("assignment length differs from ground set size")
        allowed = tgt.gens | {tgt.bottom}
        for e, a in zip(self.ground.labels, self.assign):
            if a not in allowed:
                raise GenLatticeError(f"{e} is sent to {tgt.lattice.labels[a]}, not a generator")
        if set(self.assign) | {tgt.bottom} != allowed:
            missed = sorted(tgt.lattice.labels[g] for g in tgt.gens - set(self.assign))
            raise GenLatticeError(f"not surjective onto generators {missed}", tuple(missed))

    def theta(self, mask: int) -> int:
        J = self.target.lattice.join
        acc = self.target.bottom
        for i in bits_of(mask):
            acc = J[acc][self.assign[i]]
        return acc

    def theta_table(self) -> tuple[int, ...]:
        """theta for every subset, computed incrementally by dropping the top bit."""
        J = self.target.lattice.join
        n = len(self.ground)
        table = [self.target.bottom] * (1 << n)
        for m in range(1, 1 << n):
            hi = m.bit_length() - 1
            table[m] = J[table[m & ~(1 << hi)]][self.assign[hi]]
        return tuple(table)

    def preimage_union(self) -> tuple[int, ...]:
        """phi: each lattice element to the union of its theta-preimages."""
        phi = [0] * self.target.size
        for m, v in enumerate(self.theta_table()):
            phi[v] |= m
        return tuple(phi)


def identity_surjection(gl: GenLattice) -> StrongSurjection:
    """The surjection from the Boolean algebra on G induced by the identity on G."""
    gens = gl.sorted_gens()
    return StrongSurjection(GroundSet(tuple(gl.lattice.labels[g] for g in gens)), gl, tuple(gens))


def closure_of_surjection(t: StrongSurjection) -> ClosureTable:
    theta = t.theta_table()
    phi = t.preimage_union()
    return ClosureTable(t.ground, tuple(phi[v] for v in theta))


def flats_genlattice(p: Polymatroid) -> tuple[GenLattice, StrongSurjection]:
    """Lattice of flats with generators cl({e}) for non-loops, and theta: e -> cl({e})."""
    ct = closure_table(p)
    lat = lattice_from_closed_sets(p.ground, ct.flats())
    assign = tuple(lat.find(ct.cl[1 << i]) for i in range(p.n))
    gens = frozenset(a for i, a in enumerate(assign) if p.rank[1 << i] != 0)
    gl = GenLattice(lat, gens)
    return gl, StrongSurjection(p.ground, gl, assign)


# --------------------------------------------------------------- minors

def span(base: GenLattice | FinLattice, H: Iterable[int], z: int) -> GenLattice:
    """<H | z>: z together with all joins of nonempty subsets of H.

    Joins are taken in the ambient lattice; element ids of the result follow
    the ambient id order, and labels/data are inherited.
    """
    l = base.lattice if isinstance(base, GenLattice) else base
    H = sorted(set(H))
    for h in H:
        if not l.lt(z, h):
            raise GenLatticeError(f"{l.labels[h]} is not strictly above {l.labels[z]}", (h, z))
    elems = {z}
    for h in H:
        elems |= {l.join[x][h] for x in elems}
    ids = sorted(elems)
    pos = {x: i for i, x in enumerate(ids)}
    join = tuple(tuple(pos[l.join[a][b]] for b in ids) for a in ids)
    data = None if l.data is None else tuple(l.data[x] for x in ids)
    sub = FinLattice(tuple(l.labels[x] for x in ids), join, data)
    return GenLattice(sub, frozenset(pos[h] for h in H))


def ambient_ids(minor: GenLattice, base: GenLattice | FinLattice) -> list[int]:
    """Ids in ``base`` of each element of ``minor`` (matched by label)."""
    l = base.lattice if isinstance(base, GenLattice) else base
    return [l.index(x) for x in minor.lattice.labels]


def _check_gens(gl: GenLattice, I: Iterable[int]) -> frozenset[int]:
    I = frozenset(I)
    if not I <= gl.gens:
        extra = sorted(gl.lattice.labels[i] for i in I - gl.gens)
        raise GenLatticeError(f"not generators: {extra}", tuple(extra))
    return I


def gl_delete(gl: GenLattice, I: Iterable[int]) -> GenLattice:
    """<G - I | bottom>."""
    I = _check_gens(gl, I)
    return span(gl.lattice, gl.gens - I, gl.bottom)


def gl_contract(gl: GenLattice, I: Iterable[int]) -> GenLattice:
    """<{g v i0 : g in G} - {i0} | i0> with i0 the join of I."""
    I = _check_gens(gl, I)
    J = gl.lattice.join
    i0 = gl.lattice.join_all(sorted(I))
    return span(gl.lattice, {J[g][i0] for g in gl.gens} - {i0}, i0)


def gl_restrict(gl: GenLattice, I: Iterable[int]) -> GenLattice:
    I = _check_gens(gl, I)
    return gl_delete(gl, gl.gens - I)


def gens_below(gl: GenLattice, element: int) -> frozenset[int]:
    return frozenset(g for g in gl.gens if gl.lattice.leq(g, element))


def gl_delete_by_element(gl: GenLattice, element: int) -> GenLattice:
    return gl_delete(gl, gens_below(gl, element))


def gl_contract_by_element(gl: GenLattice, element: int) -> GenLattice:
    return gl_contract(gl, gens_below(gl, element))


# labelings G = {g_e : e in E}; a label whose generator has collapsed to the
# bottom is kept and behaves as a loop

Labeling = Mapping[str, int]


def default_labeling(gl: GenLattice, names: Sequence[str] | None = None) -> dict[str, int]:
    gens = gl.sorted_gens()
    names = list(names) if names is not None else [str(i + 1) for i in range(len(gens))]
    if len(names) != len(gens):
        raise GenLatticeError("one name per generator is required")
    return dict(zip(names, gens))


def _label_gens(gl: GenLattice, labeling: Labeling, X: Iterable[str]) -> frozenset[int]:
    out = set()
    for x in X:
        if x not in labeling:
            raise GenLatticeError(f"unknown ground label {x!r}", x)
        if labeling[x] != gl.bottom:
            out.add(labeling[x])
    return frozenset(out)


def _carry_labels(old: GenLattice, new: GenLattice, labeling: Labeling, drop: Iterable[str],
                  shift: int | None = None) -> dict[str, int]:
    drop = set(drop)
    out = {}
    for e, g in labeling.items():
        if e in drop:
            continue
        target = g if shift is None else old.lattice.join[g][shift]
        lab = old.lattice.labels[target]
        nid = new.lattice._index.get(lab)
        out[e] = nid if nid is not None and nid in new.gens else new.bottom
    return out


def gl_delete_by_ground(gl: GenLattice, labeling: Labeling, X: Iterable[str]
                        ) -> tuple[GenLattice, dict[str, int]]:
    """Delete the generators {g_x : x in X} literally.

    If another label shares a deleted generator, that label becomes a loop.
    """
    X = list(X)
    res = gl_delete(gl, _label_gens(gl, labeling, X))
    return res, _carry_labels(gl, res, labeling, X)


def gl_contract_by_ground(gl: GenLattice, labeling: Labeling, X: Iterable[str]
                          ) -> tuple[GenLattice, dict[str, int]]:
    X = list(X)
    I = _label_gens(gl, labeling, X)
    res = gl_contract(gl, I)
    i0 = gl.lattice.join_all(sorted(I))
    return res, _carry_labels(gl, res, labeling, X, shift=i0)


def gl_restrict_by_ground(gl: GenLattice, labeling: Labeling, X: Iterable[str]
                          ) -> tuple[GenLattice, dict[str, int]]:
    X = set(X)
    return gl_delete_by_ground(gl, labeling, [e for e in labeling if e not in X])


@dataclass(frozen=True)
class MinorHandle:
    """The minor <kept | apex> of ``base``; ids refer to ``base.lattice``."""

    base: GenLattice = field(repr=False, compare=False)
    apex: int
    kept: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "kept", frozenset(self.kept))
        l = self.base.lattice
        allowed = {l.join[self.apex][g] for g in self.base.gens} - {self.apex}
        if not self.kept <= allowed:
            bad = sorted(l.labels[k] for k in self.kept - allowed)
            raise GenLatticeError(f"{bad} are not of the form apex v g above the apex", tuple(bad))

    def materialize(self) -> GenLattice:
        return span(self.base.lattice, self.kept, self.apex)

    def key(self) -> tuple[int, tuple[int, ...]]:
        return self.apex, tuple(sorted(self.kept))

    def describe(self) -> str:
        l = self.base.lattice
        inner = ", ".join(l.labels[k] for k in sorted(self.kept))
        return f"<{inner + ' ' if inner else ''}| {l.labels[self.apex]}>"


def handle_of(minor: GenLattice, base: GenLattice) -> MinorHandle:
    """Express a materialized minor as a handle on ``base`` (labels must come from base)."""
    ids = ambient_ids(minor, base)
    return MinorHandle(base, ids[minor.bottom], frozenset(ids[g] for g in minor.gens))


def apply_ops(gl: GenLattice, ops: Sequence[tuple[str, Iterable]], labeling: Labeling | None = None
              ) -> tuple[GenLattice, dict[str, int] | None]:
    """Apply a sequence of ``("delete"|"contract", items)`` steps.

    Without a labeling the items are element labels of current generators;
    with one they are ground labels.
    """
    cur = gl
    lab = dict(labeling) if labeling is not None else None
    for kind, items in ops:
        items = [str(x) for x in items]
        if kind not in ("delete", "contract"):
            raise GenLatticeError(f"unknown operation {kind!r}")
        if lab is not None:
            fn = gl_delete_by_ground if kind == "delete" else gl_contract_by_ground
            cur, lab = fn(cur, lab, items)
        else:
            I = [cur.lattice.index(x) for x in items]
            cur = (gl_delete if kind == "delete" else gl_contract)(cur, I)
    return cur, lab


def minor_normal_form(gl: GenLattice, ops: Sequence[tuple[str, Iterable]],
                      labeling: Labeling | None = None) -> MinorHandle:
    result, _ = apply_ops(gl, ops, labeling)
    return handle_of(result, gl)


def replay_normal_form(h: MinorHandle) -> GenLattice:
    """Contract by the apex, then restrict to the kept generators."""
    base = h.base
    c = gl_contract_by_element(base, h.apex)
    kept_labels = {base.lattice.labels[k] for k in h.kept}
    keep = [g for g in c.gens if c.lattice.labels[g] in kept_labels]
    return gl_restrict(c, keep)


def minor_generators(gl: GenLattice, apex: int) -> list[int]:
    """H_apex = {apex v g : g in G} - {apex}, sorted by id."""
    J = gl.lattice.join
    return sorted({J[apex][g] for g in gl.gens} - {apex})


def enumerate_minors(gl: GenLattice) -> Iterator[MinorHandle]:
    """Every minor exactly once, ordered by apex id then subset mask of H_apex."""
    for apex in range(gl.size):
        H = minor_generators(gl, apex)
        for code in range(1 << len(H)):
            yield MinorHandle(gl, apex, frozenset(H[j] for j in range(len(H)) if code >> j & 1))


def count_minors(gl: GenLattice) -> int:
    return sum(1 << len(minor_generators(gl, a)) for a in range(gl.size))


# ------------------------------------------------------- strong surjection minors

def _retarget(t: StrongSurjection, keep: int, images: list[int], span_gl: GenLattice) -> StrongSurjection:
    ids = ambient_ids(span_gl, t.target)
    pos = {x: i for i, x in enumerate(ids)}
    return StrongSurjection(t.ground.minus(t.ground.full & ~keep), span_gl, tuple(pos[v] for v in images))


def surjection_delete(t: StrongSurjection, X: int) -> StrongSurjection:
    keep = t.ground.full & ~X
    bot = t.target.bottom
    images = [t.assign[i] for i in bits_of(keep)]
    target = span(t.target.lattice, set(images) - {bot}, bot)
    return _retarget(t, keep, images, target)


def surjection_contract(t: StrongSurjection, X: int) -> StrongSurjection:
    keep = t.ground.full & ~X
    base = t.theta(X)
    images = [t.theta(X | 1 << i) for i in bits_of(keep)]
    target = span(t.target.lattice, set(images) - {base}, base)
    return _retarget(t, keep, images, target)


def surjection_minor(t: StrongSurjection, contract_mask: int, delete_mask: int) -> StrongSurjection:
    """(theta / X) \\ Y with both masks in t's ground set."""
    c = surjection_contract(t, contract_mask)
    keep = t.ground.full & ~contract_mask
    return surjection_delete(c, t.ground.project(delete_mask, keep))


# ------------------------------------------------------------ isomorphism

def _invariants(gl: GenLattice) -> list[tuple]:
    l = gl.lattice
    gens_below_count = [sum(1 for g in gl.gens if l.leq(g, x)) for x in range(l.size)]
    return [
        (l.heights[x], l.down[x].bit_count(), l.up[x].bit_count(), x in gl.gens, gens_below_count[x])
        for x in range(l.size)
    ]


def gl_isomorphic(a: GenLattice, b: GenLattice) -> dict[int, int] | None:
    """A strong bijection a -> b as an id map, or None.

    Backtracks over generator images; the map is extended to all joins as
    generators are placed and any clash prunes the branch.
    """
    if a.size != b.size or len(a.gens) != len(b.gens):
        return None
    ia, ib = _invariants(a), _invariants(b)
    if sorted(ia) != sorted(ib):
        return None
    La, Lb = a.lattice, b.lattice
    ga = sorted(a.gens, key=lambda g: (-sum(1 for h in a.gens if La.leq(h, g)), g))
    cand = {g: [h for h in sorted(b.gens) if ib[h] == ia[g]] for g in ga}

    def extend(fwd: dict[int, int], bwd: dict[int, int], g: int, h: int):
        fwd, bwd = dict(fwd), dict(bwd)
        stack = [(g, h)]
        while stack:
            x, y = stack.pop()
            if x in fwd:
                if fwd[x] != y:
                    return None
                continue
            if y in bwd:
                return None
            if ia[x] != ib[y]:
                return None
            fwd[x], bwd[y] = y, x
            for u, v in list(fwd.items()):
                stack.append((La.join[x][u], Lb.join[y][v]))
        return fwd, bwd

    def search(i: int, fwd, bwd):
        if i == len(ga):
            return fwd if len(fwd) == La.size else None
        g = ga[i]
        for h in cand[g]:
            if h in bwd:
                continue
            nxt = extend(fwd, bwd, g, h)
            if nxt is not None:
                found = search(i + 1, *nxt)
                if found is not None:
                    return found
        return None

    result = search(0, {La.bottom: Lb.bottom}, {Lb.bottom: La.bottom})
    if result is None:
        return None
    ok, _ = is_strong_map([result[x] for x in range(La.size)], a, b)
    inv = {v: k for k, v in result.items()}
    ok2, _ = is_strong_map([inv[y] for y in range(Lb.size)], b, a)
    return result if ok and ok2 else None


# ------------------------------------------------------------ realization

def compose_rank(t: StrongSurjection, w: Sequence) -> Polymatroid:
    """The polymatroid X -> w(theta(X)) after validating ``w`` on the target lattice."""
    w = tuple(Fraction(v) for v in w)
    problems = check_weighting(t.target.lattice, w)
    if problems:
        raise GenLatticeError("weighting rejected: " + "; ".join(problems[:5]), problems[0])
    return Polymatroid(t.ground, tuple(w[v] for v in t.theta_table()))


def realize(gl: GenLattice) -> Polymatroid:
    """Integer polymatroid on ground set G whose flats genlattice is isomorphic to ``gl``."""
    _, integer = submodular_weighting(gl.lattice)
    return compose_rank(identity_surjection(gl), integer)
