"""Vertex-labeled graphs, cycle matroids and the lattice of flats L(G).

Vertices are labeled by blocks of original vertex names; contracting an
edge merges the blocks of its endpoints. Edges are unlabeled.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

from .foundations import GroundSet, Partition, bits_of, format_block
from .genlattice import (
    GenLattice,
    MinorHandle,
    enumerate_minors,
    flats_genlattice,
)
from .lattice import FinLattice
from .polymatroid import Polymatroid
from .report import VerificationReport


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


@dataclass(frozen=True)
class LabeledGraph:
    """Vertex blocks plus a multiset of edges given as vertex-index pairs."""

    vertices: tuple[frozenset, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        vs = tuple(frozenset(str(x) for x in b) for b in self.vertices)
        seen: set = set()
        for b in vs:
            if not b or seen & b:
                raise ValueError("vertex blocks must be nonempty and disjoint")
            seen |= b
        es = tuple(tuple(sorted((int(u), int(v)))) for u, v in self.edges)
        for u, v in es:
            if not (0 <= u < len(vs) and 0 <= v < len(vs)):
                raise ValueError(f"edge ({u},{v}) has an endpoint outside the vertex list")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)

    @classmethod
    def from_edges(cls, names: Sequence, edges: Iterable[tuple]) -> "LabeledGraph":
        names = [str(x) for x in names]
        idx = {x: i for i, x in enumerate(names)}
        try:
            es = tuple((idx[str(u)], idx[str(v)]) for u, v in edges)
        except KeyError as e:
            raise ValueError(f"unknown vertex {e.args[0]!r}") from None
        return cls(tuple(frozenset([x]) for x in names), es)

    @property
    def names(self) -> frozenset:
        return frozenset().union(*self.vertices) if self.vertices else frozenset()

    def vertex_label(self, i: int) -> str:
        return format_block(self.vertices[i])

    def edge_label(self, k: int) -> str:
        u, v = self.edges[k]
        return f"{self.vertex_label(u)}-{self.vertex_label(v)}"

    def partition(self) -> Partition:
        return Partition(self.vertices)

    def is_simple(self) -> bool:
        return all(u != v for u, v in self.edges) and len(set(self.edges)) == len(self.edges)

    def canonical(self) -> tuple[Partition, frozenset]:
        """(vertex partition, set of inter-block adjacencies); loops are dropped."""
        adj = frozenset(
            frozenset((self.vertices[u], self.vertices[v])) for u, v in self.edges if u != v
        )
        return self.partition(), adj

    def to_dot(self, name: str = "graph") -> str:
        lines = [f"graph {name} {{"]
        for i in range(len(self.vertices)):
            lines.append(f'  v{i} [label="{self.vertex_label(i)}"];')
        for u, v in self.edges:
            lines.append(f"  v{u} -- v{v};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        vs = " ".join(self.vertex_label(i) for i in range(len(self.vertices)))
        es = " ".join(self.edge_label(k) for k in range(len(self.edges)))
        return f"LabeledGraph(vertices=[{vs}], edges=[{es}])"


def _mask_of(edges: Iterable[int] | int) -> int:
    if isinstance(edges, int):
        return edges
    m = 0
    for k in edges:
        m |= 1 << k
    return m


def graphic_rank(g: LabeledGraph, A: Iterable[int] | int) -> int:
    """|V| minus the number of components of (V, A)."""
    d = _DSU(len(g.vertices))
    r = 0
    for k in bits_of(_mask_of(A)):
        u, v = g.edges[k]
        if d.union(u, v):
            r += 1
    return r


def edge_ground(g: LabeledGraph) -> GroundSet:
    labels = []
    seen: dict[str, int] = {}
    for k in range(len(g.edges)):
        lab = g.edge_label(k)
        seen[lab] = seen.get(lab, 0) + 1
        labels.append(lab if seen[lab] == 1 else f"{lab}#{seen[lab]}")
    return GroundSet(tuple(labels))


def cycle_matroid(g: LabeledGraph) -> Polymatroid:
    ground = edge_ground(g)
    return Polymatroid.from_function(ground, lambda m: graphic_rank(g, m))


def component_partition(g: LabeledGraph, A: Iterable[int] | int) -> Partition:
    """Partition of the original names into components of (V, A)."""
    d = _DSU(len(g.vertices))
    for k in bits_of(_mask_of(A)):
        d.union(*g.edges[k])
    groups: dict[int, set] = {}
    for i, b in enumerate(g.vertices):
        groups.setdefault(d.find(i), set()).update(b)
    return Partition(groups.values())


def simplify_graph(g: LabeledGraph) -> LabeledGraph:
    """Drop self-loops and collapse parallel edges, keeping first occurrences."""
    seen = set()
    es = []
    for u, v in g.edges:
        if u != v and (u, v) not in seen:
            seen.add((u, v))
            es.append((u, v))
    return LabeledGraph(g.vertices, tuple(es))


def graph_minor(g: LabeledGraph, contract_edges: Iterable[int], delete_edges: Iterable[int]
                ) -> LabeledGraph:
    """Contract then delete edge sets (given as edge indices); not simplified."""
    C, D = _mask_of(contract_edges), _mask_of(delete_edges)
    if C & D:
        raise ValueError("contracted and deleted edges overlap")
    d = _DSU(len(g.vertices))
    for k in bits_of(C):
        d.union(*g.edges[k])
    roots = sorted({d.find(i) for i in range(len(g.vertices))})
    pos = {r: j for j, r in enumerate(roots)}
    blocks: list[set] = [set() for _ in roots]
    for i, b in enumerate(g.vertices):
        blocks[pos[d.find(i)]] |= b
    es = tuple(
        (pos[d.find(u)], pos[d.find(v)])
        for k, (u, v) in enumerate(g.edges)
        if not (C | D) >> k & 1
    )
    return LabeledGraph(tuple(frozenset(b) for b in blocks), es)


def graph_flats(g: LabeledGraph) -> GenLattice:
    """L(G): the flats genlattice of the cycle matroid, elements labeled by partitions."""
    s = simplify_graph(g)
    gl, _ = flats_genlattice(cycle_matroid(s))
    parts = tuple(component_partition(s, m) for m in gl.lattice.data)
    lat = FinLattice(tuple(str(p) for p in parts), gl.lattice.join, parts)
    return GenLattice(lat, gl.gens)


def _canonical_sort_key(key: tuple[Partition, frozenset]):
    part, adj = key
    edges = sorted(
        "-".join(sorted(format_block(b) for b in e)) for e in adj
    )
    return (str(part), edges)


def enumerate_simple_labeled_minors(g: LabeledGraph) -> Iterator[LabeledGraph]:
    """Every distinct simple vertex-labeled minor, by brute force over
    keep/contract/delete choices for each edge of the simplified graph."""
    s = simplify_graph(g)
    m = len(s.edges)
    found: dict = {}
    for choice in product((0, 1, 2), repeat=m):
        C = sum(1 << k for k, c in enumerate(choice) if c == 1)
        D = sum(1 << k for k, c in enumerate(choice) if c == 2)
        h = simplify_graph(graph_minor(s, C, D))
        found.setdefault(h.canonical(), h)
    for key in sorted(found, key=_canonical_sort_key):
        yield found[key]


def count_simple_labeled_minors(g: LabeledGraph) -> int:
    return sum(1 for _ in enumerate_simple_labeled_minors(g))


def handle_of_graph_minor(L: GenLattice, h: LabeledGraph) -> MinorHandle:
    """The minor of L(G) that L(h) denotes: apex = vertex partition, kept = atoms of L(h)."""
    LH = graph_flats(h)
    apex = L.lattice.find(LH.lattice.data[LH.bottom])
    kept = frozenset(L.lattice.find(LH.lattice.data[a]) for a in LH.gens)
    return MinorHandle(L, apex, kept)


def graph_of_minor(g: LabeledGraph, L: GenLattice, handle: MinorHandle) -> LabeledGraph:
    """Inverse direction: contract the edges inside the apex partition, keep edges
    whose merge is a kept atom, simplify."""
    s = simplify_graph(g)
    apex = L.lattice.data[handle.apex]
    kept = {L.lattice.data[k] for k in handle.kept}
    C = 0
    for k, (u, v) in enumerate(s.edges):
        if apex.block_of(next(iter(s.vertices[u]))) == apex.block_of(next(iter(s.vertices[v]))):
            C |= 1 << k
    h1 = graph_minor(s, C, 0)
    keep_edges = []
    for u, v in h1.edges:
        if u == v:
            continue
        merged = Partition([b for i, b in enumerate(h1.vertices) if i not in (u, v)]
                           + [h1.vertices[u] | h1.vertices[v]])
        if merged in kept:
            keep_edges.append((u, v))
    return simplify_graph(LabeledGraph(h1.vertices, tuple(keep_edges)))


def verify_graph_minor_bijection(g: LabeledGraph, seed: int | None = None) -> VerificationReport:
    """Match simple labeled minors of g with minors of L(g) via H -> L(H)."""
    t0 = time.perf_counter()
    L = graph_flats(g)
    handles = list(enumerate_minors(L))
    graphs = list(enumerate_simple_labeled_minors(g))
    witness = None
    image: dict = {}
    for h in graphs:
        try:
            hd = handle_of_graph_minor(L, h)
        except (KeyError, ValueError) as e:
            witness = f"L(H) is not a minor of L(G) for {h!r}: {e}"
            break
        if hd.key() in image:
            witness = f"two graph minors share the lattice minor {hd.describe()}"
            break
        image[hd.key()] = h
        LH, M = graph_flats(h), hd.materialize()
        if set(LH.lattice.data) != set(M.lattice.data) or \
                {LH.lattice.data[x] for x in LH.gens} != {M.lattice.data[x] for x in M.gens}:
            witness = f"L(H) differs from the span of its handle for {h!r}"
            break
        back = graph_of_minor(g, L, hd)
        if back.canonical() != h.canonical():
            witness = f"inverse construction does not return {h!r}"
            break
    if witness is None:
        missing = [hd for hd in handles if hd.key() not in image]
        if missing:
            witness = f"lattice minor {missing[0].describe()} has no graph preimage"
    ms = (time.perf_counter() - t0) * 1000
    passed = witness is None and len(graphs) == len(handles)
    return VerificationReport("graph-minors", repr(g), len(graphs), len(handles), passed, witness, ms, seed)


# small catalogue

def complete_graph(n: int) -> LabeledGraph:
    names = [str(i) for i in range(1, n + 1)]
    return LabeledGraph.from_edges(names, [(a, b) for i, a in enumerate(names) for b in names[i + 1:]])


def triangle_with_pendant() -> LabeledGraph:
    """Triangle 1-2-3 with a pendant edge 3-4."""
    return LabeledGraph.from_edges("1234", [("1", "2"), ("1", "3"), ("2", "3"), ("3", "4")])
