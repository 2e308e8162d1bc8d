"""Text formats for polymatroids (.pm), graphs (.g), posets (.pos) and genlattices (.gl).

All formats are line oriented; ``#`` starts a comment and blank lines are
ignored. Printing produces the canonical form, and parse(print(x)) == x.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .foundations import GroundSet, name_key, format_rational
from .genlattice import GenLattice, GenLatticeError, genlattice_new
from .graphs import LabeledGraph
from .lattice import NotALatticeError, lattice_from_covers
from .polymatroid import Polymatroid
from .posets import Poset


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + msg)
        self.line = line
        self.column = column


def _lines(text: str) -> Iterator[tuple[int, str]]:
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _header(line: str, no: int, key: str) -> list[str]:
    head, sep, rest = line.partition(":")
    if not sep or head.strip() != key:
        raise ParseError(f"expected '{key}: ...'", no, 1)
    items = rest.split()
    if len(set(items)) != len(items):
        raise ParseError(f"duplicate names in '{key}'", no, len(head) + 2)
    return items


def _first(text: str, what: str) -> tuple[Iterator[tuple[int, str]], int, str]:
    it = _lines(text)
    try:
        no, line = next(it)
    except StopIteration:
        raise ParseError(f"empty {what} file") from None
    return it, no, line


# ---------------------------------------------------------------- .pm

def parse_polymatroid(text: str) -> Polymatroid:
    it, no, line = _first(text, "polymatroid")
    ground = GroundSet(tuple(_header(line, no, "elements")))
    table: dict[int, Fraction] = {}
    for no, line in it:
        if not line.startswith("rank"):
            raise ParseError("expected 'rank {...} = value'", no, 1)
        lb, rb = line.find("{"), line.find("}")
        if lb < 0 or rb < lb:
            raise ParseError("subset must be written in braces", no, 6)
        inner = line[lb + 1:rb].strip()
        names = [x.strip() for x in inner.split(",")] if inner else []
        try:
            mask = ground.mask(names)
        except KeyError as e:
            raise ParseError(str(e.args[0]), no, lb + 2) from None
        if len(set(names)) != len(names):
            raise ParseError(f"repeated element in {{{inner}}}", no, lb + 2)
        rest = line[rb + 1:].strip()
        if not rest.startswith("="):
            raise ParseError("expected '=' after the subset", no, rb + 2)
        value = rest[1:].strip()
        try:
            v = Fraction(value)
            if "." in value or "e" in value.lower():
                raise ValueError
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not an exact rational: {value!r}", no, line.index("=") + 2) from None
        if mask in table:
            raise ParseError(f"duplicate entry for {ground.format(mask)}", no, lb + 1)
        table[mask] = v
    missing = [ground.format(m) for m in range(1 << len(ground)) if m not in table]
    if missing:
        raise ParseError(f"missing rank for subset {missing[0]}"
                         + (f" (and {len(missing) - 1} more)" if len(missing) > 1 else ""))
    return Polymatroid(ground, tuple(table[m] for m in range(1 << len(ground))))


def print_polymatroid(p: Polymatroid) -> str:
    out = ["elements: " + " ".join(p.ground.labels)]
    for m, r in enumerate(p.rank):
        out.append(f"rank {p.ground.format(m)} = {format_rational(r)}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- .g

def parse_graph(text: str) -> LabeledGraph:
    it, no, line = _first(text, "graph")
    tokens = _header(line, no, "vertices")
    blocks = [frozenset(t.split(",")) for t in tokens]
    idx = {t: i for i, t in enumerate(tokens)}
    edges = []
    for no, line in it:
        parts = line.split()
        if parts[0] != "edge" or len(parts) != 3:
            raise ParseError("expected 'edge u v'", no, 1)
        try:
            edges.append((idx[parts[1]], idx[parts[2]]))
        except KeyError as e:
            raise ParseError(f"unknown vertex {e.args[0]!r}", no, line.find(e.args[0]) + 1) from None
    try:
        return LabeledGraph(tuple(blocks), tuple(edges))
    except ValueError as e:
        raise ParseError(str(e), 1) from None


def _vertex_token(block) -> str:
    return ",".join(sorted(block, key=name_key))


def print_graph(g: LabeledGraph) -> str:
    toks = [_vertex_token(b) for b in g.vertices]
    out = ["vertices: " + " ".join(toks)]
    out += [f"edge {toks[u]} {toks[v]}" for u, v in g.edges]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- .pos

def parse_poset(text: str) -> Poset:
    it, no, line = _first(text, "poset")
    labels = _header(line, no, "elements")
    rel = []
    for no, line in it:
        rel.append(_cover_line(line, no, set(labels)))
    try:
        return Poset.from_relations(labels, rel)
    except ValueError as e:
        raise ParseError(str(e)) from None


def _cover_line(line: str, no: int, known: set) -> tuple[str, str]:
    parts = line.split()
    if len(parts) != 4 or parts[0] != "cover" or parts[2] != "<":
        raise ParseError("expected 'cover a < b'", no, 1)
    for tok in (parts[1], parts[3]):
        if tok not in known:
            raise ParseError(f"unknown element {tok!r}", no, line.find(tok) + 1)
    return parts[1], parts[3]


def print_poset(p: Poset) -> str:
    out = ["elements: " + " ".join(p.labels)]
    out += [f"cover {p.labels[a]} < {p.labels[b]}" for a, b in p.covers]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- .gl

def parse_genlattice(text: str) -> GenLattice:
    it, no, line = _first(text, "genlattice")
    labels = _header(line, no, "elements")
    covers = []
    gens = None
    for no, line in it:
        if line.startswith("generators"):
            if gens is not None:
                raise ParseError("generators listed twice", no, 1)
            gens = _header(line, no, "generators")
            bad = [g for g in gens if g not in labels]
            if bad:
                raise ParseError(f"unknown generator {bad[0]!r}", no, line.find(bad[0]) + 1)
        else:
            covers.append(_cover_line(line, no, set(labels)))
    if gens is None:
        raise ParseError("missing 'generators:' line")
    try:
        lat = lattice_from_covers(labels, covers)
        return genlattice_new(lat, gens)
    except (NotALatticeError, GenLatticeError) as e:
        raise ParseError(str(e)) from None


def print_genlattice(gl: GenLattice) -> str:
    l = gl.lattice
    for lab in l.labels:
        if not lab or any(c.isspace() or c == "#" for c in lab):
            raise ValueError(f"label {lab!r} cannot be written in .gl format")
    out = ["elements: " + " ".join(l.labels)]
    out += [f"cover {l.labels[a]} < {l.labels[b]}" for a, b in sorted(l.cover_pairs())]
    out.append(" ".join(["generators:", *gl.gen_labels()]))
    return "\n".join(out) + "\n"


PARSERS = {
    ".pm": parse_polymatroid,
    ".g": parse_graph,
    ".pos": parse_poset,
    ".gl": parse_genlattice,
}


def load(path: str):
    """Parse a file, choosing the format by extension."""
    for ext, fn in PARSERS.items():
        if path.endswith(ext):
            with open(path, encoding="utf-8") as fh:
                return fn(fh.read())
    raise ValueError(f"unknown file extension for {path!r}; expected one of {sorted(PARSERS)}")


def dump(obj) -> str:
    if isinstance(obj, Polymatroid):
        return print_polymatroid(obj)
    if isinstance(obj, LabeledGraph):
        return print_graph(obj)
    if isinstance(obj, Poset):
        return print_poset(obj)
    if isinstance(obj, GenLattice):
        return print_genlattice(obj)
    raise TypeError(f"no text format for {type(obj).__name__}")
