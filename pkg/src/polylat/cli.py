"""Command line entry point: ``polylat <subcommand> ...``.

Exit status is 0 on success, 1 when an input fails validation or a check
fails, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import formats
from .foundations import format_rational
from .genlattice import (
    GenLattice,
    GenLatticeError,
    apply_ops,
    count_minors,
    default_labeling,
    diagram_dot,
    enumerate_minors,
    flats_genlattice,
    handle_of,
    minimally_generated,
    realize,
)
from .graphs import LabeledGraph, cycle_matroid, graph_flats, verify_graph_minor_bijection
from .lattice import NotALatticeError
from .polymatroid import Polymatroid, PolymatroidError, closure, closure_table, minor, validate
from .posets import Poset, ideal_lattice, verify_order_minor_bijection
from .report import summary
from .verify import (
    SUITES,
    RandomSpec,
    random_instance,
    run_suite,
    verify_closure_theorem,
    verify_geometric_minors,
    verify_genlattice_minors,
    verify_minor_closure,
    verify_parallel_pairs_bijection,
)


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("POLYLAT_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"POLYLAT_SEED must be an integer, got {raw!r}") from None


def _load(path: str):
    if not os.path.exists(path):
        raise UsageError(f"no such file: {path}")
    try:
        return formats.load(path)
    except ValueError as e:
        if isinstance(e, formats.ParseError):
            raise
        raise UsageError(str(e)) from None


def _as_genlattice(obj) -> GenLattice:
    if isinstance(obj, GenLattice):
        return obj
    if isinstance(obj, Polymatroid):
        return flats_genlattice(obj)[0]
    if isinstance(obj, LabeledGraph):
        return graph_flats(obj)
    if isinstance(obj, Poset):
        return ideal_lattice(obj)
    raise UsageError(f"cannot build a genlattice from {type(obj).__name__}")


def _split(items: str) -> list[str]:
    return [x for x in items.replace(",", " ").split() if x]


class _OrderedOp(argparse.Action):
    def __call__(self, parser, ns, values, option_string=None):
        ops = list(getattr(ns, "ops", None) or [])
        ops.append((self.dest, _split(values)))
        ns.ops = ops


# ------------------------------------------------------------ subcommands

def cmd_validate(args, out) -> int:
    obj = _load(args.file)
    if isinstance(obj, Polymatroid):
        bad = validate(obj, limit=None)
        if bad:
            for v in bad:
                print(v.describe(obj.ground), file=out)
            return 1
    print("ok", file=out)
    return 0


def cmd_closure(args, out) -> int:
    p = _load(args.file)
    if not isinstance(p, Polymatroid):
        raise UsageError("closure expects a .pm file")
    if args.subset is not None:
        mask = p.ground.mask(_split(args.subset))
        print(p.ground.format(closure(p, mask)), file=out)
        return 0
    ct = closure_table(p)
    for m, c in enumerate(ct.cl):
        print(f"{p.ground.format(m)} -> {p.ground.format(c)}", file=out)
    return 0


def cmd_flats(args, out) -> int:
    obj = _load(args.file)
    gl = _as_genlattice(obj)
    l = gl.lattice
    for x in range(l.size):
        mark = " *" if x in gl.gens else ""
        extra = ""
        if isinstance(obj, Polymatroid):
            extra = f" rank={format_rational(obj.rank[l.data[x]])}"
        print(f"{l.labels[x]}{extra}{mark}", file=out)
    print(f"{l.size} flats, {len(gl.gens)} generators (marked *)", file=out)
    return 0


def cmd_diagram(args, out) -> int:
    obj = _load(args.file)
    if args.graph:
        if not isinstance(obj, LabeledGraph):
            raise UsageError("--graph needs a .g file")
        out.write(obj.to_dot())
        return 0
    gl = _as_genlattice(obj)
    out.write(gl.lattice.to_dot() if args.hasse else diagram_dot(gl))
    return 0


def cmd_minor(args, out) -> int:
    obj = _load(args.file)
    ops = getattr(args, "ops", None) or []
    if isinstance(obj, Polymatroid):
        C = D = 0
        for kind, items in ops:
            m = obj.ground.mask(items)
            if kind == "contract":
                C |= m
            else:
                D |= m
        out.write(formats.print_polymatroid(minor(obj, C, D)))
        return 0
    gl = _as_genlattice(obj)
    labeling = default_labeling(gl) if args.by_ground else None
    result, _ = apply_ops(gl, [(k, v) for k, v in ops], labeling)
    h = handle_of(result, gl)
    print(f"# minor {h.describe()}", file=out)
    out.write(formats.print_genlattice(result))
    return 0


def cmd_enumerate_minors(args, out) -> int:
    gl = _as_genlattice(_load(args.file))
    n = 0
    for h in enumerate_minors(gl):
        n += 1
        if not args.count_only:
            print(h.describe(), file=out)
    assert n == count_minors(gl)
    print(f"count={n}", file=out)
    return 0


def cmd_realize(args, out) -> int:
    gl = _as_genlattice(_load(args.file))
    out.write(formats.print_polymatroid(realize(gl)))
    return 0


def _file_report(theorem: str, obj, path: str):
    if theorem == "graph-minors":
        if not isinstance(obj, LabeledGraph):
            raise UsageError("graph-minors expects a .g file")
        return verify_graph_minor_bijection(obj)
    if theorem == "order-minors":
        if not isinstance(obj, Poset):
            raise UsageError("order-minors expects a .pos file")
        return verify_order_minor_bijection(obj)
    if theorem == "geometric-minors":
        return verify_geometric_minors(_as_genlattice(obj), path)
    if isinstance(obj, LabeledGraph):
        obj = cycle_matroid(obj)
    if not isinstance(obj, Polymatroid):
        raise UsageError(f"{theorem} expects a .pm or .g file")
    fn = {
        "closure-theorem": verify_closure_theorem,
        "parallel-pairs": verify_parallel_pairs_bijection,
        "minor-closure": verify_minor_closure,
        "genlattice-minors": verify_genlattice_minors,
    }.get(theorem)
    if fn is None:
        raise UsageError(f"{theorem} has no single-file mode")
    return fn(obj)


def cmd_verify(args, out) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.file:
        rep = _file_report(args.theorem, _load(args.file), args.file)
        rep.instance = args.file
        print(rep.line(), file=out)
        print(f"{rep.lhs} = {rep.rhs} {rep.status}" if rep.lhs == rep.rhs
              else f"{rep.lhs} != {rep.rhs} {rep.status}", file=out)
        return 0 if rep.passed else 1
    reports = run_suite(args.theorem, seed, args.count, args.jobs)
    for r in reports:
        print(r.line(), file=out)
    print(summary(reports), file=out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_random(args, out) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    inst = random_instance(RandomSpec(seed, args.kind, args.max_n, args.max_elements))
    if args.kind == "lattice":
        inst = minimally_generated(inst)
    out.write(formats.dump(inst))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polylat", description="Polymatroids and generator-enriched lattices.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a file (polymatroid axioms for .pm)")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("closure", help="closure of a subset, or the full closure table")
    p.add_argument("file")
    p.add_argument("subset", nargs="?", help="comma separated elements, e.g. 1,2")
    p.set_defaults(fn=cmd_closure)

    p = sub.add_parser("flats", help="elements of the flats genlattice, generators marked")
    p.add_argument("file")
    p.set_defaults(fn=cmd_flats)

    p = sub.add_parser("diagram", help="DOT export")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--hasse", action="store_true", help="Hasse diagram instead of generator diagram")
    g.add_argument("--graph", action="store_true", help="draw the graph itself (.g only)")
    p.set_defaults(fn=cmd_diagram)

    p = sub.add_parser("minor", help="apply deletions and contractions in the order given")
    p.add_argument("file")
    p.add_argument("--delete", action=_OrderedOp, metavar="ITEMS")
    p.add_argument("--contract", action=_OrderedOp, metavar="ITEMS")
    p.add_argument("--by-ground", action="store_true",
                   help="items name generators 1..k in id order instead of element labels")
    p.set_defaults(fn=cmd_minor)

    p = sub.add_parser("enumerate-minors", help="list every minor <kept | apex>")
    p.add_argument("file")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(fn=cmd_enumerate_minors)

    p = sub.add_parser("realize", help="integer polymatroid realizing a genlattice")
    p.add_argument("file")
    p.set_defaults(fn=cmd_realize)

    p = sub.add_parser("verify", help="run a theorem check on a file or a seeded random suite")
    p.add_argument("theorem", choices=sorted(SUITES))
    p.add_argument("file", nargs="?")
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("random", help="print a seeded random instance")
    p.add_argument("kind", choices=["polymatroid", "lattice", "genlattice", "poset", "graph"])
    p.add_argument("--seed", type=int)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--max-elements", type=int, default=16)
    p.set_defaults(fn=cmd_random)
    return ap


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args, out)
    except UsageError as e:
        print(f"polylat: {e}", file=err)
        return 2
    except formats.ParseError as e:
        print(f"polylat: parse error: {e}", file=err)
        return 1
    except KeyError as e:
        print(f"polylat: {e.args[0] if e.args else e}", file=err)
        return 1
    except (PolymatroidError, NotALatticeError, GenLatticeError, ValueError) as e:
        print(f"polylat: {e}", file=err)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
