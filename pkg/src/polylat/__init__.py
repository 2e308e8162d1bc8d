"""Exact polymatroids, lattices of flats and generator-enriched lattices."""

from .foundations import GroundSet, Partition, as_rational, format_rational
from .genlattice import (
    GenLattice,
    GenLatticeError,
    MinorHandle,
    StrongSurjection,
    closure_of_surjection,
    count_minors,
    diagram_dot,
    enumerate_minors,
    flats_genlattice,
    genlattice_new,
    gl_contract,
    gl_delete,
    gl_isomorphic,
    gl_restrict,
    minimally_generated,
    realize,
    span,
)
from .graphs import LabeledGraph, cycle_matroid, graph_flats
from .lattice import (
    FinLattice,
    NotALatticeError,
    boolean_lattice,
    diamond,
    join_irreducibles,
    lattice_from_closed_sets,
    lattice_from_covers,
    lattice_from_join_table,
    partition_lattice,
    pentagon,
    submodular_weighting,
)
from .polymatroid import (
    ClosureTable,
    Polymatroid,
    PolymatroidError,
    closure,
    closure_table,
    contract,
    delete,
    flats,
    minor,
    same_closure,
    validate,
)
from .posets import OrderMinor, Poset, ideal_lattice
from .report import VerificationReport

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
