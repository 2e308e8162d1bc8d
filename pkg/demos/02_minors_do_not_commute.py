"""Deletion and contraction in a generator-enriched lattice do not commute.

On the diamond M3 with generators g1, g2, g3: deleting g1 and then
contracting g2 leaves the two-element lattice g2 < 1. Contracting g2 first
sends g1 to the top, so deleting it leaves a single point.
"""

from polylat import diamond, minimally_generated
from polylat.genlattice import apply_ops, default_labeling, handle_of

gl = minimally_generated(diamond())
print("M3:", gl)

a, _ = apply_ops(gl, [("delete", ["g1"]), ("contract", ["g2"])])
print("delete g1, then contract g2:", a, " as a handle:", handle_of(a, gl).describe())

# Using ground labels 1, 2, 3 so "1" keeps meaning g1 after contraction.
lab = default_labeling(gl)
b, lab_b = apply_ops(gl, [("contract", ["2"]), ("delete", ["1"])], lab)
print("contract 2, then delete 1:  ", b, " remaining labels:", lab_b)
