"""Every generator-enriched lattice is the lattice of flats of an integer polymatroid.

Weight each element by 1 - 2^-k, where k is the longest chain below it,
scale to integers, and compose with the identity surjection on the
generators. The flats of the result give back the lattice we started from.
"""

from polylat import flats_genlattice, gl_isomorphic, minimally_generated, partition_lattice, realize
from polylat.formats import print_polymatroid

gl = minimally_generated(partition_lattice(3))
p = realize(gl)
print(print_polymatroid(p), end="")
back, _ = flats_genlattice(p)
print("flats lattice isomorphic to the partition lattice:", gl_isomorphic(back, gl) is not None)
