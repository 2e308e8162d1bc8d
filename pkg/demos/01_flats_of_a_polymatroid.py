"""Two small polymatroids and their lattices of flats.

The first table has five flats; the second collapses {3} into the top
because adding 3 to anything never raises the rank past 2.
"""

from fractions import Fraction

from polylat import GroundSet, Polymatroid, closure_table, flats_genlattice, same_closure, validate

E = GroundSet.range(3)


def show(name, values):
    p = Polymatroid(E, tuple(Fraction(v) for v in values))
    assert validate(p) == []
    gl, _ = flats_genlattice(p)
    print(f"{name}: flats {', '.join(gl.lattice.labels)}")
    print(f"{' ' * len(name)}  generators {', '.join(gl.gen_labels())}")


# ranks listed in mask order: {}, {1}, {2}, {1,2}, {3}, {1,3}, {2,3}, {1,2,3}
show("a", [0, 1, 2, 2, 2, 3, 3, 3])
show("c", [0, 1, 1, 2, 2, 2, 2, 2])

# Different rank functions can share a closure operator.
two = GroundSet.range(2)
p = Polymatroid(two, (Fraction(0), Fraction(1), Fraction(1), Fraction(3, 2)))
q = Polymatroid(two, (Fraction(0), Fraction(1), Fraction(1), Fraction(2)))
print("r({1,2}) = 3/2 and r({1,2}) = 2 give the same closure:", same_closure(p, q))
print("closure table:", [two.format(c) for c in closure_table(p).cl])
