"""Order minors of a poset versus minors of its lattice of order ideals.

An order minor is a pair (I, J) of disjoint sets with J a down-set. Each one
maps to the minor of the ideal lattice obtained by deleting everything
outside I and J and contracting J, and the map is a bijection.
"""

from polylat.posets import Poset, count_order_minors, enumerate_order_minors, verify_order_minor_bijection
from polylat.posets import order_minor_to_lattice_minor

vee = Poset.from_relations("abc", [("a", "c"), ("b", "c")])
print("poset: a < c, b < c;", count_order_minors(vee), "order minors")
for om in list(enumerate_order_minors(vee))[:5]:
    print(" ", om.describe(vee), "->", order_minor_to_lattice_minor(vee, om).describe())
print("  ...")
print(verify_order_minor_bijection(vee).line())
