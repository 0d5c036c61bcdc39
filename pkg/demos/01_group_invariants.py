"""
Invariants of a small group
===========================

Build the quaternion group from the catalog and read off the numbers the
bounds are stated in: classes, commuting probability, center, and the
Fitting subgroup and solvable radical with their derived lengths.
"""

from groupbounds import catalog, core, structure

Q8 = catalog.construct("dicyclic:2")
print(Q8.name, "has order", Q8.order)

# element orders, indexed by label (0 is always the identity)
print("element orders:", Q8.element_orders().tolist())

classes = core.conjugacy_classes(Q8)
print("classes:", [c.sorted() for c in classes])
print("commuting probability:", core.commuting_probability(Q8))

# the normal subgroups, smallest first
lattice = structure.normal_subgroups(Q8)
print("normal subgroup sizes:", lattice.sizes())

fit = structure.fitting_subgroup(Q8, lattice)
rad = structure.solvable_radical(Q8, lattice)
print("|Fit| =", len(fit), " |Rad| =", len(rad))
print("dl(Rad) =", structure.derived_series((Q8, rad)).length)

# S4 is solvable but not nilpotent, so the two subgroups differ
S4 = catalog.construct("symmetric:4")
print("S4: |Fit| =", len(structure.fitting_subgroup(S4)), " dl =", structure.derived_length(S4))
