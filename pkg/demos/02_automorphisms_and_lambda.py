"""
How much of a group can one automorphism invert?
================================================

For an exponent ``e``, lambda_e is the largest fraction of elements that a
single automorphism sends to their e-th power.  Abelian groups reach 1 for
inversion; the quaternion group gets to 3/4.
"""

from groupbounds import automorphisms, catalog

for spec in ["cyclic:8", "symmetric:3", "dicyclic:2", "dihedral:4", "heisenberg:3"]:
    G = catalog.construct(spec)
    aut = automorphisms.automorphism_group(G)
    row = [f"{spec:<14} |Aut| = {len(aut):<4}"]
    for e in (-1, 2, 3):
        row.append(f"lambda_{e} = {automorphisms.lambda_from(aut, e).value}")
    print("  ".join(row))

# the automorphism of Q8 that achieves 3/4
Q8 = catalog.construct("dicyclic:2")
best = automorphisms.lambda_e(Q8, -1)
print("witness images:", best.witness.images)
print("inverted elements:", best.agreement_set.sorted())

# fixed points always form a subgroup
print("fixed points:", automorphisms.fixed_points(Q8, best.witness).sorted())
