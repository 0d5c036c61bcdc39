"""
Random set families and the translate lemma
===========================================

Large subsets of a common universe cannot all be nearly disjoint.  The
seeded generator makes every family reproducible from ``(seed, index)``.
"""

from fractions import Fraction

from groupbounds import catalog, lemmas
from groupbounds.automorphisms import automorphism_group
from groupbounds.bounds import rho_constants

rho = Fraction(1, 3)
c = rho_constants(rho)
print(f"rho = {rho}: k = {c.k}, t = {c.t}")

family = lemmas.random_family(universe_size=30, rho=rho, count=8, seed=(1, 0))
for s in family.sets:
    print(sorted(s))

i, j = lemmas.intersection_pair(family, range(c.k))
print("pair", (i, j), "shares", len(family.sets[i] & family.sets[j]), "points")
pop = lemmas.popular_index(family)
print("set", pop.index, "meets", pop.count, "others (guaranteed:", pop.half_bound, ")")

# a greedy subfamily with no dense pair has to stay shorter than k
J = lemmas.greedy_sparse_subfamily(family)
print("sparse subfamily", J, "union growth", lemmas.union_growth_check(family, J))

summary = lemmas.intersection_suite(200, seed=5)
print(summary)

# translates sS of the inverted set and the centralizers they force
for spec in ["dicyclic:2", "symmetric:4"]:
    print(lemmas.translate_lemma_scan(automorphism_group(catalog.construct(spec))))
