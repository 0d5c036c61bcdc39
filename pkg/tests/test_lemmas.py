import itertools
from fractions import Fraction

import numpy as np
import pytest

import oracles
from conftest import group
from groupbounds.automorphisms import automorphism_group, lambda_e, power_agreement_set
from groupbounds.bounds import rho_constants
from groupbounds.catalog import default_scan_set
from groupbounds.core import Morphism, conjugation_map
from groupbounds.errors import CounterexampleFound, HypothesisViolated, InvalidParameters
from groupbounds.lemmas import (
    IntersectionSummary,
    SetFamily,
    check_family,
    greedy_sparse_subfamily,
    intersection_pair,
    intersection_suite,
    inversion_construction,
    popular_index,
    random_family,
    translate_lemma_check,
    translate_lemma_scan,
    union_growth_check,
)

K = 5  # Q8 label for k


def test_family_validation():
    with pytest.raises(HypothesisViolated):
        SetFamily(10, [range(5), range(4)], Fraction(1, 2))
    with pytest.raises(HypothesisViolated):
        SetFamily(4, [[0, 1, 4]], Fraction(1, 2))
    with pytest.raises(HypothesisViolated):
        SetFamily(4, [], Fraction(1, 2))


def test_intersection_pair_examples():
    full = SetFamily(5, [range(5), range(5)], 1)
    assert intersection_pair(full, [0, 1]) == (0, 1)
    ring = SetFamily(6, [{0, 1, 2}, {2, 3, 4}, {4, 5, 0}], Fraction(1, 2))
    i, j = intersection_pair(ring, [0, 1, 2])
    assert len(ring.sets[i] & ring.sets[j]) == 1
    with pytest.raises(HypothesisViolated):
        intersection_pair(ring, [0, 1])


def test_half_sets_of_ten_exhaustive():
    # three 5-subsets of a 10-set always share >= 2 points somewhere; fix the
    # first set by symmetry and enumerate the other two as bitmasks
    masks = [sum(1 << x for x in c) for c in itertools.combinations(range(10), 5)]
    first = masks[0]
    worst = 10
    for b, c in itertools.combinations_with_replacement(masks, 2):
        best = max(bin(first & b).count("1"), bin(first & c).count("1"), bin(b & c).count("1"))
        worst = min(worst, best)
    assert worst == 2
    # the library agrees on a deterministic sample
    for b, c in itertools.islice(itertools.combinations(masks, 2), 0, 60000, 997):
        sets = [{x for x in range(10) if m >> x & 1} for m in (first, b, c)]
        fam = SetFamily(10, sets, Fraction(1, 2))
        i, j = intersection_pair(fam, [0, 1, 2])
        assert len(fam.sets[i] & fam.sets[j]) >= 2


def test_pair_not_found_is_a_counterexample(monkeypatch):
    fam = SetFamily(6, [{0, 1, 2}, {3, 4, 5}, {0, 3, 5}], Fraction(1, 2))
    monkeypatch.setattr(SetFamily, "threshold_hits", lambda self: np.zeros((3, 3), dtype=bool))
    with pytest.raises(CounterexampleFound) as exc:
        intersection_pair(fam, [0, 1, 2])
    assert exc.value.details["sets"] == [[0, 1, 2], [3, 4, 5], [0, 3, 5]]


def test_popular_index_examples():
    fam = SetFamily(4, [range(4)] * 5, 1)
    assert popular_index(fam).count == 4
    small = SetFamily(6, [{0, 1, 2}, {3, 4, 5}], Fraction(1, 2))
    pop = popular_index(small)   # |I| = k - 1: bound is 0
    assert pop.bound == 0 and pop.half_bound is None
    fam = random_family(8, Fraction(1, 2), 8, 42)
    pop = popular_index(fam)
    assert pop.half_bound == 2 and pop.count >= 2
    assert len(pop.partners) == pop.count and pop.index not in pop.partners


def test_popular_index_is_maximal():
    fam = random_family(20, Fraction(1, 3), 9, (3, 1))
    hits = fam.threshold_hits()
    counts = [sum(1 for j in range(9) if j != i and hits[i, j]) for i in range(9)]
    assert popular_index(fam).count == max(counts)


def test_threshold_is_exact():
    # t(1/2) * 6 = 1 exactly, so a single shared point is enough
    fam = SetFamily(6, [{0, 1, 2}, {2, 3, 4}], Fraction(1, 2))
    assert fam.threshold_hits()[0, 1]
    # t(1/2) * 7 = 7/6: one shared point is not enough
    fam = SetFamily(7, [{0, 1, 2, 3}, {3, 4, 5, 6}], Fraction(1, 2))
    assert not fam.threshold_hits()[0, 1]


def test_union_growth_examples():
    fam = SetFamily(10, [range(5), range(5, 10)], Fraction(1, 2))
    rows = union_growth_check(fam, [0, 1])
    assert rows == [(2, 10, Fraction(5, 6) * 10)]

    thirds = SetFamily(9, [{0, 1, 2}, {3, 4, 5}, {6, 7, 8}], Fraction(1, 3))
    assert rho_constants(Fraction(1, 3)).t == Fraction(1, 18)
    rows = union_growth_check(thirds, [0, 1, 2])
    assert rows[-1] == (3, 9, (1 - 3 * Fraction(1, 18)) * 9)
    assert all(u > lo for _, u, lo in rows)


def test_union_growth_rejects_dense_pairs():
    fam = SetFamily(6, [{0, 1, 2}, {2, 3, 4}], Fraction(1, 2))
    with pytest.raises(HypothesisViolated):
        union_growth_check(fam, [0, 1])


def test_union_growth_terminal_contradiction(monkeypatch):
    # with the threshold disabled, k(1) = 2 disjoint-looking sets would have to
    # exceed |M|; the check must report the contradiction
    fam = SetFamily(3, [range(3), range(3)], 1)
    monkeypatch.setattr(SetFamily, "threshold_hits", lambda self: np.zeros((2, 2), dtype=bool))
    with pytest.raises(CounterexampleFound):
        union_growth_check(fam, [0, 1])


def test_random_family_examples():
    fam = random_family(9, 1, 4, 123)
    assert all(s == frozenset(range(9)) for s in fam.sets)
    assert random_family(20, Fraction(1, 2), 5, 7) == random_family(20, Fraction(1, 2), 5, 7)
    fam = random_family(30, Fraction(1, 3), 12, 1)
    assert len(fam) == 12 and {len(s) for s in fam.sets} == {10}
    assert random_family(20, Fraction(1, 2), 5, 7) != random_family(20, Fraction(1, 2), 5, 8)


def test_random_family_frozen_output():
    # pinned stream: a change here means old seeds no longer reproduce their families
    raw = np.random.PCG64(np.random.SeedSequence([0, 0, 0])).random_raw(2)
    assert raw.tolist() == [11749869230777074271, 4976686463289251617]
    fam = random_family(10, Fraction(1, 2), 2, (0, 0, 0))
    assert [sorted(s) for s in fam.sets] == [[0, 1, 4, 5, 8], [0, 1, 4, 5, 6]]


def test_random_family_uniform_on_average():
    counts = np.zeros(12, dtype=int)
    for i in range(600):
        for s in random_family(12, Fraction(1, 4), 1, (9, i)).sets:
            counts[list(s)] += 1
    # 600 draws of 3 points: 150 per point expected
    assert counts.min() > 100 and counts.max() < 200


@pytest.mark.parametrize("args", [(0, Fraction(1, 2), 3, 0), (5, Fraction(1, 2), 0, 0), (5, 0, 1, 0),
                                  (5, 0.5, 1, 0), (5, Fraction(3, 2), 1, 0)])
def test_random_family_invalid(args):
    with pytest.raises(InvalidParameters):
        random_family(*args)


def test_greedy_subfamily_is_sparse():
    fam = random_family(33, Fraction(1, 5), 12, 5)
    J = greedy_sparse_subfamily(fam)
    hits = fam.threshold_hits()
    assert all(not hits[i, j] for i, j in itertools.combinations(J, 2))
    assert len(J) < rho_constants(Fraction(1, 5)).k


def test_small_suite():
    s = intersection_suite(20, seed=11)
    assert s.families == 100 and s.counterexamples == 0
    assert s.pair_checks == 100 and s.half_bound_checks == 100


def test_check_family_counts():
    s = IntersectionSummary()
    check_family(random_family(12, Fraction(1, 2), 4, 2), s)
    assert (s.families, s.pair_checks, s.popular_checks, s.half_bound_checks) == (1, 1, 1, 1)


def test_translate_examples(Q8):
    rep = translate_lemma_check(group("cyclic:8"), Morphism.identity(8))
    assert rep.pairs == 4 and rep.min_slack >= 8 - 2
    rep = translate_lemma_check(Q8, conjugation_map(Q8, K))
    assert rep.pairs == 36 and rep.min_slack >= 0


def test_translate_matches_direct_loop():
    for spec in ["dicyclic:2", "symmetric:3", "dihedral:4", "alternating:4"]:
        G = group(spec)
        T = oracles.rows(G)
        for alpha in automorphism_group(G):
            S = power_agreement_set(G, alpha, -1).sorted()
            slack = min(
                len(oracles.centralizer(T, T[s][G.inv(t)]))
                - len({T[s][u] for u in S} & {T[t][u] for u in S})
                for s in S for t in S)
            assert translate_lemma_check(G, alpha).min_slack == slack


def test_translate_counterexample_path(monkeypatch, Q8):
    import groupbounds.lemmas as lm

    monkeypatch.setattr(lm, "centralizer_sizes", lambda G: np.zeros(G.order, dtype=np.int64))
    with pytest.raises(CounterexampleFound) as exc:
        translate_lemma_check(Q8, conjugation_map(Q8, K))
    assert {"s", "t", "alpha"} <= set(exc.value.details)


def test_translate_scan_small():
    out = translate_lemma_scan(automorphism_group(group("dihedral:4")))
    assert out["automorphisms"] == 8 and out["min_slack"] >= 0


@pytest.mark.parametrize("spec", [str(s) for s in default_scan_set(24) if str(s) != "elementary_abelian:2,4"])
def test_inversion_construction(spec):
    G = group(spec)
    res = lambda_e(G, -1)
    rep = inversion_construction(G, res.witness)
    c = rho_constants(res.value)
    if len(res.agreement_set) < 2 * (c.k - 1):
        assert rep is None
        return
    assert rep.big_centralizers >= rep.needed
    assert rep.cp >= rep.cp_lower >= res.value ** 5 / 12
