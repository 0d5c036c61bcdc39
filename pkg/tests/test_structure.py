import pytest

import oracles
from conftest import group
from groupbounds.catalog import default_scan_set
from groupbounds.core import ElementSet, is_homomorphism, is_normal, is_subgroup
from groupbounds.errors import LatticeTooLarge, NotNormal
from groupbounds.structure import (
    derived_series,
    fitting_subgroup,
    is_nilpotent,
    lower_central_series,
    normal_subgroups,
    quotient,
    solvable_radical,
    subgroup_closure,
)

SMALL = [str(s) for s in default_scan_set(24)]


def test_closure_examples(S3):
    assert subgroup_closure(S3, []).sorted() == [0]
    assert len(subgroup_closure(group("cyclic:6"), [2])) == 3
    assert len(subgroup_closure(S3, [1, 3])) == 6


def test_normal_subgroup_examples(S3, Q8):
    assert normal_subgroups(group("cyclic:7")).sizes() == [1, 7]
    assert normal_subgroups(S3).sizes() == [1, 3, 6]
    assert normal_subgroups(Q8).sizes() == [1, 2, 4, 4, 4, 8]


def test_lattice_cap():
    with pytest.raises(LatticeTooLarge):
        normal_subgroups(group("elementary_abelian:2,3"), cap=5)


@pytest.mark.parametrize("spec", SMALL)
def test_normal_subgroups_match_brute_force(spec):
    G = group(spec)
    T = oracles.rows(G)
    if G.order <= 12:
        subs = oracles.all_subgroups_by_subsets(T)
    else:
        subs = oracles.all_subgroups_by_extension(T)
    expected = sorted(sorted(H) for H in subs if oracles.is_normal(T, H))
    got = sorted(N.sorted() for N in normal_subgroups(G).normals)
    assert got == expected


@pytest.mark.parametrize("spec", SMALL)
def test_lattice_members_are_normal(spec):
    G = group(spec)
    lat = normal_subgroups(G)
    assert lat.normals[0].sorted() == [0] and len(lat.normals[-1]) == G.order
    assert all(is_normal(G, N) for N in lat.normals)


def test_quotient_examples(S3):
    Q, proj = quotient(S3, ElementSet.of(6, [0]))
    assert Q.order == 6
    Q, proj = quotient(S3, ElementSet.of(6, range(6)))
    assert Q.order == 1
    A3 = normal_subgroups(S3).normals[1]
    Q, proj = quotient(S3, A3)
    assert Q.order == 2
    assert is_homomorphism(S3, Q, proj.images)
    assert {g for g in range(6) if proj(g) == 0} == set(A3)


@pytest.mark.parametrize("spec", ["symmetric:4", "dicyclic:2", "cyclic:2*symmetric:3", "heisenberg:3"])
def test_quotient_by_every_normal(spec):
    G = group(spec)
    for N in normal_subgroups(G).normals:
        Q, proj = quotient(G, N)
        assert Q.order == G.order // len(N)
        assert is_homomorphism(G, Q, proj.images)
        assert sorted(set(proj.images)) == list(range(Q.order))
        assert {g for g in range(G.order) if proj(g) == 0} == set(N)


def test_quotient_rejects_non_normal(S3):
    with pytest.raises(NotNormal):
        quotient(S3, ElementSet.of(6, [0, 1]))


def test_derived_series_examples(S3, S4):
    assert derived_series(group("cyclic:1")).length == 0
    rep = derived_series(S3)
    assert [len(t) for t in rep.terms] == [6, 3, 1] and rep.length == 2
    assert derived_series(S4).length == 3
    assert derived_series(group("cyclic:5")).length == 1


def test_lower_central_examples(S3, Q8):
    assert lower_central_series(group("cyclic:6")).length == 1
    rep = lower_central_series(Q8)
    assert rep.terminates and rep.length == 2
    assert rep.terms[1].sorted() == [0, 2]
    rep = lower_central_series(S3)
    assert not rep.terminates and rep.status == "NotNilpotent"
    assert len(rep.terms[-1]) == 3


def test_a5_radical_trivial_and_not_solvable():
    A5 = group("alternating:5")
    assert derived_series(A5).status == "NotSolvable"
    assert solvable_radical(A5).sorted() == [0]
    assert fitting_subgroup(A5).sorted() == [0]


def test_radical_of_c2_times_a5():
    G = group("cyclic:2*alternating:5")
    assert len(solvable_radical(G)) == 2


def test_fitting_examples(S3, S4, Q8):
    assert len(fitting_subgroup(Q8)) == 8
    assert len(fitting_subgroup(group("cyclic:10"))) == 10
    assert len(fitting_subgroup(S3)) == 3
    V4 = fitting_subgroup(S4)
    assert len(V4) == 4
    assert all(S4.mul(x, x) == 0 for x in V4)


@pytest.mark.parametrize("spec", [str(s) for s in default_scan_set(32)])
def test_fit_inside_rad_and_rad_solvable(spec):
    G = group(spec)
    fit, rad = fitting_subgroup(G), solvable_radical(G)
    assert fit <= rad
    assert derived_series((G, rad)).terminates


def _maximal_subgroups_normal(G):
    T = oracles.rows(G)
    subs = oracles.all_subgroups_by_extension(T)
    proper = [H for H in subs if len(H) < G.order]
    maximal = [H for H in proper if not any(H < K for K in proper)]
    return all(oracles.is_normal(T, H) for H in maximal)


@pytest.mark.parametrize("spec", SMALL)
def test_nilpotent_iff_maximal_subgroups_normal(spec):
    G = group(spec)
    assert is_nilpotent(G) == _maximal_subgroups_normal(G)


def test_series_of_a_subgroup_uses_ambient_indices(S4):
    V4 = fitting_subgroup(S4)
    rep = derived_series((S4, V4))
    assert rep.length == 1 and rep.terms[0] == V4
    assert is_subgroup(S4, rep.terms[0])
