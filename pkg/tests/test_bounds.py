from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import group
from groupbounds.bounds import (
    check_bounds,
    inversion_cp_lower,
    inversion_dl_bound_holds,
    inversion_fit_index_upper,
    proof_chain_value,
    rho_constants,
    squaring_bounds,
    verify_group,
)
from groupbounds.errors import CounterexampleFound, RhoOutOfRange

rhos = st.builds(lambda q, p: Fraction(p % q + 1, q),
                 st.integers(min_value=1, max_value=10**6), st.integers(min_value=0, max_value=10**6))


def squaring_set_oracle(rho, upto=300):
    p, q = rho.numerator, rho.denominator
    return [l for l in range(upto) if 2 ** (l + 1) * p * p <= (4 * l - 7) * q * q]


def inversion_dl_oracle(dl, rho):
    p, q = rho.numerator, rho.denominator
    return dl <= 2 or 2 * p * 4 ** (dl - 3) <= q * 3 ** (dl - 3)


def test_rho_constants_examples():
    c = rho_constants(1)
    assert (c.k, c.triangle_index, c.delta, c.t) == (2, 1, 1, 1)
    c = rho_constants(Fraction(1, 2))
    assert (c.k, c.delta, c.t) == (3, 3, Fraction(1, 6))
    c = rho_constants("2/5")
    assert (c.triangle_index, c.k, c.delta, c.t) == (3, 4, 6, Fraction(1, 15))


@pytest.mark.parametrize("bad", [0, Fraction(-1, 2), Fraction(3, 2), "5/4", "x", "0.5", "1e-1", 0.5])
def test_rho_out_of_range(bad):
    with pytest.raises(RhoOutOfRange):
        rho_constants(bad)


def test_inversion_bound_examples():
    assert inversion_cp_lower(1) == Fraction(1, 12) and inversion_fit_index_upper(1) == 144
    assert inversion_cp_lower(Fraction(1, 2)) == Fraction(1, 384)
    assert inversion_fit_index_upper(Fraction(1, 2)) == 147456
    assert inversion_cp_lower(Fraction(3, 4)) == Fraction(243, 12288) == Fraction(81, 4096)
    assert inversion_fit_index_upper(Fraction(3, 4)) == 144 * Fraction(4, 3) ** 10


def test_inversion_dl_examples():
    assert inversion_dl_bound_holds(2, Fraction(1, 1000))
    assert inversion_dl_bound_holds(2, 1)
    assert inversion_dl_bound_holds(1, 1)
    assert inversion_dl_bound_holds(3, Fraction(1, 2))
    assert not inversion_dl_bound_holds(4, Fraction(1, 2))


def test_squaring_examples():
    b = squaring_bounds(1)
    assert (b.cp_lower, b.fit_index_upper, b.dl_upper, b.dl_set) == (1, 1, 4, ())
    b = squaring_bounds(Fraction(1, 2))
    # l = 3: 16 <= 20, l = 4: 32 <= 36, l = 5: 64 > 52
    assert (b.cp_lower, b.fit_index_upper, b.dl_set, b.dl_upper) == (Fraction(1, 4), 16, (3, 4), 4)
    b = squaring_bounds(Fraction(1, 10))
    assert (b.cp_lower, b.fit_index_upper, b.dl_upper) == (Fraction(1, 100), 10000, 10)


@given(rhos)
def test_k_rho_exceeds_one_plus_rho(rho):
    c = rho_constants(rho)
    assert c.k * rho >= 1 + rho
    assert 0 < c.t <= rho


@given(rhos, rhos)
def test_monotone_in_rho(a, b):
    lo, hi = min(a, b), max(a, b)
    assert inversion_cp_lower(lo) <= inversion_cp_lower(hi)
    assert squaring_bounds(lo).cp_lower <= squaring_bounds(hi).cp_lower
    assert inversion_fit_index_upper(lo) >= inversion_fit_index_upper(hi)
    assert squaring_bounds(lo).fit_index_upper >= squaring_bounds(hi).fit_index_upper


@given(st.integers(min_value=1, max_value=10**7).map(lambda q: Fraction(1, q)) | rhos)
def test_squaring_set_matches_unbounded_loop(rho):
    assert list(squaring_bounds(rho).dl_set) == squaring_set_oracle(rho)


@given(rhos, st.integers(min_value=0, max_value=60))
def test_inversion_dl_matches_integer_oracle(rho, dl):
    assert inversion_dl_bound_holds(dl, rho) == inversion_dl_oracle(dl, rho)


def test_proof_chain_simplification_on_grid():
    for i in range(1, 101):
        rho = Fraction(i, 100)
        c = rho_constants(rho)
        m = c.triangle_index
        assert proof_chain_value(rho) == rho ** 2 / (m * m * (m + 1))
        assert proof_chain_value(rho) >= rho ** 5 / 12


def test_verify_trivial():
    rep = verify_group(group("cyclic:1"))
    assert rep.lambdas == {-1: 1, 2: 1, 3: 1} and rep.cp == 1 and rep.all_passed


def test_verify_q8(Q8):
    rep = verify_group(Q8)
    assert rep.lambda_m1 == Fraction(3, 4) and rep.cp == Fraction(5, 8)
    v = {x.name: x for x in rep.verdicts}
    assert v["inversion_cp"].rhs == Fraction(243, 12288)
    assert v["inversion_above_3_4_abelian"].note == "vacuous"
    assert rep.all_passed


def test_verify_heisenberg_3():
    H = group("heisenberg:3")
    classes = len(oracles.conjugacy_classes(oracles.rows(H)))
    assert classes == 11
    rep = verify_group(H)
    assert rep.cp == Fraction(classes, 27)
    v = {x.name: x for x in rep.verdicts}
    assert v["odd_order_cubing_cp"].passed
    assert rep.cp >= rep.lambda_3 ** 2


def test_verdict_count_even_and_odd(S3):
    assert len(verify_group(S3).verdicts) == 9
    assert len(verify_group(group("cyclic:3")).verdicts) == 10


def test_failed_verdict_raises():
    # invariants of a fictitious group that violate the 5/8 bound
    verdicts = check_bounds(8, Fraction(3, 4), 1, 1, False, {-1: Fraction(1, 2), 2: Fraction(1, 8), 3: 1})
    failed = [v.name for v in verdicts if not v.passed]
    assert failed == ["nonabelian_cp_at_most_5_8"]


def test_strict_mode_raises(monkeypatch, S3):
    import groupbounds.bounds as b

    monkeypatch.setattr(b, "NONABELIAN_CP_MAX", Fraction(1, 3))
    with pytest.raises(CounterexampleFound) as exc:
        verify_group(S3)
    assert exc.value.details["report"]["group"] == "symmetric:3"
    assert not verify_group(S3, strict=False).all_passed


def test_inner_only_fallback():
    G = group("elementary_abelian:2,3")
    rep = verify_group(G, cap=10)
    assert rep.lambda_status == "inner-lower-bound" and rep.aut_order is None
    # Inn of an abelian group is trivial: only the identity, which inverts every element
    assert rep.lambda_m1 == 1 and rep.all_passed
