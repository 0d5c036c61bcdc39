"""Exact bound formulas and per-group verification.

Every comparison here is between ``Fraction`` or ``int`` values.  The two
irrational-looking bounds are rewritten as equivalent rational predicates:

* ``dl <= log_{3/4}(2*rho) + 3``  iff  ``2*rho <= (3/4)**(dl - 3)``
  (log base 3/4 is decreasing);
* ``cp <= index**(-1/2)``  iff  ``cp**2 * index <= 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import automorphisms as autmod
from .core import FiniteGroup, center, commuting_probability
from .errors import AutGroupTooLarge, CounterexampleFound, RhoOutOfRange
from .structure import derived_series, fitting_subgroup, normal_subgroups, solvable_radical

DL_LOOP_CAP = 64
PROP1_THRESHOLD = Fraction(3, 4)
NONABELIAN_CP_MAX = Fraction(5, 8)


_RHO_TEXT = re.compile(r"[+-]?\d+(/\d+)?")


def as_rho(rho) -> Fraction:
    """Coerce ``rho`` to a Fraction in (0, 1]; strings like ``"2/5"`` are accepted.

    Floats are rejected outright so that no rounded value enters a verdict.
    """
    if isinstance(rho, float):
        raise RhoOutOfRange("rho must be exact (int, Fraction or 'p/q' string), not float", rho=repr(rho))
    if isinstance(rho, str) and not _RHO_TEXT.fullmatch(rho.strip()):
        raise RhoOutOfRange(f"rho must be written as p/q, got {rho!r}")
    try:
        r = Fraction(rho)
    except (ValueError, ZeroDivisionError) as exc:
        raise RhoOutOfRange(f"cannot read rho from {rho!r}") from exc
    if not 0 < r <= 1:
        raise RhoOutOfRange(f"rho = {r} is not in (0, 1]", rho=r)
    return r


def triangle(n: int) -> int:
    return n * (n + 1) // 2


def ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass(frozen=True)
class RhoConstants:
    rho: Fraction
    k: int
    t: Fraction
    triangle_index: int

    @property
    def delta(self) -> int:
        return triangle(self.triangle_index)


def rho_constants(rho) -> RhoConstants:
    """k(rho) = ceil(1/rho) + 1 and t(rho) = rho / Delta_{k-1}."""
    rho = as_rho(rho)
    m = ceil_fraction(1 / rho)
    k = m + 1
    t = rho / triangle(m)
    assert k * rho >= 1 + rho and 0 < t <= rho
    return RhoConstants(rho, k, t, m)


def inversion_cp_lower(rho) -> Fraction:
    return as_rho(rho) ** 5 / 12


def inversion_fit_index_upper(rho) -> Fraction:
    return 144 / as_rho(rho) ** 10


def inversion_dl_bound_holds(dl: int, rho) -> bool:
    """dl <= max(2, log_{3/4}(2 rho) + 3), decided exactly."""
    rho = as_rho(rho)
    if dl <= 2:
        return True
    return 2 * rho <= Fraction(3, 4) ** (dl - 3)


def squaring_dl_set(rho) -> list[int]:
    """All l >= 0 with 2**(l+1) <= (4l - 7) / rho**2.

    For l >= 3 the right side grows by the factor (4l-3)/(4l-7) <= 2 per step
    while the left side doubles, so once the predicate fails at some l >= 3
    it fails for every larger l and the loop may stop.
    """
    rho = as_rho(rho)
    inv_sq = 1 / rho ** 2
    qualifying = []
    for l in range(DL_LOOP_CAP + 1):
        ok = 2 ** (l + 1) <= (4 * l - 7) * inv_sq
        if ok:
            qualifying.append(l)
        elif l >= 3:
            return qualifying
    raise RhoOutOfRange(f"dl loop did not settle by l = {DL_LOOP_CAP}; rho = {rho} is too small", rho=rho)


@dataclass(frozen=True)
class SquaringBounds:
    cp_lower: Fraction
    fit_index_upper: Fraction
    dl_upper: int
    dl_set: tuple


def squaring_bounds(rho) -> SquaringBounds:
    rho = as_rho(rho)
    dl_set = tuple(squaring_dl_set(rho))
    return SquaringBounds(rho ** 2, 1 / rho ** 4, max((4,) + dl_set), dl_set)


def proof_chain_value(rho) -> Fraction:
    """rho / (2(k-1)) * t(rho): the cp lower bound before the final simplification."""
    c = rho_constants(rho)
    return c.rho / (2 * (c.k - 1)) * c.t


# --- per-group verification -------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    lhs: object
    rhs: object
    relation: str
    note: str = ""

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, "lhs": _fmt(self.lhs),
                "relation": self.relation, "rhs": _fmt(self.rhs), "note": self.note}


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    return x


@dataclass
class BoundReport:
    name: str
    order: int
    cp: Fraction
    fit_order: int
    rad_order: int
    dl_rad: int
    lambdas: dict               # e -> Fraction
    lambda_status: str          # "exact" or "inner-lower-bound"
    aut_order: int | None
    verdicts: list = field(default_factory=list)

    @property
    def fit_index(self) -> int:
        return self.order // self.fit_order

    @property
    def rad_index(self) -> int:
        return self.order // self.rad_order

    @property
    def lambda_m1(self):
        return self.lambdas[-1]

    @property
    def lambda_2(self):
        return self.lambdas[2]

    @property
    def lambda_3(self):
        return self.lambdas[3]

    @property
    def all_passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def failures(self):
        return [v for v in self.verdicts if not v.passed]

    def to_dict(self):
        return {
            "group": self.name,
            "order": self.order,
            "lambda_m1": _fmt(self.lambdas[-1]),
            "lambda_2": _fmt(self.lambdas[2]),
            "lambda_3": _fmt(self.lambdas[3]),
            "lambda_status": self.lambda_status,
            "aut_order": self.aut_order,
            "cp": _fmt(self.cp),
            "fit_order": self.fit_order,
            "fit_index": self.fit_index,
            "rad_order": self.rad_order,
            "rad_index": self.rad_index,
            "dl_rad": self.dl_rad,
            "all_passed": self.all_passed,
            "verdicts": [v.to_dict() for v in self.verdicts],
        }


def check_bounds(order: int, cp: Fraction, fit_index: int, dl_rad: int, abelian: bool,
                 lambdas: dict) -> list[Verdict]:
    """All inequality verdicts for one group, given its invariants.

    ``lambdas`` maps e in (-1, 2, 3) to the rho at which the corresponding
    hypothesis is instantiated.
    """
    lm1, l2, l3 = lambdas[-1], lambdas[2], lambdas[3]
    sq = squaring_bounds(l2)
    out = [
        Verdict("inversion_cp", cp >= inversion_cp_lower(lm1), cp, inversion_cp_lower(lm1), ">="),
        Verdict("inversion_fit_index", fit_index <= inversion_fit_index_upper(lm1),
                fit_index, inversion_fit_index_upper(lm1), "<="),
        Verdict("inversion_dl_rad", inversion_dl_bound_holds(dl_rad, lm1), dl_rad,
                2 * lm1, "dl<=2 or 2*rho<=(3/4)^(dl-3)"),
        Verdict("squaring_cp", cp >= sq.cp_lower, cp, sq.cp_lower, ">="),
        Verdict("squaring_fit_index", fit_index <= sq.fit_index_upper, fit_index, sq.fit_index_upper, "<="),
        Verdict("squaring_dl_rad", dl_rad <= sq.dl_upper, dl_rad, sq.dl_upper, "<=",
                note=f"qualifying l: {list(sq.dl_set)}"),
        Verdict("inversion_above_3_4_abelian", not (lm1 > PROP1_THRESHOLD) or abelian,
                lm1, PROP1_THRESHOLD, "> implies abelian", note="vacuous" if lm1 <= PROP1_THRESHOLD else ""),
        Verdict("cp_fit_index", cp ** 2 * fit_index <= 1, cp ** 2 * fit_index, 1, "<="),
        Verdict("nonabelian_cp_at_most_5_8", abelian or cp <= NONABELIAN_CP_MAX, cp, NONABELIAN_CP_MAX,
                "<=", note="vacuous" if abelian else ""),
    ]
    if order % 2:
        out.append(Verdict("odd_order_cubing_cp", cp >= l3 ** 2, cp, l3 ** 2, ">="))
    return out


def verify_group(G: FiniteGroup, cap: int = autmod.DEFAULT_AUT_CAP, strict: bool = True,
                 aut: autmod.AutGroup | None = None) -> BoundReport:
    """Compute all invariants of G and check every bound.

    When Aut(G) exceeds ``cap`` the λ values are taken over Inn(G) only;
    they are then lower bounds, and since each bound only needs *some*
    automorphism attaining the fraction, the verdicts are still valid
    instances.  With ``strict`` a failing verdict raises
    :class:`CounterexampleFound`.  A precomputed full ``aut`` skips the search.
    """
    try:
        if aut is None:
            aut = autmod.automorphism_group(G, cap)
        status, aut_order = "exact", len(aut)
    except AutGroupTooLarge:
        aut = autmod.inner_automorphisms(G)
        status, aut_order = "inner-lower-bound", None
    lambdas = {e: autmod.lambda_from(aut, e, status == "exact").value for e in (-1, 2, 3)}

    lattice = normal_subgroups(G)
    fit = fitting_subgroup(G, lattice)
    rad = solvable_radical(G, lattice)
    dl_rad = derived_series((G, rad)).length
    cp = commuting_probability(G)
    abelian = len(center(G)) == G.order

    report = BoundReport(G.name, G.order, cp, len(fit), len(rad), dl_rad, lambdas, status, aut_order)
    report.verdicts = check_bounds(G.order, cp, report.fit_index, dl_rad, abelian, lambdas)
    if strict and not report.all_passed:
        raise CounterexampleFound(f"{G.name}: {[v.name for v in report.failures()]} failed",
                                  report=report.to_dict())
    return report
