"""Set-intersection combinatorics and the translate/centralizer lemma, checked directly.

Random families are bit-reproducible: each family gets a PCG64 stream seeded
through ``numpy.random.SeedSequence`` (both have a documented,
version-stable output), and subsets are drawn with Floyd's algorithm on the
raw 64-bit outputs using rejection sampling for uniform integers.  Nothing
depends on ``Generator`` methods whose streams numpy may change.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .automorphisms import AutGroup, power_agreement_set
from .bounds import as_rho, ceil_fraction, rho_constants, triangle
from .core import FiniteGroup, Morphism, centralizer_sizes, commuting_probability
from .errors import CounterexampleFound, HypothesisViolated, InvalidParameters

_TWO64 = 1 << 64


@dataclass(frozen=True)
class SetFamily:
    """Subsets of {0..universe_size-1}, each of size at least rho*universe_size."""

    universe_size: int
    sets: tuple
    rho: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rho", as_rho(self.rho))
        object.__setattr__(self, "sets", tuple(frozenset(int(x) for x in s) for s in self.sets))
        if not self.sets:
            raise HypothesisViolated("a family needs at least one set")
        need = ceil_fraction(self.rho * self.universe_size)
        for i, s in enumerate(self.sets):
            if any(not 0 <= x < self.universe_size for x in s):
                raise HypothesisViolated(f"set {i} leaves the universe", index=i)
            if len(s) < need:
                raise HypothesisViolated(f"set {i} has {len(s)} < {need} elements", index=i)

    def __len__(self):
        return len(self.sets)

    def matrix(self) -> np.ndarray:
        m = np.zeros((len(self.sets), self.universe_size), dtype=np.int64)
        for i, s in enumerate(self.sets):
            m[i, list(s)] = 1
        return m

    def intersections(self) -> np.ndarray:
        m = self.matrix()
        return m @ m.T

    def threshold_hits(self) -> np.ndarray:
        """Boolean matrix of |S_i ∩ S_j| >= t(rho)|M|, compared in integers."""
        t = rho_constants(self.rho).t
        return self.intersections() * t.denominator >= t.numerator * self.universe_size


# --- seeded generator -------------------------------------------------------

class _SubsetStream:
    def __init__(self, seed):
        entropy = list(seed) if isinstance(seed, (tuple, list)) else [seed]
        self._bits = np.random.PCG64(np.random.SeedSequence(entropy))

    def below(self, m: int) -> int:
        """Uniform integer in [0, m)."""
        limit = _TWO64 - _TWO64 % m
        while True:
            x = int(self._bits.random_raw())
            if x < limit:
                return x % m

    def subset(self, n: int, k: int) -> list[int]:
        # Floyd: uniform k-subset of range(n)
        chosen = set()
        for j in range(n - k, n):
            r = self.below(j + 1)
            chosen.add(j if r in chosen else r)
        return sorted(chosen)


def random_family(universe_size: int, rho, count: int, seed) -> SetFamily:
    """``count`` uniform subsets of size exactly ceil(rho * universe_size).

    ``seed`` is an int or a tuple of ints (e.g. ``(base_seed, family_index)``).
    """
    try:
        rho = as_rho(rho)
    except Exception as exc:
        raise InvalidParameters(str(exc)) from exc
    if universe_size < 1 or count < 1:
        raise InvalidParameters("universe_size and count must be positive")
    size = ceil_fraction(rho * universe_size)
    stream = _SubsetStream(seed)
    return SetFamily(universe_size, tuple(stream.subset(universe_size, size) for _ in range(count)), rho)


# --- intersection lemma -----------------------------------------------------

def intersection_pair(family: SetFamily, J: Sequence[int]) -> tuple[int, int]:
    """A pair of distinct indices from J whose sets meet in at least t(rho)|M| points.

    Such a pair always exists once |J| >= k(rho); not finding one raises
    :class:`CounterexampleFound`.
    """
    c = rho_constants(family.rho)
    J = list(J)
    if len(set(J)) < c.k:
        raise HypothesisViolated(f"|J| = {len(set(J))} < k(rho) = {c.k}", k=c.k)
    hits = family.threshold_hits()
    for a, i in enumerate(J):
        for j in J[a + 1:]:
            if i != j and hits[i, j]:
                return (i, j)
    raise CounterexampleFound("no pair meets the intersection threshold",
                              sets=[sorted(s) for s in family.sets], J=J, rho=family.rho)


@dataclass(frozen=True)
class PopularIndex:
    index: int
    count: int
    bound: Fraction              # (|I| - (k-1)) / (k-1)
    half_bound: Fraction | None  # |I| / (2(k-1)) when |I| >= 2(k-1)
    partners: tuple


def popular_index(family: SetFamily) -> PopularIndex:
    """Index with the most partners j != i meeting the threshold, with the
    guaranteed partner counts asserted."""
    c = rho_constants(family.rho)
    size = len(family)
    hits = family.threshold_hits()
    np.fill_diagonal(hits, False)
    counts = hits.sum(axis=1)
    i = int(np.argmax(counts))
    count = int(counts[i])
    bound = Fraction(size - (c.k - 1), c.k - 1)
    half = Fraction(size, 2 * (c.k - 1)) if size >= 2 * (c.k - 1) else None
    if count < bound or (half is not None and count < half):
        raise CounterexampleFound(f"best index has only {count} partners (bounds {bound}, {half})",
                                  sets=[sorted(s) for s in family.sets], rho=family.rho)
    return PopularIndex(i, count, bound, half, tuple(int(j) for j in np.flatnonzero(hits[i])))


def union_growth_check(family: SetFamily, J: Sequence[int]) -> list[tuple[int, int, Fraction]]:
    """Check |U_l| > (l*rho - Delta_{l-1} t)|M| for l = 2..|J|.

    Requires every pair in J to meet in fewer than t(rho)|M| points.  Since
    the bound at l = k(rho) is at least |M|, meeting that requirement with
    |J| >= k(rho) is itself a counterexample.
    """
    c = rho_constants(family.rho)
    J = list(J)
    hits = family.threshold_hits()
    for a, i in enumerate(J):
        for j in J[a + 1:]:
            if hits[i, j]:
                raise HypothesisViolated(f"sets {i} and {j} already meet the threshold", pair=(i, j))
    M = family.universe_size
    rows = []
    union = set(family.sets[J[0]]) if J else set()
    for l in range(2, len(J) + 1):
        union |= family.sets[J[l - 1]]
        lower = (l * family.rho - triangle(l - 1) * c.t) * M
        if not len(union) > lower:
            raise CounterexampleFound(f"|U_{l}| = {len(union)} <= {lower}",
                                      sets=[sorted(s) for s in family.sets], J=J)
        rows.append((l, len(union), lower))
        if l == c.k:
            assert lower >= M
            raise CounterexampleFound(f"|U_{l}| > {lower} >= |M| is impossible",
                                      sets=[sorted(s) for s in family.sets], J=J)
    return rows


def greedy_sparse_subfamily(family: SetFamily) -> list[int]:
    """A maximal J whose pairs all stay below the threshold, built greedily."""
    hits = family.threshold_hits()
    J: list[int] = []
    for i in range(len(family)):
        if not any(hits[i, j] for j in J):
            J.append(i)
    return J


@dataclass
class IntersectionSummary:
    families: int = 0
    pair_checks: int = 0
    popular_checks: int = 0
    half_bound_checks: int = 0
    union_growth_rows: int = 0
    counterexamples: int = 0

    def to_dict(self):
        return dict(self.__dict__)


def check_family(family: SetFamily, summary: IntersectionSummary) -> None:
    c = rho_constants(family.rho)
    if len(family) >= c.k:
        intersection_pair(family, range(c.k))
        summary.pair_checks += 1
    pop = popular_index(family)
    summary.popular_checks += 1
    summary.half_bound_checks += pop.half_bound is not None
    J = greedy_sparse_subfamily(family)
    summary.union_growth_rows += len(union_growth_check(family, J))
    summary.families += 1


def intersection_suite(families_per_rho: int, rhos=("1/5", "1/3", "1/2", "2/3", "1"),
                 universes=(7, 12, 20, 33, 48, 64), seed: int = 0, extra_sets: int = 4) -> IntersectionSummary:
    """Run every intersection-lemma check over seeded random families.

    Family ``i`` for the ``r``-th rho uses seed ``(seed, r, i)``, universe
    ``universes[i % len(universes)]`` and ``2(k-1) + i % extra_sets`` sets,
    so it is independent of evaluation order.
    """
    summary = IntersectionSummary()
    for r, rho in enumerate(rhos):
        c = rho_constants(rho)
        for i in range(families_per_rho):
            count = max(c.k, 2 * (c.k - 1)) + i % extra_sets
            fam = random_family(universes[i % len(universes)], c.rho, count, (seed, r, i))
            try:
                check_family(fam, summary)
            except CounterexampleFound:
                summary.counterexamples += 1
                raise
    return summary


# --- translate lemma --------------------------------------------------------

@dataclass(frozen=True)
class TranslateReport:
    pairs: int
    min_slack: int
    tightest: tuple   # (s, t)
    max_slack: int


def _translate_arrays(G: FiniteGroup, S: np.ndarray, csize: np.ndarray):
    n = G.order
    L = np.zeros((len(S), n), dtype=np.int64)
    rows = np.repeat(np.arange(len(S)), len(S))
    L[rows, G.table[np.ix_(S, S)].ravel()] = 1
    inter = L @ L.T                                    # |sS ∩ tS|
    quot = G.table[np.ix_(S, G.inverse[S])]            # s t^-1
    return inter, csize[quot]


def translate_lemma_check(G: FiniteGroup, alpha: Morphism, csize: np.ndarray | None = None) -> TranslateReport:
    """For S the elements inverted by alpha, check |C(s t^-1)| >= |sS ∩ tS| for all s, t in S."""
    S = np.asarray(power_agreement_set(G, alpha, -1).sorted())
    csize = centralizer_sizes(G) if csize is None else csize
    inter, cent = _translate_arrays(G, S, csize)
    slack = cent - inter
    a, b = np.unravel_index(int(np.argmin(slack)), slack.shape)
    if slack[a, b] < 0:
        raise CounterexampleFound(f"|C(st^-1)| < |sS ∩ tS| in {G.name}", group=G.name,
                                  alpha=list(alpha.images), s=int(S[a]), t=int(S[b]))
    return TranslateReport(int(slack.size), int(slack[a, b]), (int(S[a]), int(S[b])), int(slack.max()))


def translate_lemma_scan(aut: AutGroup) -> dict:
    """Run :func:`translate_lemma_check` for every automorphism in ``aut``."""
    G = aut.group
    csize = centralizer_sizes(G)
    pairs, tight = 0, None
    for alpha in aut:
        rep = translate_lemma_check(G, alpha, csize)
        pairs += rep.pairs
        if tight is None or rep.min_slack < tight:
            tight = rep.min_slack
    return {"group": G.name, "automorphisms": len(aut), "pairs": pairs, "min_slack": tight}


@dataclass(frozen=True)
class ConstructionReport:
    rho: Fraction
    s: int
    partners: int
    needed: Fraction          # rho |G| / (2(k-1))
    big_centralizers: int     # distinct s t^-1 with |C| >= t(rho)|G|
    cp_lower: Fraction        # implied lower bound on cp
    cp: Fraction


def inversion_construction(G: FiniteGroup, alpha: Morphism) -> ConstructionReport | None:
    """Replay the cp lower-bound argument for the set S inverted by alpha.

    Applies :func:`popular_index` to the translates (sS)_{s in S}, then
    confirms every partner t gives |C(s t^-1)| >= t(rho)|G|.  Returns None
    when |S| < 2(k(rho)-1), where the argument takes a different route.
    """
    n = G.order
    S = power_agreement_set(G, alpha, -1).sorted()
    rho = Fraction(len(S), n)
    c = rho_constants(rho)
    if len(S) < 2 * (c.k - 1):
        return None
    translates = [[G.mul(s, u) for u in S] for s in S]
    family = SetFamily(n, translates, rho)
    pop = popular_index(family)
    s = S[pop.index]
    csize = centralizer_sizes(G)
    needed = rho * n / (2 * (c.k - 1))
    elements = {G.mul(s, G.inv(S[j])) for j in pop.partners}
    big = [g for g in elements if csize[g] * c.t.denominator >= c.t.numerator * n]
    if len(big) != len(pop.partners) or len(big) < needed:
        raise CounterexampleFound(f"construction fails in {G.name}", group=G.name, alpha=list(alpha.images))
    cp_lower = Fraction(len(big), n) * c.t
    cp = commuting_probability(G)
    if cp < cp_lower:
        raise CounterexampleFound(f"cp = {cp} < {cp_lower} in {G.name}", group=G.name)
    return ConstructionReport(rho, s, pop.count, needed, len(big), cp_lower, cp)
