"""Automorphism enumeration and the power-agreement fractions λ_e.

The search assigns images to a greedy generating sequence one generator at a
time.  A candidate image must have the same element order and lie outside
the image of the subgroup generated so far; the partial map is then extended
along a spanning tree of that subgroup and checked on every
(element, generator) edge, which is enough for it to be a homomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import ElementSet, FiniteGroup, Morphism, center, conjugation_map, is_automorphism
from .errors import AutGroupTooLarge, NotAnAutomorphism
from .structure import subgroup_closure

DEFAULT_AUT_CAP = 1_000_000


def minimal_generators(G: FiniteGroup) -> list[int]:
    """Greedy generating sequence: keep adding the least element not yet generated."""
    gens: list[int] = []
    H = subgroup_closure(G, gens)
    while len(H) < G.order:
        mask = H.mask()
        gens.append(int(np.flatnonzero(~mask)[0]))
        H = subgroup_closure(G, gens)
    return gens


@dataclass(frozen=True)
class _Level:
    layers: tuple         # (new, parent, via) arrays with parent * gens[via] == new
    members: np.ndarray   # all of H_j


def _spanning_levels(G: FiniteGroup, gens: list[int]) -> list[_Level]:
    depth = np.full(G.order, -1, dtype=np.int64)
    depth[0] = 0
    order_seen = [0]
    levels = []
    for j in range(len(gens)):
        found = []   # (depth, new, parent, via)
        queue = list(order_seen)
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            for i in range(j + 1):
                y = int(G.table[x, gens[i]])
                if depth[y] < 0:
                    depth[y] = depth[x] + 1
                    queue.append(y)
                    found.append((depth[y], y, x, i))
        order_seen = queue
        # elements of one depth only have parents of smaller depth
        layers = []
        for d in sorted({f[0] for f in found}):
            rows = np.array([f[1:] for f in found if f[0] == d], dtype=np.int64)
            layers.append((rows[:, 0], rows[:, 1], rows[:, 2]))
        levels.append(_Level(tuple(layers), np.asarray(queue, dtype=np.int64)))
    return levels


@dataclass(frozen=True)
class AutGroup:
    """All automorphisms of ``group``, sorted lexicographically by image tuple."""

    group: FiniteGroup
    images: np.ndarray          # shape (|Aut|, n)
    generator_indices: tuple

    def __len__(self):
        return int(self.images.shape[0])

    @property
    def elements(self) -> list[Morphism]:
        n = self.group.order
        return [Morphism(n, n, tuple(int(x) for x in row), "automorphism") for row in self.images]

    def __iter__(self):
        return iter(self.elements)

    def index_of(self, alpha: Morphism) -> int:
        hits = np.flatnonzero((self.images == np.asarray(alpha.images)).all(axis=1))
        return int(hits[0]) if hits.size else -1

    def __contains__(self, alpha: Morphism) -> bool:
        return self.index_of(alpha) >= 0


def automorphism_group(G: FiniteGroup, cap: int = DEFAULT_AUT_CAP) -> AutGroup:
    """Enumerate Aut(G) by backtracking over generator images.

    Raises :class:`AutGroupTooLarge` as soon as more than ``cap``
    automorphisms have been found.
    """
    n = G.order
    gens = minimal_generators(G)
    if not gens:
        return AutGroup(G, np.zeros((1, 1), dtype=np.int64), ())
    levels = _spanning_levels(G, gens)
    orders = G.element_orders()
    table = G.table.astype(np.int64)
    candidates = [np.flatnonzero(orders == orders[g]) for g in gens]

    img = np.zeros(n, dtype=np.int64)
    gen_img = np.zeros(len(gens), dtype=np.int64)
    found: list[np.ndarray] = []

    def extend(j: int) -> bool:
        lvl = levels[j]
        for new, parent, via in lvl.layers:
            img[new] = table[img[parent], gen_img[via]]
        H = lvl.members
        imH = img[H]
        hit = np.zeros(n, dtype=bool)
        hit[imH] = True
        if hit.sum() != len(H):
            return False
        for i in range(j + 1):
            if not np.array_equal(img[table[H, gens[i]]], table[imH, gen_img[i]]):
                return False
        return True

    def search(j: int, used_mask: np.ndarray):
        for c in candidates[j]:
            if used_mask[c]:
                continue
            gen_img[j] = c
            if not extend(j):
                continue
            if j + 1 == len(gens):
                found.append(img.copy())
                if len(found) > cap:
                    raise AutGroupTooLarge(f"{G.name} has more than {cap} automorphisms",
                                           cap=cap, group=G.name)
            else:
                nxt = np.zeros(n, dtype=bool)
                nxt[img[levels[j].members]] = True
                search(j + 1, nxt)

    start = np.zeros(n, dtype=bool)
    start[0] = True
    search(0, start)
    images = np.array(found, dtype=np.int64)
    order = np.lexsort(images.T[::-1])
    images = images[order]
    images.setflags(write=False)

    aut = AutGroup(G, images, tuple(gens))
    inner = n // len(center(G))
    if len(aut) % inner:
        raise AssertionError(f"|Inn(G)| = {inner} does not divide |Aut(G)| = {len(aut)}")
    return aut


def inner_automorphisms(G: FiniteGroup) -> AutGroup:
    """Inn(G) only, in the same sorted layout as :func:`automorphism_group`."""
    rows = {conjugation_map(G, g).images for g in range(G.order)}
    images = np.array(sorted(rows), dtype=np.int64)
    images.setflags(write=False)
    return AutGroup(G, images, tuple(minimal_generators(G)))


def _require_aut(G: FiniteGroup, alpha: Morphism):
    if alpha.status != "automorphism" and not is_automorphism(G, alpha.images):
        raise NotAnAutomorphism("map is not an automorphism of the group")
    if alpha.source_order != G.order:
        raise NotAnAutomorphism("map does not act on this group")


def power_agreement_set(G: FiniteGroup, alpha: Morphism, e: int) -> ElementSet:
    """{g : alpha(g) = g**e}."""
    _require_aut(G, alpha)
    return ElementSet.from_mask(alpha.array() == G.power_map(e))


def fixed_points(G: FiniteGroup, alpha: Morphism) -> ElementSet:
    """fix(alpha); always a subgroup."""
    _require_aut(G, alpha)
    return ElementSet.from_mask(alpha.array() == np.arange(G.order))


def agreement_counts(aut: AutGroup, e: int) -> np.ndarray:
    """|{g : alpha(g) = g**e}| for each automorphism in enumeration order."""
    return (aut.images == aut.group.power_map(e)[None, :]).sum(axis=1)


def fixed_point_counts(aut: AutGroup) -> np.ndarray:
    return (aut.images == np.arange(aut.group.order)[None, :]).sum(axis=1)


@dataclass(frozen=True)
class LambdaResult:
    e: int
    value: Fraction
    witness: Morphism
    agreement_set: ElementSet
    certified: bool = True   # False when only Inn(G) was searched


def lambda_from(aut: AutGroup, e: int, certified: bool = True) -> LambdaResult:
    G = aut.group
    counts = agreement_counts(aut, e)
    best = int(np.argmax(counts))          # first maximum in enumeration order
    n = G.order
    witness = Morphism(n, n, tuple(int(x) for x in aut.images[best]), "automorphism")
    S = power_agreement_set(G, witness, e)
    return LambdaResult(e, Fraction(len(S), n), witness, S, certified)


def lambda_e(G: FiniteGroup, e: int, cap: int = DEFAULT_AUT_CAP, aut: AutGroup | None = None) -> LambdaResult:
    """Largest fraction of elements mapped to their e-th power by one automorphism."""
    return lambda_from(aut if aut is not None else automorphism_group(G, cap), e)
