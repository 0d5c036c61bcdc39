"""Normal subgroups, quotients, derived and lower central series, Rad and Fit.

Rad(G) and Fit(G) are read off the full normal-subgroup lattice, which is
enumerated by closing known normal subgroups under whole conjugacy classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .core import (
    ElementSet,
    FiniteGroup,
    Morphism,
    _frozen,
    _index_dtype,
    conjugacy_classes,
    is_normal,
    is_subgroup,
    validate_group,
)
from .errors import LatticeTooLarge, NotNormal

DEFAULT_LATTICE_CAP = 10_000


def _closure_mask(G: FiniteGroup, start: np.ndarray, gens: np.ndarray) -> np.ndarray:
    """Saturate ``start`` (a mask containing 0) under right multiplication by ``gens``."""
    mask = start.copy()
    frontier = np.flatnonzero(mask)
    while frontier.size:
        prods = np.unique(G.table[np.ix_(frontier, gens)])
        new = prods[~mask[prods]]
        mask[new] = True
        frontier = new
    return mask


def subgroup_closure(G: FiniteGroup, seed: Iterable[int]) -> ElementSet:
    """Smallest subgroup containing ``seed``.

    In a finite group closure under products already gives inverses.
    """
    seed = np.asarray(sorted(set(int(s) for s in seed)), dtype=np.int64)
    start = np.zeros(G.order, dtype=bool)
    start[0] = True
    if seed.size == 0:
        return ElementSet.from_mask(start)
    start[seed] = True
    return ElementSet.from_mask(_closure_mask(G, start, seed))


@dataclass(frozen=True)
class SubgroupLattice:
    group: FiniteGroup
    normals: tuple

    def __len__(self):
        return len(self.normals)

    def sizes(self) -> list[int]:
        return [len(N) for N in self.normals]


def _canonical(subgroups):
    return tuple(sorted(subgroups, key=lambda H: (len(H), H.sorted())))


def normal_subgroups(G: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> SubgroupLattice:
    """All normal subgroups of G, sorted by size then members.

    Every normal subgroup is a union of classes and equals the closure of
    those classes, so extending by one class at a time from the trivial
    subgroup reaches all of them.
    """
    classes = [np.asarray(c.sorted()) for c in conjugacy_classes(G)]
    trivial = np.zeros(G.order, dtype=bool)
    trivial[0] = True
    found = {trivial.tobytes(): trivial}
    todo = [trivial]
    while todo:
        N = todo.pop()
        gens = np.flatnonzero(N)
        for cls in classes:
            if N[cls[0]]:
                continue
            seed = N.copy()
            seed[cls] = True
            M = _closure_mask(G, seed, np.concatenate([gens, cls]))
            key = M.tobytes()
            if key not in found:
                found[key] = M
                todo.append(M)
                if len(found) > cap:
                    raise LatticeTooLarge(f"{G.name} has more than {cap} normal subgroups", cap=cap)
    return SubgroupLattice(G, _canonical(ElementSet.from_mask(m) for m in found.values()))


def induced_group(G: FiniteGroup, H: ElementSet, name: str | None = None) -> tuple[FiniteGroup, list[int]]:
    """Re-materialise subgroup H as a standalone group.

    Returns the group together with the embedding list: new index i stands
    for element ``embedding[i]`` of G.  Index 0 stays the identity because
    members are relabelled in increasing order.
    """
    if not is_subgroup(G, H):
        raise ValueError("not a subgroup")
    members = H.sorted()
    relabel = np.full(G.order, -1, dtype=np.int64)
    relabel[members] = np.arange(len(members))
    idx = np.asarray(members)
    table = relabel[G.table[np.ix_(idx, idx)]]
    inverse = relabel[G.inverse[idx]]
    dt = _index_dtype(len(members))
    return (FiniteGroup(_frozen(table.astype(dt)), _frozen(inverse.astype(dt)),
                        name or f"subgroup of {G.name}"),
            members)


def quotient(G: FiniteGroup, N: ElementSet) -> tuple[FiniteGroup, Morphism]:
    """G/N with the identity coset at index 0, plus the projection G -> G/N.

    Cosets are labelled in order of their least element.
    """
    if not is_subgroup(G, N):
        raise NotNormal("N is not a subgroup", members=N.sorted()[:10])
    if not is_normal(G, N):
        mask = N.mask()
        for g in range(G.order):
            for h in N.sorted():
                c = G.mul(G.mul(g, h), G.inv(g))
                if not mask[c]:
                    raise NotNormal(f"{g}*{h}*{g}^-1 = {c} leaves N", conjugator=g, element=h)
    label = np.full(G.order, -1, dtype=np.int64)
    nidx = np.asarray(N.sorted())
    reps = []
    for g in range(G.order):
        if label[g] < 0:
            label[G.table[g, nidx]] = len(reps)
            reps.append(g)
    reps = np.asarray(reps)
    table = label[G.table[np.ix_(reps, reps)]]
    m = len(reps)
    inverse = np.array([int(np.flatnonzero(table[a] == 0)[0]) for a in range(m)])
    Q = validate_group(table, name=f"{G.name}/N")
    proj = Morphism(G.order, m, tuple(int(x) for x in label), "homomorphism")
    assert np.array_equal(Q.inverse, inverse)
    return Q, proj


@dataclass(frozen=True)
class SeriesReport:
    """A descending chain of subgroups.

    ``terms`` are in the indexing of the group the series was requested
    for.  ``length`` is the derived length or nilpotency class when the
    chain reaches the trivial subgroup; otherwise ``terminates`` is false and
    ``length`` counts strict steps taken before stabilising.
    """

    kind: str
    terms: tuple
    length: int
    terminates: bool

    @property
    def status(self) -> str:
        if self.terminates:
            return "ok"
        return "NotSolvable" if self.kind == "derived" else "NotNilpotent"


SubgroupInput = Union[FiniteGroup, tuple]


def _standalone(H: SubgroupInput):
    if isinstance(H, FiniteGroup):
        return H, list(range(H.order)), H.order
    G, sub = H
    K, emb = induced_group(G, sub)
    return K, emb, G.order


def _commutator_subgroup(K: FiniteGroup, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Mask of [A, B] = <a^-1 b^-1 a b> for index arrays A and B of K."""
    inv = K.inverse
    left = K.table[np.ix_(inv[A], inv[B])]
    right = K.table[np.ix_(A, B)]
    comms = np.unique(K.table[left, right])
    start = np.zeros(K.order, dtype=bool)
    start[0] = True
    start[comms] = True
    return _closure_mask(K, start, comms)


def _series(H: SubgroupInput, kind: str) -> SeriesReport:
    K, emb, ambient = _standalone(H)
    emb = np.asarray(emb)
    full = np.arange(K.order)
    terms = [np.ones(K.order, dtype=bool)]
    while True:
        cur = np.flatnonzero(terms[-1])
        other = cur if kind == "derived" else full
        nxt = _commutator_subgroup(K, other, cur)
        if nxt.sum() == len(cur):
            break
        terms.append(nxt)
    terminates = terms[-1].sum() == 1
    out = tuple(ElementSet.of(ambient, emb[np.flatnonzero(t)].tolist()) for t in terms)
    return SeriesReport(kind, out, len(terms) - 1, bool(terminates))


def derived_series(H: SubgroupInput) -> SeriesReport:
    """H ⊇ H' ⊇ H'' ⊇ ... ; pass a group or a ``(G, subgroup)`` pair.

    The trivial group has derived length 0, nontrivial abelian groups 1.
    """
    return _series(H, "derived")


def lower_central_series(H: SubgroupInput) -> SeriesReport:
    """H = γ1 ⊇ γ2 = [H,H] ⊇ γ3 = [H,γ2] ⊇ ... ; pass a group or ``(G, subgroup)``."""
    return _series(H, "lower-central")


def is_solvable(H: SubgroupInput) -> bool:
    return derived_series(H).terminates


def is_nilpotent(H: SubgroupInput) -> bool:
    return lower_central_series(H).terminates


def derived_length(H: SubgroupInput) -> int:
    rep = derived_series(H)
    if not rep.terminates:
        raise ValueError("group is not solvable")
    return rep.length


def nilpotency_class(H: SubgroupInput) -> int:
    rep = lower_central_series(H)
    if not rep.terminates:
        raise ValueError("group is not nilpotent")
    return rep.length


def _largest_with(G: FiniteGroup, lattice: SubgroupLattice | None, pred, what: str) -> ElementSet:
    lattice = lattice or normal_subgroups(G)
    good = [N for N in lattice.normals if pred((G, N))]
    best = max(good, key=len)
    for N in good:
        if not N <= best:
            raise AssertionError(f"{what} normal subgroup {N} not contained in the largest one")
    return best


def solvable_radical(G: FiniteGroup, lattice: SubgroupLattice | None = None) -> ElementSet:
    """Largest solvable normal subgroup."""
    return _largest_with(G, lattice, is_solvable, "solvable")


def fitting_subgroup(G: FiniteGroup, lattice: SubgroupLattice | None = None) -> ElementSet:
    """Largest nilpotent normal subgroup."""
    return _largest_with(G, lattice, is_nilpotent, "nilpotent")
