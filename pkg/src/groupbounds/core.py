"""Finite groups as validated Cayley tables.

Elements are the integers ``0..n-1`` and the identity is always ``0``.
Tables are stored as read-only numpy arrays so that most loops over the
group can be written as fancy indexing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    IndexOutOfRange,
    MissingInverse,
    NoIdentityAtZero,
    NotAssociative,
    NotLatinSquare,
    NotSquare,
)


def _index_dtype(n):
    return np.int16 if n <= np.iinfo(np.int16).max else np.int32


def _frozen(arr):
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """An immutable group given by its multiplication table.

    ``table[a, b]`` is the index of ``a*b`` and ``inverse[a]`` the index of
    ``a**-1``.  Construct through :func:`validate_group` unless the table is
    already known to be a group.
    """

    table: np.ndarray
    inverse: np.ndarray
    name: str = "G"

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self):
        return self.order

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def element_orders(self) -> np.ndarray:
        """Order of every element, computed by walking all cyclic subgroups at once."""
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        idx = np.arange(n)
        cur = idx.copy()
        for k in range(1, n + 1):
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            cur = self.table[cur, idx]
        return orders

    def power_map(self, e: int) -> np.ndarray:
        """Vector of g**e for all g."""
        n = self.order
        base = np.arange(n) if e >= 0 else self.inverse.astype(np.int64)
        e = abs(e)
        result = np.zeros(n, dtype=np.int64)
        while e:
            if e & 1:
                result = self.table[result, base]
            base = self.table[base, base]
            e >>= 1
        return result

    def _check(self, g):
        if not (0 <= g < self.order):
            raise IndexOutOfRange(f"element {g} not in 0..{self.order - 1}", index=g)


@dataclass(frozen=True)
class ElementSet:
    """A subset of the elements of a group of order ``group_order``."""

    group_order: int
    members: frozenset

    def __post_init__(self):
        bad = [m for m in self.members if not (0 <= m < self.group_order)]
        if bad:
            raise IndexOutOfRange(f"members {sorted(bad)[:5]} outside 0..{self.group_order - 1}")

    @classmethod
    def of(cls, group_order: int, members: Iterable[int]) -> "ElementSet":
        return cls(group_order, frozenset(int(m) for m in members))

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "ElementSet":
        return cls(len(mask), frozenset(np.flatnonzero(mask).tolist()))

    def mask(self) -> np.ndarray:
        m = np.zeros(self.group_order, dtype=bool)
        if self.members:
            m[list(self.members)] = True
        return m

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, g):
        return g in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.sorted())

    def __le__(self, other):
        return self.members <= other.members

    def __lt__(self, other):
        return self.members < other.members

    def __repr__(self):
        body = self.sorted()
        if len(body) > 12:
            return f"ElementSet(size={len(body)} of {self.group_order})"
        return f"ElementSet({body})"


@dataclass(frozen=True)
class Morphism:
    """A total map between element indices of two groups.

    ``status`` records what has been verified about the map
    (``"map"``, ``"homomorphism"`` or ``"automorphism"``); it does not take
    part in equality.
    """

    source_order: int
    target_order: int
    images: tuple
    status: str = field(default="map", compare=False)

    def __post_init__(self):
        if len(self.images) != self.source_order:
            raise ValueError("images must have one entry per source element")

    @classmethod
    def identity(cls, n: int) -> "Morphism":
        return cls(n, n, tuple(range(n)), "automorphism")

    def __call__(self, g: int) -> int:
        return self.images[g]

    def array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64)

    def compose(self, other: "Morphism") -> "Morphism":
        """``self ∘ other`` (apply ``other`` first)."""
        if other.target_order != self.source_order:
            raise ValueError("orders do not match for composition")
        return Morphism(other.source_order, self.target_order,
                        tuple(self.images[x] for x in other.images))

    def inverse(self) -> "Morphism":
        inv = [0] * self.source_order
        for x, y in enumerate(self.images):
            inv[y] = x
        return Morphism(self.target_order, self.source_order, tuple(inv), self.status)

    def is_identity(self) -> bool:
        return self.images == tuple(range(self.source_order))


def is_homomorphism(source: FiniteGroup, target: FiniteGroup, images: Sequence[int]) -> bool:
    img = np.asarray(images, dtype=np.int64)
    if img.shape != (source.order,):
        return False
    return bool(np.array_equal(img[source.table], target.table[img[:, None], img[None, :]]))


def is_automorphism(G: FiniteGroup, images: Sequence[int]) -> bool:
    img = np.asarray(images, dtype=np.int64)
    if img.shape != (G.order,) or img[0] != 0:
        return False
    if len(np.unique(img)) != G.order:
        return False
    return is_homomorphism(G, G, img)


def validate_group(table, name: str = "G") -> FiniteGroup:
    """Check that ``table`` is the Cayley table of a group with identity 0.

    Checks run in the order identity, Latin square, inverses, associativity,
    and the first failure raises with the offending indices.
    """
    t = np.asarray(table)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotSquare(f"table must be a nonempty square array, got shape {t.shape}")
    n = t.shape[0]
    if not np.issubdtype(t.dtype, np.integer):
        raise NotSquare("table entries must be integers")
    if t.min() < 0 or t.max() >= n:
        r, c = np.argwhere((t < 0) | (t >= n))[0]
        raise IndexOutOfRange(f"table[{r}][{c}] = {t[r, c]} outside 0..{n - 1}", row=int(r), col=int(c))
    t = t.astype(_index_dtype(n))
    idx = np.arange(n)

    bad = np.flatnonzero((t[0] != idx) | (t[:, 0] != idx))
    if bad.size:
        a = int(bad[0])
        raise NoIdentityAtZero(
            f"index 0 is not an identity: table[0][{a}] = {t[0, a]}, table[{a}][0] = {t[a, 0]}",
            element=a)

    expected = np.tile(idx, (n, 1))
    rows_ok = np.array_equal(np.sort(t, axis=1), expected)
    if not rows_ok:
        r = int(np.flatnonzero((np.sort(t, axis=1) != expected).any(axis=1))[0])
        raise NotLatinSquare(f"row {r} is not a permutation of 0..{n - 1}", row=r)
    if not np.array_equal(np.sort(t, axis=0), expected.T):
        c = int(np.flatnonzero((np.sort(t, axis=0) != expected.T).any(axis=0))[0])
        raise NotLatinSquare(f"column {c} is not a permutation of 0..{n - 1}", column=c)

    inverse = np.zeros(n, dtype=t.dtype)
    for a in range(n):
        right = np.flatnonzero(t[a] == 0)
        if right.size != 1 or t[right[0], a] != 0:
            raise MissingInverse(f"element {a} has no two-sided inverse", element=a)
        inverse[a] = right[0]

    # T[T[a,b], c] == T[a, T[b,c]], one slab of a at a time to bound memory
    for a in range(n):
        lhs = t[t[a]]               # [b, c] -> (a*b)*c
        rhs = t[a][t]               # [b, c] -> a*(b*c)
        if not np.array_equal(lhs, rhs):
            b, c = np.argwhere(lhs != rhs)[0]
            raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", triple=(a, int(b), int(c)))

    return FiniteGroup(_frozen(t), _frozen(inverse), name)


def power(G: FiniteGroup, g: int, e: int) -> int:
    """g**e by binary exponentiation; negative exponents go through the inverse."""
    G._check(g)
    base = g if e >= 0 else int(G.inverse[g])
    e = abs(e)
    result = 0
    while e:
        if e & 1:
            result = int(G.table[result, base])
        base = int(G.table[base, base])
        e >>= 1
    return result


def centralizer(G: FiniteGroup, g: int) -> ElementSet:
    G._check(g)
    return ElementSet.from_mask(G.table[:, g] == G.table[g, :])


def centralizer_sizes(G: FiniteGroup) -> np.ndarray:
    """|C_G(g)| for every g."""
    return (G.table == G.table.T).sum(axis=0)


def center(G: FiniteGroup) -> ElementSet:
    return ElementSet.from_mask((G.table == G.table.T).all(axis=0))


def conjugacy_classes(G: FiniteGroup) -> list[ElementSet]:
    """Partition of the elements into conjugacy classes, ordered by least member."""
    n = G.order
    # conj[g, x] = g x g^-1
    conj = G.table[G.table, G.inverse[:, None]]
    seen = np.zeros(n, dtype=bool)
    classes = []
    for x in range(n):
        if seen[x]:
            continue
        orbit = np.unique(conj[:, x])
        seen[orbit] = True
        classes.append(ElementSet.of(n, orbit.tolist()))
    return classes


def class_number(G: FiniteGroup) -> int:
    return len(conjugacy_classes(G))


def commuting_probability(G: FiniteGroup) -> Fraction:
    """Exact probability that two uniform random elements commute.

    Computed by counting commuting pairs and cross-checked against
    ``#classes / |G|``.
    """
    n = G.order
    pairs = int((G.table == G.table.T).sum())
    cp = Fraction(pairs, n * n)
    by_classes = Fraction(class_number(G), n)
    if cp != by_classes:
        raise AssertionError(f"commuting pairs give {cp} but class count gives {by_classes}")
    return cp


def conjugation_map(G: FiniteGroup, g: int) -> Morphism:
    """The inner automorphism x -> g x g^-1."""
    G._check(g)
    images = G.table[G.table[g, :], G.inverse[g]]
    return Morphism(G.order, G.order, tuple(int(x) for x in images), "automorphism")


def is_subgroup(G: FiniteGroup, H: ElementSet) -> bool:
    if 0 not in H:
        return False
    idx = np.asarray(H.sorted())
    mask = H.mask()
    return bool(mask[G.table[np.ix_(idx, idx)]].all() and mask[G.inverse[idx]].all())


def is_normal(G: FiniteGroup, H: ElementSet) -> bool:
    if not is_subgroup(G, H):
        return False
    idx = np.asarray(H.sorted())
    mask = H.mask()
    # g h g^-1 for all g, h in H
    conj = G.table[G.table[:, idx], G.inverse[:, None]]
    return bool(mask[conj].all())
