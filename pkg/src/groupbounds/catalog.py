"""Named group families and the plain-text Cayley table format.

Labelling conventions (relied on by tests and by ``minimal_generators``):

* ``cyclic(n)``: index k is g**k, so index 1 generates.
* ``dihedral(n)``: index k + n*f is r**k s**f, with s r s = r**-1.
* ``dicyclic(n)``: index k + 2n*f is a**k x**f, with x**2 = a**n and
  x a x**-1 = a**-1.  ``dicyclic(2)`` is Q8 with 1=i, 2=-1, 4=j, 5=k.
* ``symmetric(n)`` / ``alternating(n)``: permutations of range(n) in
  lexicographic order, composed right to left.
* ``elementary_abelian(p, k)``: base-p digit vectors.
* ``heisenberg(p)``: (a, b, c) -> a + p*b + p*p*c with
  (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b').
* ``semidirect_cyclic(n, m, k)``: index i + n*j is a**i b**j, b a b**-1 = a**k.
* ``direct_product``: index i*|B| + j is (a_i, b_j).
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import FiniteGroup, validate_group
from .errors import CayleySyntaxError, InvalidSpec, OrderCapExceeded, OrderMismatch

DEFAULT_ORDER_CAP = 256

FAMILIES = (
    "cyclic", "dihedral", "dicyclic", "symmetric", "alternating",
    "elementary_abelian", "heisenberg", "direct_product", "semidirect_cyclic", "imported",
)

_ARITY = {
    "cyclic": 1, "dihedral": 1, "dicyclic": 1, "symmetric": 1, "alternating": 1,
    "elementary_abelian": 2, "heisenberg": 1, "semidirect_cyclic": 3,
}


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class GroupSpec:
    family: str
    parameters: tuple = ()
    factors: tuple = ()
    source_path: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "parameters", tuple(int(p) for p in self.parameters))
        object.__setattr__(self, "factors", tuple(self.factors))
        self._validate()

    def _validate(self):
        fam, ps = self.family, self.parameters
        if fam not in FAMILIES:
            raise InvalidSpec(f"unknown family {fam!r}")
        if fam == "imported":
            if not self.source_path:
                raise InvalidSpec("imported groups need a source_path")
            return
        if fam == "direct_product":
            if len(self.factors) < 2:
                raise InvalidSpec("direct_product needs at least two factors")
            return
        if len(ps) != _ARITY[fam]:
            raise InvalidSpec(f"{fam} takes {_ARITY[fam]} parameter(s), got {len(ps)}")
        if fam == "cyclic" and ps[0] < 1:
            raise InvalidSpec("cyclic(n) needs n >= 1")
        if fam in ("dihedral", "dicyclic") and ps[0] < (1 if fam == "dihedral" else 2):
            raise InvalidSpec(f"{fam}({ps[0]}) is not defined")
        if fam in ("symmetric", "alternating") and not 1 <= ps[0] <= 6:
            raise InvalidSpec(f"{fam}(n) needs 1 <= n <= 6")
        if fam == "elementary_abelian":
            p, k = ps
            if not _is_prime(p) or k < 1:
                raise InvalidSpec("elementary_abelian(p, k) needs p prime and k >= 1")
        if fam == "heisenberg":
            p = ps[0]
            if not (_is_prime(p) and p % 2 == 1 and p <= 7):
                raise InvalidSpec("heisenberg(p) needs p an odd prime <= 7")
        if fam == "semidirect_cyclic":
            n, m, k = ps
            if n < 1 or m < 1:
                raise InvalidSpec("semidirect_cyclic(n, m, k) needs n, m >= 1")
            if pow(k, m, n) != 1 % n:
                raise InvalidSpec(f"{k}^{m} is not 1 mod {n}", n=n, m=m, k=k)

    @property
    def order(self) -> int:
        fam, ps = self.family, self.parameters
        if fam == "cyclic":
            return ps[0]
        if fam == "dihedral":
            return 2 * ps[0]
        if fam == "dicyclic":
            return 4 * ps[0]
        if fam == "symmetric":
            return math.factorial(ps[0])
        if fam == "alternating":
            return max(1, math.factorial(ps[0]) // 2)
        if fam == "elementary_abelian":
            return ps[0] ** ps[1]
        if fam == "heisenberg":
            return ps[0] ** 3
        if fam == "semidirect_cyclic":
            return ps[0] * ps[1]
        if fam == "direct_product":
            return math.prod(f.order for f in self.factors)
        raise InvalidSpec("order of an imported group is only known after parsing")

    def __str__(self):
        if self.family == "direct_product":
            return "*".join(str(f) for f in self.factors)
        if self.family == "imported":
            return f"file:{self.source_path}"
        return f"{self.family}:{','.join(map(str, self.parameters))}"


def parse_spec(text: str) -> GroupSpec:
    """Parse ``family:p1,p2`` / ``A*B`` (direct product) / ``file:path``."""
    text = text.strip()
    if text.startswith("file:"):
        return GroupSpec("imported", source_path=text[5:])
    if "*" in text:
        return GroupSpec("direct_product", factors=tuple(parse_spec(t) for t in text.split("*")))
    m = re.fullmatch(r"([a-z_]+):(-?\d+(?:,-?\d+)*)", text)
    if not m:
        raise InvalidSpec(f"cannot parse group spec {text!r}")
    return GroupSpec(m.group(1), tuple(int(x) for x in m.group(2).split(",")))


# --- table builders -------------------------------------------------------

def _from_elements(elements, mul):
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            table[i, j] = index[mul(x, y)]
    return table


def cyclic_table(n):
    idx = np.arange(n)
    return (idx[:, None] + idx[None, :]) % n


def dihedral_table(n):
    elements = [(k, f) for f in range(2) for k in range(n)]

    def mul(x, y):
        (k, f), (m, g) = x, y
        return ((k + (-m if f else m)) % n, (f + g) % 2)

    return _from_elements(elements, mul)


def dicyclic_table(n):
    elements = [(k, f) for f in range(2) for k in range(2 * n)]

    def mul(x, y):
        (k, f), (m, g) = x, y
        if not f:
            return ((k + m) % (2 * n), g)
        if not g:
            return ((k - m) % (2 * n), 1)
        return ((k - m + n) % (2 * n), 0)

    return _from_elements(elements, mul)


def _perm_mul(p, q):
    return tuple(p[q[i]] for i in range(len(q)))


def _parity(p):
    seen, sign = set(), 0
    for i in range(len(p)):
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length:
            sign += length - 1
    return sign % 2


def symmetric_table(n, even_only=False):
    elements = [p for p in itertools.permutations(range(n)) if not even_only or _parity(p) == 0]
    return _from_elements(elements, _perm_mul)


def elementary_abelian_table(p, k):
    digits = np.array(list(itertools.product(range(p), repeat=k)))[:, ::-1]
    weights = p ** np.arange(k)
    sums = (digits[:, None, :] + digits[None, :, :]) % p
    return sums @ weights


def heisenberg_table(p):
    elements = [(a, b, c) for c in range(p) for b in range(p) for a in range(p)]

    def mul(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    return _from_elements(elements, mul)


def semidirect_cyclic_table(n, m, k):
    elements = [(i, j) for j in range(m) for i in range(n)]

    def mul(x, y):
        (i, j), (i2, j2) = x, y
        return ((i + pow(k, j, n) * i2) % n, (j + j2) % m)

    return _from_elements(elements, mul)


def direct_product_table(A: FiniteGroup, B: FiniteGroup):
    a, b = A.table.astype(np.int64), B.table.astype(np.int64)
    nb = B.order
    big = a[:, None, :, None] * nb + b[None, :, None, :]
    return big.reshape(A.order * nb, A.order * nb)


def construct(spec: GroupSpec | str, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build and validate the group described by ``spec``."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    fam, ps = spec.family, spec.parameters
    if fam == "imported":
        G = parse_cayley_file(spec.source_path)
        if G.order > order_cap:
            raise OrderCapExceeded(f"imported group has order {G.order} > {order_cap}")
        return G
    if spec.order > order_cap:
        raise OrderCapExceeded(f"{spec} has order {spec.order} > {order_cap}", order=spec.order, cap=order_cap)
    if fam == "cyclic":
        table = cyclic_table(ps[0])
    elif fam == "dihedral":
        table = dihedral_table(ps[0])
    elif fam == "dicyclic":
        table = dicyclic_table(ps[0])
    elif fam == "symmetric":
        table = symmetric_table(ps[0])
    elif fam == "alternating":
        table = symmetric_table(ps[0], even_only=True)
    elif fam == "elementary_abelian":
        table = elementary_abelian_table(*ps)
    elif fam == "heisenberg":
        table = heisenberg_table(ps[0])
    elif fam == "semidirect_cyclic":
        table = semidirect_cyclic_table(*ps)
    else:
        factors = [construct(f, order_cap) for f in spec.factors]
        G = factors[0]
        for H in factors[1:]:
            G = validate_group(direct_product_table(G, H), name=f"{G.name}*{H.name}")
        return validate_group(G.table, name=str(spec))
    return validate_group(table, name=str(spec))


# --- Cayley files -----------------------------------------------------------

def format_cayley(G: FiniteGroup) -> str:
    lines = [f"order {G.order}"]
    lines += [" ".join(str(int(x)) for x in row) for row in G.table]
    return "\n".join(lines) + "\n"


def parse_cayley(text: str, name: str = "imported") -> FiniteGroup:
    """Parse the line-based table format.

    Line 1 is ``order N``; then N rows of N space-separated indices.
    Lines starting with ``#`` are comments.  A trailing newline is required.
    """
    if not text.endswith("\n"):
        raise CayleySyntaxError("missing trailing newline", line=text.count("\n") + 1, column=len(text.rsplit("\n", 1)[-1]) + 1)
    rows = []
    order = None
    for lineno, line in enumerate(text[:-1].split("\n"), start=1):
        if line.startswith("#"):
            continue
        if order is None:
            m = re.fullmatch(r"order ([1-9][0-9]*)", line)
            if not m:
                raise CayleySyntaxError(f"line {lineno}: expected 'order N'", line=lineno, column=1)
            order = int(m.group(1))
            continue
        tokens = line.split(" ")
        row = []
        col = 1
        for tok in tokens:
            if not re.fullmatch(r"0|[1-9][0-9]*", tok):
                raise CayleySyntaxError(f"line {lineno}, column {col}: bad index {tok!r}", line=lineno, column=col)
            row.append(int(tok))
            col += len(tok) + 1
        if len(row) != order:
            raise OrderMismatch(f"line {lineno}: expected {order} entries, got {len(row)}", line=lineno)
        rows.append(row)
    if order is None:
        raise CayleySyntaxError("no 'order N' header", line=1, column=1)
    if len(rows) != order:
        raise OrderMismatch(f"expected {order} rows, got {len(rows)}")
    return validate_group(np.array(rows, dtype=np.int64), name=name)


def parse_cayley_file(path) -> FiniteGroup:
    path = Path(path)
    return parse_cayley(path.read_text(encoding="ascii"), name=f"file:{path.name}")


def serialize_cayley(G: FiniteGroup, path) -> None:
    Path(path).write_text(format_cayley(G), encoding="ascii", newline="\n")


# --- default scan universe --------------------------------------------------

def _scan_specs():
    specs = [f"cyclic:{n}" for n in range(1, 33)]
    specs += [f"dihedral:{n}" for n in range(3, 17)]
    specs += [f"dicyclic:{n}" for n in range(2, 9)]
    specs += ["symmetric:3", "symmetric:4", "alternating:4"]
    specs += ["elementary_abelian:2,2", "elementary_abelian:2,3", "elementary_abelian:2,4",
              "elementary_abelian:2,5", "elementary_abelian:3,2", "elementary_abelian:3,3",
              "elementary_abelian:5,2"]
    specs += ["heisenberg:3"]
    specs += [
        "semidirect_cyclic:7,3,2", "semidirect_cyclic:5,4,2", "semidirect_cyclic:3,8,2",
        "semidirect_cyclic:8,2,3", "semidirect_cyclic:8,2,5", "semidirect_cyclic:4,4,3",
        "semidirect_cyclic:9,3,4", "semidirect_cyclic:16,2,7", "semidirect_cyclic:16,2,9",
        "semidirect_cyclic:13,3,3",
    ]
    specs += [
        "cyclic:2*cyclic:4", "cyclic:2*cyclic:8", "cyclic:4*cyclic:4", "cyclic:2*cyclic:2*cyclic:4",
        "cyclic:4*cyclic:8", "cyclic:2*cyclic:4*cyclic:4",
        "cyclic:2*symmetric:3", "cyclic:3*symmetric:3", "cyclic:4*symmetric:3", "cyclic:5*symmetric:3",
        "cyclic:3*dihedral:5",
        "cyclic:2*dihedral:4", "cyclic:2*dicyclic:2", "cyclic:3*dicyclic:2", "cyclic:3*dihedral:4",
        "cyclic:2*alternating:4", "cyclic:2*dihedral:6", "cyclic:2*dicyclic:3",
        "cyclic:2*dihedral:8", "cyclic:2*dicyclic:4", "cyclic:4*dihedral:4", "cyclic:4*dicyclic:2",
        "cyclic:2*cyclic:2*dihedral:4", "cyclic:2*cyclic:2*dicyclic:2",
        "cyclic:2*semidirect_cyclic:5,4,2", "cyclic:3*semidirect_cyclic:3,4,2",
    ]
    return specs


ODD_ORDER_SHOWCASE = (
    "semidirect_cyclic:7,3,2", "heisenberg:3", "semidirect_cyclic:13,3,3",
    "cyclic:27", "elementary_abelian:3,3",
)


def default_scan_set(max_order: int = 32) -> list[GroupSpec]:
    """The standard universe: the catalog groups of order <= ``max_order``
    plus the odd-order showcase, sorted by (order, name)."""
    specs = {}
    for text in _scan_specs() + list(ODD_ORDER_SHOWCASE):
        spec = parse_spec(text)
        if spec.order <= max_order or (text in ODD_ORDER_SHOWCASE and max_order >= 32):
            specs[str(spec)] = spec
    return sorted(specs.values(), key=lambda s: (s.order, str(s)))
