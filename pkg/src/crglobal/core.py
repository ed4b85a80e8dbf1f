"""Validated Cayley-table semigroups: Green's relations, complete regularity,
and the natural partial order.

Elements are the indices 0..n-1; a semigroup is just its n x n product table.
Subsets of the carrier are n-bit masks wrapped in :class:`Subset`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    EmptySubsetError,
    EntryOutOfRangeError,
    NotAssociativeError,
    NotCompletelyRegularError,
    NotSubsemigroupError,
    ParentMismatchError,
    TableShapeError,
)


@dataclass(frozen=True)
class CayleyTable:
    order: int
    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def __repr__(self) -> str:
        return f"CayleyTable(order={self.order})"


@dataclass(frozen=True)
class Subset:
    """Subset of a fixed carrier of size ``n``, stored as a bitmask.

    Elements of a power semigroup are nonempty; a zero mask is allowed to
    exist only as the empty-intersection sentinel returned by slicing
    operations, and every product-level operation rejects it.
    """

    n: int
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < (1 << self.n):
            raise ValueError(f"mask {self.mask:#x} out of range for carrier of size {self.n}")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> "Subset":
        mask = 0
        for e in elements:
            if not 0 <= e < n:
                raise ValueError(f"element {e} out of range for carrier of size {n}")
            mask |= 1 << e
        return cls(n, mask)

    @classmethod
    def singleton(cls, n: int, element: int) -> "Subset":
        return cls.of(n, (element,))

    @classmethod
    def full(cls, n: int) -> "Subset":
        return cls(n, (1 << n) - 1)

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def elements(self) -> tuple[int, ...]:
        return tuple(bits(self.mask))

    def __contains__(self, element: int) -> bool:
        return bool((self.mask >> element) & 1)

    def __or__(self, other: "Subset") -> "Subset":
        if self.n != other.n:
            raise ParentMismatchError(f"carrier sizes differ: {self.n} vs {other.n}")
        return Subset(self.n, self.mask | other.mask)

    def __and__(self, other: "Subset") -> "Subset":
        if self.n != other.n:
            raise ParentMismatchError(f"carrier sizes differ: {self.n} vs {other.n}")
        return Subset(self.n, self.mask & other.mask)

    def __le__(self, other: "Subset") -> bool:
        return self.n == other.n and self.mask | other.mask == other.mask

    def __repr__(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements()) + "}"


def bits(mask: int):
    """Yield the indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


@dataclass(frozen=True)
class GreenData:
    lclass: tuple[int, ...]
    rclass: tuple[int, ...]
    hclass: tuple[int, ...]
    dclass: tuple[int, ...]
    idempotent: tuple[bool, ...]
    local_identity: tuple[int | None, ...]
    local_inverse: tuple[int | None, ...]


@dataclass(frozen=True)
class NaturalOrder:
    leq: tuple[tuple[bool, ...], ...]
    maximal: tuple[bool, ...]


def validate_table(raw: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> CayleyTable:
    """Check shape, entry range and associativity; return the frozen table."""
    rows = [tuple(row) for row in raw]
    n = len(rows)
    if n == 0:
        raise TableShapeError("table has no rows")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise TableShapeError(f"row {i} has {len(row)} entries, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise EntryOutOfRangeError(i, j, v, n)
    t = tuple(rows)
    for i in range(n):
        ti = t[i]
        for j in range(n):
            tij = t[ti[j]]
            tj = t[j]
            for k in range(n):
                if tij[k] != ti[tj[k]]:
                    raise NotAssociativeError(i, j, k)
    lab = None
    if labels is not None:
        lab = tuple(str(x) for x in labels)
        if len(lab) != n:
            raise TableShapeError(f"{len(lab)} labels for {n} elements")
    return CayleyTable(n, t, lab)


def idempotents(s: CayleyTable) -> tuple[int, ...]:
    return tuple(a for a in range(s.order) if s.table[a][a] == a)


def _number_classes(keys: list) -> tuple[int, ...]:
    # class ids in order of first occurrence, so the smallest member names its class
    seen: dict = {}
    out = []
    for k in keys:
        if k not in seen:
            seen[k] = len(seen)
        out.append(seen[k])
    return tuple(out)


@lru_cache(maxsize=None)
def green_relations(s: CayleyTable) -> GreenData:
    """L/R/H/D classes by principal-ideal equality, plus per-element group data.

    ``local_identity``/``local_inverse`` are filled exactly for the elements
    whose H-class is a group (detected by a*a staying H-related to a).
    """
    n = s.order
    t = s.table
    rng = range(n)
    lideal = [frozenset({a} | {t[x][a] for x in rng}) for a in rng]
    rideal = [frozenset({a} | {t[a][x] for x in rng}) for a in rng]
    lclass = _number_classes(lideal)
    rclass = _number_classes(rideal)
    hclass = _number_classes(list(zip(lclass, rclass)))

    parent = list(rng)

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    by_class: dict[tuple[str, int], int] = {}
    for a in rng:
        for tag, cls in (("L", lclass[a]), ("R", rclass[a])):
            if (tag, cls) in by_class:
                union(by_class[(tag, cls)], a)
            else:
                by_class[(tag, cls)] = a
    dclass = _number_classes([find(a) for a in rng])

    idem = tuple(t[a][a] == a for a in rng)
    local_identity: list[int | None] = [None] * n
    local_inverse: list[int | None] = [None] * n
    h_members: dict[int, list[int]] = {}
    for a in rng:
        h_members.setdefault(hclass[a], []).append(a)
    for members in h_members.values():
        a0 = members[0]
        if hclass[t[a0][a0]] != hclass[a0]:
            continue
        es = [e for e in members if idem[e]]
        if len(es) != 1:
            continue  # a group H-class has exactly one idempotent
        e = es[0]
        for a in members:
            local_identity[a] = e
            for x in members:
                if t[a][x] == e and t[x][a] == e:
                    local_inverse[a] = x
                    break
    return GreenData(lclass, rclass, hclass, dclass, idem, tuple(local_identity), tuple(local_inverse))


@lru_cache(maxsize=None)
def j_classes(s: CayleyTable) -> tuple[int, ...]:
    """J classes via two-sided principal ideals, computed independently of D."""
    n = s.order
    t = s.table
    rng = range(n)
    ideals = []
    for a in rng:
        ideal = {a}
        ideal.update(t[x][a] for x in rng)
        ideal.update(t[a][x] for x in rng)
        ideal.update(t[t[x][a]][y] for x in rng for y in rng)
        ideals.append(frozenset(ideal))
    return _number_classes(ideals)


def is_completely_regular(s: CayleyTable) -> bool:
    """True iff every H-class is a group."""
    g = green_relations(s)
    return all(e is not None for e in g.local_identity)


def is_completely_simple(s: CayleyTable) -> bool:
    """True iff the identity a = (a*x)^0 * a holds for all a, x."""
    if not is_completely_regular(s):
        raise NotCompletelyRegularError("complete simplicity is checked for completely regular input")
    g = green_relations(s)
    t = s.table
    for a in range(s.order):
        for x in range(s.order):
            e = g.local_identity[t[a][x]]
            if t[e][a] != a:
                return False
    return True


def is_left_zero(s: CayleyTable) -> bool:
    return all(s.table[i][j] == i for i in range(s.order) for j in range(s.order))


def is_right_zero(s: CayleyTable) -> bool:
    return all(s.table[i][j] == j for i in range(s.order) for j in range(s.order))


@lru_cache(maxsize=None)
def natural_order(s: CayleyTable, idempotent_elements: tuple[int, ...] | None = None) -> NaturalOrder:
    """a <= b iff a = e*b = b*f for some idempotents e, f."""
    n = s.order
    t = s.table
    es = idempotents(s) if idempotent_elements is None else idempotent_elements
    leq = []
    for a in range(n):
        row = []
        for b in range(n):
            row.append(any(t[e][b] == a for e in es) and any(t[b][f] == a for f in es))
        leq.append(tuple(row))
    maximal = tuple(not any(leq[a][b] and b != a for b in range(n)) for a in range(n))
    return NaturalOrder(tuple(leq), maximal)


def is_subsemigroup_mask(s: CayleyTable, mask: int) -> bool:
    if mask == 0:
        raise EmptySubsetError("closure is only defined for nonempty subsets")
    t = s.table
    for i in bits(mask):
        row = t[i]
        for j in bits(mask):
            if not (mask >> row[j]) & 1:
                return False
    return True


def restrict(s: CayleyTable, elements: Sequence[int]) -> CayleyTable:
    """Sub-table on ``elements`` (which must be closed), reindexed by position."""
    elems = list(elements)
    index = {e: i for i, e in enumerate(elems)}
    rows = []
    for a in elems:
        row = []
        for b in elems:
            p = s.table[a][b]
            if p not in index:
                raise NotSubsemigroupError(f"{a}*{b}={p} escapes the subset")
            row.append(index[p])
        rows.append(tuple(row))
    lab = tuple(s.label(e) for e in elems) if s.labels is not None else None
    return CayleyTable(len(elems), tuple(rows), lab)
