"""The power semigroup of a finite semigroup, computed lazily over bitmasks.

The full multiplication table of the power semigroup is never materialized
here; products are memoized per (mask, mask) pair, and the order/cover/Green
structure is computed on demand.  CPython dict operations make the memo safe
for concurrent readers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import CayleyTable, Subset, bits
from .errors import (
    EmptySubsetError,
    NotComparableError,
    NotIdempotentError,
    NotLeftZeroError,
    OrderTooLargeError,
    ParentMismatchError,
)
from .structure import Decomposition, id_set_mask


@dataclass(frozen=True)
class PowerGreen:
    """Green classes of the power semigroup, indexed by mask - 1."""

    lclass: tuple[int, ...]
    rclass: tuple[int, ...]
    hclass: tuple[int, ...]
    dclass: tuple[int, ...]


@dataclass(frozen=True)
class EpOrderCover:
    """A validated covering pair in the idempotent-subset order.

    ``lower < upper`` with nothing of the given kind strictly between; build
    through :func:`cover_of`, which performs the betweenness scan.
    """

    lower: Subset
    upper: Subset
    kind: str


class Power:
    """Power semigroup of ``base`` with memoized subset products."""

    def __init__(self, base: CayleyTable, max_enum_order: int = 16):
        self.base = base
        self.n = base.order
        self.full_mask = (1 << self.n) - 1
        self.max_enum_order = max_enum_order
        self._memo: dict[tuple[int, int], int] = {}
        self._ep: list[int] | None = None
        self._lideal: dict[int, frozenset[int]] = {}
        self._rideal: dict[int, frozenset[int]] = {}
        self._green: PowerGreen | None = None

    # -- products ---------------------------------------------------------

    def product_mask(self, am: int, bm: int) -> int:
        key = (am, bm)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        t = self.base.table
        out = 0
        for i in bits(am):
            row = t[i]
            for j in bits(bm):
                out |= 1 << row[j]
        self._memo[key] = out
        return out

    def _check(self, a: Subset) -> int:
        if a.n != self.n:
            raise ParentMismatchError(f"subset of size-{a.n} carrier in order-{self.n} power semigroup")
        if a.mask == 0:
            raise EmptySubsetError("the power semigroup contains only nonempty subsets")
        return a.mask

    def product(self, a: Subset, b: Subset) -> Subset:
        return Subset(self.n, self.product_mask(self._check(a), self._check(b)))

    def is_idempotent_mask(self, m: int) -> bool:
        return self.product_mask(m, m) == m

    def is_idempotent(self, a: Subset) -> bool:
        return self.is_idempotent_mask(self._check(a))

    # -- idempotent subsets and their order --------------------------------

    def idempotent_masks(self) -> list[int]:
        if self.n > self.max_enum_order:
            raise OrderTooLargeError(f"order {self.n} exceeds the enumeration bound {self.max_enum_order}")
        if self._ep is None:
            self._ep = [m for m in range(1, self.full_mask + 1) if self.product_mask(m, m) == m]
        return self._ep

    def enumerate_ep(self) -> list[Subset]:
        return [Subset(self.n, m) for m in self.idempotent_masks()]

    def ep_leq_mask(self, am: int, bm: int) -> bool:
        if not (self.is_idempotent_mask(am) and self.is_idempotent_mask(bm)):
            raise NotIdempotentError("the order is defined on idempotent subsets only")
        return self.product_mask(am, bm) == am and self.product_mask(bm, am) == am

    def ep_leq(self, a: Subset, b: Subset) -> bool:
        return self.ep_leq_mask(self._check(a), self._check(b))

    def ep_lt_mask(self, am: int, bm: int) -> bool:
        return am != bm and self.ep_leq_mask(am, bm)

    def covers(self, a: Subset, b: Subset, kind: str = "ep") -> bool:
        """True iff nothing of the given kind sits strictly between a and b.

        kind: "ep" scans all idempotent subsets, "a2" the breakable
        subsemigroups, "a2bar" the breakable ones supported on one component.
        """
        am, bm = self._check(a), self._check(b)
        if not self.ep_lt_mask(am, bm):
            raise NotComparableError("cover checks need a strictly ordered pair")
        pool = self._cover_pool(kind)
        for cm in pool:
            if cm in (am, bm):
                continue
            if self.ep_lt_mask(am, cm) and self.ep_lt_mask(cm, bm):
                return False
        return True

    def _cover_pool(self, kind: str) -> list[int]:
        if kind == "ep":
            return self.idempotent_masks()
        # imported here to avoid an import cycle with the breakable module
        from .breakable import enumerate_a2_masks, enumerate_a2bar_masks

        if kind == "a2":
            return enumerate_a2_masks(self.base, self.max_enum_order)
        if kind == "a2bar":
            return enumerate_a2bar_masks(self.base, self.max_enum_order)
        raise ValueError(f"unknown cover kind {kind!r}")

    # -- one-sided ideals and Green structure ------------------------------

    def right_ideal(self, a: Subset, adjoin: bool = False) -> Subset:
        m = self.product_mask(self._check(a), self.full_mask)
        return Subset(self.n, m | a.mask if adjoin else m)

    def left_ideal(self, a: Subset, adjoin: bool = False) -> Subset:
        m = self.product_mask(self.full_mask, self._check(a))
        return Subset(self.n, m | a.mask if adjoin else m)

    def l_ideal_set(self, m: int) -> frozenset[int]:
        """All subsets of the form X*A together with A itself."""
        hit = self._lideal.get(m)
        if hit is None:
            hit = frozenset({m} | {self.product_mask(x, m) for x in range(1, self.full_mask + 1)})
            self._lideal[m] = hit
        return hit

    def r_ideal_set(self, m: int) -> frozenset[int]:
        hit = self._rideal.get(m)
        if hit is None:
            hit = frozenset({m} | {self.product_mask(m, x) for x in range(1, self.full_mask + 1)})
            self._rideal[m] = hit
        return hit

    def h_class(self, a: Subset, dec: Decomposition | None = None) -> list[Subset]:
        """H-class of ``a`` in the power semigroup, by one-sided ideal equality.

        With a decomposition at hand the candidate scan is restricted to
        subsets with the same component support, which is sound because
        D-related subsets share their support.
        """
        am = self._check(a)
        if dec is not None:
            want = id_set_mask(am, dec)
            candidates = [m for m in range(1, self.full_mask + 1) if id_set_mask(m, dec) == want]
        else:
            candidates = list(range(1, self.full_mask + 1))
        my_l = self.l_ideal_set(am)
        my_r = self.r_ideal_set(am)
        return [
            Subset(self.n, m)
            for m in candidates
            if self.l_ideal_set(m) == my_l and self.r_ideal_set(m) == my_r
        ]

    def power_green(self, max_order: int = 8) -> PowerGreen:
        """Green classes over every nonempty subset; exponential, small orders only."""
        if self.n > max_order:
            raise OrderTooLargeError(f"order {self.n} exceeds the power-Green bound {max_order}")
        if self._green is not None:
            return self._green
        masks = range(1, self.full_mask + 1)
        lkeys = [self.l_ideal_set(m) for m in masks]
        rkeys = [self.r_ideal_set(m) for m in masks]
        lclass = _number(lkeys)
        rclass = _number(rkeys)
        hclass = _number(list(zip(lclass, rclass)))
        parent = list(range(self.full_mask))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        first: dict[tuple[str, int], int] = {}
        for i in range(self.full_mask):
            for tag, cls in (("L", lclass[i]), ("R", rclass[i])):
                if (tag, cls) in first:
                    a, b = find(first[(tag, cls)]), find(i)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
                else:
                    first[(tag, cls)] = i
        dclass = _number([find(i) for i in range(self.full_mask)])
        self._green = PowerGreen(lclass, rclass, hclass, dclass)
        return self._green


def _number(keys: list) -> tuple[int, ...]:
    seen: dict = {}
    out = []
    for k in keys:
        if k not in seen:
            seen[k] = len(seen)
        out.append(seen[k])
    return tuple(out)


def cover_of(p: Power, lower: Subset, upper: Subset, kind: str = "ep") -> EpOrderCover:
    """Validate and package a covering pair; raises when something intervenes."""
    if not p.covers(lower, upper, kind):
        raise NotComparableError(f"{lower!r} < {upper!r} has an intermediate element of kind {kind!r}")
    return EpOrderCover(lower, upper, kind)


def h_class_of_idempotent_singleton(p: Power, e: int, dec: Decomposition | None = None) -> list[Subset]:
    """H-class of the singleton {e} in the power semigroup, e idempotent."""
    if p.base.table[e][e] != e:
        raise NotIdempotentError(f"element {e} is not idempotent")
    return p.h_class(Subset.singleton(p.n, e), dec)


def h_class_of_left_zero_set(p: Power, e_set: Subset, dec: Decomposition | None = None) -> list[Subset]:
    """H-class of a left zero subsemigroup in the power semigroup."""
    if e_set.n != p.n:
        raise ParentMismatchError("subset belongs to a different carrier")
    if e_set.is_empty:
        raise EmptySubsetError("need a nonempty left zero subsemigroup")
    t = p.base.table
    for i in bits(e_set.mask):
        for j in bits(e_set.mask):
            if t[i][j] != i:
                raise NotLeftZeroError(f"{i}*{j}={t[i][j]}, so the subset is not left zero")
    return p.h_class(e_set, dec)
