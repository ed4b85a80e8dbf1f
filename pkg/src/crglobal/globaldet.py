"""From a power-semigroup isomorphism to an element-level isomorphism.

The pipeline: search isomorphisms between two tables (or between their power
semigroups), read off the induced semilattice isomorphism on components,
partition each left/right zero component by sandwich behaviour, and assemble
an element bijection that is verified to be an isomorphism.  Every structural
claim used along the way can be checked exhaustively by the statement suite.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .breakable import enumerate_a2_masks, enumerate_a2bar_masks, enumerate_a3_masks
from .core import CayleyTable, Subset, bits, green_relations, natural_order
from .errors import (
    BlockSizeMismatchError,
    EtaNotMorphismError,
    FalsificationError,
    OrderTooLargeError,
    PsiImageNotSingletonError,
    SearchBudgetExceededError,
    ThetaNotSingletonError,
    WrongComponentKindError,
)
from .power import Power
from .structure import CS0, LEFT_ZERO, RIGHT_ZERO, Decomposition, decompose, id_set_mask


@dataclass(frozen=True)
class IsoMap:
    """A verified bijection between two carriers of the same kind.

    kind is "elements", "subsets" (indexed by mask - 1) or "components".
    """

    kind: str
    forward: tuple[int, ...]
    inverse: tuple[int, ...]
    verified: bool = False

    def map(self, i: int) -> int:
        return self.forward[i]

    def inv(self, i: int) -> int:
        return self.inverse[i]

    def __len__(self) -> int:
        return len(self.forward)


def _invert(forward) -> tuple[int, ...]:
    inv = [0] * len(forward)
    for i, v in enumerate(forward):
        inv[v] = i
    return tuple(inv)


def verify_morphism(a: CayleyTable, b: CayleyTable, forward) -> bool:
    if sorted(forward) != list(range(b.order)) or a.order != b.order:
        return False
    ta, tb = a.table, b.table
    for x in range(a.order):
        for y in range(a.order):
            if forward[ta[x][y]] != tb[forward[x]][forward[y]]:
                return False
    return True


def psi_image_mask(psi: IsoMap, mask: int) -> int:
    return psi.forward[mask - 1] + 1


def psi_preimage_mask(psi: IsoMap, mask: int) -> int:
    return psi.inverse[mask - 1] + 1


# -- invariant colouring and backtracking search ----------------------------


def _order_profile(t: CayleyTable, x: int) -> tuple[int, int]:
    # (tail length, cycle length) of x, x^2, x^3, ...
    seen = {x: 1}
    y = x
    k = 1
    while True:
        y = t.table[y][x]
        k += 1
        if y in seen:
            return (seen[y], k - seen[y])
        seen[y] = k


def _base_signature(t: CayleyTable) -> list:
    g = green_relations(t)
    lsz = Counter(g.lclass)
    rsz = Counter(g.rclass)
    hsz = Counter(g.hclass)
    dsz = Counter(g.dclass)
    return [
        (
            _order_profile(t, x),
            g.idempotent[x],
            lsz[g.lclass[x]],
            rsz[g.rclass[x]],
            hsz[g.hclass[x]],
            dsz[g.dclass[x]],
        )
        for x in range(t.order)
    ]


def _canon_pair(rawa: list, rawb: list) -> tuple[list[int], list[int]]:
    ranks = {v: i for i, v in enumerate(sorted(set(rawa) | set(rawb)))}
    return [ranks[v] for v in rawa], [ranks[v] for v in rawb]


def _refine_once(t: CayleyTable, colors: list[int]) -> list:
    n = t.order
    tbl = t.table
    out = []
    for x in range(n):
        neigh = sorted(Counter((colors[y], colors[tbl[x][y]], colors[tbl[y][x]]) for y in range(n)).items())
        out.append((colors[x], tuple(neigh)))
    return out


def _joint_colors(a: CayleyTable, b: CayleyTable) -> tuple[list[int], list[int]]:
    """Colour both tables together so equal colours mean 'possibly matched'.

    Iterated refinement over the multiplication structure; sound for pruning
    because colours are computed from isomorphism-invariant data only.
    """
    ca, cb = _canon_pair(_base_signature(a), _base_signature(b))
    while True:
        nca, ncb = _canon_pair(_refine_once(a, ca), _refine_once(b, cb))
        if len(set(nca) | set(ncb)) == len(set(ca) | set(cb)):
            return nca, ncb
        ca, cb = nca, ncb


def find_isomorphisms(
    a: CayleyTable,
    b: CayleyTable,
    limit: int = 8,
    max_nodes: int = 2_000_000,
    kind: str = "elements",
) -> list[IsoMap]:
    """Up to ``limit`` isomorphisms from ``a`` onto ``b``, by backtracking.

    Candidates are pruned by joint colour refinement and assignments are
    propagated through the product, so the search completes quickly on the
    sizes handled here.  An exhausted search returning no map means the
    tables are not isomorphic; running out of ``max_nodes`` raises instead.
    """
    if a.order != b.order:
        return []
    n = a.order
    ca, cb = _joint_colors(a, b)
    if sorted(ca) != sorted(cb):
        return []
    cand = [tuple(j for j in range(n) if cb[j] == ca[i]) for i in range(n)]
    ta, tb = a.table, b.table
    fwd = [-1] * n
    back = [-1] * n
    results: list[tuple[int, ...]] = []
    nodes = 0

    def assign(i: int, j: int, trail: list[int]) -> bool:
        stack = [(i, j)]
        while stack:
            x, y = stack.pop()
            if fwd[x] >= 0:
                if fwd[x] != y:
                    return False
                continue
            if back[y] >= 0 or cb[y] != ca[x]:
                return False
            fwd[x] = y
            back[y] = x
            trail.append(x)
            for z in range(n):
                fz = fwd[z]
                if fz >= 0:
                    stack.append((ta[x][z], tb[y][fz]))
                    stack.append((ta[z][x], tb[fz][y]))
        return True

    def dfs() -> None:
        nonlocal nodes
        best_i = -1
        best: tuple[int, ...] | None = None
        for i in range(n):
            if fwd[i] < 0:
                viable = tuple(j for j in cand[i] if back[j] < 0)
                if best is None or len(viable) < len(best):
                    best = viable
                    best_i = i
                    if len(viable) <= 1:
                        break
        if best_i < 0:
            results.append(tuple(fwd))
            return
        for j in best:
            nodes += 1
            if nodes > max_nodes:
                raise SearchBudgetExceededError(f"isomorphism search exceeded {max_nodes} nodes")
            trail: list[int] = []
            if assign(best_i, j, trail):
                dfs()
            for x in trail:
                back[fwd[x]] = -1
                fwd[x] = -1
            if len(results) >= limit:
                return

    dfs()
    out = []
    for forward in results:
        assert verify_morphism(a, b, forward)
        out.append(IsoMap(kind, forward, _invert(forward), verified=True))
    return out


# -- power tables and lifting ------------------------------------------------


def power_table(s: CayleyTable, bound: int = 1 << 15) -> CayleyTable:
    """The power semigroup materialized as a table over mask-1 indices."""
    size = (1 << s.order) - 1
    if size > bound:
        raise OrderTooLargeError(f"power semigroup has {size} elements, bound is {bound}")
    p = power_of(s)
    rows = tuple(
        tuple(p.product_mask(am, bm) - 1 for bm in range(1, size + 1)) for am in range(1, size + 1)
    )
    labels = tuple("{" + ",".join(s.label(e) for e in bits(m)) + "}" for m in range(1, size + 1))
    return CayleyTable(size, rows, labels)


@lru_cache(maxsize=None)
def power_of(s: CayleyTable) -> Power:
    return Power(s)


def lift(phi: IsoMap) -> IsoMap:
    """Lift an element bijection to the subset level, elementwise."""
    n = len(phi.forward)
    size = (1 << n) - 1
    forward = []
    for mask in range(1, size + 1):
        img = 0
        for i in bits(mask):
            img |= 1 << phi.forward[i]
        forward.append(img - 1)
    return IsoMap("subsets", tuple(forward), _invert(forward), verified=phi.verified)


def is_singleton_preserving(psi: IsoMap, n: int) -> bool:
    return all(psi_image_mask(psi, 1 << i).bit_count() == 1 for i in range(n))


# -- the component map -------------------------------------------------------


def extract_theta(psi: IsoMap, dec_a: Decomposition, dec_b: Decomposition) -> IsoMap:
    """Semilattice isomorphism induced on components by a subset isomorphism.

    Each component's full subset must map into a single component on the
    other side, the induced map must be a semilattice isomorphism, and the
    subset map must carry the subsets of each component exactly onto the
    subsets of its image; any failure raises, flagging that ``psi`` is not a
    power-semigroup isomorphism of completely regular semigroups.
    """
    if not psi.verified or psi.kind != "subsets":
        raise ThetaNotSingletonError("component extraction needs a verified subset isomorphism")
    ka, kb = dec_a.count, dec_b.count
    if ka != kb:
        raise ThetaNotSingletonError(f"component counts differ: {ka} vs {kb}")
    forward = []
    for alpha in range(ka):
        img = psi_image_mask(psi, dec_a.components[alpha].mask)
        ids = id_set_mask(img, dec_b)
        if len(ids) != 1:
            raise ThetaNotSingletonError(f"component {alpha} maps across {sorted(ids)}")
        forward.append(next(iter(ids)))
    if sorted(forward) != list(range(kb)):
        raise ThetaNotSingletonError("component map is not a bijection")
    ya, yb = dec_a.semilattice.table, dec_b.semilattice.table
    for x in range(ka):
        for y in range(ka):
            if forward[ya[x][y]] != yb[forward[x]][forward[y]]:
                raise ThetaNotSingletonError("component map is not a homomorphism")
    for alpha in range(ka):
        amask = dec_a.components[alpha].mask
        bmask = dec_b.components[forward[alpha]].mask
        if amask.bit_count() != bmask.bit_count():
            raise ThetaNotSingletonError(f"components {alpha} and {forward[alpha]} have different sizes")
        images = set()
        sub = amask
        while sub:
            img = psi_image_mask(psi, sub)
            if img & ~bmask:
                raise ThetaNotSingletonError(f"a subset of component {alpha} maps outside its image component")
            images.add(img)
            sub = (sub - 1) & amask
        if len(images) != (1 << bmask.bit_count()) - 1:
            raise ThetaNotSingletonError(f"subset map is not onto the subsets of component {forward[alpha]}")
    return IsoMap("components", tuple(forward), _invert(forward), verified=True)


# -- sandwich partitions on zero components ----------------------------------


@dataclass(frozen=True)
class RhoPartition:
    """Partition of one left/right zero component by sandwich behaviour.

    Two elements fall in one block when both are maximal for the natural
    order and conjugating by them agrees against every element of every
    strictly comparable component; non-maximal elements sit alone.
    """

    component: int
    blocks: tuple[tuple[int, ...], ...]
    maximal: tuple[bool, ...]

    def block_containing(self, element: int) -> tuple[int, ...] | None:
        for block in self.blocks:
            if element in block:
                return block
        return None


def rho_partition(dec: Decomposition, alpha: int, order=None) -> RhoPartition:
    tag = dec.classification[alpha]
    if tag not in (LEFT_ZERO, RIGHT_ZERO):
        raise WrongComponentKindError(f"component {alpha} is {tag}, need a left or right zero component")
    if order is None:
        order = natural_order(dec.base)
    t = dec.base.table
    k = dec.count
    below = [b for b in range(k) if dec.lt(b, alpha)]
    above = [g for g in range(k) if dec.lt(alpha, g)]
    elems = dec.component_elements(alpha)

    def sandwich_key(a: int):
        lower = tuple(t[t[a][b]][a] for beta in below for b in dec.component_elements(beta))
        upper = tuple(t[t[c][a]][c] for gamma in above for c in dec.component_elements(gamma))
        return (lower, upper)

    groups: dict = {}
    blocks: list[tuple[int, ...]] = []
    for a in elems:
        if order.maximal[a]:
            groups.setdefault(sandwich_key(a), []).append(a)
        else:
            blocks.append((a,))
    blocks.extend(tuple(v) for v in groups.values())
    blocks.sort(key=lambda blk: blk[0])
    return RhoPartition(alpha, tuple(blocks), tuple(order.maximal[a] for a in elems))


# -- the element map ----------------------------------------------------------


def construct_eta(psi: IsoMap, dec_a: Decomposition, dec_b: Decomposition) -> IsoMap:
    """Assemble and verify the element-level isomorphism induced by ``psi``.

    On components that are neither left nor right zero the subset map already
    sends singletons to singletons and is used directly.  On zero components
    the sandwich partitions on both sides are matched block-by-block (via the
    least element of the image of each block representative) and paired in
    ascending element order, which keeps the output deterministic.
    """
    theta = extract_theta(psi, dec_a, dec_b)
    na, nb = dec_a.base.order, dec_b.base.order
    order_a = natural_order(dec_a.base)
    order_b = natural_order(dec_b.base)
    eta = [-1] * na
    for alpha in range(dec_a.count):
        beta = theta.forward[alpha]
        if dec_a.classification[alpha] == CS0:
            for a in dec_a.component_elements(alpha):
                img = psi_image_mask(psi, 1 << a)
                if img.bit_count() != 1:
                    raise PsiImageNotSingletonError(
                        f"element {a} of a non-zero component has image of size {img.bit_count()}"
                    )
                eta[a] = img.bit_length() - 1
        else:
            rho_a = rho_partition(dec_a, alpha, order_a)
            rho_b = rho_partition(dec_b, beta, order_b)
            for block in rho_a.blocks:
                rep = block[0]
                img = psi_image_mask(psi, 1 << rep)
                if not order_a.maximal[rep] and img.bit_count() != 1:
                    raise PsiImageNotSingletonError(
                        f"non-maximal element {rep} has image of size {img.bit_count()}"
                    )
                s = (img & -img).bit_length() - 1
                target = rho_b.block_containing(s)
                if target is None:
                    raise BlockSizeMismatchError(f"image element {s} is not in the matched component")
                if len(target) != len(block):
                    raise BlockSizeMismatchError(
                        f"block of {rep} has size {len(block)}, its image block has size {len(target)}"
                    )
                for x, y in zip(sorted(block), sorted(target)):
                    eta[x] = y
    if sorted(eta) != list(range(nb)):
        raise EtaNotMorphismError("constructed map is not a bijection")
    ta, tb = dec_a.base.table, dec_b.base.table
    for x in range(na):
        for y in range(na):
            if eta[ta[x][y]] != tb[eta[x]][eta[y]]:
                raise EtaNotMorphismError(f"product mismatch at ({x},{y})")
    return IsoMap("elements", tuple(eta), _invert(eta), verified=True)


# -- per-semigroup context for the statement suite ----------------------------


class SideData:
    """Cached analysis of one completely regular semigroup."""

    def __init__(self, table: CayleyTable):
        self.table = table
        self.n = table.order
        self.full_mask = (1 << self.n) - 1
        self.green = green_relations(table)
        self.dec = decompose(table)
        self.order = natural_order(table)
        self.power = power_of(table)
        self.ep = set(self.power.idempotent_masks())
        self.a2 = set(enumerate_a2_masks(table))
        self.a3 = set(enumerate_a3_masks(table))
        self.a2bar = set(enumerate_a2bar_masks(table))
        self._rho: dict[int, RhoPartition] = {}
        self._a3char: list[int] | None = None

    def idset(self, mask: int) -> frozenset[int]:
        return id_set_mask(mask, self.dec)

    def rho(self, alpha: int) -> RhoPartition:
        if alpha not in self._rho:
            self._rho[alpha] = rho_partition(self.dec, alpha, self.order)
        return self._rho[alpha]

    def a3char_masks(self) -> list[int]:
        # idempotent subsets satisfying the square-and-absorb rigidity premise
        if self._a3char is None:
            out = []
            for am in sorted(self.ep):
                ok = True
                for bm in range(1, self.full_mask + 1):
                    if bm == am:
                        continue
                    if self.power.product_mask(bm, bm) == am and self.power.product_mask(bm, am) == am:
                        ok = False
                        break
                if ok:
                    out.append(am)
            self._a3char = out
        return self._a3char

    def zero_components(self) -> list[int]:
        return [c for c in range(self.dec.count) if self.dec.classification[c] in (LEFT_ZERO, RIGHT_ZERO)]


@lru_cache(maxsize=None)
def side_data(table: CayleyTable) -> SideData:
    return SideData(table)


# -- the statement suite -------------------------------------------------------


@dataclass(frozen=True)
class StatementRecord:
    statement: str
    instances: int
    ok: bool
    witness: str | None = None


STATEMENT_IDS = (
    "a3-image-bijection",
    "a2-image-bijection",
    "a2bar-image-bijection",
    "a3-local-identities",
    "a3-square-root-rigid",
    "a3-square-support",
    "a3-absorbed-subset",
    "a3-multiplier-rigid",
    "rigid-cube-identity",
    "rigid-pair-products",
    "rigid-support-chain",
    "rigid-nonidempotent-hclass",
    "rigid-slice-one-sided",
    "rigid-lower-slice-zero",
    "rigid-top-two-group",
    "power-r-ideal",
    "power-d-support",
    "rclass-support-ideals",
    "local-identity-ideal",
    "ep-leq-slice-containment",
    "ep-leq-top-slice",
    "drop-nonmaximal-covers",
    "cs0-singleton-restriction",
    "pair-chain-image-union",
    "nonmaximal-singleton-image",
    "preimage-sandwich-transfer",
    "cross-sandwich-singleton",
    "rho-sandwich-collapse",
    "rho-lower-translation",
    "rho-image-transfer",
)


class _Check:
    def __init__(self, statement: str):
        self.statement = statement
        self.instances = 0
        self.ok = True
        self.witness: str | None = None

    def count(self, ok: bool, witness: str = "") -> None:
        self.instances += 1
        if not ok and self.ok:
            self.ok = False
            self.witness = witness

    def fail(self, witness: str) -> None:
        self.count(False, witness)

    def record(self) -> StatementRecord:
        return StatementRecord(self.statement, self.instances, self.ok, self.witness)


def _submasks(mask: int):
    """Nonempty submasks of ``mask``, descending."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def verify_statement_suite(s: CayleyTable, s2: CayleyTable, psi: IsoMap) -> list[StatementRecord]:
    """Exhaustively instantiate every verified statement against one subset map.

    Returns one record per statement with the number of premise-satisfying
    instances checked; a failing record carries the first witness.  Instances
    are only counted when the statement's hypothesis actually held, so a
    coverage pass over the records detects vacuous statements.
    """
    sd = side_data(s)
    se = side_data(s2)
    checks = {name: _Check(name) for name in STATEMENT_IDS}
    m = lambda mask: psi_image_mask(psi, mask)
    minv = lambda mask: psi_preimage_mask(psi, mask)
    prod = sd.power.product_mask
    prod2 = se.power.product_mask
    t = s.table

    theta: IsoMap | None = None
    theta_error = ""
    try:
        theta = extract_theta(psi, sd.dec, se.dec)
    except FalsificationError as exc:
        theta_error = str(exc)

    _image_bijections(checks, sd, se, m)
    _a3_shape_checks(checks, sd, prod)
    _rigidity_checks(checks, sd)
    _power_green_checks(checks, sd, prod)
    _ideal_checks(checks, sd, se, m, prod, prod2)
    _ep_order_checks(checks, sd, prod)

    if theta is None:
        for name in (
            "cs0-singleton-restriction",
            "cross-sandwich-singleton",
            "rho-image-transfer",
        ):
            checks[name].fail(f"component map unavailable: {theta_error}")
    else:
        _cs0_checks(checks, sd, se, m, theta)
        _cross_component_checks(checks, sd, se, m, minv, prod, prod2, theta)
    _pair_chain_checks(checks, sd, m)
    _nonmaximal_checks(checks, sd, m)
    _rho_checks(checks, sd, prod, t)

    return [checks[name].record() for name in STATEMENT_IDS]


def _image_bijections(checks, sd: SideData, se: SideData, m) -> None:
    for name, src, dst in (
        ("a3-image-bijection", sd.a3, se.a3),
        ("a2-image-bijection", sd.a2, se.a2),
        ("a2bar-image-bijection", sd.a2bar, se.a2bar),
    ):
        ck = checks[name]
        images = set()
        for am in sorted(src):
            img = m(am)
            images.add(img)
            ck.count(img in dst, f"image of {am:#x} is {img:#x}, outside the matched class")
        ck.count(images == dst, f"images cover {len(images)} of {len(dst)} targets")


def _a3_shape_checks(checks, sd: SideData, prod) -> None:
    g = sd.green
    ck_id = checks["a3-local-identities"]
    ck_root = checks["a3-square-root-rigid"]
    ck_sup = checks["a3-square-support"]
    ck_abs = checks["a3-absorbed-subset"]
    ck_mul = checks["a3-multiplier-rigid"]
    for am in sorted(sd.a3):
        for a in bits(am):
            e = g.local_identity[a]
            ck_id.count((am >> e) & 1 == 1, f"identity {e} of {a} escapes {am:#x}")
        for bm in _submasks(am):
            if prod(bm, bm) == am:
                ck_root.count(bm == am, f"proper {bm:#x} squares to {am:#x}")
        ids_a = sd.idset(am)
        for bm in range(1, sd.full_mask + 1):
            sq = prod(bm, bm)
            if sq == am:
                ck_sup.count(sd.idset(bm) == ids_a, f"{bm:#x} squares to {am:#x} with different support")
            if sd.idset(bm) <= ids_a and prod(bm, am) == am and prod(am, bm) == am:
                ck_abs.count(bm | am == am, f"{bm:#x} absorbed by {am:#x} but not contained")
            if prod(bm, am) == am and sq == am:
                ck_mul.count(bm == am, f"{bm:#x} multiplies and squares onto {am:#x}")


def _rigidity_checks(checks, sd: SideData) -> None:
    g = sd.green
    t = sd.table.table
    dec = sd.dec
    for am in sd.a3char_masks():
        elems = tuple(bits(am))
        for a in elems:
            cube = t[t[a][a]][a]
            e = g.local_identity[a]
            checks["rigid-cube-identity"].count(
                cube == a and (am >> e) & 1 == 1, f"a={a} in {am:#x}: cube {cube}, identity {e}"
            )
        for a in elems:
            for b in elems:
                p = t[a][b]
                allowed = {a, b, g.local_identity[a], g.local_identity[b]}
                checks["rigid-pair-products"].count(p in allowed, f"{a}*{b}={p} in {am:#x}")
        ids = sorted(sd.idset(am))
        chain = all(dec.leq(x, y) or dec.leq(y, x) for x in ids for y in ids)
        checks["rigid-support-chain"].count(chain, f"support of {am:#x} is not a chain")
        for a in elems:
            if t[a][a] != a:
                in_h = {x for x in elems if g.hclass[x] == g.hclass[a]}
                want = {a, g.local_identity[a]}
                checks["rigid-nonidempotent-hclass"].count(
                    in_h == want, f"H-slice of {a} in {am:#x} is {sorted(in_h)}"
                )
        maxima = [x for x in ids if not any(dec.lt(x, y) for y in ids)]
        for alpha in ids:
            slice_elems = [x for x in elems if dec.component_of[x] == alpha]
            one_l = len({g.lclass[x] for x in slice_elems}) == 1
            one_r = len({g.rclass[x] for x in slice_elems}) == 1
            checks["rigid-slice-one-sided"].count(
                one_l or one_r, f"slice {alpha} of {am:#x} spans several L- and R-classes"
            )
            if alpha not in maxima:
                lz = all(t[x][y] == x for x in slice_elems for y in slice_elems)
                rz = all(t[x][y] == y for x in slice_elems for y in slice_elems)
                checks["rigid-lower-slice-zero"].count(
                    lz or rz, f"non-maximal slice {alpha} of {am:#x} is not a zero semigroup"
                )
                for beta in ids:
                    if not dec.lt(alpha, beta):
                        continue
                    uppers = [x for x in elems if dec.component_of[x] == beta]
                    for a in slice_elems:
                        for b in uppers:
                            checks["rigid-lower-slice-zero"].count(
                                t[a][b] == a and t[b][a] == a,
                                f"absorption fails for {a},{b} in {am:#x}",
                            )
        if len(maxima) == 1:
            omega = maxima[0]
            top = [x for x in elems if dec.component_of[x] == omega]
            bad = [a for a in top if t[a][a] != a]
            for a in bad:
                e = g.local_identity[a]
                ok = set(top) == {a, e} and t[a][a] == e
                checks["rigid-top-two-group"].count(ok, f"top slice of {am:#x} is {sorted(top)}")


def _power_green_checks(checks, sd: SideData, prod) -> None:
    pg = sd.power.power_green()
    by_r: dict[int, list[int]] = {}
    by_d: dict[int, list[int]] = {}
    for idx in range(sd.full_mask):
        by_r.setdefault(pg.rclass[idx], []).append(idx + 1)
        by_d.setdefault(pg.dclass[idx], []).append(idx + 1)
    for group in by_r.values():
        base = prod(group[0], sd.full_mask)
        for other in group[1:]:
            checks["power-r-ideal"].count(
                prod(other, sd.full_mask) == base,
                f"R-related {group[0]:#x} and {other:#x} have different right ideals",
            )
    for group in by_d.values():
        base = sd.idset(group[0])
        for other in group[1:]:
            checks["power-d-support"].count(
                sd.idset(other) == base,
                f"D-related {group[0]:#x} and {other:#x} have different supports",
            )


def _ideal_checks(checks, sd: SideData, se: SideData, m, prod, prod2) -> None:
    ck = checks["rclass-support-ideals"]
    by_support: dict[frozenset[int], list[int]] = {}
    for mask in range(1, sd.full_mask + 1):
        key = frozenset(sd.green.rclass[x] for x in bits(mask))
        by_support.setdefault(key, []).append(mask)
    for group in by_support.values():
        base = prod(group[0], sd.full_mask)
        base2 = prod2(m(group[0]), se.full_mask)
        for other in group[1:]:
            ok = prod(other, sd.full_mask) == base and prod2(m(other), se.full_mask) == base2
            ck.count(ok, f"{group[0]:#x} and {other:#x} share R-class support but not ideals")
    ck2 = checks["local-identity-ideal"]
    psi_s = m(sd.full_mask)
    for s_el in range(se.n):
        e = se.green.local_identity[s_el]
        ck2.count(
            prod2(1 << s_el, psi_s) == prod2(1 << e, psi_s),
            f"element {s_el} and its identity {e} translate the image differently",
        )


def _ep_order_checks(checks, sd: SideData, prod) -> None:
    dec = sd.dec
    comp_masks = [c.mask for c in dec.components]
    for am in sorted(sd.a2):
        ids_a = sd.idset(am)
        for bm in sorted(sd.ep):
            if not (prod(am, bm) == am and prod(bm, am) == am):
                continue
            ids_b = sd.idset(bm)
            shared = ids_a & ids_b
            for alpha in sorted(shared):
                checks["ep-leq-slice-containment"].count(
                    bm & comp_masks[alpha] & ~am == 0,
                    f"slice {alpha} of {bm:#x} leaves {am:#x}",
                )
            if ids_b <= ids_a:
                checks["ep-leq-slice-containment"].count(
                    bm | am == am, f"{bm:#x} supported inside {am:#x} but not contained"
                )
            for omega in sorted(shared):
                max_in_a = not any(dec.lt(omega, y) for y in ids_a)
                max_in_b = not any(dec.lt(omega, y) for y in ids_b)
                if max_in_a and max_in_b:
                    checks["ep-leq-top-slice"].count(
                        bm & comp_masks[omega] == am & comp_masks[omega],
                        f"top slices at {omega} differ for {am:#x} <= {bm:#x}",
                    )
        if len(ids_a) >= 2:
            for alpha in sorted(ids_a):
                if not any(dec.lt(alpha, y) for y in ids_a):
                    continue
                for a in bits(am & comp_masks[alpha]):
                    reduced = am & ~(1 << a)
                    ok = (
                        reduced in sd.a2
                        and sd.power.ep_lt_mask(am, reduced)
                        and sd.power.covers(Subset(sd.n, am), Subset(sd.n, reduced), "ep")
                    )
                    checks["drop-nonmaximal-covers"].count(
                        ok, f"dropping {a} from {am:#x} is not an immediate successor"
                    )


def _cs0_checks(checks, sd: SideData, se: SideData, m, theta: IsoMap) -> None:
    ck = checks["cs0-singleton-restriction"]
    for alpha in range(sd.dec.count):
        if sd.dec.classification[alpha] != CS0:
            continue
        target_mask = se.dec.components[theta.forward[alpha]].mask
        mapping = {}
        good = True
        for a in sd.dec.component_elements(alpha):
            img = m(1 << a)
            ok = img.bit_count() == 1 and img & ~target_mask == 0
            ck.count(ok, f"element {a} of component {alpha} has image {img:#x}")
            if not ok:
                good = False
                break
            mapping[a] = img.bit_length() - 1
        if not good:
            continue
        elems = sd.dec.component_elements(alpha)
        ck.count(
            sorted(mapping.values()) == sorted(bits(target_mask)),
            f"component {alpha} does not map onto its target",
        )
        for a in elems:
            for b in elems:
                ck.count(
                    mapping[sd.table.table[a][b]] == se.table.table[mapping[a]][mapping[b]],
                    f"restriction breaks at {a}*{b} in component {alpha}",
                )


def _pair_chain_checks(checks, sd: SideData, m) -> None:
    ck = checks["pair-chain-image-union"]
    dec = sd.dec
    for a in range(sd.n):
        for b in range(sd.n):
            ca, cb = dec.component_of[a], dec.component_of[b]
            if not dec.lt(ca, cb):
                continue
            pair = (1 << a) | (1 << b)
            if pair not in sd.a2:
                continue
            ok = m(pair) == (m(1 << a) | m(1 << b)) and m(1 << a).bit_count() == 1
            ck.count(ok, f"pair {{{a},{b}}} maps to {m(pair):#x}")


def _nonmaximal_checks(checks, sd: SideData, m) -> None:
    ck = checks["nonmaximal-singleton-image"]
    for alpha in sd.zero_components():
        for a in sd.dec.component_elements(alpha):
            if sd.order.maximal[a]:
                continue
            img = m(1 << a)
            ck.count(img.bit_count() == 1, f"non-maximal {a} has image {img:#x}")


def _cross_component_checks(checks, sd: SideData, se: SideData, m, minv, prod, prod2, theta: IsoMap) -> None:
    ck_pre = checks["preimage-sandwich-transfer"]
    ck_single = checks["cross-sandwich-singleton"]
    ck_rho = checks["rho-image-transfer"]
    dec = sd.dec
    for alpha in range(dec.count):
        for beta in range(dec.count):
            if not dec.lt(beta, alpha):
                continue
            beta_mask = dec.components[beta].mask
            for a in dec.component_elements(alpha):
                img = m(1 << a)
                for s_el in bits(img):
                    pre = minv(1 << s_el)
                    for bm in _submasks(beta_mask):
                        lhs = prod(prod(pre, bm), pre)
                        rhs = prod(prod(1 << a, bm), 1 << a)
                        ck_pre.count(
                            lhs == rhs,
                            f"conjugates of {bm:#x} by preimage of {s_el} and by {a} differ",
                        )
                for t_el in bits(se.dec.components[theta.forward[beta]].mask):
                    sandwich = prod2(prod2(img, 1 << t_el), img)
                    ck_single.count(
                        sandwich.bit_count() == 1,
                        f"image of {a} against {t_el} gives {sandwich:#x}",
                    )
            for s_el in bits(se.dec.components[theta.forward[alpha]].mask):
                for b in dec.component_elements(beta):
                    sandwich = prod2(prod2(1 << s_el, m(1 << b)), 1 << s_el)
                    ck_single.count(
                        sandwich.bit_count() == 1,
                        f"{s_el} against the image of {b} gives {sandwich:#x}",
                    )
    for alpha in sd.zero_components():
        rho_a = sd.rho(alpha)
        rho_b = se.rho(theta.forward[alpha])
        comp_mask = dec.components[alpha].mask
        for a in dec.component_elements(alpha):
            block_mask = 0
            for x in rho_a.block_containing(a):
                block_mask |= 1 << x
            for s_el in bits(m(1 << a)):
                target = rho_b.block_containing(s_el)
                target_mask = 0
                for x in target:
                    target_mask |= 1 << x
                for am in _submasks(comp_mask):
                    lhs = am | block_mask == block_mask
                    rhs = m(am) | target_mask == target_mask
                    ck_rho.count(
                        lhs == rhs,
                        f"subset {am:#x} of component {alpha}: containment transfers {lhs}->{rhs}",
                    )


def _rho_checks(checks, sd: SideData, prod, t) -> None:
    dec = sd.dec
    ck_col = checks["rho-sandwich-collapse"]
    ck_tr = checks["rho-lower-translation"]
    for alpha in sd.zero_components():
        rho = sd.rho(alpha)
        below = [b for b in range(dec.count) if dec.lt(b, alpha)]
        above = [g for g in range(dec.count) if dec.lt(alpha, g)]
        for block in rho.blocks:
            block_mask = 0
            for x in block:
                block_mask |= 1 << x
            for a in block:
                for am in _submasks(block_mask):
                    for beta in below:
                        for bm in _submasks(dec.components[beta].mask):
                            lhs = prod(prod(am, bm), am)
                            rhs = prod(prod(1 << a, bm), 1 << a)
                            ck_col.count(lhs == rhs, f"{am:#x}*{bm:#x}*{am:#x} != sandwich by {a}")
                    for gamma in above:
                        for cm in _submasks(dec.components[gamma].mask):
                            lhs = prod(prod(cm, am), cm)
                            rhs = prod(prod(cm, 1 << a), cm)
                            ck_col.count(lhs == rhs, f"{cm:#x}*{am:#x}*{cm:#x} != sandwich of {a}")
            for i, a1 in enumerate(block):
                for a2 in block[i + 1 :]:
                    for beta in below:
                        for b in dec.component_elements(beta):
                            ok = t[a1][b] == t[a2][b] and t[b][a1] == t[b][a2]
                            ck_tr.count(ok, f"{a1} and {a2} translate {b} differently")
