"""Corpus-wide verification runner.

Each function takes an explicit list of (name, table) members and returns
flat records; the CLI serializes them as JSON lines and the acceptance tests
assert over them.  Everything is deterministic: member order, pair order,
map discovery order and record order are all fixed.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass

from .breakable import (
    a2_characterization,
    a3_characterization,
    enumerate_a3_masks,
    left_zero_subset_masks,
    satisfies_an_mask,
    structural_form,
)
from .core import (
    CayleyTable,
    Subset,
    bits,
    green_relations,
    is_completely_regular,
    is_left_zero,
    is_subsemigroup_mask,
    validate_table,
)
from .errors import FalsificationError
from .families import corpus
from .globaldet import (
    IsoMap,
    STATEMENT_IDS,
    construct_eta,
    extract_theta,
    find_isomorphisms,
    is_singleton_preserving,
    lift,
    power_of,
    power_table,
    verify_statement_suite,
)
from .power import h_class_of_idempotent_singleton, h_class_of_left_zero_set
from .structure import decompose

NON_CR_INJECTION = validate_table([[0, 0], [0, 0]])


@dataclass(frozen=True)
class Record:
    check: str
    scope: str
    instances: int
    ok: bool
    witness: str | None = None


def records_to_json_lines(records: list[Record]) -> str:
    return "\n".join(json.dumps(asdict(r), sort_keys=True) for r in records) + "\n"


def summarize(records: list[Record]) -> str:
    failed = [r for r in records if not r.ok]
    lines = [f"checks: {len(records)}  failed: {len(failed)}"]
    for r in failed:
        lines.append(f"FAIL {r.check} [{r.scope}] witness: {r.witness}")
    return "\n".join(lines)


def cr_members(members, max_order: int) -> list[tuple[str, CayleyTable]]:
    return [(name, s) for name, s in members if s.order <= max_order and is_completely_regular(s)]


def check_a3_equivalence(members) -> list[Record]:
    """Rigidity scan agrees with the triple-product condition on every
    idempotent subset of every member."""
    out = []
    for name, s in members:
        p = power_of(s)
        a3 = set(enumerate_a3_masks(s))
        count = 0
        ok = True
        witness = None
        for am in p.idempotent_masks():
            count += 1
            direct = is_subsemigroup_mask(s, am) and satisfies_an_mask(s, am, 3)
            if direct != a3_characterization(p, Subset(s.order, am)):
                ok = False
                witness = f"subset {am:#x} is {'in' if direct else 'outside'} the class but the scan disagrees"
                break
            if direct != (am in a3):
                ok = False
                witness = f"subset {am:#x}: enumeration disagrees with the direct check"
                break
        out.append(Record("a3-characterization-equivalence", name, count, ok, witness))
    return out


def check_a2_equivalence(members) -> list[Record]:
    """Idempotency scan agrees with the pair-product condition below the
    triple-product class."""
    out = []
    for name, s in members:
        p = power_of(s)
        count = 0
        ok = True
        witness = None
        for am in enumerate_a3_masks(s):
            count += 1
            direct = satisfies_an_mask(s, am, 2)
            if direct != a2_characterization(p, Subset(s.order, am)):
                ok = False
                witness = f"subset {am:#x} is {'in' if direct else 'outside'} the class but the scan disagrees"
                break
        out.append(Record("a2-characterization-equivalence", name, count, ok, witness))
    return out


def check_structural_forms(members) -> list[Record]:
    """Every qualifying subsemigroup decomposes into an absorbing chain of
    zero chunks, with a group top exactly when pair products escape."""
    out = []
    for name, s in members:
        t = s.table
        count = 0
        ok = True
        witness = None
        for am in enumerate_a3_masks(s):
            count += 1
            form = structural_form(s, Subset(s.order, am))
            problem = _form_problem(t, am, form, satisfies_an_mask(s, am, 2))
            if problem:
                ok = False
                witness = f"subset {am:#x}: {problem}"
                break
        out.append(Record("structural-form", name, count, ok, witness))
    return out


def _form_problem(t, am: int, form, breakable: bool) -> str | None:
    union = 0
    for chunk in form.chunks:
        if union & chunk.mask:
            return "chunks overlap"
        union |= chunk.mask
    if union != am:
        return "chunks do not cover the subset"
    if form.has_group_top == breakable:
        return "group top disagrees with the pair-product condition"
    for kind in form.kinds[:-1]:
        if kind == "two-group-top":
            return "group chunk off the top"
    for i, low in enumerate(form.chunks):
        for high in form.chunks[i + 1 :]:
            for a in bits(low.mask):
                for b in bits(high.mask):
                    if t[a][b] != a or t[b][a] != a:
                        return f"absorption fails at ({a},{b})"
    for chunk, kind in zip(form.chunks, form.kinds):
        elems = list(bits(chunk.mask))
        if kind == "left-zero":
            if any(t[a][b] != a for a in elems for b in elems):
                return "left zero chunk is not left zero"
        elif kind == "right-zero":
            if any(t[a][b] != b for a in elems for b in elems):
                return "right zero chunk is not right zero"
        else:
            if len(elems) != 2:
                return "group top of the wrong size"
            ids = [a for a in elems if t[a][a] == a]
            if len(ids) != 1:
                return "group top without a unique identity"
            e = ids[0]
            a = elems[1 - elems.index(e)]
            if t[a][a] != e or t[a][e] != a or t[e][a] != a:
                return "group top is not a two-element group"
    return None


def check_power_h_classes(members) -> list[Record]:
    """H-classes in the power semigroup match their element-level values for
    idempotent singletons and for left zero subsemigroups."""
    out = []
    for name, s in members:
        p = power_of(s)
        g = green_relations(s)
        dec = decompose(s)
        count = 0
        ok = True
        witness = None
        for e in range(s.order):
            if s.table[e][e] != e:
                continue
            count += 1
            got = {sub.mask for sub in h_class_of_idempotent_singleton(p, e, dec)}
            want = {1 << x for x in range(s.order) if g.hclass[x] == g.hclass[e]}
            if got != want:
                ok = False
                witness = f"singleton {{{e}}}: got {sorted(got)}, expected {sorted(want)}"
                break
        if ok:
            for em in left_zero_subset_masks(s):
                count += 1
                got = {sub.mask for sub in h_class_of_left_zero_set(p, Subset(s.order, em), dec)}
                expected = None
                for e in bits(em):
                    translates = {
                        p.product_mask(em, 1 << a)
                        for a in range(s.order)
                        if g.hclass[a] == g.hclass[e]
                    }
                    if expected is None:
                        expected = translates
                    elif expected != translates:
                        ok = False
                        witness = f"left zero {em:#x}: translate sets differ between members"
                        break
                if not ok:
                    break
                if got != expected:
                    ok = False
                    witness = f"left zero {em:#x}: got {sorted(got)}, expected {sorted(expected)}"
                    break
        out.append(Record("power-h-classes", name, count, ok, witness))
    return out


@dataclass
class SweepResult:
    records: list[Record]
    psi_total: int
    nonsingleton_on_left_zero: int
    coverage: Counter
    etas: dict[tuple[str, str, int], IsoMap]


def collect_psis(s: CayleyTable, s2: CayleyTable, limit: int = 8) -> list[IsoMap]:
    """Subset isomorphisms from lifted element maps plus a direct search over
    the materialized power tables, deduplicated, in discovery order."""
    psis: list[IsoMap] = []
    seen = set()
    for phi in find_isomorphisms(s, s2, limit=limit):
        psi = lift(phi)
        if psi.forward not in seen:
            seen.add(psi.forward)
            psis.append(psi)
    pa, pb = power_table(s), power_table(s2)
    for psi in find_isomorphisms(pa, pb, limit=limit, kind="subsets"):
        if psi.forward not in seen:
            seen.add(psi.forward)
            psis.append(psi)
    return psis


def global_sweep(members, limit: int = 8) -> SweepResult:
    """Run the whole pipeline over every same-order pair of members: collect
    subset isomorphisms, extract the component map, build the element map,
    and run the statement suite per isomorphism."""
    records: list[Record] = []
    coverage: Counter = Counter()
    psi_total = 0
    nonsingleton = 0
    etas: dict[tuple[str, str, int], IsoMap] = {}
    pool = list(members)
    for i, (name_a, s) in enumerate(pool):
        for name_b, s2 in pool[i:]:
            if s.order != s2.order:
                continue
            scope = f"{name_a}|{name_b}"
            psis = collect_psis(s, s2, limit)
            if not psis:
                element_isos = find_isomorphisms(s, s2, limit=1)
                records.append(
                    Record(
                        "no-subset-iso-implies-no-element-iso",
                        scope,
                        1,
                        not element_isos,
                        None if not element_isos else "element iso exists without a subset iso",
                    )
                )
                continue
            dec_a, dec_b = decompose(s), decompose(s2)
            for k, psi in enumerate(psis):
                psi_total += 1
                if is_left_zero(s) and not is_singleton_preserving(psi, s.order):
                    nonsingleton += 1
                pscope = f"{scope}#psi{k}"
                try:
                    extract_theta(psi, dec_a, dec_b)
                    records.append(Record("theta-extraction", pscope, 1, True))
                except FalsificationError as exc:
                    records.append(Record("theta-extraction", pscope, 1, False, str(exc)))
                try:
                    eta = construct_eta(psi, dec_a, dec_b)
                    etas[(name_a, name_b, k)] = eta
                    records.append(Record("eta-construction", pscope, 1, eta.verified))
                except FalsificationError as exc:
                    records.append(Record("eta-construction", pscope, 1, False, str(exc)))
                for rec in verify_statement_suite(s, s2, psi):
                    coverage[rec.statement] += rec.instances
                    records.append(Record(rec.statement, pscope, rec.instances, rec.ok, rec.witness))
    return SweepResult(records, psi_total, nonsingleton, coverage, etas)


def coverage_records(coverage: Counter) -> list[Record]:
    return [
        Record(
            "statement-coverage",
            name,
            coverage.get(name, 0),
            coverage.get(name, 0) > 0,
            None if coverage.get(name, 0) else "statement never instantiated over the sweep",
        )
        for name in STATEMENT_IDS
    ]


def run_all(profile: str = "full", inject_non_cr: bool = False) -> list[Record]:
    """The full verification battery over the deterministic corpus."""
    members = list(corpus(profile))
    max_order = 4 if profile == "quick" else 6
    sweep_order = 4 if profile == "quick" else 5
    scan = cr_members(members, max_order)
    if inject_non_cr:
        # negative control: smuggle a non-regular table past the filter
        scan = scan + [("injected-non-cr", NON_CR_INJECTION)]
    records: list[Record] = []
    records.extend(check_a3_equivalence(scan))
    records.extend(check_a2_equivalence(cr_members(members, max_order)))
    records.extend(check_structural_forms(cr_members(members, max_order)))
    records.extend(check_power_h_classes(cr_members(members, max_order)))
    sweep = global_sweep(cr_members(members, sweep_order))
    records.extend(sweep.records)
    records.extend(coverage_records(sweep.coverage))
    records.append(
        Record(
            "psi-instance-floor",
            "sweep",
            sweep.psi_total,
            sweep.psi_total >= 20,
            None if sweep.psi_total >= 20 else f"only {sweep.psi_total} subset isomorphisms",
        )
    )
    records.append(
        Record(
            "nonsingleton-psi-on-left-zero",
            "sweep",
            sweep.nonsingleton_on_left_zero,
            sweep.nonsingleton_on_left_zero >= 1,
            None if sweep.nonsingleton_on_left_zero else "no such isomorphism found",
        )
    )
    return records
