"""Command-line surface: analyze tables, list breakable subsemigroups,
search power-semigroup isomorphisms, and run the verification battery.

Exit codes: 0 success, 1 no isomorphism found, 2 operational error,
3 a verified statement failed on concrete data.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .breakable import (
    a2_characterization,
    a3_characterization,
    enumerate_a2_masks,
    enumerate_a2bar_masks,
    enumerate_a3_masks,
    satisfies_an_mask,
    structural_form,
)
from .core import CayleyTable, Subset, bits, green_relations, idempotents, is_completely_regular, is_completely_simple, natural_order, validate_table
from .errors import FalsificationError, SemigroupError
from .families import corpus
from .globaldet import construct_eta, extract_theta, power_of, verify_statement_suite
from .structure import decompose
from .verify import records_to_json_lines, run_all, summarize

ENV_MAX_ORDER = "CRGLOBAL_MAX_ORDER"
ENV_INJECT = "CRGLOBAL_INJECT"


def parse_table_text(text: str) -> CayleyTable:
    """JSON document or plain text: first line the order, then the rows."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = json.loads(text)
        return validate_table(doc["table"], doc.get("labels"))
    lines = [ln for ln in text.splitlines() if ln.strip()]
    n = int(lines[0].split()[0])
    rows = [[int(tok) for tok in ln.split()] for ln in lines[1 : 1 + n]]
    if len(rows) != n:
        raise SemigroupError(f"expected {n} rows, found {len(rows)}")
    return validate_table(rows)


def table_to_json(name: str, s: CayleyTable) -> str:
    doc = {"name": name, "order": s.order, "table": [list(r) for r in s.table]}
    if s.labels is not None:
        doc["labels"] = list(s.labels)
    return json.dumps(doc, sort_keys=True)


def load_table(path: str) -> CayleyTable:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_table_text(fh.read())


def _mask_str(s: CayleyTable, mask: int) -> str:
    return "{" + ",".join(s.label(e) for e in bits(mask)) + "}"


def cmd_analyze(args) -> int:
    s = load_table(args.path)
    g = green_relations(s)
    print(f"order: {s.order}")
    print(f"idempotents: {sorted(idempotents(s))}")
    for tag, classes in (("L", g.lclass), ("R", g.rclass), ("H", g.hclass), ("D", g.dclass)):
        sizes = {}
        for c in classes:
            sizes[c] = sizes.get(c, 0) + 1
        print(f"{tag}-classes: {len(sizes)} (sizes {sorted(sizes.values(), reverse=True)})")
    cr = is_completely_regular(s)
    print(f"completely regular: {'yes' if cr else 'no'}")
    if not cr:
        return 0
    print(f"completely simple: {'yes' if is_completely_simple(s) else 'no'}")
    dec = decompose(s)
    print(f"components: {dec.count}")
    for alpha in range(dec.count):
        elems = ",".join(s.label(e) for e in dec.component_elements(alpha))
        print(f"  component {alpha} [{dec.classification[alpha]}]: {{{elems}}}")
    print("structure table:")
    for row in dec.semilattice.table:
        print("  " + " ".join(str(v) for v in row))
    order = natural_order(s)
    print(f"maximal elements: {[a for a in range(s.order) if order.maximal[a]]}")
    return 0


def cmd_breakable(args) -> int:
    s = load_table(args.path)
    if s.order > args.max_order:
        raise SemigroupError(f"order {s.order} exceeds --max-order {args.max_order}")
    if not is_completely_regular(s):
        raise SemigroupError("input is not completely regular")
    p = power_of(s)
    a2 = enumerate_a2_masks(s, args.max_order)
    a3 = enumerate_a3_masks(s, args.max_order)
    a2bar = enumerate_a2bar_masks(s, args.max_order)
    print(f"pair-condition subsemigroups: {len(a2)}")
    print(f"triple-condition subsemigroups: {len(a3)}")
    print(f"single-component pair-condition subsemigroups: {len(a2bar)}")
    for am in a3:
        form = structural_form(s, Subset(s.order, am))
        chunks = " < ".join(f"{_mask_str(s, c.mask)}:{k}" for c, k in zip(form.chunks, form.kinds))
        scan2 = a2_characterization(p, Subset(s.order, am))
        scan3 = a3_characterization(p, Subset(s.order, am))
        agree2 = scan2 == satisfies_an_mask(s, am, 2)
        tags = []
        tags.append("pair" if am in a2 else "triple-only")
        if am in a2bar:
            tags.append("single-component")
        cross = "ok" if (scan3 and agree2) else "MISMATCH"
        print(f"  {_mask_str(s, am)} [{','.join(tags)}] chain: {chunks} cross-check: {cross}")
    return 0


def cmd_globaliso(args) -> int:
    s = load_table(args.path_a)
    s2 = load_table(args.path_b)
    for t in (s, s2):
        if not is_completely_regular(t):
            raise SemigroupError("both inputs must be completely regular")
        if t.order > args.max_order:
            raise SemigroupError(f"order {t.order} exceeds --max-order {args.max_order}")
    from .verify import collect_psis

    psis = collect_psis(s, s2, args.limit)
    if not psis:
        print("no power-semigroup isomorphism found")
        return 1
    dec_a, dec_b = decompose(s), decompose(s2)
    etas = []
    failures = 0
    for k, psi in enumerate(psis):
        try:
            theta = extract_theta(psi, dec_a, dec_b)
            eta = construct_eta(psi, dec_a, dec_b)
        except FalsificationError as exc:
            print(f"psi {k}: FALSIFIED: {exc}")
            failures += 1
            continue
        suite = verify_statement_suite(s, s2, psi)
        bad = [rec for rec in suite if not rec.ok]
        status = "all-pass" if not bad else f"{len(bad)} failing statements"
        print(
            f"psi {k}: component map {list(theta.forward)}, eta {list(eta.forward)}, suite {status}"
        )
        for rec in bad:
            print(f"  FAIL {rec.statement}: {rec.witness}")
            failures += 1
        etas.append({"psi": k, "eta": list(eta.forward)})
    if args.emit_eta:
        with open(args.emit_eta, "w", encoding="utf-8") as fh:
            json.dump(etas, fh, sort_keys=True)
            fh.write("\n")
    return 3 if failures else 0


def cmd_verify(args) -> int:
    inject = bool(os.environ.get(ENV_INJECT))
    records = run_all(args.profile, inject_non_cr=inject)
    sys.stdout.write(records_to_json_lines(records))
    print(summarize(records), file=sys.stderr)
    return 0 if all(r.ok for r in records) else 3


def cmd_corpus(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    for name, s in corpus(args.profile):
        with open(os.path.join(args.out, f"{name}.json"), "w", encoding="utf-8") as fh:
            fh.write(table_to_json(name, s))
            fh.write("\n")
    print(f"wrote {len(corpus(args.profile))} tables to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crglobal", description=__doc__)
    default_max = int(os.environ.get(ENV_MAX_ORDER, "12"))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="validate a table and print its structure")
    p.add_argument("path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("breakable", help="list subsemigroups with short-product closure")
    p.add_argument("path")
    p.add_argument("--max-order", type=int, default=default_max)
    p.set_defaults(func=cmd_breakable)

    p = sub.add_parser("globaliso", help="search power-semigroup isomorphisms and build element maps")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.add_argument("--limit", type=int, default=8)
    p.add_argument("--max-order", type=int, default=int(os.environ.get(ENV_MAX_ORDER, "5")))
    p.add_argument("--emit-eta", default=None)
    p.set_defaults(func=cmd_globaliso)

    p = sub.add_parser("verify", help="run the full verification battery over the corpus")
    p.add_argument("--profile", choices=("quick", "full"), default="full")
    p.add_argument("--seed", type=int, default=0, help="reserved; the battery is deterministic")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", help="export the corpus as JSON table files")
    p.add_argument("--out", required=True)
    p.add_argument("--profile", choices=("quick", "full"), default="full")
    p.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FalsificationError as exc:
        print(f"falsified: {exc}", file=sys.stderr)
        return 3
    except (SemigroupError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
