"""Command-line front end.

Every subcommand builds one JSON-ready document; ``--json`` prints it
as is, otherwise it is rendered as a small table.  Player positions in
all documents are 0-based.

Exit status: 0 success, 1 "no" answer (with ``--exit-status``) or a failed
verification, 2 usage or validation error, 3 resource limit.
"""
from __future__ import annotations

import argparse
import random
import sys
from typing import Sequence

from . import jsonio
from .errors import ResourceLimit, ValidationError, WVGError
from .indices import IndexFamily, full_report
from .manipulation import SplitSpec, evaluate_split, is_beneficial_merge, search_beneficial_split
from .random_instances import random_game, random_rr
from .reductions import (
    CompareRInstance,
    ReductionCertificate,
    RRInstance,
    compare_to_rr,
    count_sums,
    count_subset_sum,
    normalize_times8,
    reduce_compare_to_r,
    reduce_r_to_rr,
    rr_counts,
    rr_to_banzhaf_merge,
    rr_to_banzhaf_split,
    rr_to_shapley_merge,
    verify_banzhaf_merge_identity,
    verify_shapley_merge_identity,
)
from .x3c import reduce_x3c_to_subsetsum

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

REDUCE_SOURCES = ("compare", "r", "rr", "rr-flipped", "x3c")
REDUCE_TARGETS = ("r", "rr", "banzhaf-merge", "banzhaf-split", "shapley-merge", "subsetsum")


class UsageError(ValidationError):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON document instead of a table")
    common.add_argument("--max-cells", type=int, default=None,
                        help="table size cap (default: $WVGPOWER_MAX_CELLS or 10^7)")
    common.add_argument("--threads", type=int, default=None, help="worker threads for per-player work")

    decision = argparse.ArgumentParser(add_help=False)
    decision.add_argument("--exit-status", action="store_true", help="exit 0 for yes and 1 for no")

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--family", default="banzhaf",
                        help="banzhaf | normalized-banzhaf | raw-banzhaf | shapley (default: banzhaf)")

    parser = argparse.ArgumentParser(prog="wvgpower", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("power", parents=[common, family], help="power index of every player")
    p.add_argument("--game", required=True, help="game JSON file, or - for stdin")

    p = sub.add_parser("merge-check", parents=[common, family, decision], help="is merging a coalition beneficial?")
    p.add_argument("--game", required=True)
    p.add_argument("--coalition", help="0-based positions, e.g. 4,5,6 (default: the document's 'coalition')")

    p = sub.add_parser("split-check", parents=[common, family, decision], help="is splitting a player beneficial?")
    p.add_argument("--game", required=True)
    p.add_argument("--player", type=int, help="0-based position (default: the document's 'player')")
    p.add_argument("--m", type=int, help="number of identities (default: the document's 'm', else len(parts))")
    p.add_argument("--parts", help="evaluate this weight assignment instead of searching, e.g. 1,1,1")
    p.add_argument("--exhaustive", action="store_true", help="scan every partition and report the best margin")
    p.add_argument("--max-partitions", type=int, default=None)

    p = sub.add_parser("count", parents=[common], help="count subset-sum solutions")
    p.add_argument("--instance", required=True)

    p = sub.add_parser("decide", parents=[common, decision], help="decide a comparison instance")
    p.add_argument("--kind", choices=("compare", "r", "rr"), required=True)
    p.add_argument("--instance", required=True)

    p = sub.add_parser("reduce", parents=[common], help="run reduction steps and emit the resulting instance")
    p.add_argument("--from", dest="source", choices=REDUCE_SOURCES, required=True)
    p.add_argument("--to", dest="target", choices=REDUCE_TARGETS, required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--m", type=int, default=3, help="identities for the banzhaf-split gadget")
    p.add_argument("--trace", action="store_true", help="include every stage with verified counts")

    p = sub.add_parser("verify", parents=[common], help="check a closed-form identity")
    p.add_argument("--identity", choices=("banzhaf-merge", "shapley-merge", "merge-additivity"), required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--instance", help="RR instance (or game, for merge-additivity)")
    src.add_argument("--random", type=int, metavar="N", help="check N random instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--max-value", type=int, default=12)
    return parser


# -- subcommands -------------------------------------------------------------------

def cmd_power(args):
    game = jsonio.game_from_json(jsonio.load(args.game))
    report = full_report(game, IndexFamily.parse(args.family), max_cells=args.max_cells, workers=args.threads)
    return {"game": jsonio.game_to_json(game), **report.to_json()}, EXIT_OK


def cmd_merge_check(args):
    doc = jsonio.load(args.game)
    game = jsonio.game_from_json(doc)
    if args.coalition is not None:
        positions = _int_list(args.coalition)
    elif isinstance(doc, dict) and "coalition" in doc:
        positions = doc["coalition"]
    else:
        raise UsageError("no coalition: pass --coalition or include 'coalition' in the game document")
    members = jsonio.from_positions(positions)
    verdict = is_beneficial_merge(game, members, IndexFamily.parse(args.family), max_cells=args.max_cells)
    out = {"family": IndexFamily.parse(args.family).value, "coalition": sorted(p - 1 for p in members),
           **verdict.to_json()}
    return out, _decision_status(args, verdict.beneficial)


def cmd_split_check(args):
    doc = jsonio.load(args.game)
    game = jsonio.game_from_json(doc)
    fam = IndexFamily.parse(args.family)
    position = args.player if args.player is not None else (doc.get("player") if isinstance(doc, dict) else None)
    if position is None:
        raise UsageError("no player: pass --player or include 'player' in the game document")
    player = jsonio.parse_int(position, "player") + 1
    m = args.m if args.m is not None else (doc.get("m") if isinstance(doc, dict) else None)
    if args.parts is not None:
        parts = tuple(_int_list(args.parts))
        if m is not None and jsonio.parse_int(m, "m") != len(parts):
            raise UsageError(f"--m {m} disagrees with {len(parts)} parts")
        verdict = evaluate_split(game, SplitSpec(player, parts), fam, max_cells=args.max_cells)
        mode = "evaluate"
    else:
        if m is None:
            raise UsageError("no m: pass --m, --parts, or include 'm' in the game document")
        verdict = search_beneficial_split(game, player, jsonio.parse_int(m, "m"), fam,
                                          exhaustive=args.exhaustive, max_partitions=args.max_partitions,
                                          max_cells=args.max_cells, workers=args.threads)
        mode = "search"
    out = {"family": fam.value, "player": player - 1, "mode": mode, **verdict.to_json()}
    return out, _decision_status(args, verdict.beneficial)


def cmd_count(args):
    inst = jsonio.subsetsum_from_json(jsonio.load(args.instance))
    return {**inst.to_json(), "count": str(count_subset_sum(inst, max_cells=args.max_cells))}, EXIT_OK


def cmd_decide(args):
    doc = jsonio.load(args.instance)
    cap = args.max_cells
    if args.kind == "compare":
        inst = jsonio.compare_from_json(doc)
        counts = (count_subset_sum(inst.left, max_cells=cap), count_subset_sum(inst.right, max_cells=cap))
        decision = counts[0] > counts[1]
    elif args.kind == "r":
        inst = jsonio.compare_r_from_json(doc)
        counts = count_sums(inst.values, (inst.q1, inst.q2), max_cells=cap)
        decision = counts[0] > counts[1]
    else:
        inst = jsonio.rr_from_json(doc)
        y, x = rr_counts(inst, max_cells=cap)
        # counts listed as (compared-greater candidate, other)
        counts = (x, y) if inst.flipped else (y, x)
        decision = counts[0] > counts[1]
    out = {"kind": args.kind, "decision": decision, "counts": [str(c) for c in counts]}
    return out, _decision_status(args, decision)


def _gadget_doc(target, rr: RRInstance, m: int) -> dict:
    if target == "rr":
        return rr.to_json()
    if target == "banzhaf-merge":
        game, spec = rr_to_banzhaf_merge(rr)
        return jsonio.game_to_json(game, coalition=jsonio.to_positions(spec.coalition))
    if target == "shapley-merge":
        game, spec = rr_to_shapley_merge(rr)
        return jsonio.game_to_json(game, coalition=jsonio.to_positions(spec.coalition))
    if target == "banzhaf-split":
        game, player, m = rr_to_banzhaf_split(rr, m)
        return jsonio.game_to_json(game, player=player - 1, m=m)
    raise UsageError(f"cannot reduce to {target!r} from here")


def cmd_reduce(args):
    doc = jsonio.load(args.instance)
    verify = args.trace
    cap = args.max_cells
    certs = []
    source, target = args.source, args.target
    wants_flipped = target == "banzhaf-split"

    if source == "x3c":
        if target != "subsetsum":
            raise UsageError("x3c instances reduce only to subsetsum")
        out, cert = reduce_x3c_to_subsetsum(jsonio.x3c_from_json(doc), verify=verify)
        certs.append(cert)
        result = out.to_json()
    elif target == "subsetsum":
        raise UsageError("only x3c instances reduce to subsetsum")
    elif source == "compare":
        inst = jsonio.compare_from_json(doc)
        if target == "r":
            out, cert = reduce_compare_to_r(inst, verify=verify, max_cells=cap)
            certs.append(cert)
            result = out.to_json()
        else:
            rr, certs = compare_to_rr(inst, flipped=wants_flipped, verify=verify, max_cells=cap)
            result = _gadget_doc(target, rr, args.m)
    elif source == "r":
        if target == "r":
            raise UsageError("source and target are both r")
        inst = jsonio.compare_r_from_json(doc)
        if any(v % 8 for v in (*inst.values, inst.q1, inst.q2)):
            scaled = normalize_times8(inst)
            certs.append(_times8_cert(inst, scaled, verify, cap))
            inst = scaled
        rr, cert = reduce_r_to_rr(inst, flipped=wants_flipped, verify=verify, max_cells=cap)
        certs.append(cert)
        result = _gadget_doc(target, rr, args.m)
    else:
        if target == "r":
            raise UsageError("cannot reduce an rr instance back to r")
        rr = jsonio.rr_from_json(doc)
        if source == "rr-flipped" and not rr.flipped:
            rr = RRInstance(rr.values, flipped=True)
        result = _gadget_doc(target, rr, args.m)

    if args.trace:
        result["trace"] = [c.to_json() for c in certs]
        if any(c.preserved is False for c in certs):
            return result, EXIT_NO
    return result, EXIT_OK


def _times8_cert(before: CompareRInstance, after: CompareRInstance, verify, cap):
    if not verify:
        return ReductionCertificate(before, after, step="times8")
    return ReductionCertificate(before, after, count_sums(before.values, (before.q1, before.q2), max_cells=cap),
                                count_sums(after.values, (after.q1, after.q2), max_cells=cap), step="times8")


def _identity_case(identity, inst, rng, cap):
    if identity == "merge-additivity":
        game = inst
        cases = []
        if rng is None:
            pairs = [(a, b) for a in game.players for b in game.players if a < b]
        else:
            pairs = [tuple(rng.sample(list(game.players), 2))] if game.n >= 2 else []
        for pair in pairs:
            margin = is_beneficial_merge(game, pair, IndexFamily.PROBABILISTIC_BANZHAF, max_cells=cap).margin
            cases.append({"game": jsonio.game_to_json(game), "coalition": jsonio.to_positions(pair),
                          "margin": jsonio.format_fraction(margin), "ok": margin == 0})
        return cases
    check = verify_banzhaf_merge_identity if identity == "banzhaf-merge" else verify_shapley_merge_identity
    direct, formula = check(inst, max_cells=cap)
    return [{"instance": inst.to_json(), "direct": jsonio.format_fraction(direct),
             "formula": jsonio.format_fraction(formula), "ok": direct == formula}]


def cmd_verify(args):
    cases = []
    if args.instance is not None:
        doc = jsonio.load(args.instance)
        if args.identity == "merge-additivity":
            inst = jsonio.game_from_json(doc)
        else:
            inst = jsonio.rr_from_json(doc)
            if inst.flipped:
                raise UsageError("identity checks take an unflipped rr instance")
        cases += _identity_case(args.identity, inst, None, args.max_cells)
    else:
        rng = random.Random(args.seed)
        for _ in range(args.random):
            if args.identity == "merge-additivity":
                inst = random_game(rng, max(2, args.max_n), args.max_value)
                while inst.n < 2:
                    inst = random_game(rng, max(2, args.max_n), args.max_value)
            else:
                inst = random_rr(rng, args.max_n, args.max_value)
            cases += _identity_case(args.identity, inst, rng, args.max_cells)
    passed = sum(c["ok"] for c in cases)
    out = {"identity": args.identity, "seed": args.seed if args.random is not None else None,
           "total": len(cases), "passed": passed, "cases": cases}
    return out, EXIT_OK if passed == len(cases) else EXIT_NO


COMMANDS = {
    "power": cmd_power,
    "merge-check": cmd_merge_check,
    "split-check": cmd_split_check,
    "count": cmd_count,
    "decide": cmd_decide,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
}


def _decision_status(args, yes: bool) -> int:
    if getattr(args, "exit_status", False):
        return EXIT_OK if yes else EXIT_NO
    return EXIT_OK


# -- rendering -----------------------------------------------------------------

def _table(headers, rows) -> str:
    cells = [list(map(str, headers))] + [list(map(str, r)) for r in rows]
    widths = [max(len(r[j]) for r in cells) for j in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render(command: str, doc: dict) -> str:
    if command == "power":
        g = doc["game"]
        rows = [(j, w, r, v) for j, (w, r, v) in enumerate(zip(g["weights"], doc["raw"], doc["values"]))]
        return f"family: {doc['family']}   quota: {g['quota']}\n" + _table(("player", "weight", "raw", "value"), rows)
    if command in ("merge-check", "split-check"):
        keys = [k for k in ("coalition", "player", "mode", "witness", "before", "after", "margin", "beneficial")
                if doc.get(k) is not None]
        return f"family: {doc['family']}\n" + _table(("field", "value"), [(k, doc[k]) for k in keys])
    if command == "count":
        return f"count: {doc['count']}"
    if command == "decide":
        return f"{doc['kind']}: {'yes' if doc['decision'] else 'no'} (counts {', '.join(doc['counts'])})"
    if command == "reduce":
        body = {k: v for k, v in doc.items() if k != "trace"}
        lines = [f"{k}: {v}" for k, v in body.items()]
        for stage in doc.get("trace", []):
            lines.append(f"[{stage['step']}] {stage['source']} -> {stage['target']}"
                         f"  counts {stage['source_counts']} -> {stage['target_counts']}")
        return "\n".join(lines)
    if command == "verify":
        bad = [c for c in doc["cases"] if not c["ok"]]
        lines = [f"{doc['identity']}: {doc['passed']}/{doc['total']} pass"]
        lines += [f"  FAIL {c}" for c in bad[:10]]
        return "\n".join(lines)
    return jsonio.dumps(doc)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        doc, status = COMMANDS[args.command](args)
    except ResourceLimit as exc:
        print(f"wvgpower: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValidationError, WVGError) as exc:
        print(f"wvgpower: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(jsonio.dumps(doc) if args.json else render(args.command, doc))
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
