"""Command-line front end.

Subcommands:
  report    full invariant record for one instance file
  rr        Ratliff-Rush length table for one instance file
  verify    run a named verification suite over a seeded family
  examples  run the built-in worked-example corpus against expected values

Exit codes: 0 ok, 2 input error, 3 resource exhaustion (truncation cap or
superficial retries), 4 verification failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .analysis import analyze
from .corpus import CORPUS, STABILITY_SAMPLE, metamorphic_row, row_presentation
from .errors import (
    InputError,
    SuperficialSearchFailed,
    TruncationExhausted,
)
from .instancefile import load_instance, parse_instance, serialize_instance
from .polynomials import DEFAULT_CHAR, FieldSpec
from .ratliff import ratliff_rush
from .report import report_dict, to_human, to_json
from .theorems import THEOREM_IDS, family_for, run_suite

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_VERIFY = 4


def _add_common(sub):
    sub.add_argument("--seed", type=int, default=0, help="master random seed")
    sub.add_argument("--truncation", type=int, default=None, help="override truncation degree")
    sub.add_argument("--char", type=int, default=None, help="override characteristic")
    sub.add_argument(
        "--format", choices=("human", "structured"), default="human",
        help="human table or deterministic JSON",
    )


def build_parser():
    ap = argparse.ArgumentParser(
        prog="agmod",
        description="Exact filtration invariants of matrix cokernels over "
        "local hypersurface rings",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("report", help="invariant report for an instance file")
    rep.add_argument("file")
    rep.add_argument("--check-stability", action="store_true",
                     help="recompute everything at truncation N+2 and compare")
    _add_common(rep)

    rr = sub.add_parser("rr", help="Ratliff-Rush length table")
    rr.add_argument("file")
    rr.add_argument("--levels", type=int, default=4, help="levels to print")
    _add_common(rr)

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("theorem", help="one of: " + ", ".join(THEOREM_IDS))
    ver.add_argument("--trials", type=int, default=25)
    ver.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    ver.add_argument("--family", default=None,
                     help="file with instance files separated by blank lines")
    ver.add_argument("--dump-dir", default=".", help="where failing reproducers go")
    _add_common(ver)

    ex = sub.add_parser("examples", help="run the built-in corpus")
    _add_common(ex)
    return ap


def _load(path, args):
    inst = load_instance(path)
    pres = inst.presentation
    if args.char is not None and args.char != pres.p:
        raise InputError("characteristic override conflicts with the instance file")
    seed = args.seed if args.seed else (inst.seed or 0)
    truncation = args.truncation or inst.truncation
    return pres, seed, truncation


def cmd_report(args) -> int:
    pres, seed, truncation = _load(args.file, args)
    a = analyze(pres, seed=seed, truncation=truncation,
                check_stability=args.check_stability)
    rec = report_dict(a)
    sys.stdout.write(to_json(rec) if args.format == "structured" else to_human(rec))
    return EXIT_OK


def cmd_rr(args) -> int:
    pres, seed, truncation = _load(args.file, args)
    if pres.dim < 1:
        raise InputError("Ratliff-Rush table needs dimension >= 1")
    data = ratliff_rush(pres, n_max=args.levels, K=truncation)
    lines = []
    for n in range(1, args.levels + 1):
        value = data.lengths[n - 1] if n - 1 < len(data.lengths) else 0
        lines.append((n, value))
    if args.format == "structured":
        import json

        sys.stdout.write(json.dumps(
            {"lengths": {str(n): v for n, v in lines},
             "r_poly": data.r_poly, "truncation": data.truncation},
            sort_keys=True, separators=(",", ":")) + "\n")
    else:
        sys.stdout.write("n   l(closure(m^n M)/m^n M)\n")
        for n, v in lines:
            sys.stdout.write(f"{n:<3} {v}\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.theorem not in THEOREM_IDS:
        raise InputError(f"unknown suite {args.theorem!r}; pick from {', '.join(THEOREM_IDS)}")
    field = FieldSpec(args.char or DEFAULT_CHAR)
    if args.family:
        instances = _load_family(args.family)
    else:
        instances = family_for(args.theorem, field, args.trials, args.seed)
    verdicts = run_suite(args.theorem, instances, args.seed, jobs=args.jobs)
    passed = sum(1 for v in verdicts if v.hypotheses_met and v.conclusion_holds)
    skipped = sum(1 for v in verdicts if v.hypotheses_met is False)
    unknown = sum(1 for v in verdicts if v.hypotheses_met is None and not v.inconclusive)
    inconclusive = sum(1 for v in verdicts if v.inconclusive and v.hypotheses_met is not False)
    failures = [v for v in verdicts if v.failed]
    for k, v in enumerate(failures):
        path = os.path.join(args.dump_dir, f"reproducer_{args.theorem.replace('.', '_')}_{k}.txt")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(_reproducer_text(instances, v))
        sys.stderr.write(f"reproducer written: {path}\n")
    sys.stdout.write(
        f"{args.theorem}: {passed} passed, {len(failures)} failed, "
        f"{skipped} hypothesis-not-met, {unknown} hypothesis-unknown, "
        f"{inconclusive} inconclusive (of {len(verdicts)})\n"
    )
    return EXIT_VERIFY if failures else EXIT_OK


def _reproducer_text(instances, verdict) -> str:
    for pres in instances:
        from .theorems import _fingerprint

        if _fingerprint(pres, 0).split("phi=")[1] in verdict.fingerprint:
            return serialize_instance(pres)
    return f"# fingerprint: {verdict.fingerprint}\n"


def _load_family(path):
    with open(path, "r", encoding="utf-8") as fh:
        blocks = fh.read().split("\n\n")
    return [parse_instance(b).presentation for b in blocks if b.strip()]


def cmd_examples(args) -> int:
    field = FieldSpec(args.char or DEFAULT_CHAR)
    t0 = time.time()
    rows = [(row.name, row_presentation(row, field), row.expected_h, row.expected_depth,
             row.name in STABILITY_SAMPLE) for row in CORPUS]
    name, pres, eh, ed = metamorphic_row(field)
    rows.append((name, pres, eh, ed, False))
    failures = 0
    out = []
    for name, pres, expected_h, expected_depth, stability in rows:
        a = analyze(pres, seed=args.seed, truncation=args.truncation,
                    check_stability=stability)
        ok = a.depth == expected_depth and (expected_h is None or a.h.h == expected_h)
        failures += 0 if ok else 1
        out.append({
            "name": name,
            "h": list(a.h.h),
            "h_str": a.h.to_str(),
            "depth": a.depth,
            "expected_h": list(expected_h) if expected_h else None,
            "expected_depth": expected_depth,
            "status": "ok" if ok else "MISMATCH",
        })
    elapsed = time.time() - t0
    if args.format == "structured":
        import json

        sys.stdout.write(json.dumps({"rows": out, "elapsed_s": round(elapsed, 3)},
                                    sort_keys=True, separators=(",", ":")) + "\n")
    else:
        width = max(len(r["name"]) for r in out)
        sys.stdout.write(f"{'instance':<{width}}  {'h':<16} {'depth':>5}  status\n")
        for r in out:
            sys.stdout.write(
                f"{r['name']:<{width}}  {r['h_str']:<16} {r['depth']:>5}  {r['status']}\n"
            )
        sys.stdout.write(f"{len(out)} instances in {elapsed:.1f}s\n")
    return EXIT_VERIFY if failures else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "report": cmd_report,
        "rr": cmd_rr,
        "verify": cmd_verify,
        "examples": cmd_examples,
    }
    try:
        return handlers[args.command](args)
    except InputError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except (TruncationExhausted, SuperficialSearchFailed) as exc:
        sys.stderr.write(f"resource exhaustion: {exc}\n")
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
