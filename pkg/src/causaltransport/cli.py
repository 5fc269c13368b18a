"""Command-line interface.

Subcommands: closure, relate, audit, gen, demo-smoothing, timefns.
Exit codes: 0 success or positive verdict, 1 negative verdict or audit
discrepancy, 2 invalid input, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .audit import THEOREM_IDS, run_audit
from .errors import (CausalTransportError, InvariantViolationError,
                     ValidationError)
from .fileio import (coupling_to_sparse, read_family, read_ground,
                     read_measure, read_relation, write_family, write_ground,
                     write_measure, write_points, write_relation)
from .models import gen_cyclic, gen_measure, gen_minkowski, gen_random_dag
from .relations import causal_closure, future_set
from .timefns import (SmoothingParams, build_separating_family,
                      multi_time_ordering, t_kl_indicator_demo)
from .transport import equivalence_audit, oracle_relate, relate, verify_verdict


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="generator seed")
    parser.add_argument("--format", choices=("text", "machine"), default="text",
                        help="report style: human text or JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="causaltransport",
        description="causal precedence between measures on finite event sets")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closure", help="reflexive transitive closure of a ground")
    p.add_argument("ground", help="ground file")
    p.add_argument("-o", "--out", help="relation file to write (default: stdout)")
    _common_flags(p)

    p = sub.add_parser("relate", help="decide precedence between two measures")
    p.add_argument("relation", help="relation file")
    p.add_argument("mu", help="measure file (earlier)")
    p.add_argument("nu", help="measure file (later)")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check with the exhaustive enumeration oracle")
    _common_flags(p)

    p = sub.add_parser("audit", help="randomized equivalence audit")
    p.add_argument("theorem", choices=THEOREM_IDS)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-n", type=int, default=10, dest="max_n")
    p.add_argument("--sampler-trials", type=int, default=200, dest="sampler_trials")
    _common_flags(p)

    p = sub.add_parser("gen", help="write generated instance files")
    gsub = p.add_subparsers(dest="kind", required=True)

    g = gsub.add_parser("dag", help="random acyclic ground")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--out", default="ground.json")
    _common_flags(g)

    g = gsub.add_parser("cyclic", help="ground with a directed cycle")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--out", default="ground.json")
    _common_flags(g)

    g = gsub.add_parser("minkowski", help="1+1 flat spacetime point sample")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--out", default="ground.json")
    g.add_argument("--out-points", default="points.json", dest="out_points")
    _common_flags(g)

    g = gsub.add_parser("measure", help="random measure on a ground")
    g.add_argument("--ground", required=True)
    g.add_argument("--support", type=int, required=True)
    g.add_argument("--uniform", action="store_true")
    g.add_argument("--out", default="measure.json")
    _common_flags(g)

    p = sub.add_parser("demo-smoothing",
                       help="smoothed indicator of a future set, per event")
    p.add_argument("ground", help="ground file")
    p.add_argument("family", help="family or time-function file")
    p.add_argument("--events", required=True,
                   help="comma-separated generator events, e.g. 0,2")
    p.add_argument("--k", type=int, default=40)
    p.add_argument("--l", type=int, default=40)
    _common_flags(p)

    p = sub.add_parser("timefns", help="emit a separating family for a ground")
    p.add_argument("ground", help="ground file")
    p.add_argument("-o", "--out", default="family.json")
    _common_flags(p)

    return parser


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "machine":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _cmd_closure(args) -> int:
    ground = read_ground(args.ground)
    closure = causal_closure(ground)
    doc = {"n": closure.n, "pairs": [list(p) for p in sorted(closure.pairs)]}
    if args.out:
        write_relation(args.out, closure)
        _emit(args, {"written": [args.out], **doc}, f"wrote {args.out}")
    else:
        _emit(args, doc, json.dumps(doc, sort_keys=True))
    return 0


def _cmd_relate(args) -> int:
    r = read_relation(args.relation)
    mu = read_measure(args.mu)
    nu = read_measure(args.nu)
    verdict = relate(r, mu, nu)
    verify_verdict(r, mu, nu, verdict)

    oracle = None
    if args.oracle:
        oracle = oracle_relate(r, mu, nu)
        if oracle != verdict.related:
            print(f"oracle disagrees: flow={verdict.related} oracle={oracle}",
                  file=sys.stderr)
            return 3

    conditions = None
    if r.n <= 20:
        conditions = equivalence_audit(r, mu, nu, require_preorder=False).conditions()

    payload = {
        "related": verdict.related,
        "witness": coupling_to_sparse(verdict.witness.joint) if verdict.witness else None,
        "certificate": sorted(verdict.certificate) if verdict.certificate else None,
        "conditions": conditions,
        "oracle": oracle,
    }
    lines = [f"related: {'yes' if verdict.related else 'no'}"]
    if verdict.witness is not None:
        lines.append(f"witness: {coupling_to_sparse(verdict.witness.joint)}")
    if verdict.certificate is not None:
        lines.append(f"certificate: {sorted(verdict.certificate)}")
    if conditions is not None:
        for key, value in conditions.items():
            lines.append(f"condition {key}: {'yes' if value else 'no'}")
    else:
        lines.append("conditions: skipped (n > 20)")
    if oracle is not None:
        lines.append(f"oracle: {'yes' if oracle else 'no'} (agrees)")
    _emit(args, payload, "\n".join(lines))
    return 0 if verdict.related else 1


def _cmd_audit(args) -> int:
    report = run_audit(args.theorem, args.trials, args.max_n, args.seed,
                       sampler_trials=args.sampler_trials)
    _emit(args, report.to_json(), report.to_text())
    return 0 if report.ok else 1


def _cmd_gen(args) -> int:
    written = []
    if args.kind == "dag":
        ground = gen_random_dag(args.n, args.density, args.seed)
        write_ground(args.out, ground)
        written.append(args.out)
    elif args.kind == "cyclic":
        ground = gen_cyclic(args.n, args.seed)
        write_ground(args.out, ground)
        written.append(args.out)
    elif args.kind == "minkowski":
        sample = gen_minkowski(args.n, args.seed)
        write_ground(args.out, sample.ground)
        write_points(args.out_points, sample.points)
        written.extend([args.out, args.out_points])
    else:
        ground = read_ground(args.ground)
        mu = gen_measure(ground, args.support, args.seed, uniform=args.uniform)
        write_measure(args.out, mu)
        written.append(args.out)
    _emit(args, {"written": written}, "\n".join(f"wrote {w}" for w in written))
    return 0


def _cmd_demo_smoothing(args) -> int:
    ground = read_ground(args.ground)
    fns = read_family(args.family, ground=ground)
    try:
        events = sorted({int(tok) for tok in args.events.split(",") if tok.strip()})
    except ValueError as exc:
        raise ValidationError(f"bad --events list: {args.events!r}") from exc
    params = SmoothingParams(k=args.k, l=args.l)
    smoothed = t_kl_indicator_demo(fns, events, params)
    ordering = multi_time_ordering(fns)
    future = future_set(ordering, events)
    indicator = [1.0 if p in future else 0.0 for p in range(ground.n)]
    rows = [(p, smoothed[p], indicator[p], abs(smoothed[p] - indicator[p]))
            for p in range(ground.n)]
    payload = {
        "k": args.k, "l": args.l, "events": events,
        "rows": [{"event": p, "smoothed": s, "indicator": i, "difference": d}
                 for p, s, i, d in rows],
        "max_difference": max(d for _, _, _, d in rows),
    }
    lines = [f"{'event':>6} {'smoothed':>14} {'indicator':>10} {'difference':>12}"]
    for p, s, i, d in rows:
        lines.append(f"{p:>6} {s:>14.9f} {i:>10.1f} {d:>12.3e}")
    lines.append(f"max difference: {payload['max_difference']:.3e}")
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_timefns(args) -> int:
    ground = read_ground(args.ground)
    family = build_separating_family(ground)
    write_family(args.out, family.fns)
    _emit(args, {"written": [args.out], "size": len(family)},
          f"wrote {args.out} ({len(family)} functions)")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "closure": _cmd_closure,
        "relate": _cmd_relate,
        "audit": _cmd_audit,
        "gen": _cmd_gen,
        "demo-smoothing": _cmd_demo_smoothing,
        "timefns": _cmd_timefns,
    }
    try:
        return handlers[args.command](args)
    except InvariantViolationError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3
    except CausalTransportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
