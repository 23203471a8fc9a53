"""Command-line interface: ``wiretap <command> ...``.

Exit codes: 0 success, 2 malformed input, 3 internal invariant breach,
10 inequality not provable (check), 11 code failed verification (verify-code).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import ratlp, shannon
from .antichains import SYMMETRIES, SweepConfig, SweepTally, enumerate_antichains, sweep
from .discovery import DiscoveryError, discover
from .expr import ExpressionError, parse_relation
from .formats import FormatError, load_code, load_problem
from .lincode import verify
from .network import NetworkSpec, bound_report, build_constraints

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BREACH = 3
EXIT_NOT_PROVABLE = 10
EXIT_CODE_FAIL = 11


class UsageError(Exception):
    pass


def _emit(lines: Sequence[str]) -> None:
    for line in lines:
        print(line)


def cmd_bound(args: argparse.Namespace) -> int:
    p = load_problem(args.problem)
    rep = bound_report(p)
    if args.json:
        print(json.dumps({
            "cutset": str(rep.cutset),
            "routing": str(rep.routing),
            "shannon": str(rep.shannon),
            "gap_class": rep.gap_class,
        }, sort_keys=True))
    else:
        print(rep.line())
    return EXIT_OK


def _prove(cs: shannon.ConstraintSet, f) -> tuple[bool, list[str]]:
    v = shannon.prove_inequality(cs, f)
    if v.provable:
        nz_eq = sum(1 for y in v.equality_multipliers if y)
        return True, [
            f"certificate: {len(v.elemental_multipliers)} elemental inequalities, "
            f"{nz_eq} problem equalities"
        ]
    support = sum(1 for x in v.witness.values() if x)
    return False, [f"witness: cone point with {support} nonzero coordinates violates the target"]


def cmd_check(args: argparse.Namespace) -> int:
    p = load_problem(args.problem)
    try:
        f, rel = parse_relation(args.target, p.spec.ground)
    except ExpressionError as exc:
        raise UsageError(f"--target: {exc}") from exc
    cs = build_constraints(p)
    ok, notes = _prove(cs, f)
    if rel == "=" and ok:
        ok, more = _prove(cs, -f)
        notes += more
    print("provable" if ok else "not-provable")
    _emit(notes)
    return EXIT_OK if ok else EXIT_NOT_PROVABLE


def _truncate_lines(path: Path, keep: int) -> None:
    if not path.exists():
        return
    with open(path) as fh:
        lines = fh.readlines()[:keep]
    with open(path, "w") as fh:
        fh.writelines(lines)


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        cfg = SweepConfig(
            NetworkSpec(args.n1, args.n2, args.decoding),
            args.size_min,
            args.size_max,
            args.symmetry,
            lazy_shannon=not args.eager_shannon,
            workers=args.workers,
            checkpoint=args.checkpoint,
            checkpoint_every=args.checkpoint_every,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    tally = SweepTally()
    out = sys.stdout
    close = False
    if args.out:
        path = Path(args.out)
        resumed = args.checkpoint and Path(args.checkpoint).exists()
        if resumed:
            # drop records written after the last checkpoint; they are regenerated
            with open(args.checkpoint) as fh:
                done = json.load(fh)["tallies"]["total_orbits"]
            _truncate_lines(path, done)
        out = open(path, "a" if resumed else "w")
        close = True
    try:
        for rec in sweep(cfg, tally):
            out.write(json.dumps(rec.to_json(), sort_keys=True) + "\n")
        out.write(json.dumps({"summary": tally.to_json()}, sort_keys=True) + "\n")
    finally:
        if close:
            out.close()
    if args.out:
        print(json.dumps({"summary": tally.to_json()}, sort_keys=True))
    return EXIT_OK


def cmd_discover(args: argparse.Namespace) -> int:
    if args.denominator_bound < 1:
        raise UsageError("--denominator-bound must be at least 1")
    p = load_problem(args.problem)
    try:
        rep = discover(p, args.denominator_bound)
    except DiscoveryError as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        print(json.dumps(rep.to_json(), sort_keys=True))
    else:
        _emit(rep.lines())
    return EXIT_OK


def cmd_verify_code(args: argparse.Namespace) -> int:
    p = load_problem(args.problem)
    code = load_code(args.code, p.spec.edges)
    rep = verify(code, p)
    if args.json:
        print(json.dumps({
            "relay_ok": rep.relay_ok,
            "decode_ok": rep.decode_ok,
            "secrecy_ok": rep.secrecy_ok,
            "rate": str(rep.rate),
            "entropy_profile": list(rep.entropy_profile),
            "failures": [str(f) for f in rep.failures],
        }, sort_keys=True))
    else:
        _emit(rep.lines())
    return EXIT_OK if rep.ok else EXIT_CODE_FAIL


def cmd_enumerate(args: argparse.Namespace) -> int:
    if not 0 <= args.ground <= 8:
        raise UsageError("--ground must be between 0 and 8")
    it = enumerate_antichains(args.ground, args.size_min, args.size_max)
    if args.count_only:
        print(sum(1 for _ in it))
        return EXIT_OK
    for chain in it:
        sets = [[b + 1 for b in range(args.ground) if m >> b & 1] for m in chain]
        print(json.dumps(sets))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wiretap", description="Secret-key bounds for two-layer wiretap networks.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="cut-set, routing and Shannon bounds of a problem")
    b.add_argument("problem")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bound)

    c = sub.add_parser("check", help="prove an information inequality under a problem's constraints")
    c.add_argument("problem")
    c.add_argument("--target", required=True, help='e.g. "H(K) >= H(M)"')
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("sweep", help="classify every wiretap pattern of a network")
    s.add_argument("--n1", type=int, required=True)
    s.add_argument("--n2", type=int, required=True)
    s.add_argument("--class", dest="decoding", choices=["I", "II"], required=True)
    s.add_argument("--size-min", type=int)
    s.add_argument("--size-max", type=int)
    s.add_argument("--symmetry", choices=SYMMETRIES, default="within-layer")
    s.add_argument("--out", help="JSONL output file (default stdout)")
    s.add_argument("--checkpoint", help="checkpoint file; an existing one is resumed")
    s.add_argument("--checkpoint-every", type=int, default=1000)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--eager-shannon", action="store_true", help="solve the Shannon LP even when cut-set meets routing")
    s.set_defaults(func=cmd_sweep)

    d = sub.add_parser("discover", help="structure implied at the Shannon bound")
    d.add_argument("problem")
    d.add_argument("--denominator-bound", type=int, default=16)
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_discover)

    v = sub.add_parser("verify-code", help="verify a linear code against a problem")
    v.add_argument("problem")
    v.add_argument("code")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify_code)

    e = sub.add_parser("enumerate", help="enumerate antichains over a ground set")
    e.add_argument("--ground", type=int, required=True)
    e.add_argument("--count-only", action="store_true")
    e.add_argument("--size-min", type=int)
    e.add_argument("--size-max", type=int)
    e.set_defaults(func=cmd_enumerate)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (shannon.InvariantBreach, ratlp.CertificateError) as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH


if __name__ == "__main__":
    sys.exit(main())
