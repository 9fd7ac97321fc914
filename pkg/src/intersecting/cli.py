"""Command line entry point.

Exit codes: 0 verified / success, 1 counterexample, 2 inconclusive, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds as B
from .constructions import KINDS, construct
from .family import Family, FamilyError
from .oracles import (
    VerificationReport,
    sampled_families,
    verify_cor5,
    verify_cross,
    verify_hk,
    verify_lemma7,
    verify_thm1,
    verify_thm4_part1,
    verify_thm4_part1_exhaustive,
    verify_thm4_part2,
    worst_status,
)
from .replicate import SUITES, census, run_suite
from .report import RunManifest, aggregate, summary_line, write_csv, write_report
from .search import EnumBudget, MaximalFamilies

EXIT = {"verified": 0, "counterexample": 1, "inconclusive": 2}
USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _index(args) -> int | None:
    for name in ("u", "i", "l", "s"):
        value = getattr(args, name, None)
        if value is not None:
            return value
    return None


def _family_label(args) -> str:
    idx = _index(args)
    return f"{args.family}({args.n},{args.k}{'' if idx is None else f',{idx}'})"


def cmd_construct(args) -> int:
    fam = construct(args.family, args.n, args.k, _index(args), args.m)
    text = fam.to_json() + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(f"{_family_label(args)}: {len(fam)} sets -> {args.out}")
    else:
        sys.stdout.write(text)
    return 0


SIZE_FORMULAS = {
    "star": lambda n, k, idx, m: B.size_full_star(n, k),
    "h": lambda n, k, idx, m: B.size_h_u(n, k, idx),
    "j": lambda n, k, idx, m: B.size_j_i(n, k, idx),
    "e": lambda n, k, idx, m: B.size_e_l(n, k, idx),
    "t2s": lambda n, k, idx, m: 2,
    "f2s": lambda n, k, idx, m: B.f2s_size(m if m is not None else n, k, idx),
}


def cmd_size(args) -> int:
    idx = _index(args)
    if args.family in ("h", "j", "e", "t2s", "f2s") and idx is None:
        raise UsageError(f"family {args.family!r} needs an index flag")
    value = SIZE_FORMULAS[args.family](args.n, args.k, idx, args.m)
    out = {"family": args.family, "params": {"n": args.n, "k": args.k, "index": idx, "m": args.m},
           "value": value}
    if args.check:
        out["constructed"] = len(construct(args.family, args.n, args.k, idx, args.m))
    print(json.dumps(out, sort_keys=True))
    return 0 if not args.check or out["constructed"] == value else 1


BOUNDS = {
    "hm": (B.hm_bound, ("n", "k")),
    "kz": (B.kz_bound, ("n", "k", "u")),
    "hk": (B.hk_bound, ("n", "k")),
    "cross-easy": (B.cross_easy_bound, ("n", "a", "b")),
    "cross-j": (B.cross_j_bound, ("n", "a", "b", "j")),
    "f2s": (B.f2s_size, ("m", "k", "s")),
    "fz": (B.f_of_z, ("m", "k", "s", "z")),
    "kk": (B.kk_shadow_lb, ("size", "r")),
}


def _number(text: str):
    try:
        return int(text)
    except ValueError:
        return float(text)


def cmd_bound(args) -> int:
    func, names = BOUNDS[args.name]
    given = {key: getattr(args, key) for key in names if getattr(args, key, None) is not None}
    for item in args.params or []:
        if "=" not in item:
            raise UsageError(f"--params expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        given[key.strip()] = _number(value.strip())
    missing = [key for key in names if key not in given]
    extra = [key for key in given if key not in names]
    if missing or extra:
        raise UsageError(f"bound {args.name!r} takes {', '.join(names)}"
                         + (f"; missing {', '.join(missing)}" if missing else "")
                         + (f"; unknown {', '.join(extra)}" if extra else ""))
    value = func(*(given[key] for key in names))
    print(json.dumps({"name": args.name, "params": {k: given[k] for k in names}, "value": value}))
    return 0


def _budget(args) -> EnumBudget:
    return EnumBudget(max_millis=args.budget_ms, max_nodes=args.budget_nodes, seed=args.seed or 0)


def _need(args, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--theorem {args.theorem} needs {' '.join(missing)}")


def _census(args, min_size: int) -> MaximalFamilies:
    if args.n > 12:
        raise UsageError("exhaustive runs are limited to n <= 12")
    return census(args.n, args.k, min_size, args.budget_ms, args.budget_nodes)


def _verify(args) -> VerificationReport:
    th = args.theorem
    if th == "lemma7":
        _need(args, "m", "s", "k")
        return verify_lemma7(args.m, args.s, args.k)
    if th == "cross":
        _need(args, "n", "a", "b", "seed")
        return verify_cross(args.n, args.a, args.b, args.samples, args.seed)
    if th == "thm4p1" and (args.family_file or args.sub_file):
        if not (args.family_file and args.sub_file):
            raise UsageError("--family-file and --sub-file go together")
        f = Family.from_json(Path(args.family_file).read_text())
        m = Family.from_json(Path(args.sub_file).read_text())
        return verify_thm4_part1(f, m)
    _need(args, "n", "k")
    n, k = args.n, args.k
    if th == "thm1":
        _need(args, "u")
        return verify_thm1(n, k, args.u, _census(args, B.kz_bound(n, k, args.u)))
    if th == "hk":
        return verify_hk(n, k, _census(args, B.hk_bound(n, k)))
    if th == "thm4p2":
        _need(args, "t")
        return verify_thm4_part2(n, k, args.t, _census(args, B.size_j_i(n, k, k - args.t + 1)))
    if th == "thm4p1":
        _need(args, "t")
        t = args.t
        floor = 2 + B.binom_exact(n - 1, k - 1) - B.binom_exact(n - 1 - t, k - 1)
        return verify_thm4_part1_exhaustive(n, k, t, _census(args, floor))
    if th == "cor5":
        if args.sampled or n > 10:
            _need(args, "seed")
            rep = verify_cor5(n, k, sampled_families(n, k, args.samples, args.seed))
            rep.params.update(mode="sampled", samples=args.samples, seed=args.seed)
            return rep
        return verify_cor5(n, k, _census(args, B.size_j_i(n, k, 3)))
    raise UsageError(f"unknown theorem {th!r}")


def cmd_verify(args) -> int:
    manifest = RunManifest.start(seed=args.seed)
    for path in (args.family_file, args.sub_file):
        if path:
            manifest.add_input(path)
    report = _verify(args)
    if args.report:
        write_report(args.report, report.to_dict(), manifest)
    if args.csv:
        write_csv(args.csv, [report])
    print(summary_line(report))
    return EXIT[report.status]


def cmd_enumerate(args) -> int:
    stream = MaximalFamilies(args.n, args.k, _budget(args), min_size=args.min_size,
                             rooted=args.rooted, dedup=args.dedup, pivot_rule=args.pivot,
                             workers=args.workers)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for fam in stream:
            out.write(fam.to_json() + "\n")
    finally:
        if args.out:
            out.close()
    print(f"enumerate n={args.n} k={args.k}: {stream.emitted} families, "
          f"{stream.nodes} nodes, {stream.status}", file=sys.stderr if not args.out else sys.stdout)
    return 0 if stream.complete else 2


def cmd_replicate(args) -> int:
    manifest = RunManifest.start(seed=args.seed)
    reports = run_suite(args.suite, args.budget_ms, args.budget_nodes, args.seed, args.samples)
    body = aggregate(args.suite, reports)
    for r in sorted(reports, key=lambda r: r.theorem):
        print(summary_line(r))
    if args.report:
        write_report(args.report, body, manifest)
    if args.csv:
        write_csv(args.csv, reports)
    status = worst_status(r.status for r in reports)
    print(f"suite {args.suite}: {status}")
    return EXIT[status]


def _family_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    for name in ("u", "i", "l", "s"):
        group.add_argument(f"--{name}", type=int)
    p.add_argument("--m", type=int, help="ground set size for t2s/f2s (default n)")


def _budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-ms", type=int, default=600_000)
    p.add_argument("--budget-nodes", type=int, default=10**7)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="intersecting", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="write a named family as JSON")
    _family_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("size", help="closed-form size of a named family")
    _family_flags(p)
    p.add_argument("--check", action="store_true", help="also build the family and compare")
    p.set_defaults(func=cmd_size)

    p = sub.add_parser("bound", help="evaluate a bound")
    p.add_argument("--name", required=True, choices=sorted(BOUNDS))
    for key in ("n", "k", "a", "b", "j", "m", "s", "z", "r", "size"):
        p.add_argument(f"--{key}", type=int)
    p.add_argument("--u", type=_number)
    p.add_argument("--params", nargs="*", metavar="KEY=VALUE")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="check a theorem at small parameters")
    p.add_argument("--theorem", required=True,
                   choices=("thm1", "hk", "thm4p1", "thm4p2", "cor5", "lemma7", "cross"))
    for key in ("n", "k", "u", "t", "m", "s", "a", "b"):
        p.add_argument(f"--{key}", type=int)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int)
    p.add_argument("--sampled", action="store_true", help="cor5: sampled stream instead of a census")
    p.add_argument("--family-file")
    p.add_argument("--sub-file")
    _budget_flags(p)
    p.add_argument("--report")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="stream maximal intersecting families as JSON lines")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--min-size", type=int, default=0)
    p.add_argument("--rooted", action="store_true", help="only families containing [1, k]")
    p.add_argument("--dedup", action="store_true", help="one family per isomorphism class")
    p.add_argument("--pivot", choices=("max", "first"), default="max")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    _budget_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("replicate", help="run a replication suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10_000)
    _budget_flags(p)
    p.add_argument("--report")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_replicate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FamilyError, B.RegimeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
