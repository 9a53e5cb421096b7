"""`ambiprob` command-line front end.

Exit codes: 0 ok, 2 usage / unknown id, 3 undefined conditional (zero statement
mass or empty support), 4 protocol-language error, 5 Monte Carlo disagreement,
6 degenerate protocol.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from fractions import Fraction

from . import dsl, mc
from .engine import PosteriorReport, posterior, render_statement
from .errors import (
    DayOutOfRange,
    DegenerateProtocol,
    DslError,
    EmptySupport,
    InvalidProbability,
    UnsupportedConfig,
    ZeroStatementMass,
)
from .model import DAY_NAMES, WorldConfig, family_str
from .scenarios import BUILTIN_IDS, build_scenario, sweep_formula, week_sweep

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNDEFINED = 3
EXIT_DSL = 4
EXIT_MC_FAIL = 5
EXIT_DEGENERATE = 6


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _parse_day(text: str, cfg: WorldConfig) -> int:
    if cfg.week_length == 7 and text in DAY_NAMES:
        return DAY_NAMES.index(text)
    m = re.fullmatch(r"d?(\d+)", text)
    if m:
        day = int(m.group(1))
        if 0 <= day < cfg.week_length:
            return day
    raise CliError(f"invalid day {text!r} for a {cfg.week_length}-day week", EXIT_USAGE)


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise CliError(f"invalid rational {text!r}", EXIT_USAGE)


def _frac_str(x: Fraction, decimal: bool) -> str:
    s = str(x)
    if decimal:
        s += f" (~{float(x):.6f})"
    return s


def _emit_rows(header, rows, fmt, out):
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    elif fmt == "json":
        json.dump([dict(zip(header, row)) for row in rows], out, indent=2)
        out.write("\n")
    else:
        widths = [
            max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(str(h))
            for i, h in enumerate(header)
        ]
        out.write("  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
        for row in rows:
            out.write("  ".join(str(v).ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")


def _print_report(rep: PosteriorReport, cfg: WorldConfig, args, out):
    stmt = render_statement(rep.statement, cfg)
    if args.format == "json":
        payload = {
            "statement": stmt,
            "statement_mass": str(rep.statement_mass),
            "joint_mass": str(rep.joint_mass),
            "posterior": str(rep.posterior),
            "cases": [
                {
                    "family": family_str(r.family),
                    "prior": str(r.prior),
                    "emission": str(r.emission),
                    "event": r.event,
                }
                for r in rep.case_table
            ],
        }
        if args.decimal:
            payload["posterior_decimal"] = float(rep.posterior)
        json.dump(payload, out, indent=2)
        out.write("\n")
        return
    header = ["family", "prior", "emission", "event"]
    rows = [
        [family_str(r.family), str(r.prior), str(r.emission), int(r.event)]
        for r in rep.case_table
    ]
    _emit_rows(header, rows, args.format, out)
    if args.format == "csv":
        out.write(f"statement,{stmt}\n")
        out.write(f"statement_mass,{rep.statement_mass}\n")
        out.write(f"joint_mass,{rep.joint_mass}\n")
        out.write(f"posterior,{rep.posterior}\n")
    else:
        out.write(f"statement = {stmt}\n")
        out.write(f"statement mass = {_frac_str(rep.statement_mass, args.decimal)}\n")
        out.write(f"joint mass = {_frac_str(rep.joint_mass, args.decimal)}\n")
        out.write(f"posterior = {_frac_str(rep.posterior, args.decimal)}\n")


def _world(args) -> WorldConfig:
    try:
        return WorldConfig(week_length=args.week_days, family_size=args.children)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE)


def _scenario(args, cfg: WorldConfig, target: str):
    if target not in BUILTIN_IDS:
        raise CliError(
            f"unknown scenario id {target!r}; see `ambiprob list`", EXIT_USAGE
        )
    day = _parse_day(args.day, cfg)
    try:
        return build_scenario(target, cfg, day=day, p=_parse_fraction(args.p))
    except (DayOutOfRange, InvalidProbability, UnsupportedConfig) as exc:
        raise CliError(str(exc), EXIT_USAGE)


def cmd_list(args, out):
    cfg = WorldConfig()
    rows = []
    for sid in sorted(BUILTIN_IDS):
        sc = build_scenario(sid, cfg)
        answer = str(sc.expected_answer) if sid != "any-answer" else "p"
        rows.append([sid, answer, sc.description])
    _emit_rows(["id", "answer", "description"], rows, args.format, out)
    return EXIT_OK


def cmd_run(args, out):
    cfg = _world(args)
    sc = _scenario(args, cfg, args.scenario)
    rep = posterior(sc.kernel, sc.canonical_statement, sc.canonical_query)
    _print_report(rep, cfg, args, out)
    return EXIT_OK


def cmd_eval(args, out):
    cfg = _world(args)
    kernel = dsl.load_protocol(args.file, cfg)
    statement = dsl.parse_statement_text(args.say, cfg)
    event = dsl.parse_event_text(args.event, cfg)
    rep = posterior(kernel, statement, event)
    _print_report(rep, cfg, args, out)
    return EXIT_OK


def _mc_target(args, cfg):
    if args.target.endswith(".proc"):
        if not args.say or not args.event:
            raise CliError("--say and --event are required for .proc targets", EXIT_USAGE)
        kernel = dsl.load_protocol(args.target, cfg)
        statement = dsl.parse_statement_text(args.say, cfg)
        event = dsl.parse_event_text(args.event, cfg)
    else:
        sc = _scenario(args, cfg, args.target)
        kernel, statement, event = sc.kernel, sc.canonical_statement, sc.canonical_query
    return kernel, statement, event


def cmd_mc(args, out):
    cfg = _world(args)
    kernel, statement, event = _mc_target(args, cfg)
    report = mc.agreement_check(
        cfg, kernel, statement, event, args.trials, args.seed, shards=args.shards
    )
    r = report.result
    verdict = "PASS" if report.passed else "FAIL"
    if args.format == "json":
        json.dump(
            {
                "estimate": r.estimate,
                "stderr": r.stderr,
                "exact": str(report.exact),
                "tolerance": report.tolerance,
                "verdict": verdict,
                "trials": r.trials,
                "statement_matches": r.statement_matches,
                "hits": r.hits,
                "rejected_families": r.rejected_families,
                "rejected_runs": r.rejected_runs,
                "seed": r.seed,
                "shards": r.shards,
            },
            out,
            indent=2,
        )
        out.write("\n")
    else:
        rows = [
            ["estimate", f"{r.estimate:.6f}"],
            ["stderr", f"{r.stderr:.6f}"],
            ["exact", str(report.exact)],
            ["tolerance", f"{report.tolerance:.6f}"],
            ["statement_matches", r.statement_matches],
            ["hits", r.hits],
            ["rejected_families", r.rejected_families],
            ["rejected_runs", r.rejected_runs],
            ["seed", r.seed],
            ["verdict", verdict],
        ]
        _emit_rows(["field", "value"], rows, args.format, out)
    return EXIT_OK if report.passed else EXIT_MC_FAIL


def cmd_sweep(args, out):
    if not 1 <= args.d_min <= args.d_max:
        raise CliError("need 1 <= d_min <= d_max", EXIT_USAGE)
    rows = []
    all_match = True
    for d, exact in week_sweep(range(args.d_min, args.d_max + 1)):
        formula = sweep_formula(d)
        ok = exact == formula
        all_match &= ok
        rows.append([d, str(exact), str(formula), "yes" if ok else "NO"])
    _emit_rows(["d", "posterior", "formula", "match"], rows, args.format, out)
    return EXIT_OK if all_match else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ambiprob",
        description="Exact disclosure-procedure analysis of the Two-Children "
        "and Tuesday-Child puzzles, with a Monte Carlo cross-check.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--week-days", type=int, default=7, metavar="D")
        p.add_argument("--children", type=int, default=2, metavar="N")
        p.add_argument("--day", default="tue", help="target day (tue, d3, ...)")
        p.add_argument("--p", default="1/2", help="posterior for the any-answer scenario")
        p.add_argument("--format", choices=["table", "csv", "json"], default="table")
        p.add_argument("--decimal", action="store_true",
                       help="also show 6-digit decimal approximations")

    p_list = sub.add_parser("list", help="list builtin scenarios")
    p_list.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p_list.set_defaults(func=cmd_list)

    p_run = sub.add_parser("run", help="exact posterior of a builtin scenario")
    p_run.add_argument("scenario")
    common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_eval = sub.add_parser("eval", help="evaluate a .proc file")
    p_eval.add_argument("file")
    p_eval.add_argument("--say", required=True, help='statement, e.g. "claim(boy,tue)"')
    p_eval.add_argument("--event", required=True, help='event predicate, e.g. "all(boy)"')
    common(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_mc = sub.add_parser("mc", help="Monte Carlo cross-check")
    p_mc.add_argument("target", help="scenario id or .proc file")
    p_mc.add_argument("--say", help="statement (required for .proc targets)")
    p_mc.add_argument("--event", help="event predicate (required for .proc targets)")
    p_mc.add_argument("--trials", type=int, default=1_000_000)
    p_mc.add_argument("--seed", type=int, default=42)
    p_mc.add_argument("--shards", type=int, default=1)
    common(p_mc)
    p_mc.set_defaults(func=cmd_mc)

    p_sweep = sub.add_parser("sweep", help="week-length sweep against (2d-1)/(4d-1)")
    p_sweep.add_argument("d_min", type=int)
    p_sweep.add_argument("d_max", type=int)
    p_sweep.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p_sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args, out)
    except CliError as exc:
        print(f"ambiprob: {exc}", file=sys.stderr)
        return exc.code
    except (ZeroStatementMass, EmptySupport) as exc:
        print(f"ambiprob: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except DslError as exc:
        print(f"ambiprob: {exc}", file=sys.stderr)
        return EXIT_DSL
    except DegenerateProtocol as exc:
        print(f"ambiprob: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except FileNotFoundError as exc:
        print(f"ambiprob: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
