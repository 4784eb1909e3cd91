"""Command-line front end.

Every subcommand prints line-oriented text by default and one JSON document
with ``--json``. The exit status is 0 iff no error was reported.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import product

from . import blocking as blk
from .core import BudgetExceeded, CyclicConfiguration, LocalRule, spacetime
from .decision import count_preimages, is_injective, is_surjective
from .factor import (
    IllDefinedFactor,
    build_factor,
    format_spectrum,
    period_spectrum,
    verify_factor,
)
from .render import to_ascii, to_pgm
from .scan import Predicates, scan
from .trace import column_trace, orbit_cycle
from .zoo import ZOO, load_rule

MAX_WIDTH = 4096


class CliError(Exception):
    pass


def _window(text: str) -> tuple:
    try:
        i1, i2 = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("window must look like I1,I2") from None
    if i1 > i2:
        raise argparse.ArgumentTypeError("window needs I1 <= I2")
    return i1, i2


def _budgets(args) -> blk.Budgets:
    return blk.Budgets(
        max_len=args.max_len, max_steps=args.max_steps,
        max_period=args.max_period, table_budget=args.budget,
    )


def _classification(rule: LocalRule, c) -> dict:
    fmt = rule.alphabet.format
    out = {"kind": type(c).__name__}
    if isinstance(c, blk.EquicontinuousCertified):
        out.update(m=c.m, p=c.p)
    elif isinstance(c, blk.AlmostEquicontinuousEvidence):
        out.update(word=fmt(c.word), offset=c.offset,
                   preperiod=c.verdict.preperiod, period=c.verdict.period)
    elif isinstance(c, blk.SensitiveEvidence):
        out.update(refuted_lengths=list(c.refuted_lengths))
    else:
        out.update(reason=c.reason)
    return out


def _surjective(rule: LocalRule) -> dict:
    rep = is_surjective(rule)
    out = {"surjective": rep.verdict, "balance_lengths": list(rep.checked_balance_lengths)}
    if rep.orphan is not None:
        out["orphan"] = rule.alphabet.format(rep.orphan)
        out["orphan_preimages"] = count_preimages(rule, rep.orphan)
    return out


def _injective(rule: LocalRule) -> dict:
    rep = is_injective(rule)
    fmt = rule.alphabet.format
    out = {"injective": rep.verdict}
    if rep.diamond is not None:
        out["diamond"] = [fmt(z) for z in rep.diamond]
    if rep.periodic_pair is not None:
        out["periodic_pair"] = [x.format(rule) for x in rep.periodic_pair]
    return out


def _verdict(rule: LocalRule, v) -> dict:
    fmt = rule.alphabet.format
    if isinstance(v, blk.Certified):
        return {"verdict": "Certified", "preperiod": v.preperiod, "period": v.period,
                "column_words": [fmt(c) for c in v.column_words]}
    if isinstance(v, blk.Refuted):
        return {"verdict": "Refuted", "step": v.step,
                "extensions": [fmt(e) for e in v.extensions],
                "differing_columns": [fmt(c) for c in v.differing_columns],
                "word_start": v.word_start}
    return {"verdict": "Inconclusive", "steps_used": v.steps_used, "reason": v.reason}


def cmd_analyze(rule, args) -> dict:
    report = {"rule": rule.name}
    report.update(_surjective(rule))
    report.update(_injective(rule))
    report["classification"] = _classification(rule, blk.classify_kurka(rule, _budgets(args)))
    s = max(rule.radius, 1)
    words = blk.find_blocking_words(rule, s, args.max_len, args.max_steps)
    report["blocking_words"] = [[rule.alphabet.format(w), p] for w, p, _ in words]
    return report


def cmd_blocking(rule, args) -> dict:
    s = args.s or max(rule.radius, 1)
    if args.word is None:
        words = blk.find_blocking_words(rule, s, args.max_len, args.max_steps)
        return {"s": s, "blocking_words": [[rule.alphabet.format(w), p] for w, p, _ in words]}
    q = blk.BlockingQuery(rule.word(args.word), s, args.offset)
    out = {"word": args.word, "s": s, "offset": args.offset}
    out.update(_verdict(rule, blk.verify_blocking(rule, q, args.max_steps, args.margin)))
    return out


def _config(rule, args) -> CyclicConfiguration:
    if args.config is None:
        raise CliError("--config is required")
    return CyclicConfiguration.parse(rule.alphabet, args.config, args.phase)


def cmd_trace(rule, args) -> dict:
    x = _config(rule, args)
    orbit = orbit_cycle(rule, x, args.orbit_steps)
    out = {"preperiod": orbit.preperiod, "period": orbit.period,
           "orbit": [s.format(rule) for s in orbit.snapshots]}
    if args.window is not None:
        t = column_trace(rule, x, *args.window, args.orbit_steps)
        out["column"] = {"window": list(args.window), "preperiod": t.preperiod, "period": t.period,
                         "words": [rule.alphabet.format(w) for w in t.words]}
    return out


def cmd_factor(rule, args) -> dict:
    x = _config(rule, args)
    window = args.window or (-rule.radius, rule.radius)
    f = build_factor(rule, x, *window, args.orbit_steps)
    v = verify_factor(rule, f, args.test_period)
    return {
        "period": f.period, "preperiod": f.preperiod, "window": list(window),
        "phase_words": [rule.alphabet.format(w) for w in f.phase_words],
        "verification": {"checked": v.checked, "in_domain": v.in_domain,
                         "violations": len(v.violations), "passed": v.passed},
    }


def _y_words(rule, args) -> list:
    if args.y:
        return [rule.word(y) for y in args.y]
    syms = args.y_alphabet.split(",") if args.y_alphabet else list(rule.alphabet.symbols)
    idx = [rule.alphabet.index(s) for s in syms]
    return [w for L in range(1, args.y_max_len + 1) for w in product(idx, repeat=L)]


def cmd_spectrum(rule, args) -> dict:
    window = args.window or (-rule.radius, rule.radius)
    rep = period_spectrum(rule, rule.word(args.x_center), _y_words(rule, args), window, args.orbit_steps)
    return {
        "records": format_spectrum(rule, rep),
        "periods": list(rep.periods), "lcm": rep.lcm, "lcm_grew": rep.lcm_grew,
        "x_center_blocking": rep.x_center_blocking,
        "errors": len(rep.errors),
    }


def cmd_scan(_, args) -> dict:
    blocking = None
    if args.blocking:
        s, max_len = (int(v) for v in args.blocking.split(":"))
        blocking = (s, max_len)
    preds = Predicates(args.surjective, args.injective, blocking, args.not_ep, args.max_steps)
    hits = []
    for hit in scan(args.space, preds, args.count, args.seed):
        entry = {"name": hit.name}
        if hit.blocking_word is not None:
            entry["blocking_word"] = hit.rule.alphabet.format(hit.blocking_word)
        if not hit.name.startswith("eca:"):
            entry["rule"] = hit.rule.to_json()
        hits.append(entry)
    return {"space": args.space, "hits": hits}


def cmd_spacetime(rule, args):
    x = _config(rule, args)
    window = args.window or (0, x.period - 1)
    width = window[1] - window[0] + 1
    if width > args.max_width:
        raise BudgetExceeded(f"window width {width} exceeds --max-width {args.max_width}")
    block = spacetime(rule, x, args.steps, *window)
    if args.format == "pgm":
        return to_pgm(block, rule.alphabet)
    return to_ascii(block, rule.alphabet, args.palette)


def cmd_zoo(_, args) -> dict:
    return {
        name: {"surjective": e.surjective, "injective": e.injective,
               "classification": e.classification, "blocking_word": e.blocking_word,
               "orphan": e.orphan, "rule": e.rule.to_json()}
        for name, e in ZOO.items()
    }


def cmd_surjective(rule, args) -> dict:
    return _surjective(rule)


def cmd_injective(rule, args) -> dict:
    return _injective(rule)


COMMANDS = {
    "analyze": cmd_analyze, "surjective": cmd_surjective, "injective": cmd_injective,
    "blocking": cmd_blocking, "trace": cmd_trace, "factor": cmd_factor,
    "spectrum": cmd_spectrum, "scan": cmd_scan, "spacetime": cmd_spacetime, "zoo": cmd_zoo,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rule", default="zoo:paper3", help="path | eca:N | zoo:NAME")
    common.add_argument("--max-len", type=int, default=4)
    common.add_argument("--max-steps", type=int, default=100)
    common.add_argument("--max-period", type=int, default=12)
    common.add_argument("--budget", type=int, default=10**6, help="table entry budget")
    common.add_argument("--json", action="store_true")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("ascii", "pgm"), default="ascii")
    common.add_argument("--config", help="period word of a spatially periodic point")
    common.add_argument("--phase", type=int, default=0)
    common.add_argument("--window", type=_window, help="I1,I2 (use --window=-1,1)")
    common.add_argument("--orbit-steps", type=int, default=None)

    parser = argparse.ArgumentParser(prog="catopo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("analyze", "surjective", "injective", "zoo"):
        sub.add_parser(name, parents=[common])
    p = sub.add_parser("blocking", parents=[common])
    p.add_argument("--word")
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--offset", type=int, default=0)
    p.add_argument("--margin", type=int, default=0)
    sub.add_parser("trace", parents=[common])
    p = sub.add_parser("factor", parents=[common])
    p.add_argument("--test-period", type=int, default=6)
    p = sub.add_parser("spectrum", parents=[common])
    p.add_argument("--x-center", required=True)
    p.add_argument("--y", nargs="*")
    p.add_argument("--y-alphabet", help="comma-separated symbols for generated y words")
    p.add_argument("--y-max-len", type=int, default=4)
    p = sub.add_parser("scan", parents=[common])
    p.add_argument("--space", default="eca")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--surjective", action="store_const", const=True, default=None)
    p.add_argument("--not-surjective", dest="surjective", action="store_const", const=False)
    p.add_argument("--injective", action="store_const", const=True, default=None)
    p.add_argument("--not-injective", dest="injective", action="store_const", const=False)
    p.add_argument("--blocking", help="S:MAX_LEN")
    p.add_argument("--not-ep", type=int, default=None, help="max map period tried")
    p = sub.add_parser("spacetime", parents=[common])
    p.add_argument("--steps", type=int, default=16)
    p.add_argument("--palette", default="")
    p.add_argument("--max-width", type=int, default=MAX_WIDTH)
    p.add_argument("--output", help="write to this file instead of stdout")
    return parser


def _print_text(report, out):
    if isinstance(report, dict):
        for key, value in report.items():
            if isinstance(value, list) and key in ("records", "orbit", "hits"):
                out.write(f"{key}: {len(value)}\n")
                for line in value:
                    if isinstance(line, dict):
                        line = "\t".join([line["name"]] + ([line["blocking_word"]] if "blocking_word" in line else []))
                    out.write(f"  {line}\n")
            elif isinstance(value, (dict, list)):
                out.write(f"{key}: {json.dumps(value)}\n")
            else:
                out.write(f"{key}: {value}\n")
    else:
        out.write(str(report))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "spacetime" and args.steps < 1:
        print("error: --steps must be >= 1", file=sys.stderr)
        return 1
    try:
        rule = None if args.command in ("scan", "zoo") else load_rule(args.rule)
        report = COMMANDS[args.command](rule, args)
    except (CliError, BudgetExceeded, IllDefinedFactor, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if isinstance(report, bytes):
        if getattr(args, "output", None):
            with open(args.output, "wb") as fh:
                fh.write(report)
        else:
            sys.stdout.buffer.write(report)
            sys.stdout.flush()
        return 0
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(report if isinstance(report, str) else json.dumps(report, indent=1))
        return 0
    if args.json and not isinstance(report, str):
        print(json.dumps(report, indent=1))
    else:
        _print_text(report, sys.stdout)
    errors = report.get("errors", 0) if isinstance(report, dict) else 0
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
