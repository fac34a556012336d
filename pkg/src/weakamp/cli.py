"""Command-line front end.

    weakamp figure <name> [--out PATH] [--format csv|json] [--points N]
                          [--set key=value ...] [--no-plot]
    weakamp headline [--temperature K]
    weakamp oracle <suite>

Figure commands write the tabular data (CSV by default) plus a quick-look PNG
next to it.  Exit codes: 0 ok, 1 oracle failure, 2 config error, 3 numerical
error.  WEAKAMP_OUTDIR sets the default output directory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from .errors import ConfigError, WeakampError
from .experiment import REFERENCE_DEVICE, headline_numbers
from .figures import DEFAULT_POINTS, REGISTRY, render_png
from .oracles import SUITES, run_suite


def _parse_overrides(pairs: list[str]) -> dict[str, float]:
    out: dict[str, float] = {}
    for pair in pairs:
        key, sep, val = pair.partition("=")
        if not sep or not key:
            raise ConfigError(f"--set expects key=value, got {pair!r}")
        try:
            out[key] = float(val)
        except ValueError as exc:
            raise ConfigError(f"--set {key}: {val!r} is not a number") from exc
    return out


def _outdir() -> Path:
    return Path(os.environ.get("WEAKAMP_OUTDIR", "."))


def cmd_figure(args: argparse.Namespace) -> int:
    if args.name not in REGISTRY:
        raise ConfigError(f"unknown figure {args.name!r}; have {sorted(REGISTRY)}")
    overrides = _parse_overrides(args.set or [])
    points = args.points if args.points is not None else DEFAULT_POINTS[args.name]
    if points < 2:
        raise ConfigError("--points must be at least 2")
    data = REGISTRY[args.name](points=points, **overrides)
    if args.out is not None:
        out = Path(args.out)
    else:
        out = _outdir() / f"{args.name}.{args.format}"
    out.parent.mkdir(parents=True, exist_ok=True)
    text = data.to_csv_text() if args.format == "csv" else data.to_json_text()
    out.write_text(text)
    print(f"wrote {out}")
    if not args.no_plot:
        png = out.with_suffix(".png")
        render_png(data, str(png))
        print(f"wrote {png}")
    return 0


def cmd_headline(args: argparse.Namespace) -> int:
    device = REFERENCE_DEVICE
    if args.temperature is not None:
        if args.temperature < 0:
            raise ConfigError("--temperature must be >= 0")
        device = replace(device, temperature=args.temperature)
    report = headline_numbers(device)
    print(json.dumps(report, sort_keys=True, indent=2))
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    checks = run_suite(args.suite)
    width = max(len(c.name) for c in checks)
    ok = True
    for c in checks:
        status = "pass" if c.passed else "FAIL"
        print(f"{c.name:<{width}}  residual={c.residual:.3e}"
              f"  threshold={c.threshold:.1e}  {status}")
        ok = ok and c.passed
    print(f"{'all checks passed' if ok else 'ORACLE FAILURE'}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakamp",
        description="Postselected weak-measurement amplification toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", help="generate a figure's data (and PNG)")
    fig.add_argument("name", help=f"one of {', '.join(sorted(REGISTRY))}")
    fig.add_argument("--out", help="output data file path")
    fig.add_argument("--format", choices=("csv", "json"), default="csv")
    fig.add_argument("--points", type=int, default=None,
                     help="grid resolution (side length for fig3b)")
    fig.add_argument("--set", action="append", metavar="KEY=VALUE",
                     help="override a figure parameter")
    fig.add_argument("--no-plot", action="store_true",
                     help="skip the quick-look PNG")
    fig.set_defaults(func=cmd_figure)

    head = sub.add_parser("headline", help="report the quoted figures of merit")
    head.add_argument("--temperature", type=float, default=None,
                      help="bath temperature in K (default: 300)")
    head.set_defaults(func=cmd_headline)

    orc = sub.add_parser("oracle", help="run a cross-validation suite")
    orc.add_argument("suite", choices=sorted(SUITES))
    orc.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WeakampError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
