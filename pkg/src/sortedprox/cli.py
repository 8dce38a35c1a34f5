"""Command-line entry point: ``sortedprox <experiment> [options]``.

Config files are flat ``key = value`` text (``#`` comments allowed); CLI
flags override file values.  Tables are written as CSV (header row, LF
endings, shortest round-trip decimals) or as a JSON array of row objects.
Exit codes: 0 success, 2 config error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .errors import ConfigurationError, NumericalError
from .experiments import RUNNERS, SCHEMAS, apply_schema


def parse_config_file(path: str) -> dict:
    raw = {}
    try:
        with open(path) as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigurationError(
                        f"{path}:{lineno}: expected 'key = value'")
                key, _, value = line.partition("=")
                raw[key.strip()] = value.strip()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file: {exc}") from exc
    return raw


def format_table(columns, rows, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([row[c] for c in columns])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([{c: row[c] for c in columns} for row in rows],
                          indent=2, allow_nan=True) + "\n"
    raise ConfigurationError(f"unknown format {fmt!r}")


def _schema_epilog(name: str) -> str:
    lines = ["config keys:"]
    for key, spec in SCHEMAS[name].items():
        default = spec["default"]
        shown = "(required)" if not isinstance(default, (int, float, str, bool)) \
            else f"[default: {default}]"
        lines.append(f"  {key:<14} {spec['help']} {shown}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sortedprox",
        description="Sorted-penalty prox experiments",
    )
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name in RUNNERS:
        sp = sub.add_parser(
            name, help=f"config keys: {', '.join(SCHEMAS[name])}",
            epilog=_schema_epilog(name),
            formatter_class=argparse.RawDescriptionHelpFormatter)
        sp.add_argument("--config", help="flat key=value config file")
        sp.add_argument("--seed", type=int, help="override the config seed")
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = parse_config_file(args.config) if args.config else {}
        if args.seed is not None:
            raw["seed"] = str(args.seed)
        cfg = apply_schema(args.experiment, raw)
        columns, rows, summary = RUNNERS[args.experiment](cfg)
        text = format_table(columns, rows, args.format)
    except ConfigurationError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for line in summary:
        print(f"[{args.experiment}] {line}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
