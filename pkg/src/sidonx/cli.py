"""Command-line interface.

Exit codes: 0 success / verified, 1 verification failure, 2 usage or input
error, 3 internal invariant violation. If ``SIDONX_OUTPUT_DIR`` is set, each
report is also written to ``$SIDONX_OUTPUT_DIR/<command>.<format>``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bench import CSV_COLUMNS, FAMILIES, BenchFamily, run_bench
from .errors import CertificationFailed, SidonError
from .extract import extract_b2g
from .geometry import extract_points
from .inputs import parse_input
from .oracle import max_b2g
from .singer import lifted_cover, singer_difference_set
from .verify import is_b2g, is_sidon

SCHEMA = 1
OUTPUT_DIR_ENV = "SIDONX_OUTPUT_DIR"

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("sidonx")


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int = 0
    trials: int = 200
    g: int = 1
    c: Fraction = Fraction(3)
    input: str | None = None
    fmt: str = "json"

    def as_dict(self):
        return {"command": self.command, "seed": self.seed, "trials": self.trials, "g": self.g,
                "c": _fmt(self.c), "input": self.input}


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (list, tuple)):
        return [_fmt(v) for v in x]
    if isinstance(x, dict):
        return {k: _fmt(v) for k, v in x.items()}
    return x


def _flatten(d, prefix=""):
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = " ".join(str(x) if not isinstance(x, list) else "(" + " ".join(map(str, x)) + ")" for x in v)
        else:
            out[key] = v
    return out


def render(payload: dict, fmt: str, rows: list[dict] | None = None, columns=None) -> str:
    """Serialize a report; ``rows`` switches CSV output to one line per row."""
    payload = _fmt(payload)
    if fmt == "json":
        return json.dumps({"schema": SCHEMA, **payload}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        if rows is None:
            rows = [_flatten(payload)]
        columns = columns or list(rows[0])
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        w.writerows(_fmt(rows))
        return buf.getvalue()
    flat = _flatten(payload)
    return "".join(f"{k}: {v}\n" for k, v in flat.items())


def _emit(text: str, command: str, fmt: str):
    sys.stdout.write(text)
    out_dir = os.environ.get(OUTPUT_DIR_ENV)
    if out_dir:
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        (path / f"{command}.{fmt}").write_text(text, encoding="utf-8")


def cmd_extract(args) -> int:
    cfg = RunConfig("extract", args.seed, args.trials, args.g, args.c, args.file, args.format)
    parsed = parse_input(args.file, "points" if args.points else "integers")
    kw = dict(c=cfg.c, workers=args.workers, stop_at_target=args.stop_at_target)
    if args.points:
        rep, points, cert = extract_points(parsed.data, cfg.g, cfg.trials, cfg.seed, **kw)
        report = rep.as_dict()
        report["subset"] = [list(p) for p in points]
        report["dim"] = parsed.data.dim
        report["reduction"] = {"direction": list(cert.direction), "common_denominator": cert.common_denominator,
                               "min_gap": cert.min_gap, "attempts": cert.attempts}
    else:
        rep = extract_b2g(parsed.data, cfg.g, cfg.trials, cfg.seed, **kw)
        report = rep.as_dict()
    report["dedup_removed"] = parsed.dedup_removed
    _emit(render({"config": cfg.as_dict(), "report": report}, cfg.fmt), "extract", cfg.fmt)
    return EXIT_OK


def cmd_verify(args) -> int:
    values = parse_input(args.file).data
    chk = is_sidon(values, args.mod) if args.kind == "sidon" else is_b2g(values, args.g, args.mod)
    report = {"kind": args.kind, "g": args.g if args.kind == "b2g" else 1, "modulus": args.mod,
              "size": len(values), "ok": chk.ok}
    if not chk.ok:
        w = chk.witness
        report["witness"] = {"kind": w.kind, "description": w.describe(), "elements": list(w.elements),
                             "pairs": [list(p) for p in w.pairs]}
    _emit(render({"command": "verify", "report": report}, args.format), "verify", args.format)
    return EXIT_OK if chk.ok else EXIT_FAILED


def cmd_oracle(args) -> int:
    values = parse_input(args.file).data
    g = args.g if args.kind == "b2g" else 1
    res = max_b2g(values, g, args.budget)
    report = {"kind": args.kind, "g": g, "n": len(values), "optimum": res.optimum, "witness": res.witness,
              "nodes_explored": res.nodes_explored, "exhausted": res.exhausted}
    _emit(render({"command": "oracle", "report": report}, args.format), "oracle", args.format)
    return EXIT_OK


def cmd_singer(args) -> int:
    D = singer_difference_set(args.q)
    cover = lifted_cover(D, args.g)
    blocks = cover.blocks.tolist()
    report = {"q": D.q, "N": D.modulus, "g": args.g, "modulus": cover.modulus,
              "difference_set": list(D.elements), "certification": cover.certification, "blocks": blocks}
    rows = [{"block": i, "elements": " ".join(map(str, b))} for i, b in enumerate(blocks)]
    text = render({"command": "singer", "report": report}, args.format,
                  rows=rows if args.format == "csv" else None)
    _emit(text, "singer", args.format)
    return EXIT_OK


def cmd_bench(args) -> int:
    params = {k: v for k, v in (("gap", args.gap), ("ratio", args.ratio), ("split", args.split),
                                ("distance", args.distance)) if v is not None}
    fam = BenchFamily(args.family, args.n, params)
    rows = run_bench(fam, args.seed, trials=args.trials, c=args.c, instances=args.instances,
                     with_oracle=args.with_oracle, workers=args.workers, timing=args.timing)
    fmt = args.format
    if fmt == "csv":
        text = render({}, "csv", rows=rows, columns=list(CSV_COLUMNS))
    else:
        cfg = {"family": fam.name, "n": fam.n, "params": params, "seed": args.seed, "trials": args.trials,
               "c": args.c, "instances": args.instances}
        text = render({"command": "bench", "config": cfg, "rows": rows}, fmt)
    _emit(text, "bench", fmt)
    return EXIT_OK


def _positive(x):
    v = int(x)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _rational(x):
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {x!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sidonx", description="Certified Sidon and B2[g] subset extraction.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, default_fmt="json"):
        sp.add_argument("--format", choices=("json", "csv", "text"), default=default_fmt)

    e = sub.add_parser("extract", help="extract a certified Sidon / B2[g] subset")
    e.add_argument("file")
    e.add_argument("--g", type=_positive, default=1)
    e.add_argument("--c", type=_rational, default=Fraction(3), help="modulus factor, m ~ c n / g (default 3)")
    e.add_argument("--trials", type=_positive, default=200)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--points", action="store_true", help="input holds rational points, one per line")
    e.add_argument("--workers", type=_positive, default=1)
    e.add_argument("--stop-at-target", action="store_true", help="stop once a trial reaches the averaging bound")
    common(e)
    e.set_defaults(func=cmd_extract)

    v = sub.add_parser("verify", help="check a set; exit 1 with a witness on failure")
    v.add_argument("file")
    v.add_argument("--kind", choices=("sidon", "b2g"), required=True)
    v.add_argument("--g", type=_positive, default=1)
    v.add_argument("--mod", type=_positive, default=None)
    common(v, "text")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact maximum subset by branch and bound")
    o.add_argument("file")
    o.add_argument("--kind", choices=("sidon", "b2g"), required=True)
    o.add_argument("--g", type=_positive, default=1)
    o.add_argument("--budget", type=_positive, default=10_000_000)
    common(o)
    o.set_defaults(func=cmd_oracle)

    s = sub.add_parser("singer", help="Singer difference set and its covering")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--g", type=_positive, default=1)
    common(s)
    s.set_defaults(func=cmd_singer)

    b = sub.add_parser("bench", help="run a benchmark family")
    b.add_argument("--family", choices=FAMILIES, required=True)
    b.add_argument("--n", type=_positive, required=True)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--trials", type=_positive, default=200)
    b.add_argument("--c", type=_rational, default=Fraction(3))
    b.add_argument("--instances", type=_positive, default=1)
    b.add_argument("--with-oracle", action="store_true", help="run the oracle even above n = 30")
    b.add_argument("--gap", type=int, help="dominoes: minimum spacing (>= 3)")
    b.add_argument("--ratio", type=_rational, help="geometric: common ratio > 1")
    b.add_argument("--split", type=_rational, help="two-intervals: fraction in the first interval")
    b.add_argument("--distance", type=int, help="two-intervals: gap between the intervals")
    b.add_argument("--workers", type=_positive, default=1)
    b.add_argument("--timing", action="store_true", help="fill the wall_time_s column")
    common(b, "csv")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except CertificationFailed as exc:
        print(f"sidonx: internal invariant violated: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {exc.witness.describe()}", file=sys.stderr)
        return EXIT_INTERNAL
    except (SidonError, ValueError, OSError) as exc:
        print(f"sidonx: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
