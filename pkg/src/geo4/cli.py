"""geo4 command line.

Exit codes: 0 ok, 1 verification failure, 2 parity mismatch, 3 open point,
4 domain error (out of region, malformed input, parse error).

An optional config file (--config, or GEO4_CONFIG) holds `key = value` lines;
`#` starts a comment. Known keys: fixtures, workers, log_level. Command line
flags and GEO4_FIXTURES take precedence over the file.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import fixtures
from .dsl import parse_recipe, parse_word, print_recipe
from .errors import Geo4Error, ParityMismatch
from .invariants import (Parity, Pi1Class, ManifoldDescriptor, chars_from, chars_from_betti,
                         chars_from_c1sq_chih, classify)

EXIT_OK, EXIT_VERIFY, EXIT_PARITY, EXIT_OPEN, EXIT_DOMAIN = 0, 1, 2, 3, 4
CONFIG_KEYS = ("fixtures", "workers", "log_level")


class UsageError(Exception):
    pass


def read_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    out = {}
    for i, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip().strip('"')
        if not sep or key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{i}: expected one of {', '.join(CONFIG_KEYS)} as key = value")
        out[key] = value
    return out


def _emit_json(obj: dict, path: Optional[str] = None):
    text = json.dumps(obj, indent=1, sort_keys=True) + "\n"
    if path and path != "-":
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _write(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# ---------------------------------------------------------------------------
# commands


def _chars(args):
    b1 = args.b1
    if args.e is not None or args.sigma is not None:
        if args.e is None or args.sigma is None:
            raise UsageError("--e and --sigma go together")
        return chars_from(args.e, args.sigma, b1)
    if args.b2plus is not None or args.b2minus is not None:
        if args.b2plus is None or args.b2minus is None:
            raise UsageError("--b2plus and --b2minus go together")
        c = chars_from_betti(args.b2plus, args.b2minus)
        return chars_from(c.e - 2 * b1, c.sigma, b1) if b1 else c
    if args.c1sq is not None or args.chih is not None:
        if args.c1sq is None or args.chih is None:
            raise UsageError("--c1sq and --chih go together")
        c = chars_from_c1sq_chih(args.c1sq, Fraction(args.chih))
        return chars_from(c.e, c.sigma, b1)
    raise UsageError("give one of --e/--sigma, --b2plus/--b2minus, --c1sq/--chih")


def cmd_convert(args, ctx) -> int:
    c = _chars(args)
    row = c.to_json()
    if c.chih.denominator == 1:
        row["chih"] = str(c.chih.numerator)
    if args.json:
        _emit_json({"fixture_hash": ctx["hash"], **{k: v for k, v in row.items() if v is not None}})
    else:
        print("  ".join(f"{k}={v}" for k, v in row.items()))
    return EXIT_OK


def cmd_classify(args, ctx) -> int:
    c = _chars(args)
    d = ManifoldDescriptor(chars=c, pi1=Pi1Class(args.pi1), parity=Parity(args.parity))
    print(classify(d))
    return EXIT_OK


def cmd_plan(args, ctx) -> int:
    from .geography.plan import ExternalReference, Open, Realized, plan
    from .geography.validate import validate_full
    r = plan((args.m, args.n))
    out = {"fixture_hash": ctx["hash"], "m": args.m, "n": args.n}
    if isinstance(r, Realized):
        text = print_recipe(r.recipe)
        v = validate_full(r.recipe)
        out.update(status="realized", recipe_id=r.recipe_id, rule=r.rule, stage=r.stage, recipe=text,
                   model=str(v.model), irreducible=v.descriptor.irreducible.status,
                   chain=[list(x) for x in v.chain])
        if args.emit_recipe:
            _write(args.emit_recipe, text)
    elif isinstance(r, ExternalReference):
        out.update(status="external", citation=r.citation)
    else:
        assert isinstance(r, Open)
        out.update(status="open")
    if args.json:
        _emit_json(out)
    else:
        print(f"({args.m},{args.n}) {out['status']}", end="")
        if out["status"] == "realized":
            print(f" {out['recipe_id']} -> {out['model']}, irreducible={out['irreducible']}")
            if not args.emit_recipe or args.emit_recipe != "-":
                print(out["recipe"], end="")
        elif out["status"] == "external":
            print(f" [{out['citation']}]")
        else:
            print(" (no known construction)")
    return EXIT_OPEN if out["status"] == "open" else EXIT_OK


def cmd_scan(args, ctx) -> int:
    from .geography.scan import Bounds, scan
    try:
        b = Bounds.parse(args.bounds)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep = scan(b, workers=args.workers if args.workers is not None else ctx.get("workers"),
               validate=args.validate)
    if args.csv:
        _write(args.csv, rep.to_csv())
    if args.svg:
        _write(args.svg, rep.to_svg(ctx["hash"]))
    if args.json:
        _emit_json(rep.to_json(ctx["hash"]), args.json)
    if not any(x == "-" for x in (args.csv, args.svg, args.json)):
        counts = rep.counts()
        print(" ".join(f"{k}={v}" for k, v in counts.items()))
        print("markers: " + " ".join(f"({p.m},{p.n})" for p in rep.markers))
    return EXIT_VERIFY if rep.invalid else EXIT_OK


def cmd_verify(args, ctx) -> int:
    from .verify import run_suite
    checks = run_suite(args.suite, ctx["fixtures"])
    ok = all(c.passed for c in checks)
    if args.json:
        _emit_json({"fixture_hash": ctx["hash"], "suite": args.suite, "passed": ok,
                    "checks": [c.to_json() for c in checks]})
    else:
        print(f"# verify {args.suite} (fixtures {ctx['hash']}; homological checks are necessary conditions only)")
        for c in checks:
            print(c.line())
        print(f"# {sum(c.passed for c in checks)}/{len(checks)} passed")
    return EXIT_OK if ok else EXIT_VERIFY


def _source(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def cmd_parse(args, ctx) -> int:
    text = _source(args.file)
    if args.word:
        w = parse_word(text)
        print(f"word with {len(w)} letters")
        return EXIT_OK
    from .geography.validate import count_nodes
    r = parse_recipe(text)
    again = parse_recipe(print_recipe(r))
    if again != r:
        print("round trip changed the tree", file=sys.stderr)
        return EXIT_VERIFY
    print(f"{r.kind} {r.get('id') or ''} with {count_nodes(r)} nodes; round trip ok".replace("  ", " "))
    return EXIT_OK


def cmd_print(args, ctx) -> int:
    text = _source(args.file)
    if args.word:
        from .dsl import format_word
        print(format_word(parse_word(text)))
    else:
        sys.stdout.write(print_recipe(parse_recipe(text)))
    return EXIT_OK


# ---------------------------------------------------------------------------


def _add_chars(p):
    p.add_argument("--e", type=int)
    p.add_argument("--sigma", type=int)
    p.add_argument("--b2plus", type=int)
    p.add_argument("--b2minus", type=int)
    p.add_argument("--c1sq", type=int)
    p.add_argument("--chih", help="integer or fraction p/q")
    p.add_argument("--b1", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="geo4", description="Geography of 4-manifolds with fundamental group Z2.")
    ap.add_argument("--config", default=os.environ.get("GEO4_CONFIG"), help="key = value config file")
    ap.add_argument("--fixtures", help="fixture directory (overrides GEO4_FIXTURES)")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("convert", help="convert between (e, sigma), (b2+, b2-) and (c1^2, chi_h)")
    _add_chars(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_convert)

    p = sub.add_parser("classify", help="standard model for given numbers, pi1 and parity")
    _add_chars(p)
    p.add_argument("--pi1", default="Z2", choices=["Trivial", "Z2", "Unknown"])
    p.add_argument("--parity", default="Odd", choices=["Odd", "Even", "Unknown"])
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("plan", help="construction for the lattice point (m, n) = (b2+, b2-)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--emit-recipe", metavar="FILE", help="write the recipe text ('-' for stdout)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_plan)

    p = sub.add_parser("scan", help="coverage over a box, e.g. 1:15 or 1:15,1:60")
    p.add_argument("bounds")
    p.add_argument("--csv", metavar="FILE")
    p.add_argument("--svg", metavar="FILE")
    p.add_argument("--json", metavar="FILE")
    p.add_argument("--workers", type=int)
    p.add_argument("--validate", action="store_true", help="also validate every recipe")
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("verify", help="run a fixture suite")
    p.add_argument("suite", choices=["relations", "words", "groups", "recipes"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    for name, fn, text in (("parse", cmd_parse, "parse and round-trip check"),
                           ("print", cmd_print, "print in canonical form")):
        p = sub.add_parser(name, help=f"{text} a recipe (or --word a twist word)")
        p.add_argument("file", help="path, or '-' for stdin")
        p.add_argument("--word", action="store_true")
        p.set_defaults(fn=fn)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        conf = read_config(args.config)
    except (UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    level = "INFO" if args.verbose else conf.get("log_level", "ERROR")
    logging.basicConfig(level=getattr(logging, level.upper(), logging.ERROR), format="%(levelname)s %(message)s")
    fx = args.fixtures or os.environ.get("GEO4_FIXTURES") or conf.get("fixtures")
    root = Path(fx) if fx else fixtures.fixture_dir()
    ctx = {"fixtures": root, "hash": fixtures.fixture_hash(root)}
    if "workers" in conf:
        ctx["workers"] = int(conf["workers"])
    try:
        return args.fn(args, ctx)
    except ParityMismatch as exc:
        print(f"error: ParityMismatch: {exc}", file=sys.stderr)
        return EXIT_PARITY
    except (Geo4Error, UsageError, ValueError, OSError) as exc:
        name = type(exc).__name__
        print(f"error: {name}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
