"""Command line front end.

Exit status: 0 pass, 1 fail, 2 inconclusive, 3 usage or parse error.
Verdicts go to stdout, diagnostics to stderr.  Default bounds come from
``SOSBOUND_BOUNDS`` as ``height,labels,rounds`` (``3,3,50`` if unset).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional, Sequence

from .dyadic import transform_tss
from .engine import LTS, SaturationError, derive_lts
from .kinds import ALL_KINDS, KIND_TO_PROPERTY, PROPERTY_IDS, PROPERTY_NAMES, DyadicKind
from .lattice import (check_property, equivalence_class, hasse_lines, implication_matrix,
                      render_conjunction)
from .stypes import check_rule_format, legacy_eta_check
from .syntax import ParseError, SpecFile, parse_closed_term, parse_spec_file, parse_term, render_spec
from .tss import DyadicFormula, Formula
from .verdict import EXIT_CODES

BOUNDS_ENV = "SOSBOUND_BOUNDS"
DEFAULT_BOUNDS = (3, 3, 50)
EXIT_USAGE = 3


class UsageError(Exception):
    pass


def default_bounds() -> tuple:
    raw = os.environ.get(BOUNDS_ENV)
    if not raw:
        return DEFAULT_BOUNDS
    try:
        vals = tuple(int(x) for x in raw.split(","))
    except ValueError:
        raise UsageError(f"{BOUNDS_ENV} must look like 3,3,50, got {raw!r}")
    if len(vals) != 3 or min(vals) < 0:
        raise UsageError(f"{BOUNDS_ENV} must hold three non-negative integers, got {raw!r}")
    return vals


def _kind(text: str) -> DyadicKind:
    try:
        return DyadicKind.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    kinds = ", ".join(str(k) for k in ALL_KINDS)
    p = argparse.ArgumentParser(prog="sosbound",
                                description="Rule-format checks for bounded nondeterminism.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def bounds(sp):
        sp.add_argument("--height", type=int, help="term height bound")
        sp.add_argument("--labels", type=int, help="number of family members in the universe")
        sp.add_argument("--rounds", type=int, help="saturation round limit")

    c = sub.add_parser("check", help="check the rule format for one dyadic kind")
    c.add_argument("file")
    c.add_argument("--kind", type=_kind, required=True, help=kinds)
    c.add_argument("--strat", required=True, help="name of a strat block")
    bounds(c)

    t = sub.add_parser("transform", help="print the dyadic version of a TSS")
    t.add_argument("file")
    t.add_argument("--kind", type=_kind, required=True, help=kinds)
    t.add_argument("-o", "--output")

    d = sub.add_parser("derive", help="derive the bounded LTS")
    d.add_argument("file")
    d.add_argument("--origin", action="append", default=[],
                   help="only derive transitions of this closed term (repeatable)")
    bounds(d)
    d.add_argument("-o", "--output")

    pr = sub.add_parser("props", help="branching measures of an LTS file")
    pr.add_argument("lts")

    la = sub.add_parser("lattice", help="the implication order of the twelve properties")
    la.add_argument("--class", dest="cls", help="equivalence class of (i), (ii) or (iii)")
    la.add_argument("--matrix", action="store_true", help="print the implication matrix")

    lg = sub.add_parser("legacy", help="check the eta-type format with ground labels")
    lg.add_argument("file")
    lg.add_argument("--eta", required=True, help="name of an eta block")
    lg.add_argument("--strat", required=True, help="name of a strat block")
    bounds(lg)
    for sp in (c, t, d, pr, la, lg):
        sp.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    return p


def _bounds(args) -> tuple:
    h, b, r = default_bounds()
    h = args.height if args.height is not None else h
    b = args.labels if args.labels is not None else b
    r = args.rounds if getattr(args, "rounds", None) is not None else r
    if min(h, b, r) < 0:
        raise UsageError("bounds must be non-negative")
    return h, b, r


def _load(path: str) -> SpecFile:
    try:
        return parse_spec_file(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")
    except ParseError as e:
        raise UsageError(f"{path}:{e}")


def _lookup(fn, name):
    try:
        return fn(name)
    except KeyError as e:
        raise UsageError(e.args[0])


def _emit(text: str, output: Optional[str]):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _print_verdict(v, fmt: str) -> int:
    if fmt == "json":
        print(json.dumps(v.to_dict(), indent=2, ensure_ascii=False))
    else:
        print(v.render())
    return v.exit_code


def cmd_check(args) -> int:
    spec = _load(args.file)
    S = _lookup(spec.measure, args.strat)
    h, b, _ = _bounds(args)
    try:
        v = check_rule_format(spec.tss, args.kind, S, (h, b))
    except ValueError as e:
        raise UsageError(str(e))
    return _print_verdict(v, args.format)


def cmd_legacy(args) -> int:
    spec = _load(args.file)
    S = _lookup(spec.measure, args.strat)
    eta = _lookup(spec.eta, args.eta)
    h, b, _ = _bounds(args)
    try:
        v = legacy_eta_check(spec.tss, eta, S, (h, b))
    except ValueError as e:
        raise UsageError(str(e))
    return _print_verdict(v, args.format)


def cmd_transform(args) -> int:
    spec = _load(args.file)
    try:
        dyadic = transform_tss(spec.tss, args.kind)
    except ValueError as e:
        raise UsageError(str(e))
    _emit(render_spec(SpecFile(dyadic, spec.measures, spec.etas)), args.output)
    return 0


def lts_text(lts: LTS) -> str:
    head = [f"# bounds height={lts.bounds[0]} labels={lts.bounds[1]}"]
    if lts.kind is not None:
        head.append(f"# kind {lts.kind}")
    return "\n".join(head + lts.to_lines()) + "\n"


def cmd_derive(args) -> int:
    spec = _load(args.file)
    h, b, r = _bounds(args)
    origins = None
    if args.origin:
        origins = []
        for text in args.origin:
            try:
                origins.append(parse_term(text, spec.tss.signature))
            except ParseError as e:
                raise UsageError(f"--origin {text!r}: {e}")
    try:
        lts = derive_lts(spec.tss, h, b, r, origins=origins)
    except SaturationError as e:
        print(f"sosbound: {e}", file=sys.stderr)
        return EXIT_CODES["inconclusive"]
    if args.format == "json":
        _emit(json.dumps(lts.to_dict(), indent=2) + "\n", args.output)
    else:
        _emit(lts_text(lts), args.output)
    return 0


def read_lts(path: str):
    """Transitions of an LTS file written by ``derive``."""
    kind = None
    facts = []
    try:
        fh = open(path, encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")
    with fh:
        for n, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if line.startswith("# kind "):
                kind = DyadicKind.parse(line[7:].strip())
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            try:
                terms = [parse_closed_term(c) for c in cols]
            except ParseError as e:
                raise UsageError(f"{path}:{n}: {e.message}")
            if kind is None and len(terms) == 3:
                facts.append(Formula(*terms))
            elif kind is not None and len(terms) == 2:
                facts.append(DyadicFormula(terms[0], terms[1], kind))
            else:
                raise UsageError(f"{path}:{n}: expected {'2' if kind else '3'} tab-separated terms")
    return kind, facts


def cmd_props(args) -> int:
    kind, facts = read_lts(args.lts)
    rows = []
    if kind is not None and kind.is_projection:
        # a projection cannot be undone, so only its own reading is available
        sets = {}
        for f in facts:
            sets.setdefault(f.source, set()).add(f.target)
        best = max(sets.items(), key=lambda kv: len(kv[1]), default=(None, set()))
        rows.append((kind.property_id, len(best[1]), best[0]))
    else:
        for p in PROPERTY_IDS:
            card, origin = check_property(facts, p)
            rows.append((p, card, origin))
    if args.format == "json":
        print(json.dumps([{"property": p, "name": PROPERTY_NAMES[p], "max": c,
                           "origin": None if o is None else str(o)} for p, c, o in rows], indent=2))
    else:
        for p, c, o in rows:
            at = f"  at {o}" if o is not None else ""
            print(f"({p}) {PROPERTY_NAMES[p]}: max {c}{at}")
    return 0


def cmd_lattice(args) -> int:
    if args.cls:
        try:
            cls = equivalence_class(args.cls)
        except ValueError as e:
            raise UsageError(str(e))
        conj = sorted(render_conjunction(c) for c in cls)
        if args.format == "json":
            print(json.dumps({"class": args.cls, "members": conj}, ensure_ascii=False))
        else:
            print("\n".join(conj))
        return 0
    if args.matrix:
        m = implication_matrix()
        if args.format == "json":
            print(json.dumps({"properties": list(PROPERTY_IDS), "implies": m}))
        else:
            width = max(len(p) for p in PROPERTY_IDS) + 2
            print(" " * width + " ".join(f"{p:>4}" for p in PROPERTY_IDS))
            for p, row in zip(PROPERTY_IDS, m):
                print(f"({p})".ljust(width) + " ".join(f"{'x' if v else '.':>4}" for v in row))
        return 0
    if args.format == "json":
        from .lattice import COVER_EDGES
        print(json.dumps({"edges": [list(e) for e in COVER_EDGES],
                          "names": PROPERTY_NAMES,
                          "kinds": KIND_TO_PROPERTY}, ensure_ascii=False))
    else:
        print("\n".join(hasse_lines()))
    return 0


COMMANDS = {"check": cmd_check, "transform": cmd_transform, "derive": cmd_derive,
            "props": cmd_props, "lattice": cmd_lattice, "legacy": cmd_legacy}


def run_command(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        # argparse exits 0 for --help and 2 for bad usage; 2 means inconclusive here
        return 0 if e.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"sosbound: {e}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> int:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
