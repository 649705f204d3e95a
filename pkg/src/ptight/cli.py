"""Command line front end.  Every command prints one JSON document.

Exit codes: 0 success, 1 negative verdict, 2 malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .core import classify, load_pgraph, min_hole_incidence_degree, pgraph_to_dict, validate
from .enumeration import count_tight_graphs
from .errors import (
    InvalidFaceGraph,
    MalformedInput,
    NonSimpleQuotient,
    NotTight,
    PTightError,
    TerminalNotInCatalog,
)
from .moves import grow
from .reduction import CATALOG_NAMES, catalog, identify_base, reduce
from .rigidity import rigidity_report
from .sparsity import find_violation, freedom_number

EXIT_OK, EXIT_NEGATIVE, EXIT_MALFORMED = 0, 1, 2
NEGATIVE_ERRORS = (NotTight, TerminalNotInCatalog)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInput(message)


def _read_json(src: str):
    try:
        text = sys.stdin.read() if src == "-" else Path(src).read_text()
    except OSError as exc:
        raise MalformedInput(str(exc)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from exc


def _emit(obj, out=None) -> None:
    text = json.dumps(obj, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def cmd_check(args) -> int:
    try:
        g = load_pgraph(_read_json(args.file))
    except (InvalidFaceGraph, NonSimpleQuotient) as exc:
        _emit({"valid": False, "error": exc.code, "detail": str(exc)})
        return EXIT_NEGATIVE
    report = validate(g)
    witness = find_violation(g)
    out = report.to_dict()
    out.update(
        sparse=witness is None,
        tight=witness is None and freedom_number(g) == 6,
        freedom_number=freedom_number(g),
        witness=None if witness is None else witness.to_dict(),
    )
    _emit(out)
    return EXIT_OK if report.ok and witness is None else EXIT_NEGATIVE


def cmd_classify(args) -> int:
    g = load_pgraph(_read_json(args.file))
    out = classify(g).to_dict()
    out.update(freedom_number=freedom_number(g), min_hole_incidence_degree=min_hole_incidence_degree(g))
    _emit(out)
    return EXIT_OK


def cmd_reduce(args) -> int:
    trace = reduce(load_pgraph(_read_json(args.file)))
    d = trace.to_dict()
    if args.trace:
        _emit(d, args.trace)
    _emit(d)
    return EXIT_OK


def _base(spec: str):
    if spec in catalog():
        return catalog()[spec]
    return load_pgraph(_read_json(spec))


def cmd_grow(args) -> int:
    if args.steps < 0:
        raise MalformedInput("--steps must be non-negative")
    g = grow(_base(args.base), args.steps, seed=args.seed)
    _emit(pgraph_to_dict(g), args.output)
    return EXIT_OK


def cmd_rigidity(args) -> int:
    if args.trials < 1:
        raise MalformedInput("--trials must be at least 1")
    report = rigidity_report(load_pgraph(_read_json(args.file)), seed=args.seed, trials=args.trials)
    _emit(report)
    return EXIT_OK if report["minimally_rigid"] else EXIT_NEGATIVE


def cmd_enumerate(args) -> int:
    count = count_tight_graphs(args.n, emit=args.emit, allow_long=args.long, jobs=args.jobs)
    _emit({"n": args.n, "count": count})
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.name is None:
        _emit({"names": list(CATALOG_NAMES)})
        return EXIT_OK
    if args.name not in catalog():
        raise MalformedInput(f"unknown catalog name {args.name!r}")
    _emit(pgraph_to_dict(catalog()[args.name]))
    return EXIT_OK


def cmd_identify(args) -> int:
    name = identify_base(load_pgraph(_read_json(args.file)))
    _emit({"name": name or "none"})
    return EXIT_OK if name else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ptight", description="(3,6)-tight graphs in the projective plane")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, file=True):
        sp = sub.add_parser(name)
        if file:
            sp.add_argument("file", help="JSON file or - for stdin")
        sp.set_defaults(fn=fn)
        # allow the shared options after the subcommand as well
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        sp.add_argument("--trials", type=int, default=argparse.SUPPRESS)
        sp.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
        return sp

    add("check", cmd_check)
    add("classify", cmd_classify)
    add("reduce", cmd_reduce).add_argument("--trace", help="also write the trace to this file")
    sp = add("grow", cmd_grow, file=False)
    sp.add_argument("--base", required=True, help="catalog name or PGraph JSON file")
    sp.add_argument("--steps", type=int, default=20)
    sp.add_argument("-o", "--output")
    add("rigidity", cmd_rigidity)
    sp = add("enumerate", cmd_enumerate, file=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--emit", help="directory for one edge-list file per class")
    sp.add_argument("--long", action="store_true", help="permit the n = 8 run")
    add("catalog", cmd_catalog, file=False).add_argument("--name")
    add("identify", cmd_identify)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args)
    except NEGATIVE_ERRORS as exc:
        _emit({"error": exc.code, "detail": str(exc)})
        return EXIT_NEGATIVE
    except PTightError as exc:
        _emit({"error": exc.code, "detail": str(exc)})
        return EXIT_MALFORMED
    except ValueError as exc:
        _emit({"error": "malformed_input", "detail": str(exc)})
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
