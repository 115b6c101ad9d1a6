"""Command line front end.

Subcommands:

    analyze   full pipeline, rendered result document on stdout
    verify    full property battery, one PASS/FAIL/SKIP line per check
    pages     spectral-sequence pages only
    harmonic  harmonic dimension tables only
    example   print a built-in input document as JSON
    list      list built-in example names

Exit codes: 0 success, 1 invalid input, 2 internal consistency failure.
Diagnostics go to stderr; stdout carries only the rendered data.
"""

from __future__ import annotations

import argparse
import sys

from . import catalog, docio, pipeline
from .catalog import UnknownExampleError
from .cohomology import ConsistencyError
from .docio import DocumentError
from .liealg import LieAlgebraError


def _add_input_options(sub):
    sub.add_argument("input", nargs="?", default=None,
                     help="path to an input document (JSON)")
    sub.add_argument("--example", default=None,
                     help="name of a built-in example (see `list`)")
    sub.add_argument("--format", choices=("text", "json", "latex"),
                     default="text")
    sub.add_argument("--max-page", type=int, default=None,
                     help="cap the spectral-sequence iteration")
    sub.add_argument("--averaged-metric", action="store_true",
                     help="replace the metric by its J-average (g + J^t g J)/2")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="acdol",
        description="Exact Dolbeault cohomology, Frolicher spectral "
                    "sequences and harmonic theory for almost complex "
                    "structures on Lie algebras.")
    subs = parser.add_subparsers(dest="command", required=True)
    for name in ("analyze", "verify", "pages", "harmonic"):
        _add_input_options(subs.add_parser(name))
    ex = subs.add_parser("example")
    ex.add_argument("name")
    subs.add_parser("list")
    return parser


def _load_spec(args):
    if (args.input is None) == (args.example is None):
        raise DocumentError("exactly one input source is required: either a "
                            "file path or --example NAME")
    if args.example is not None:
        doc = catalog.builtin(args.example)
    else:
        with open(args.input, "rb") as fh:
            doc = docio.parse_document(fh.read(),
                                       validate=not args.averaged_metric)
    return docio.to_spec(doc, average_metric=args.averaged_metric)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (DocumentError, LieAlgebraError, UnknownExampleError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except ConsistencyError as exc:
        print("internal consistency failure: %s" % exc, file=sys.stderr)
        return 2


def _dispatch(args):
    if args.command == "list":
        for name in catalog.builtin_names():
            print(name)
        return 0
    if args.command == "example":
        doc = catalog.builtin(args.name)
        sys.stdout.write(docio.document_to_json(doc))
        return 0

    spec = _load_spec(args)
    an = pipeline.analyze(spec, max_page=args.max_page)
    checks = pipeline.verification_checks(an)
    failures = pipeline.hard_failures(checks)

    if args.command == "analyze":
        result = pipeline.result_document(an, checks)
        sys.stdout.write(docio.render(result, args.format))
    elif args.command == "verify":
        for c in checks:
            if c.skipped:
                status = "SKIP"
            elif c.passed:
                status = "PASS"
            else:
                status = "FAIL" if not c.informational else "INFO-FAIL"
            line = "%s %s" % (status, c.name)
            if c.detail:
                line += "  (%s)" % c.detail
            print(line)
        summary = "%d checks: %d hard failures" % (len(checks), len(failures))
        print(summary, file=sys.stderr)
    elif args.command == "pages":
        result = pipeline.result_document(an, checks)
        doc = {
            "name": result["name"],
            "m": result["m"],
            "classification": result["classification"],
            "betti": result["betti"],
            "degeneration_page": result["degeneration_page"],
            "pages": result["pages"],
            "h_mub": result["h_mub"],
            "h_dol": result["h_dol"],
            "harmonic": {},
            "checks": [],
        }
        sys.stdout.write(docio.render(doc, args.format))
    elif args.command == "harmonic":
        result = pipeline.result_document(an, checks)
        doc = {
            "name": result["name"],
            "m": result["m"],
            "classification": result["classification"],
            "betti": result["betti"],
            "degeneration_page": result["degeneration_page"],
            "pages": {},
            "h_mub": result["h_mub"],
            "h_dol": result["h_dol"],
            "harmonic": result["harmonic"],
            "checks": [],
        }
        sys.stdout.write(docio.render(doc, args.format))
    if failures:
        for c in failures:
            print("FAILED CHECK: %s %s" % (c.name, c.detail), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
