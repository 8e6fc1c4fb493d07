"""Command-line front end: ``freecurves VERB [FAMILY] [options]``.

Exit codes: 0 success, 1 failed verification, 2 usage error, 3 data error.
Set ``FREECURVES_DATA`` to read family files from another directory.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .census import census, relation_sets, verify_family
from .cones import hilbert_basis
from .enumerate import DegreeWindow, enumerate_nef_classes
from .errors import DomainError, FreeCurvesError
from .familydb import list_families, load_family, serialize
from .relations import oracle_relations

__all__ = ["main", "run", "EXIT_OK", "EXIT_FAILED", "EXIT_USAGE", "EXIT_DATA"]

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _parser():
    # --format is accepted before or after the verb
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default=argparse.SUPPRESS)
    p = _Parser(prog="freecurves", description="Query and verify Fano threefold family data.")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    add = lambda name, **kw: sub.add_parser(name, parents=[common], **kw)
    add("list", help="print family ids")
    for verb in ("show", "verify"):
        add(verb).add_argument("family")
    e = add("enumerate", help="nef classes in a degree window")
    e.add_argument("family")
    e.add_argument("--lo", type=int, default=None)
    e.add_argument("--hi", type=int, default=None)
    h = add("hilbert", help="Hilbert basis of a cone")
    h.add_argument("family")
    h.add_argument("--cone", choices=("nef", "mori"), default="nef")
    r = add("relations", help="stored, generated or oracle relations")
    r.add_argument("family")
    r.add_argument("--oracle", action="store_true")
    r.add_argument("--bound", type=int, default=6)
    c = add("census", help="classify a nef class")
    c.add_argument("family")
    c.add_argument("--class", dest="cls", required=True, help='comma-separated, e.g. "3,0,0"')
    v = add("verify-all", help="verify every shipped family")
    v.add_argument("--jobs", type=int, default=1)
    return p


def _parse_class(text, rank):
    try:
        v = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise _UsageError(f"--class must be comma-separated integers, got {text!r}")
    if len(v) != rank:
        raise _UsageError(f"--class has {len(v)} entries, family has rank {rank}")
    return v


def _classes_out(rec, vecs, fmt, key):
    vecs = sorted(tuple(v) for v in vecs)
    if fmt == "structured":
        return {"family": rec.id, key: [{"coords": list(v), "name": rec.format_curve(v),
                                         "degree": rec.degree(v)} for v in vecs]}
    return "\n".join(f"{rec.format_curve(v):<24} ({', '.join(map(str, v))})  degree {rec.degree(v)}"
                     for v in vecs)


def _verify_one(fid):
    return verify_family(fid)


def _dispatch(args):
    fmt = args.format
    if args.verb == "list":
        ids = list_families()
        return EXIT_OK, ({"families": ids} if fmt == "structured" else "\n".join(ids))
    if args.verb == "verify-all":
        ids = list_families()
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                reports = list(pool.map(_verify_one, ids))
        else:
            reports = [verify_family(f) for f in ids]
        ok = all(r.overall for r in reports)
        if fmt == "structured":
            out = {"overall": ok, "reports": [r.as_dict() for r in reports]}
        else:
            out = "\n".join(r.to_text() for r in reports)
            out += f"\n{sum(r.overall for r in reports)}/{len(reports)} families pass"
        return (EXIT_OK if ok else EXIT_FAILED), out

    rec = load_family(args.family)
    if args.verb == "show":
        return EXIT_OK, ({"family": rec.id, "sheet": serialize(rec)} if fmt == "structured"
                         else serialize(rec).rstrip("\n"))
    if args.verb == "verify":
        rep = verify_family(rec)
        return (EXIT_OK if rep.overall else EXIT_FAILED), (rep.as_dict() if fmt == "structured"
                                                           else rep.to_text())
    if rec.is_reduction:
        raise DomainError(f"{rec.id} is a reduction record; use {rec.reduces_to}")
    if args.verb == "enumerate":
        lo = rec.window[0] if args.lo is None else args.lo
        hi = rec.window[1] if args.hi is None else args.hi
        if lo > hi:
            raise _UsageError(f"--lo {lo} exceeds --hi {hi}")
        found = enumerate_nef_classes(rec, DegreeWindow(lo, hi))
        return EXIT_OK, _classes_out(rec, [c.coords for c in found], fmt, "classes")
    if args.verb == "hilbert":
        if args.cone == "mori" and not rec.mori_generators:
            raise DomainError(f"{rec.id} stores no Mori cone")
        cone = rec.nef_cone() if args.cone == "nef" else rec.mori_cone()
        return EXIT_OK, _classes_out(rec, hilbert_basis(cone), fmt, "hilbert_basis")
    if args.verb == "relations":
        if args.bound < 1:
            raise _UsageError("--bound must be positive")
        if args.oracle:
            grading = rec.pairing.divisor_functional(rec.anticanonical)
            rels = oracle_relations(rec.core, args.bound, grading)
        else:
            rels = relation_sets(rec)[0]
        lines = sorted(r.format() for r in rels)
        if fmt == "structured":
            return EXIT_OK, {"family": rec.id, "source": "oracle" if args.oracle else "stored",
                             "core": [rec.format_curve(c) for c in rec.core], "relations": lines}
        head = [f"{i + 1}: {rec.format_curve(c)}" for i, c in enumerate(rec.core)]
        return EXIT_OK, "\n".join(head + [""] + lines)
    if args.verb == "census":
        res = census(rec, _parse_class(args.cls, rec.rank))
        if fmt == "structured":
            return EXIT_OK, {"family": rec.id, "class": list(_parse_class(args.cls, rec.rank)),
                             **res.as_dict()}
        tail = f"  ({res.notes})" if res.notes else ""
        return EXIT_OK, f"{res.kind.value} very_free_component={str(res.very_free_component).lower()}{tail}"
    raise _UsageError(f"unknown verb {args.verb}")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = _parser().parse_args(argv)
        code, out = _dispatch(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except FreeCurvesError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DATA
    if not isinstance(out, str):
        out = json.dumps(out, indent=2)
    print(out, file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
