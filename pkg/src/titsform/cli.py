"""Command line front end.

Exit codes: 0 success, 1 negative verdict (not weakly non-negative, no
realization, no chain), 2 usage or input error, 3 inconclusive/undecided.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import roots as R
from .classify import ClassificationError, Verdict, is_weakly_nonnegative
from .corpus import FIXTURES
from .presentation import (PresentationError, format_presentation, parse_document,
                           quotient_by_vertex, tits_form)
from .realize import RepresentationError, Undecided, free_entries, search_realization
from .gfp import FieldError
from .search import grow
from .unitform import UnitForm, is_slender

OK, NEGATIVE, USAGE, UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text)


def _vector(csv: str, q: UnitForm) -> tuple[int, ...]:
    try:
        v = tuple(int(x) for x in csv.split(","))
    except ValueError:
        raise UsageError(f"not a comma separated integer vector: {csv!r}") from None
    if len(v) != q.n:
        raise UsageError(f"vector has {len(v)} entries, the form has {q.n} variables")
    return v


def _emit(args, doc: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(doc, sort_keys=False))
    else:
        print("\n".join(lines))


def _fmt(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _root_entry(q: UnitForm, v) -> dict:
    lm = R.is_locally_maximal(q, v)
    above = R.larger_root(q, v)
    entry = {"root": list(v), "locally_maximal": lm, "maximal": above is None}
    if above is not None:
        entry["larger_root"] = list(above)
    if lm and all(v) and (R.weakly_nonnegative(q) or is_slender(q)):
        entry["analysis"] = R.exceptional_analysis(q, v).to_json(q.labels)
    return entry


# ---------------------------------------------------------------- commands

def analysis_report(doc, source: str, wnn_bound: int = 13, wp_bound: int = 6) -> dict:
    """Form, classification and (for weakly non-negative forms) the
    omnipresent roots with their maximality analysis."""
    q = doc.form
    rep = is_weakly_nonnegative(q, bound=wnn_bound, wp_bound=wp_bound,
                                with_restrictions=q.n <= 14)
    out = {"input": {"file": source, "kind": doc.kind, "labels": list(q.labels)},
           "tits_matrix": q.gram(), "slender": is_slender(q),
           "classification": rep.to_json()}
    if rep.weakly_nonnegative:
        found, complete = R.enumerate_omnipresent_roots(q)
        maximal = [_root_entry(q, v) for v in found if R.is_maximal(q, v)]
        out["omnipresent_roots"] = [list(v) for v in found]
        out["omnipresent_complete"] = complete
        out["maximal_omnipresent"] = maximal
        out["max_coordinate"] = max((max(e["root"]) for e in maximal), default=None)
    return out


def cmd_analyze(args) -> int:
    doc = _load(args.file)
    out = analysis_report(doc, args.file, args.wnn_bound, args.wp_bound)
    q, cls = doc.form, out["classification"]
    verdict = Verdict(cls["verdict"])
    lines = [f"{args.file}: {doc.kind}, n = {q.n}, slender = {out['slender']}",
             f"verdict: {verdict.value}"]
    if "witness" in cls:
        lines.append(f"witness: {_fmt(cls['witness'])} with q = {cls['witness_value']}")
    if verdict is Verdict.INCONCLUSIVE:
        _emit(args, out, lines + [cls.get("strategy", "")])
        return UNDECIDED
    if "omnipresent_roots" in out:
        lines.append(f"omnipresent roots (coordinates <= {R.OMNIPRESENT_BOUND}): "
                     f"{len(out['omnipresent_roots'])}, complete = {out['omnipresent_complete']}")
        for e in out["maximal_omnipresent"]:
            a = e["analysis"]["exceptional"]
            lines.append(f"maximal omnipresent root {_fmt(e['root'])}: case {a['case']} "
                         f"at {', '.join(a['indices'])}")
        if out["max_coordinate"] is not None:
            lines.append(f"max coordinate: {out['max_coordinate']}")
    _emit(args, out, lines)
    return NEGATIVE if verdict is Verdict.NOT_WEAKLY_NONNEGATIVE else OK


def cmd_roots(args) -> int:
    q = _load(args.file).form
    wnn = R.weakly_nonnegative(q)
    if args.omnipresent:
        if not wnn:
            raise UsageError("omnipresent enumeration needs a weakly non-negative form")
        found, complete = R.enumerate_omnipresent_roots(q)
        extra = {"complete": complete}
    else:
        rep = is_weakly_nonnegative(q)
        if rep.verdict is Verdict.WEAKLY_POSITIVE:
            found, extra = R.enumerate_positive_roots(q), {"complete": True}
        else:
            res = grow(q, "small", args.bound)
            if res.witness is not None:
                raise UsageError(f"negative vector {_fmt(res.witness)} below the bound; "
                                 "roots are not listed for such boxes")
            found = sorted(v for v, val in res.states.items() if val == 1)
            extra = {"complete": False, "bound": args.bound}
    entries = [_root_entry(q, v) for v in found]
    if args.maximal_only:
        entries = [e for e in entries if e["maximal"]]
    lines = []
    for e in entries:
        tag = ("maximal" if e["maximal"] else
               "locally-maximal-not-maximal" if e["locally_maximal"] else "")
        lines.append(f"{_fmt(e['root'])} {tag}".rstrip())
    lines.append(f"# {len(entries)} roots, complete = {extra['complete']}")
    _emit(args, {"labels": list(q.labels), "roots": entries, **extra}, lines)
    return OK


def cmd_chain(args) -> int:
    q = _load(args.file).form
    v = _vector(args.root, q)
    try:
        chain = R.reflection_chain(q, v, require_wnn=not args.any_form)
    except R.NoChain as exc:
        _emit(args, {"root": list(v), "chain": None, "reason": str(exc)}, [str(exc)])
        return NEGATIVE
    out = chain.to_json(q.labels)
    out["v"] = list(v)
    lines = [f"start {out['start']}, reflections {' '.join(map(str, out['sequence'])) or '-'}",
             f"y = {_fmt(chain.root)}, q(v - y) = 0"]
    _emit(args, out, lines)
    return OK


def cmd_quotient(args) -> int:
    doc = _load(args.file)
    if doc.presentation is None:
        raise UsageError("quotient needs a [quiver] input")
    pres = doc.presentation
    if args.vertex not in pres.vertices:
        raise UsageError(f"unknown vertex {args.vertex!r}")
    quot = quotient_by_vertex(pres, args.vertex)
    qbar = tits_form(quot)
    keep = [i for i, v in enumerate(pres.vertices) if v != args.vertex]
    qprime = R.restrict_form(doc.form, keep)
    diffs = [{"pair": [qbar.labels[i], qbar.labels[j]],
              "quotient": qbar.q(i, j), "restriction": qprime.q(i, j)}
             for i in range(qbar.n) for j in range(i + 1, qbar.n) if qbar.q(i, j) != qprime.q(i, j)]
    out = {"presentation": quot.to_json(), "differences": diffs}
    lines = [format_presentation(quot).rstrip()]
    for d in diffs:
        lines.append(f"# q-bar({d['pair'][0]},{d['pair'][1]}) = {d['quotient']} "
                     f"< q'({d['pair'][0]},{d['pair'][1]}) = {d['restriction']}")
    if not diffs:
        lines.append("# quotient form equals the restriction")
    _emit(args, out, lines)
    return OK


def cmd_realize(args) -> int:
    doc = _load(args.file)
    if doc.presentation is None:
        raise UsageError("realize needs a [quiver] input")
    d = _vector(args.dim, doc.form)
    res = search_realization(doc.presentation, d, args.p, args.mode, args.budget, args.seed)
    out = res.to_json()
    out["free_entries"] = free_entries(doc.presentation, d)
    if res.found is not None:
        lines = [f"found an indecomposable over F_{args.p}:"]
        lines += [f"  {k}: {m}" for k, m in res.found.to_json()["matrices"].items()]
    elif res.exhausted:
        lines = [f"none + exhausted: no indecomposable of dimension {_fmt(d)} over F_{args.p} "
                 f"({res.candidates} candidates tested)"]
    else:
        lines = [f"none found within budget ({res.candidates} samples); not exhausted"]
    _emit(args, out, lines)
    if res.found is not None:
        return OK
    return NEGATIVE if res.exhausted else UNDECIDED


def cmd_fixtures(args) -> int:
    if not args.run_all:
        lines = [f"{name}: {f.filename} - {f.note}" for name, f in FIXTURES.items()]
        _emit(args, {"fixtures": {n: f.filename for n, f in FIXTURES.items()}}, lines)
        return OK
    from .acceptance import CRITERIA, run_criterion
    selected = [c for c in CRITERIA if not args.quick or not c.slow]
    print(f"1..{len(selected)}")
    failed = 0
    for k, crit in enumerate(selected, 1):
        res = run_criterion(crit)
        failed += not res.passed
        print(f"{'ok' if res.passed else 'not ok'} {k} - criterion {crit.number}: {crit.title}")
        for line in res.details:
            print(f"# {line}")
    return OK if not failed else NEGATIVE


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine readable output")
    common.add_argument("--threads", type=int, default=1,
                        help="worker count (results do not depend on it)")
    parser = argparse.ArgumentParser(prog="titsform", description=__doc__.splitlines()[0],
                                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="form and classification")
    a.add_argument("file")
    a.add_argument("--wp-bound", type=int, default=6)
    a.add_argument("--wnn-bound", type=int, default=13)
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("roots", parents=[common], help="list roots")
    r.add_argument("file")
    r.add_argument("--omnipresent", action="store_true")
    r.add_argument("--maximal-only", action="store_true")
    r.add_argument("--bound", type=int, default=2,
                   help="coordinate bound when the form has infinitely many roots")
    r.set_defaults(func=cmd_roots)

    c = sub.add_parser("chain", parents=[common], help="reflection chain below a root")
    c.add_argument("file")
    c.add_argument("--root", required=True)
    c.add_argument("--any-form", action="store_true",
                   help="also attempt forms that are not weakly non-negative")
    c.set_defaults(func=cmd_chain)

    qt = sub.add_parser("quotient", parents=[common], help="quotient by a vertex")
    qt.add_argument("file")
    qt.add_argument("--vertex", required=True)
    qt.set_defaults(func=cmd_quotient)

    z = sub.add_parser("realize", parents=[common], help="search an indecomposable over F_p")
    z.add_argument("file")
    z.add_argument("--dim", required=True)
    z.add_argument("--p", type=int, default=2, choices=(2, 3, 5))
    z.add_argument("--mode", default="exhaustive", choices=("exhaustive", "random"))
    z.add_argument("--budget", type=int, default=100_000)
    z.add_argument("--seed", type=int, default=0)
    z.set_defaults(func=cmd_realize)

    f = sub.add_parser("fixtures", parents=[common], help="bundled examples")
    f.add_argument("--run-all", action="store_true", help="run the acceptance corpus (TAP)")
    f.add_argument("--quick", action="store_true", help="skip the slow criteria")
    f.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be positive")
    try:
        return args.func(args)
    except (UsageError, PresentationError, R.RootError, ClassificationError,
            RepresentationError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (R.Inconclusive, Undecided) as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return UNDECIDED


if __name__ == "__main__":
    sys.exit(main())
