"""Command line front end: ``leavitt analyze|construct|verify|export-dot|report|eval``.

Exit codes: 0 ok, 1 suite failure, 2 parse or usage error, 3 truncation
exceeded, 4 engine error.
"""

from __future__ import annotations

import argparse
import sys

from .analysis import (
    Report,
    check_family,
    condition_L,
    hereditary_saturated_subsets,
    simplicity_verdict,
    singular,
    unital,
    verify_identity_suite,
)
from .analysis.suites import SUITES
from .constructions import (
    NotReachable,
    SigmaStrategyFailed,
    build_EG,
    build_GF,
    desing_family,
    desingularize,
    gegiso,
    gegiso_inverse,
    generator_family,
    glugl,
    lex3,
    lfg,
    llgex,
    llgex2,
)
from .dot import to_dot
from .dsl import Document, ParseError, parse, print_document, with_sigma
from .engine import EngineMismatch, MissingGeneratorAssignment, ZeroElement
from .expr import eval_expr
from .rings import RingMismatch, Z, parse_ring
from .structures import Graph, TruncationExceeded

FAMILIES = ("generators", "glugl", "gegiso", "gegiso_inverse", "llgex", "llgex2", "lfg", "lex3", "desing")

EXIT_SUITE, EXIT_PARSE, EXIT_TRUNCATION, EXIT_ENGINE = 1, 2, 3, 4


def _yes(v) -> str:
    return {True: "yes", False: "no"}.get(v, "unknown") if isinstance(v, bool) else "unknown"


def _fmt_set(g, A) -> str:
    body = " ".join(g.label(v) for v in A.items)
    return f"cofinite{{{body}}}" if A.cofinite else f"{{{body}}}"


def _count(n, word) -> str:
    return f"{n} {word}" + ("" if n == 1 else ("es" if word.endswith("x") else "s"))


def analyze_text(g, ring=None) -> str:
    nat = g.universe.size is None
    count = _count(len(g.labels), "labelled vertex") if nat else _count(g.universe.size, "vertex")
    if count.endswith("vertexes"):
        count = count[: -len("vertexes")] + "vertices"
    lines = [f"{g.name}: {g.kind}, {'nat' if nat else 'finite'} universe, {count}, {_count(len(g.edges), 'edge')}"]
    lines.append(f"singular vertices: {_fmt_set(g, singular(g))}")
    lines.append(f"condition (L): {condition_L(g).describe()}")
    try:
        hs = hereditary_saturated_subsets(g)
        lines.append("hereditary saturated: " + " ".join(_fmt_set(g, H) for H in hs))
    except (TruncationExceeded, ValueError) as exc:
        lines.append(f"hereditary saturated: unknown ({exc})")
    verdict = simplicity_verdict(g, ring)
    simple = verdict.describe()
    if verdict.reason and not verdict.witnesses:
        simple += f" ({verdict.reason})"
    lines.append(f"unital: {_yes(unital(g))}; simple: {simple}")
    return "\n".join(lines) + "\n"


def _structure(doc, name):
    try:
        return doc.get(name)
    except KeyError as exc:
        raise _UsageError(str(exc.args[0])) from None


class _UsageError(Exception):
    pass


def _ultra(g):
    return g.to_ultragraph() if isinstance(g, Graph) else g


def _sigma_arg(args, g):
    if args.sigma == "greedy":
        return "greedy"
    if args.sigma == "file":
        if not getattr(g, "sigma_table", None):
            raise _UsageError("--sigma file needs a sigma table in the input")
        return dict(g.sigma_table)
    raise _UsageError("--sigma takes greedy or file")


def _edges_arg(args, g):
    if not args.edges:
        raise _UsageError("--edges is required here")
    names = [e for e in args.edges.split(",") if e]
    for e in names:
        if e not in g._edge_index:
            raise _UsageError(f"no edge named {e!r}")
    return names


def cmd_construct(args, doc, ring):
    g = _structure(doc, args.structure)
    warnings = []
    if args.what == "eg":
        eg = build_EG(_ultra(g), window=args.window, depth=args.depth, sigma=_sigma_arg(args, g))
        warnings = eg.warnings
        out = Document([with_sigma(_ultra(g), eg.sigma), eg.graph])
    elif args.what == "gf":
        out = Document([build_GF(_ultra(g), _edges_arg(args, g))])
    else:
        d = desingularize(g, 3 if args.depth is None else args.depth)
        warnings = d.warnings
        out = Document([d.structure])
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    return print_document(out), 0


def family_report(name, g, args, ring) -> Report:
    ug = _ultra(g)
    if name == "generators":
        m = generator_family(g, ring)
        return check_family(m, "LP" if isinstance(g, Graph) else "uLP")
    if name == "glugl":
        if not isinstance(g, Graph):
            raise _UsageError("glugl needs a graph")
        return check_family(glugl(g, ring), "uLP")
    if name == "lfg":
        return check_family(lfg(ug, _edges_arg(args, g), ring), "LP")
    if name == "lex3":
        return check_family(lex3(build_EG(ug, window=args.window), ring), "ExL")
    if name == "desing":
        return check_family(desing_family(g, 3 if args.depth is None else args.depth, ring), "uLP")
    fn = {"gegiso": gegiso, "gegiso_inverse": gegiso_inverse, "llgex": llgex, "llgex2": llgex2}[name]
    axioms = {"gegiso": "LP", "gegiso_inverse": "uLP", "llgex": "uLP", "llgex2": "ExL"}[name]
    return check_family(fn(ug, ring), axioms)


def suite_report(name, doc, args, ring) -> Report:
    if name in FAMILIES:
        return family_report(name, _structure(doc, args.structure), args, ring)
    if name not in SUITES:
        raise _UsageError(f"unknown suite {name!r}; expected one of {', '.join(SUITES + FAMILIES)}")
    structures = [_structure(doc, args.structure)] if args.structure else doc.structures
    ctx = {
        "structures": structures,
        "ring": ring,
        "window": args.window,
        "degree": args.degree_bound,
        "seed": args.seed,
        "depth": 3 if args.depth is None else args.depth,
    }
    return verify_identity_suite(name, ctx)


def cmd_verify(args, doc, ring):
    r = suite_report(args.suite, doc, args, ring)
    return r.to_text(), 0 if r.ok else EXIT_SUITE


def cmd_report(args, doc, ring):
    """Every applicable suite, as one JSON record per instance."""
    g = _structure(doc, args.structure)
    names = ["generators", "gegiso", "llgex", "transfer_L", "desing_L"]
    if isinstance(g, Graph):
        names.insert(1, "glugl")
    finite = g.universe.size is not None
    if finite:
        names += ["llgex2", "lci", "texlg", "transfer_hs"]
    if _ultra(g).edges:
        names += ["lex3", "corth", "lglg", "lglg2", "tlgis_span"]
    chunks, ok = [], True
    for n in names:
        try:
            r = suite_report(n, doc, args, ring)
        except (TruncationExceeded, NotReachable, ValueError) as exc:
            r = Report(n)
            r.add(g.name, "skip", str(exc))
        ok = ok and r.ok
        chunks.append(r.to_jsonl())
    return "".join(chunks), 0 if ok else EXIT_SUITE


def cmd_analyze(args, doc, ring):
    gs = [_structure(doc, args.structure)] if args.structure else doc.structures
    return "\n".join(analyze_text(g, ring if args.ring else None) for g in gs), 0


def cmd_export_dot(args, doc, ring):
    gs = [_structure(doc, args.structure)] if args.structure else doc.structures
    return "".join(to_dot(g) for g in gs), 0


def cmd_eval(args, doc, ring):
    return eval_expr(doc, args.structure, ring, args.expr) + "\n", 0


def cmd_print(args, doc, ring):
    return print_document(doc), 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="leavitt", description="Leavitt path algebras of graphs and ultragraphs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", default=None, help="Z, Zmod:N, Q or GF:P (default Z)")
    common.add_argument("--window", type=int, default=8, help="vertex window for E_G")
    common.add_argument("--depth", type=int, default=None, help="word depth for E_G, tail length for desing")
    common.add_argument("--sigma", default="greedy", help="greedy, or file to use the input's sigma table")
    common.add_argument("--edges", default=None, help="comma separated edge names (the set F)")
    common.add_argument("--degree-bound", type=int, default=3)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--structure", default=None, help="structure name inside the file")
    common.add_argument("-o", dest="output", default=None, help="write output here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", parents=[common], help="structural report")
    a.add_argument("file")
    a.set_defaults(fn=cmd_analyze)
    c = sub.add_parser("construct", parents=[common], help="derived structure in DSL form")
    c.add_argument("what", choices=["eg", "gf", "desing"])
    c.add_argument("file")
    c.set_defaults(fn=cmd_construct)
    v = sub.add_parser("verify", parents=[common], help="run one suite")
    v.add_argument("suite")
    v.add_argument("file")
    v.set_defaults(fn=cmd_verify)
    d = sub.add_parser("export-dot", parents=[common], help="Graphviz output")
    d.add_argument("file")
    d.set_defaults(fn=cmd_export_dot)
    r = sub.add_parser("report", parents=[common], help="all applicable suites as JSON lines")
    r.add_argument("file")
    r.set_defaults(fn=cmd_report)
    e = sub.add_parser("eval", parents=[common], help="normal form of an expression")
    e.add_argument("file")
    e.add_argument("expr")
    e.set_defaults(fn=cmd_eval)
    f = sub.add_parser("format", parents=[common], help="reprint a file canonically")
    f.add_argument("file")
    f.set_defaults(fn=cmd_print)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ring = parse_ring(args.ring) if args.ring else Z
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        with open(args.file, encoding="utf-8") as fh:
            doc = parse(fh.read())
        text, code = args.fn(args, doc, ring)
    except ParseError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (OSError, _UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TruncationExceeded as exc:
        print(f"truncation: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION
    except (MissingGeneratorAssignment, EngineMismatch, ZeroElement, RingMismatch, NotReachable, SigmaStrategyFailed, ValueError) as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
