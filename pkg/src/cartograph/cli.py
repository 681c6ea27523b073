"""Command-line pipeline: ingest, scale, analyze, compare, export, serve.

Input paths that do not exist as given are also tried relative to the
directory named by the CARTOGRAPH_DATA environment variable.

Exit codes: 0 success, 2 usage error, 3 I/O error, 4 invalid data,
5 infeasible fixture spec.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .context import write_cxt
from .corpus import (
    AnnotationCorpus,
    CorpusError,
    InfeasibleSpecError,
    parse_annotations,
    write_annotations,
)
from .factors import factor_support, greedy_factorize
from .fixtures import JOURNALS, fixture_csv
from .implications import canonical_base, shared_intents
from .lattice import ConceptLattice, enumerate_concepts
from .mapdoc import export_map, layered_layout
from .navigation import AnnotatedLattice
from .scaling import CONVENTIONS, apply_scale, normalize_convention

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DATA = 4
EXIT_INFEASIBLE = 5

EPILOG = """\
exit codes:
  0  success
  2  usage error
  3  I/O error (input not found or output not writable)
  4  invalid data (CSV or CXT parse error, unknown labels)
  5  infeasible fixture specification

environment:
  CARTOGRAPH_DATA  default directory for input files
"""


class CliError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _resolve_input(path: str) -> Path:
    candidate = Path(path)
    if candidate.exists():
        return candidate
    data_dir = os.environ.get("CARTOGRAPH_DATA")
    if data_dir:
        fallback = Path(data_dir) / path
        if fallback.exists():
            return fallback
    raise CliError(EXIT_IO, f"input file not found: {path}")


def _load_corpus(path: str, journal: str | None) -> AnnotationCorpus:
    resolved = _resolve_input(path)
    try:
        text = resolved.read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {resolved}: {exc}") from exc
    try:
        corpus = parse_annotations(text)
    except CorpusError as exc:
        raise CliError(EXIT_DATA, f"{resolved}: {exc}") from exc
    if journal is not None:
        filtered = tuple(a for a in corpus.annotations if a.journal_id == journal)
        if not filtered:
            raise CliError(EXIT_DATA, f"{resolved}: no annotations for journal {journal!r}")
        corpus = AnnotationCorpus(journal, filtered)
    return corpus


def _parse_conventions(raw: str | None) -> tuple[str, ...]:
    if raw is None:
        return CONVENTIONS
    try:
        conventions = tuple(normalize_convention(c) for c in raw.split(",") if c.strip())
    except CorpusError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from exc
    if not conventions:
        raise CliError(EXIT_USAGE, "empty convention list")
    return conventions


def _write_output(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc}") from exc


def _truncated_density(context) -> str:
    area = len(context.objects) * len(context.attributes)
    hundredths = 100 * context.incidence_count // area if area else 0
    return f"{hundredths // 100}.{hundredths % 100:02d}"


def _scaled(args) -> tuple[AnnotationCorpus, "object"]:
    corpus = _load_corpus(args.input, args.journal)
    context = apply_scale(corpus, _parse_conventions(args.conventions), args.level)
    return corpus, context


# -- subcommands ----------------------------------------------------------------


def _cmd_ingest(args) -> int:
    corpus = _load_corpus(args.input, args.journal)
    print(
        f"journal {corpus.journal_id}: {len(corpus.articles)} articles, "
        f"{len(corpus.annotations)} annotations"
    )
    if args.out:
        _write_output(args.out, write_annotations(corpus))
    return EXIT_OK


def _cmd_scale(args) -> int:
    _, context = _scaled(args)
    print(
        f"|G|={len(context.objects)}, |M|={len(context.attributes)}, "
        f"|I|={context.incidence_count}, density {_truncated_density(context)}"
    )
    if args.out:
        _write_output(args.out, write_cxt(context))
    return EXIT_OK


def _cmd_analyze(args) -> int:
    _, context = _scaled(args)
    concepts = enumerate_concepts(context)
    print(
        f"|G|={len(context.objects)}, |M|={len(context.attributes)}, "
        f"|I|={context.incidence_count}, density {_truncated_density(context)}, "
        f"concepts {len(concepts)}"
    )
    return EXIT_OK


def _cmd_base(args) -> int:
    _, context = _scaled(args)
    for line in canonical_base(context).format_lines():
        print(line)
    return EXIT_OK


def _cmd_factors(args) -> int:
    _, context = _scaled(args)
    factorization = greedy_factorize(context)
    factors = factorization.factors
    if args.max_factors is not None:
        factors = factors[: args.max_factors]
    for i, factor in enumerate(factors, start=1):
        sequence = " > ".join(", ".join(block) for block in factor.sequence)
        print(f"F{i}: {sequence}")
        print(f"support: {factor_support(factor, context)}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    left = _load_corpus(args.input, args.journal)
    right = _load_corpus(args.other, None)
    conventions = _parse_conventions(args.conventions)
    context_l = apply_scale(left, conventions, args.level)
    context_r = apply_scale(right, conventions, args.level)
    if args.what == "intents":
        shared = shared_intents(context_l, context_r)
        order = {m: j for j, m in enumerate(context_l.attributes)}
        print(f"{len(shared)} shared intents")
        for intent in sorted(shared, key=lambda s: (len(s), sorted(order[m] for m in s))):
            print(", ".join(sorted(intent, key=order.__getitem__)) if intent else "(empty set)")
    else:
        for label, context in ((left.journal_id, context_l), (right.journal_id, context_r)):
            print(f"base of {label}:")
            for line in canonical_base(context).format_lines():
                print(f"  {line}")
    return EXIT_OK


def _cmd_export_cxt(args) -> int:
    _, context = _scaled(args)
    _write_output(args.out, write_cxt(context))
    return EXIT_OK


def _build_map(args) -> str:
    corpus, context = _scaled(args)
    annotated = AnnotatedLattice.from_lattice(ConceptLattice.from_context(context))
    layouted = layered_layout(
        annotated,
        journal=corpus.journal_id,
        level=args.level,
        conventions=_parse_conventions(args.conventions),
        max_factors=args.max_factors,
    )
    return export_map(layouted)


def _cmd_map(args) -> int:
    document = _build_map(args)
    if args.out:
        _write_output(args.out, document)
    else:
        print(document, end="")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import build_snapshot, create_app

    corpus = _load_corpus(args.input, args.journal)
    snapshot = build_snapshot(
        corpus,
        _parse_conventions(args.conventions),
        default_level=args.level,
        max_factors=args.max_factors,
    )
    app = create_app(snapshot, ui_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def _cmd_fixtures(args) -> int:
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot create {out_dir}: {exc}") from exc
    try:
        for journal in JOURNALS:
            _write_output(str(out_dir / f"{journal}.csv"), fixture_csv(journal))
            print(f"wrote {out_dir / (journal + '.csv')}")
    except InfeasibleSpecError as exc:
        raise CliError(EXIT_INFEASIBLE, str(exc)) from exc
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser, with_level: bool = True) -> None:
    parser.add_argument("input", help="annotation CSV file")
    if with_level:
        parser.add_argument("--level", type=int, choices=(1, 2, 3), default=3)
    parser.add_argument(
        "--conventions",
        help="comma-separated subset of market,green,state,industry (or m,g,s,i)",
    )
    parser.add_argument("--journal", help="keep only rows of this journal id")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cartograph",
        description="Conceptual controversy maps over convention-annotated news corpora",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse and summarize an annotation CSV")
    p.add_argument("input")
    p.add_argument("--journal")
    p.add_argument("--out", help="write the normalized CSV here")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("scale", help="apply the convention scale, report the context")
    _add_common(p)
    p.add_argument("--out", help="also write the context as CXT")
    p.set_defaults(func=_cmd_scale)

    p = sub.add_parser("analyze", help="context size, density and concept count")
    _add_common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("base", help="print the canonical implication base")
    _add_common(p)
    p.set_defaults(func=_cmd_base)

    p = sub.add_parser("factors", help="greedy ordinal factorization report")
    _add_common(p)
    p.add_argument("--max-factors", type=int)
    p.set_defaults(func=_cmd_factors)

    p = sub.add_parser("compare", help="compare two corpora at one level")
    p.add_argument("input")
    p.add_argument("other")
    p.add_argument("--level", type=int, choices=(1, 2, 3), default=3)
    p.add_argument("--conventions")
    p.add_argument("--journal", help="journal filter for the first corpus")
    p.add_argument("--what", choices=("intents", "base"), default="intents")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("export-cxt", help="write the scaled context in CXT format")
    _add_common(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_export_cxt)

    p = sub.add_parser("map", help="export the layouted map document (JSON)")
    _add_common(p)
    p.add_argument("--out")
    p.add_argument("--max-factors", type=int)
    p.set_defaults(func=_cmd_map)

    p = sub.add_parser("serve", help="serve map and navigation endpoints over HTTP")
    _add_common(p)
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui", help="directory with static UI assets")
    p.add_argument("--max-factors", type=int)
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("fixtures", help="regenerate the bundled fixture corpora")
    p.add_argument("--out", default="fixtures")
    p.set_defaults(func=_cmd_fixtures)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "port", None) is not None and not 1 <= args.port <= 65535:
        print("error: port must be in [1, 65535]", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except InfeasibleSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (CorpusError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
