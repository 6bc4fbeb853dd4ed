"""Command line: ``reqlint analyze`` and ``reqlint compare``.

Exit codes: 0 clean, 1 warnings, 2 errors (see ``--fail-on``),
64 usage error, 65 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .errors import ConfigError, ReqlintError
from .ingest import load_corpus
from .lexicon import load_lexicon
from .pipeline import gc_paused, prepare_corpus
from .report import (
    FAIL_ON,
    Report,
    comparison_json,
    render_comparison_text,
    render_text,
)
from .rules import RuleConfig, findings_for_units, load_config, resolve_rule_id
from .segment import default_abbreviations, load_abbreviations
from .stats import compare_corpora, compute_stats, corpus_word_count, truncate_corpus

EXIT_USAGE = 64
EXIT_DATA = 65

log = logging.getLogger("reqlint")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {value}")
    return value


def _common_options():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--lang", choices=("fr", "en"), default="fr", help="language of the texts (default: fr)")
    p.add_argument("--lexicon", metavar="PATH", help="lexicon file overlaid on the builtin one")
    p.add_argument("--abbreviations", metavar="PATH", help="abbreviation list replacing the builtin one")
    p.add_argument("--config", metavar="PATH", help="rule configuration file (key = value lines)")
    p.add_argument("--long-sentence-threshold", type=_positive_int, metavar="N",
                   help="sentences with more than N words are long (default: 25 fr, 20 en)")
    p.add_argument("--disable", metavar="LIST", help="comma-separated rules to skip, e.g. R1,R4")
    p.add_argument("--report-mandatory", action="store_true", help="also report occurrences judged mandatory")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--mode", choices=("auto", "tagged", "plain"), default="auto",
                   help="tagged: [REQ id] ... [/REQ] blocks; plain: whole file is one text; "
                        "auto: tagged if any opening delimiter is present")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--truncate-to", type=_positive_int, metavar="N",
                       help="keep whole units up to N words per corpus")
    group.add_argument("--truncate-to-smallest", action="store_true",
                       help="reduce every corpus to the word count of the smallest one")
    return p


def build_parser():
    parser = _Parser(prog="reqlint", description="Check requirement texts for conjunction and pronoun use.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    common = _common_options()

    analyze = sub.add_parser("analyze", parents=[common], help="report findings and statistics")
    analyze.add_argument("files", nargs="+", metavar="FILE")
    analyze.add_argument("--fail-on", choices=FAIL_ON, default="warning",
                         help="lowest severity that makes the exit status non-zero (default: warning)")

    compare = sub.add_parser("compare", parents=[common], help="compare statistics of several corpora")
    compare.add_argument("corpora", nargs="+", metavar="[NAME=]PATH")
    return parser


# ---------------------------------------------------------------------------


def _rule_config(args):
    if args.config:
        config = load_config(args.config, args.lang)
    else:
        config = RuleConfig.for_language(args.lang)
    changes = {}
    if args.long_sentence_threshold is not None:
        changes["long_sentence_threshold"] = args.long_sentence_threshold
    if args.report_mandatory:
        changes["report_mandatory"] = True
    if args.disable:
        try:
            disabled = {resolve_rule_id(r) for r in args.disable.split(",") if r.strip()}
        except ConfigError as exc:
            raise UsageError(str(exc)) from None
        changes["enabled_rules"] = config.enabled_rules - disabled
    return replace(config, **changes) if changes else config


def _resources(args):
    lexicon = load_lexicon(args.lexicon, args.lang)
    if args.abbreviations:
        abbreviations = load_abbreviations(args.abbreviations, args.lang)
    else:
        abbreviations = default_abbreviations(args.lang)
    return lexicon, abbreviations


def _truncate(corpora, args, lexicon, abbreviations):
    if args.truncate_to is not None:
        target = args.truncate_to
    elif args.truncate_to_smallest:
        target = min(corpus_word_count(c, lexicon, abbreviations) for c in corpora)
    else:
        return corpora
    return [truncate_corpus(c, target, lexicon, abbreviations) for c in corpora]


def _parse_spec(spec):
    name, sep, path = spec.partition("=")
    if sep and name and path:
        return name, path
    return Path(spec).stem, spec


def cmd_analyze(args, argv, out):
    config = _rule_config(args)
    lexicon, abbreviations = _resources(args)
    corpora = [replace(load_corpus(path, args.lang, args.mode), name=path) for path in args.files]
    corpora = _truncate(corpora, args, lexicon, abbreviations)
    stats, findings = [], []
    for corpus in corpora:
        units = prepare_corpus(corpus, lexicon, abbreviations)
        stats.append(compute_stats(corpus, lexicon, config, units=units))
        findings.extend(findings_for_units(units, config, lexicon, corpus.name))
        del units
    report = Report.build(argv, stats, findings, args.fail_on)
    out.write(report.to_json() + "\n" if args.format == "json" else render_text(report))
    return report.exit_status


def cmd_compare(args, argv, out):
    if len(args.corpora) < 2:
        raise UsageError("compare needs at least two corpora")
    specs = [_parse_spec(s) for s in args.corpora]
    names = [n for n, _ in specs]
    if len(set(names)) != len(names):
        raise UsageError(f"duplicate corpus names: {names}; use NAME=PATH")
    config = _rule_config(args)
    lexicon, abbreviations = _resources(args)
    corpora = [replace(load_corpus(path, args.lang, args.mode), name=name) for name, path in specs]
    corpora = _truncate(corpora, args, lexicon, abbreviations)
    table = compare_corpora([compute_stats(c, lexicon, config, abbreviations=abbreviations) for c in corpora])
    out.write(comparison_json(table, argv) + "\n" if args.format == "json" else render_comparison_text(table))
    return 0


def main(argv=None, out=None, err=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    err = err or sys.stderr
    logging.basicConfig(level=logging.WARNING, format="reqlint: %(message)s", stream=err)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command is None:
        parser.print_usage(err)
        err.write("reqlint: error: a command is required (analyze or compare)\n")
        return EXIT_USAGE
    command = cmd_analyze if args.command == "analyze" else cmd_compare
    try:
        # one short-lived batch run: reference counting frees everything,
        # and cyclic collection over millions of tokens only costs time
        with gc_paused():
            return command(args, argv, out)
    except UsageError as exc:
        err.write(f"reqlint: error: {exc}\n")
        return EXIT_USAGE
    except (ReqlintError, OSError, UnicodeDecodeError) as exc:
        err.write(f"reqlint: {type(exc).__name__}: {exc}\n")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
