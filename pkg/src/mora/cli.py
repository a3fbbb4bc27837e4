"""Command-line front end.

    mora compile [-o dema_vsflx.dic]
    mora inflect <lemma>
    mora analyze [TOKEN ...] [--file F] [--json]
    mora generate <lemma> [--json]
    mora evaluate <gold.tsv> [--text F] [--json]

Resources come from ``--config``, else the file named by ``$MORA_RESOURCES``,
else the sample set bundled with the package. Per-file flags override the
config. Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .corpus_eval import evaluate, read_gold, tokenize
from .errors import MoraError
from .lexicon import dump, strip_stress
from .morpho import analyze_token, generate_paradigm
from .resources import ResourceLoadError, ResourceSet

SCHEMA_VERSION = 1
log = logging.getLogger("mora")


def _resource_set(args) -> ResourceSet:
    rs = ResourceSet.from_config(args.config) if args.config else ResourceSet.default()
    return rs.override(
        dema_vs=args.dema_vs,
        stems=args.stems,
        affixes=args.affixes,
        dema_invflx=args.invflx,
        pronouns=args.pronouns,
    )


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, ensure_ascii=False, sort_keys=True) + "\n")


def _find_entries(resources, lemma: str):
    found = resources.entries_for_lemma(lemma)
    if not found:
        key = strip_stress(lemma.lower())
        found = [e for e in resources.lexicon if e.surface == key]
    if not found:
        raise MoraError(f"no dictionary entry for {lemma!r}")
    return found


def cmd_compile(args) -> int:
    _, compiled = _resource_set(args).compile()
    text = dump(compiled.entries)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    s = compiled.stats
    if args.json:
        print(json.dumps({"schema_version": SCHEMA_VERSION, **s.as_dict()}, sort_keys=True), file=sys.stderr)
    else:
        print(
            f"roots: {s.roots}  entries: {s.entries}  variants per root: {s.variants_per_root:.2f}",
            file=sys.stderr,
        )
    return 0


def cmd_inflect(args) -> int:
    rs = _resource_set(args)
    entries, compiled = rs.compile()
    wanted = strip_stress(args.lemma.lower())
    lemmas = {e.lemma for e in entries if e.lemma == args.lemma or e.surface == wanted}
    if not lemmas:
        raise MoraError(f"no dictionary entry for {args.lemma!r}")
    sys.stdout.write(dump(a for a in compiled.entries if a.lemma in lemmas))
    return 0


def _analyze_record(token: str, resources) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "token": token,
        "analyses": [a.as_dict() for a in analyze_token(token, resources)],
    }


def cmd_analyze(args) -> int:
    resources = _resource_set(args).load()
    tokens = [t.text for w in args.tokens for t in tokenize(w)]
    if args.file:
        tokens += [t.text for t in tokenize(Path(args.file).read_text(encoding="utf-8"))]
    for token in tokens:
        if args.json:
            _emit(_analyze_record(token, resources))
            continue
        analyses = analyze_token(token, resources)
        if not analyses:
            print(f"{token}\t?")
        for a in analyses:
            f = a.features
            feats = f"{f.tense} {f.voice} {f.aspect} {f.mode}" + (f" pron={f.pronoun}" if f.pronoun else "")
            print(f"{token}\t{a.lemma}\t{a}\t{feats}")
    return 0


def cmd_generate(args) -> int:
    rs = _resource_set(args)
    resources = rs.load()
    for entry in _find_entries(resources, args.lemma):
        for form, features in generate_paradigm(entry, resources, ceiling=rs.paradigm_ceiling):
            if args.json:
                _emit(
                    {
                        "schema_version": SCHEMA_VERSION,
                        "lemma": entry.lemma,
                        "affix_class": entry.affix_class.raw,
                        "form": form,
                        "features": features.as_dict(),
                    }
                )
            else:
                f = features
                print(f"{form}\t{entry.lemma}\t{f.tense}\t{f.voice}\t{f.aspect}\t{f.mode}")
    return 0


def cmd_evaluate(args) -> int:
    resources = _resource_set(args).load()
    gold = read_gold(args.gold)
    tokens = tokenize(Path(args.text).read_text(encoding="utf-8")) if args.text else None
    report = evaluate(gold, resources, tokens)
    if args.json:
        _emit({"schema_version": SCHEMA_VERSION, **report.as_dict()})
    else:
        print(report.table())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mora", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-c", "--config", help="resource config file (default: $MORA_RESOURCES or bundled sample)")
    parser.add_argument("--dema-vs", help="root dictionary file")
    parser.add_argument("--stems", help="directory of *.stem transducers")
    parser.add_argument("--affixes", help="directory of *.affix graphs")
    parser.add_argument("--invflx", help="invariable-word dictionary")
    parser.add_argument("--pronouns", help="bound pronoun table")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile the allomorph dictionary")
    p.add_argument("-o", "--output")
    p.add_argument("--json", action="store_true", help="print stats as JSON")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("inflect", help="show the allomorph entries of one lemma")
    p.add_argument("lemma")
    p.set_defaults(func=cmd_inflect)

    p = sub.add_parser("analyze", help="analyze tokens")
    p.add_argument("tokens", nargs="*")
    p.add_argument("-f", "--file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("generate", help="generate the paradigm of a lemma")
    p.add_argument("lemma")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("evaluate", help="score coverage against a gold TSV file")
    p.add_argument("gold")
    p.add_argument("--text", help="raw text the gold file must align with")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_evaluate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ResourceLoadError as exc:
        for err in exc.errors:
            print(f"error: {err}", file=sys.stderr)
        return 1
    except (MoraError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
