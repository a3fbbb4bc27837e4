"""Tokenization and coverage evaluation against gold verb annotations.

Gold files are TSV, one token per line, six columns::

    token  is_verb  lemma  in_dict  stem_known  affix_known

Booleans are ``1``/``0`` (``true``/``false`` and ``yes``/``no`` also work);
an empty lemma or ``-`` means none. A first line starting with ``token`` is
treated as a header.
"""

from __future__ import annotations

import csv
import io
import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ValidationError
from .lexicon import strip_stress
from .morpho import CompiledResources, analyze_token

# A word keeps one trailing apostrophe or dash: noraisin'ny -> noraisin' + ny.
_WORD_RE = re.compile(r"[^\W\d_]+(?:['’‘-])?")
_TRUE = {"1", "true", "yes", "y"}
_FALSE = {"0", "false", "no", "n", ""}
GOLD_COLUMNS = ("token", "is_verb", "lemma", "in_dict", "stem_known", "affix_known")


@dataclass(frozen=True)
class Token:
    text: str
    start: int
    end: int

    def __str__(self) -> str:
        return self.text


def tokenize(text: str) -> list[Token]:
    """Lowercased word tokens with UTF-8 byte offsets into ``text``."""
    text = unicodedata.normalize("NFC", text)
    out = []
    for m in _WORD_RE.finditer(text):
        start = len(text[: m.start()].encode("utf-8"))
        end = start + len(m.group().encode("utf-8"))
        word = m.group().lower().replace("’", "'").replace("‘", "'")
        out.append(Token(word, start, end))
    return out


@dataclass(frozen=True)
class GoldRecord:
    token: str
    is_verb: bool
    lemma: str | None = None
    in_dictionary: bool = False
    stem_class_known: bool = False
    affix_class_known: bool = False

    def __post_init__(self):
        if self.in_dictionary and not self.lemma:
            raise ValidationError(f"{self.token!r}: in-dictionary record without a lemma")

    def to_row(self) -> list[str]:
        b = lambda v: "1" if v else "0"  # noqa: E731
        return [
            self.token,
            b(self.is_verb),
            self.lemma or "-",
            b(self.in_dictionary),
            b(self.stem_class_known),
            b(self.affix_class_known),
        ]


def _flag(value: str, lineno: int, column: str) -> bool:
    v = value.strip().lower()
    if v in _TRUE:
        return True
    if v in _FALSE:
        return False
    raise ValidationError(f"gold line {lineno}: column {column} is not a boolean: {value!r}")


def parse_gold_tsv(text: str) -> list[GoldRecord]:
    records = []
    reader = csv.reader(io.StringIO(text), delimiter="\t", quoting=csv.QUOTE_NONE)
    for lineno, row in enumerate(reader, 1):
        if not row or (len(row) == 1 and not row[0].strip()) or row[0].startswith("#"):
            continue
        if lineno == 1 and row[0].strip().lower() == "token":
            continue
        if len(row) != len(GOLD_COLUMNS):
            raise ValidationError(f"gold line {lineno}: expected {len(GOLD_COLUMNS)} columns, got {len(row)}")
        token, is_verb, lemma, in_dict, stem, affix = row
        lemma = lemma.strip()
        try:
            records.append(
                GoldRecord(
                    unicodedata.normalize("NFC", token.strip()).lower(),
                    _flag(is_verb, lineno, "is_verb"),
                    unicodedata.normalize("NFC", lemma) if lemma not in ("", "-") else None,
                    _flag(in_dict, lineno, "in_dict"),
                    _flag(stem, lineno, "stem_known"),
                    _flag(affix, lineno, "affix_known"),
                )
            )
        except ValidationError as exc:
            raise ValidationError(f"gold line {lineno}: {exc}") from None
    return records


def read_gold(path) -> list[GoldRecord]:
    return parse_gold_tsv(Path(path).read_text(encoding="utf-8"))


def dump_gold(records: Iterable[GoldRecord]) -> str:
    lines = ["\t".join(GOLD_COLUMNS)]
    lines += ["\t".join(r.to_row()) for r in records]
    return "\n".join(lines) + "\n"


def _percent(num: int, den: int) -> float:
    return 100.0 * num / den if den else 0.0


def _round_half_up(x: float) -> int:
    return int(x + 0.5)


@dataclass
class CoverageReport:
    verbs: int = 0
    in_dictionary: int = 0
    analyzed: int = 0
    stem_known: int = 0
    affix_known: int = 0
    oov_both_known: int = 0
    oov_stem_only: int = 0
    oov_affix_only: int = 0
    oov_neither: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def lexical_coverage(self) -> float:
        return self.in_dictionary / self.verbs if self.verbs else 0.0

    @property
    def analyzer_success_rate(self) -> float:
        return self.analyzed / self.verbs if self.verbs else 0.0

    @property
    def stem_class_coverage(self) -> float:
        return self.stem_known / self.verbs if self.verbs else 0.0

    @property
    def affix_class_coverage(self) -> float:
        return self.affix_known / self.verbs if self.verbs else 0.0

    def _metrics(self):
        return [
            ("lexical_coverage", self.in_dictionary),
            ("analyzer_success_rate", self.analyzed),
            ("stem_class_coverage", self.stem_known),
            ("affix_class_coverage", self.affix_known),
        ]

    def as_dict(self) -> dict:
        out = {"verbs": self.verbs}
        for name, num in self._metrics():
            pct = _percent(num, self.verbs)
            out[name] = {
                "count": num,
                "total": self.verbs,
                "ratio": num / self.verbs if self.verbs else 0.0,
                "percent": round(pct, 1),
                "percent_rounded": _round_half_up(pct),
            }
        out["out_of_dictionary"] = {
            "total": self.verbs - self.in_dictionary,
            "stem_and_affix_known": self.oov_both_known,
            "stem_only_known": self.oov_stem_only,
            "affix_only_known": self.oov_affix_only,
            "neither_known": self.oov_neither,
        }
        out["failures"] = list(self.failures)
        return out

    def table(self) -> str:
        labels = {
            "lexical_coverage": "lexical coverage",
            "analyzer_success_rate": "analyzer success rate",
            "stem_class_coverage": "stem class coverage",
            "affix_class_coverage": "affix class coverage",
        }
        lines = [f"{'metric':<24}{'count':>10}{'percent':>10}{'rounded':>9}"]
        for name, num in self._metrics():
            pct = _percent(num, self.verbs)
            lines.append(
                f"{labels[name]:<24}{f'{num}/{self.verbs}':>10}{pct:>9.1f}%{_round_half_up(pct):>8}%"
            )
        if self.failures:
            lines.append("not analyzed (in dictionary): " + ", ".join(self.failures))
        return "\n".join(lines)


def _same_lemma(a: str, b: str) -> bool:
    return unicodedata.normalize("NFC", a) == unicodedata.normalize("NFC", b) or strip_stress(a) == strip_stress(b)


def evaluate(
    gold: Sequence[GoldRecord],
    resources: CompiledResources,
    tokens: Sequence[Token | str] | None = None,
) -> CoverageReport:
    """Score the analyzer on gold verb annotations.

    A verb counts as analyzed only when it has a dictionary entry and some
    analysis carries the gold lemma, so the success rate never exceeds the
    lexical coverage. Class coverage is taken over all verb tokens, with
    in-dictionary tokens counted as covered.
    """
    if tokens is not None:
        words = [str(t) for t in tokens]
        golds = [g.token for g in gold]
        if words != golds:
            at = next((i for i, (w, g) in enumerate(zip(words, golds)) if w != g), min(len(words), len(golds)))
            raise ValidationError(
                f"gold misaligned with text at token {at}: "
                f"text has {words[at] if at < len(words) else '<end>'!r}, "
                f"gold has {golds[at] if at < len(golds) else '<end>'!r}"
            )
    report = CoverageReport()
    for g in gold:
        if not g.is_verb:
            continue
        report.verbs += 1
        if g.in_dictionary:
            report.in_dictionary += 1
            report.stem_known += 1
            report.affix_known += 1
            if any(_same_lemma(a.lemma, g.lemma) for a in analyze_token(g.token, resources)):
                report.analyzed += 1
            else:
                report.failures.append(g.token)
            continue
        report.stem_known += g.stem_class_known
        report.affix_known += g.affix_class_known
        if g.stem_class_known and g.affix_class_known:
            report.oov_both_known += 1
        elif g.stem_class_known:
            report.oov_stem_only += 1
        elif g.affix_class_known:
            report.oov_affix_only += 1
        else:
            report.oov_neither += 1
    return report
