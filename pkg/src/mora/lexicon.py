"""DELA-style dictionaries: root entries, allomorph entries, invariable words.

Three line formats, UTF-8, one entry per line, ``#`` comments::

    àndro,V0av(1)+a1ps20vAy+gc1             root dictionary
    andró,àndro.V+a1ps20vAy+gc1+ana          allomorph dictionary
    aho,PRO(NV)+pers:1s                     invariable words

A single space after the first comma is accepted on input; canonical output
has none.
"""

from __future__ import annotations

import enum
import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, TypeVar

from .errors import ParseError

GROUPS = ("gc1", "gc2", "gc3")
COMPAT_TAGS = ("0", "ana", "ina", "a", "imprt")
ROOT_QUALIFIERS = ("free", "bound", "full", "trunc")

_STRESS_MAP = str.maketrans(
    {
        "à": "a", "á": "a", "è": "e", "é": "e", "ì": "i", "í": "i",
        "ò": "o", "ó": "o", "ỳ": "y", "ý": "y",
        "À": "A", "Á": "A", "È": "E", "É": "E", "Ì": "I", "Í": "I",
        "Ò": "O", "Ó": "O", "Ỳ": "Y", "Ý": "Y",
    }
)
_LEMMA_RE = re.compile(r"^[a-zàáèéìíòóỳý]+$")


def strip_stress(form: str) -> str:
    """Map grave/acute vowels to their plain counterparts."""
    return unicodedata.normalize("NFC", form).translate(_STRESS_MAP)


class Ending(enum.IntEnum):
    NONE = 0
    KA = 1
    TRA = 2
    NA = 3


@dataclass(frozen=True)
class StemClass:
    raw: str
    ending: Ending
    ina_accepting: bool
    phenomena: str

    @classmethod
    def parse(cls, raw: str) -> "StemClass":
        if len(raw) < 2 or raw[0] not in "0123" or raw[1] not in "ia":
            raise ValueError(f"bad stem class code {raw!r}")
        return cls(raw, Ending(int(raw[0])), raw[1] == "i", raw[2:])

    def __str__(self) -> str:
        return f"{int(self.ending)}{'i' if self.ina_accepting else 'a'}{self.phenomena}"

    @property
    def filename(self) -> str:
        return self.raw.replace("(", "_").replace(")", "_") + ".stem"


@dataclass(frozen=True)
class AffixClass:
    raw: str

    def __post_init__(self):
        if not self.raw or not re.fullmatch(r"[0-9A-Za-z]+", self.raw):
            raise ValueError(f"bad affix class code {self.raw!r}")

    @property
    def field1_imperative_a(self) -> bool:
        # "v" fills a field whose affixes do not exist for the verb.
        return self.raw[0] != "v"

    def __str__(self) -> str:
        return self.raw

    @property
    def filename(self) -> str:
        return self.raw + ".affix"


@dataclass(frozen=True)
class DictEntry:
    lemma: str
    stem_class: StemClass
    affix_class: AffixClass
    group: str
    pos: str = "V"

    @property
    def surface(self) -> str:
        return strip_stress(self.lemma)

    def serialize(self) -> str:
        return f"{_escape(self.lemma)},{self.pos}{self.stem_class.raw}+{self.affix_class.raw}+{self.group}"


@dataclass(frozen=True)
class AllomorphEntry:
    form: str
    lemma: str
    affix_class: AffixClass
    group: str
    compat_tag: str
    pos: str = "V"

    @property
    def surface_key(self) -> str:
        return strip_stress(self.form)

    def satisfies(self, qualifier: str) -> bool:
        """Relation between this allomorph and its lemma, used by root slots.

        free: keeps the lemma's initial letter; bound: changes it (prefix
        sandhi); full: equals the lemma; trunc: a proper prefix of the lemma.
        """
        key, lemma = self.surface_key, strip_stress(self.lemma)
        if qualifier == "free":
            return key[:1] == lemma[:1]
        if qualifier == "bound":
            return key[:1] != lemma[:1]
        if qualifier == "full":
            return key == lemma
        if qualifier == "trunc":
            return len(key) < len(lemma) and lemma.startswith(key)
        raise ValueError(f"unknown root qualifier {qualifier!r}")

    def serialize(self) -> str:
        return (
            f"{_escape(self.form)},{_escape(self.lemma)}.{self.pos}"
            f"+{self.affix_class.raw}+{self.group}+{self.compat_tag}"
        )


@dataclass(frozen=True)
class InvariableEntry:
    form: str
    pos: str
    features: tuple[str, ...] = ()
    qualifier: str | None = "NV"

    def serialize(self) -> str:
        head = self.pos + (f"({self.qualifier})" if self.qualifier else "")
        return f"{_escape(self.form)},{'+'.join((head,) + self.features)}"

    def feature(self, key: str) -> str | None:
        for f in self.features:
            if f.startswith(key + ":"):
                return f.split(":", 1)[1]
        return None


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace(",", "\\,")


def _split_comma(line: str, lineno: int | None) -> tuple[str, str, int]:
    i = 0
    while i < len(line):
        if line[i] == "\\":
            i += 2
            continue
        if line[i] == ",":
            head = line[:i].replace("\\,", ",").replace("\\\\", "\\")
            rest = line[i + 1:]
            col = i + 2
            if rest.startswith(" "):
                rest = rest[1:]
                col += 1
            return head, rest, col
        i += 1
    raise ParseError("missing comma", lineno, len(line) + 1)


def _prepare(line: str, lineno: int | None) -> str:
    line = unicodedata.normalize("NFC", line).rstrip("\r\n")
    if not line.strip():
        raise ParseError("empty line", lineno, 1)
    return line


def _check_lemma(lemma: str, lineno, col=1):
    if not lemma:
        raise ParseError("empty lemma", lineno, col)
    if not _LEMMA_RE.match(lemma):
        raise ParseError(f"lemma {lemma!r} has characters outside the lexical alphabet", lineno, col)


def _check_group(group: str, lineno, col):
    if group not in GROUPS:
        raise ParseError(f"unknown conjugation group {group!r}", lineno, col)


def parse_dema_vs_line(line: str, lineno: int | None = None) -> DictEntry:
    line = _prepare(line, lineno)
    lemma, rest, col = _split_comma(line, lineno)
    _check_lemma(lemma, lineno)
    if not rest.startswith("V"):
        raise ParseError(f"expected part of speech V, got {rest[:1]!r}", lineno, col)
    fields = rest[1:].split("+")
    if len(fields) != 3:
        raise ParseError("expected <stemclass>+<affixclass>+<group>", lineno, col)
    stem_raw, affix_raw, group = fields
    if not stem_raw or not affix_raw:
        raise ParseError("empty code field", lineno, col + 1)
    try:
        stem = StemClass.parse(stem_raw)
    except ValueError as exc:
        raise ParseError(str(exc), lineno, col + 1) from None
    try:
        affix = AffixClass(affix_raw)
    except ValueError as exc:
        raise ParseError(str(exc), lineno, col + 2 + len(stem_raw)) from None
    _check_group(group, lineno, col + 3 + len(stem_raw) + len(affix_raw))
    return DictEntry(lemma, stem, affix, group)


_FLX_RE = re.compile(r"^(?P<lemma>[^.]+)\.(?P<pos>[A-Z]+)\+(?P<affix>[^+]+)\+(?P<group>[^+]+)\+(?P<tag>[^+]+)$")


def parse_dema_vsflx_line(line: str, lineno: int | None = None) -> AllomorphEntry:
    line = _prepare(line, lineno)
    form, rest, col = _split_comma(line, lineno)
    _check_lemma(form, lineno)
    m = _FLX_RE.match(rest)
    if not m:
        raise ParseError("expected <lemma>.V+<affixclass>+<group>+<tag>", lineno, col)
    _check_lemma(m["lemma"], lineno, col)
    if m["pos"] != "V":
        raise ParseError(f"expected part of speech V, got {m['pos']!r}", lineno, col + m.start("pos"))
    try:
        affix = AffixClass(m["affix"])
    except ValueError as exc:
        raise ParseError(str(exc), lineno, col + m.start("affix")) from None
    _check_group(m["group"], lineno, col + m.start("group"))
    if m["tag"] not in COMPAT_TAGS:
        raise ParseError(f"unknown compatibility tag {m['tag']!r}", lineno, col + m.start("tag"))
    return AllomorphEntry(form, m["lemma"], affix, m["group"], m["tag"])


_INV_HEAD_RE = re.compile(r"^(?P<pos>[A-Z]+)(?:\((?P<qual>[A-Z]+)\))?$")


def parse_dema_invflx_line(line: str, lineno: int | None = None) -> InvariableEntry:
    line = _prepare(line, lineno)
    form, rest, col = _split_comma(line, lineno)
    if not form:
        raise ParseError("empty form", lineno, 1)
    head, *features = rest.split("+")
    m = _INV_HEAD_RE.match(head)
    if not m:
        raise ParseError(f"bad part-of-speech field {head!r}", lineno, col)
    if any(not f for f in features):
        raise ParseError("empty feature", lineno, col + len(head))
    return InvariableEntry(form, m["pos"], tuple(features), m["qual"])


T = TypeVar("T")


def parse_lines(text: str, parse: Callable[[str, int], T], source=None) -> list[T]:
    """Parse every non-blank, non-comment line; errors carry the source name."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            out.append(parse(line, lineno))
        except ParseError as exc:
            raise ParseError(exc.message, exc.line, exc.column, source) from None
    return out


def read_dema_vs(path) -> list[DictEntry]:
    path = Path(path)
    return parse_lines(path.read_text(encoding="utf-8"), parse_dema_vs_line, path)


def read_dema_vsflx(path) -> list[AllomorphEntry]:
    path = Path(path)
    return parse_lines(path.read_text(encoding="utf-8"), parse_dema_vsflx_line, path)


def read_dema_invflx(path) -> list[InvariableEntry]:
    path = Path(path)
    return parse_lines(path.read_text(encoding="utf-8"), parse_dema_invflx_line, path)


def dump(entries: Iterable) -> str:
    return "".join(e.serialize() + "\n" for e in entries)
