"""Stem-class transducers and the allomorph dictionary compiler.

Transducer files (``*.stem``) are written in a small line-based language::

    # fàfy, fafazo, mamafy ...
    version 1
    class 0are
    KEEP -> 0
    DELETE_FIRST 1 -> 0
    DELETE_LAST 1 APPEND az MOVE_STRESS_TO_FINAL_VOWEL -> ana,imprt

Each path line is a sequence of edit operations applied left to right to the
lemma, then ``->`` and the comma-separated compatibility tags the resulting
allomorph receives.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from . import fst_core
from .errors import CompileError, DomainError, ParseError
from .lexicon import COMPAT_TAGS, AllomorphEntry, DictEntry, StemClass, strip_stress

log = logging.getLogger(__name__)

DSL_VERSION = 1
VOWELS = "aeioy"
_ACUTE = {"a": "á", "e": "é", "i": "í", "o": "ó", "y": "ý"}

# mnemonic -> argument kind (None, "count" or "text")
OPS = {
    "DELETE_LAST": "count",
    "DELETE_FIRST": "count",
    "APPEND": "text",
    "PREPEND": "text",
    "MOVE_STRESS_TO_FINAL_VOWEL": None,
    "DROP_STRESS": None,
}


@dataclass(frozen=True)
class EditOp:
    name: str
    arg: int | str | None = None

    def apply(self, s: str) -> str:
        if self.name == "DELETE_LAST":
            if self.arg >= len(s):
                raise DomainError(f"DELETE_LAST {self.arg} on {s!r}")
            return s[: -self.arg]
        if self.name == "DELETE_FIRST":
            if self.arg >= len(s):
                raise DomainError(f"DELETE_FIRST {self.arg} on {s!r}")
            return s[self.arg:]
        if self.name == "APPEND":
            return s + self.arg
        if self.name == "PREPEND":
            return self.arg + s
        if self.name == "DROP_STRESS":
            return strip_stress(s)
        if self.name == "MOVE_STRESS_TO_FINAL_VOWEL":
            plain = strip_stress(s)
            for i in range(len(plain) - 1, -1, -1):
                if plain[i] in VOWELS:
                    return plain[:i] + _ACUTE[plain[i]] + plain[i + 1:]
            raise DomainError(f"no vowel to stress in {s!r}")
        raise ValueError(f"unknown edit {self.name}")

    def __str__(self) -> str:
        return self.name if self.arg is None else f"{self.name} {self.arg}"


@dataclass(frozen=True)
class EditPath:
    edits: tuple[EditOp, ...]
    tags: tuple[str, ...]
    line: int | None = field(default=None, compare=False)

    def apply(self, lemma: str) -> str:
        s = lemma
        for op in self.edits:
            s = op.apply(s)
        if not s:
            raise DomainError(f"edits {self.describe()} leave {lemma!r} empty")
        return s

    def describe(self) -> str:
        return " ".join(map(str, self.edits)) or "KEEP"


@dataclass(frozen=True)
class InflectionTransducer:
    name: str
    paths: tuple[EditPath, ...]

    @property
    def stem_class(self) -> StemClass:
        return StemClass.parse(self.name)

    @property
    def graph(self) -> fst_core.Graph:
        rows = tuple(
            fst_core.Row(tuple(((fst_core.Arc.edit(op),),) for op in p.edits), p.tags, line=p.line)
            for p in self.paths
        )
        return fst_core.Graph(self.name, rows, kind="transducer")

    def to_dsl(self) -> str:
        lines = [f"version {DSL_VERSION}", f"class {self.name}"]
        lines += [f"{p.describe()} -> {','.join(p.tags)}" for p in self.paths]
        return "\n".join(lines) + "\n"


def _parse_ops(words: list[str], lineno: int) -> tuple[EditOp, ...]:
    ops = []
    i = 0
    while i < len(words):
        name = words[i]
        if name == "KEEP":
            i += 1
            continue
        if name not in OPS:
            raise ParseError(f"unknown edit operation {name!r}", lineno)
        kind = OPS[name]
        if kind is None:
            ops.append(EditOp(name))
            i += 1
            continue
        if i + 1 >= len(words):
            raise ParseError(f"{name} needs an argument", lineno)
        arg = words[i + 1]
        if kind == "count":
            if not arg.isdigit() or int(arg) < 1:
                raise ParseError(f"{name} needs a positive count, got {arg!r}", lineno)
            ops.append(EditOp(name, int(arg)))
        else:
            if not arg.isalpha() or arg != arg.lower():
                raise ParseError(f"{name} needs lowercase letters, got {arg!r}", lineno)
            ops.append(EditOp(name, arg))
        i += 2
    return tuple(ops)


def parse_transducer_dsl(text: str, source=None) -> InflectionTransducer:
    name = None
    paths = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0] == "version":
            if len(words) != 2 or words[1] != str(DSL_VERSION):
                raise ParseError(f"unsupported DSL version {line!r}", lineno, source=source)
            continue
        if words[0] == "class":
            if name is not None:
                raise ParseError("duplicate class header", lineno, source=source)
            if len(words) != 2:
                raise ParseError("expected 'class <code>'", lineno, source=source)
            try:
                StemClass.parse(words[1])
            except ValueError as exc:
                raise ParseError(str(exc), lineno, 7, source) from None
            name = words[1]
            continue
        if name is None:
            raise ParseError("path before class header", lineno, source=source)
        if "->" not in words:
            raise ParseError("missing '->' and tags", lineno, source=source)
        arrow = words.index("->")
        tag_text = "".join(words[arrow + 1:])
        tags = tuple(t for t in tag_text.split(",") if t)
        if not tags:
            raise ParseError("missing tags", lineno, source=source)
        for t in tags:
            if t not in COMPAT_TAGS:
                raise ParseError(f"unknown compatibility tag {t!r}", lineno, source=source)
        try:
            ops = _parse_ops(words[:arrow], lineno)
        except ParseError as exc:
            raise ParseError(exc.message, lineno, source=source) from None
        paths.append(EditPath(ops, tags, lineno))
    if name is None:
        raise ParseError("missing class header", source=source)
    if not paths:
        raise ParseError(f"transducer {name} has no paths", source=source)
    if not any("0" in p.tags for p in paths):
        raise ParseError(f"transducer {name} has no path tagged 0", source=source)
    if not StemClass.parse(name).ina_accepting:
        bad = [p for p in paths if "ina" in p.tags]
        if bad:
            raise ParseError(f"class {name} does not accept -ina but a path emits it", bad[0].line, source=source)
    return InflectionTransducer(name, tuple(paths))


def load_transducers(directory) -> dict[str, InflectionTransducer]:
    registry = {}
    for path in sorted(Path(directory).glob("*.stem")):
        t = parse_transducer_dsl(path.read_text(encoding="utf-8"), source=path)
        expected = StemClass.parse(t.name).filename
        if path.name != expected:
            raise ParseError(f"class {t.name} must live in {expected}", source=path)
        registry[t.name] = t
    return registry


def generate_allomorphs(entry: DictEntry, t: InflectionTransducer) -> list[AllomorphEntry]:
    if t.name != entry.stem_class.raw:
        raise ValueError(f"transducer {t.name} does not match stem class {entry.stem_class.raw}")
    out = []
    seen = set()
    for path in fst_core.enumerate_paths(t):
        form = entry.lemma
        try:
            for arc in path.arcs:
                form = arc.payload.apply(form)
        except DomainError as exc:
            edits = " ".join(str(a.payload) for a in path.arcs)
            raise DomainError(f"{entry.lemma} ({t.name}) path [{edits}]: {exc}") from None
        for tag in path.output_tags:
            if (form, tag) in seen:
                continue
            seen.add((form, tag))
            out.append(AllomorphEntry(form, entry.lemma, entry.affix_class, entry.group, tag))
    return out


@dataclass
class CompileStats:
    roots: int = 0
    entries: int = 0
    distinct_forms: int = 0

    @property
    def variants_per_root(self) -> float:
        return self.entries / self.roots if self.roots else 0.0

    @property
    def forms_per_root(self) -> float:
        return self.distinct_forms / self.roots if self.roots else 0.0

    def as_dict(self) -> dict:
        return {
            "roots": self.roots,
            "entries": self.entries,
            "distinct_forms": self.distinct_forms,
            "variants_per_root": round(self.variants_per_root, 2),
            "forms_per_root": round(self.forms_per_root, 2),
        }


@dataclass
class CompiledLexicon:
    entries: list[AllomorphEntry]
    stats: CompileStats


def compile_lexicon(
    dema_vs: Iterable[DictEntry], registry: Mapping[str, InflectionTransducer]
) -> CompiledLexicon:
    dema_vs = list(dema_vs)
    missing = sorted({e.stem_class.raw for e in dema_vs} - set(registry))
    if missing:
        raise CompileError(f"no transducer for stem class(es): {', '.join(missing)}", missing)
    out = []
    stats = CompileStats()
    for entry in dema_vs:
        allomorphs = generate_allomorphs(entry, registry[entry.stem_class.raw])
        out.extend(allomorphs)
        stats.roots += 1
        stats.entries += len(allomorphs)
        stats.distinct_forms += len({a.form for a in allomorphs})
    log.debug("compiled %d roots into %d allomorph entries", stats.roots, stats.entries)
    return CompiledLexicon(out, stats)
