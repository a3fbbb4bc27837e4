"""Morpheme-combination graphs, token analysis and paradigm generation.

Graph files (``*.affix``) hold one graph each. The header names either an
affix class (``affixclass a1ps20vAy``) or a shared subgraph
(``subgraph sfx_na_obj``). Every other line is one row of slots::

    {TENSE:present:"m"|TENSE:past:"n"|TENSE:future:"h"} ROOT:0 -> voice=act_stat

A slot is one alternative or a brace group of ``|``-separated alternatives.
Alternatives are ``ROLE:value:"literal"``, ``ROOT:<tag>[:<qualifier>]``,
``CALL:<graph>`` or ``_`` (nothing). Text after ``->`` holds path
annotations; ``voice=<value>`` gives the voice of paths that carry no
voice-bearing morpheme.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from . import fst_core
from .errors import CompileError, IntegrityError, ParseError
from .fst_core import Arc, ArcKind
from .lexicon import COMPAT_TAGS, ROOT_QUALIFIERS, AllomorphEntry, DictEntry

CATEGORIES = ("TENSE", "VOICE", "ASPECT", "SUFFIX_VOICE", "IMPERATIVE", "PRONOUN", "ELISION_MARK")
VOICES = ("act_stat", "obj", "loc", "circ", "agi_inst")
TENSES = ("present", "past", "future")
ASPECTS = ("aha", "voa", "tafa")
IMPERATIVES = ("a", "o", "y")
# Seeded from attested forms; extend together with the graphs that use them.
TENSE_SPELLINGS = {"m": "present", "n": "past", "no": "past", "h": "future", "ho": "future"}
ASPECT_SPELLINGS = {"aha": "aha", "voa": "voa", "tafa": "tafa", "taf": "tafa"}
ELISION_SPELLINGS = {"'": "apostrophe", "-": "dash"}
CONTRACTION_ROLES = ("PRONOUN", "ELISION_MARK")
PRONOUN_GRAPHS = ("prop", "pror")
DEFAULT_PARADIGM_CEILING = 1000
ANNOTATION_KEYS = ("voice",)


@dataclass(frozen=True)
class MorphemeRole:
    category: str
    value: str

    def __str__(self) -> str:
        return f"{self.category}={self.value}"


@dataclass(frozen=True)
class MorphemeGraph:
    affix_class: str
    graph: fst_core.Graph
    kind: str = "affixclass"

    @property
    def name(self) -> str:
        return self.affix_class


@dataclass(frozen=True)
class FeatureBundle:
    tense: str = "present"
    voice: str = "unresolved"
    aspect: str = "neutral"
    mode: str = "indicative"
    pronoun: str | None = None

    def as_dict(self) -> dict:
        return {
            "tense": self.tense,
            "voice": self.voice,
            "aspect": self.aspect,
            "mode": self.mode,
            "pronoun": self.pronoun,
        }

    def sort_key(self):
        return (self.tense, self.voice, self.aspect, self.mode, self.pronoun or "")


@dataclass(frozen=True)
class Segment:
    text: str
    role: str
    value: str
    form: str | None = None

    def as_dict(self) -> dict:
        d = {"text": self.text, "role": self.role, "value": self.value}
        if self.form is not None:
            d["allomorph"] = self.form
        return d


@dataclass(frozen=True)
class Analysis:
    token: str
    segments: tuple[Segment, ...]
    entry: DictEntry
    features: FeatureBundle
    allomorph: AllomorphEntry = field(compare=False)

    @property
    def lemma(self) -> str:
        return self.entry.lemma

    @property
    def is_contracted(self) -> bool:
        return bool(self.segments) and self.segments[-1].role in CONTRACTION_ROLES

    @property
    def root(self) -> Segment:
        return next(s for s in self.segments if s.role == "ROOT")

    def as_dict(self) -> dict:
        return {
            "lemma": self.entry.lemma,
            "stem_class": self.entry.stem_class.raw,
            "affix_class": self.entry.affix_class.raw,
            "group": self.entry.group,
            "segments": [s.as_dict() for s in self.segments],
            "features": self.features.as_dict(),
        }

    def __str__(self) -> str:
        parts = []
        for s in self.segments:
            text = s.text or "∅"
            parts.append(f"{text}({s.value})" if s.role == "ROOT" else f"{text}({s.role}={s.value})")
        return " + ".join(parts)


# --- graph language -------------------------------------------------------

_SLOT_RE = re.compile(r'\{[^}]*\}|"[^"]*"|[^\s{]+(?:"[^"]*")?')
_LITERAL_RE = re.compile(r'^([A-Z_]+):([a-z_0-9]+):"([^"]*)"$')
_NAME_RE = re.compile(r"^[0-9A-Za-z_]+$")


def _parse_alternative(text: str, lineno: int, source) -> tuple[Arc, ...]:
    def fail(msg):
        raise ParseError(msg, lineno, source=source)

    if text == "_":
        return ()
    if text.startswith("ROOT:"):
        parts = text.split(":")
        if len(parts) not in (2, 3):
            fail(f"bad root slot {text!r}")
        if parts[1] not in COMPAT_TAGS:
            fail(f"unknown compatibility tag {parts[1]!r}")
        qualifier = parts[2] if len(parts) == 3 else None
        if qualifier is not None and qualifier not in ROOT_QUALIFIERS:
            fail(f"unknown root qualifier {qualifier!r}")
        return (Arc.root(parts[1], qualifier),)
    if text.startswith("CALL:"):
        name = text[5:]
        if not _NAME_RE.match(name):
            fail(f"bad graph name {name!r}")
        return (Arc.call(name),)
    m = _LITERAL_RE.match(text)
    if not m:
        fail(f"cannot parse slot {text!r}")
    category, value, literal = m.groups()
    if category not in CATEGORIES:
        fail(f"unknown role {category!r}")
    _check_role(category, value, literal, fail)
    return (Arc.literal(literal, MorphemeRole(category, value)),)


def _check_role(category, value, literal, fail):
    if category in ("VOICE", "SUFFIX_VOICE"):
        if value not in VOICES:
            fail(f"unknown voice {value!r}")
        if category == "VOICE" and not literal:
            fail("voice prefix cannot be empty")
    elif category == "TENSE":
        if value not in TENSES:
            fail(f"unknown tense {value!r}")
        if TENSE_SPELLINGS.get(literal) != value:
            fail(f"tense prefix {literal!r} does not spell {value}")
    elif category == "ASPECT":
        if value not in ASPECTS:
            fail(f"unknown aspect {value!r}")
        if ASPECT_SPELLINGS.get(literal) != value:
            fail(f"aspect prefix {literal!r} does not spell {value}")
    elif category == "IMPERATIVE":
        if value not in IMPERATIVES or literal != value:
            fail(f"unknown imperative {value!r}:{literal!r}")
    elif category == "ELISION_MARK":
        if ELISION_SPELLINGS.get(literal) != value:
            fail(f"elision mark {literal!r} does not spell {value}")
    elif category == "PRONOUN":
        if not literal or literal != value:
            fail(f"pronoun literal must equal its value, got {value!r}:{literal!r}")


def _root_bounds(slot) -> tuple[int, int]:
    counts = [sum(1 for a in alt if a.kind is ArcKind.ROOT_SLOT) for alt in slot]
    return min(counts), max(counts)


def parse_graph_dsl(text: str, source=None) -> MorphemeGraph:
    name = kind = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if head in ("affixclass", "subgraph"):
            if name is not None:
                raise ParseError("duplicate graph header", lineno, source=source)
            rest = rest.strip()
            if not _NAME_RE.match(rest):
                raise ParseError(f"bad graph name {rest!r}", lineno, source=source)
            name, kind = rest, head
            continue
        if name is None:
            raise ParseError("path before graph header", lineno, source=source)
        body, arrow, notes = line.partition("->")
        attrs = []
        for word in notes.split() if arrow else ():
            key, eq, value = word.partition("=")
            if not eq or key not in ANNOTATION_KEYS:
                raise ParseError(f"unknown annotation {word!r}", lineno, source=source)
            if key == "voice" and value not in VOICES:
                raise ParseError(f"unknown voice {value!r}", lineno, source=source)
            attrs.append((key, value))
        slots = []
        pos = 0
        body = body.strip()
        for m in _SLOT_RE.finditer(body):
            if body[pos:m.start()].strip():
                raise ParseError(f"stray text {body[pos:m.start()]!r}", lineno, pos + 1, source)
            pos = m.end()
            word = m.group()
            if word.startswith("{"):
                inner = word[1:-1]
                alts = tuple(_parse_alternative(a.strip(), lineno, source) for a in inner.split("|"))
                if not inner.strip():
                    raise ParseError("empty alternation", lineno, m.start() + 1, source)
            else:
                alts = (_parse_alternative(word, lineno, source),)
            slots.append(alts)
        if body[pos:].strip():
            raise ParseError(f"stray text {body[pos:]!r}", lineno, pos + 1, source)
        bounds = [_root_bounds(s) for s in slots]
        low, high = sum(b[0] for b in bounds), sum(b[1] for b in bounds)
        want = 1 if kind == "affixclass" else 0
        if (low, high) != (want, want):
            raise ParseError(
                f"every path of a{'n affix' if want else ' sub'}graph needs exactly {want} ROOT slot(s)",
                lineno,
                source=source,
            )
        rows.append(fst_core.Row(tuple(slots), (), tuple(attrs), line=lineno))
    if name is None:
        raise ParseError("missing graph header", source=source)
    if not rows:
        raise ParseError(f"graph {name} has no paths", source=source)
    return MorphemeGraph(name, fst_core.Graph(name, tuple(rows), kind), kind)


# --- features -------------------------------------------------------------


def _roles(path: fst_core.Path):
    return [a.label for a in path.arcs if a.kind is ArcKind.LITERAL and a.label is not None]


def check_path_integrity(path: fst_core.Path, graph_name: str) -> None:
    """Reject paths whose morphemes disagree, or that misuse zero morphemes."""
    roles = _roles(path)
    by_cat: dict[str, set[str]] = {}
    for r in roles:
        by_cat.setdefault(r.category, set()).add(r.value)
    voices = by_cat.get("VOICE", set()) | by_cat.get("SUFFIX_VOICE", set())
    declared = path.attr("voice")
    if declared and voices and voices != {declared}:
        raise IntegrityError(f"{graph_name}: path declares voice={declared} but carries {sorted(voices)}")
    checks = {
        "tense": by_cat.get("TENSE", set()),
        "voice": voices,
        "aspect": by_cat.get("ASPECT", set()),
        "imperative": by_cat.get("IMPERATIVE", set()),
        "pronoun": by_cat.get("PRONOUN", set()),
    }
    for what, values in checks.items():
        if len(values) > 1:
            raise IntegrityError(f"{graph_name}: conflicting {what} values {sorted(values)} on one path")
    counts = [r.category for r in roles]
    for cat in ("TENSE", "ASPECT", "IMPERATIVE", "PRONOUN", "ELISION_MARK"):
        if counts.count(cat) > 1:
            raise IntegrityError(f"{graph_name}: {cat} appears twice on one path")
    contracted = any(c in CONTRACTION_ROLES for c in counts)
    for arc in path.arcs:
        if arc.kind is ArcKind.LITERAL and arc.payload == "" and not contracted:
            raise IntegrityError(f"{graph_name}: zero morpheme {arc.label} outside a contraction path")
    seen_contraction = False
    for arc in path.arcs:
        is_c = arc.kind is ArcKind.LITERAL and arc.label is not None and arc.label.category in CONTRACTION_ROLES
        if seen_contraction and not is_c:
            raise IntegrityError(f"{graph_name}: material after a pronoun or elision mark")
        seen_contraction = seen_contraction or is_c


def is_contraction_path(path: fst_core.Path) -> bool:
    return any(
        a.kind is ArcKind.LITERAL and a.label is not None and a.label.category in CONTRACTION_ROLES
        for a in path.arcs
    )


def decode_features(trace: Any) -> FeatureBundle:
    """Map the role annotations of a trace (or a bare path) onto a FeatureBundle."""
    path = trace.path if isinstance(trace, fst_core.MatchTrace) else trace
    tense, voice, aspect, mode, pronoun = "present", None, "neutral", "indicative", None
    for role in _roles(path):
        if role.category == "TENSE":
            tense = role.value
        elif role.category in ("VOICE", "SUFFIX_VOICE"):
            voice = role.value
        elif role.category == "ASPECT":
            aspect = role.value
        elif role.category == "IMPERATIVE":
            mode = "imperative"
        elif role.category == "PRONOUN":
            pronoun = role.value
    if voice is None:
        voice = path.attr("voice") or "unresolved"
    return FeatureBundle(tense, voice, aspect, mode, pronoun)


# --- compiled resources ---------------------------------------------------


@dataclass(frozen=True)
class CompiledResources:
    """Everything the analyzer needs; immutable once built."""

    lexicon: tuple[DictEntry, ...]
    allomorphs: tuple[AllomorphEntry, ...]
    index: fst_core.AllomorphIndex
    graphs: Mapping[str, MorphemeGraph]
    compiled: Mapping[str, fst_core.CompiledGraph]
    invariables: tuple = ()
    pronouns: tuple = ()
    patterns: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    max_depth: int = fst_core.DEFAULT_MAX_DEPTH
    contractions: bool = True
    stats: Any = None
    _entries: Mapping[tuple, DictEntry] = field(default_factory=dict, repr=False)
    _path_order: Mapping[tuple, int] = field(default_factory=dict, repr=False)

    def entry_for(self, allomorph: AllomorphEntry) -> DictEntry:
        return self._entries[(allomorph.lemma, allomorph.affix_class.raw, allomorph.group)]

    def entries_for_lemma(self, lemma: str) -> list[DictEntry]:
        lemma = unicodedata.normalize("NFC", lemma)
        return [e for e in self.lexicon if e.lemma == lemma or e.surface == lemma]

    def allomorphs_of(self, entry: DictEntry) -> list[AllomorphEntry]:
        return [
            a
            for a in self.allomorphs
            if a.lemma == entry.lemma and a.affix_class == entry.affix_class and a.group == entry.group
        ]

    def path_rank(self, graph_name: str, path: fst_core.Path) -> int:
        return self._path_order[(graph_name, path)]


def build_resources(
    lexicon: Sequence[DictEntry],
    allomorphs: Sequence[AllomorphEntry],
    graphs: Mapping[str, MorphemeGraph],
    *,
    invariables: Sequence = (),
    pronouns: Sequence = (),
    patterns: Mapping[str, tuple[str, ...]] | None = None,
    max_depth: int = fst_core.DEFAULT_MAX_DEPTH,
    contractions: bool = True,
    stats: Any = None,
) -> CompiledResources:
    """Resolve and compile every affix-class graph, checking path integrity."""
    lexicon = tuple(lexicon)
    missing = sorted({e.affix_class.raw for e in lexicon} - set(graphs))
    if missing:
        raise CompileError(f"no morpheme graph for affix class(es): {', '.join(missing)}", missing)
    keep = None if contractions else (lambda p: not is_contraction_path(p))
    compiled = {}
    order = {}
    for name in sorted(graphs):
        g = graphs[name]
        if g.kind != "affixclass":
            continue
        cg = fst_core.compile_graph(g, graphs, max_depth, keep=keep)
        for i, p in enumerate(cg.paths):
            if p.root_count() != 1:
                raise IntegrityError(f"{name}: expanded path has {p.root_count()} ROOT slots")
            check_path_integrity(p, name)
            order[(name, p)] = i
        compiled[name] = cg
    entries = {(e.lemma, e.affix_class.raw, e.group): e for e in lexicon}
    orphans = [a for a in allomorphs if (a.lemma, a.affix_class.raw, a.group) not in entries]
    if orphans:
        a = orphans[0]
        raise CompileError(f"allomorph {a.serialize()} has no root dictionary entry")
    return CompiledResources(
        lexicon=lexicon,
        allomorphs=tuple(allomorphs),
        index=fst_core.AllomorphIndex(allomorphs),
        graphs=dict(graphs),
        compiled=compiled,
        invariables=tuple(invariables),
        pronouns=tuple(pronouns),
        patterns=dict(patterns or {}),
        max_depth=max_depth,
        contractions=contractions,
        stats=stats,
        _entries=entries,
        _path_order=order,
    )


# --- queries --------------------------------------------------------------


def normalize_token(token: str) -> str:
    token = unicodedata.normalize("NFC", token).strip().lower()
    return token.replace("’", "'").replace("‘", "'")


def _analysis_from_trace(trace: fst_core.MatchTrace, resources: CompiledResources) -> Analysis:
    root = trace.roots[0]
    entry = resources.entry_for(root)
    segments = []
    for text, arc in trace.segments():
        if arc.kind is ArcKind.ROOT_SLOT:
            segments.append(Segment(text, "ROOT", entry.lemma, root.form))
        else:
            segments.append(Segment(text, arc.label.category, arc.label.value))
    return Analysis(trace.token, tuple(segments), entry, decode_features(trace), root)


def _candidate_classes(token: str, index: fst_core.AllomorphIndex) -> set[str]:
    classes = set()
    n = len(token)
    for i in range(n):
        for j in range(i + 1, min(n, i + index.max_key_length) + 1):
            for e in index.lookup(token[i:j]):
                classes.add(e.affix_class.raw)
    return classes


def analyze_token(token: str, resources: CompiledResources) -> list[Analysis]:
    """Every segmentation of ``token`` licensed by the resources, unranked."""
    token = normalize_token(token)
    if not token:
        return []
    found = []
    for name in sorted(_candidate_classes(token, resources.index)):
        cg = resources.compiled.get(name)
        if cg is None:
            continue
        for trace in fst_core.match_token(cg, token, resources.index):
            a = _analysis_from_trace(trace, resources)
            found.append((a.lemma, name, resources.path_rank(name, trace.path), a.allomorph.form, a))
    found.sort(key=lambda t: t[:4])
    out, seen = [], set()
    for *_, a in found:
        key = (a.entry, a.segments)
        if key not in seen:
            seen.add(key)
            out.append(a)
    return out


def generate_paradigm(
    entry: DictEntry,
    resources: CompiledResources,
    ceiling: int = DEFAULT_PARADIGM_CEILING,
) -> list[tuple[str, FeatureBundle]]:
    """Full-form paradigm of ``entry`` without pronoun contractions or elisions."""
    cg = resources.compiled.get(entry.affix_class.raw)
    if cg is None:
        raise CompileError(f"no morpheme graph for affix class {entry.affix_class.raw}", [entry.affix_class.raw])
    allomorphs = resources.allomorphs_of(entry)
    if not allomorphs:
        raise CompileError(f"{entry.lemma} has no compiled allomorphs", [entry.stem_class.raw])
    forms = set()
    for path in cg.paths:
        if is_contraction_path(path):
            continue
        slot = next(a for a in path.arcs if a.kind is ArcKind.ROOT_SLOT)
        features = decode_features(path)
        for allo in allomorphs:
            if allo.compat_tag != slot.payload:
                continue
            if slot.label is not None and not allo.satisfies(slot.label):
                continue
            forms.add((fst_core.realize(path, [allo.surface_key]), features))
        if len(forms) > ceiling:
            raise CompileError(f"paradigm of {entry.lemma} exceeds the ceiling of {ceiling} forms")
    return sorted(forms, key=lambda t: (t[0], t[1].sort_key()))


def paradigm_forms(entry: DictEntry, resources: CompiledResources) -> set[str]:
    return {form for form, _ in generate_paradigm(entry, resources)}
