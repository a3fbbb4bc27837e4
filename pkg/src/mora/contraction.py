"""Verb-pronoun contractions and apostrophe/dash elision.

Bound pronouns come from a table file, one per line::

    ny    pers:3

The table becomes the ``prop`` subgraph. Affix graphs recognize contracted
endings either by calling ``prop`` themselves ("embedded") or by calling a
shared suffix subgraph that does ("shared").
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from . import fst_core
from .errors import CompileError, IntegrityError, ParseError, ResolutionError
from .fst_core import Arc, ArcKind
from .lexicon import AllomorphEntry, DictEntry, InvariableEntry
from .morpho import (
    PRONOUN_GRAPHS,
    Analysis,
    CompiledResources,
    MorphemeGraph,
    MorphemeRole,
    analyze_token,
    build_resources,
    is_contraction_path,
)


@dataclass(frozen=True)
class BoundPronoun:
    form: str
    features: tuple[str, ...] = ()


def parse_pronoun_table(text: str, source=None) -> list[BoundPronoun]:
    out = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        form, *features = line.split()
        if not form.isalpha() or form != form.lower():
            raise ParseError(f"bad pronoun form {form!r}", lineno, 1, source)
        if form in seen:
            raise ParseError(f"duplicate pronoun {form!r}", lineno, 1, source)
        for f in features:
            if ":" not in f:
                raise ParseError(f"feature {f!r} is not key:value", lineno, source=source)
        seen.add(form)
        out.append(BoundPronoun(form, tuple(features)))
    return out


def read_pronoun_table(path) -> list[BoundPronoun]:
    path = Path(path)
    return parse_pronoun_table(path.read_text(encoding="utf-8"), source=path)


def pronoun_graph(pronouns: Sequence[BoundPronoun], name: str = "prop") -> MorphemeGraph:
    alts = tuple((Arc.literal(p.form, MorphemeRole("PRONOUN", p.form)),) for p in pronouns)
    rows = (fst_core.Row((alts,)),) if alts else ()
    return MorphemeGraph(name, fst_core.Graph(name, rows, "subgraph"), "subgraph")


def _direct_arcs(graph: MorphemeGraph):
    for row in graph.graph.rows:
        for slot in row.slots:
            for alt in slot:
                yield from alt


def _classify(name: str, graphs: Mapping[str, MorphemeGraph], max_depth: int) -> tuple[str, ...]:
    patterns = set()
    for arc in _direct_arcs(graphs[name]):
        if arc.kind is ArcKind.LITERAL and arc.label.category == "PRONOUN":
            patterns.add("embedded")
        elif arc.kind is ArcKind.SUBGRAPH_CALL:
            if arc.payload in PRONOUN_GRAPHS:
                patterns.add("embedded")
            else:
                sub = fst_core.enumerate_paths(graphs[arc.payload], max_depth, graphs)
                if any(is_contraction_path(p) for p in sub):
                    patterns.add("shared")
    return tuple(sorted(patterns))


def integrate_with_analyzer(
    lexicon: Sequence[DictEntry],
    allomorphs: Sequence[AllomorphEntry],
    graphs: Mapping[str, MorphemeGraph],
    *,
    invariables: Sequence[InvariableEntry] = (),
    pronouns: Sequence[BoundPronoun] | None = None,
    max_depth: int = fst_core.DEFAULT_MAX_DEPTH,
    stats=None,
) -> CompiledResources:
    """Bind pronoun graphs into the registry and compile the analyzer.

    Without a pronoun table the pronoun graphs are bound empty and every
    contraction or elision path is dropped, so plain forms still analyze.
    """
    registry = dict(graphs)
    enabled = pronouns is not None
    for pname in PRONOUN_GRAPHS:
        if pname in registry:
            raise CompileError(f"graph name {pname!r} is reserved for the pronoun table")
    registry["prop"] = pronoun_graph(pronouns or (), "prop")
    registry["pror"] = pronoun_graph((), "pror")

    for name in sorted(registry):
        for callee in sorted(registry[name].graph.calls()):
            if callee not in registry:
                raise ResolutionError(callee, caller=name)

    known = {p.form for p in pronouns or ()}
    known |= {e.form for e in invariables if e.pos == "PRO"}
    for name, g in sorted(registry.items()):
        for arc in _direct_arcs(g):
            if arc.kind is ArcKind.LITERAL and arc.label.category == "PRONOUN" and arc.label.value not in known:
                if enabled:
                    raise IntegrityError(f"{name}: pronoun {arc.label.value!r} is in neither pronoun dictionary")

    patterns = {
        name: _classify(name, registry, max_depth)
        for name, g in registry.items()
        if g.kind == "affixclass"
    }
    return build_resources(
        lexicon,
        allomorphs,
        registry,
        invariables=invariables,
        pronouns=tuple(pronouns or ()),
        patterns=patterns,
        max_depth=max_depth,
        contractions=enabled,
        stats=stats,
    )


def analyze_contracted(token: str, resources: CompiledResources) -> list[Analysis]:
    """Analyses whose last segment is a bound pronoun or an elision mark."""
    return [a for a in analyze_token(token, resources) if a.is_contracted]


def restore_uncontracted(analysis: Analysis, resources: CompiledResources) -> list[str]:
    """Full verb forms a contracted analysis stands for.

    The pronoun or elision mark is removed and the shortened voice suffix is
    replaced by every spelling of the same voice suffix that a plain path of
    the entry's graph uses and that extends the shortened one (an empty
    objective marker becomes ``na``, an elided ``in`` becomes ``ina``, ...).
    Only candidates the analyzer accepts for the same entry are returned.
    """
    if not analysis.is_contracted:
        return [analysis.token]
    cg = resources.compiled[analysis.entry.affix_class.raw]
    body = [s for s in analysis.segments if s.role not in ("PRONOUN", "ELISION_MARK")]
    suffix_at = [i for i, s in enumerate(body) if s.role == "SUFFIX_VOICE"]
    candidates = set()
    if not suffix_at:
        candidates.add("".join(s.text for s in body))
    else:
        i = suffix_at[-1]
        short = body[i]
        spellings = {
            arc.payload
            for p in cg.paths
            if not is_contraction_path(p)
            for arc in p.arcs
            if arc.kind is ArcKind.LITERAL
            and arc.label.category == "SUFFIX_VOICE"
            and arc.label.value == short.value
            and arc.payload.startswith(short.text)
        }
        for full in spellings:
            candidates.add("".join(s.text for s in body[:i]) + full + "".join(s.text for s in body[i + 1:]))
    out = []
    for form in sorted(candidates):
        if any(a.entry == analysis.entry and not a.is_contracted for a in analyze_token(form, resources)):
            out.append(form)
    return out
