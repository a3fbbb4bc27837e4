"""Minimal path-based transducer substrate.

A :class:`Graph` is a list of rows. Each row is a sequence of slots and each
slot holds one or more alternatives, an alternative being a (possibly empty)
sequence of arcs. Expanding every choice of alternative, and inlining the
paths of called subgraphs, yields the accepting :class:`Path` objects of the
graph. Graphs are acyclic except through calls, whose nesting is bounded by
``max_depth``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from .errors import ResolutionError

DEFAULT_MAX_DEPTH = 4


class ArcKind(enum.Enum):
    LITERAL = "LITERAL"
    ROOT_SLOT = "ROOT_SLOT"
    EDIT = "EDIT"
    SUBGRAPH_CALL = "SUBGRAPH_CALL"


@dataclass(frozen=True)
class Arc:
    """One labelled transition.

    ``payload`` is the literal text, the compatibility tag of a root slot, an
    edit instruction, or the called graph's name. ``label`` carries the
    annotation the owning layer needs: a morpheme role for literals, an
    allomorph qualifier for root slots.
    """

    kind: ArcKind
    payload: Any
    label: Any = None

    @classmethod
    def literal(cls, text: str, label: Any = None) -> "Arc":
        return cls(ArcKind.LITERAL, text, label)

    @classmethod
    def root(cls, tag: str, qualifier: str | None = None) -> "Arc":
        return cls(ArcKind.ROOT_SLOT, tag, qualifier)

    @classmethod
    def call(cls, name: str) -> "Arc":
        return cls(ArcKind.SUBGRAPH_CALL, name)

    @classmethod
    def edit(cls, op: Any) -> "Arc":
        return cls(ArcKind.EDIT, op)


@dataclass(frozen=True)
class Row:
    slots: tuple[tuple[tuple[Arc, ...], ...], ...]
    tags: tuple[str, ...] = ()
    attrs: tuple[tuple[str, str], ...] = ()
    line: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Graph:
    name: str
    rows: tuple[Row, ...]
    kind: str = "graph"

    def calls(self) -> set[str]:
        names = set()
        for row in self.rows:
            for slot in row.slots:
                for alt in slot:
                    names.update(a.payload for a in alt if a.kind is ArcKind.SUBGRAPH_CALL)
        return names


@dataclass(frozen=True)
class Path:
    arcs: tuple[Arc, ...]
    output_tags: tuple[str, ...] = ()
    attrs: tuple[tuple[str, str], ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.arcs

    def attr(self, key: str, default: str | None = None) -> str | None:
        for k, v in self.attrs:
            if k == key:
                return v
        return default

    def root_count(self) -> int:
        return sum(1 for a in self.arcs if a.kind is ArcKind.ROOT_SLOT)


def _as_graph(graph: Any) -> Graph:
    # MorphemeGraph and InflectionTransducer wrap an fst_core Graph.
    return graph if isinstance(graph, Graph) else graph.graph


def resolve(graph: Any, registry: Mapping[str, Any] | None = None) -> None:
    """Check that every subgraph reachable from ``graph`` is registered."""
    registry = registry or {}
    seen: set[str] = set()
    stack = [_as_graph(graph)]
    while stack:
        g = stack.pop()
        if g.name in seen:
            continue
        seen.add(g.name)
        for name in sorted(g.calls()):
            if name not in registry:
                raise ResolutionError(name, caller=g.name)
            stack.append(_as_graph(registry[name]))


def _merge_attrs(outer, inner):
    keys = {k for k, _ in outer}
    return outer + tuple((k, v) for k, v in inner if k not in keys)


def enumerate_paths(
    graph: Any,
    max_depth: int = DEFAULT_MAX_DEPTH,
    registry: Mapping[str, Any] | None = None,
) -> list[Path]:
    """Every distinct accepting path of ``graph``, in declaration order.

    Calls nested deeper than ``max_depth`` contribute no paths.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    registry = registry or {}
    resolve(graph, registry)
    g = _as_graph(graph)
    cache: dict[tuple[str, int], list[Path]] = {}

    def graph_paths(g: Graph, depth: int) -> list[Path]:
        key = (g.name, depth)
        if key not in cache:
            out = []
            for row in g.rows:
                out.extend(row_paths(row, depth))
            cache[key] = out
        return cache[key]

    def alt_expansions(alt: tuple[Arc, ...], depth: int):
        partial = [((), ())]
        for arc in alt:
            if arc.kind is ArcKind.SUBGRAPH_CALL:
                if depth + 1 > max_depth:
                    return []
                sub = graph_paths(_as_graph(registry[arc.payload]), depth + 1)
                partial = [
                    (arcs + p.arcs, _merge_attrs(attrs, p.attrs))
                    for arcs, attrs in partial
                    for p in sub
                ]
            else:
                partial = [(arcs + (arc,), attrs) for arcs, attrs in partial]
        return partial

    def row_paths(row: Row, depth: int) -> list[Path]:
        partial = [((), row.attrs)]
        for slot in row.slots:
            nxt = []
            for arcs, attrs in partial:
                for alt in slot:
                    for more, more_attrs in alt_expansions(alt, depth):
                        nxt.append((arcs + more, _merge_attrs(attrs, more_attrs)))
            partial = nxt
        return [Path(arcs, row.tags, attrs) for arcs, attrs in partial]

    seen = set()
    result = []
    for p in graph_paths(g, 0):
        if p not in seen:
            seen.add(p)
            result.append(p)
    return result


class AllomorphIndex:
    """Surface key -> allomorph entries, immutable after construction.

    Entries are duck-typed: they need ``surface_key``, ``compat_tag``,
    ``affix_class.raw`` and ``satisfies(qualifier)``.
    """

    def __init__(self, entries: Iterable[Any] = ()):
        table: dict[str, list[Any]] = {}
        for e in entries:
            table.setdefault(e.surface_key, []).append(e)
        self._table = {k: tuple(v) for k, v in table.items()}
        self._max_len = max((len(k) for k in self._table), default=0)

    def __len__(self) -> int:
        return sum(len(v) for v in self._table.values())

    def __contains__(self, key: str) -> bool:
        return key in self._table

    def keys(self):
        return self._table.keys()

    def lookup(self, key: str) -> tuple[Any, ...]:
        return self._table.get(key, ())

    @property
    def max_key_length(self) -> int:
        return self._max_len


@dataclass(frozen=True)
class MatchTrace:
    """One way a path consumes a token: a span per arc, an allomorph per root slot."""

    path: Path
    spans: tuple[tuple[int, int], ...]
    roots: tuple[Any, ...]
    token: str

    def segments(self) -> list[tuple[str, Arc]]:
        return [(self.token[s:e], arc) for (s, e), arc in zip(self.spans, self.path.arcs)]

    def realization(self) -> str:
        return "".join(self.token[s:e] for s, e in self.spans)


@dataclass(frozen=True)
class CompiledGraph:
    """A graph with its paths enumerated once, plus literal anchors per path."""

    name: str
    paths: tuple[Path, ...]
    anchors: tuple[tuple[str, str], ...]

    @property
    def graph(self):
        return self


def _anchors(path: Path) -> tuple[str, str]:
    head, tail = [], []
    seen_root = False
    for arc in path.arcs:
        if arc.kind is ArcKind.ROOT_SLOT:
            seen_root = True
            tail = []
        elif arc.kind is ArcKind.LITERAL:
            (tail if seen_root else head).append(arc.payload)
    return "".join(head), "".join(tail) if seen_root else ""


def compile_graph(
    graph: Any,
    registry: Mapping[str, Any] | None = None,
    max_depth: int = DEFAULT_MAX_DEPTH,
    keep: Any = None,
) -> CompiledGraph:
    g = _as_graph(graph)
    paths = enumerate_paths(g, max_depth=max_depth, registry=registry)
    if keep is not None:
        paths = [p for p in paths if keep(p)]
    return CompiledGraph(g.name, tuple(paths), tuple(_anchors(p) for p in paths))


def _root_accepts(entry: Any, arc: Arc, graph_name: str) -> bool:
    if entry.compat_tag != arc.payload:
        return False
    if entry.affix_class.raw != graph_name:
        return False
    return arc.label is None or entry.satisfies(arc.label)


def _match_path(path: Path, token: str, index: AllomorphIndex, graph_name: str):
    arcs = path.arcs
    n = len(token)
    out = []

    def walk(i, pos, spans, roots):
        if i == len(arcs):
            if pos == n:
                out.append(MatchTrace(path, spans, roots, token))
            return
        arc = arcs[i]
        if arc.kind is ArcKind.LITERAL:
            text = arc.payload
            if token.startswith(text, pos):
                walk(i + 1, pos + len(text), spans + ((pos, pos + len(text)),), roots)
        elif arc.kind is ArcKind.ROOT_SLOT:
            upper = min(n, pos + index.max_key_length)
            for end in range(pos + 1, upper + 1):
                for entry in index.lookup(token[pos:end]):
                    if _root_accepts(entry, arc, graph_name):
                        walk(i + 1, end, spans + ((pos, end),), roots + (entry,))
        else:
            raise ValueError(f"cannot match arc of kind {arc.kind.value}")

    walk(0, 0, (), ())
    return out


def match_token(
    graph: Any,
    token: str,
    root_index: AllomorphIndex,
    registry: Mapping[str, Any] | None = None,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> list[MatchTrace]:
    """All traces of ``graph`` whose realization equals ``token`` exactly.

    Root slots consume indexed allomorphs of the graph's own affix class that
    carry the slot's compatibility tag (and satisfy its qualifier, if any).
    """
    compiled = graph if isinstance(graph, CompiledGraph) else compile_graph(graph, registry, max_depth)
    traces = []
    for path, (head, tail) in zip(compiled.paths, compiled.anchors):
        if not token.startswith(head) or not token.endswith(tail):
            continue
        if len(head) + len(tail) > len(token):
            continue
        traces.extend(_match_path(path, token, root_index, compiled.name))
    return traces


def realize(path: Path, roots: Sequence[str]) -> str:
    """Concatenate a path's literals, filling root slots from ``roots`` in order."""
    parts = []
    it = iter(roots)
    for arc in path.arcs:
        if arc.kind is ArcKind.LITERAL:
            parts.append(arc.payload)
        elif arc.kind is ArcKind.ROOT_SLOT:
            parts.append(next(it))
    return "".join(parts)
