"""Resource sets: where the dictionaries and graph files live, and loading them.

A config file uses TOML ``key = "value"`` lines; relative paths resolve
against the config file's directory::

    dema_vs = "dema_vs.dic"
    stems = "stems"
    affixes = "affixes"
    dema_invflx = "dema_invflx.dic"
    pronouns = "pronouns.tbl"
    # dema_vsflx = "dema_vsflx.dic"   precompiled allomorphs, skips inflection
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import fst_core, inflect, lexicon
from .contraction import integrate_with_analyzer, read_pronoun_table
from .errors import MoraError, ParseError
from .morpho import DEFAULT_PARADIGM_CEILING, CompiledResources, parse_graph_dsl

ENV_VAR = "MORA_RESOURCES"
DATA_DIR = Path(__file__).parent / "data"
_PATH_KEYS = ("dema_vs", "stems", "affixes", "dema_invflx", "pronouns", "dema_vsflx")


class ResourceLoadError(MoraError):
    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("\n".join(str(e) for e in self.errors))


@dataclass(frozen=True)
class ResourceSet:
    dema_vs: Path
    stems: Path
    affixes: Path
    dema_invflx: Path | None = None
    pronouns: Path | None = None
    dema_vsflx: Path | None = None
    max_depth: int = fst_core.DEFAULT_MAX_DEPTH
    paradigm_ceiling: int = DEFAULT_PARADIGM_CEILING

    @classmethod
    def from_config(cls, path) -> "ResourceSet":
        path = Path(path)
        with open(path, "rb") as fh:
            try:
                data = tomllib.load(fh)
            except tomllib.TOMLDecodeError as exc:
                raise ParseError(f"bad config: {exc}", source=path) from None
        unknown = set(data) - set(_PATH_KEYS) - {"max_depth", "paradigm_ceiling"}
        if unknown:
            raise ParseError(f"unknown config keys: {', '.join(sorted(unknown))}", source=path)
        for key in ("dema_vs", "stems", "affixes"):
            if key not in data:
                raise ParseError(f"missing config key {key!r}", source=path)
        kwargs = {}
        for key in _PATH_KEYS:
            if key in data:
                p = Path(data[key])
                kwargs[key] = p if p.is_absolute() else path.parent / p
        for key in ("max_depth", "paradigm_ceiling"):
            if key in data:
                kwargs[key] = int(data[key])
        return cls(**kwargs)

    @classmethod
    def sample(cls) -> "ResourceSet":
        """The resource set shipped with the package."""
        return cls.from_config(DATA_DIR / "mora.toml")

    @classmethod
    def default(cls) -> "ResourceSet":
        env = os.environ.get(ENV_VAR)
        return cls.from_config(env) if env else cls.sample()

    def override(self, **paths) -> "ResourceSet":
        return replace(self, **{k: Path(v) for k, v in paths.items() if v is not None})

    def load_graphs(self, errors: list) -> dict:
        graphs = {}
        for path in sorted(Path(self.affixes).glob("*.affix")):
            try:
                g = parse_graph_dsl(path.read_text(encoding="utf-8"), source=path)
            except ParseError as exc:
                errors.append(exc)
                continue
            if path.stem != g.name:
                errors.append(ParseError(f"graph {g.name} must live in {g.name}.affix", source=path))
            elif g.name in graphs:
                errors.append(ParseError(f"duplicate graph {g.name}", source=path))
            else:
                graphs[g.name] = g
        return graphs

    def load_transducers(self, errors: list) -> dict:
        registry = {}
        for path in sorted(Path(self.stems).glob("*.stem")):
            try:
                t = inflect.parse_transducer_dsl(path.read_text(encoding="utf-8"), source=path)
            except ParseError as exc:
                errors.append(exc)
                continue
            if path.name != lexicon.StemClass.parse(t.name).filename:
                errors.append(ParseError(f"class {t.name} must live in {t.stem_class.filename}", source=path))
            else:
                registry[t.name] = t
        return registry

    def compile(self):
        """Parse the root dictionary and stem transducers; compile allomorphs."""
        errors: list = []
        entries = _collect(lambda: lexicon.read_dema_vs(self.dema_vs), errors) or []
        transducers = self.load_transducers(errors)
        if errors:
            raise ResourceLoadError(errors)
        try:
            return entries, inflect.compile_lexicon(entries, transducers)
        except MoraError as exc:
            raise ResourceLoadError([exc]) from None

    def load(self) -> CompiledResources:
        errors: list = []
        if self.dema_vsflx is not None:
            entries = _collect(lambda: lexicon.read_dema_vs(self.dema_vs), errors) or []
            allomorphs = _collect(lambda: lexicon.read_dema_vsflx(self.dema_vsflx), errors) or []
            stats = None
        else:
            try:
                entries, compiled = self.compile()
                allomorphs, stats = compiled.entries, compiled.stats
            except ResourceLoadError as exc:
                errors.extend(exc.errors)
                entries, allomorphs, stats = [], [], None
        graphs = self.load_graphs(errors)
        invariables = []
        if self.dema_invflx is not None:
            invariables = _collect(lambda: lexicon.read_dema_invflx(self.dema_invflx), errors) or []
        pronouns = None
        if self.pronouns is not None:
            pronouns = _collect(lambda: read_pronoun_table(self.pronouns), errors)
        if errors:
            raise ResourceLoadError(errors)
        try:
            return integrate_with_analyzer(
                entries,
                allomorphs,
                graphs,
                invariables=invariables,
                pronouns=pronouns,
                max_depth=self.max_depth,
                stats=stats,
            )
        except MoraError as exc:
            raise ResourceLoadError([exc]) from None


def _collect(fn, errors):
    try:
        return fn()
    except (ParseError, OSError) as exc:
        errors.append(exc)
        return None
