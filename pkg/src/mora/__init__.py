"""Finite-state morphology for Malagasy simple verbs.

Compile a root dictionary and stem-class transducers into an allomorph
dictionary, analyze conjugated tokens into labelled morphemes, generate
paradigms and score coverage on annotated corpora.
"""

from .errors import (
    CompileError,
    DomainError,
    IntegrityError,
    MoraError,
    ParseError,
    ResolutionError,
    ValidationError,
)
from .lexicon import (
    AffixClass,
    AllomorphEntry,
    DictEntry,
    InvariableEntry,
    StemClass,
    parse_dema_invflx_line,
    parse_dema_vs_line,
    parse_dema_vsflx_line,
    strip_stress,
)
from .inflect import compile_lexicon, generate_allomorphs, parse_transducer_dsl
from .morpho import (
    Analysis,
    CompiledResources,
    FeatureBundle,
    analyze_token,
    decode_features,
    generate_paradigm,
    parse_graph_dsl,
)
from .contraction import analyze_contracted, integrate_with_analyzer
from .corpus_eval import CoverageReport, GoldRecord, Token, evaluate, read_gold, tokenize
from .resources import ResourceSet

__version__ = "0.1.0"

__all__ = [
    "AffixClass", "AllomorphEntry", "Analysis", "CompileError", "CompiledResources", "CoverageReport",
    "DictEntry", "DomainError", "FeatureBundle", "GoldRecord", "IntegrityError", "InvariableEntry",
    "MoraError", "ParseError", "ResolutionError", "ResourceSet", "StemClass", "Token",
    "ValidationError", "analyze_contracted", "analyze_token", "compile_lexicon",
    "decode_features", "evaluate", "generate_allomorphs", "generate_paradigm",
    "integrate_with_analyzer", "parse_dema_invflx_line", "parse_dema_vs_line",
    "parse_dema_vsflx_line", "parse_graph_dsl", "parse_transducer_dsl", "read_gold", "strip_stress",
    "tokenize",
]
