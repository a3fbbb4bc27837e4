import json

import pytest

import oracle
from mora.contraction import integrate_with_analyzer
from mora.errors import CompileError, IntegrityError, ParseError
from mora.fst_core import Arc, Path
from mora.lexicon import AllomorphEntry, parse_dema_vs_line
from mora.morpho import (
    MorphemeRole,
    analyze_token,
    decode_features,
    generate_paradigm,
    normalize_token,
    paradigm_forms,
    parse_graph_dsl,
)

ANDRO_FORMS = {
    "androana", "androy", "handro", "handroana", "hotafandro",
    "mandro", "mandroa", "nandro", "nandroana", "tafandro",
}


def role(cat, value, text):
    return Arc.literal(text, MorphemeRole(cat, value))


def segs(a):
    return [(s.text, s.role, s.value) for s in a.segments]


# --- graph DSL ---


def test_minimal_graph():
    g = parse_graph_dsl("affixclass t\nROOT:0 -> ")
    assert g.name == "t" and g.kind == "affixclass"
    assert len(g.graph.rows) == 1


def test_sample_graph_parses(sample):
    g = parse_graph_dsl((sample.affixes / "a8ps42Bo.affix").read_text())
    assert g.name == "a8ps42Bo"
    assert len(g.graph.rows) == 6


@pytest.mark.parametrize(
    "text",
    [
        "affixclass t\nROOT:0 ROOT:ana",
        "affixclass t\nTENSE:present:\"m\"",
        "affixclass t\n{ROOT:0|_}",
        "subgraph s\nROOT:0",
        "affixclass t\nROOT:xx",
        "affixclass t\nROOT:0:weird",
        "affixclass t\nMOOD:x:\"a\" ROOT:0",
        "affixclass t\nTENSE:past:\"m\" ROOT:0",
        "affixclass t\nASPECT:tafa:\"ta\" ROOT:0",
        "affixclass t\nVOICE:obj:\"\" ROOT:0",
        "affixclass t\nROOT:0 -> mood=x",
        "affixclass t\nROOT:0 -> voice=nope",
        "affixclass t\nROOT:0 {}",
        "ROOT:0",
        "affixclass t\n",
        "affixclass t\naffixclass u\nROOT:0",
        "affixclass t\nROOT:0 stray",
    ],
)
def test_graph_dsl_rejects(text):
    with pytest.raises(ParseError):
        parse_graph_dsl(text)


def _tiny(graph_text, lemma_line="lalao,V0av+t+gc1", allos=None):
    entry = parse_dema_vs_line(lemma_line)
    allos = allos or [AllomorphEntry(entry.lemma, entry.lemma, entry.affix_class, entry.group, "0")]
    g = parse_graph_dsl(graph_text)
    return entry, integrate_with_analyzer([entry], allos, {g.name: g}, pronouns=[])


def test_bare_root_graph_paradigm():
    entry, res = _tiny("affixclass t\nROOT:0 -> ")
    assert [f for f, _ in generate_paradigm(entry, res)] == ["lalao"]
    (a,) = analyze_token("lalao", res)
    assert a.features.voice == "unresolved"


def test_conflicting_voices_rejected():
    with pytest.raises(IntegrityError):
        _tiny('affixclass t\nVOICE:act_stat:"i" ROOT:0 SUFFIX_VOICE:obj:"ina"')
    with pytest.raises(IntegrityError):
        _tiny('affixclass t\nVOICE:act_stat:"i" ROOT:0 -> voice=obj')


def test_zero_morpheme_needs_contraction():
    with pytest.raises(IntegrityError):
        _tiny('affixclass t\nROOT:0 SUFFIX_VOICE:obj:""')


def test_missing_graph_for_class():
    entry = parse_dema_vs_line("lalao,V0av+t+gc1")
    with pytest.raises(CompileError) as exc:
        integrate_with_analyzer([entry], [], {})
    assert exc.value.missing == ("t",)


# --- features ---


def test_features_past_obj_pronoun():
    p = Path((role("TENSE", "past", "no"), Arc.root("ana"), role("SUFFIX_VOICE", "obj", ""), role("PRONOUN", "ny", "ny")))
    f = decode_features(p)
    assert (f.tense, f.voice, f.pronoun) == ("past", "obj", "ny")


def test_features_present_active():
    p = Path((role("TENSE", "present", "m"), role("VOICE", "act_stat", "i"), Arc.root("0")))
    f = decode_features(p)
    assert (f.tense, f.voice, f.aspect, f.mode) == ("present", "act_stat", "neutral", "indicative")


def test_features_tafa():
    p = Path((role("ASPECT", "tafa", "taf"), Arc.root("0")), attrs=(("voice", "agi_inst"),))
    f = decode_features(p)
    assert (f.aspect, f.tense, f.voice) == ("tafa", "present", "agi_inst")


# --- analysis ---


def test_mitahiry(res):
    (a,) = analyze_token("mitahiry", res)
    assert segs(a) == [("m", "TENSE", "present"), ("i", "VOICE", "act_stat"), ("tahiry", "ROOT", "tàhiry")]


def test_tehirizina_tahirizina(res):
    (a,) = analyze_token("tehirizina", res)
    (b,) = analyze_token("tahirizina", res)
    for x in (a, b):
        assert x.lemma == "tàhiry"
        assert x.segments[-1].role == "SUFFIX_VOICE" and x.segments[-1].text == "ina"
        assert x.features.voice == "obj"
    assert a.allomorph.form != b.allomorph.form


def test_handroana(res):
    (a,) = analyze_token("handroana", res)
    assert segs(a) == [("h", "TENSE", "future"), ("andro", "ROOT", "àndro"), ("ana", "SUFFIX_VOICE", "circ")]


def test_token_normalization(res):
    assert normalize_token(" Mandro ") == "mandro"
    assert normalize_token("noraisin’") == "noraisin'"
    assert [str(a) for a in analyze_token("MANDRO", res)] == [str(a) for a in analyze_token("mandro", res)]
    assert analyze_token("", res) == []


def test_analysis_json_is_stable(res):
    (a,) = analyze_token("mandro", res)
    d = a.as_dict()
    assert json.dumps(d, sort_keys=True) == json.dumps(analyze_token("mandro", res)[0].as_dict(), sort_keys=True)
    assert d["lemma"] == "àndro"
    assert d["segments"][1] == {"text": "andro", "role": "ROOT", "value": "àndro", "allomorph": "àndro"}


def test_order_independent_of_resource_order(res):
    shuffled = integrate_with_analyzer(
        list(reversed(res.lexicon)),
        list(reversed(res.allomorphs)),
        {k: res.graphs[k] for k in sorted(res.graphs, reverse=True) if k not in ("prop", "pror")},
        invariables=res.invariables,
        pronouns=res.pronouns,
    )
    for token in ["mandro", "tehirizina", "nojereny", "mamafy", "hanaovan-", "nataony"]:
        assert [a.as_dict() for a in analyze_token(token, res)] == [a.as_dict() for a in analyze_token(token, shuffled)]


# --- generation ---


def test_andro_paradigm(res, entry):
    assert paradigm_forms(entry("àndro"), res) == ANDRO_FORMS


def test_fafy_paradigm(res, entry):
    assert {"mifafy", "mamafy", "mamafaza", "fafazo"} <= paradigm_forms(entry("fàfy"), res)


def test_paradigm_matches_oracle(res):
    table = oracle.build(res)
    for e in res.lexicon:
        plain = {
            form
            for form, keys in table.items()
            for lemma, _, sg in keys
            if lemma == e.lemma and not any(r in ("PRONOUN", "ELISION_MARK") for _, r, _ in sg)
        }
        assert paradigm_forms(e, res) == plain, e.lemma


def test_paradigm_forms_analyze_back(res):
    for e in res.lexicon:
        for form, features in generate_paradigm(e, res):
            got = analyze_token(form, res)
            assert any(a.entry == e and a.features == features for a in got), form


def test_paradigm_ceiling(res, entry):
    with pytest.raises(CompileError):
        generate_paradigm(entry("tàhiry"), res, ceiling=3)


def test_field1_matches_imperative_a(res):
    for name, cg in res.compiled.items():
        has_a = any(
            a.label is not None and a.label.category == "IMPERATIVE" and a.label.value == "a"
            for p in cg.paths for a in p.arcs if a.label is not None and hasattr(a.label, "category")
        )
        (cls,) = {e.affix_class for e in res.lexicon if e.affix_class.raw == name}
        assert cls.field1_imperative_a == has_a, name


def test_analyzer_agrees_with_oracle(res):
    table = oracle.build(res)
    for token in sorted(table):
        assert oracle.analyses_as_keys(analyze_token(token, res)) == table[token], token
    for token in ["xyz", "mandroo", "andr", "tafa", "nojere", "mamafyy", "tahiry'ny"]:
        assert oracle.analyses_as_keys(analyze_token(token, res)) == table.get(token, set())
