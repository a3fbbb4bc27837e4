import pytest
from hypothesis import given, settings, strategies as st

from mora.errors import ResolutionError
from mora.fst_core import (
    AllomorphIndex,
    Arc,
    ArcKind,
    Graph,
    Row,
    enumerate_paths,
    match_token,
    realize,
    resolve,
)
from mora.inflect import parse_transducer_dsl
from mora.lexicon import AffixClass, AllomorphEntry


def lit(text):
    return (Arc.literal(text),)


def test_single_empty_path():
    g = Graph("g", (Row((((),),)),))
    paths = enumerate_paths(g)
    assert len(paths) == 1
    assert paths[0].is_empty


def test_union_of_two_literals_keeps_order():
    g = Graph("g", (Row(((lit("m"), lit("n")),)),))
    paths = enumerate_paths(g)
    assert [p.arcs[0].payload for p in paths] == ["m", "n"]


def test_transducer_paths(sample):
    t = parse_transducer_dsl((sample.stems / "0are.stem").read_text())
    paths = enumerate_paths(t)
    assert len(paths) == 4
    assert all(a.kind is ArcKind.EDIT for p in paths for a in p.arcs)


def test_duplicate_paths_collapse():
    g = Graph("g", (Row(((lit("a"), lit("a")),)), Row(((lit("a"),),))))
    assert len(enumerate_paths(g)) == 1


def test_subgraph_inlined_and_attrs_merged():
    sub = Graph("s", (Row(((lit("x"), lit("y")),), attrs=(("voice", "obj"),)),))
    g = Graph("g", (Row(((lit("a"),), ((Arc.call("s"),),))),))
    paths = enumerate_paths(g, registry={"s": sub})
    assert ["".join(a.payload for a in p.arcs) for p in paths] == ["ax", "ay"]
    assert paths[0].attr("voice") == "obj"


def test_dangling_call_names_missing_graph():
    g = Graph("g", (Row((((Arc.call("nope"),),),)),))
    with pytest.raises(ResolutionError) as exc:
        resolve(g, {})
    assert exc.value.name == "nope"
    assert exc.value.caller == "g"


def test_depth_bound_drops_deep_paths():
    reg = {}
    for i in range(6):
        alt = (Arc.call(f"c{i + 1}"),) if i < 5 else lit("end")
        reg[f"c{i}"] = Graph(f"c{i}", (Row(((alt,),)),))
    top = Graph("top", (Row((((Arc.call("c0"),),),)), Row(((lit("short"),),))))
    paths = enumerate_paths(top, max_depth=4, registry=reg)
    assert [realize(p, []) for p in paths] == ["short"]
    deep = enumerate_paths(top, max_depth=6, registry=reg)
    assert sorted(realize(p, []) for p in deep) == ["end", "short"]
    with pytest.raises(ValueError):
        enumerate_paths(top, max_depth=0, registry=reg)


def test_recursive_graph_terminates():
    loop = Graph("loop", (Row(((lit("a"),), ((Arc.call("loop"),),))), Row(((lit("b"),),))))
    paths = enumerate_paths(loop, registry={"loop": loop})
    assert sorted(realize(p, []) for p in paths) == ["aaaab", "aaab", "aab", "ab", "b"]


def test_mandro_and_tafandro(res):
    cg = res.compiled["a1ps20vAy"]
    (t,) = match_token(cg, "mandro", res.index)
    assert [s for s, _ in t.segments()] == ["m", "andro"]
    (t,) = match_token(cg, "tafandro", res.index)
    assert [s for s, _ in t.segments()] == ["taf", "andro"]
    assert t.path.arcs[0].label.value == "tafa"


def test_non_word_rejected(res):
    for cg in res.compiled.values():
        assert match_token(cg, "xyz", res.index) == []


def test_index_lookup():
    e = AllomorphEntry("andró", "àndro", AffixClass("g"), "gc1", "ana")
    idx = AllomorphIndex([e])
    assert "andro" in idx
    assert idx.lookup("andro") == (e,)
    assert idx.lookup("x") == ()
    assert idx.max_key_length == 5
    assert len(idx) == 1


# Random single-root graphs over a tiny alphabet: every trace must spell the
# token, and every (path, root) combination must be found.
_alpha = st.text("ab", min_size=0, max_size=2)
_slot = st.lists(_alpha, min_size=1, max_size=3, unique=True)


@settings(max_examples=150, deadline=None)
@given(
    st.lists(st.tuples(_slot, _slot), min_size=1, max_size=3),
    st.lists(st.text("ab", min_size=1, max_size=3), min_size=1, max_size=3, unique=True),
)
def test_matcher_sound_and_complete(rows, roots):
    graph_rows = []
    for pre, post in rows:
        slots = (
            tuple(lit(p) for p in pre),
            ((Arc.root("0"),),),
            tuple(lit(p) for p in post),
        )
        graph_rows.append(Row(slots))
    g = Graph("g", tuple(graph_rows))
    entries = [AllomorphEntry(r, r, AffixClass("g"), "gc1", "0") for r in roots]
    idx = AllomorphIndex(entries)
    paths = enumerate_paths(g)
    expected = {}
    for p in paths:
        for r in roots:
            expected.setdefault(realize(p, [r]), set()).add((p, r))
    for token, want in expected.items():
        traces = match_token(g, token, idx)
        assert all(t.realization() == token for t in traces)
        assert {(t.path, t.roots[0].form) for t in traces} == want
