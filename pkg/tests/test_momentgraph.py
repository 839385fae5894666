import json
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bottsamelson.momentgraph import (
    Case,
    Edge,
    build,
    build_with_cases,
    classify_lift,
    export,
    parse,
    push_theta,
    to_dot,
)
from bottsamelson.rootsys import Subword, make_word

S = Subword.parse

EDGES_121 = {
    ("000", "001"): (0, 0, 1),
    ("000", "010"): (0, 1, 0),
    ("000", "100"): (1, 0, 0),
    ("000", "101"): (1, 0, -1),
    ("001", "011"): (0, 1, 1),
    ("001", "100"): (1, 0, -1),
    ("010", "011"): (0, 0, 1),
    ("010", "110"): (1, 1, 0),
    ("011", "111"): (1, 1, -1),
    ("100", "101"): (0, 0, 1),
    ("100", "110"): (0, 1, 0),
    ("101", "111"): (0, 1, 1),
    ("110", "111"): (0, 0, 1),
}


def _edge_map(graph):
    return {(str(e.u), str(e.v)): e.cls for e in graph.edges}


def test_121_edges(word121):
    g = build(word121)
    assert len(g.vertices) == 8
    assert _edge_map(g) == EDGES_121
    assert [(str(e.u), str(e.v)) for e in g.family_edges()] == [("000", "100")]


def test_121_class_multiset(word121):
    counts = Counter(e.cls for e in build(word121).edges)
    assert counts == Counter({
        (0, 0, 1): 4, (1, 0, 0): 1, (1, 0, -1): 2, (0, 1, 0): 2,
        (0, 1, 1): 2, (1, 1, 0): 1, (1, 1, -1): 1,
    })


def test_hirzebruch_f1():
    g = build(make_word("A2", "1,2"))
    e, f = (1, 0), (0, 1)
    assert _edge_map(g) == {("00", "01"): f, ("00", "10"): e, ("01", "11"): (1, 1), ("10", "11"): f}
    assert not g.family_edges()


def test_square_over_family_edge(word121):
    g = build(word121)
    pts = {"000", "100", "001", "101"}
    sub = {k: v for k, v in _edge_map(g).items() if set(k) <= pts}
    assert sub == {
        ("000", "001"): (0, 0, 1), ("000", "100"): (1, 0, 0), ("100", "101"): (0, 0, 1),
        ("001", "100"): (1, 0, -1), ("000", "101"): (1, 0, -1),
    }


def test_four_letter_square_follows_case_analysis():
    g = build(make_word("A2", "1,2,1,2"))
    pts = {"0000", "1010", "0001", "1011"}
    sub = {k: v for k, v in _edge_map(g).items() if set(k) <= pts}
    assert sub == {
        ("0000", "0001"): (0, 0, 0, 1), ("0000", "1010"): (1, 0, -1, 0),
        ("0001", "1011"): (1, 0, -1, 0), ("1010", "1011"): (0, 0, 0, 1),
    }


def test_lift_cases_for_121(word121):
    _, lifts = build_with_cases(word121)
    cases = {(str(p.u), str(p.v)): lift.case for p, lift in lifts}
    assert cases[("00", "10")] is Case.II
    assert cases[("00", "01")] is Case.I
    assert cases[("01", "11")] is Case.I
    assert cases[("10", "11")] is Case.I


def test_classify_rejects_wrong_length(word121):
    with pytest.raises(RuntimeError):
        classify_lift(word121, Edge(S("0"), S("1"), (1,)))


def test_edge_normalizes_order():
    e = Edge(S("10"), S("00"), (1, 0))
    assert (str(e.u), str(e.v)) == ("00", "10")
    with pytest.raises(RuntimeError):
        Edge(S("00"), S("00"), (0, 0))


def test_json_roundtrip(word121):
    g = build(word121)
    text = export(g, "json")
    back = parse(text)
    assert back.edges == g.edges and back.vertices == g.vertices
    data = json.loads(text)
    assert data["word"] == [1, 2, 1] and len(data["edges"]) == 13


def test_dot_marks_family_edges(word121):
    dot = to_dot(build(word121))
    assert dot.startswith("graph Z_1_2_1 {")
    assert dot.count("penwidth=3") == 1
    assert '"000" -- "100" [label="(1,0,0)", penwidth=3];' in dot


def test_unknown_format(word121):
    with pytest.raises(ValueError):
        export(build(word121), "yaml")


def test_push_theta(word121):
    assert push_theta(word121, (1, 1, -1)) == (0, 1)
    assert push_theta(word121, (1, 0, 0)) == (1, 0)


def test_g2_word_builds():
    g = build(make_word("G2", "1,2,1,2"))
    assert len(g.vertices) == 16
    assert all(min(push_theta(g.word, e.cls)) >= 0 for e in g.edges)


PRESET_RANKS = {"A2": 2, "A3": 3, "D4": 4}


@st.composite
def random_words(draw, max_len=5):
    cartan = draw(st.sampled_from(sorted(PRESET_RANKS)))
    n = draw(st.integers(1, max_len))
    return make_word(cartan, draw(st.lists(st.integers(1, PRESET_RANKS[cartan]), min_size=n, max_size=n)))


@settings(max_examples=60, deadline=None)
@given(random_words())
def test_projection_consistency(w):
    g = build(w)
    if len(w) == 1:
        return
    parent = build(w.prefix(len(w) - 1))
    parent_edges = set(parent.edges)
    checked = 0
    for e in g.edges:
        if e.is_vertical():
            continue
        projected = Edge(Subword(e.u.bits[:-1]), Subword(e.v.bits[:-1]), e.cls[:-1])
        assert any((p.u, p.v, p.cls) == (projected.u, projected.v, projected.cls) for p in parent_edges)
        checked += 1
    assert checked >= len(parent.edges)


@settings(max_examples=60, deadline=None)
@given(random_words())
def test_theta_pushforward_is_effective(w):
    for e in build(w).edges:
        pushed = push_theta(w, e.cls)
        assert min(pushed) >= 0


@settings(max_examples=60, deadline=None)
@given(random_words())
def test_graph_shape(w):
    g = build(w)
    n = len(w)
    assert len(g.vertices) == 2 ** n
    # each fixed point has at least n edges (tangent weights at a smooth fixed point)
    degree = {v: 0 for v in g.vertices}
    for e in g.edges:
        degree[e.u] += 1
        degree[e.v] += 1
        assert sum(x != y for x, y in zip(e.u.bits, e.v.bits)) >= 1
    assert min(degree.values()) >= n
