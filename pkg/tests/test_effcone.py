import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bottsamelson.cohomology import deg_q
from bottsamelson.effcone import (
    Component,
    EffectivityError,
    cone,
    curve_neighborhood,
    effective_classes_below,
    effective_classes_by_degree,
    fixed_points,
    gw_vanishes,
    height,
    indecomposables,
    is_effective,
    is_indecomposable,
    match_subvariety,
)
from bottsamelson.momentgraph import build
from bottsamelson.quantum.data import NEIGHBORHOOD_EXAMPLES, NEIGHBORHOODS
from bottsamelson.quantum.invariants import _from_gen_coords
from bottsamelson.rootsys import Subword, make_word

S = Subword.parse


def test_cone_generators(word121):
    c = cone(word121)
    assert set(c.generators) == {(0, 1, 0), (0, 0, 1), (1, 0, -1)}
    assert sorted(indecomposables(c)) == sorted(c.generators)


def test_family_class_decomposes(word121):
    c = cone(word121)
    ok, witness = is_effective(c, (1, 0, 0))
    assert ok
    assert c.combine(witness) == (1, 0, 0)
    assert not is_indecomposable(c, (1, 0, 0))


@pytest.mark.parametrize("beta", [(-1, 0, 0), (0, -1, 0), (0, 0, -1), (1, 0, -2), (0, 1, -1)])
def test_non_effective(word121, beta):
    assert not is_effective(cone(word121), beta)[0]


def test_hirzebruch_cone():
    c = cone(make_word("A2", "1,2"))
    assert set(c.generators) == {(1, 0), (0, 1)}


def test_height_positive_on_edges(word121):
    assert all(height(e.cls) > 0 for e in build(word121).edges)
    assert height((1, 0, -1)) == 2


def test_classes_by_degree(word121):
    got = effective_classes_by_degree(cone(word121), 2)
    classes = {c for _, c in got}
    assert classes == {(0, 1, 0), (0, 0, 1), (1, 0, -1), (2, 0, -2), (1, 1, -1), (0, 2, 0)}
    assert all(cone(word121).combine(coeffs) == c for coeffs, c in got)
    assert all(deg_q(word121, c) <= 2 for c in classes)


def test_classes_below_contains_target(word121):
    below = effective_classes_below(cone(word121), (1, 0, 0))
    assert (1, 0, 0) in below and (0, 0, 1) in below and (1, 0, -1) in below


def test_fixed_points_and_matching():
    assert fixed_points("101") == {S("000"), S("100"), S("001"), S("101")}
    assert match_subvariety(frozenset({S("000"), S("101")}), 3) is None
    assert match_subvariety(fixed_points("110"), 3) == S("110")


@pytest.mark.parametrize("source,abc,points,matched", NEIGHBORHOOD_EXAMPLES)
def test_neighborhood_examples(word121, source, abc, points, matched):
    res = curve_neighborhood(build(word121), fixed_points(source), _from_gen_coords(abc))
    assert sorted(map(str, res.fixed_points)) == sorted(points)
    assert (None if res.matched_subvariety is None else str(res.matched_subvariety)) == matched


def test_neighborhood_of_a_point(word121):
    res = curve_neighborhood(build(word121), ["100"], (1, 0, -1))
    assert res.fixed_points == {S("100"), S("001")}
    assert res.matched_subvariety is None


def test_neighborhood_refuses_non_effective(word121):
    with pytest.raises(EffectivityError):
        curve_neighborhood(build(word121), ["000"], (0, 0, -1))


BETA3 = (1, 0, -1)


def test_neighborhood_table_agrees_with_search(word121):
    g = build(word121)
    for (cycle, abc), comps in NEIGHBORHOODS.items():
        res = curve_neighborhood(g, fixed_points(cycle), _from_gen_coords(abc))
        sub, dim = max(comps, key=lambda c: c[1])
        assert res.matched_subvariety == (None if sub is None else S(sub))


@pytest.mark.parametrize("sigma,expected", [("110", True), ("101", False), ("011", True)])
def test_gw_vanishes_against_surface(word121, sigma, expected):
    # the neighborhood of Z_110 is the surface Z_101, and sigma_eps integrates to 1 over Z_eps only
    assert gw_vanishes(word121, sigma, "110", BETA3, NEIGHBORHOODS["110", (0, 0, 1)]) is expected


def test_gw_inconclusive_when_neighborhood_too_big(word121):
    for sigma in ("100", "010", "001"):
        assert not gw_vanishes(word121, sigma, "100", BETA3, NEIGHBORHOODS["100", (0, 0, 1)])


def test_gw_vanishes_dimension_branches(word121):
    assert gw_vanishes(word121, "110", "110", BETA3, [Component(S("100"), 1)])
    assert not gw_vanishes(word121, "110", "110", BETA3, [Component(S("111"), 3)])
    assert not gw_vanishes(word121, "110", "110", BETA3, [Component(None, 2)])


def test_gw_vanishes_rejects_bad_input(word121):
    with pytest.raises(EffectivityError):
        gw_vanishes(word121, "100", "110", BETA3, [("101", 2)])
    with pytest.raises(EffectivityError):
        gw_vanishes(word121, "110", "110", BETA3, [])


PRESET_RANKS = {"A2": 2, "A3": 3, "D4": 4, "B2": 2}


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(PRESET_RANKS)), st.data())
def test_every_edge_class_is_effective(cartan, data):
    n = data.draw(st.integers(1, 4))
    letters = data.draw(st.lists(st.integers(1, PRESET_RANKS[cartan]), min_size=n, max_size=n))
    w = make_word(cartan, letters)
    c = cone(w)
    for e in build(w).edges:
        ok, witness = is_effective(c, e.cls)
        assert ok and c.combine(witness) == e.cls
