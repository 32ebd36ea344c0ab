import pytest

from semicoarse.errors import NoBridge, UnsupportedCover
from semicoarse.fixtures import five_vertex_cover, parity_cover, six_vertex_cover
from semicoarse.space import INF, build_finite_space, cycle_space
from semicoarse.splitting import (
    Cover,
    NotCrossing,
    bridge,
    disconnected_iff_empty_intersection,
    halfline_pushout_contains,
    pushout_edge_set,
    well_split,
    well_split_intline_halflines,
    which_side_check,
)


def test_six_vertex_pushout_misses_three_edges():
    cover = six_vertex_cover()
    missing = cover.space.edges - pushout_edge_set(cover)
    assert missing == {frozenset(p) for p in [("x'", "y'"), ("x", "y'"), ("x", "y")]}


def test_pushout_of_trivial_cover_is_everything():
    c4 = cycle_space(4)
    assert pushout_edge_set(Cover(c4, c4.vertex_set, c4.vertex_set)) == c4.edges


def test_parity_pushout_is_empty():
    assert pushout_edge_set(parity_cover(8)) == frozenset()


def test_well_split_verdicts():
    assert well_split(six_vertex_cover()).verdict
    report = well_split(five_vertex_cover())
    assert not report.verdict
    cond2 = [f for f in report.failures if f["failed_condition"] == 2]
    assert cond2 and any(f["witness"] == ["x", "y", "z"] for f in cond2)
    parity = well_split(parity_cover(8))
    assert not parity.verdict
    assert {f["failed_condition"] for f in parity.failures} == {1}


def test_well_split_is_symmetric():
    for cover in (six_vertex_cover(), five_vertex_cover(), parity_cover(8)):
        assert well_split(cover).verdict == well_split(cover.swapped()).verdict


def test_which_side_on_fixture():
    assert which_side_check(six_vertex_cover())["holds"]
    c4 = cycle_space(4)
    assert which_side_check(Cover(c4, c4.vertex_set, c4.vertex_set))["holds"]


def test_bridges():
    cover = six_vertex_cover()
    assert bridge(cover, "x", "y") == "w"
    with pytest.raises(NotCrossing):
        bridge(cover, "w", "y")
    with pytest.raises(NoBridge):
        bridge(parity_cover(8), 0, 1)


def test_disconnected_criterion():
    two = build_finite_space([0, 1])
    res = disconnected_iff_empty_intersection(two)
    assert res["disconnected"] and res["equivalence_holds"]
    res = disconnected_iff_empty_intersection(cycle_space(4))
    assert not res["disconnected"] and res["well_split_bipartition"] is None


def test_half_lines():
    assert well_split_intline_halflines(INF).verdict
    assert well_split_intline_halflines(1).verdict
    assert not any(halfline_pushout_contains(INF, -k, k) for k in range(1, 101))
    assert halfline_pushout_contains(INF, 0, 50)
    with pytest.raises(UnsupportedCover):
        well_split_intline_halflines(INF, {"A": "odds", "B": "evens"})
