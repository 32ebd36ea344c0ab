import pytest

from semicoarse.errors import NotBornologous, NotSurjective, UnknownVertex
from semicoarse.fixtures import five_vertex_space
from semicoarse.space import (
    INF,
    FiniteMap,
    IntLine,
    build_finite_space,
    components,
    cycle_space,
    disjoint_union,
    identify,
    is_bornologous,
    is_coarse,
    is_connected,
    is_controlled,
    labelled_graphs,
    path_space,
    product,
    product_extension,
    pushout,
    quotient,
    subspace,
)


def test_four_cycle_built_from_edges():
    c4 = build_finite_space(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert c4 == cycle_space(4)
    assert len(c4.edges) == 4


def test_symmetric_edges_stored_once():
    s = build_finite_space([0, 1], [(0, 1), (1, 0)])
    assert len(s.edges) == 1


def test_one_point_space():
    s = build_finite_space(["v"])
    assert s.vertices == ("v",) and not s.edges


def test_unknown_vertex_in_edge():
    with pytest.raises(UnknownVertex):
        build_finite_space([0, 1], [(0, 2)])


def test_controlled_sets_of_c4():
    c4 = cycle_space(4)
    assert is_controlled(c4, [(0, 1), (2, 3)])
    assert not is_controlled(c4, [(0, 2)])
    assert is_controlled(c4, [(3, 3)])


def test_coarse_line_controls_any_symmetric_pair():
    line = IntLine(INF)
    assert all(is_controlled(line, [(-k, k)]) for k in (1, 10, 10**6))
    assert not is_controlled(IntLine(1), [(-1, 1)])


def test_bornologous_maps():
    c4 = cycle_space(4)
    p3 = path_space(3)
    assert is_bornologous(FiniteMap(c4, c4, {v: v for v in range(4)}))
    assert is_bornologous(FiniteMap(c4, c4, {v: 0 for v in range(4)}))
    assert not is_bornologous(FiniteMap(c4, p3, {0: 0, 1: 1, 2: 2, 3: 0}))


def test_subspaces_of_c4():
    c4 = cycle_space(4)
    assert len(subspace(c4, [0, 1]).edges) == 1
    assert len(components(subspace(c4, [0, 2]))) == 2
    assert subspace(c4, range(4)) == c4


def test_products():
    p2 = path_space(2)
    sq = product(p2, p2)
    assert len(sq.vertices) == 4 and len(sq.edges) == 6
    k1 = build_finite_space([0])
    assert len(product(cycle_space(4), k1).edges) == 4


def test_quotients():
    c4 = cycle_space(4)
    q, name = identify(c4, [(0, 2)])
    assert q.vertices == (0, 1, 3) and len(q.edges) == 2
    assert quotient(c4, {v: v for v in range(4)}) == c4
    assert len(quotient(c4, {v: 0 for v in range(4)}).vertices) == 1
    with pytest.raises(NotSurjective):
        quotient(c4, {v: 0 for v in range(4)}, targets=[0, 1])


def test_disjoint_unions():
    k1 = build_finite_space([0])
    assert len(components(disjoint_union([k1, k1]))) == 2
    u = disjoint_union([cycle_space(4), path_space(3)])
    assert len(u.vertices) == 7 and len(u.edges) == 6


def test_pushout_glues_two_edges():
    a = build_finite_space([0, 1], [(0, 1)])
    b = build_finite_space(["1'", 2], [("1'", 2)])
    c = build_finite_space(["*"])
    glued, ia, ib = pushout(a, b, c, FiniteMap(c, a, {"*": 1}), FiniteMap(c, b, {"*": "1'"}))
    assert len(glued.vertices) == 3 and len(glued.edges) == 2 and is_connected(glued)
    assert ia(1) == ib("1'")


def test_pushout_rejects_uncontrolled_leg():
    p3 = path_space(3)
    two = build_finite_space([0, 1])
    with pytest.raises(NotBornologous):
        pushout(two, two, p3, FiniteMap(p3, two, {0: 0, 1: 1, 2: 0}), FiniteMap(p3, two, {0: 0, 1: 0, 2: 0}))


def test_product_extension():
    p4 = path_space(4)
    ext = product_extension(p4, 1)
    assert frozenset({0, 2}) in ext.edges and frozenset({1, 3}) in ext.edges
    assert frozenset({0, 3}) not in ext.edges
    assert is_coarse(product_extension(p4, INF))
    assert p4.edges <= ext.edges


def test_coarseness():
    assert is_coarse(build_finite_space(range(3), [(0, 1), (1, 2), (0, 2)]))
    assert not is_coarse(cycle_space(4))
    assert is_coarse(IntLine(INF))


def test_components():
    assert len(components(cycle_space(4))) == 1
    assert len(components(subspace(five_vertex_space(), ["x", "y", "z"]))) == 3


def test_graph_enumeration_counts():
    assert sum(1 for _ in labelled_graphs(5)) == 1024
    assert sum(1 for _ in labelled_graphs(1)) == 1
