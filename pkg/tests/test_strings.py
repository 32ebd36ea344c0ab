import pytest

from semicoarse.errors import EmptyMergeWindow, JunctionUnverified, NotOpposite, ObjectsNotComposable, TailsNotEqual
from semicoarse.space import INF, IntLine, build_finite_space, cycle_space
from semicoarse.strings import (
    apply_dop,
    apply_merge,
    apply_split,
    cut_equal_tails,
    eliminable_check,
    identity_string,
    insert_opposite,
    make_string,
    normalize,
    pi1_embedding,
    replay_trace,
    reverse_string,
    star,
    string_equiv,
    tails_controlled,
    validate_string,
    verify_equiv_certificate,
)
from semicoarse.tails import Constant, QuasiAffine
from semicoarse.zmap import make_zmap, reverse, shift

C4 = cycle_space(4)
LINE = IntLine(INF)


def turn(k=0):
    return shift(make_zmap(C4, 0, [0, 1, 2, 3], Constant(0), Constant(0)), k)


def three_turns():
    return make_zmap(C4, 1, [1, 2, 3, 0, 1, 2, 3, 0, 1, 2, 3], Constant(0), Constant(0))


def test_three_map_string_is_valid():
    F = make_string([turn(), turn(4), turn(8)])
    assert len(F) == 3 and validate_string(F)
    assert F.left_object == F.right_object


def test_junction_across_components():
    two = build_finite_space([0, 1])
    c0 = make_zmap(two, 0, [], Constant(0), Constant(0))
    c1 = make_zmap(two, 0, [], Constant(1), Constant(1))
    with pytest.raises(JunctionUnverified) as info:
        make_string([c0, c1])
    assert info.value.index == 1


def test_star_and_reverse():
    F = make_string([turn()])
    G = make_string([turn(4)])
    FG = star(F, G)
    assert FG.maps == (turn(), turn(4))
    assert reverse_string(reverse_string(FG)).maps == FG.maps
    assert reverse_string(F).maps == (reverse(turn()),)
    assert validate_string(reverse_string(FG))


def test_star_needs_matching_objects():
    two = build_finite_space([0, 1])
    F = make_string([make_zmap(two, 0, [], Constant(0), Constant(0))])
    G = make_string([make_zmap(two, 0, [], Constant(1), Constant(1))])
    with pytest.raises(ObjectsNotComposable):
        star(F, G)


def test_opposite_pairs():
    h = make_zmap(C4, 0, [1, 2], Constant(0), Constant(2))
    F = make_string([turn(), h, reverse(h)])
    assert apply_dop(F, 1).maps == (turn(),)
    with pytest.raises(NotOpposite):
        apply_dop(make_string([turn(), turn(4)]), 0)
    assert insert_opposite(make_string([turn()]), 1, h).maps == (turn(), h, reverse(h))


def test_merge_orders_agree():
    F = make_string([turn(), turn(4), turn(8)])
    first = apply_merge(apply_merge(F, 0, 4), 0, 8)
    second = apply_merge(apply_merge(F, 1, 8), 0, 4)
    assert first.maps == second.maps == (three_turns(),)


def test_merge_needs_room():
    with pytest.raises(EmptyMergeWindow):
        apply_merge(make_string([turn(), turn()]), 0, 4)


def test_constant_merge():
    c = make_zmap(C4, 0, [], Constant(1), Constant(1))
    F = make_string([c, c])
    assert apply_merge(F, 0, 17).maps == (c,)


def test_split_inverts_merge():
    G = make_string([three_turns()])
    assert apply_split(G, 0, 4).maps == (make_zmap(C4, 1, [1, 2, 3], Constant(0), Constant(0)),
                                         make_zmap(C4, 5, [1, 2, 3, 0, 1, 2, 3], Constant(0), Constant(0)))


def test_cut_on_line():
    f = make_zmap(LINE, 0, [0], QuasiAffine(-1, 0), QuasiAffine(1, 0))
    F = make_string([f, f])
    assert len(cut_equal_tails(F, 0)) == 1
    jiggle = make_zmap(LINE, 0, [0], QuasiAffine(-1, 0, (0, 1)), QuasiAffine(1, 0, (0, 1)))
    with pytest.raises(TailsNotEqual):
        cut_equal_tails(make_string([f, jiggle]), 0)


def test_normal_forms():
    F = make_string([turn(), turn(4), turn(8)])
    nf, trace = normalize(F)
    assert nf.maps == (shift(three_turns(), -1),)
    assert replay_trace(F, trace).maps == nf.maps
    again, trace2 = normalize(nf)
    assert again.maps == nf.maps and trace2 == []
    cancel, _ = normalize(make_string([turn(), reverse(turn())]))
    assert cancel.maps == (make_zmap(C4, 0, [], Constant(0), Constant(0)),)


def test_shift_invariance_of_normal_form():
    F = make_string([turn(), turn(4)])
    G = make_string([turn(3), turn(-2)])
    assert normalize(F)[0].maps == normalize(G)[0].maps


def test_equivalences():
    F = make_string([turn(), turn(4), turn(8)])
    G = make_string([three_turns()])
    v = string_equiv(F, G)
    assert v.proved and verify_equiv_certificate(F, G, v.certificate)
    assert string_equiv(star(F, identity_string(F.right_object)), F).proved
    inv = string_equiv(star(F, reverse_string(F)), make_string([turn(), reverse(turn())]))
    assert inv.proved
    assert not string_equiv(make_string([turn()]), G).proved


def test_tail_control():
    F = make_string([turn(), turn(4)])
    assert tails_controlled(F, [{0}])
    assert not tails_controlled(F, [{1}])
    f = make_zmap(LINE, 0, [0], QuasiAffine(-1, 0), QuasiAffine(1, 0))
    assert tails_controlled(make_string([f]), [(0, None)])


def test_embedding_and_eliminable():
    img = pi1_embedding(C4, 0, (0, 1, 2, 3, 0))
    assert len(img) == 1 and img.left_object == img.right_object
    line3 = IntLine(3)
    f = make_zmap(line3, 0, [0], QuasiAffine(-3, 0), QuasiAffine(3, 0))
    F = make_string([f])
    assert eliminable_check(F.right_object, [(F, F)])["all_cuttable"]
