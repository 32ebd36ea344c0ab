import pytest

from semicoarse.errors import GuardUnproved, IllegalTailKind, NotBornologous, UnknownVertex
from semicoarse.fixtures import six_vertex_space
from semicoarse.homotopy import FinitePath
from semicoarse.space import INF, IntLine, cycle_space
from semicoarse.tails import Constant, Periodic, QuasiAffine, reverse_tail, shift_tail, tail_match, tail_value
from semicoarse.zmap import (
    add_point,
    apply_move,
    check_guards,
    delete_point,
    eventually_equal,
    make_zmap,
    reverse,
    shift,
    step_ok,
    symmetric_from_tail,
    truncate,
)

C4 = cycle_space(4)
LINE = IntLine(INF)


def e1():
    return make_zmap(C4, 0, [0, 1, 2, 3], Constant(0), Constant(0))


def absolute(k=1):
    return make_zmap(LINE, 0, [0], QuasiAffine(-k, 0), QuasiAffine(k, 0))


class TestTails:
    def test_periodic_word_is_primitive(self):
        from semicoarse.tails import normalize_tail
        assert normalize_tail(Periodic((0, 1, 0, 1))) == Periodic((0, 1))
        assert normalize_tail(Periodic((2, 2))) == Constant(2)

    def test_shift_and_reverse(self):
        t = Periodic((0, 1, 2))
        for z in range(-6, 6):
            assert tail_value(shift_tail(t, 2), z) == tail_value(t, z - 2)
            assert tail_value(reverse_tail(t), z) == tail_value(t, -z)
        q = QuasiAffine(2, 1, (0, 1))
        for z in range(-6, 6):
            assert tail_value(shift_tail(q, 3), z) == tail_value(q, z - 3)

    def test_match_finds_offset(self):
        t = Periodic((0, 1, 2, 3))
        d = tail_match(t, shift_tail(t, 1))
        assert all(tail_value(t, z) == tail_value(shift_tail(t, 1), z + d) for z in range(8))
        assert tail_match(QuasiAffine(1, 0), QuasiAffine(2, 0)) is None


class TestConstruction:
    def test_e1_is_valid_and_canonical(self):
        f = e1()
        assert (f.lo, f.values) == (1, (1, 2, 3))
        assert [f(z) for z in range(-1, 6)] == [0, 0, 1, 2, 3, 0, 0]

    def test_absolute_value_is_symmetric(self):
        f = absolute()
        assert f.is_symmetric() and f(-5) == 5 and f(7) == 7

    def test_rejections(self):
        with pytest.raises(NotBornologous):
            make_zmap(C4, 0, [0, 2], Constant(0), Constant(2))
        with pytest.raises(UnknownVertex):
            make_zmap(C4, 0, [7], Constant(0), Constant(0))
        with pytest.raises(IllegalTailKind):
            make_zmap(C4, 0, [0], QuasiAffine(1, 0), Constant(0))
        with pytest.raises(NotBornologous):
            make_zmap(IntLine(1), 0, [0], QuasiAffine(-2, 0), QuasiAffine(2, 0))

    def test_transforms(self):
        f = e1()
        assert shift(f, 4)(5) == 1 and shift(f, 4)(1) == 0
        assert reverse(reverse(f)) == f
        assert reverse(absolute()) == absolute()
        assert truncate(f, 2)(-10) == 2

    def test_symmetric_object(self):
        obj = symmetric_from_tail(C4, Periodic((0, 1, 2, 3)))
        assert obj.is_symmetric() and obj(5) == 1


class TestComparisons:
    def test_eventually_equal(self):
        f = e1()
        assert eventually_equal(f, shift(f, 3))
        assert not eventually_equal(absolute(), absolute(2))
        assert not eventually_equal(make_zmap(C4, 0, [], Constant(0), Constant(0)),
                                    make_zmap(C4, 0, [], Constant(1), Constant(1)))

    def test_step_ok_rows(self):
        assert step_ok(FinitePath(C4, (0, 0, 0)), FinitePath(C4, (0, 1, 0)))
        assert not step_ok(FinitePath(C4, (0, 1, 2, 3, 0)), FinitePath(C4, (0, 1, 2, 1, 0)))
        row = FinitePath(C4, (0, 1, 2))
        assert step_ok(row, row)


class TestMoves:
    def test_delete_duplicate(self):
        f = make_zmap(C4, 0, [0, 0, 1, 2, 3], Constant(0), Constant(0))
        assert delete_point(f, 1) == make_zmap(C4, 0, [0, 1, 2, 3], Constant(0), Constant(0))

    def test_delete_breaking_control(self):
        with pytest.raises(NotBornologous):
            delete_point(e1(), 2)

    def test_guard_on_winding_tail(self):
        winding = make_zmap(C4, 0, [], Constant(0), Periodic((0, 1, 2, 3)))
        with pytest.raises(GuardUnproved):
            delete_point(winding, 20)
        check_guards(winding, 1)

    def test_add_points(self):
        x6 = six_vertex_space()
        f = make_zmap(x6, 0, ["x", "y"], Constant("x"), Constant("y"))
        g = add_point(f, 1, "w")
        assert g.sample(0, 2) == ("x", "w", "y")
        with pytest.raises(NotBornologous):
            add_point(f, 1, "x'")
        assert delete_point(g, 1) == f

    def test_duplication_round_trip(self):
        f = e1()
        assert apply_move(apply_move(f, ("a", 2, f(2))), ("d", 2)) == f
