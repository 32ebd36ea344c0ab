"""Maps ℤ → X given by a finite window between two symbolic tails."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    GuardUnproved,
    IllegalTailKind,
    LengthMismatch,
    NotBornologous,
    SpaceMismatch,
    UnknownVertex,
)
from .rays import ray_nullhomotopic
from .space import FiniteSpace, IntLine
from .tails import (
    Constant,
    Periodic,
    QuasiAffine,
    normalize_tail,
    reverse_tail,
    shift_tail,
    slope,
    tail_match,
    tail_value,
    tails_lcm,
)


@dataclass(frozen=True)
class ZMap:
    """value(z) = left(z) for z < lo, values[z - lo] on the window, right(z) past it.

    Instances built through :func:`make_zmap` are canonical (minimal window), so
    ``==`` decides equality of the underlying functions.
    """

    space: object
    lo: int
    values: tuple
    left: object
    right: object

    @property
    def hi(self) -> int:
        return self.lo + len(self.values) - 1

    @property
    def tail_period(self) -> int:
        return tails_lcm(self.left, self.right)

    def __call__(self, z: int):
        if z < self.lo:
            return tail_value(self.left, z)
        if z > self.hi:
            return tail_value(self.right, z)
        return self.values[z - self.lo]

    def sample(self, a: int, b: int) -> tuple:
        return tuple(self(z) for z in range(a, b + 1))

    def span(self, margin: int = 0) -> tuple[int, int]:
        """A range containing the window, with ``margin`` extra tail periods on each side."""
        p = self.tail_period * max(margin, 1)
        return self.lo - p - 1, self.hi + p + 1

    def is_symmetric(self) -> bool:
        return self == reverse(self)

    def __repr__(self):
        return f"ZMap(lo={self.lo}, values={self.values}, left={self.left}, right={self.right})"


def _check_tail(space, t):
    if isinstance(space, FiniteSpace):
        if isinstance(t, QuasiAffine):
            raise IllegalTailKind("quasi-affine tails need an integer-line target")
        vals = [t.value] if isinstance(t, Constant) else list(t.word)
        for v in vals:
            if v not in space.vertex_set:
                raise UnknownVertex(f"tail value {v!r} is not a vertex")
    elif isinstance(space, IntLine):
        vals = [t.value] if isinstance(t, Constant) else list(getattr(t, "word", ()))
        if any(not isinstance(v, int) or isinstance(v, bool) for v in vals):
            raise IllegalTailKind("integer-line tails must take integer values")


def _canonical(lo: int, values: list, left, right) -> tuple[int, tuple]:
    values = list(values)
    while values and values[-1] == tail_value(right, lo + len(values) - 1):
        values.pop()
    start = 0
    while start < len(values) and values[start] == tail_value(left, lo + start):
        start += 1
    values = values[start:]
    lo += start
    if not values:
        if left == right:
            return 0, ()
        # distinct tails agree on fewer than a full common period of consecutive points
        limit = tails_lcm(left, right) + 2
        while limit and tail_value(left, lo - 1) == tail_value(right, lo - 1):
            lo -= 1
            limit -= 1
    return lo, tuple(values)


def make_zmap(space, lo: int, values, left, right, check: bool = True) -> ZMap:
    left, right = normalize_tail(left), normalize_tail(right)
    values = list(values)
    if isinstance(space, FiniteSpace):
        for v in values:
            if v not in space.vertex_set:
                raise UnknownVertex(f"window value {v!r} is not a vertex")
    _check_tail(space, left)
    _check_tail(space, right)
    lo, vals = _canonical(int(lo), values, left, right)
    f = ZMap(space, lo, vals, left, right)
    if check:
        pair = first_uncontrolled_step(f)
        if pair is not None:
            raise NotBornologous(f"consecutive values {pair[0]!r}, {pair[1]!r} are not controlled", pair)
    return f


def constant_zmap(space, value) -> ZMap:
    return make_zmap(space, 0, (), Constant(value), Constant(value))


def symmetric_from_tail(space, tail) -> ZMap:
    """The symmetric map that agrees with ``tail`` on z ≥ 0."""
    tail = normalize_tail(tail)
    return make_zmap(space, 0, (tail_value(tail, 0),), reverse_tail(tail), tail)


def first_uncontrolled_step(f: ZMap):
    a, b = f.span()
    for z in range(a, b):
        u, v = f(z), f(z + 1)
        if not f.space.controlled_pair(u, v):
            return (u, v)
    return None


def shift(f: ZMap, k: int) -> ZMap:
    """z ↦ f(z - k)."""
    if f.left == f.right and not f.values:
        return f
    left, right = shift_tail(f.left, k), shift_tail(f.right, k)
    return make_zmap(f.space, f.lo + k, f.values, left, right, check=False)


def reverse(f: ZMap) -> ZMap:
    """z ↦ f(-z)."""
    return make_zmap(f.space, -f.hi, f.values[::-1], reverse_tail(f.right), reverse_tail(f.left), check=False)


def truncate(f: ZMap, start: int) -> ZMap:
    """z ↦ f(max(z, start)): the right ray from ``start`` extended constantly to the left."""
    hi = max(f.hi, start)
    return make_zmap(f.space, start, f.sample(start, hi), Constant(f(start)), f.right, check=False)


def transform(f: ZMap, op: str, k: int = 0) -> ZMap:
    if op == "shift":
        return shift(f, k)
    if op == "reverse":
        return reverse(f)
    if op in ("truncate", "ray"):
        return truncate(f, k)
    raise ValueError(f"unknown transform {op!r}")


def _same_space(f: ZMap, g: ZMap):
    if f.space != g.space:
        raise SpaceMismatch("maps live in different spaces")


def eventually_equal(f: ZMap, g: ZMap) -> bool:
    """∃ N, M ≥ 0 with f(N + k) = g(M + k) for all k ≥ 0: the right tails agree up to shift."""
    _same_space(f, g)
    return tail_match(f.right, g.right) is not None


def step_ok(r, r2) -> bool:
    """Is the pair of rows (r, r2) a single homotopy step (strong-product adjacency)?

    Rows are tuples of values (with a space passed via :class:`~semicoarse.homotopy.FinitePath`)
    or ZMaps.
    """
    if isinstance(r, ZMap):
        return _zmap_step_ok(r, r2)
    space = r.space
    a, b = r.values, r2.values
    if len(a) != len(b):
        raise LengthMismatch(f"rows of length {len(a)} and {len(b)}")
    return rows_adjacent(space, a, b)


def rows_adjacent(space, a, b) -> bool:
    n = len(a)
    for i in range(n):
        for j in (i - 1, i, i + 1):
            if 0 <= j < n and not space.controlled_pair(a[i], b[j]):
                return False
    return True


def _zmap_step_ok(f: ZMap, g: ZMap) -> bool:
    _same_space(f, g)
    if isinstance(f.space, IntLine) and (slope(f.left) != slope(g.left) or slope(f.right) != slope(g.right)):
        return False
    p = tails_lcm(f.left, f.right, g.left, g.right)
    a = min(f.lo, g.lo) - p - 2
    b = max(f.hi, g.hi) + p + 2
    sp = f.space
    for z in range(a, b + 1):
        u = f(z)
        for d in (-1, 0, 1):
            if not sp.controlled_pair(u, g(z + d)):
                return False
    return True


def _is_constant(t) -> bool:
    return isinstance(t, Constant)


def check_guards(f: ZMap, j: int, max_states: int | None = None):
    """Refuse a move at ``j`` that lands inside a genuinely periodic tail not known to be null-homotopic."""
    kwargs = {} if max_states is None else {"max_states": max_states}
    for side, tail, inside in (("right", f.right, j - 2 > f.hi), ("left", f.left, j + 2 < f.lo)):
        if inside and isinstance(tail, (Periodic, QuasiAffine)) and not _is_constant(tail):
            if isinstance(tail, QuasiAffine):
                continue
            v = ray_nullhomotopic(f.space, tail, **kwargs)
            if not v.proved:
                raise GuardUnproved(f"move at {j} lies in the periodic {side} tail and its ray is not "
                                    f"provably null-homotopic ({v.reason})")


def _materialize(f: ZMap, *points: int) -> tuple[int, int]:
    a = min(f.lo, *points) - 1
    b = max(f.hi, *points) + 1
    return a, b


def delete_point(f: ZMap, z0: int) -> ZMap:
    """g(z) = f(z) for z < z0 and f(z + 1) for z ≥ z0."""
    check_guards(f, z0)
    a, b = _materialize(f, z0)
    vals = [f(z) if z < z0 else f(z + 1) for z in range(a, b)]
    return make_zmap(f.space, a, vals, f.left, shift_tail(f.right, -1))


def add_point(f: ZMap, z0: int, x0) -> ZMap:
    """g(z) = f(z) for z < z0, g(z0) = x0, g(z) = f(z - 1) for z > z0."""
    check_guards(f, z0)
    a, b = _materialize(f, z0)
    vals = [f(z) if z < z0 else (x0 if z == z0 else f(z - 1)) for z in range(a, b + 2)]
    return make_zmap(f.space, a, vals, f.left, shift_tail(f.right, 1))


def apply_move(f: ZMap, move: tuple) -> ZMap:
    """Apply ("d", z0), ("a", z0, x0) or ("shift", k)."""
    kind = move[0]
    if kind == "d":
        return delete_point(f, move[1])
    if kind == "a":
        return add_point(f, move[1], move[2])
    if kind == "shift":
        return shift(f, move[1])
    raise ValueError(f"unknown move {move!r}")


def replay_moves(f: ZMap, moves) -> list[ZMap]:
    out = [f]
    for m in moves:
        out.append(apply_move(out[-1], m))
    return out
