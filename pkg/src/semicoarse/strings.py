"""Strings of maps ℤ → X, their rewrite moves, and a normalizing equivalence prover.

Indices are 0-based throughout: ``apply_merge(F, 0, j)`` merges the first two maps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    EmptyMergeWindow,
    JunctionUnverified,
    ObjectsNotComposable,
    NotOpposite,
    SemiCoarseError,
    SpaceMismatch,
    TailsNotEqual,
    UnsupportedRegion,
    ValidationError,
)
from .homotopy import FinitePath, homotopic_finite, object_equal, simd_equiv
from .rays import RayLink, ray_equivalence, verify_link
from .space import INF, FiniteSpace, IntLine
from .tails import (
    Constant,
    QuasiAffine,
    reverse_tail,
    shift_tail,
    slope,
    tail_image,
    tail_match,
    tail_value,
    tails_lcm,
)
from .verdict import proved, refuted, unknown
from .zmap import (
    ZMap,
    add_point,
    check_guards,
    delete_point,
    make_zmap,
    reverse,
    shift,
    symmetric_from_tail,
)


# --------------------------------------------------------------------- junctions

@dataclass(frozen=True)
class Junction:
    """A chain of ray links from the right tail of one map to the reversed left tail of the next."""

    links: tuple  # of (RayLink, source_tail, target_tail)

    @property
    def source(self):
        return self.links[0][1]

    @property
    def target(self):
        return self.links[-1][2]

    def inverse(self) -> "Junction":
        return Junction(tuple((link.inverse(), dst, src) for link, src, dst in reversed(self.links)))

    def to_json(self) -> list:
        from .tails import tail_to_json
        return [{"link": link.to_json(), "from": tail_to_json(src), "to": tail_to_json(dst)}
                for link, src, dst in self.links]


def _exact_link(t1, t2):
    d = tail_match(t1, t2)
    return None if d is None else (RayLink("exact", shift=d), t1, t2)


def join(*junctions: Junction) -> Junction:
    """Concatenate chains, bridging equal-up-to-shift tails with exact links."""
    links = []
    for j in junctions:
        for link in j.links:
            if links and links[-1][2] != link[1]:
                bridge = _exact_link(links[-1][2], link[1])
                if bridge is None:
                    raise ValueError("junction chains do not compose")
                links.append(bridge)
            links.append(link)
    return Junction(tuple(links))


def prove_junction(space, right_tail, left_tail, max_states: int | None = None):
    """Verdict for ray(right_tail) ≃ ray(reverse(left_tail)) up to shift, with a one-link chain."""
    target = reverse_tail(left_tail)
    kwargs = {} if max_states is None else {"max_states": max_states}
    v = ray_equivalence(space, right_tail, target, **kwargs)
    if v.proved:
        return proved(Junction(((v.certificate, right_tail, target),)))
    return v


def verify_junction(space, junction: Junction, right_tail, left_tail) -> bool:
    if not junction.links:
        return False
    if junction.source != right_tail or junction.target != reverse_tail(left_tail):
        return False
    for (link, src, dst), nxt in zip(junction.links, list(junction.links[1:]) + [None]):
        if nxt is not None and nxt[1] != dst:
            return False
        if not verify_link(space, src, dst, link):
            return False
    return True


# ----------------------------------------------------------------------- strings

@dataclass(frozen=True)
class StringOfMaps:
    maps: tuple
    left_object: ZMap
    right_object: ZMap
    junctions: tuple  # len(maps) + 1 chains, object → f_0 → … → f_{n-1} → object

    @property
    def space(self):
        return self.maps[0].space

    def __len__(self):
        return len(self.maps)

    def key(self) -> tuple:
        return (self.maps, self.left_object, self.right_object)

    def chain(self) -> list:
        return [self.left_object, *self.maps, self.right_object]


def default_objects(maps) -> tuple[ZMap, ZMap]:
    space = maps[0].space
    return (symmetric_from_tail(space, reverse_tail(maps[0].left)),
            symmetric_from_tail(space, maps[-1].right))


def make_string(maps, left_object: ZMap | None = None, right_object: ZMap | None = None,
                junctions=None, max_states: int | None = None) -> StringOfMaps:
    """Build a string, proving (or checking the supplied proofs of) every junction."""
    maps = tuple(maps)
    if not maps:
        raise ValidationError("a string needs at least one map")
    space = maps[0].space
    if any(m.space != space for m in maps):
        raise SpaceMismatch("all maps of a string must share one space")
    lo_default, ro_default = default_objects(maps)
    left_object = lo_default if left_object is None else left_object
    right_object = ro_default if right_object is None else right_object
    for obj in (left_object, right_object):
        if obj.space != space:
            raise SpaceMismatch("endpoint objects must live in the string's space")
        if not obj.is_symmetric():
            raise ValidationError("endpoint objects must be symmetric maps")
    seq = [left_object, *maps, right_object]
    out = []
    for k, (u, v) in enumerate(zip(seq, seq[1:])):
        if junctions is not None and junctions[k] is not None:
            if not verify_junction(space, junctions[k], u.right, v.left):
                raise JunctionUnverified(f"supplied certificate for junction {k} does not replay", k)
            out.append(junctions[k])
            continue
        v_ = prove_junction(space, u.right, v.left, max_states)
        if not v_.proved:
            raise JunctionUnverified(f"junction {k} could not be proved: {v_.reason}", k)
        out.append(v_.certificate)
    return StringOfMaps(maps, left_object, right_object, tuple(out))


def validate_string(F: StringOfMaps) -> bool:
    seq = F.chain()
    return len(F.junctions) == len(seq) - 1 and all(
        verify_junction(F.space, j, u.right, v.left) for j, u, v in zip(F.junctions, seq, seq[1:]))


def _rebuild(F: StringOfMaps, maps, hints: dict) -> StringOfMaps:
    """New string with the same objects; junction k is kept, re-proved, or taken from a hint chain."""
    maps = tuple(maps)
    seq = [F.left_object, *maps, F.right_object]
    out = []
    for k, (u, v) in enumerate(zip(seq, seq[1:])):
        hint = hints.get(k)
        if isinstance(hint, Junction) and hint.source == u.right and hint.target == reverse_tail(v.left):
            out.append(hint)
            continue
        direct = prove_junction(F.space, u.right, v.left)
        if direct.proved:
            out.append(direct.certificate)
            continue
        if hint is not None:
            parts = (hint,) if isinstance(hint, Junction) else hint
            try:
                chained = _trim(join(_identity_junction(u.right), *parts, _identity_junction(reverse_tail(v.left))))
                if chained.source == u.right and chained.target == reverse_tail(v.left):
                    out.append(chained)
                    continue
            except ValueError:
                pass
        raise JunctionUnverified(f"junction {k} could not be re-derived", k)
    return StringOfMaps(maps, F.left_object, F.right_object, tuple(out))


def _identity_junction(t) -> Junction:
    return Junction(((RayLink("exact"), t, t),))


def _trim(j: Junction) -> Junction:
    links = [l for l in j.links if not (l[0].kind == "exact" and l[0].shift == 0 and l[1] == l[2])]
    if not links:
        return Junction((j.links[0],))
    return Junction(tuple(links))


def star(F: StringOfMaps, G: StringOfMaps) -> StringOfMaps:
    if F.space != G.space:
        raise SpaceMismatch("strings live in different spaces")
    bridge = ray_equivalence(F.space, F.right_object.right, G.left_object.right)
    if not bridge.proved:
        raise ObjectsNotComposable(f"right object of F and left object of G are not provably equal "
                                   f"({bridge.status.value}: {bridge.reason})")
    u, v = F.maps[-1], G.maps[0]
    middle = prove_junction(F.space, u.right, v.left)
    if middle.proved:
        mid = middle.certificate
    else:
        obj_link = Junction(((bridge.certificate, F.right_object.right, G.left_object.right),))
        mid = _trim(join(F.junctions[-1], obj_link, G.junctions[0]))
    return StringOfMaps(F.maps + G.maps, F.left_object, G.right_object,
                        F.junctions[:-1] + (mid,) + G.junctions[1:])


def reverse_string(F: StringOfMaps) -> StringOfMaps:
    maps = tuple(reverse(m) for m in reversed(F.maps))
    return StringOfMaps(maps, reverse(F.right_object), reverse(F.left_object),
                        tuple(j.inverse() for j in reversed(F.junctions)))


def identity_string(obj: ZMap) -> StringOfMaps:
    return make_string([obj], obj, obj)


# ------------------------------------------------------------------------- moves

def opposite_shift(u: ZMap, v: ZMap) -> int | None:
    """Some d with u = shift(reverse(v), d), or None."""
    r = reverse(v)
    if u.left != u.right or u.values:
        base = u.lo - r.lo
        p = tails_lcm(u.left, u.right)
        for d in sorted(range(base - p, base + p + 1), key=lambda x: (abs(x - base), x)):
            if shift(r, d) == u:
                return d
        return None
    return 0 if r == u else None


def is_identity_map(u: ZMap) -> bool:
    return opposite_shift(u, u) is not None


def apply_shift(F: StringOfMaps, i: int, k: int) -> StringOfMaps:
    maps = list(F.maps)
    old = maps[i]
    maps[i] = shift(old, k)
    return _rebuild(F, maps, _neighbour_hints(F, i, old, maps[i]))


def _neighbour_hints(F, i, old: ZMap, new: ZMap) -> dict:
    hints = {}
    for k in range(len(F.junctions)):
        if k not in (i, i + 1):
            hints[k] = F.junctions[k]
    hints[i] = (F.junctions[i], _bridge(reverse_tail(old.left), reverse_tail(new.left)))
    hints[i + 1] = (_bridge(new.right, old.right), F.junctions[i + 1])
    return hints


def _bridge(t1, t2) -> Junction:
    link = _exact_link(t1, t2)
    if link is None:
        raise ValueError("tails are not equal up to shift")
    return Junction((link,))


def apply_point_move(F: StringOfMaps, i: int, move: tuple) -> StringOfMaps:
    maps = list(F.maps)
    old = maps[i]
    maps[i] = delete_point(old, move[1]) if move[0] == "d" else add_point(old, move[1], move[2])
    return _rebuild(F, maps, _neighbour_hints(F, i, old, maps[i]))


def apply_dop(F: StringOfMaps, i: int) -> StringOfMaps:
    """Delete the opposite pair f_i, f_{i+1}; a 2-string collapses to the identity at its left object."""
    if not 0 <= i < len(F) - 1:
        raise NotOpposite(f"no pair at index {i}")
    u, v = F.maps[i], F.maps[i + 1]
    d = opposite_shift(u, v)
    if d is None:
        raise NotOpposite(f"maps {i} and {i + 1} are not shifted opposites")
    rest = F.maps[:i] + F.maps[i + 2:]
    glue = join(F.junctions[i], F.junctions[i + 2])
    if not rest:
        obj = F.left_object
        out = StringOfMaps((obj,), obj, F.right_object, (None, None))
        hints = {0: _identity_junction(obj.right), 1: (glue,)}
        return _rebuild(out, (obj,), hints)
    hints = {k: F.junctions[k] for k in range(i)}
    hints[i] = (glue,)
    for k in range(i + 1, len(rest) + 1):
        hints[k] = F.junctions[k + 2]
    return _rebuild(F, rest, hints)


def insert_opposite(F: StringOfMaps, i: int, h: ZMap, d: int = 0) -> StringOfMaps:
    """Inverse of d_op: insert (h, reverse(h) shifted) before position i."""
    pair = (h, shift(reverse(h), -d) if d else reverse(h))
    maps = F.maps[:i] + pair + F.maps[i:]
    hints = {k: F.junctions[k] for k in range(i)}
    for k in range(i + 1, len(F.junctions)):
        hints[k + 2] = F.junctions[k]
    return _rebuild(F, maps, hints)


def drop_identity(F: StringOfMaps, i: int) -> StringOfMaps:
    """Remove a map equal to its own shifted reverse (an identity morphism) from a longer string."""
    if len(F) < 2 or not is_identity_map(F.maps[i]):
        raise NotOpposite(f"map {i} is not an identity or the string has one map")
    rest = F.maps[:i] + F.maps[i + 1:]
    hints = {k: F.junctions[k] for k in range(i)}
    hints[i] = (join(F.junctions[i], F.junctions[i + 1]),)
    for k in range(i + 1, len(rest) + 1):
        hints[k] = F.junctions[k + 1]
    return _rebuild(F, rest, hints)


def merge_window(u: ZMap, v: ZMap):
    """(x0, N, M) with u = x0 on [N, ∞) and v = x0 on (-∞, M], or None. Infinite ends are None."""
    if not isinstance(u.right, Constant) or not isinstance(v.left, Constant) or u.right != v.left:
        return None
    x0 = u.right.value
    n = None if (not u.values and u.left == u.right) else (u.hi + 1 if u.values else u.lo)
    m = None if (not v.values and v.left == v.right) else v.lo - 1
    return x0, n, m


def merged_map(u: ZMap, v: ZMap, j: int) -> ZMap:
    a = min(u.lo, v.lo, j) - 1
    b = max(u.hi, v.hi, j) + 1
    vals = [u(z) if z <= j else v(z) for z in range(a, b + 1)]
    return make_zmap(u.space, a, vals, u.left, v.right)


def apply_merge(F: StringOfMaps, i: int, j: int) -> StringOfMaps:
    if not 0 <= i < len(F) - 1:
        raise EmptyMergeWindow(f"no pair at index {i}")
    u, v = F.maps[i], F.maps[i + 1]
    w = merge_window(u, v)
    if w is None:
        raise EmptyMergeWindow(f"maps {i} and {i + 1} do not meet in a common constant")
    _, n, m = w
    if n is not None and m is not None and n > m:
        raise EmptyMergeWindow(f"N = {n} exceeds M = {m}")
    if (n is not None and j < n) or (m is not None and j > m):
        raise EmptyMergeWindow(f"j = {j} lies outside [{n}, {m}]")
    g = merged_map(u, v, j)
    check_guards(g, j)
    maps = F.maps[:i] + (g,) + F.maps[i + 2:]
    hints = {k: F.junctions[k] for k in range(i + 1)}
    for k in range(i + 1, len(maps) + 1):
        hints[k] = F.junctions[k + 1]
    return _rebuild(F, maps, hints)


def apply_split(F: StringOfMaps, i: int, j: int) -> StringOfMaps:
    """Inverse of a merge: cut f_i after j into two maps meeting in the constant f_i(j)."""
    g = F.maps[i]
    x0 = g(j)
    a = min(g.lo, j) - 1
    b = max(g.hi, j) + 1
    first = make_zmap(g.space, a, [g(z) for z in range(a, j + 1)], g.left, Constant(x0))
    second = make_zmap(g.space, j, [g(z) if z > j else x0 for z in range(j, b + 1)], Constant(x0), g.right)
    maps = F.maps[:i] + (first, second) + F.maps[i + 1:]
    hints = {k: F.junctions[k] for k in range(i + 1)}
    for k in range(i + 2, len(maps) + 1):
        hints[k] = F.junctions[k - 1]
    out = _rebuild(F, maps, hints)
    if apply_merge(out, i, j).maps != F.maps:
        raise EmptyMergeWindow(f"split at {j} is not the inverse of a valid merge")
    return out


def cut_point(u: ZMap, v: ZMap):
    """(a, b): u(a + z) = v(b - z) for all z ≥ 0 with the overlap as long as possible.

    Least a wins, then greatest b.  When the two maps overlap completely the cut is
    placed at the end of u's window.  None when the tails do not coincide.
    """
    rev_left = reverse_tail(v.left)
    d = tail_match(u.right, rev_left)
    if d is None:
        return None
    # u.right(z) = rev_left(z + d) = v.left(-z - d), so a + b ≡ -d along the diagonal
    p = tails_lcm(u.right, v.left)
    if isinstance(u.right, QuasiAffine):
        diagonals = [-d]
    else:
        span = (u.hi - u.lo) + (v.hi - v.lo) + 4 * p + 4
        lo_s = (u.lo + v.lo) - span
        hi_s = (u.hi + v.hi) + span
        diagonals = [s for s in range(lo_s, hi_s + 1) if (s + d) % p == 0]
    best = None
    for s in diagonals:
        a = max(u.hi, s - v.lo) + p + 1
        floor = min(u.lo, s - v.hi) - p - 2
        while a > floor and u(a - 1) == v(s - a + 1):
            a -= 1
        if a <= floor:
            a = u.hi if u.values else u.lo
            cand = (a, s - a, True)
        else:
            cand = (a, s - a, False)
        if best is None or (cand[0], -cand[1]) < (best[0], -best[1]):
            best = cand
    return best


def spliced_map(u: ZMap, v: ZMap, a: int, b: int) -> ZMap:
    lo = min(u.lo, a) - 1
    hi = max(a + (v.hi - b), a) + 1
    vals = [u(z) if z <= a else v(b + z - a) for z in range(lo, hi + 1)]
    return make_zmap(u.space, lo, vals, u.left, shift_tail(v.right, a - b))


def cut_equal_tails(F: StringOfMaps, i: int) -> StringOfMaps:
    if not 0 <= i < len(F) - 1:
        raise TailsNotEqual(f"no pair at index {i}")
    u, v = F.maps[i], F.maps[i + 1]
    found = cut_point(u, v)
    if found is None:
        raise TailsNotEqual(f"right tail of map {i} is not the reversed left tail of map {i + 1} up to shift")
    a, b, _ = found
    g = spliced_map(u, v, a, b)
    maps = F.maps[:i] + (g,) + F.maps[i + 2:]
    hints = {k: F.junctions[k] for k in range(i + 1)}
    for k in range(i + 1, len(maps) + 1):
        hints[k] = F.junctions[k + 1]
    if i + 1 < len(F.junctions):
        hints[i + 1] = (_bridge(g.right, v.right), F.junctions[i + 2])
    return _rebuild(F, maps, hints)


STEP_KINDS = ("shift", "dop", "drop", "cut", "merge", "split", "d", "a")


def apply_step(F: StringOfMaps, step: tuple) -> StringOfMaps:
    kind = step[0]
    if kind == "shift":
        return apply_shift(F, step[1], step[2])
    if kind == "dop":
        return apply_dop(F, step[1])
    if kind == "drop":
        return drop_identity(F, step[1])
    if kind == "cut":
        return cut_equal_tails(F, step[1])
    if kind == "merge":
        return apply_merge(F, step[1], step[2])
    if kind == "split":
        return apply_split(F, step[1], step[2])
    if kind in ("d", "a"):
        return apply_point_move(F, step[1], (kind,) + tuple(step[2:]))
    raise ValueError(f"unknown step {step!r}")


def replay_trace(F: StringOfMaps, trace) -> StringOfMaps:
    for step in trace:
        F = apply_step(F, tuple(step))
    return F


# ----------------------------------------------------------------- normalization

def _first_rule(F: StringOfMaps):
    n = len(F)
    for i, m in enumerate(F.maps):
        if m.lo != 0 and not (m.left == m.right and not m.values):
            return ("shift", i, -m.lo)
    if n >= 2:
        for i, m in enumerate(F.maps):
            if is_identity_map(m):
                return ("drop", i)
    for i in range(n - 1):
        if opposite_shift(F.maps[i], F.maps[i + 1]) is not None:
            return ("dop", i)
    for i in range(n - 1):
        if cut_point(F.maps[i], F.maps[i + 1]) is not None:
            return ("cut", i)
    for i in range(n - 1):
        w = merge_window(F.maps[i], F.maps[i + 1])
        if w is not None:
            _, lo, hi = w
            if lo is None or hi is None or lo <= hi:
                return ("merge", i, lo if lo is not None else (hi if hi is not None else 0))
    for i, m in enumerate(F.maps):
        for z in range(m.lo, m.hi + 1):
            if m.space.controlled_pair(m(z - 1), m(z + 1)):
                return ("d", i, z)
    return None


def normalize(F: StringOfMaps, max_steps: int = 10000) -> tuple[StringOfMaps, list]:
    """Rewrite to a normal form: shift each window to start at 0, drop identities, cancel
    opposite pairs, cut equal tails, merge constant junctions, then delete removable points."""
    trace = []
    tried = set()
    for _ in range(max_steps):
        step = _first_rule_excluding(F, tried)
        if step is None:
            return F, trace
        try:
            F = apply_step(F, step)
        except SemiCoarseError:
            tried.add((F.key(), step))
            continue
        trace.append(step)
    return F, trace


def _first_rule_excluding(F: StringOfMaps, tried: set):
    step = _first_rule(F)
    if step is None or (F.key(), step) not in tried:
        return step
    # a refused move (guard) blocks only itself; look further along for point deletions
    for i, m in enumerate(F.maps):
        for z in range(m.lo, m.hi + 1):
            cand = ("d", i, z)
            if (F.key(), cand) not in tried and m.space.controlled_pair(m(z - 1), m(z + 1)):
                return cand
    return None


# ----------------------------------------------------------------- equivalence

def _align_shift(u: ZMap, v: ZMap):
    """Least |k| with shift(v, k) having exactly the tails of u."""
    p = tails_lcm(u.left, u.right, v.left, v.right)
    base = u.lo - v.lo
    for k in sorted(range(base - 2 * p - 2, base + 2 * p + 3), key=lambda x: (abs(x - base), x)):
        w = shift(v, k)
        if w.left == u.left and w.right == u.right:
            return k
    return None


def map_link(u: ZMap, v: ZMap, bound: int = 64):
    """Are two maps with the same tails (after a shift) equivalent under window homotopy or point moves?"""
    if u == v:
        return proved({"kind": "equal"})
    k = _align_shift(u, v)
    if k is None:
        return unknown("tails differ beyond a shift")
    w = shift(v, k)
    if u == w:
        return proved({"kind": "shift", "shift": k})
    if isinstance(u.space, FiniteSpace):
        p = tails_lcm(u.left, u.right)
        a = min(u.lo, w.lo) - p
        b = max(u.hi, w.hi) + p
        for pad in (0, 2, 4):
            hv = homotopic_finite(FinitePath(u.space, u.sample(a - pad, b + pad)),
                                  FinitePath(u.space, w.sample(a - pad, b + pad)), max_states=50000)
            if hv.proved:
                rows = [list(r) for r in hv.certificate.rows]
                return proved({"kind": "homotopy", "shift": k, "start": a - pad, "rows": rows})
        sv = simd_equiv(u, w, bound=min(bound, 12), max_states=4000)
        if sv.proved:
            return proved({"kind": "moves", "shift": k, "moves": [list(m) for m in sv.certificate]})
        return unknown("bounded map search inconclusive")
    if isinstance(u.space, IntLine) and u.space.scale == INF:
        return proved({"kind": "bounded-homotopy", "shift": k})
    return unknown("no map-level proof on the integer line")


def _is_identity_string(F: StringOfMaps) -> bool:
    return len(F) == 1 and is_identity_map(F.maps[0])


def string_equiv(F: StringOfMaps, G: StringOfMaps, bound: int = 64):
    if F.space != G.space:
        raise SpaceMismatch("strings live in different spaces")
    ends = []
    for a, b in ((F.left_object, G.left_object), (F.right_object, G.right_object)):
        v = object_equal(a, b)
        if v.refuted:
            return refuted(f"endpoint objects differ: {v.reason}")
        ends.append(v)
    if not all(v.proved for v in ends):
        raise ObjectsNotComposable("endpoint objects are not provably equal")
    nf_f, tr_f = normalize(F)
    nf_g, tr_g = normalize(G)
    cert = {"source_trace": [list(s) for s in tr_f], "target_trace": [list(s) for s in tr_g]}
    if _is_identity_string(nf_f) and _is_identity_string(nf_g):
        cert["map_links"] = [{"kind": "identity"}]
        return proved(cert)
    if len(nf_f) != len(nf_g):
        return unknown(f"normal forms have {len(nf_f)} and {len(nf_g)} maps")
    links = []
    for u, v in zip(nf_f.maps, nf_g.maps):
        lv = map_link(u, v, bound)
        if not lv.proved:
            return unknown(f"maps {u} and {v}: {lv.reason}")
        links.append(lv.certificate)
    cert["map_links"] = links
    return proved(cert)


def _replay_window_homotopy(u: ZMap, w: ZMap, start: int, rows) -> bool:
    from .homotopy import HomotopyCertificate, verify_certificate
    rows = tuple(tuple(r) for r in rows)
    if not rows or w.left != u.left or w.right != u.right:
        return False
    end = start + len(rows[0]) - 1
    p = tails_lcm(u.left, u.right)
    outside = list(range(min(u.lo, w.lo) - p - 1, start)) + list(range(end + 1, max(u.hi, w.hi) + p + 2))
    if any(u(z) != w(z) for z in outside):
        return False
    return verify_certificate(u.space, HomotopyCertificate(rows), u.sample(start, end), w.sample(start, end))


def verify_equiv_certificate(F: StringOfMaps, G: StringOfMaps, cert: dict) -> bool:
    nf_f = replay_trace(F, cert["source_trace"])
    nf_g = replay_trace(G, cert["target_trace"])
    links = cert["map_links"]
    if links == [{"kind": "identity"}]:
        return _is_identity_string(nf_f) and _is_identity_string(nf_g)
    if len(nf_f) != len(nf_g) or len(links) != len(nf_f):
        return False
    for u, v, link in zip(nf_f.maps, nf_g.maps, links):
        kind = link["kind"]
        if kind == "equal":
            ok = u == v
        elif kind == "shift":
            ok = shift(v, link["shift"]) == u
        elif kind == "homotopy":
            ok = _replay_window_homotopy(u, shift(v, link["shift"]), link["start"], link["rows"])
        elif kind == "moves":
            from .zmap import replay_moves
            ok = replay_moves(u, [tuple(m) for m in link["moves"]])[-1] == shift(v, link["shift"])
        elif kind == "bounded-homotopy":
            # one step on the coarse line: equal tails leave a bounded displacement
            w = shift(v, link["shift"])
            ok = isinstance(u.space, IntLine) and u.space.scale == INF and (w.left, w.right) == (u.left, u.right)
        else:
            ok = False
        if not ok:
            return False
    return True


# ------------------------------------------------------------------- interfaces

def _tail_within(t, region, space) -> bool:
    if isinstance(space, IntLine):
        if not (isinstance(region, tuple) and len(region) == 2):
            raise UnsupportedRegion("integer-line regions must be half-lines (lower, upper)")
        lower, upper = region
        if lower is not None and upper is not None:
            raise UnsupportedRegion("only half-lines are supported on the integer line")
        if isinstance(t, QuasiAffine):
            s = slope(t)
            if lower is not None:
                return s > 0 and all(tail_value(t, z) >= lower for z in range(0, len(t.correction)))
            if upper is not None:
                return s < 0 and all(tail_value(t, z) <= upper for z in range(0, len(t.correction)))
            return True
        image = tail_image(t)
        return all((lower is None or x >= lower) and (upper is None or x <= upper) for x in image)
    return tail_image(t) <= frozenset(region)


def _left_tail_within(t, region, space) -> bool:
    if isinstance(space, IntLine) and isinstance(t, QuasiAffine):
        return _tail_within(reverse_tail(t), region, space)
    return _tail_within(t, region, space)


def tails_controlled(F: StringOfMaps, family) -> bool:
    """Does every tail of every map lie in a single member of ``family``?"""
    space = F.space
    for m in F.maps:
        if not any(_left_tail_within(m.left, U, space) for U in family):
            return False
        if not any(_tail_within(m.right, U, space) for U in family):
            return False
    return True


def loop_map(space, basepoint, loop) -> ZMap:
    return make_zmap(space, 0, tuple(loop), Constant(basepoint), Constant(basepoint))


def pi1_embedding(space, basepoint, loop) -> StringOfMaps:
    """The based loop as a 1-string at the constant object."""
    obj = make_zmap(space, 0, (), Constant(basepoint), Constant(basepoint))
    return make_string([loop_map(space, basepoint, loop)], obj, obj)


def eliminable_check(obj: ZMap, probes) -> dict:
    """For each (F, G) with F ending and G starting at ``obj``: does a tail cut apply to F⋆G?"""
    results = []
    for F, G in probes:
        u, v = F.maps[-1], G.maps[0]
        ok = cut_point(u, v) is not None
        results.append({"cuttable": ok})
    return {"probes": results, "all_cuttable": all(r["cuttable"] for r in results),
            "count": len(results)}
