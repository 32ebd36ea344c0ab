"""Homotopy of rays k ↦ t(a + k) built from symbolic tails.

Two tails are ray-equivalent when some rays cut from them (at offsets of our
choosing) are homotopic as maps on the half-line.  The searches here only ever
claim PROVED with a certificate that :func:`verify_link` replays.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .space import INF, FiniteSpace, IntLine, components, order_key, shortest_path
from .tails import Constant, QuasiAffine, period, slope, tail_image, tail_match, tail_value, tails_lcm
from .verdict import proved, refuted, unknown

DEFAULT_MAX_STATES = 60000


@dataclass(frozen=True)
class RayLink:
    """Certificate that ray k ↦ t1(phase + k) is homotopic to ray k ↦ t2(phase + shift + k).

    ``kind`` is one of ``exact`` (equal rays), ``constant_path`` (rows are the
    vertices of a path between two constants), ``periodic_rows`` (rows are cyclic
    words of a common period), ``bounded`` (single step on the coarse line) or
    ``single_step`` (one strong-product step on a line of finite scale).
    """

    kind: str
    shift: int = 0
    rows: tuple = ()
    bound: int | None = None
    phase: int = 0

    def inverse(self) -> "RayLink":
        rows = self.rows[::-1]
        return RayLink(self.kind, -self.shift, rows, self.bound, self.phase + self.shift)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "shift": self.shift}
        if self.phase:
            out["phase"] = self.phase
        if self.rows:
            out["rows"] = [list(r) if isinstance(r, tuple) else r for r in self.rows]
        if self.bound is not None:
            out["bound"] = self.bound
        return out


def nbhd(space, v):
    if isinstance(space, FiniteSpace):
        return space.closed_nbhd[v]
    if space.scale == INF:
        raise ValueError("the coarse line has unbounded neighbourhoods")
    return frozenset(range(v - space.scale, v + space.scale + 1))


def cyclic_step_ok(space, w1: tuple, w2: tuple) -> bool:
    p = len(w1)
    return all(space.controlled_pair(w1[i], w2[(i + d) % p]) for i in range(p) for d in (-1, 0, 1))


def cyclic_bornologous(space, w: tuple) -> bool:
    p = len(w)
    return all(space.controlled_pair(w[i], w[(i + 1) % p]) for i in range(p))


def cyclic_successors(space, word: tuple) -> list:
    p = len(word)
    cands = []
    for i in range(p):
        s = set(nbhd(space, word[i]))
        s &= nbhd(space, word[(i - 1) % p])
        s &= nbhd(space, word[(i + 1) % p])
        cands.append(sorted(s, key=order_key))
    out = []

    def extend(prefix):
        i = len(prefix)
        if i == p:
            if space.controlled_pair(prefix[-1], prefix[0]):
                out.append(tuple(prefix))
            return
        for v in cands[i]:
            if i == 0 or space.controlled_pair(prefix[-1], v):
                prefix.append(v)
                extend(prefix)
                prefix.pop()

    extend([])
    return out


def _bfs_words(space, start: tuple, is_goal, max_states: int):
    parent = {start: None}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        if is_goal(w):
            rows = []
            while w is not None:
                rows.append(w)
                w = parent[w]
            return "found", tuple(rows[::-1])
        for nxt in cyclic_successors(space, w):
            if nxt not in parent:
                if len(parent) >= max_states:
                    return "cap", None
                parent[nxt] = w
                queue.append(nxt)
    return "exhausted", None


def _word(t, p: int, offset: int = 0) -> tuple:
    return tuple(tail_value(t, offset + k) for k in range(p))


def ray_equivalence(space, t1, t2, max_states: int = DEFAULT_MAX_STATES):
    """Decide, or bounded-search, whether the rays of t1 and t2 are homotopic up to shift."""
    d = tail_match(t1, t2)
    if d is not None:
        return proved(RayLink("exact", shift=d))
    if isinstance(space, IntLine):
        return _line_ray_equivalence(space, t1, t2, max_states)
    im1, im2 = tail_image(t1), tail_image(t2)
    comp = {v: i for i, c in enumerate(components(space)) for v in c}
    c1, c2 = {comp[v] for v in im1}, {comp[v] for v in im2}
    if c1 != c2:
        return refuted("tails lie in different connected components")
    if isinstance(t1, Constant) and isinstance(t2, Constant):
        path = shortest_path(space, t1.value, lambda v: v == t2.value)
        return proved(RayLink("constant_path", rows=tuple(path)))
    p = tails_lcm(t1, t2)
    start = _word(t1, p)
    targets = {_word(t2, p, r): r for r in range(p)}
    status, rows = _bfs_words(space, start, lambda w: w in targets, max_states)
    if status == "found":
        return proved(RayLink("periodic_rows", shift=targets[rows[-1]], rows=rows))
    return unknown(f"no homotopy through rows of period {p} ({status})")


def _line_ray_equivalence(space: IntLine, t1, t2, max_states: int):
    if slope(t1) != slope(t2):
        return refuted(f"slopes {slope(t1)} and {slope(t2)} differ, so the displacement is unbounded")
    p = tails_lcm(t1, t2)
    if space.scale == INF:
        bound = max(abs(tail_value(t1, k) - tail_value(t2, k)) for k in range(p))
        return proved(RayLink("bounded", shift=0, bound=bound))
    if isinstance(t1, QuasiAffine):
        s = slope(t1)
        guess = (t1.offset - t2.offset) // s
        for shift in sorted(range(guess - 2 * p - 2, guess + 2 * p + 3), key=lambda x: (abs(x - guess), x)):
            link = RayLink("single_step", shift=shift)
            if verify_link(space, t1, t2, link):
                return proved(link)
        return unknown("no single-step homotopy between the affine rays")
    start = _word(t1, p)
    targets = {_word(t2, p, r): r for r in range(p)}
    status, rows = _bfs_words(space, start, lambda w: w in targets, max_states)
    if status == "found":
        return proved(RayLink("periodic_rows", shift=targets[rows[-1]], rows=rows))
    return unknown(f"no homotopy through rows of period {p} ({status})")


def verify_link(space, t1, t2, link: RayLink) -> bool:
    p = tails_lcm(t1, t2)
    if link.kind == "exact":
        return slope(t1) == slope(t2) and \
            all(tail_value(t1, k) == tail_value(t2, k + link.shift) for k in range(p + 1))
    if link.kind == "constant_path":
        path = link.rows
        return (isinstance(t1, Constant) and isinstance(t2, Constant) and bool(path)
                and path[0] == t1.value and path[-1] == t2.value
                and all(space.controlled_pair(a, b) for a, b in zip(path, path[1:])))
    if link.kind == "periodic_rows":
        rows = link.rows
        if not rows:
            return False
        q = len(rows[0])
        if any(len(r) != q for r in rows) or q % period(t1) or q % period(t2):
            return False
        if rows[0] != _word(t1, q, link.phase) or rows[-1] != _word(t2, q, link.phase + link.shift):
            return False
        return all(cyclic_bornologous(space, r) for r in rows) and \
            all(cyclic_step_ok(space, a, b) for a, b in zip(rows, rows[1:]))
    if link.kind == "bounded":
        return isinstance(space, IntLine) and space.scale == INF and slope(t1) == slope(t2)
    if link.kind == "single_step":
        if slope(t1) != slope(t2):
            return False
        horizon = p + 2
        return all(space.controlled_pair(tail_value(t1, k), tail_value(t2, k + dk + link.shift))
                   for k in range(-horizon, horizon) for dk in (-1, 0, 1))
    return False


def ray_nullhomotopic(space, t, max_states: int = DEFAULT_MAX_STATES):
    """Is the ray of t homotopic to a constant ray?"""
    if isinstance(t, Constant):
        return proved(RayLink("exact"))
    if isinstance(space, IntLine):
        if slope(t) != 0:
            return refuted("an affine ray has unbounded distance to every constant")
        if space.scale == INF:
            return proved(RayLink("bounded", bound=max(t.word) - min(t.word)))
    p = period(t)
    status, rows = _bfs_words(space, _word(t, p), lambda w: len(set(w)) == 1, max_states)
    if status == "found":
        return proved(RayLink("periodic_rows", rows=rows))
    return unknown(f"no null-homotopy through rows of period {p} ({status})")
