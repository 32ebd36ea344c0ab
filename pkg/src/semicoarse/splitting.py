"""Well-splitting of a finite space by two subsets, and the half-line cover of the integer line."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import NoBridge, NotACover, SemiCoarseError, UnsupportedCover
from .space import (
    INF,
    FiniteSpace,
    IntLine,
    build_finite_space,
    complete_space,
    components,
    edge,
    is_connected,
    order_key,
    sort_vertices,
)


class NotCrossing(SemiCoarseError):
    """A bridge was requested for a pair that is already controlled in the pushout."""


@dataclass(frozen=True)
class Cover:
    space: FiniteSpace
    A: frozenset
    B: frozenset

    def __post_init__(self):
        object.__setattr__(self, "A", frozenset(self.A))
        object.__setattr__(self, "B", frozenset(self.B))
        if not self.A or not self.B:
            raise NotACover("both sets of a cover must be non-empty")
        if self.A | self.B != self.space.vertex_set:
            missing = self.space.vertex_set - (self.A | self.B)
            extra = (self.A | self.B) - self.space.vertex_set
            raise NotACover(f"A ∪ B must equal the vertex set (missing {sorted(missing, key=order_key)}, "
                            f"unknown {sorted(extra, key=order_key)})")

    @property
    def overlap(self) -> frozenset:
        return self.A & self.B

    def swapped(self) -> "Cover":
        return Cover(self.space, self.B, self.A)

    def side_of(self, values) -> str | None:
        """'A' if every value lies in A (preferred), 'B' if in B, else None."""
        vals = set(values)
        if vals <= self.A:
            return "A"
        if vals <= self.B:
            return "B"
        return None


@dataclass(frozen=True)
class WellSplitReport:
    verdict: bool
    pushout_edges: frozenset
    premise_triples_checked: int
    failures: tuple = ()
    notes: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "pushout_edges": sorted([sorted(e, key=order_key) for e in self.pushout_edges],
                                    key=lambda p: [order_key(v) for v in p]),
            "premise_triples_checked": self.premise_triples_checked,
            "failures": [dict(f) for f in self.failures],
            **({"notes": self.notes} if self.notes else {}),
        }


def pushout_edge_set(cover: Cover) -> frozenset:
    a, b = cover.A, cover.B
    return frozenset(e for e in cover.space.edges if e <= a or e <= b)


def _pushout_nbhd(cover: Cover, ep: frozenset) -> dict:
    nb = {v: {v} for v in cover.space.vertices}
    for e in ep:
        x, y = tuple(e)
        nb[x].add(y)
        nb[y].add(x)
    return nb


def premise_triples(cover: Cover, ep: frozenset | None = None):
    """Triples (x, y, y') with both pairs controlled, at least one outside the pushout, (y, y') inside it."""
    space = cover.space
    ep = pushout_edge_set(cover) if ep is None else ep
    nb_p = _pushout_nbhd(cover, ep)
    for x in space.vertices:
        around = sorted(space.closed_nbhd[x], key=order_key)
        for y in around:
            for y2 in around:
                if y in nb_p[x] and y2 in nb_p[x]:
                    continue
                if y2 in nb_p[y]:
                    yield (x, y, y2)


def midpoints(cover: Cover, x, y, nb_p: dict | None = None) -> list:
    nb_p = _pushout_nbhd(cover, pushout_edge_set(cover)) if nb_p is None else nb_p
    return sorted(nb_p[x] & nb_p[y], key=order_key)


def well_split(cover: Cover, stop_at_first: bool = False) -> WellSplitReport:
    ep = pushout_edge_set(cover)
    nb_p = _pushout_nbhd(cover, ep)
    failures = []
    checked = 0
    for x, y, y2 in premise_triples(cover, ep):
        checked += 1
        shared = nb_p[x] & nb_p[y] & nb_p[y2]
        if not shared:
            failures.append({"triple": [x, y, y2], "failed_condition": 1, "witness": None})
        mids = nb_p[x] & nb_p[y]
        if not is_connected(cover.space, mids):
            failures.append({"triple": [x, y, y2], "failed_condition": 2,
                             "witness": sorted(mids, key=order_key)})
        if failures and stop_at_first:
            break
    failures.sort(key=lambda f: ([order_key(v) for v in f["triple"]], f["failed_condition"]))
    return WellSplitReport(not failures, ep, checked, tuple(failures))


def bridge(cover: Cover, u, v):
    """Least m in A∩B joining u to v by two pushout-controlled hops."""
    ep = pushout_edge_set(cover)
    if u == v or edge(u, v) in ep:
        raise NotCrossing(f"({u!r}, {v!r}) is already controlled in the pushout")
    if not cover.space.controlled_pair(u, v):
        raise NotCrossing(f"({u!r}, {v!r}) is not controlled in the space")
    nb_p = _pushout_nbhd(cover, ep)
    found = sorted((nb_p[u] & nb_p[v]) & cover.overlap, key=order_key)
    if not found:
        raise NoBridge(f"no vertex of A∩B bridges {u!r} and {v!r}")
    return found[0]


def shared_bridge(cover: Cover, x, y, y2):
    """Least common midpoint of a premise triple (the first well-splitting condition)."""
    nb_p = _pushout_nbhd(cover, pushout_edge_set(cover))
    found = sorted(nb_p[x] & nb_p[y] & nb_p[y2], key=order_key)
    if not found:
        raise NoBridge(f"triple {(x, y, y2)!r} has no shared midpoint")
    return found[0]


def which_side_check(cover: Cover) -> dict:
    ep = pushout_edge_set(cover)
    checked, bad = 0, []
    for e in ep:
        for x1, x2 in (tuple(e), tuple(e)[::-1]):
            for mine, other in ((cover.A, cover.B), (cover.B, cover.A)):
                if x1 in mine and x2 not in mine:
                    checked += 1
                    if x1 not in cover.overlap:
                        bad.append([x1, x2])
    bad.sort(key=lambda p: [order_key(v) for v in p])
    return {"holds": not bad, "checked": checked, "counterexamples": bad}


def bipartitions(space: FiniteSpace):
    """Ordered covers (A, B) with A∩B empty and both sides non-empty."""
    vs = space.vertices
    for mask in range(1, 2 ** len(vs) - 1):
        a = frozenset(v for i, v in enumerate(vs) if mask >> i & 1)
        yield Cover(space, a, space.vertex_set - a)


def all_covers(space: FiniteSpace):
    """Every ordered cover: each vertex goes to A only, B only, or both."""
    vs = space.vertices
    for labels in itertools.product((0, 1, 2), repeat=len(vs)):
        a = frozenset(v for v, l in zip(vs, labels) if l in (0, 2))
        b = frozenset(v for v, l in zip(vs, labels) if l in (1, 2))
        if a and b:
            yield Cover(space, a, b)


def disconnected_iff_empty_intersection(space: FiniteSpace) -> dict:
    witness = None
    for cover in bipartitions(space):
        if well_split(cover, stop_at_first=True).verdict:
            witness = cover
            break
    disconnected = len(components(space)) > 1
    return {
        "disconnected": disconnected,
        "well_split_bipartition": None if witness is None else {
            "A": list(sort_vertices(witness.A)), "B": list(sort_vertices(witness.B))},
        "equivalence_holds": disconnected == (witness is not None),
    }


def halfline_side(z: int) -> set:
    sides = set()
    if z >= 0:
        sides.add("A")
    if z <= 0:
        sides.add("B")
    return sides


def halfline_pushout_contains(scale, a: int, b: int) -> bool:
    """Is (a, b) controlled in the pushout of [0,∞) and (-∞,0] over {0}?"""
    line = IntLine(scale)
    return line.controlled_pair(a, b) and bool(halfline_side(a) & halfline_side(b))


def _truncated_line(scale, radius: int) -> Cover:
    pts = range(-radius, radius + 1)
    if scale == INF:
        space = complete_space(pts)
    else:
        space = build_finite_space(pts, [(i, j) for i in pts for j in pts if i < j and j - i <= scale])
    return Cover(space, frozenset(z for z in pts if z >= 0), frozenset(z for z in pts if z <= 0))


def well_split_intline_halflines(scale, cover: dict | None = None, window: int | None = None) -> WellSplitReport:
    """Verdict for A=[0,∞), B=(-∞,0] on the integer line at ``scale``.

    Every crossing pair passes through 0, which lies in both halves, so the shared
    midpoint 0 settles the first condition and the crossing midpoint sets are {0}.
    The finite crossing patterns are replayed on a truncation that contains every
    premise triple touching a crossing pair.
    """
    if cover is not None and cover not in ({"A": "[0,inf)", "B": "(-inf,0]"}, {"A": [0, "inf"], "B": ["-inf", 0]}):
        raise UnsupportedCover("only the half-line cover A=[0,∞), B=(-∞,0] is supported")
    if window is None:
        window = 4 if scale == INF else 2 * int(scale) + 1
    finite = well_split(_truncated_line(scale, window))
    notes = {
        "scale": "inf" if scale == INF else scale,
        "shared_midpoint": 0,
        "truncation_radius": window,
        "truncated_verdict": finite.verdict,
    }
    if scale == INF:
        notes["cross_sign_pairs_outside_pushout"] = True
    return WellSplitReport(finite.verdict, frozenset(), finite.premise_triples_checked,
                           finite.failures, notes)
