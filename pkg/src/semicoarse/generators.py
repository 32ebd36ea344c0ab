"""Seeded random instances for the property suites and the corpus runner."""

from __future__ import annotations

import random

from .errors import SemiCoarseError
from .homotopy import HomotopyCertificate, row_successors
from .space import build_finite_space, is_connected
from .strings import (
    StringOfMaps,
    apply_merge,
    apply_point_move,
    apply_shift,
    insert_opposite,
    make_string,
    merge_window,
)
from .tails import Constant
from .zmap import ZMap, make_zmap


def random_connected_graph(rng: random.Random, max_vertices: int = 6, density: float = 0.45):
    n = rng.randint(2, max_vertices)
    while True:
        edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < density]
        space = build_finite_space(range(n), edges)
        if is_connected(space):
            return space


def random_walk(rng: random.Random, space, start, length: int) -> list:
    walk = [start]
    while len(walk) < length:
        walk.append(rng.choice(sorted(space.closed_nbhd[walk[-1]])))
    return walk


def random_constant_map(rng: random.Random, space, max_window: int = 5, start=None) -> ZMap:
    start = rng.choice(space.vertices) if start is None else start
    walk = random_walk(rng, space, start, rng.randint(1, max_window))
    lo = rng.randint(-3, 3)
    return make_zmap(space, lo, walk, Constant(walk[0]), Constant(walk[-1]))


def random_string(rng: random.Random, space, max_maps: int = 3) -> StringOfMaps:
    maps = []
    start = None
    for _ in range(rng.randint(1, max_maps)):
        m = random_constant_map(rng, space, start=start)
        maps.append(m)
        start = rng.choice(sorted(space.closed_nbhd[m.right.value]))
    return make_string(maps)


def random_rewrite(rng: random.Random, F: StringOfMaps, attempts: int = 40):
    """One generating move applied to F, as (move, result); None if nothing applied."""
    space = F.space
    for _ in range(attempts):
        i = rng.randrange(len(F))
        f = F.maps[i]
        kind = rng.choice(["shift", "d", "a", "insert", "merge"])
        try:
            if kind == "shift":
                k = rng.randint(-3, 3)
                return ("shift", i, k), apply_shift(F, i, k)
            if kind == "d":
                z = rng.randint(f.lo - 1, f.hi + 1)
                return ("d", i, z), apply_point_move(F, i, ("d", z))
            if kind == "a":
                z = rng.randint(f.lo - 1, f.hi + 2)
                options = sorted(space.closed_nbhd[f(z - 1)] & space.closed_nbhd[f(z)])
                x = rng.choice(options)
                return ("a", i, z, x), apply_point_move(F, i, ("a", z, x))
            if kind == "insert":
                h = random_constant_map(rng, space, start=f.right.value)
                return ("insert", i, h), insert_opposite(F, i + 1, h)
            if kind == "merge" and i + 1 < len(F):
                window = merge_window(f, F.maps[i + 1])
                if window is None:
                    continue
                _, lo, hi = window
                if lo is None and hi is None:
                    lo = hi = f.lo
                lo = hi - 2 if lo is None else lo
                hi = lo + 2 if hi is None else hi
                if lo > hi:
                    continue
                j = rng.randint(lo, hi)
                return ("merge", i, j), apply_merge(F, i, j)
        except SemiCoarseError:
            continue
    return None


def random_homotopy(rng: random.Random, space, max_window: int = 8, max_rows: int = 6):
    """A rel-endpoint row homotopy on a centred window, with the two maps it relates.

    Returns (f, g, certificate, n) where rows cover [-n, n].
    """
    n = rng.randint(1, max(1, (max_window - 1) // 2))
    start = rng.choice(space.vertices)
    row = tuple(random_walk(rng, space, start, 2 * n + 1))
    rows = [row]
    for _ in range(rng.randint(1, max_rows - 1)):
        options = row_successors(space, rows[-1], True, True)
        if not options:
            break
        rows.append(rng.choice(options))
    f = make_zmap(space, -n, rows[0], Constant(rows[0][0]), Constant(rows[0][-1]))
    g = make_zmap(space, -n, rows[-1], Constant(rows[-1][0]), Constant(rows[-1][-1]))
    return f, g, HomotopyCertificate(tuple(rows)), n


def random_crossing_map(rng: random.Random, cover, atlas=None, max_window: int = 7) -> ZMap:
    """A map on the cover's space with constant tails in atlas members, crossing sides at least once."""
    space = cover.space
    anchors = sorted({v for u in atlas for v in u}) if atlas else sorted(space.vertices)
    while True:
        a, b = rng.choice(anchors), rng.choice(anchors)
        walk = random_walk(rng, space, a, rng.randint(1, max_window))
        if b not in space.closed_nbhd[walk[-1]]:
            continue
        walk.append(b)
        if any(v not in cover.A for v in walk) and any(v not in cover.B for v in walk):
            return make_zmap(space, rng.randint(-2, 2), walk, Constant(a), Constant(b))
