"""Cover-respecting factorization of maps and strings, and the tagged-word decomposition.

A factorization inserts a point of A∩B at every change of side, then splits the map
at those points.  The decomposition attaches connector paths inside A∩B that carry
each splitting constant to a member of the atlas, so every factor becomes a string in
A or in B with tails in atlas members.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CoverMismatch,
    MoveInapplicable,
    NoAtlasMember,
    SemiCoarseError,
    TailsNotControlled,
    UnsupportedCover,
)
from .space import FiniteSpace, components, is_connected, order_key, shortest_path, sort_vertices, subspace
from .homotopy import object_equal
from .splitting import Cover, bridge, well_split
from .strings import (
    StringOfMaps,
    apply_dop,
    apply_merge,
    apply_point_move,
    apply_shift,
    apply_split,
    insert_opposite,
    is_identity_map,
    make_string,
    normalize,
    replay_trace,
    star,
    string_equiv,
)
from .tails import Constant, tail_image
from .verdict import proved, refuted, unknown
from .zmap import ZMap, make_zmap, reverse


# ------------------------------------------------------------------ hypotheses

def verify_cover_hypotheses(cover: Cover, atlas) -> dict:
    space = cover.space
    atlas = [frozenset(u) for u in atlas]
    failures = []
    report = well_split(cover)
    if not report.verdict:
        failures.append({"hypothesis": "well-split", "detail": report.to_json()["failures"][:5]})
    for idx, u in enumerate(atlas):
        if not (u <= cover.A or u <= cover.B):
            failures.append({"hypothesis": "atlas-inside-side", "member": idx})
        if u and not is_connected(space, u):
            failures.append({"hypothesis": "atlas-connected", "member": idx})
    comps = {}
    for name, part in (("A", cover.A), ("B", cover.B), ("A∩B", cover.overlap)):
        cs = components(space, part) if part else []
        comps[name] = [list(sort_vertices(c)) for c in cs]
        for c in cs:
            if not any(c & u and is_connected(space, u) for u in atlas):
                failures.append({"hypothesis": "component-meets-atlas", "set": name,
                                 "component": list(sort_vertices(c))})
    per_component = []
    whole = components(space)
    if len(whole) > 1:
        for c in whole:
            a, b = cover.A & c, cover.B & c
            if a and b:
                sub = Cover(subspace(space, c), a, b)
                per_component.append({"component": list(sort_vertices(c)), "well_split": well_split(sub).verdict})
            else:
                per_component.append({"component": list(sort_vertices(c)), "well_split": True})
    return {"ok": not failures, "well_split": report.verdict, "components": comps,
            "per_component": per_component, "failures": failures}


# ------------------------------------------------------------------ factorize

def _side_of_tail(cover: Cover, t) -> str:
    image = tail_image(t)
    if image is None:
        raise TailsNotControlled("unbounded tails are outside the finite cover setting")
    side = cover.side_of(image)
    if side is None:
        raise TailsNotControlled(f"tail image {sorted(image, key=order_key)} lies in neither A nor B")
    return side


def _sides(cover: Cover):
    return {"A": cover.A, "B": cover.B}


def crossing_points(f: ZMap, cover: Cover) -> list:
    """(z, from_side) for each first step out of the current side, scanning left to right."""
    side = _side_of_tail(cover, f.left)
    _side_of_tail(cover, f.right)
    sets = _sides(cover)
    out = []
    p = f.tail_period
    for z in range(f.lo - 1, f.hi + p + 2):
        if f(z) not in sets[side]:
            out.append((z, side))
            side = "B" if side == "A" else "A"
    return out


@dataclass(frozen=True)
class Factorization:
    string: StringOfMaps
    trace: tuple
    splice_points: tuple
    splice_values: tuple
    prepared: ZMap


def factorize(f: ZMap, cover: Cover) -> Factorization:
    if not isinstance(f.space, FiniteSpace) or f.space != cover.space:
        raise UnsupportedCover("factorization needs a finite map on the cover's space")
    crossings = crossing_points(f, cover)
    source = make_string([f])
    F = source
    trace = []
    lambdas = []
    for z, _ in crossings:
        u, v = f(z - 1), f(z)
        lam = u if u in cover.overlap else bridge(cover, u, v)
        lambdas.append(lam)
        F = apply_shift(F, 0, -1)
        trace.append(("shift", 0, -1))
        F = apply_point_move(F, 0, ("a", z - 1, lam))
        trace.append(("a", 0, z - 1, lam))
    k = len(crossings)
    points = tuple(z - 1 - (k - 1 - i) for i, (z, _) in enumerate(crossings))
    prepared = F.maps[0]
    for idx, zp in enumerate(points):
        F = apply_split(F, idx, zp)
        trace.append(("split", idx, zp))
    return Factorization(F, tuple(trace), points, tuple(lambdas), prepared)


def replay_factorization(f: ZMap, fac: Factorization) -> StringOfMaps:
    return replay_trace(make_string([f]), fac.trace)


def remerge(fac: Factorization) -> StringOfMaps:
    F = fac.string
    for z in fac.splice_points:
        F = apply_merge(F, 0, z)
    return F


# ------------------------------------------------------------------ connectors

def connectors(cover: Cover, atlas, values=None) -> dict:
    """Shortest path inside the A∩B component of c to the least vertex of the first atlas member meeting it."""
    space = cover.space
    atlas = [frozenset(u) for u in atlas]
    overlap = cover.overlap
    values = sort_vertices(overlap) if values is None else sort_vertices(values)
    table = {}
    for c in values:
        comp = next((k for k in components(space, overlap) if c in k), None)
        if comp is None:
            raise NoAtlasMember(f"{c!r} is not in A∩B")
        member = next((u for u in atlas if u & comp), None)
        if member is None:
            raise NoAtlasMember(f"component {list(sort_vertices(comp))} meets no atlas member")
        goal = sort_vertices(member & comp)[0]
        table[c] = tuple(shortest_path(space, c, lambda v, g=goal: v == g, within=comp))
    return table


def connector_map(space, path) -> ZMap:
    return make_zmap(space, 0, path, Constant(path[0]), Constant(path[-1]))


# ------------------------------------------------------------------ decompose

@dataclass(frozen=True)
class TaggedWord:
    factors: tuple  # of (StringOfMaps, tag)

    def __len__(self):
        return len(self.factors)

    def tags(self) -> list:
        return [t for _, t in self.factors]


def _values_of(F: StringOfMaps) -> set:
    out = set()
    for m in F.maps:
        out.update(m.values)
        out.update(tail_image(m.left))
        out.update(tail_image(m.right))
    return out


def tag_of(F: StringOfMaps, cover: Cover) -> str:
    side = cover.side_of(_values_of(F))
    if side is None:
        raise CoverMismatch("factor lies in neither A nor B")
    return side


def decompose(F: StringOfMaps, cover: Cover, atlas) -> TaggedWord:
    space = F.space
    atlas = [frozenset(u) for u in atlas]
    for m in F.maps:
        for t in (m.left, m.right):
            image = tail_image(t)
            if image is None or not any(image <= u for u in atlas):
                raise TailsNotControlled("every tail must lie in a single atlas member")
    factors = []
    for f in F.maps:
        fac = factorize(f, cover)
        pieces = fac.string.maps
        lambdas = fac.splice_values
        paths = connectors(cover, atlas, set(lambdas)) if lambdas else {}
        gammas = [connector_map(space, paths[lam]) for lam in lambdas]
        for j, piece in enumerate(pieces):
            maps = []
            if j > 0 and len(paths[lambdas[j - 1]]) > 1:
                maps.append(reverse(gammas[j - 1]))
            maps.append(piece)
            if j < len(pieces) - 1 and len(paths[lambdas[j]]) > 1:
                maps.append(gammas[j])
            G = make_string(maps)
            factors.append((G, tag_of(G, cover)))
    return TaggedWord(tuple(factors))


# ------------------------------------------------------------------ word equality

def _into(F: StringOfMaps, sub) -> StringOfMaps:
    def conv(m):
        return make_zmap(sub, m.lo, m.values, m.left, m.right)
    return make_string([conv(m) for m in F.maps], conv(F.left_object), conv(F.right_object))


def _space_for(tag: str, cover: Cover):
    verts = {"A": cover.A, "B": cover.B, "AB": cover.overlap}[tag]
    return subspace(cover.space, verts)


def _is_identity(F: StringOfMaps) -> bool:
    return len(F) == 1 and is_identity_map(F.maps[0])


def _retag(F: StringOfMaps, cover: Cover, tag: str) -> str:
    return "AB" if _values_of(F) <= cover.overlap else tag


def reduce_word(word: TaggedWord, cover: Cover) -> list:
    """Normalize factors in their own subspaces, drop identities, and fuse compatible neighbours."""
    items = [(F, _retag(F, cover, t)) for F, t in word.factors]
    changed = True
    while changed:
        changed = False
        reduced = []
        for F, t in items:
            sub = _space_for("A" if t == "AB" else t, cover)
            nf, _ = normalize(_into(F, sub))
            nf = _into(nf, cover.space)
            t = _retag(nf, cover, t)
            if _is_identity(nf) and len(items) > 1:
                changed = True
                continue
            reduced.append((nf, t))
        items = reduced
        for i in range(len(items) - 1):
            (F, t), (G, s) = items[i], items[i + 1]
            if t == s or "AB" in (t, s):
                fused_tag = s if t == "AB" else t
                items = items[:i] + [(star(F, G), fused_tag)] + items[i + 2:]
                changed = True
                break
    return items


def words_equal(w1: TaggedWord, w2: TaggedWord, cover: Cover, bound: int = 64):
    for w in (w1, w2):
        for F, _ in w.factors:
            if F.space != cover.space:
                raise CoverMismatch("word factors do not live on the cover's space")
    if w1.factors and w2.factors:
        ends = ((w1.factors[0][0].left_object, w2.factors[0][0].left_object),
                (w1.factors[-1][0].right_object, w2.factors[-1][0].right_object))
        for a, b in ends:
            v = object_equal(a, b)
            if v.refuted:
                return refuted(f"words run between different objects: {v.reason}")
    r1, r2 = reduce_word(w1, cover), reduce_word(w2, cover)
    if len(r1) != len(r2):
        return unknown(f"reduced words have {len(r1)} and {len(r2)} factors")
    if not r1:
        return proved({"factors": 0})
    steps = []
    for (F, t), (G, s) in zip(r1, r2):
        if t != s and "AB" not in (t, s):
            return unknown(f"factor tags {t} and {s} differ")
        tag = "A" if "AB" in (t, s) and {t, s} != {"B", "AB"} else (t if t != "AB" else s)
        sub = _space_for(tag, cover)
        try:
            v = string_equiv(_into(F, sub), _into(G, sub), bound)
        except SemiCoarseError as exc:
            return unknown(f"factor comparison failed: {exc}")
        if v.refuted:
            return refuted(v.reason)
        if not v.proved:
            return unknown(v.reason)
        steps.append({"tag": tag, "certificate": v.certificate})
    return proved({"factors": len(r1), "steps": steps})


# ------------------------------------------------------------------ relation preservation

def apply_generating_move(F: StringOfMaps, move: tuple) -> StringOfMaps:
    kind = move[0]
    try:
        if kind == "dop":
            return apply_dop(F, move[1])
        if kind == "insert_op":
            return insert_opposite(F, move[1], move[2])
        if kind == "merge":
            return apply_merge(F, move[1], move[2])
        if kind == "split":
            return apply_split(F, move[1], move[2])
        if kind in ("d", "a"):
            return apply_point_move(F, move[1], (kind,) + tuple(move[2:]))
        if kind == "shift":
            return apply_shift(F, move[1], move[2])
    except SemiCoarseError as exc:
        raise MoveInapplicable(f"{move[0]} is not applicable: {exc}") from exc
    raise MoveInapplicable(f"unknown move {kind!r}")


def relation_preservation_test(F: StringOfMaps, move: tuple, cover: Cover, atlas, bound: int = 64):
    G = apply_generating_move(F, move)
    return words_equal(decompose(F, cover, atlas), decompose(G, cover, atlas), cover, bound)
