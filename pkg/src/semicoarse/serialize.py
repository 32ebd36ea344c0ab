"""JSON descriptors for spaces, maps, strings, covers, atlases and fixtures."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ParseError, SemiCoarseError, ValidationError
from .space import INF, FiniteSpace, IntLine, build_finite_space, sort_vertices
from .splitting import Cover
from .strings import StringOfMaps, make_string
from .tails import tail_from_json, tail_to_json
from .zmap import ZMap, make_zmap


def _vertex(v):
    """JSON has no tuples; product vertices arrive as lists."""
    if isinstance(v, list):
        return tuple(_vertex(x) for x in v)
    return v


def _vertex_out(v):
    if isinstance(v, tuple):
        return [_vertex_out(x) for x in v]
    return v


def _require(d, key, where):
    if not isinstance(d, dict):
        raise ParseError(f"expected an object, got {type(d).__name__}", where)
    if key not in d:
        raise ParseError(f"missing field {key!r}", where)
    return d[key]


# ------------------------------------------------------------------ space

def space_from_json(d, where: str = "space"):
    kind = _require(d, "kind", where)
    if kind == "finite":
        vertices = [_vertex(v) for v in _require(d, "vertices", where)]
        edges = d.get("edges", [])
        for k, e in enumerate(edges):
            if not isinstance(e, list) or len(e) != 2:
                raise ParseError("an edge is a two-element list", f"{where}.edges[{k}]")
        try:
            return build_finite_space(vertices, [(_vertex(a), _vertex(b)) for a, b in edges])
        except SemiCoarseError as exc:
            raise ValidationError(str(exc)) from exc
    if kind == "intline":
        scale = _require(d, "scale", where)
        if scale == "inf":
            return IntLine(INF)
        if not isinstance(scale, int) or isinstance(scale, bool) or scale < 1:
            raise ValidationError(f"scale must be a positive integer or \"inf\", got {scale!r}")
        return IntLine(scale)
    raise ParseError(f"unknown space kind {kind!r}", f"{where}.kind")


def space_to_json(space) -> dict:
    if isinstance(space, FiniteSpace):
        return {"kind": "finite", "vertices": [_vertex_out(v) for v in space.vertices],
                "edges": [[_vertex_out(a), _vertex_out(b)] for a, b in space.edge_list()]}
    return {"kind": "intline", "scale": "inf" if space.scale == INF else space.scale}


# ------------------------------------------------------------------ zmap

def _tail(d, where):
    try:
        t = tail_from_json(d)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad tail: {exc}", where) from exc
    if hasattr(t, "value"):
        return type(t)(_vertex(t.value))
    if hasattr(t, "word"):
        return type(t)(tuple(_vertex(v) for v in t.word))
    return t


def zmap_from_json(d, space=None, where: str = "zmap") -> ZMap:
    if isinstance(d, dict) and "space" in d:
        space = space_from_json(d["space"], f"{where}.space")
    if space is None:
        raise ParseError("a map needs a space", where)
    window = _require(d, "window", where)
    lo = _require(window, "lo", f"{where}.window")
    values = [_vertex(v) for v in _require(window, "values", f"{where}.window")]
    left = _tail(_require(d, "left_tail", where), f"{where}.left_tail")
    right = _tail(_require(d, "right_tail", where), f"{where}.right_tail")
    if not isinstance(lo, int) or isinstance(lo, bool):
        raise ParseError("window.lo must be an integer", f"{where}.window.lo")
    try:
        return make_zmap(space, lo, values, left, right)
    except SemiCoarseError as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def _tail_out(t) -> dict:
    d = tail_to_json(t)
    if "value" in d:
        d["value"] = _vertex_out(d["value"])
    if "word" in d:
        d["word"] = [_vertex_out(v) for v in d["word"]]
    return d


def zmap_to_json(f: ZMap, with_space: bool = False) -> dict:
    out = {"window": {"lo": f.lo, "values": [_vertex_out(v) for v in f.values]},
           "left_tail": _tail_out(f.left), "right_tail": _tail_out(f.right)}
    if with_space:
        out = {"space": space_to_json(f.space), **out}
    return out


# ------------------------------------------------------------------ string

def string_from_json(d, space, named: dict | None = None, where: str = "string") -> StringOfMaps:
    named = named or {}

    def one(item, loc):
        if isinstance(item, str):
            if item not in named:
                raise ParseError(f"unknown map name {item!r}", loc)
            return named[item]
        return zmap_from_json(item, space, loc)

    maps = [one(m, f"{where}.maps[{k}]") for k, m in enumerate(_require(d, "maps", where))]
    left = one(d["left_object"], f"{where}.left_object") if d.get("left_object") is not None else None
    right = one(d["right_object"], f"{where}.right_object") if d.get("right_object") is not None else None
    try:
        return make_string(maps, left, right)
    except SemiCoarseError as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def string_to_json(F: StringOfMaps) -> dict:
    return {"maps": [zmap_to_json(m) for m in F.maps],
            "left_object": zmap_to_json(F.left_object), "right_object": zmap_to_json(F.right_object)}


# ------------------------------------------------------------------ cover, atlas

def cover_from_json(d, space, where: str = "cover") -> Cover:
    a = [_vertex(v) for v in _require(d, "A", where)]
    b = [_vertex(v) for v in _require(d, "B", where)]
    try:
        return Cover(space, frozenset(a), frozenset(b))
    except SemiCoarseError as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def cover_to_json(cover: Cover) -> dict:
    return {"A": [_vertex_out(v) for v in sort_vertices(cover.A)],
            "B": [_vertex_out(v) for v in sort_vertices(cover.B)]}


def atlas_from_json(d, space, where: str = "atlas") -> list:
    if not isinstance(d, list):
        raise ParseError("an atlas is a list of vertex lists", where)
    out = []
    for k, member in enumerate(d):
        verts = frozenset(_vertex(v) for v in member)
        unknown = [v for v in verts if v not in space.vertex_set]
        if unknown:
            raise ValidationError(f"{where}[{k}] names unknown vertices {unknown!r}")
        out.append(verts)
    return out


def atlas_to_json(atlas) -> list:
    return [[_vertex_out(v) for v in sort_vertices(u)] for u in atlas]


# ------------------------------------------------------------------ fixture

@dataclass
class Fixture:
    name: str
    space: object
    cover: Cover | None = None
    atlas: list | None = None
    zmaps: dict = field(default_factory=dict)
    strings: dict = field(default_factory=dict)
    expected: list = field(default_factory=list)
    description: str = ""
    generated_by: str = ""


PROVENANCE_KINDS = ("paper", "derived", "trivial")


def parse_fixture(text: str) -> Fixture:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from exc
    return fixture_from_json(d)


def fixture_from_json(d) -> Fixture:
    name = _require(d, "name", "fixture")
    space = space_from_json(_require(d, "space", "fixture"), "space")
    cover = cover_from_json(d["cover"], space) if d.get("cover") is not None else None
    atlas = atlas_from_json(d["atlas"], space) if d.get("atlas") is not None else None
    raw_maps = d.get("zmaps", {})
    if not isinstance(raw_maps, dict):
        raise ParseError("zmaps is an object of named descriptors", "zmaps")
    zmaps = {k: zmap_from_json(v, space, f"zmaps.{k}") for k, v in raw_maps.items()}
    raw_strings = d.get("strings", {})
    if not isinstance(raw_strings, dict):
        raise ParseError("strings is an object of named descriptors", "strings")
    strings = {k: string_from_json(v, space, zmaps, f"strings.{k}") for k, v in raw_strings.items()}
    expected = d.get("expected", [])
    for k, e in enumerate(expected):
        loc = f"expected[{k}]"
        _require(e, "check", loc)
        prov = _require(e, "provenance", loc)
        if prov not in PROVENANCE_KINDS:
            raise ValidationError(f"{loc}: provenance must be one of {PROVENANCE_KINDS}, got {prov!r}")
    return Fixture(name, space, cover, atlas, zmaps, strings, list(expected),
                   d.get("description", ""), d.get("generated_by", ""))


def fixture_to_json(fx: Fixture) -> dict:
    out = {"name": fx.name}
    if fx.description:
        out["description"] = fx.description
    if fx.generated_by:
        out["generated_by"] = fx.generated_by
    out["space"] = space_to_json(fx.space)
    if fx.cover is not None:
        out["cover"] = cover_to_json(fx.cover)
    if fx.atlas is not None:
        out["atlas"] = atlas_to_json(fx.atlas)
    out["zmaps"] = {k: zmap_to_json(v) for k, v in fx.zmaps.items()}
    out["strings"] = {k: string_to_json(v) for k, v in fx.strings.items()}
    out["expected"] = fx.expected
    return out


def emit_fixture(fx: Fixture) -> str:
    return dumps(fixture_to_json(fx))


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False, default=_default) + "\n"


def _default(o):
    if isinstance(o, (set, frozenset)):
        return sorted((_vertex_out(v) for v in o), key=repr)
    if isinstance(o, tuple):
        return list(o)
    if hasattr(o, "to_json"):
        return o.to_json()
    if isinstance(o, ZMap):
        return zmap_to_json(o)
    if isinstance(o, StringOfMaps):
        return string_to_json(o)
    if o == INF:
        return "inf"
    raise TypeError(f"cannot serialize {type(o).__name__}")
