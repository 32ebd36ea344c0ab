"""Symbolic tails of maps ℤ → X.

Every tail is a total function of the absolute coordinate ``z``:

* ``Constant(c)``: ``c``
* ``Periodic(word)``: ``word[z mod len(word)]``
* ``QuasiAffine(slope, offset, correction)``: ``slope*z + offset + correction[z mod len]``

Normal forms make equality of specs coincide with equality of functions, so a
map's canonical form can be compared field by field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Constant:
    value: object


@dataclass(frozen=True)
class Periodic:
    word: tuple


@dataclass(frozen=True)
class QuasiAffine:
    slope: int
    offset: int
    correction: tuple = (0,)


TailSpec = Constant | Periodic | QuasiAffine


def tail_value(t: TailSpec, z: int):
    if isinstance(t, Constant):
        return t.value
    if isinstance(t, Periodic):
        return t.word[z % len(t.word)]
    return t.slope * z + t.offset + t.correction[z % len(t.correction)]


def period(t: TailSpec) -> int:
    if isinstance(t, Constant):
        return 1
    if isinstance(t, Periodic):
        return len(t.word)
    return len(t.correction)


def slope(t: TailSpec) -> int:
    return t.slope if isinstance(t, QuasiAffine) else 0


def _minimal_period(seq: tuple) -> int:
    n = len(seq)
    for d in range(1, n + 1):
        if n % d == 0 and all(seq[i] == seq[(i + d) % n] for i in range(n)):
            return d
    return n


def normalize_tail(t: TailSpec) -> TailSpec:
    if isinstance(t, Constant):
        return t
    if isinstance(t, Periodic):
        word = tuple(t.word)
        if not word:
            raise ValueError("periodic tail needs a non-empty word")
        word = word[:_minimal_period(word)]
        return Constant(word[0]) if len(word) == 1 else Periodic(word)
    corr = tuple(int(c) for c in t.correction)
    if not corr:
        raise ValueError("quasi-affine correction must be non-empty")
    corr = corr[:_minimal_period(corr)]
    base = corr[0]
    offset = int(t.offset) + base
    corr = tuple(c - base for c in corr)
    if t.slope == 0:
        return normalize_tail(Periodic(tuple(offset + c for c in corr)))
    return QuasiAffine(int(t.slope), offset, corr)


def shift_tail(t: TailSpec, k: int) -> TailSpec:
    """The tail of z ↦ f(z - k)."""
    if isinstance(t, Constant):
        return t
    if isinstance(t, Periodic):
        p = len(t.word)
        return Periodic(tuple(t.word[(j - k) % p] for j in range(p)))
    p = len(t.correction)
    return normalize_tail(QuasiAffine(t.slope, t.offset - t.slope * k,
                                      tuple(t.correction[(j - k) % p] for j in range(p))))


def reverse_tail(t: TailSpec) -> TailSpec:
    """The tail of z ↦ f(-z)."""
    if isinstance(t, Constant):
        return t
    if isinstance(t, Periodic):
        p = len(t.word)
        return normalize_tail(Periodic(tuple(t.word[(-j) % p] for j in range(p))))
    p = len(t.correction)
    return normalize_tail(QuasiAffine(-t.slope, t.offset, tuple(t.correction[(-j) % p] for j in range(p))))


def tail_image(t: TailSpec) -> frozenset | None:
    """Finite image, or None for an unbounded quasi-affine tail."""
    if isinstance(t, Constant):
        return frozenset([t.value])
    if isinstance(t, Periodic):
        return frozenset(t.word)
    return None


def tail_match(t1: TailSpec, t2: TailSpec) -> int | None:
    """Some d with t1(z) = t2(z + d) for every z, preferring the least non-negative one."""
    if type(t1) is not type(t2):
        return None
    if isinstance(t1, Constant):
        return 0 if t1.value == t2.value else None
    if isinstance(t1, Periodic):
        p = len(t1.word)
        if len(t2.word) != p:
            return None
        for d in range(p):
            if all(t1.word[j] == t2.word[(j + d) % p] for j in range(p)):
                return d
        return None
    if t1.slope != t2.slope or len(t1.correction) != len(t2.correction):
        return None
    p = len(t1.correction)
    for r in range(p):
        diffs = {t1.correction[j] - t2.correction[(j + r) % p] for j in range(p)}
        if len(diffs) != 1:
            continue
        k = diffs.pop()
        # t1(z) - t2(z + r + p*m) = (o1 - o2) - s*r - s*p*m + k
        num = t1.offset - t2.offset - t1.slope * r + k
        if num % (t1.slope * p) == 0:
            return r + p * (num // (t1.slope * p))
    return None


def tails_lcm(*tails: TailSpec) -> int:
    return math.lcm(*(period(t) for t in tails))


def tail_to_json(t: TailSpec) -> dict:
    if isinstance(t, Constant):
        return {"kind": "const", "value": t.value}
    if isinstance(t, Periodic):
        return {"kind": "periodic", "word": list(t.word)}
    return {"kind": "affine", "slope": t.slope, "offset": t.offset, "correction": list(t.correction)}


def tail_from_json(d: dict) -> TailSpec:
    kind = d.get("kind")
    if kind == "const":
        return Constant(d["value"])
    if kind == "periodic":
        return normalize_tail(Periodic(tuple(d["word"])))
    if kind == "affine":
        return normalize_tail(QuasiAffine(int(d["slope"]), int(d.get("offset", 0)), tuple(d.get("correction", [0]))))
    raise ValueError(f"unknown tail kind {kind!r}")
