"""Named example spaces and covers used by the corpus, the CLI and the tests."""

from __future__ import annotations

from .space import build_finite_space, complete_space, cycle_space
from .splitting import Cover


def six_vertex_space():
    vs = ["x", "x'", "y", "y'", "w", "w'"]
    es = [("w", "x"), ("w", "y"), ("w", "y'"), ("w", "w'"), ("x", "x'"), ("x", "y"), ("x", "y'"),
          ("x", "w'"), ("x'", "y'"), ("x'", "w'"), ("y'", "y"), ("y'", "w'")]
    return build_finite_space(vs, es)


def six_vertex_cover():
    return Cover(six_vertex_space(), {"x", "x'", "w", "w'"}, {"y", "y'", "w", "w'"})


def six_vertex_atlas():
    return [frozenset({"w'"}), frozenset({"x"}), frozenset({"y"})]


def five_vertex_space():
    vs = ["a", "b", "x", "y", "z"]
    es = [("a", "x"), ("a", "y"), ("a", "z"), ("b", "x"), ("b", "y"), ("b", "z"), ("a", "b")]
    return build_finite_space(vs, es)


def five_vertex_cover():
    return Cover(five_vertex_space(), {"a", "x", "y", "z"}, {"b", "x", "y", "z"})


def parity_cover(n: int = 8):
    c = cycle_space(n)
    return Cover(c, {v for v in c.vertices if v % 2}, {v for v in c.vertices if not v % 2})


def indiscrete_space(n: int = 3):
    return complete_space(range(n))
