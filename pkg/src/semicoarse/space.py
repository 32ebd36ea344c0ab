"""Semi-coarse spaces and their categorical constructions.

A finite structure is stored as its union edge set: the controlled sets are
exactly the subsets of ``edges ∪ diagonal``.  The integer line at scale ``n``
is kept intensional and answers membership queries by distance.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping

from networkx.utils import UnionFind

from .errors import NotBornologous, NotSurjective, UnknownVertex

INF = math.inf

Vertex = Hashable


def order_key(v):
    """Total order over mixed vertex identifiers (ints, strings, nested tuples)."""
    if isinstance(v, bool):
        return (0, int(v))
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, tuple):
        return (2, tuple(order_key(x) for x in v))
    return (3, repr(v))


def sort_vertices(vs: Iterable[Vertex]) -> tuple:
    return tuple(sorted(set(vs), key=order_key))


def edge(a, b) -> frozenset:
    return frozenset((a, b))


class SemiCoarseSpace:
    """Common interface of the finite and integer-line variants."""

    kind: str

    def controlled_pair(self, a, b) -> bool:
        raise NotImplementedError


@dataclass(frozen=True, eq=True)
class FiniteSpace(SemiCoarseSpace):
    vertices: tuple
    edges: frozenset = field(default_factory=frozenset)

    kind = "finite"

    @cached_property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    @cached_property
    def closed_nbhd(self) -> dict:
        nb = {v: {v} for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            nb[a].add(b)
            nb[b].add(a)
        return {v: frozenset(s) for v, s in nb.items()}

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    def controlled_pair(self, a, b) -> bool:
        return a == b or frozenset((a, b)) in self.edges

    def neighbours(self, v) -> frozenset:
        return self.closed_nbhd[v] - {v}

    def edge_list(self) -> list:
        """Edges as sorted pairs, sorted; the canonical serialisation order."""
        pairs = [tuple(sorted(e, key=order_key)) for e in self.edges]
        return sorted(pairs, key=lambda p: (order_key(p[0]), order_key(p[1])))

    def __repr__(self) -> str:
        return f"FiniteSpace(vertices={list(self.vertices)}, edges={self.edge_list()})"


@dataclass(frozen=True, eq=True)
class IntLine(SemiCoarseSpace):
    scale: float | int

    kind = "intline"

    def __post_init__(self):
        if not (self.scale == INF or (isinstance(self.scale, int) and self.scale >= 1)):
            raise ValueError(f"scale must be a positive integer or INF, got {self.scale!r}")

    def controlled_pair(self, a, b) -> bool:
        return abs(a - b) <= self.scale

    @property
    def is_coarse_line(self) -> bool:
        return self.scale == INF


def is_finite(space) -> bool:
    return isinstance(space, FiniteSpace)


def build_finite_space(vertices: Iterable[Vertex], edge_pairs: Iterable = ()) -> FiniteSpace:
    vs = sort_vertices(vertices)
    vset = set(vs)
    es = set()
    for pair in edge_pairs:
        a, b = pair
        for v in (a, b):
            if v not in vset:
                raise UnknownVertex(f"edge {pair!r} references undeclared vertex {v!r}")
        if a != b:
            es.add(edge(a, b))
    return FiniteSpace(vs, frozenset(es))


def complete_space(vertices: Iterable[Vertex]) -> FiniteSpace:
    vs = sort_vertices(vertices)
    return build_finite_space(vs, itertools.combinations(vs, 2))


def cycle_space(n: int) -> FiniteSpace:
    if n == 1:
        return build_finite_space([0])
    return build_finite_space(range(n), [(i, (i + 1) % n) for i in range(n)])


def path_space(n: int) -> FiniteSpace:
    """Path on vertices 0..n-1."""
    return build_finite_space(range(n), [(i, i + 1) for i in range(n - 1)])


def _check_vertices(space: FiniteSpace, vs: Iterable[Vertex]) -> None:
    for v in vs:
        if v not in space.vertex_set:
            raise UnknownVertex(f"{v!r} is not a vertex")


def is_controlled(space: SemiCoarseSpace, pair_set: Iterable) -> bool:
    pairs = list(pair_set)
    if isinstance(space, IntLine):
        return all(space.controlled_pair(a, b) for a, b in pairs)
    _check_vertices(space, (v for p in pairs for v in p))
    return all(space.controlled_pair(a, b) for a, b in pairs)


@dataclass(frozen=True)
class FiniteMap:
    domain: FiniteSpace
    codomain: FiniteSpace
    assignment: Mapping

    def __post_init__(self):
        for v in self.domain.vertices:
            if v not in self.assignment:
                raise UnknownVertex(f"map is not total: {v!r} unassigned")
            if self.assignment[v] not in self.codomain.vertex_set:
                raise UnknownVertex(f"image {self.assignment[v]!r} not in codomain")

    def __call__(self, v):
        return self.assignment[v]

    def __hash__(self):
        return hash((self.domain, self.codomain, tuple(sorted(self.assignment.items(), key=lambda kv: order_key(kv[0])))))


def is_bornologous(fmap: FiniteMap) -> bool:
    return all(fmap.codomain.controlled_pair(fmap(a), fmap(b)) for a, b in map(tuple, fmap.domain.edges))


def compose(g: FiniteMap, f: FiniteMap) -> FiniteMap:
    return FiniteMap(f.domain, g.codomain, {v: g(f(v)) for v in f.domain.vertices})


def subspace(space: SemiCoarseSpace, vertex_subset: Iterable[Vertex]) -> SemiCoarseSpace:
    if isinstance(space, IntLine):
        raise TypeError("subspaces of the integer line are handled by half-line covers")
    sub = set(vertex_subset)
    _check_vertices(space, sub)
    return FiniteSpace(sort_vertices(sub), frozenset(e for e in space.edges if e <= sub))


def product(x: FiniteSpace, y: FiniteSpace) -> FiniteSpace:
    verts = [(a, b) for a in x.vertices for b in y.vertices]
    es = set()
    for (a, b), (c, d) in itertools.combinations(verts, 2):
        if x.controlled_pair(a, c) and y.controlled_pair(b, d):
            es.add(edge((a, b), (c, d)))
    return FiniteSpace(sort_vertices(verts), frozenset(es))


def quotient(space: FiniteSpace, surjection: Mapping, targets: Iterable | None = None) -> FiniteSpace:
    _check_vertices(space, surjection.keys())
    for v in space.vertices:
        if v not in surjection:
            raise UnknownVertex(f"assignment is not total: {v!r}")
    image = {surjection[v] for v in space.vertices}
    if targets is not None:
        targets = set(targets)
        if image != targets:
            raise NotSurjective(f"missed targets {sorted(targets - image, key=order_key)}")
    es = set()
    for e in space.edges:
        a, b = (surjection[v] for v in e)
        if a != b:
            es.add(edge(a, b))
    return FiniteSpace(sort_vertices(image), frozenset(es))


def identify(space: FiniteSpace, pairs: Iterable) -> tuple[FiniteSpace, dict]:
    """Quotient by the equivalence generated by ``pairs``; classes are named by their least member."""
    uf = UnionFind(space.vertices)
    for a, b in pairs:
        uf.union(a, b)
    name = {}
    for block in uf.to_sets():
        least = min(block, key=order_key)
        for v in block:
            name[v] = least
    return quotient(space, name), name


def disjoint_union(spaces: Iterable[FiniteSpace]) -> FiniteSpace:
    verts, es = [], set()
    for i, s in enumerate(spaces):
        verts.extend((i, v) for v in s.vertices)
        es.update(frozenset((i, v) for v in e) for e in s.edges)
    return FiniteSpace(sort_vertices(verts), frozenset(es))


def pushout(a: FiniteSpace, b: FiniteSpace, c: FiniteSpace, f: FiniteMap, g: FiniteMap):
    """Glue ``a`` and ``b`` along the images of ``c``; returns the space and both canonical maps."""
    for m, label in ((f, "f"), (g, "g")):
        if not is_bornologous(m):
            raise NotBornologous(f"{label} is not bornologous")
    glued, name = identify(disjoint_union([a, b]), (((0, f(v)), (1, g(v))) for v in c.vertices))
    inj_a = FiniteMap(a, glued, {v: name[(0, v)] for v in a.vertices})
    inj_b = FiniteMap(b, glued, {v: name[(1, v)] for v in b.vertices})
    assert is_bornologous(inj_a) and is_bornologous(inj_b)
    return glued, inj_a, inj_b


def compose_relation(space: FiniteSpace, left: frozenset, right: frozenset) -> frozenset:
    """Off-diagonal part of (left ∪ Δ) ∘ (right ∪ Δ) as an unordered edge set."""
    nb_l = {v: {v} for v in space.vertices}
    nb_r = {v: {v} for v in space.vertices}
    for e in left:
        a, b = tuple(e)
        nb_l[a].add(b)
        nb_l[b].add(a)
    for e in right:
        a, b = tuple(e)
        nb_r[a].add(b)
        nb_r[b].add(a)
    out = set()
    for m in space.vertices:
        for a in nb_l[m]:
            for b in nb_r[m]:
                if a != b:
                    out.add(edge(a, b))
    return frozenset(out)


def product_extension(space: FiniteSpace, k: int | float) -> FiniteSpace:
    es = space.edges
    if k == INF:
        # iterate to the fixed point: the component-complete relation
        while True:
            nxt = compose_relation(space, es, es)
            if nxt == es:
                return FiniteSpace(space.vertices, es)
            es = nxt
    if k < 1:
        raise ValueError("extension order must be at least 1")
    for _ in range(int(k)):
        es = compose_relation(space, es, es)
    return FiniteSpace(space.vertices, es)


def is_coarse(space: SemiCoarseSpace) -> bool:
    if isinstance(space, IntLine):
        return space.scale == INF
    return compose_relation(space, space.edges, space.edges) <= space.edges


def components(space: SemiCoarseSpace, within: Iterable | None = None) -> list[frozenset]:
    """Connected components, optionally of the induced subgraph on ``within``; sorted by least vertex."""
    if isinstance(space, IntLine):
        raise TypeError("the integer line is connected; use is_connected")
    allowed = space.vertex_set if within is None else frozenset(within)
    seen, out = set(), []
    for v in space.vertices:
        if v not in allowed or v in seen:
            continue
        comp = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in space.closed_nbhd[u]:
                if w in allowed and w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


def is_connected(space: SemiCoarseSpace, within: Iterable | None = None) -> bool:
    if isinstance(space, IntLine):
        return True
    return len(components(space, within)) <= 1


def shortest_path(space: FiniteSpace, start, goal_test, within: Iterable | None = None) -> list | None:
    """BFS path from ``start`` to the first vertex satisfying ``goal_test``; ties broken by vertex order."""
    allowed = space.vertex_set if within is None else frozenset(within)
    if start not in allowed:
        return None
    parent = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        if goal_test(u):
            path = []
            while u is not None:
                path.append(u)
                u = parent[u]
            return path[::-1]
        for w in sorted(space.neighbours(u), key=order_key):
            if w in allowed and w not in parent:
                parent[w] = u
                queue.append(w)
    return None


def labelled_graphs(n: int):
    """Every finite space on the vertices 0..n-1 (all 2^(n choose 2) edge sets)."""
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    for mask in range(2 ** len(pairs)):
        yield build_finite_space(range(n), [p for k, p in enumerate(pairs) if mask >> k & 1])
