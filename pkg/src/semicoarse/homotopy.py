"""Discrete homotopy: finite paths, rays, objects, based loops and the add/delete calculus."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from networkx.utils import UnionFind

from .errors import CertificateInvalid, LengthMismatch, ResourceCap, SemiCoarseError, SpaceMismatch
from .rays import nbhd, ray_equivalence
from .space import INF, FiniteSpace, IntLine, components, order_key, shortest_path
from .tails import slope, tail_match
from .verdict import proved, refuted, unknown
from .zmap import (
    ZMap,
    apply_move,
    rows_adjacent,
)

MAX_PI1_VERTICES = 8
MAX_PI1_LENGTH = 14


@dataclass(frozen=True)
class FinitePath:
    space: object
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    def __len__(self):
        return len(self.values)

    def is_bornologous(self) -> bool:
        return all(self.space.controlled_pair(a, b) for a, b in zip(self.values, self.values[1:]))

    def padded(self, length: int) -> "FinitePath":
        """Right-pad with the final value up to ``length`` points."""
        extra = length - len(self.values)
        return FinitePath(self.space, self.values + (self.values[-1],) * max(extra, 0))


@dataclass(frozen=True)
class HomotopyCertificate:
    rows: tuple
    mode: str = "rel-endpoints"

    def to_json(self) -> dict:
        return {"mode": self.mode, "rows": [list(r.values if isinstance(r, FinitePath) else r) for r in self.rows]}


def verify_certificate(space, cert: HomotopyCertificate, source, target) -> bool:
    rows = [tuple(r.values if isinstance(r, FinitePath) else r) for r in cert.rows]
    if not rows:
        return tuple(source) == tuple(target)
    if rows[0] != tuple(source) or rows[-1] != tuple(target):
        return False
    if len({len(r) for r in rows}) != 1:
        return False
    for r in rows:
        if not all(space.controlled_pair(a, b) for a, b in zip(r, r[1:])):
            return False
    for a, b in zip(rows, rows[1:]):
        if not rows_adjacent(space, a, b):
            return False
        if cert.mode == "rel-endpoints" and (a[0] != b[0] or a[-1] != b[-1]):
            return False
        if cert.mode == "rel-far" and a[-1] != b[-1]:
            return False
    return True


def row_successors(space, row: tuple, fix_start: bool, fix_end: bool) -> list:
    """Rows differing from ``row`` in one coordinate and one homotopy step away.

    Any step r -> r' factors through the rows that agree with r' up to i and with r
    after i, each of which differs from the previous in coordinate i only, so these
    single-site moves generate the same reachability relation as full steps.
    """
    n = len(row)
    out = []
    for i in range(n):
        if (i == 0 and fix_start) or (i == n - 1 and fix_end):
            continue
        s = set(nbhd(space, row[i]))
        if i > 0:
            s &= nbhd(space, row[i - 1])
        if i < n - 1:
            s &= nbhd(space, row[i + 1])
        s.discard(row[i])
        for v in sorted(s, key=order_key):
            out.append(row[:i] + (v,) + row[i + 1:])
    return out


def homotopic_finite(p: FinitePath, q: FinitePath, rel_endpoints: bool = True, max_rows: int | None = None,
                     padding: int = 0, max_states: int = 200000, fix_far_only: bool = False):
    """Breadth-first search for a row homotopy between two paths padded to a common length.

    REFUTED means the complete move graph at that length was exhausted.
    """
    if p.space != q.space:
        raise SpaceMismatch("paths live in different spaces")
    space = p.space
    length = max(len(p), len(q)) + padding
    a, b = p.padded(length).values, q.padded(length).values
    if rel_endpoints and (a[0] != b[0] or a[-1] != b[-1]):
        return refuted("endpoints differ")
    mode = "rel-far" if fix_far_only else ("rel-endpoints" if rel_endpoints else "free")
    fix_start = rel_endpoints and not fix_far_only
    fix_end = rel_endpoints or fix_far_only
    if a == b:
        return proved(HomotopyCertificate((), mode))
    if rows_adjacent(space, a, b):
        return proved(HomotopyCertificate((a, b), mode))
    parent = {a: None}
    depth = {a: 0}
    queue = deque([a])
    capped = False
    while queue:
        r = queue.popleft()
        if max_rows is not None and depth[r] >= max_rows:
            capped = True
            continue
        for nxt in row_successors(space, r, fix_start, fix_end):
            if nxt in parent:
                continue
            parent[nxt] = r
            depth[nxt] = depth[r] + 1
            if nxt == b:
                rows = []
                cur = nxt
                while cur is not None:
                    rows.append(cur)
                    cur = parent[cur]
                return proved(HomotopyCertificate(tuple(rows[::-1]), mode))
            if len(parent) >= max_states:
                return unknown(f"state cap {max_states} reached")
            queue.append(nxt)
    if capped:
        return unknown(f"row cap {max_rows} reached")
    return refuted(f"exhausted {len(parent)} rows of length {length} without reaching the target")


def _is_indiscrete(space) -> bool:
    n = len(space.vertices)
    return isinstance(space, FiniteSpace) and len(space.edges) == n * (n - 1) // 2


def homotopic_ray(f: ZMap, g: ZMap, bound: int = 64):
    """Are the right rays f|[0,∞) and g|[0,∞) homotopic (start point free)?"""
    if f.space != g.space:
        raise SpaceMismatch("maps live in different spaces")
    space = f.space
    if isinstance(space, IntLine):
        if slope(f.right) != slope(g.right):
            return refuted(f"slopes {slope(f.right)} and {slope(g.right)} differ: pointwise displacement is "
                           f"unbounded, while a finite homotopy bounds it")
        if space.scale == INF or _ray_one_step(f, g):
            return proved(HomotopyCertificate((f, g), "ray"))
        return unknown("no single-step ray homotopy found")
    if f.right == g.right:
        far = max(f.hi, g.hi, 0) + f.tail_period + 1
        p = FinitePath(space, f.sample(0, far))
        q = FinitePath(space, g.sample(0, far))
        v = homotopic_finite(p, q, rel_endpoints=True, fix_far_only=True, max_rows=bound)
        if v.proved:
            return v
        return unknown(f"window search inconclusive ({v.reason})")
    comp = {x: i for i, c in enumerate(components(space)) for x in c}
    if comp[f(0)] != comp[g(0)]:
        return refuted("rays start in different connected components")
    return unknown("ray tails differ; only bounded searches are implemented")


def _ray_one_step(f: ZMap, g: ZMap) -> bool:
    p = max(f.tail_period, g.tail_period)
    top = max(f.hi, g.hi, 0) + 2 * p + 2
    for z in range(0, top):
        for d in (-1, 0, 1):
            if z + d >= 0 and not f.space.controlled_pair(f(z), g(z + d)):
                return False
    return True


def object_equal(f: ZMap, g: ZMap):
    """Do two symmetric maps name the same object (eventually equal or homotopic)?"""
    if f.space != g.space:
        raise SpaceMismatch("maps live in different spaces")
    space = f.space
    if isinstance(space, FiniteSpace) and _is_indiscrete(space):
        return proved(HomotopyCertificate((f, g), "free"), reason="indiscrete target: one homotopy step")
    if tail_match(f.right, g.right) is not None:
        return proved(reason="eventually equal")
    return ray_equivalence(space, f.right, g.right)


def _loops(space: FiniteSpace, base, length: int):
    """Loops as (length+1)-tuples starting and ending at ``base``, lexicographic order."""
    nb = {v: sorted(space.closed_nbhd[v], key=order_key) for v in space.vertices}
    dist = {}
    for v in space.vertices:
        path = shortest_path(space, v, lambda u: u == base)
        dist[v] = len(path) - 1 if path else None
    out = []
    prefix = [base]

    def extend(i):
        if i == length:
            if prefix[-1] == base:
                out.append(tuple(prefix))
            return
        remaining = length - i
        for v in nb[prefix[-1]]:
            d = dist[v]
            if d is not None and d <= remaining - 1:
                prefix.append(v)
                extend(i + 1)
                prefix.pop()

    extend(0)
    return out


def _loop_classes(space, loops: list) -> dict:
    uf = UnionFind(loops)
    loopset = set(loops)
    for r in loops:
        for nxt in row_successors(space, r, True, True):
            if nxt in loopset:
                uf.union(r, nxt)
    return {r: uf[r] for r in loops}


def trim_loop(loop: tuple) -> tuple:
    """Drop trailing padding, keeping the closing basepoint."""
    end = len(loop)
    while end > 1 and loop[end - 1] == loop[0] and loop[end - 2] == loop[0]:
        end -= 1
    return loop[:end]


def pi1_classes(space: FiniteSpace, basepoint, length_cap: int, with_products: bool = True) -> dict:
    """Rel-endpoint classes of based loops of ``length_cap`` steps (shorter loops right-padded)."""
    if not isinstance(space, FiniteSpace):
        raise ResourceCap("loop enumeration needs a finite space")
    if len(space.vertices) > MAX_PI1_VERTICES or length_cap > MAX_PI1_LENGTH:
        raise ResourceCap(f"limits are {MAX_PI1_VERTICES} vertices and loop length {MAX_PI1_LENGTH}")
    if length_cap < 2:
        raise ResourceCap("length_cap must be at least 2")
    loops = _loops(space, basepoint, length_cap)
    roots = _loop_classes(space, loops)
    groups = {}
    for r in loops:
        groups.setdefault(roots[r], []).append(r)
    reps = []
    for members in groups.values():
        best = min(members, key=lambda m: (len(trim_loop(m)), [order_key(v) for v in m]))
        reps.append((best, members))
    reps.sort(key=lambda bm: (len(trim_loop(bm[0])), [order_key(v) for v in bm[0]]))
    index = {}
    for i, (_, members) in enumerate(reps):
        for m in members:
            index[m] = i
    classes = [{"representative": list(trim_loop(rep)), "size": len(members)} for rep, members in reps]
    table = None
    if with_products:
        table = []
        for rep_a, _ in reps:
            row = []
            a = trim_loop(rep_a)
            for rep_b, _ in reps:
                b = trim_loop(rep_b)
                prod = a + b[1:]
                if len(prod) - 1 > length_cap:
                    row.append(None)
                else:
                    row.append(index[prod + (basepoint,) * (length_cap + 1 - len(prod))])
            table.append(row)
    flag = None
    if length_cap - 2 >= 2:
        flag = _stable_from(space, basepoint, length_cap, index)
    return {"classes": classes, "count": len(classes), "product_table": table, "stabilization_flag": flag,
            "loops": len(loops)}


def _stable_from(space, base, cap: int, index_at_cap: dict) -> bool:
    """Do the padded loops of length cap-2 occupy as many classes at cap as they did at cap-2?"""
    shorter = _loops(space, base, cap - 2)
    roots = _loop_classes(space, shorter)
    before = len(set(roots.values()))
    after = len({index_at_cap[r + (base, base)] for r in shorter})
    return before == after


def pi1_class_of(space, base, loop, length_cap: int, result: dict | None = None) -> int:
    result = pi1_classes(space, base, length_cap, with_products=False) if result is None else result
    padded = tuple(loop) + (base,) * (length_cap + 1 - len(loop))
    for i, c in enumerate(result["classes"]):
        rep = tuple(c["representative"])
        rep = rep + (base,) * (length_cap + 1 - len(rep))
        v = homotopic_finite(FinitePath(space, padded), FinitePath(space, rep), max_states=500000)
        if v.proved:
            return i
    raise ValueError("loop does not belong to any enumerated class")


def homotopy_to_dmoves(f: ZMap, g: ZMap, cert: HomotopyCertificate, n: int) -> list:
    """Translate a rel-endpoint homotopy on the window [-n, n] into add/delete moves f → g."""
    rows = [tuple(r.values if isinstance(r, FinitePath) else r) for r in cert.rows]
    if not rows:
        if f != g:
            raise CertificateInvalid("empty certificate between different maps")
        return []
    if any(len(r) != 2 * n + 1 for r in rows):
        raise LengthMismatch(f"rows must cover the window [-{n}, {n}]")
    if not verify_certificate(f.space, HomotopyCertificate(tuple(rows), "rel-endpoints"),
                              f.sample(-n, n), g.sample(-n, n)):
        raise CertificateInvalid("certificate does not replay between the windows")
    if f.left != g.left or f.right != g.right or f.sample(-n - f.tail_period - 1, -n) != \
            g.sample(-n - g.tail_period - 1, -n) or f.sample(n, n + f.tail_period + 1) != \
            g.sample(n, n + g.tail_period + 1):
        raise CertificateInvalid("maps differ outside the window")
    moves = []
    for nxt in rows[1:]:
        for i in range(2 * n - 1):
            z = -n + i + 1
            moves.append(("a", z, nxt[z + n]))
            moves.append(("d", z + 1))
    return moves


def replay_dmoves(f: ZMap, moves: list) -> list:
    out = [f]
    for m in moves:
        out.append(apply_move(out[-1], m))
    return out


def _local_moves(f: ZMap):
    space = f.space
    a, b = f.lo - 1, f.hi + 1
    for z in range(a, b + 1):
        yield ("d", z)
    for z in range(a, b + 2):
        left, right = f(z - 1), f(z)
        for x in sorted(space.closed_nbhd[left] & space.closed_nbhd[right], key=order_key):
            yield ("a", z, x)


def _neighbours(f: ZMap):
    for m in _local_moves(f):
        try:
            yield m, apply_move(f, m)
        except SemiCoarseError:
            continue


def _inverse(f: ZMap, m: tuple) -> tuple:
    if m[0] == "d":
        return ("a", m[1], f(m[1]))
    return ("d", m[1])


def simd_equiv(f: ZMap, g: ZMap, bound: int = 64, max_states: int = 20000):
    """Bidirectional breadth-first search over add/delete moves."""
    if f.space != g.space:
        raise SpaceMismatch("maps live in different spaces")
    if f.left != g.left:
        return refuted("add/delete moves never change the left tail")
    if tail_match(f.right, g.right) is None:
        return refuted("add/delete moves change the right tail only by a shift")
    if f == g:
        return proved([])
    if not isinstance(f.space, FiniteSpace):
        return unknown("move search needs a finite target")
    fwd = {f: None}
    bwd = {g: None}
    fq, bq = [f], [g]
    depth = 0
    while fq and bq and depth < bound:
        depth += 1
        expand_fwd = len(fq) <= len(bq)
        frontier, seen, other = (fq, fwd, bwd) if expand_fwd else (bq, bwd, fwd)
        nxt_frontier = []
        for h in frontier:
            for m, h2 in _neighbours(h):
                if h2 in seen:
                    continue
                seen[h2] = (h, m)
                if h2 in other:
                    return proved(_join(fwd, bwd, h2))
                nxt_frontier.append(h2)
                if len(fwd) + len(bwd) > max_states:
                    return unknown(f"state cap {max_states} reached")
        if expand_fwd:
            fq = nxt_frontier
        else:
            bq = nxt_frontier
    return unknown(f"no move sequence within depth {bound}")


def _join(fwd: dict, bwd: dict, meet: ZMap) -> list:
    left = []
    cur = meet
    while fwd[cur] is not None:
        prev, m = fwd[cur]
        left.append(m)
        cur = prev
    left.reverse()
    right = []
    cur = meet
    while bwd[cur] is not None:
        prev, m = bwd[cur]
        # prev --m--> cur, so cur --inverse--> prev
        right.append(_inverse(prev, m))
        cur = prev
    return left + right
