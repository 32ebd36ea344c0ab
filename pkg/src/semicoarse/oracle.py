"""Brute-force reference values, computed without the library's search shortcuts.

Loop classes here are connected components of the graph whose nodes are all
based loops of a fixed length and whose edges are full strong-product steps
(every coordinate may move at once).  The library itself explores single-site
moves, so agreement between the two is a real cross-check.
"""

from __future__ import annotations

from .space import FiniteSpace, order_key


class _Partition:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb, key=_key)] = min(ra, rb, key=_key)

    def count(self) -> int:
        return len({self.find(x) for x in self.parent})


def _key(loop):
    return [order_key(v) for v in loop]


def all_loops(space: FiniteSpace, base, steps: int) -> list:
    """Every walk of ``steps`` steps from ``base`` back to ``base``, by plain enumeration."""
    out = []
    walk = [base]

    def extend():
        if len(walk) == steps + 1:
            if walk[-1] == base:
                out.append(tuple(walk))
            return
        for v in space.vertices:
            if space.controlled_pair(walk[-1], v):
                walk.append(v)
                extend()
                walk.pop()

    extend()
    return out


def _full_steps(space: FiniteSpace, row: tuple):
    n = len(row)
    choices = []
    for i in range(n):
        if i in (0, n - 1):
            choices.append([row[i]])
            continue
        choices.append([v for v in space.vertices
                        if all(space.controlled_pair(row[j], v) for j in (i - 1, i, i + 1))])
    found = []

    def extend(prefix):
        i = len(prefix)
        if i == n:
            found.append(tuple(prefix))
            return
        for v in choices[i]:
            if i == 0 or space.controlled_pair(prefix[-1], v):
                prefix.append(v)
                extend(prefix)
                prefix.pop()

    extend([])
    return found


def loop_class_count(space: FiniteSpace, base, steps: int) -> int:
    loops = all_loops(space, base, steps)
    part = _Partition(loops)
    present = set(loops)
    for r in loops:
        for s in _full_steps(space, r):
            if s in present:
                part.union(r, s)
    return part.count()


def padded_classes_merge(space: FiniteSpace, base, steps: int) -> bool:
    """Do two classes at ``steps - 2`` collapse once their loops are padded by two basepoints?"""
    short = all_loops(space, base, steps - 2)
    long = all_loops(space, base, steps)
    p_short, p_long = _Partition(short), _Partition(long)
    for part, loops in ((p_short, short), (p_long, long)):
        present = set(loops)
        for r in loops:
            for s in _full_steps(space, r):
                if s in present:
                    part.union(r, s)
    seen = {}
    for r in short:
        root_long = p_long.find(r + (base, base))
        root_short = p_short.find(r)
        if seen.setdefault(root_long, root_short) != root_short:
            return True
    return False


def winding_count(cycle_length: int, steps: int) -> int:
    """Winding numbers reachable by loops of at most ``steps`` steps around an n-cycle."""
    if cycle_length <= 3:
        return 1
    reach = steps // cycle_length
    return 2 * reach + 1


def pi1_reference(space: FiniteSpace, base, caps) -> dict:
    return {str(cap): {"count": loop_class_count(space, base, cap),
                       "padded_merge": padded_classes_merge(space, base, cap) if cap >= 4 else False}
            for cap in caps}


PI1_TARGETS = (
    ("pi1_k1", 1, (8,)),
    ("pi1_c3", 3, (8,)),
    ("pi1_c4", 4, (10, 12)),
    ("pi1_c5", 5, (10, 12)),
)


def _cycle_or_point(n: int) -> FiniteSpace:
    from .space import build_finite_space, cycle_space
    return build_finite_space([0]) if n == 1 else cycle_space(n)


def pi1_fixture(name: str, n: int, caps) -> dict:
    """A corpus fixture whose expected loop-class counts come from the brute-force oracle."""
    from .serialize import space_to_json
    space = _cycle_or_point(n)
    reference = pi1_reference(space, 0, caps)
    expected = []
    for cap in caps:
        ref = reference[str(cap)]
        expected.append({"check": "pi1", "args": {"basepoint": 0, "cap": cap},
                         "expect": {"count": ref["count"], "stable": not ref["padded_merge"]},
                         "provenance": "derived", "reference": f"loop classes of {name[4:].upper()}",
                         "source": "scg oracle (full strong-product steps, exhaustive)"})
    return {"name": name, "description": f"based loop classes at 0 for {name[4:].upper()}",
            "generated_by": "scg oracle", "space": space_to_json(space), "expected": expected}


def write_pi1_fixtures(directory, targets=PI1_TARGETS, log=None) -> list:
    from pathlib import Path

    from .serialize import dumps
    written = []
    for name, n, caps in targets:
        path = Path(directory) / f"{name}.json"
        path.write_text(dumps(pi1_fixture(name, n, caps)), encoding="utf-8")
        written.append(str(path))
        if log:
            log(f"wrote {path}")
    return written
