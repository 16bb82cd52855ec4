"""Slow, independent reference counts.

Nothing here shares code with the optimized search: walks are grown by
plain recursion over vertex lists, and polygons are recovered from closing
walks by collecting their edge sets up to translation.
"""

from __future__ import annotations

from collections import Counter

_NEIGHBOURS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def walks(n: int) -> list[list[tuple[int, int]]]:
    """Every self-avoiding walk of length n from the origin, as vertex lists."""
    out = []

    def grow(path):
        if len(path) == n + 1:
            out.append(list(path))
            return
        x, y = path[-1]
        for dx, dy in _NEIGHBOURS:
            q = (x + dx, y + dy)
            if q not in path:
                path.append(q)
                grow(path)
                path.pop()

    grow([(0, 0)])
    return out


def walk_count(n: int) -> int:
    count = 0

    def grow(x, y, seen, left):
        nonlocal count
        if left == 0:
            count += 1
            return
        for dx, dy in _NEIGHBOURS:
            q = (x + dx, y + dy)
            if q not in seen:
                seen.add(q)
                grow(q[0], q[1], seen, left - 1)
                seen.remove(q)

    grow(0, 0, {(0, 0)}, n)
    return count


def closing_walks(n: int) -> list[tuple[tuple[int, int], ...]]:
    """Walks of length n from the origin ending at a neighbour of the origin."""
    out = []

    def grow(path, seen):
        x, y = path[-1]
        left = n + 1 - len(path)
        if left == 0:
            if abs(x) + abs(y) == 1:
                out.append(tuple(path))
            return
        for dx, dy in _NEIGHBOURS:
            q = (x + dx, y + dy)
            if q in seen or abs(q[0]) + abs(q[1]) - 1 > left - 1:
                continue
            seen.add(q)
            path.append(q)
            grow(path, seen)
            path.pop()
            seen.remove(q)

    grow([(0, 0)], {(0, 0)})
    return out


def polygon_key(cycle) -> frozenset:
    """Translation-invariant edge set of a closed vertex cycle."""
    mx = min(p[0] for p in cycle)
    my = min(p[1] for p in cycle)
    pts = [(x - mx, y - my) for x, y in cycle]
    k = len(pts)
    return frozenset(frozenset((pts[i], pts[(i + 1) % k])) for i in range(k))


def polygon_preimages(n: int) -> Counter:
    """Polygon class of length n -> number of closing walks of length n - 1 tracing it."""
    if n < 4:
        return Counter()
    return Counter(polygon_key(w) for w in closing_walks(n - 1))


def polygon_count(n: int) -> int:
    return len(polygon_preimages(n))
