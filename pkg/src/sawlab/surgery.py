"""Splitting and joining polygons across a unit plaquette, plus the shape classes
used by the joining construction."""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Optional

from .enumeration import search_directions
from .errors import InvalidPolygon, NotDisjoint, NotJoinPlaquette, VerticalEdgesNotSplit
from .lattice import Plaquette, Polygon


def is_join_plaquette(poly: Polygon, p: Plaquette) -> bool:
    e = poly.edges
    return p.top in e and p.bottom in e and p.left not in e and p.right not in e


def join_plaquettes(poly: Polygon) -> list[Plaquette]:
    """All join plaquettes, sorted by anchor."""
    out = []
    e = poly.edges
    for a, b in e:
        if a[1] != b[1]:
            continue
        p = Plaquette(a)
        if p.top in e and p.left not in e and p.right not in e:
            out.append(p)
    return sorted(out, key=lambda p: p.anchor)


def _cycles(edges) -> list[frozenset]:
    nbrs: dict = {}
    for a, b in edges:
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)
    seen: set = set()
    parts = []
    for start in nbrs:
        if start in seen:
            continue
        comp, stack = set(), [start]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            for w in nbrs[v]:
                comp.add((v, w) if v < w else (w, v))
                stack.append(w)
        parts.append(frozenset(comp))
    return parts


class SplitResult(NamedTuple):
    left_component: Polygon
    right_component: Polygon
    pivot: Plaquette


def split(poly: Polygon, p: Plaquette) -> SplitResult:
    """Cut ``poly`` along a join plaquette into two polygons.

    ``left_component`` is the piece containing NE of ``poly``.
    """
    if not is_join_plaquette(poly, p):
        raise NotJoinPlaquette(f"{p} is not a join plaquette")
    parts = _cycles(poly.edges ^ p.edges)
    if len(parts) != 2:
        raise InvalidPolygon("plaquette does not separate the polygon")
    a, b = (Polygon(c) for c in parts)
    if poly.ne not in a.vertices:
        a, b = b, a
    return SplitResult(a, b, p)


def join_via_plaquette(left: Polygon, right: Polygon, p: Plaquette) -> Polygon:
    """Inverse of :func:`split`: merge two disjoint polygons across ``p``."""
    if left.vertices & right.vertices:
        raise NotDisjoint("polygons share a vertex")
    e1, e2 = left.edges, right.edges
    lv = (p.left in e1) + (p.left in e2)
    rv = (p.right in e1) + (p.right in e2)
    split_ok = (p.left in e1 and p.right in e2) or (p.left in e2 and p.right in e1)
    if not split_ok or lv != 1 or rv != 1:
        raise VerticalEdgesNotSplit("each polygon must hold one vertical side of the plaquette")
    return Polygon((e1 | e2) ^ p.edges)


join = join_via_plaquette


def _first_touch(poly: Polygon, p: Plaquette) -> int:
    t = poly.traversal
    targets = {p.top, p.bottom}
    for i in range(len(t) - 1):
        a, b = t[i], t[i + 1]
        if ((a, b) if a < b else (b, a)) in targets:
            return i
    raise NotJoinPlaquette(f"{p} does not touch the polygon")


def is_global(poly: Polygon, p: Plaquette) -> bool:
    """Whether the split separates NE from every rightmost vertex."""
    ne_part = split(poly, p).left_component
    xmax = poly.bounds[1]
    return all(v[0] < xmax for v in ne_part.vertices)


def global_join_plaquettes(poly: Polygon) -> list[Plaquette]:
    """Global join plaquettes in the order the traversal from NE first meets them."""
    gj = [p for p in join_plaquettes(poly) if is_global(poly, p)]
    return sorted(gj, key=lambda p: _first_touch(poly, p))


def global_join_profile(poly: Polygon) -> list[tuple[Plaquette, int]]:
    """Each global join plaquette with the length of its NE-side component."""
    return [(p, split(poly, p).left_component.length) for p in global_join_plaquettes(poly)]


# shape classes


def south_east_index(poly: Polygon) -> int:
    return poly.index[poly.corner("SE")]


def is_left_long(poly: Polygon) -> bool:
    """Whether the path from NE to SE (via the first westward step) is at least half."""
    return 2 * south_east_index(poly) >= poly.length


def is_tall(poly: Polygon) -> bool:
    return poly.height >= poly.width


def in_sap_l(poly: Polygon) -> bool:
    """Tall, with the lowest rightmost vertex no higher than mid-height."""
    _, _, ymin, ymax = poly.bounds
    return is_tall(poly) and 2 * poly.corner("ES")[1] <= ymin + ymax


def in_sap_r(poly: Polygon) -> bool:
    return is_tall(poly)


def in_sap_left(poly: Polygon) -> bool:
    return in_sap_l(poly) and is_left_long(poly)


def in_sap_right(poly: Polygon) -> bool:
    return in_sap_r(poly)


CLASS_TESTS = {
    "all": lambda p: True,
    "l": in_sap_l,
    "r": in_sap_r,
    "left": in_sap_left,
    "right": in_sap_right,
}


@lru_cache(maxsize=None)
def polygons(n: int) -> tuple[Polygon, ...]:
    """All NE-rooted polygons of length ``n`` (NE at the origin)."""
    _, dirs, _ = search_directions("polygon", n)
    return tuple(Polygon.from_directions(d) for d in dirs)


@lru_cache(maxsize=None)
def class_members(cls: str, n: int) -> tuple[Polygon, ...]:
    test = CLASS_TESTS[cls]
    return tuple(p for p in polygons(n) if test(p))


def class_sizes(n: int) -> dict[str, int]:
    return {cls: len(class_members(cls, n)) for cls in CLASS_TESTS}


def find_split_component(poly: Polygon, length: int) -> Optional[Plaquette]:
    """First global join plaquette whose NE-side component has the given length."""
    for p, size in global_join_profile(poly):
        if size == length:
            return p
    return None
