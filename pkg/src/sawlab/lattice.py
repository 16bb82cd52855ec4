"""Walks, polygons and plaquettes on the square lattice.

Points are plain ``(x, y)`` tuples and an edge is a sorted pair of points,
so edge sets can be compared and combined with ordinary set operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

from .errors import (
    EmptySet,
    InvalidPolygon,
    LengthTwoExcluded,
    NonUnitStep,
    NotClosing,
    OddPolygonLength,
    RepeatedVertex,
)

Point = tuple[int, int]
Edge = tuple[Point, Point]

STEPS = {"E": (1, 0), "N": (0, 1), "S": (0, -1), "W": (-1, 0)}
DIRECTIONS = "ENSW"
STEP_NAMES = {v: k for k, v in STEPS.items()}

_AXIS = {"N": (1, 1), "S": (1, -1), "E": (0, 1), "W": (0, -1)}


def edge(p: Point, q: Point) -> Edge:
    return (p, q) if p < q else (q, p)


def add(p: Point, v: Point) -> Point:
    return (p[0] + v[0], p[1] + v[1])


def sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def step_name(p: Point, q: Point) -> str:
    try:
        return STEP_NAMES[sub(q, p)]
    except KeyError:
        raise NonUnitStep(None) from None


def path_from_directions(start: Point, dirs: str) -> tuple[Point, ...]:
    x, y = start
    out = [(x, y)]
    for d in dirs:
        dx, dy = STEPS[d]
        x, y = x + dx, y + dy
        out.append((x, y))
    return tuple(out)


def directions_of(points: Sequence[Point]) -> str:
    return "".join(STEP_NAMES[sub(q, p)] for p, q in zip(points, points[1:]))


def compass_corner(points: Iterable[Point], direction: str) -> Point:
    """Extreme point in the given compass direction.

    ``direction`` is one or two letters; the first letter picks the extremum
    and the second breaks ties, e.g. ``"NE"`` is the rightmost top point and
    ``"ES"`` is the lowest rightmost point.
    """
    pts = list(points)
    if not pts:
        raise EmptySet("no points")
    if not 1 <= len(direction) <= 2 or any(c not in _AXIS for c in direction):
        raise ValueError(f"bad compass direction {direction!r}")
    keys = [_AXIS[c] for c in direction]

    def key(p):
        return tuple(sign * p[axis] for axis, sign in keys)

    return max(pts, key=key)


def extent(obj) -> tuple[int, int]:
    """(height, width) of the bounding box of a walk, polygon or point set."""
    pts = list(getattr(obj, "vertices", obj))
    if not pts:
        raise EmptySet("no points")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return max(ys) - min(ys), max(xs) - min(xs)


@dataclass(frozen=True)
class Walk:
    """A self-avoiding walk, stored as its vertex sequence."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        validate_walk(self.vertices)

    @classmethod
    def from_directions(cls, dirs: str, start: Point = (0, 0)) -> "Walk":
        return cls(path_from_directions(start, dirs))

    @classmethod
    def parse(cls, text: str) -> "Walk":
        head, _, dirs = text.strip().partition(":")
        x, y = (int(t) for t in head.split(","))
        return cls.from_directions(dirs, (x, y))

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def start(self) -> Point:
        return self.vertices[0]

    @property
    def end(self) -> Point:
        return self.vertices[-1]

    @cached_property
    def directions(self) -> str:
        return directions_of(self.vertices)

    @cached_property
    def vertex_set(self) -> frozenset[Point]:
        return frozenset(self.vertices)

    def ne(self) -> Point:
        return compass_corner(self.vertices, "NE")

    def reversed(self) -> "Walk":
        return Walk(self.vertices[::-1])

    def prefix(self, k: int) -> "Walk":
        return Walk(self.vertices[: k + 1])

    def translate(self, v: Point) -> "Walk":
        return Walk(tuple(add(p, v) for p in self.vertices))

    def closes(self) -> bool:
        dx, dy = sub(self.end, self.start)
        return abs(dx) + abs(dy) == 1

    def __str__(self):
        x, y = self.start
        return f"{x},{y}:{self.directions}"


def validate_walk(vertices: Sequence[Point]) -> None:
    if not vertices:
        raise EmptySet("a walk needs at least one vertex")
    seen = {vertices[0]}
    for i in range(1, len(vertices)):
        (px, py), (qx, qy) = vertices[i - 1], vertices[i]
        if abs(px - qx) + abs(py - qy) != 1:
            raise NonUnitStep(i)
        if vertices[i] in seen:
            raise RepeatedVertex(i)
        seen.add(vertices[i])


@dataclass(frozen=True)
class Polygon:
    """A self-avoiding polygon given by its edge set.

    Equality is edge-set equality, so translates are different polygons;
    use :meth:`normalized` to compare translation classes.
    """

    edges: frozenset[Edge]

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))
        _check_polygon(self.edges)

    @classmethod
    def _trusted(cls, edges) -> "Polygon":
        obj = object.__new__(cls)
        object.__setattr__(obj, "edges", frozenset(edges))
        return obj

    @classmethod
    def from_cycle(cls, points: Sequence[Point]) -> "Polygon":
        """Polygon from a closed vertex cycle (first point not repeated)."""
        n = len(points)
        return cls(edge(points[i], points[(i + 1) % n]) for i in range(n))

    @classmethod
    def from_directions(cls, dirs: str, start: Point = (0, 0)) -> "Polygon":
        pts = path_from_directions(start, dirs)
        if pts[-1] != pts[0]:
            raise InvalidPolygon("direction string does not close")
        poly = cls.from_cycle(pts[:-1])
        if len(poly.edges) != len(dirs):
            raise InvalidPolygon("direction string revisits a vertex")
        return poly

    parse = from_directions

    @property
    def length(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> dict[Point, tuple[Point, ...]]:
        nbrs: dict[Point, list[Point]] = {}
        for p, q in self.edges:
            nbrs.setdefault(p, []).append(q)
            nbrs.setdefault(q, []).append(p)
        return {p: tuple(v) for p, v in nbrs.items()}

    @cached_property
    def vertices(self) -> frozenset[Point]:
        return frozenset(self.adjacency)

    def corner(self, direction: str) -> Point:
        return compass_corner(self.vertices, direction)

    @cached_property
    def ne(self) -> Point:
        return self.corner("NE")

    @cached_property
    def traversal(self) -> tuple[Point, ...]:
        """Vertex sequence from NE, first step west, ending back at NE."""
        start = self.ne
        prev, cur = start, add(start, (-1, 0))
        out = [start, cur]
        while cur != start:
            a, b = self.adjacency[cur]
            prev, cur = cur, (b if a == prev else a)
            out.append(cur)
        return tuple(out)

    @cached_property
    def directions(self) -> str:
        return directions_of(self.traversal)

    @cached_property
    def index(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.traversal[:-1])}

    @cached_property
    def bounds(self) -> tuple[int, int, int, int]:
        """(xmin, xmax, ymin, ymax)."""
        xs = [p[0] for p in self.vertices]
        ys = [p[1] for p in self.vertices]
        return min(xs), max(xs), min(ys), max(ys)

    @property
    def height(self) -> int:
        return self.bounds[3] - self.bounds[2]

    @property
    def width(self) -> int:
        return self.bounds[1] - self.bounds[0]

    def translate(self, v: Point) -> "Polygon":
        if v == (0, 0):
            return self
        return Polygon._trusted(edge(add(p, v), add(q, v)) for p, q in self.edges)

    def normalized(self) -> "Polygon":
        x, y = self.ne
        return self.translate((-x, -y))

    def __contains__(self, e) -> bool:
        return e in self.edges

    def __str__(self):
        return self.directions


def _check_polygon(edges: frozenset) -> None:
    if not edges:
        raise InvalidPolygon("empty edge set")
    nbrs: dict[Point, list[Point]] = {}
    for e in edges:
        try:
            p, q = e
        except (TypeError, ValueError):
            raise InvalidPolygon(f"not an edge: {e!r}") from None
        if abs(p[0] - q[0]) + abs(p[1] - q[1]) != 1 or e != edge(p, q):
            raise InvalidPolygon(f"not a unit lattice edge: {e!r}")
        nbrs.setdefault(p, []).append(q)
        nbrs.setdefault(q, []).append(p)
    if any(len(v) != 2 for v in nbrs.values()):
        raise InvalidPolygon("some vertex does not have degree two")
    start = next(iter(nbrs))
    prev, cur, steps = start, nbrs[start][0], 1
    while cur != start:
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
        steps += 1
    if steps != len(edges):
        raise InvalidPolygon("edge set is not a single cycle")
    if len(edges) % 2:
        raise OddPolygonLength("polygon length must be even")


def symmetric_difference(*edge_sets) -> frozenset:
    out: set = set()
    for s in edge_sets:
        out ^= set(s)
    return frozenset(out)


@dataclass(frozen=True)
class Plaquette:
    """Unit square with lower-left corner ``anchor``."""

    anchor: Point

    @classmethod
    def parse(cls, text: str) -> "Plaquette":
        tag, _, body = text.strip().partition(":")
        if tag != "P":
            raise ValueError(f"not a plaquette: {text!r}")
        x, y = (int(t) for t in body.split(","))
        return cls((x, y))

    @property
    def corners(self) -> tuple[Point, Point, Point, Point]:
        x, y = self.anchor
        return (x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)

    @property
    def bottom(self) -> Edge:
        x, y = self.anchor
        return ((x, y), (x + 1, y))

    @property
    def top(self) -> Edge:
        x, y = self.anchor
        return ((x, y + 1), (x + 1, y + 1))

    @property
    def left(self) -> Edge:
        x, y = self.anchor
        return ((x, y), (x, y + 1))

    @property
    def right(self) -> Edge:
        x, y = self.anchor
        return ((x + 1, y), (x + 1, y + 1))

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset((self.bottom, self.top, self.left, self.right))

    def translate(self, v: Point) -> "Plaquette":
        return Plaquette(add(self.anchor, v))

    def __str__(self):
        return f"P:{self.anchor[0]},{self.anchor[1]}"


@dataclass(frozen=True)
class TwoPartDecomposition:
    """Split of a walk at its NE vertex into two walks that start there.

    ``first_is_initial`` records whether ``first`` is the (reversed) initial
    segment of the walk, which is what lets :func:`recompose` undo the split.
    """

    first: Walk
    second: Walk
    apex: Point
    first_is_initial: bool


def two_part_decompose(walk: Walk) -> TwoPartDecomposition:
    verts = walk.vertices
    apex = compass_corner(verts, "NE")
    j = verts.index(apex)
    head = Walk(verts[j::-1])
    tail = Walk(verts[j:])
    west = add(apex, (-1, 0))
    if head.length and head.vertices[1] == west:
        return TwoPartDecomposition(head, tail, apex, True)
    if tail.length and tail.vertices[1] == west:
        return TwoPartDecomposition(tail, head, apex, False)
    # neither part starts westward, so one of them has length zero
    if head.length == 0:
        return TwoPartDecomposition(head, tail, apex, True)
    return TwoPartDecomposition(tail, head, apex, False)


def recompose(dec: TwoPartDecomposition) -> Walk:
    if dec.first_is_initial:
        initial, final = dec.first, dec.second
    else:
        initial, final = dec.second, dec.first
    return Walk(initial.vertices[::-1] + final.vertices[1:])


def polygon_of_closing_walk(walk: Walk) -> tuple[Polygon, Edge]:
    """The polygon traced by a closing walk, and the edge that closes it."""
    if walk.length == 1:
        raise LengthTwoExcluded("a single edge does not make a polygon")
    if walk.length < 3 or not walk.closes():
        raise NotClosing("walk endpoints are not adjacent")
    return Polygon.from_cycle(walk.vertices), edge(walk.end, walk.start)


Shape = Union[Walk, Polygon, Plaquette]

_POINT_MAPS = {
    "rot90": lambda p: (-p[1], p[0]),
    "rot180": lambda p: (-p[0], -p[1]),
    "rot270": lambda p: (p[1], -p[0]),
    "reflect_x_axis": lambda p: (p[0], -p[1]),
    "reflect_vertical_line": lambda p: (-p[0], p[1]),
    "identity": lambda p: p,
}

_INVERSES = {"rot90": "rot270", "rot270": "rot90"}


def inverse_symmetry(g):
    if isinstance(g, tuple):
        _, (dx, dy) = g
        return ("translate", (-dx, -dy))
    return _INVERSES.get(g, g)


def symmetry_apply(obj: Shape, g) -> Shape:
    """Apply a lattice symmetry.

    ``g`` is one of ``"rot90"``, ``"rot180"``, ``"rot270"``,
    ``"reflect_x_axis"``, ``"reflect_vertical_line"``, ``"identity"`` or
    ``("translate", (dx, dy))``.
    """
    if isinstance(g, tuple):
        tag, v = g
        if tag != "translate":
            raise ValueError(f"unknown symmetry {g!r}")
        f = lambda p: add(p, v)  # noqa: E731
    else:
        try:
            f = _POINT_MAPS[g]
        except KeyError:
            raise ValueError(f"unknown symmetry {g!r}") from None
    if isinstance(obj, Walk):
        return Walk(tuple(f(p) for p in obj.vertices))
    if isinstance(obj, Polygon):
        return Polygon._trusted(edge(f(p), f(q)) for p, q in obj.edges)
    if isinstance(obj, Plaquette):
        xs, ys = zip(*(f(c) for c in obj.corners))
        return Plaquette((min(xs), min(ys)))
    raise TypeError(f"cannot transform {type(obj).__name__}")


def parse_object(text: str) -> Shape:
    """Parse any of the three serializations."""
    text = text.strip()
    if text.startswith("P:"):
        return Plaquette.parse(text)
    if ":" in text:
        return Walk.parse(text)
    return Polygon.from_directions(text)
