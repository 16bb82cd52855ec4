"""Joining two polygons side by side through a junction plaquette.

Each polygon grows a finger of four unit cells (adding 8 to its length) and
the two finger tips meet across a junction plaquette, which is then cut open
to merge them.  The left finger is a straight bar: it leaves the lowest
rightmost vertex heading east, or, when that vertex sits right under NE,
runs beneath the bottom edge instead so that NE and the start of the
traversal are untouched.  The right finger starts just east of the
junction and takes three steps among E, N and S before attaching to the
right polygon along one edge.

Placement is resolved by sliding: the right polygon comes in from far to
the right at a fixed height, and the join happens at the first horizontal
position (and, at that position, the first finger shape in a fixed priority
order) for which the construction is a valid polygon.  A pair is *Madras
joinable* when that first position is the one it is already at.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from .errors import (
    ConstraintViolation,
    InvalidParams,
    InvalidPolygon,
    NotJoinable,
    NotRegulation,
    VerticalIntervalsDisjoint,
    WrongClass,
)
from .exact import floor_root_product, rational
from .lattice import Edge, Plaquette, Point, Polygon, add, sub
from .surgery import (
    class_members,
    in_sap_l,
    in_sap_left,
    in_sap_r,
    in_sap_right,
    is_left_long,
    is_global,
    join_plaquettes,
    split,
)

Cell = Point


def cell_edges(c: Cell) -> frozenset[Edge]:
    return Plaquette(c).edges


def _toggle(edges: frozenset, cells: Iterable[Cell]) -> frozenset:
    out = set(edges)
    for c in cells:
        out ^= cell_edges(c)
    return frozenset(out)


def _polygon_or_none(edges, length: int) -> Optional[Polygon]:
    if len(edges) != length:
        return None
    try:
        return Polygon(edges)
    except InvalidPolygon:
        return None


_STEP = {"E": (1, 0), "N": (0, 1), "S": (0, -1)}
_SIDE_RANK = {"E": 0, "N": 1, "S": 2, "W": 3}
_OPPOSITE = {"E": "W", "N": "S", "S": "N"}


@dataclass(frozen=True)
class FingerShape:
    steps: str
    side: str

    def cells(self, junction: Cell) -> tuple[Cell, ...]:
        c = add(junction, (1, 0))
        out = [c]
        for s in self.steps:
            c = add(c, _STEP[s])
            out.append(c)
        return tuple(out)

    def attach_edge(self, junction: Cell) -> Edge:
        return side_edge(self.cells(junction)[-1], self.side)


def side_edge(c: Cell, side: str) -> Edge:
    p = Plaquette(c)
    return {"E": p.right, "W": p.left, "N": p.top, "S": p.bottom}[side]


def _shape_key(f: FingerShape):
    turns = sum(s != "E" for s in f.steps)
    return turns, ["ENS".index(s) for s in f.steps], _SIDE_RANK[f.side]


def _all_shapes() -> tuple[FingerShape, ...]:
    shapes = []
    for steps in itertools.product("ENS", repeat=3):
        s = "".join(steps)
        if "NS" in s or "SN" in s:
            continue
        for side in "ENSW":
            if side == _OPPOSITE[s[-1]]:
                continue
            shapes.append(FingerShape(s, side))
    return tuple(sorted(shapes, key=_shape_key))


SHAPES = _all_shapes()
FINGER_PATHS = tuple(sorted({f.steps for f in SHAPES}))


def left_finger(poly: Polygon) -> tuple[str, Cell, tuple[Cell, ...]]:
    """(mode, junction cell, finger cells) for the polygon on the left."""
    _, _, ymin, ymax = poly.bounds
    a, b = poly.corner("ES")
    if b + 1 < ymax:
        mode, junction = "side", (a + 4, b)
    else:
        s, _ = poly.corner("SE")
        mode, junction = "base", (s + 3, ymin - 1)
    jx, jy = junction
    return mode, junction, tuple((jx - 4 + i, jy) for i in range(4))


@lru_cache(maxsize=4096)
def grown_left(poly: Polygon) -> tuple[str, Cell, Polygon]:
    mode, junction, cells = left_finger(poly)
    grown = _polygon_or_none(_toggle(poly.edges, cells), poly.length + 8)
    if grown is None:
        raise InvalidPolygon("left finger does not fit")
    return mode, junction, grown


@dataclass(frozen=True)
class MadrasJoin:
    left: Polygon
    right: Polygon
    shift: int
    junction: Plaquette
    shape: FingerShape
    mode: str
    left_grown: Polygon
    right_grown: Polygon
    output: Polygon

    @property
    def is_global(self) -> bool:
        return self.output.ne in self.left_grown.vertices


def _try_shape(tau_mod: Polygon, junction: Cell, sigma: Polygon, shape: FingerShape):
    sigma_mod = _polygon_or_none(_toggle(sigma.edges, shape.cells(junction)), sigma.length + 8)
    if sigma_mod is None or sigma_mod.vertices & tau_mod.vertices:
        return None
    p = Plaquette(junction)
    if p.right not in sigma_mod.edges or p.top in sigma_mod.edges or p.bottom in sigma_mod.edges:
        return None
    out = _polygon_or_none(
        (tau_mod.edges | sigma_mod.edges) ^ p.edges, tau_mod.length + sigma_mod.length
    )
    if out is None:
        return None
    return sigma_mod, out


def _check_overlap(left: Polygon, right: Polygon) -> None:
    _, _, a0, a1 = left.bounds
    _, _, b0, b1 = right.bounds
    if b1 < a0 or a1 < b0:
        raise VerticalIntervalsDisjoint("vertical extents do not meet")


def find_madras_join(left: Polygon, right: Polygon) -> Optional[MadrasJoin]:
    """Slide ``right`` in horizontally from far away and join at the first fit.

    Returns None if no horizontal translate of ``right`` can be joined.
    """
    _check_overlap(left, right)
    mode, junction, tau_mod = grown_left(left)
    candidates = []
    verticals: dict = {}
    horizontals: dict = {}
    for a, b in right.edges:
        bucket = verticals if a[0] == b[0] else horizontals
        bucket.setdefault((min(a[1], b[1]), a[1] == b[1]), []).append(a[0])
    for rank, shape in enumerate(SHAPES):
        (ax, ay), (bx, by) = shape.attach_edge(junction)
        bucket = verticals if ax == bx else horizontals
        for x in bucket.get((min(ay, by), ay == by), ()):
            candidates.append((-(ax - x), rank))
    for neg_h, rank in sorted(set(candidates)):
        h = -neg_h
        shape = SHAPES[rank]
        moved = right.translate((h, 0))
        got = _try_shape(tau_mod, junction, moved, shape)
        if got is not None:
            sigma_mod, out = got
            return MadrasJoin(
                left, moved, h, Plaquette(junction), shape, mode, tau_mod, sigma_mod, out
            )
    return None


def is_madras_joinable(left: Polygon, right: Polygon) -> Optional[Plaquette]:
    """The junction plaquette if the pair joins where it stands, else None."""
    j = find_madras_join(left, right)
    return j.junction if j is not None and j.shift == 0 else None


def madras_join(left: Polygon, right: Polygon) -> "JoinRecord":
    j = find_madras_join(left, right)
    if j is None or j.shift != 0:
        raise NotJoinable("right polygon is not at its first admissible position")
    x, y = left.ne
    back = (-x, -y)
    return JoinRecord(
        left.normalized(),
        right.normalized(),
        sub(right.ne, left.ne),
        j.junction.translate(back),
        j.output.translate(back),
    )


def is_globally_madras_joinable(left: Polygon, right: Polygon) -> bool:
    j = find_madras_join(left, right)
    return j is not None and j.shift == 0 and is_global(j.output, j.junction)


@dataclass(frozen=True)
class PolygonClassFlags:
    in_l: bool
    in_r: bool
    left_long: bool
    in_left: bool
    in_right: bool


def polygon_class(poly: Polygon) -> PolygonClassFlags:
    l, r, long = in_sap_l(poly), in_sap_r(poly), is_left_long(poly)
    return PolygonClassFlags(l, r, long, l and long, r)


def shift_set(left: Polygon, right: Polygon) -> set[Point]:
    """Translations u making (left, right + u) globally Madras joinable."""
    if not in_sap_l(left):
        raise WrongClass("left polygon is not tall with a low right tip")
    if not in_sap_r(right):
        raise WrongClass("right polygon is not tall")
    _, _, a0, a1 = left.bounds
    _, _, b0, b1 = right.bounds
    out = set()
    for v in range(a0 - b1, a1 - b0 + 1):
        j = find_madras_join(left, right.translate((0, v)))
        if j is not None and is_global(j.output, j.junction):
            out.add((j.shift, v))
    return out


# regulation global joins


@dataclass(frozen=True)
class RgjParams:
    k: int
    l: int
    rho: Fraction = Fraction(1, 10)

    def __post_init__(self):
        object.__setattr__(self, "rho", rational(self.rho))
        if self.k < 4 or self.l < 4 or self.k % 2 or self.l % 2:
            raise InvalidParams("k and l must be even and at least 4")
        if self.rho < 0:
            raise InvalidParams("rho must be non-negative")
        if not (self.k <= 2 * self.l and self.l <= 35 * self.k):
            raise ConstraintViolation("need k/2 <= l <= 35k")

    @property
    def window(self) -> int:
        return floor_root_product(self.rho, self.k)


@dataclass(frozen=True)
class JoinRecord:
    """One join.  ``left`` and ``right`` are stored with NE at the origin,
    ``shift`` is where the NE of ``right`` sits when joined, and
    ``junction`` and ``output`` use the frame where NE of ``left`` is the origin."""

    left: Polygon
    right: Polygon
    shift: Point
    junction: Plaquette
    output: Polygon

    @property
    def normalized_output(self) -> Polygon:
        return self.output.normalized()

    def to_json(self) -> str:
        return json.dumps(
            {
                "left": str(self.left),
                "right": str(self.right),
                "shift": list(self.shift),
                "junction": str(self.junction),
                "output": str(self.output),
            }
        )


@dataclass
class RgjBuild:
    params: RgjParams
    records: list[JoinRecord] = field(default_factory=list)
    unjoinable: list[tuple[Polygon, Polygon, int]] = field(default_factory=list)

    @property
    def outputs(self) -> set[Polygon]:
        return {r.normalized_output for r in self.records}

    @property
    def expected_size(self) -> int:
        p = self.params
        return p.window * len(class_members("left", p.k)) * len(class_members("right", p.l))


def rgj_cardinality(params: RgjParams) -> int:
    return len(build_rgj(params).outputs)


def build_rgj(params: RgjParams) -> RgjBuild:
    """Join every left/right pair at every height in the window."""
    build = RgjBuild(params)
    w = params.window
    for tau in class_members("left", params.k):
        base = tau.corner("ES")[1]
        for sigma in class_members("right", params.l):
            for v in range(base, base + w):
                j = find_madras_join(tau, sigma.translate((0, v)))
                if j is None:
                    build.unjoinable.append((tau, sigma, v))
                    continue
                build.records.append(JoinRecord(tau, sigma, (j.shift, v), j.junction, j.output))
    return build


def _strip_candidates(poly: Polygon, params: RgjParams):
    k, l = params.k, params.l
    gj = [p for p in join_plaquettes(poly) if is_global(poly, p)]
    rest = [p for p in join_plaquettes(poly) if p not in gj]
    for p in gj + rest:
        a, b, _ = split(poly, p)
        left_mod, right_mod = (a, b) if p.left in a.edges else (b, a)
        if left_mod.length != k + 8 or right_mod.length != l + 8:
            continue
        jx, jy = p.anchor
        tau = _polygon_or_none(
            _toggle(left_mod.edges, [(jx - 4 + i, jy) for i in range(4)]), k
        )
        if tau is None:
            continue
        for steps in FINGER_PATHS:
            sigma = _polygon_or_none(
                _toggle(right_mod.edges, FingerShape(steps, "E").cells(p.anchor)), l
            )
            if sigma is not None:
                yield tau, sigma


def rgj_decompositions(poly: Polygon, params: RgjParams) -> list[tuple[Polygon, Polygon, Point]]:
    """Every (left, right, u) in the regulation class that joins to ``poly``.

    ``left`` and ``right`` are NE-rooted and ``u`` is the offset of ``right``
    relative to ``left``.
    """
    if poly.length != params.k + params.l + 16:
        return []
    w = params.window
    found = []
    for tau, sigma in _strip_candidates(poly, params):
        origin = tau.ne
        tau_n = tau.normalized()
        sigma_n = sigma.normalized()
        u = sub(sigma.ne, origin)
        if not (in_sap_left(tau_n) and in_sap_right(sigma_n)):
            continue
        base = tau_n.corner("ES")[1]
        if not base <= u[1] < base + w:
            continue
        j = find_madras_join(tau_n, sigma_n.translate(u))
        if j is None or j.shift != 0:
            continue
        if j.output != poly.translate((-origin[0], -origin[1])):
            continue
        item = (tau_n, sigma_n, u)
        if item not in found:
            found.append(item)
    return found


def rgj_decompose(poly: Polygon, params: RgjParams) -> tuple[Polygon, Polygon, Point]:
    found = rgj_decompositions(poly, params)
    if not found:
        raise NotRegulation("polygon is not a regulation join for these parameters")
    return found[0]


def tau_gamma(poly: Polygon, index_set: Iterable[int], rho=Fraction(1, 10)) -> set[int]:
    """Left lengths k for which ``poly`` is a regulation join."""
    out = set()
    for k in index_set:
        l = poly.length - 16 - k
        try:
            params = RgjParams(k, l, rho)
        except (InvalidParams, ConstraintViolation):
            continue
        if rgj_decompositions(poly, params):
            out.add(k)
    return out


def prefix_law(polys: Iterable[Polygon], j: int) -> dict[str, Fraction]:
    """Distribution of the first ``j`` traversal steps under the uniform law."""
    counts = Counter(p.directions[:j] for p in polys)
    total = sum(counts.values())
    return {key: Fraction(c, total) for key, c in sorted(counts.items())}
