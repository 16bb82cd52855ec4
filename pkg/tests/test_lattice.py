import pytest
from hypothesis import given, strategies as st

from conftest import walks
from sawlab.errors import (
    EmptySet,
    InvalidPolygon,
    LengthTwoExcluded,
    NonUnitStep,
    NotClosing,
    OddPolygonLength,
    RepeatedVertex,
)
from sawlab.lattice import (
    Plaquette,
    Polygon,
    Walk,
    compass_corner,
    extent,
    inverse_symmetry,
    parse_object,
    polygon_of_closing_walk,
    recompose,
    symmetry_apply,
    two_part_decompose,
)
from sawlab.surgery import is_left_long, polygons, south_east_index

SQUARE = Polygon.from_directions("WSEN")
V_DOMINO = Polygon.from_directions("WSSENN", (1, 2))


def test_walk_validation():
    assert Walk(((0, 0), (-1, 0))).length == 1
    with pytest.raises(NonUnitStep) as e:
        Walk(((0, 0), (1, 1)))
    assert e.value.index == 1
    with pytest.raises(RepeatedVertex) as e:
        Walk(((0, 0), (1, 0), (0, 0)))
    assert e.value.index == 2
    with pytest.raises(EmptySet):
        Walk(())


def test_compass_corners():
    assert compass_corner({(0, 1), (1, 1), (0, 0)}, "NE") == (1, 1)
    assert compass_corner({(1, 0), (1, 1)}, "EN") == (1, 1)
    assert compass_corner({(0, 0), (0, 1), (1, 0)}, "WS") == (0, 0)
    with pytest.raises(EmptySet):
        compass_corner([], "NE")


def test_extent():
    assert extent(SQUARE) == (1, 1)
    assert extent(V_DOMINO) == (2, 1)
    assert extent(Walk(((0, 0), (1, 0)))) == (0, 1)


def test_canonical_traversal():
    assert SQUARE.traversal == ((0, 0), (-1, 0), (-1, -1), (0, -1), (0, 0))
    assert SQUARE.directions == "WSEN"
    t = V_DOMINO.traversal
    assert V_DOMINO.ne == (1, 2)
    assert t[4] == V_DOMINO.corner("SE") == (1, 0)
    assert t[5] == (1, 1)


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_traversal_shape(n):
    for p in polygons(n):
        d = p.directions
        assert d[0] == "W" and d[-1] == "N"
        assert Polygon.from_directions(d) == p


def test_two_part_examples():
    d = two_part_decompose(Walk(((0, 0), (-1, 0))))
    assert d.apex == (0, 0)
    assert d.first.length == 1 and d.second.length == 0
    d = two_part_decompose(Walk(((0, 0), (0, -1))))
    assert d.first.length == 0 and d.second.length == 1


@given(walks())
def test_two_part_round_trip(w):
    d = two_part_decompose(w)
    assert d.first.length + d.second.length == w.length
    assert recompose(d) == w
    assert d.first.start == d.second.start == w.ne()
    if d.first.length:
        assert d.first.vertices[1] == (d.apex[0] - 1, d.apex[1])


def test_polygon_of_closing_walk():
    w = Walk(((-1, 0), (0, 0), (0, -1), (-1, -1)))
    poly, missing = polygon_of_closing_walk(w)
    assert poly.length == 4 and poly.normalized() == SQUARE
    assert missing == ((-1, -1), (-1, 0))
    with pytest.raises(LengthTwoExcluded):
        polygon_of_closing_walk(Walk(((0, 0), (1, 0))))
    with pytest.raises(NotClosing):
        polygon_of_closing_walk(Walk.from_directions("EE"))


def test_polygon_errors():
    with pytest.raises(InvalidPolygon):
        Polygon.from_directions("WSE")
    with pytest.raises(InvalidPolygon):
        Polygon(frozenset())
    with pytest.raises(InvalidPolygon):
        Polygon([((0, 0), (1, 1))])
    # two disjoint squares
    with pytest.raises(InvalidPolygon):
        Polygon(SQUARE.edges | SQUARE.translate((3, 0)).edges)
    assert issubclass(OddPolygonLength, InvalidPolygon)


def test_rot90_square():
    assert symmetry_apply(SQUARE, "rot90").normalized() == SQUARE


def test_right_long_reflects_to_left_long():
    for n in range(4, 11, 2):
        for p in polygons(n):
            if 2 * south_east_index(p) <= p.length:
                q = symmetry_apply(p, "reflect_vertical_line")
                assert is_left_long(q), p


SYMS = ["rot90", "rot180", "rot270", "reflect_x_axis", "reflect_vertical_line", "identity"]


@given(walks(), st.sampled_from(SYMS + [("translate", (3, -2))]))
def test_symmetry_inverse(w, g):
    assert symmetry_apply(symmetry_apply(w, g), inverse_symmetry(g)) == w


@given(walks(), st.sampled_from(SYMS))
def test_symmetries_preserve_length_and_extent(w, g):
    v = symmetry_apply(w, g)
    assert v.length == w.length
    h, wd = extent(w)
    assert sorted(extent(v)) == sorted((h, wd))


def test_parity_of_enumerated_objects():
    for n in range(4, 13, 2):
        assert all(p.length % 2 == 0 for p in polygons(n))


def test_parse_object():
    assert parse_object("P:1,0") == Plaquette((1, 0))
    assert parse_object("0,0:WS") == Walk.from_directions("WS")
    assert parse_object("WSEN") == SQUARE
    assert str(Walk.parse("2,-1:NN")) == "2,-1:NN"
