import math

from hypothesis import given
from hypothesis import strategies as st

from nubots import grid

points = st.tuples(st.integers(-50, 50), st.integers(-50, 50))


def test_direction_ring_is_counterclockwise():
    assert grid.DIRECTIONS == ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))
    for i, u in enumerate(grid.DIRECTIONS):
        assert grid.rotate_ccw(u) == grid.DIRECTIONS[(i + 1) % 6]
        assert grid.rotate_cw(u) == grid.DIRECTIONS[(i - 1) % 6]


def test_direction_names_round_trip():
    for name, u in grid.NAMED_DIRECTIONS.items():
        assert grid.DIRECTION_NAMES[u] == name
    assert grid.NAMED_DIRECTIONS["+x"] == (1, 0)
    assert grid.NAMED_DIRECTIONS["+y"] == (0, 1)
    assert grid.NAMED_DIRECTIONS["+w"] == (-1, 1)


def test_w_axis_is_y_minus_x():
    assert grid.W == grid.sub(grid.Y, grid.X)


@given(points, points)
def test_distance_symmetric_and_definite(a, b):
    assert grid.hex_distance(a, b) == grid.hex_distance(b, a)
    assert (grid.hex_distance(a, b) == 0) == (a == b)


@given(points, points, points)
def test_distance_triangle_inequality(a, b, c):
    assert grid.hex_distance(a, c) <= grid.hex_distance(a, b) + grid.hex_distance(b, c)


@given(points)
def test_neighbors_are_exactly_distance_one(p):
    ns = list(grid.neighbors(p))
    assert len(ns) == 6 and len(set(ns)) == 6
    for q in ns:
        assert grid.hex_distance(p, q) == 1
        assert grid.are_adjacent(p, q)
    assert not grid.are_adjacent(p, p)


@given(points, points)
def test_adjacency_matches_distance(a, b):
    assert grid.are_adjacent(a, b) == (grid.hex_distance(a, b) == 1)


@given(st.sampled_from(grid.DIRECTIONS))
def test_rotations_invert_and_cycle(u):
    assert grid.rotate_cw(grid.rotate_ccw(u)) == u
    v = u
    for _ in range(6):
        v = grid.rotate_cw(v)
    assert v == u


@given(st.sampled_from(grid.DIRECTIONS))
def test_adjacent_directions_are_the_two_rotations(u):
    assert set(grid.adjacent_directions(u)) == {grid.rotate_cw(u), grid.rotate_ccw(u)}
    for v in grid.adjacent_directions(u):
        assert grid.hex_distance(u, v) == 1


@given(points, points)
def test_direction_between_adjacent_points(a, b):
    if grid.are_adjacent(a, b):
        u = grid.direction_between(a, b)
        assert grid.add(a, u) == b
        assert grid.is_direction(u)


@given(points, st.sampled_from(grid.DIRECTIONS))
def test_cartesian_embedding_is_unit_length(p, u):
    ax, ay = grid.to_cartesian(p)
    bx, by = grid.to_cartesian(grid.add(p, u))
    assert math.isclose(math.hypot(bx - ax, by - ay), 1.0, rel_tol=1e-9)
