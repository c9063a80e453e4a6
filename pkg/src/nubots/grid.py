"""Triangular grid in axial coordinates.

Points are plain ``(x, y)`` int tuples.  The six unit directions are

    +x = (1, 0)    +y = (0, 1)    +w = (-1, 1)
    -x = (-1, 0)   -y = (0, -1)   -w = (1, -1)

so that w = y - x and the neighbourhood of a point is the hexagonal ring
around it.  Rendering maps axial coordinates to Cartesian with the y axis
sheared 60 degrees from x.
"""

from __future__ import annotations

import math

Point = tuple[int, int]
Vector = tuple[int, int]

X: Vector = (1, 0)
Y: Vector = (0, 1)
W: Vector = (-1, 1)
NEG_X: Vector = (-1, 0)
NEG_Y: Vector = (0, -1)
NEG_W: Vector = (1, -1)

# Ring order: +x, +y, +w, -x, -y, -w.  Code that iterates over directions
# must use this order so candidate enumeration stays deterministic.
DIRECTIONS: tuple[Vector, ...] = (X, Y, W, NEG_X, NEG_Y, NEG_W)

DIRECTION_NAMES: dict[Vector, str] = {
    X: "+x", Y: "+y", W: "+w", NEG_X: "-x", NEG_Y: "-y", NEG_W: "-w",
}
NAMED_DIRECTIONS: dict[str, Vector] = {v: k for k, v in DIRECTION_NAMES.items()}

# Position of each direction in the hexagonal ring, counterclockwise
# starting from +x.  Adjacent ring indices are 60 degrees apart.
RING_ORDER: tuple[Vector, ...] = (X, Y, W, NEG_X, NEG_Y, NEG_W)
RING_INDEX: dict[Vector, int] = {v: i for i, v in enumerate(RING_ORDER)}


def add(p: Point, v: Vector) -> Point:
    return (p[0] + v[0], p[1] + v[1])


def sub(a: Point, b: Point) -> Vector:
    return (a[0] - b[0], a[1] - b[1])


def neg(v: Vector) -> Vector:
    return (-v[0], -v[1])


def is_direction(v: Vector) -> bool:
    return v in DIRECTION_NAMES


def neighbors(p: Point) -> list[Point]:
    """The six neighbours of p, in ring order."""
    x, y = p
    return [(x + dx, y + dy) for dx, dy in DIRECTIONS]


def hex_distance(a: Point, b: Point) -> int:
    """Graph distance on the triangular grid."""
    dx = a[0] - b[0]
    dy = a[1] - b[1]
    return (abs(dx) + abs(dy) + abs(dx + dy)) // 2


def are_adjacent(a: Point, b: Point) -> bool:
    return hex_distance(a, b) == 1


def direction_between(a: Point, b: Point) -> Vector:
    """The unit direction from a to its neighbour b.

    Raises ValueError when b is not adjacent to a.
    """
    v = sub(b, a)
    if v not in DIRECTION_NAMES:
        raise ValueError(f"{b} is not adjacent to {a}")
    return v


def rotate_cw(v: Vector) -> Vector:
    """Rotate a direction 60 degrees clockwise (+y -> +x -> -w -> ...)."""
    return RING_ORDER[(RING_INDEX[v] - 1) % 6]


def rotate_ccw(v: Vector) -> Vector:
    """Rotate a direction 60 degrees counterclockwise (+x -> +y -> ...)."""
    return RING_ORDER[(RING_INDEX[v] + 1) % 6]


def adjacent_directions(v: Vector) -> tuple[Vector, Vector]:
    """The two unit directions at hex distance 1 from direction v.

    These are exactly the legal target offsets u' of a movement rule with
    source offset u = v.
    """
    return (rotate_cw(v), rotate_ccw(v))


def to_cartesian(p: Point) -> tuple[float, float]:
    """Axial -> Cartesian, unit edge length (for rendering)."""
    x, y = p
    return (x + 0.5 * y, y * math.sqrt(3.0) / 2.0)
