"""Finite metric spaces: cycles, square torus grids, and lattice windows.

Every distance in this module is an exact nonnegative integer; nothing here
touches floating point.  Ball centers with half-integer coordinates are
represented in doubled coordinates (see :class:`HalfIntegerPoint`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple


class CyclePoint(NamedTuple):
    """A vertex of the n-point cycle, addressed by its index."""

    index: int


class TorusPoint(NamedTuple):
    """A vertex of the n-by-n torus grid; both coordinates reduced mod n."""

    row: int
    col: int


class LatticePoint(NamedTuple):
    """An integer point of the plane."""

    x: int
    y: int


class HalfIntegerPoint(NamedTuple):
    """A plane point with integer or half-integer coordinates, stored doubled.

    The point (x2/2, y2/2) is stored as (x2, y2), so (1, 0) means the actual
    point (1/2, 0).  Keeping both coordinates doubled lets every comparison
    stay in integer arithmetic.
    """

    x2: int
    y2: int

    @property
    def is_lattice(self) -> bool:
        return self.x2 % 2 == 0 and self.y2 % 2 == 0


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """A finite metric space addressed by vertex index 0..point_count-1.

    Torus vertices are indexed row * n + col; window vertices in lexicographic
    (x, y) order.  ``distance`` is total, symmetric, and integer-valued.
    """

    point_count: int
    distance: Callable[[int, int], int]
    label: str

    def __post_init__(self) -> None:
        if self.point_count < 1:
            raise ValueError(f"point_count must be positive, got {self.point_count}")


def _check_cycle_args(n: int, *indices: int) -> None:
    if n < 3:
        raise ValueError(f"cycle length must be at least 3, got {n}")
    for i in indices:
        if not 0 <= i < n:
            raise ValueError(f"vertex index {i} out of range for cycle of length {n}")


def cycle_distance(n: int, i: int, j: int) -> int:
    """Hop distance between vertices i and j on the n-cycle."""
    _check_cycle_args(n, i, j)
    d = abs(i - j)
    return min(d, n - d)


def torus_distance(n: int, p: TorusPoint | tuple[int, int], q: TorusPoint | tuple[int, int]) -> int:
    """L1 distance on the n-by-n torus grid: sum of two cycle distances."""
    pr, pc = p
    qr, qc = q
    return cycle_distance(n, pr, qr) + cycle_distance(n, pc, qc)


def torus_diameter(n: int) -> int:
    """Largest distance realized on the n-by-n torus grid: n for even n, n - 1 for odd."""
    if n < 3:
        raise ValueError(f"torus side must be at least 3, got {n}")
    return n if n % 2 == 0 else n - 1


def reduce_mod(n: int, p: LatticePoint | tuple[int, int]) -> TorusPoint:
    """Project a plane point onto the torus grid by reducing both coordinates mod n."""
    if n < 3:
        raise ValueError(f"torus side must be at least 3, got {n}")
    x, y = p
    return TorusPoint(x % n, y % n)


def cycle_space(n: int) -> FiniteMetricSpace:
    """The n-point cycle with hop metric; vertex index equals cycle position."""
    _check_cycle_args(n)

    def dist(i: int, j: int) -> int:
        d = abs(i - j)
        return min(d, n - d)

    return FiniteMetricSpace(point_count=n, distance=dist, label=f"cycle {n}")


def torus_space(n: int) -> FiniteMetricSpace:
    """The n-by-n torus grid with the L1 product metric; index = row * n + col."""
    if n < 3:
        raise ValueError(f"torus side must be at least 3, got {n}")

    def dist(a: int, b: int) -> int:
        ar, ac = divmod(a, n)
        br, bc = divmod(b, n)
        dr = abs(ar - br)
        dc = abs(ac - bc)
        return min(dr, n - dr) + min(dc, n - dc)

    return FiniteMetricSpace(point_count=n * n, distance=dist, label=f"torus {n}")


@dataclass(frozen=True)
class Window:
    """An axis-aligned rectangle of lattice points, both bounds inclusive.

    Vertex indices run in lexicographic (x, y) order: index 0 is
    (x_min, y_min), index 1 is (x_min, y_min + 1), and so on.
    """

    x_min: int
    x_max: int
    y_min: int
    y_max: int

    def __post_init__(self) -> None:
        if self.x_max < self.x_min or self.y_max < self.y_min:
            raise ValueError(f"empty window {self}")

    @property
    def width(self) -> int:
        return self.x_max - self.x_min + 1

    @property
    def height(self) -> int:
        return self.y_max - self.y_min + 1

    def contains(self, p: LatticePoint | tuple[int, int]) -> bool:
        x, y = p
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max

    def index(self, p: LatticePoint | tuple[int, int]) -> int:
        if not self.contains(p):
            raise ValueError(f"point {tuple(p)} outside window {self}")
        x, y = p
        return (x - self.x_min) * self.height + (y - self.y_min)

    def point(self, index: int) -> LatticePoint:
        if not 0 <= index < self.width * self.height:
            raise ValueError(f"index {index} out of range for window {self}")
        dx, dy = divmod(index, self.height)
        return LatticePoint(self.x_min + dx, self.y_min + dy)

    def points(self) -> Iterable[LatticePoint]:
        for x in range(self.x_min, self.x_max + 1):
            for y in range(self.y_min, self.y_max + 1):
                yield LatticePoint(x, y)

    @property
    def label(self) -> str:
        return f"window {self.x_min}:{self.x_max},{self.y_min}:{self.y_max}"


def window_space(window: Window) -> FiniteMetricSpace:
    """A finite chunk of the plane with the L1 metric, indexed per the window."""
    height = window.height

    def dist(a: int, b: int) -> int:
        ax, ay = divmod(a, height)
        bx, by = divmod(b, height)
        return abs(ax - bx) + abs(ay - by)

    return FiniteMetricSpace(
        point_count=window.width * window.height, distance=dist, label=window.label
    )


def closed_ball(space: FiniteMetricSpace, center: int, r: int) -> list[int]:
    """Sorted vertex indices at distance <= r from the center.

    Args:
        space: any finite metric space from this module.
        center: vertex index of the ball center.
        r: nonnegative radius.

    Returns:
        Ascending list of indices, always including the center itself.
    """
    if not 0 <= center < space.point_count:
        raise ValueError(f"center {center} out of range for {space.label}")
    if r < 0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    dist = space.distance
    return [v for v in range(space.point_count) if dist(center, v) <= r]
