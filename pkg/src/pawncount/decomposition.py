"""Black/white cell decomposition and independent-set counting on shapes.

Diagonal attacks never cross cell colors, so the count of legal pawn
placements on a board factors into the product of independent-placement
counts on its black and white cell shapes.  Shapes are column-banded
(edges only join adjacent columns), which a column-profile sweep exploits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .errors import GuardExceeded
from .oracle import M_SET, BoardDims
from .transfer import count_via_transfer

DEFAULT_SHAPE_GUARD = 40

Cell = tuple[int, int]


@dataclass(frozen=True)
class ShapeGraph:
    """Cells at 1-based (row, col) positions, with edges at diagonal adjacency."""

    cells: tuple[Cell, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.cells))
        if len(set(ordered)) != len(ordered):
            raise ValueError("duplicate cells")
        object.__setattr__(self, "cells", ordered)

    @property
    def vertex_count(self) -> int:
        return len(self.cells)

    @cached_property
    def edges(self) -> tuple[tuple[Cell, Cell], ...]:
        """Pairs of cells with |dr| == |dc| == 1, each listed once."""
        present = set(self.cells)
        out = []
        for (r, c) in self.cells:
            for dc in (-1, 1):
                other = (r + 1, c + dc)
                if other in present:
                    out.append(((r, c), other) if (r, c) < other else (other, (r, c)))
        return tuple(sorted(out))

    def _columns(self) -> list[tuple[int, list[int]]]:
        by_col: dict[int, list[int]] = {}
        for (r, c) in self.cells:
            by_col.setdefault(c, []).append(r)
        return sorted((c, sorted(rows)) for c, rows in by_col.items())


def split_by_color(m: int, n: int) -> tuple[ShapeGraph, ShapeGraph]:
    """Black and white shapes of an m-by-n board; (i, j) is black iff i+j even.

    Together they cover every cell once, and every diagonally adjacent cell
    pair becomes an edge in exactly one of the two.
    """
    dims = BoardDims(m, n)
    black = []
    white = []
    for i in range(1, dims.m + 1):
        for j in range(1, dims.n + 1):
            (black if (i + j) % 2 == 0 else white).append((i, j))
    return ShapeGraph(tuple(black)), ShapeGraph(tuple(white))


def count_independent_sets(shape: ShapeGraph,
                           guard: int = DEFAULT_SHAPE_GUARD) -> int:
    """Exact number of independent sets (the empty set included).

    Column-profile dynamic program: cells never conflict inside a column
    (edges are diagonal), so states are subsets of one column's cells.
    """
    if shape.vertex_count > guard:
        raise GuardExceeded(
            f"shape has {shape.vertex_count} cells, above the {guard}-cell guard",
            hint="count_via_transfer")
    prev_col: int | None = None
    prev_rows: list[int] = []
    dp: dict[int, int] = {0: 1}
    for col, rows in shape._columns():
        if prev_col is not None and col - prev_col == 1:
            conflicts = [
                sum(1 << idx for idx, pr in enumerate(prev_rows) if abs(pr - r) == 1)
                for r in rows
            ]
        else:
            conflicts = [0] * len(rows)
        new_dp: dict[int, int] = {}
        for subset in range(1 << len(rows)):
            blocked = 0
            for idx in range(len(rows)):
                if subset & (1 << idx):
                    blocked |= conflicts[idx]
            new_dp[subset] = sum(v for s, v in dp.items() if s & blocked == 0)
        dp = new_dp
        prev_col, prev_rows = col, rows
    return sum(dp.values())


@dataclass(frozen=True)
class ObservationResult:
    """Black/white counts for a board and whether their product matches."""

    black: int
    white: int
    total: int
    product_ok: bool


def verify_observation(m: int, n: int) -> ObservationResult:
    """Count each color shape independently and compare B*W with the
    transfer-engine count of the whole board."""
    black_shape, white_shape = split_by_color(m, n)
    black = count_independent_sets(black_shape)
    white = count_independent_sets(white_shape)
    total = 1 if m == 0 or n == 0 else count_via_transfer(m, n, M_SET)
    return ObservationResult(black, white, total, black * white == total)


@dataclass(frozen=True)
class SquareRootCertificate:
    """Exact integer square root: root * root == value."""

    value: int
    root: int

    def __post_init__(self) -> None:
        if self.root * self.root != self.value:
            raise ValueError("certificate does not check out")


def perfect_square_root(value: int) -> SquareRootCertificate | None:
    """Certificate with the exact integer root, or None if not a square."""
    if value < 0:
        raise ValueError("value must be nonnegative")
    root = math.isqrt(value)
    if root * root == value:
        return SquareRootCertificate(value, root)
    return None


def four_row_clipped_shape(n: int) -> ShapeGraph:
    """Black shape of a 4-row board with the first column clipped to its
    bottom cell; the auxiliary family in the 4-row shape recurrences."""
    if n < 0:
        raise ValueError("column count must be >= 0")
    cells: list[Cell] = []
    if n >= 1:
        cells.append((4, 1))
    for col in range(2, n + 1):
        rows = (1, 3) if col % 2 == 0 else (2, 4)
        cells.extend((r, col) for r in rows)
    return ShapeGraph(tuple(cells))
