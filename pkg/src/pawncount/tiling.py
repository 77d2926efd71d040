"""Square tilings (1x1 and 2x2 tiles) of rectangles and the matrix bijection.

A tiling is stored as its set of 2x2 anchors (top-left cells); all other
cells are 1x1 tiles.  Placing a 2x2 tile with its top-left corner on every
1 of a fully-isolated matrix, then trimming the last row and column, is a
bijection between the isolated m-by-n matrices and tilings of the
(m+1)-by-(n+1) board.  The tiling counter here is a broken-profile sweep,
implemented independently of the transfer engine so the two routes act as
genuine cross-checks.
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import GuardExceeded, IllegalMatrix, InvalidTiling
from .oracle import L_SET, BinaryMatrix, BoardDims, find_violation, matrix_avoids

DEFAULT_TILING_GUARD = 30

Anchor = tuple[int, int]


@dataclass(frozen=True)
class Tiling:
    """Board with 2x2 tiles at ``anchors`` (1-based top-left cells) and 1x1
    tiles everywhere else; anchors are kept sorted row-major."""

    rows: int
    cols: int
    anchors: tuple[Anchor, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("dimensions must be nonnegative")
        ordered = tuple(sorted(self.anchors))
        object.__setattr__(self, "anchors", ordered)
        for (r, c) in ordered:
            if not (1 <= r < self.rows and 1 <= c < self.cols):
                raise InvalidTiling(
                    f"anchor ({r},{c}) leaves the {self.rows}x{self.cols} board",
                    position=(r, c))
        for idx, (r, c) in enumerate(ordered):
            for (r2, c2) in ordered[idx + 1:]:
                if r2 - r > 1:
                    break
                if abs(r2 - r) <= 1 and abs(c2 - c) <= 1:
                    raise InvalidTiling(
                        f"anchors ({r},{c}) and ({r2},{c2}) overlap",
                        position=(r2, c2))


def theta_forward(mat: BinaryMatrix) -> Tiling:
    """Map a fully-isolated matrix to the tiling of the board one row and
    one column larger, with a 2x2 tile anchored on every 1."""
    violation = None if matrix_avoids(mat, L_SET) else find_violation(mat, L_SET)
    if violation is not None:
        pattern, pos = violation
        raise IllegalMatrix(
            f"matrix has forbidden {pattern} at {pos}; only fully-isolated "
            "matrices map to tilings", position=pos, pattern=pattern)
    m, n = mat.dims.m, mat.dims.n
    anchors = tuple((i, j)
                    for i in range(1, m + 1) for j in range(1, n + 1)
                    if mat.cell(i, j))
    return Tiling(m + 1, n + 1, anchors)


def theta_inverse(tiling: Tiling) -> BinaryMatrix:
    """Map a tiling back to the matrix with a 1 on every 2x2 anchor, after
    trimming the last row and column.  Inverse of theta_forward."""
    m, n = tiling.rows - 1, tiling.cols - 1
    cells = [0] * (m * n)
    for (r, c) in tiling.anchors:
        cells[(r - 1) * n + (c - 1)] = 1
    return BinaryMatrix(BoardDims(m, n), tuple(cells))


@lru_cache(maxsize=32)
def _pair_union_masks(rows: int) -> tuple[int, ...]:
    """Masks decomposable into disjoint adjacent-bit pairs (all runs of 1s
    have even length); each is a possible 2x2 coverage of one column."""
    out = []
    for mask in range(1 << rows):
        run = 0
        ok = True
        for b in range(rows + 1):
            if b < rows and mask & (1 << b):
                run += 1
            else:
                if run % 2:
                    ok = False
                    break
                run = 0
        if ok:
            out.append(mask)
    return tuple(out)


def _profile_count(rows: int, cols: int) -> int:
    full = (1 << rows) - 1
    coverage_masks = _pair_union_masks(rows)
    dp = [0] * (1 << rows)
    dp[0] = 1
    for _ in range(cols):
        acc = dp[:]
        for b in range(rows):
            bit = 1 << b
            for w in range(1 << rows):
                if w & bit:
                    acc[w] += acc[w ^ bit]
        ndp = [0] * (1 << rows)
        for mask in coverage_masks:
            ndp[mask] = acc[full ^ mask]
        dp = ndp
    return dp[0]


def count_tilings(rows: int, cols: int) -> int:
    """Exact number of tilings of a rows-by-cols board with 1x1 and 2x2
    squares, via a column profile of 2x2 protrusions.

    The profile runs over the smaller dimension (counts are symmetric)."""
    if rows < 0 or cols < 0:
        raise ValueError("dimensions must be nonnegative")
    if rows == 0 or cols == 0:
        return 1
    if rows <= cols:
        return _profile_count(rows, cols)
    return _profile_count(cols, rows)


def enumerate_tilings(rows: int, cols: int,
                      guard: int = DEFAULT_TILING_GUARD) -> Iterator[Tiling]:
    """Yield every tiling exactly once; stream length equals count_tilings."""
    if rows < 0 or cols < 0:
        raise ValueError("dimensions must be nonnegative")
    if rows * cols > guard:
        raise GuardExceeded(
            f"enumerating tilings of {rows}x{cols} exceeds the {guard}-cell "
            "guard; count_tilings handles larger boards", hint="count_tilings")
    return _walk_tilings(rows, cols)


def _walk_tilings(rows: int, cols: int) -> Iterator[Tiling]:
    if rows == 0 or cols == 0:
        yield Tiling(rows, cols, ())
        return

    anchors: list[Anchor] = []

    def anchor_row_sets(blocked: int, start: int) -> Iterator[list[int]]:
        yield []
        for r in range(start, rows - 1):
            if not (blocked >> r) & 3:
                for rest in anchor_row_sets(blocked | (3 << r), r + 2):
                    yield [r] + rest

    def walk(col: int, blocked: int) -> Iterator[Tiling]:
        if col > cols:
            yield Tiling(rows, cols, tuple(anchors))
            return
        if col == cols:
            choices: Iterator[list[int]] = iter([[]])
        else:
            choices = anchor_row_sets(blocked, 0)
        for row_set in choices:
            coverage = 0
            for r in row_set:
                coverage |= 3 << r
                anchors.append((r + 1, col))
            yield from walk(col + 1, coverage)
            for _ in row_set:
                anchors.pop()

    yield from walk(1, 0)


def render_ascii(tiling: Tiling) -> str:
    """Draw each 2x2 tile as a block of one letter and each 1x1 as '.'."""
    if tiling.rows == 0 or tiling.cols == 0:
        return ""
    grid = [["."] * tiling.cols for _ in range(tiling.rows)]
    for idx, (r, c) in enumerate(tiling.anchors):
        ch = string.ascii_lowercase[idx % 26]
        for dr in (0, 1):
            for dc in (0, 1):
                grid[r - 1 + dr][c - 1 + dc] = ch
    return "\n".join("".join(row) for row in grid)


def tiling_to_json(tiling: Tiling) -> str:
    """Canonical JSON: {"rows": R, "cols": C, "anchors": [[r, c], ...]}
    with anchors sorted row-major."""
    return json.dumps({
        "rows": tiling.rows,
        "cols": tiling.cols,
        "anchors": [[r, c] for (r, c) in tiling.anchors],
    })


def tiling_from_json(text: str) -> Tiling:
    """Parse and validate the tiling JSON format."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidTiling(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidTiling("tiling JSON must be an object")
    try:
        rows = data["rows"]
        cols = data["cols"]
        raw_anchors = data["anchors"]
    except KeyError as exc:
        raise InvalidTiling(f"missing key {exc}") from exc
    if not isinstance(rows, int) or not isinstance(cols, int):
        raise InvalidTiling("rows and cols must be integers")
    if not isinstance(raw_anchors, list):
        raise InvalidTiling("anchors must be a list of [row, col] pairs")
    anchors = []
    for item in raw_anchors:
        if (not isinstance(item, list) or len(item) != 2
                or not all(isinstance(x, int) for x in item)):
            raise InvalidTiling(f"bad anchor entry {item!r}")
        anchors.append((item[0], item[1]))
    return Tiling(rows, cols, tuple(anchors))
