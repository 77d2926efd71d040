"""Transfer-matrix counting over column bitmask states.

A column of an m-row board is an m-bit mask whose most significant bit is
the top row, so a mask's integer value reads the column top to bottom.
Two columns may sit side by side iff no forbidden two-cell word straddles
them; iterating that relation counts boards column by column.  One step is
a subset-sum (zeta) transform followed by a gather, costing O(m * 2^m)
big-integer additions instead of O(4^m) pair tests, so the dense matrix is
only ever materialized for printing and spectra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import GuardExceeded, NonConverged
from .oracle import M_SET, ForbiddenPatternSet

DEFAULT_DENSE_GUARD = 14
DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 200_000


@dataclass(frozen=True)
class ColumnMask:
    """m-bit column state; bit (m - i) holds row i (1-based, top first)."""

    m: int
    bits: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("column height must be >= 1")
        if not 0 <= self.bits < (1 << self.m):
            raise ValueError(f"bits {self.bits} out of range for height {self.m}")

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> "ColumnMask":
        bits = 0
        for r in rows:
            bits = (bits << 1) | r
        return cls(len(rows), bits)

    def row(self, i: int) -> int:
        """Row i of the column, 1-based from the top."""
        return (self.bits >> (self.m - i)) & 1

    def __str__(self) -> str:
        return format(self.bits, f"0{self.m}b")


def _two_cell_flags(pats: ForbiddenPatternSet) -> tuple[bool, bool, bool, bool]:
    k = pats.diag_run_k
    if k is not None and k > 2:
        raise ValueError(
            "the transfer construction handles two-cell patterns only; "
            f"diagonal runs of length {k} are counted by formula or enumeration")
    return (pats.diag_down or k == 2, pats.diag_up,
            pats.horiz_pair, pats.vert_pair)


def _column_admissible(bits: int, vert_pair: bool) -> bool:
    return not (vert_pair and bits & (bits >> 1))


def is_admissible_column(v: ColumnMask, pats: ForbiddenPatternSet) -> bool:
    """Whether the column alone is legal (no vertical pair inside it)."""
    return _column_admissible(v.bits, _two_cell_flags(pats)[3])


def _blocked(w: int, flags: tuple[bool, bool, bool, bool]) -> int:
    """Bits a left neighbor of column w must avoid."""
    diag_down, diag_up, horiz, _ = flags
    b = 0
    if diag_down:
        b |= w << 1
    if diag_up:
        b |= w >> 1
    if horiz:
        b |= w
    return b


def compatible(v: ColumnMask, w: ColumnMask, pats: ForbiddenPatternSet) -> bool:
    """May column v stand immediately to the left of column w?"""
    if v.m != w.m:
        raise ValueError(f"height mismatch: {v.m} != {w.m}")
    return v.bits & _blocked(w.bits, _two_cell_flags(pats)) == 0


@dataclass(frozen=True)
class TransferMatrix:
    """Dense 0/1 adjacency over admissible columns, in mask-index order."""

    m: int
    pats: ForbiddenPatternSet
    vertices: tuple[ColumnMask, ...]
    rows: tuple[int, ...]  # rows[i] bit j: vertices[i] may precede vertices[j]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_dense(self) -> np.ndarray:
        size = self.size
        dense = np.zeros((size, size), dtype=np.float64)
        for i, bits in enumerate(self.rows):
            for j in range(size):
                if (bits >> j) & 1:
                    dense[i, j] = 1.0
        return dense

    def is_symmetric(self) -> bool:
        return all(self.entry(i, j) == self.entry(j, i)
                   for i in range(self.size) for j in range(i))

    def render(self) -> str:
        """Rows of space-separated 0/1 in mask-index order."""
        return "\n".join(
            " ".join(str(self.entry(i, j)) for j in range(self.size))
            for i in range(self.size))


def build_transfer(m: int, pats: ForbiddenPatternSet = M_SET,
                   guard: int = DEFAULT_DENSE_GUARD) -> TransferMatrix:
    """Materialize the transfer matrix for height m."""
    if m < 1:
        raise ValueError("height must be >= 1")
    if m > guard:
        raise GuardExceeded(
            f"dense transfer at height {m} needs up to 2^{m} vertices; "
            "use count_via_transfer, which never materializes the matrix",
            hint="count_via_transfer")
    flags = _two_cell_flags(pats)
    verts = [v for v in range(1 << m) if _column_admissible(v, flags[3])]
    rows = []
    for v in verts:
        bits = 0
        for j, w in enumerate(verts):
            if v & _blocked(w, flags) == 0:
                bits |= 1 << j
        rows.append(bits)
    return TransferMatrix(m, pats, tuple(ColumnMask(m, v) for v in verts),
                          tuple(rows))


def _zeta_inplace(values: list, m: int) -> None:
    """Subset-sum transform: values[s] becomes the sum over all subsets of s."""
    for b in range(m):
        bit = 1 << b
        for w in range(1 << m):
            if w & bit:
                values[w] += values[w ^ bit]


def _allowed_table(m: int, flags) -> list[int]:
    full = (1 << m) - 1
    return [full & ~_blocked(w, flags) for w in range(1 << m)]


def _initial_state(m: int, flags) -> list[int]:
    return [1 if _column_admissible(v, flags[3]) else 0 for v in range(1 << m)]


def _step(xs: list[int], m: int, flags, allowed: list[int]) -> list[int]:
    acc = list(xs)
    _zeta_inplace(acc, m)
    if flags[3]:
        return [acc[a] if _column_admissible(w, True) else 0
                for w, a in enumerate(allowed)]
    return [acc[a] for a in allowed]


def count_via_transfer(m: int, n: int, pats: ForbiddenPatternSet = M_SET) -> int:
    """Exact count of legal m-by-n boards via n-1 transfer steps.

    n = 0 gives 1; n = 1 gives the number of admissible columns.  Agreement
    with count_by_enumeration is what fixes the n-1 exponent.
    """
    if m < 1:
        raise ValueError("height must be >= 1 (empty boards count 1 by convention)")
    if n < 0:
        raise ValueError("column count must be >= 0")
    if n == 0:
        return 1
    flags = _two_cell_flags(pats)
    allowed = _allowed_table(m, flags)
    xs = _initial_state(m, flags)
    for _ in range(n - 1):
        xs = _step(xs, m, flags, allowed)
    return sum(xs)


def count_sequence(m: int, n_max: int, pats: ForbiddenPatternSet = M_SET) -> list[int]:
    """Counts for n = 0..n_max in one sweep (index by n)."""
    if m < 1:
        raise ValueError("height must be >= 1")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    flags = _two_cell_flags(pats)
    allowed = _allowed_table(m, flags)
    xs = _initial_state(m, flags)
    out = [1]
    for n in range(1, n_max + 1):
        out.append(sum(xs))
        if n < n_max:
            xs = _step(xs, m, flags, allowed)
    return out


def dominant_eigenvalue(m: int, pats: ForbiddenPatternSet = M_SET,
                        tol: float = DEFAULT_TOL,
                        max_iter: int = DEFAULT_MAX_ITER) -> float:
    """Largest eigenvalue of the transfer operator by power iteration.

    Starts from the all-ones state over admissible columns.  The all-zero
    column is compatible with itself, so the operator is primitive and
    plain power iteration converges; successive Rayleigh estimates within
    tol relative difference stop the loop.
    """
    if m < 1:
        raise ValueError("height must be >= 1")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    flags = _two_cell_flags(pats)
    allowed = np.array(_allowed_table(m, flags), dtype=np.intp)
    admissible = np.array([_column_admissible(v, flags[3])
                           for v in range(1 << m)], dtype=bool)
    x = admissible.astype(np.float64)
    prev = None
    for _ in range(max_iter):
        acc = x.copy()
        for b in range(m):
            acc = acc.reshape(-1, 2, 1 << b)
            acc[:, 1, :] += acc[:, 0, :]
            acc = acc.reshape(-1)
        y = acc[allowed]
        if flags[3]:
            y = np.where(admissible, y, 0.0)
        estimate = float(x @ y) / float(x @ x)
        if prev is not None and abs(estimate - prev) <= tol * abs(estimate):
            return estimate
        prev = estimate
        x = y / np.max(y)
    raise NonConverged(
        f"power iteration did not converge within {max_iter} iterations "
        f"(tol={tol}); raise max_iter", iterations=max_iter)


def spectrum_small(m: int, pats: ForbiddenPatternSet = M_SET,
                   guard: int = DEFAULT_DENSE_GUARD) -> np.ndarray:
    """All eigenvalues of the dense transfer matrix, descending.

    Symmetric adjacency gets the symmetric eigensolver; otherwise the
    general solver is used and real parts are reported.
    """
    dense = build_transfer(m, pats, guard=guard).to_dense()
    if np.array_equal(dense, dense.T):
        values = np.linalg.eigvalsh(dense)
    else:
        values = np.linalg.eigvals(dense).real
    return np.sort(values)[::-1]
