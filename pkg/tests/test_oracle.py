import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pawncount.errors import GuardExceeded, InvalidK, MatrixFormatError
from pawncount.oracle import (L_SET, M_SET, U_SET, BinaryMatrix, BoardDims,
                              ForbiddenPatternSet, count_by_enumeration,
                              enumerate_legal, find_violation, matrix_avoids,
                              uk_set)


def naive_avoids(mat: BinaryMatrix, pats: ForbiddenPatternSet) -> bool:
    """Reference checker: plain nested loops over every placement."""
    m, n = mat.dims.m, mat.dims.n
    cell = mat.cell
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            if not cell(i, j):
                continue
            if pats.diag_down and i < m and j < n and cell(i + 1, j + 1):
                return False
            if pats.diag_up and i > 1 and j < n and cell(i - 1, j + 1):
                return False
            if pats.horiz_pair and j < n and cell(i, j + 1):
                return False
            if pats.vert_pair and i < m and cell(i + 1, j):
                return False
            k = pats.diag_run_k
            if k is not None and i + k - 1 <= m and j + k - 1 <= n:
                if all(cell(i + t, j + t) for t in range(k)):
                    return False
    return True


class TestPatternSet:
    def test_presets(self):
        assert M_SET.diag_down and M_SET.diag_up
        assert not (M_SET.horiz_pair or M_SET.vert_pair)
        assert U_SET == ForbiddenPatternSet(diag_down=True)
        assert L_SET.horiz_pair and L_SET.vert_pair

    def test_empty_set_rejected(self):
        with pytest.raises(ValueError):
            ForbiddenPatternSet()

    def test_bad_run_length(self):
        with pytest.raises(InvalidK):
            uk_set(1)

    def test_run_excludes_diag_down(self):
        with pytest.raises(ValueError):
            ForbiddenPatternSet(diag_down=True, diag_run_k=3)


class TestMatrixAvoids:
    def test_worked_3x6_board_is_legal(self):
        mat = BinaryMatrix.from_rows(["101101", "100000", "001011"])
        assert matrix_avoids(mat, M_SET)

    @pytest.mark.parametrize("pats", [M_SET, U_SET, L_SET, uk_set(3)])
    @pytest.mark.parametrize("dims", [(1, 1), (3, 4), (5, 2)])
    def test_all_zero_always_legal(self, dims, pats):
        m, n = dims
        assert matrix_avoids(BinaryMatrix(BoardDims(m, n), (0,) * (m * n)), pats)

    def test_down_diagonal_pair_detected(self):
        mat = BinaryMatrix.from_rows(["10", "01"])
        assert not matrix_avoids(mat, M_SET)
        assert find_violation(mat, M_SET) == ("diag_down", (1, 1))

    def test_run_of_three_cannot_fit_on_2x2(self):
        mat = BinaryMatrix.from_rows(["11", "11"])
        assert matrix_avoids(mat, uk_set(3))
        assert not matrix_avoids(mat, uk_set(2))

    def test_up_diagonal(self):
        mat = BinaryMatrix.from_rows(["01", "10"])
        assert not matrix_avoids(mat, M_SET)
        assert matrix_avoids(mat, U_SET)

    @settings(max_examples=300, deadline=None)
    @given(st.data())
    def test_matches_naive_reference(self, data):
        m = data.draw(st.integers(1, 4), label="m")
        n = data.draw(st.integers(1, 4), label="n")
        bits = data.draw(st.integers(0, 2 ** (m * n) - 1), label="bits")
        pats = data.draw(st.sampled_from(
            [M_SET, U_SET, L_SET, uk_set(2), uk_set(3),
             ForbiddenPatternSet(diag_up=True),
             ForbiddenPatternSet(horiz_pair=True, vert_pair=True)]),
            label="pats")
        mat = BinaryMatrix.from_packed(m, n, bits)
        assert matrix_avoids(mat, pats) == naive_avoids(mat, pats)


class TestCounting:
    @pytest.mark.parametrize("dims,pats,expected", [
        ((1, 1), M_SET, 2),
        ((2, 2), M_SET, 9),    # 16 - 4 - 4 + 1 by inclusion-exclusion
        ((2, 2), U_SET, 12),   # 16 minus the 4 matrices with the down pair
        ((2, 2), L_SET, 5),    # empty plus four singletons
        ((3, 6), M_SET, 9025),  # = t_3^2, the same square the 6-row formula hits
    ])
    def test_known_counts(self, dims, pats, expected):
        assert count_by_enumeration(*dims, pats) == expected

    def test_empty_board_counts_one(self):
        assert count_by_enumeration(0, 5, M_SET) == 1
        assert count_by_enumeration(7, 0, L_SET) == 1
        assert count_by_enumeration(0, 0, U_SET) == 1

    def test_guard(self):
        with pytest.raises(GuardExceeded):
            count_by_enumeration(6, 6, M_SET)
        # configurable
        assert count_by_enumeration(2, 2, M_SET, guard=4) == 9
        with pytest.raises(GuardExceeded):
            count_by_enumeration(2, 2, M_SET, guard=3)

    def test_transpose_symmetry(self):
        for m, n in [(2, 3), (3, 4), (2, 5), (4, 4)]:
            assert (count_by_enumeration(m, n, M_SET)
                    == count_by_enumeration(n, m, M_SET))

    def test_single_up_diagonal_matches_down(self):
        up_only = ForbiddenPatternSet(diag_up=True)
        for m, n in [(2, 2), (3, 3), (2, 5), (4, 3)]:
            assert (count_by_enumeration(m, n, up_only)
                    == count_by_enumeration(m, n, U_SET))

    def test_monotone_in_columns(self):
        for m in (1, 2, 3):
            counts = [count_by_enumeration(m, n, M_SET) for n in range(6)]
            assert all(a <= b for a, b in zip(counts, counts[1:]))

    def test_sandwich(self):
        for m, n in itertools.product(range(1, 4), range(1, 4)):
            l = count_by_enumeration(m, n, L_SET)
            mid = count_by_enumeration(m, n, M_SET)
            u = count_by_enumeration(m, n, U_SET)
            assert l <= mid <= u <= 2 ** (m * n)


class TestEnumeration:
    def test_1x1_stream(self):
        assert [m.to_text() for m in enumerate_legal(1, 1, M_SET)] == ["0", "1"]

    def test_2x2_isolated_stream(self):
        mats = list(enumerate_legal(2, 2, L_SET))
        assert len(mats) == 5
        assert mats[0].cells == (0, 0, 0, 0)

    def test_lexicographic_order(self):
        packed = [m.packed for m in enumerate_legal(2, 3, M_SET)]
        assert packed == sorted(packed)

    def test_empty_board_stream(self):
        mats = list(enumerate_legal(0, 5, M_SET))
        assert len(mats) == 1
        assert mats[0].cells == ()

    def test_guard_raised_eagerly(self):
        with pytest.raises(GuardExceeded):
            enumerate_legal(6, 6, M_SET)

    @pytest.mark.parametrize("pats", [M_SET, U_SET, L_SET, uk_set(3)])
    def test_stream_length_equals_count(self, pats):
        for m, n in [(1, 4), (2, 3), (3, 3), (4, 2)]:
            assert (sum(1 for _ in enumerate_legal(m, n, pats))
                    == count_by_enumeration(m, n, pats))

    def test_every_streamed_matrix_is_legal(self):
        for mat in enumerate_legal(3, 3, M_SET):
            assert matrix_avoids(mat, M_SET)


class TestMatrixText:
    def test_roundtrip(self):
        text = "101101\n100000\n001011"
        assert BinaryMatrix.from_text(text).to_text() == text

    def test_trailing_newline_tolerated(self):
        assert BinaryMatrix.from_text("10\n01\n").dims == BoardDims(2, 2)

    def test_empty_text_is_empty_board(self):
        mat = BinaryMatrix.from_text("")
        assert mat.dims == BoardDims(0, 0)

    def test_ragged_rejected(self):
        with pytest.raises(MatrixFormatError):
            BinaryMatrix.from_text("10\n011")

    def test_non_binary_rejected(self):
        with pytest.raises(MatrixFormatError):
            BinaryMatrix.from_text("10\n0x")

    def test_blank_row_rejected(self):
        with pytest.raises(MatrixFormatError):
            BinaryMatrix.from_text("10\n\n01")

    def test_packed_roundtrip(self):
        mat = BinaryMatrix.from_rows(["101", "010"])
        assert BinaryMatrix.from_packed(2, 3, mat.packed) == mat
        assert mat.packed == 0b101010
