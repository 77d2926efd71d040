import pytest

from pawncount.decomposition import (ShapeGraph, count_independent_sets,
                                     four_row_clipped_shape,
                                     perfect_square_root, split_by_color,
                                     verify_observation)
from pawncount.errors import GuardExceeded
from pawncount.oracle import M_SET
from pawncount.transfer import count_sequence, count_via_transfer


def path_graph(length: int) -> ShapeGraph:
    """Zigzag of diagonally adjacent cells, a path with `length` vertices."""
    return ShapeGraph(tuple((1 + (i % 2), 1 + i) for i in range(length)))


class TestSplitByColor:
    def test_covers_every_cell_once(self):
        for m in range(5):
            for n in range(5):
                black, white = split_by_color(m, n)
                assert len(black.cells) + len(white.cells) == m * n
                assert not set(black.cells) & set(white.cells)

    def test_two_rows_give_two_paths(self):
        black, white = split_by_color(2, 6)
        for shape in (black, white):
            assert shape.vertex_count == 6
            assert len(shape.edges) == 5  # path

    def test_one_row_is_edgeless(self):
        black, white = split_by_color(1, 7)
        assert black.vertex_count == 4 and white.vertex_count == 3
        assert black.edges == () and white.edges == ()

    def test_5x2_gives_two_five_paths(self):
        black, white = split_by_color(5, 2)
        for shape in (black, white):
            assert shape.vertex_count == 5
            assert len(shape.edges) == 4

    def test_every_diagonal_pair_is_an_edge_in_one_shape(self):
        m, n = 4, 5
        black, white = split_by_color(m, n)
        edges = set(black.edges) | set(white.edges)
        expected = set()
        for i in range(1, m):
            for j in range(1, n + 1):
                for dj in (-1, 1):
                    if 1 <= j + dj <= n:
                        pair = tuple(sorted([(i, j), (i + 1, j + dj)]))
                        expected.add(pair)
        assert edges == expected


class TestCountIndependentSets:
    def test_edgeless(self):
        assert count_independent_sets(ShapeGraph(((1, 1), (1, 3), (1, 5)))) == 8
        assert count_independent_sets(ShapeGraph(())) == 1

    def test_path_of_five(self):
        assert count_independent_sets(path_graph(5)) == 13

    def test_path_counts_are_fibonacci(self):
        from pawncount.closedforms import fibonacci
        for length in range(9):
            assert count_independent_sets(path_graph(length)) == fibonacci(length + 1)

    def test_5x3_shapes(self):
        black, white = split_by_color(5, 3)
        assert count_independent_sets(black) == 73  # 64 + 4 + 4 + 1
        assert count_independent_sets(white) == 29

    def test_guard(self):
        big, _ = split_by_color(9, 9)
        with pytest.raises(GuardExceeded):
            count_independent_sets(big)
        assert count_independent_sets(big, guard=50) > 0

    def test_duplicate_cells_rejected(self):
        with pytest.raises(ValueError):
            ShapeGraph(((1, 1), (1, 1)))


class TestObservation:
    @pytest.mark.parametrize("m,n,black,white", [
        (3, 1, 4, 2),
        (2, 2, 3, 3),
        (4, 3, 22, 22),
    ])
    def test_spot_products(self, m, n, black, white):
        result = verify_observation(m, n)
        assert (result.black, result.white) == (black, white)
        assert result.product_ok

    def test_product_on_grid(self):
        for m in range(1, 7):
            for n in range(1, 7):
                assert verify_observation(m, n).product_ok

    def test_empty_board(self):
        result = verify_observation(0, 4)
        assert (result.black, result.white, result.total) == (1, 1, 1)
        assert result.product_ok


class TestPerfectSquare:
    def test_certificates(self):
        cert = perfect_square_root(484)
        assert cert is not None and cert.root == 22
        assert perfect_square_root(0).root == 0

    def test_non_square(self):
        assert perfect_square_root(156) is None
        assert perfect_square_root(2) is None

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            perfect_square_root(-4)

    def test_even_heights_are_squares_with_equal_colors(self):
        for m in (2, 4, 6):
            seq = count_sequence(m, 8, M_SET)
            for n in range(1, 9):
                result = verify_observation(m, n)
                assert result.black == result.white
                assert perfect_square_root(seq[n]) is not None


class TestShapeRecurrences:
    def test_three_row_interleaved(self):
        # a(n) = 3a(n-2) + b(n-1), b(n) = a(n-1) + b(n-2) on the 3-row shapes
        a = [count_independent_sets(split_by_color(3, n)[0]) for n in range(13)]
        b = [count_independent_sets(split_by_color(3, n)[1]) for n in range(13)]
        assert a[:4] == [1, 4, 5, 17]
        assert b[:4] == [1, 2, 5, 7]
        for n in range(2, 13):
            assert a[n] == 3 * a[n - 2] + b[n - 1]
            assert b[n] == a[n - 1] + b[n - 2]

    def test_four_row_with_clipped_helper(self):
        # alpha(n) = alpha(n-1) + 2 alpha(n-2) + gamma(n-1),
        # gamma(n) = gamma(n-1) + alpha(n-1)
        alpha = [count_independent_sets(split_by_color(4, n)[0])
                 for n in range(13)]
        gamma = [count_independent_sets(four_row_clipped_shape(n))
                 for n in range(13)]
        assert alpha[:6] == [1, 4, 8, 22, 52, 132]
        assert gamma[:4] == [1, 2, 6, 14]
        for n in range(2, 13):
            assert alpha[n] == alpha[n - 1] + 2 * alpha[n - 2] + gamma[n - 1]
        for n in range(1, 13):
            assert gamma[n] == gamma[n - 1] + alpha[n - 1]

    def test_four_row_colors_agree(self):
        for n in range(9):
            black, white = split_by_color(4, n)
            assert (count_independent_sets(black)
                    == count_independent_sets(white))

    def test_shape_products_square_the_count(self):
        for n in range(7):
            alpha = count_independent_sets(split_by_color(4, n)[0])
            assert alpha * alpha == count_via_transfer(4, n, M_SET)
