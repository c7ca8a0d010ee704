import pytest
from hypothesis import given
from hypothesis import strategies as st

from fusionkit.diagrams import (
    EPSILON,
    Partition,
    ShapeError,
    brute_force_shapes,
    column,
    conjugate,
    contents_column_order,
    durfee_rank_definition,
    durfee_rank_formula,
    durfee_row_terms,
    enumerate_skew_shapes,
    jacobi_trudi_count,
    nonempty_rows,
    parse_shape,
    rotate180,
    row,
    shape_from_boxes,
    skew_shape_new,
    ssyt_count,
)
from strategies import shapes_4, shapes_6

WORKED = parse_shape("9,9,9,7,7,3,3,3,3/5,5,3,3,3,3,2")


class TestConstruction:
    def test_worked_example_box_count(self):
        # sum(lam) - sum(mu) = 53 - 24
        assert WORKED.n == 29

    def test_containment(self):
        with pytest.raises(ShapeError, match="mu not contained in lambda"):
            skew_shape_new((2, 1), (2, 2))

    def test_empty(self):
        s = skew_shape_new((1,), (1,))
        assert s.is_empty and s.n == 0

    def test_partition_order(self):
        with pytest.raises(ValueError):
            Partition((1, 2))

    def test_parse(self):
        assert parse_shape("2,1") == skew_shape_new((2, 1))
        assert parse_shape("3,2/1") == skew_shape_new((3, 2), (1,))
        with pytest.raises(ShapeError):
            parse_shape("2,a")

    def test_translation_normal_form(self):
        # the same box set written with a redundant common left strip
        assert skew_shape_new((3, 3), (1, 1)) == skew_shape_new((2, 2))

    def test_str_roundtrip(self):
        for s in enumerate_skew_shapes(5, 5, 5):
            assert parse_shape(str(s)) == s


class TestContents:
    def test_section_two_example(self):
        s = skew_shape_new((5, 3, 3, 3, 3), (3, 3, 2))
        assert contents_column_order(s) == (-3, -4, -2, -3, 0, -1, -2, 3, 4)

    def test_small(self):
        assert contents_column_order(EPSILON) == (0,)
        assert contents_column_order(column(2)) == (0, -1)

    def test_empty(self):
        with pytest.raises(ShapeError, match="empty diagram"):
            contents_column_order(skew_shape_new((1,), (1,)))


class TestDurfee:
    def test_worked_example(self):
        rep = durfee_rank_definition(WORKED)
        assert (rep.rank, rep.convex_diagonal_boxes, rep.concave_diagonal_boxes, rep.ell) == (6, 9, 3, 8)
        assert durfee_rank_formula(WORKED) == 6
        assert nonempty_rows(WORKED) == 8

    @pytest.mark.parametrize(
        "shape, rank",
        [(EPSILON, 1), (skew_shape_new((3, 3, 3)), 3), (skew_shape_new((2, 2), (1,)), 1)],
    )
    def test_small(self, shape, rank):
        assert durfee_rank_definition(shape).rank == rank
        assert durfee_rank_formula(shape) == rank

    def test_empty(self):
        rep = durfee_rank_definition(skew_shape_new((1,), (1,)))
        assert (rep.rank, rep.convex_diagonal_boxes, rep.concave_diagonal_boxes) == (0, 0, 0)
        assert nonempty_rows(skew_shape_new((1,), (1,))) == 0

    @given(shapes_6)
    def test_definition_formula_symmetries(self, s):
        d = durfee_rank_definition(s).rank
        assert d >= 1
        assert durfee_rank_formula(s) == d
        assert durfee_rank_definition(conjugate(s)).rank == d
        assert durfee_rank_definition(rotate180(s)).rank == d

    @given(shapes_6)
    def test_row_decomposition(self, s):
        assert sum(a - b for a, b in durfee_row_terms(s)) == durfee_rank_definition(s).rank


class TestTransforms:
    def test_conjugate_examples(self):
        assert conjugate(skew_shape_new((3, 1))) == skew_shape_new((2, 1, 1))
        assert conjugate(EPSILON) == EPSILON
        assert conjugate(row(2)) == column(2)

    def test_rotate_examples(self):
        assert rotate180(skew_shape_new((2, 1))) == skew_shape_new((2, 2), (1,))
        assert rotate180(row(2)) == row(2)
        assert rotate180(column(2)) == column(2)

    @given(shapes_6)
    def test_involutions(self, s):
        assert conjugate(conjugate(s)) == s
        assert rotate180(rotate180(s)) == s

    @given(shapes_6)
    def test_box_sets(self, s):
        assert {(j, i) for i, j in s.boxes} == set(conjugate(s).boxes)
        assert shape_from_boxes(s.boxes) == s


class TestEnumeration:
    def test_small_counts(self):
        assert len(enumerate_skew_shapes(1, 3, 3)) == 1
        two = [s for s in enumerate_skew_shapes(2, 2, 2) if s.n == 2]
        assert sorted(two) == sorted([row(2), column(2), skew_shape_new((2, 1), (1,))])

    @pytest.mark.parametrize("b, r, c", [(3, 3, 3), (4, 3, 4), (4, 4, 4), (5, 3, 5)])
    def test_against_brute_force(self, b, r, c):
        shapes = enumerate_skew_shapes(b, r, c)
        assert len(set(shapes)) == len(shapes)
        normalized = set()
        for s in shapes:
            i0 = min(i for i, _ in s.boxes)
            j0 = min(j for _, j in s.boxes)
            normalized.add(frozenset((i - i0, j - j0) for i, j in s.boxes))
        assert normalized == brute_force_shapes(b, r, c)

    def test_deterministic(self):
        assert enumerate_skew_shapes(4, 4, 4) == enumerate_skew_shapes(4, 4, 4)

    def test_middle_empty_row(self):
        # two boxes touching only through an empty middle row
        s = skew_shape_new((2, 1, 1), (1, 1))
        assert s in enumerate_skew_shapes(2, 3, 2)


class TestSsyt:
    def test_examples(self):
        assert ssyt_count(column(2), 2) == 1
        assert ssyt_count(row(2), 2) == 3
        assert ssyt_count(skew_shape_new((2, 1)), 2) == 2

    @given(shapes_6, st.integers(1, 4))
    def test_jacobi_trudi(self, s, N):
        assert ssyt_count(s, N) == jacobi_trudi_count(s, N)

    @given(shapes_6, st.integers(1, 4))
    def test_vanishing(self, s, N):
        assert (ssyt_count(s, N) > 0) == (max(s.column_lengths()) <= N)

    @given(shapes_4)
    def test_single_letter(self, s):
        assert ssyt_count(s, 1) == (1 if max(s.column_lengths()) == 1 else 0)
