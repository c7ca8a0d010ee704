import pytest
from flint import fmpq, fmpq_mat, fmpq_poly, fmpz_mat
from hypothesis import given
from hypothesis import strategies as st

from fusionkit.linalg import (
    NOT_IN_SPAN,
    MatrixRF,
    algebra_closure_dimension,
    coordinates_in_basis,
    determinant,
    embed_operator,
    eye,
    image_basis,
    integer_image_basis,
    integer_rref_pivots,
    is_scalar_multiple_of_identity,
    kron,
    matrix,
    matrix_laurent_leading,
    normalized_image_basis,
    proportionality,
    rank,
    rref_rank,
)
from fusionkit.scalars import RationalFunction

U = fmpq_poly([0, 1])
small = st.integers(-3, 3)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n).map(matrix)


mats = st.integers(1, 4).flatmap(square)


def unit(i, j, n=2):
    m = fmpq_mat(n, n)
    m[i, j] = 1
    return m


class TestBasics:
    def test_rref_rank(self):
        m = matrix([[1, 2, 3], [2, 4, 6], [0, 0, 1]])
        assert rref_rank(m) == (2, [0, 2])
        assert rank(fmpq_mat(0, 3)) == 0

    def test_image_basis(self):
        m = matrix([[1, 2, 0], [1, 2, 1]])
        assert image_basis(m) == [[1, 1], [0, 1]]
        b, piv = normalized_image_basis(m)
        assert piv == [0, 1] and b == eye(2)

    def test_integer_image_basis(self):
        vecs, piv, scales = integer_image_basis(fmpz_mat([[2, 4], [1, 2], [0, 0]]))
        assert vecs == [[2, 1, 0]] and piv == [0] and scales == [2]

    def test_integer_rref_pivots(self):
        assert integer_rref_pivots(fmpz_mat([[0, 2, 4], [0, 1, 3]])) == (2, [1, 2])

    def test_determinant(self):
        assert determinant(matrix([[1, 2], [3, 4]])) == -2
        assert determinant(fmpq_mat(0, 0)) == 1
        with pytest.raises(ValueError):
            determinant(fmpq_mat(2, 3))

    def test_coordinates(self):
        basis = [[1, 0, 1], [0, 1, 1]]
        assert coordinates_in_basis([2, 3, 5], basis) == [2, 3]
        assert coordinates_in_basis([0, 0, 1], basis) is NOT_IN_SPAN
        assert not NOT_IN_SPAN
        assert coordinates_in_basis([0, 0], []) == []
        with pytest.raises(ValueError, match="dependent"):
            coordinates_in_basis([1, 1], [[1, 1], [2, 2]])

    def test_scalar_and_proportionality(self):
        assert is_scalar_multiple_of_identity(eye(3) * 5) == (True, 5)
        assert not is_scalar_multiple_of_identity(unit(0, 1))[0]
        assert proportionality(matrix([[2, 0], [0, 4]]), matrix([[1, 0], [0, 2]])) == 2
        assert proportionality(matrix([[2, 1], [0, 4]]), matrix([[1, 0], [0, 2]])) is None
        assert proportionality(matrix([[2, 0], [0, 3]]), matrix([[1, 0], [0, 2]])) is None

    def test_kron_and_embed(self):
        a, b = matrix([[1, 2], [3, 4]]), matrix([[0, 1], [1, 0]])
        k = kron(a, b)
        assert k[1, 0] == 1 and k[2, 1] == 3 and k[2, 3] == 4
        assert embed_operator(k, [2, 2], [0, 1]) == k
        assert embed_operator(a, [2, 2], [0]) == kron(a, eye(2))
        assert embed_operator(a, [2, 2], [1]) == kron(eye(2), a)
        # reversed site order conjugates by the flip
        assert embed_operator(k, [2, 2], [1, 0]) == kron(b, a)


class TestProperties:
    @given(mats)
    def test_rank_transpose(self, m):
        assert rank(m) == rank(m.transpose())

    @given(mats)
    def test_det_iff_full_rank(self, m):
        assert (determinant(m) != 0) == (rank(m) == m.nrows())

    @given(mats, st.data())
    def test_coordinates_roundtrip(self, m, data):
        basis = image_basis(m)
        coeffs = data.draw(st.lists(small, min_size=len(basis), max_size=len(basis)))
        v = [sum((c * b[i] for c, b in zip(coeffs, basis)), fmpq(0)) for i in range(m.nrows())]
        assert coordinates_in_basis(v, basis) == coeffs


class TestMatrixRF:
    def test_arithmetic_and_evaluate(self):
        m = MatrixRF([[RationalFunction(fmpq_poly([1]), U), 0], [0, 1]])
        assert (m @ MatrixRF.identity(2)) == m
        assert (m + m).evaluate(2) == matrix([[1, 0], [0, 2]])
        assert (m - m).evaluate(1) == fmpq_mat(2, 2)
        assert m.scale(U).evaluate(5) == eye(2) * 1 + matrix([[0, 0], [0, 4]])
        with pytest.raises(ValueError):
            MatrixRF([[1, 2]]) @ MatrixRF([[1, 2]])

    def test_laurent_leading(self):
        m = MatrixRF([[RationalFunction(fmpq_poly([1]), U**2), 1], [RationalFunction(fmpq_poly([3]), U**2), U]])
        lead = matrix_laurent_leading(m, 0)
        assert lead.a == 2 and lead.leading == matrix([[1, 0], [3, 0]])
        assert matrix_laurent_leading(MatrixRF([[U, 0]]), 0).a == -1
        assert matrix_laurent_leading(MatrixRF([[0, 0]]), 0).is_zero

    def test_substitute(self):
        m = MatrixRF([[U]])
        assert m.substitute_linear(2, 1).evaluate(3) == matrix([[7]])


class TestClosure:
    def test_examples(self):
        assert algebra_closure_dimension([unit(0, 1), unit(1, 0)]) == 4
        assert algebra_closure_dimension([eye(3)]) == 1
        assert algebra_closure_dimension([matrix([[1, 0], [0, 2]])]) == 2
        # upper triangular 2x2
        assert algebra_closure_dimension([unit(0, 1), unit(0, 0)]) == 3

    def test_errors(self):
        with pytest.raises(ValueError):
            algebra_closure_dimension([])
        with pytest.raises(ValueError):
            algebra_closure_dimension([eye(2), eye(3)])

    @given(st.lists(square(3), min_size=1, max_size=3), square(3))
    def test_conjugation_invariant(self, gens, p):
        if determinant(p) == 0:
            p = p + eye(3) * 10
        pinv = p.inv()
        conj = [p * g * pinv for g in gens]
        assert algebra_closure_dimension(gens) == algebra_closure_dimension(conj)
