import random

import pytest
from flint import fmpq, fmpq_mat, fmpq_poly
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionkit.diagrams import EPSILON, column, enumerate_skew_shapes, row, skew_shape_new, ssyt_count
from fusionkit.fusion import c_and_order, fusion_element
from fusionkit.guards import GuardExceeded, guard_overrides
from fusionkit.linalg import MatrixRF, eye, image_basis, is_scalar_multiple_of_identity, kron, rank
from fusionkit.scalars import RationalFunction, is_integer
from fusionkit.suites import SuiteResult, intertwiner_square_checks
from fusionkit.symgroup import all_permutations, compose, transposition
from fusionkit.yangian import (
    burnside_closure_dimensions,
    burnside_irreducible,
    check_flip_proportionality,
    check_intertwining,
    check_rtt,
    check_scalar_product,
    check_single_box_factorization,
    check_unitarity,
    elementary_generators,
    flip_matrix,
    group_ring_action_matrix,
    identity_report,
    intertwiner_leading,
    irreducibility_criterion,
    leading_coefficient_on_square,
    module_space,
    perm_action_matrix,
    r_matrix,
    r_matrix_at,
    sample_rationals,
    tensor_module_generators,
    verify_identities,
)

U = fmpq_poly([0, 1])
P = flip_matrix(2, 2)
ROW2, COL2 = row(2), column(2)


def unit(i, j, N=2):
    m = fmpq_mat(N, N)
    m[i - 1, j - 1] = 1
    return m


class TestPermutationAction:
    def test_flip(self):
        assert perm_action_matrix((2, 1), 2) == P
        assert perm_action_matrix((1, 2, 3), 2) == eye(8)

    def test_homomorphism(self):
        rng = random.Random(3)
        perms = all_permutations(3)
        for _ in range(10):
            g, h = rng.choice(perms), rng.choice(perms)
            assert perm_action_matrix(compose(g, h), 2) == perm_action_matrix(g, 2) * perm_action_matrix(h, 2)

    def test_slot_convention(self):
        # (1 2) on e_1 ⊗ e_2 ⊗ e_1 swaps the first two slots
        m = perm_action_matrix(transposition(1, 2, 3), 2)
        src = 0 * 4 + 1 * 2 + 0
        dst = 1 * 4 + 0 * 2 + 0
        assert m[dst, src] == 1

    def test_group_ring_images(self):
        assert len(image_basis(group_ring_action_matrix(fusion_element(ROW2), 2))) == 3
        assert len(image_basis(group_ring_action_matrix(fusion_element(COL2), 2))) == 1

    def test_guard(self):
        with guard_overrides(ambient_dim=4), pytest.raises(GuardExceeded):
            perm_action_matrix((1, 2, 3), 2)


class TestModuleSpace:
    def test_examples(self):
        assert module_space(COL2, 2).dim == 1
        assert module_space(column(3), 2).dim == 0
        assert module_space(ROW2, 2).dim == 3

    @pytest.mark.parametrize("shape", enumerate_skew_shapes(4, 4, 4))
    @pytest.mark.parametrize("N", [2, 3])
    def test_dim_matches_ssyt(self, shape, N):
        assert module_space(shape, N).dim == ssyt_count(shape, N)

    def test_basis_is_in_image(self):
        s = skew_shape_new((2, 1))
        sp = module_space(s, 2)
        img = group_ring_action_matrix(fusion_element(s), 2)
        basis = sp.basis_matrix()
        assert rank(basis) == sp.dim == rank(img)
        stacked = fmpq_mat([list(a) + list(b) for a, b in zip(img.tolist(), basis.tolist())])
        assert rank(stacked) == sp.dim
        for v in sp.basis:
            assert len(sp.coordinates(v)) == sp.dim


class TestRMatrix:
    def test_epsilon(self):
        expected = MatrixRF([[1 if i == j else 0 for j in range(4)] for i in range(4)]) - MatrixRF(
            [[RationalFunction(fmpq_poly([int(P[i, j])]), U) for j in range(4)] for i in range(4)]
        )
        assert r_matrix(EPSILON, EPSILON, 2) == expected

    def test_epsilon_unitarity(self):
        for u in (fmpq(3), fmpq(5, 2)):
            prod = r_matrix_at(EPSILON, EPSILON, 2, u) * r_matrix_at(EPSILON, EPSILON, 2, -u)
            assert prod == eye(4) * (1 - 1 / u**2)

    def test_pole(self):
        with pytest.raises(ZeroDivisionError):
            r_matrix_at(EPSILON, EPSILON, 2, 0)

    @pytest.mark.parametrize("w, w2", [(ROW2, EPSILON), (EPSILON, COL2), (ROW2, COL2)])
    def test_unitarity(self, w, w2):
        assert check_unitarity(w, w2, 2, [fmpq(1, 3), fmpq(-7, 2)])

    def test_symbolic_agrees_with_pointwise(self):
        rm = r_matrix(ROW2, EPSILON, 2)
        for u in (fmpq(1, 2), fmpq(7, 3)):
            assert rm.evaluate(u) == r_matrix_at(ROW2, EPSILON, 2, u)


class TestIntertwiner:
    def test_examples(self):
        d = intertwiner_leading(EPSILON, EPSILON, 2, 0)
        assert (d.a, d.I, d.invertible) == (1, -P, True)
        d = intertwiner_leading(EPSILON, EPSILON, 2, 1)
        assert (d.a, d.I, d.invertible) == (0, eye(4) - P, False)
        d = intertwiner_leading(EPSILON, EPSILON, 2, fmpq(1, 2))
        assert (d.a, d.I, d.invertible) == (0, eye(4) - P * 2, True)

    def test_invertible_matches_determinant(self):
        for z in (-2, -1, 0, 1, 2):
            d = intertwiner_leading(ROW2, COL2, 2, z)
            assert d.invertible == (d.I.det() != 0)

    @pytest.mark.parametrize("shape", [s for s in enumerate_skew_shapes(3, 3, 3) if max(s.column_lengths()) <= 2])
    def test_square_leading_term(self, shape):
        res = SuiteResult("intertwiner")
        intertwiner_square_checks(shape, 2, res)
        assert res.failure_count == 0, res.failures

    @settings(max_examples=50)
    @given(st.integers(-20, 20), st.sampled_from([2, 3, 5, 7]), st.sampled_from([EPSILON, ROW2, COL2]), st.sampled_from([EPSILON, ROW2, COL2]))
    def test_non_integer_difference(self, p, q, w, w2):
        z = fmpq(p, q)
        if is_integer(z):
            z += fmpq(1, 2)
        d = intertwiner_leading(w, w2, 2, z)
        assert d.a == 0 and d.invertible


class TestGenerators:
    @pytest.mark.parametrize("z", [0, 2, fmpq(1, 3)])
    def test_epsilon(self, z):
        em = elementary_generators(EPSILON, 2, z, 4)
        z = fmpq(z)
        for s in range(1, 5):
            for i in (1, 2):
                for j in (1, 2):
                    expected = unit(i, j) * (z ** (s - 1)) if (s == 1 or z != 0) else fmpq_mat(2, 2)
                    assert em.generator(s, i, j) == expected

    @pytest.mark.parametrize("shape", [ROW2, COL2, skew_shape_new((2, 1)), skew_shape_new((2, 1), (1,))])
    def test_gl_relations(self, shape):
        em = elementary_generators(shape, 2, fmpq(1, 2), 1)
        E = lambda i, j: em.generator(1, i, j)  # noqa: E731
        d = em.space.dim
        zero = fmpq_mat(d, d)
        for i in (1, 2):
            for j in (1, 2):
                for k in (1, 2):
                    for l in (1, 2):
                        lhs = E(i, j) * E(k, l) - E(k, l) * E(i, j)
                        rhs = (E(i, l) if j == k else zero) - (E(k, j) if l == i else zero)
                        assert lhs == rhs

    def test_translate(self):
        a = elementary_generators(ROW2, 2, 3, 3, translate=(2, 1))
        b = elementary_generators(ROW2, 2, 2, 3)
        assert a.z == 2 and a.series == b.series

    def test_shift_covariance(self):
        # T(u) for z is T(u - z) for 0: re-expand sum_s T0_s (u-z)^{-s}
        s_max = 4
        t0 = elementary_generators(ROW2, 2, 0, s_max).series
        z = fmpq(2, 3)
        tz = elementary_generators(ROW2, 2, z, s_max).series
        from math import comb

        for s in range(1, s_max + 1):
            acc = fmpq_mat(t0[0].nrows(), t0[0].ncols())
            for t in range(1, s + 1):
                acc = acc + t0[t] * (comb(s - 1, t - 1) * z ** (s - t))
            assert acc == tz[s]

    def test_tensor_single_factor(self):
        tm = tensor_module_generators([(COL2, fmpq(1, 2))], 2, 3)
        em = elementary_generators(COL2, 2, fmpq(1, 2), 3)
        assert tm.generators == em.generator_matrices

    def test_tensor_two_boxes(self):
        z1, z2 = fmpq(1, 3), fmpq(2)
        tm = tensor_module_generators([(EPSILON, z1), (EPSILON, z2)], 2, 3)
        # (1 - P13/(z1-u))(1 - P23/(z2-u)) with T = T^[2] T^[1]
        for i in (1, 2):
            for j in (1, 2):
                E = unit(i, j)
                assert tm.generators[(1, i, j)] == kron(E, eye(2)) + kron(eye(2), E)
        g2 = tm.generators[(2, 1, 1)]
        expected = kron(unit(1, 1), eye(2)) * z1 + kron(eye(2), unit(1, 1)) * z2
        expected = expected + sum((kron(unit(1, k), unit(k, 1)) for k in (1, 2)), fmpq_mat(4, 4))
        assert g2 == expected

    def test_rtt(self):
        rng = random.Random(5)
        pairs = [tuple(sample_rationals(2, rng, avoid=[fmpq(1)])) for _ in range(3)]
        assert check_rtt(ROW2, 2, fmpq(1), pairs)

    def test_single_box_factorization(self):
        assert check_single_box_factorization(skew_shape_new((2, 1)), 2, fmpq(1, 2), [fmpq(1, 3), fmpq(9, 7)])


class TestIrreducibility:
    def test_examples(self):
        rep = irreducibility_criterion([(EPSILON, 0), (EPSILON, 1)], 2)
        assert rep.verdict == "reducible" and rep.failing_pairs == [(1, 2, 0, False)]
        assert not rep.irreducible
        assert irreducibility_criterion([(EPSILON, 0), (EPSILON, fmpq(1, 2))], 2).irreducible

    def test_burnside_examples(self):
        assert not burnside_irreducible([(EPSILON, 0), (EPSILON, 1)], 2)
        assert burnside_irreducible([(EPSILON, 0), (EPSILON, fmpq(1, 2))], 2)
        assert burnside_irreducible([(EPSILON, 5)], 2)
        assert burnside_closure_dimensions([(EPSILON, 0), (EPSILON, fmpq(1, 2))], 2)[-1] == 16

    @pytest.mark.parametrize("w", [EPSILON, ROW2, COL2])
    def test_powers(self, w):
        for k in (2, 3):
            assert irreducibility_criterion([(w, fmpq(1, 3))] * k, 2).irreducible

    def test_kwise_is_pairwise(self):
        zs = [0, 1, 2, fmpq(1, 2)]
        shapes = [EPSILON, ROW2, COL2]
        rng = random.Random(1)
        for _ in range(10):
            parts = [(rng.choice(shapes), rng.choice(zs)) for _ in range(3)]
            full = irreducibility_criterion(parts, 2).irreducible
            pair = all(irreducibility_criterion([parts[i], parts[j]], 2).irreducible for i in range(3) for j in range(i + 1, 3))
            assert full == pair

    @pytest.mark.parametrize("d", [0, 1, -1, 2, fmpq(5, 3)])
    def test_against_burnside(self, d):
        parts = [(ROW2, 0), (EPSILON, d)]
        assert irreducibility_criterion(parts, 2).irreducible == burnside_irreducible(parts, 2)

    def test_burnside_guard(self):
        with pytest.raises(GuardExceeded):
            burnside_irreducible([(ROW2, 0), (ROW2, 1), (EPSILON, 0)], 2)


class TestIdentities:
    def test_epsilon_triple(self):
        assert verify_identities(EPSILON, EPSILON, EPSILON, 2)

    def test_report_keys(self):
        rep = identity_report(ROW2, EPSILON, EPSILON, 2, samples=3, seed=2)
        assert set(rep) == {
            "unitarity", "yang_baxter", "rtt", "single_box_factorization",
            "scalar_product", "intertwining", "flip_proportionality",
        }
        assert all(rep.values())

    def test_scalar_product_may_vanish(self):
        I = intertwiner_leading(EPSILON, EPSILON, 2, 1).I
        J = intertwiner_leading(EPSILON, EPSILON, 2, -1).I
        assert is_scalar_multiple_of_identity(I * J) == (True, 0)
        assert check_scalar_product(ROW2, COL2, 2, [0, 1, -1, fmpq(1, 2)])

    def test_intertwining(self):
        assert check_intertwining(ROW2, EPSILON, 2, [(fmpq(1, 2), fmpq(-1, 2)), (fmpq(1, 3), fmpq(1, 5))])

    def test_flip_check_matches_dense(self):
        parts = [(ROW2, fmpq(1, 2)), (EPSILON, fmpq(-1, 3))]
        lead = leading_coefficient_on_square(parts, 2)
        D = 6
        flip = flip_matrix(D, D)
        c = lead[flip_matrix(D, D).tolist()[0].index(1), 0]
        assert c != 0 and lead == flip * c
        assert check_flip_proportionality([parts], 2) == (True, 1)

    def test_flip_check_skips_reducible(self):
        assert check_flip_proportionality([[(EPSILON, 0), (EPSILON, 1)]], 2) == (True, 0)
