import pytest
from flint import fmpq, fmpq_poly
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionkit.diagrams import EPSILON, ShapeError, column, conjugate, enumerate_skew_shapes, row, skew_shape_new
from fusionkit.fusion import (
    F_pair,
    FusionContext,
    c_and_order,
    check_G_unitarity,
    fusion_element,
    fusion_fraction,
    fusion_product_at,
    fusion_value_truncated,
    h_conjugate_relation,
    h_function,
    h_partition_product,
    pair_function_G,
    row_adjacent_pairs,
    same_column_adjacent,
    theorem_3_5_data,
    verify_theorem_3_5,
)
from fusionkit.guards import GuardExceeded, guard_overrides
from fusionkit.scalars import RationalFunction, laurent_leading_at
from fusionkit.suites import SuiteResult, fusion_checks, h_checks, h_factored, partition_product_factored
from fusionkit.symgroup import GroupRingElement, all_permutations, identity
from strategies import shapes_4

U = fmpq_poly([0, 1])
S12 = GroupRingElement.basis((2, 1))
ONE2 = GroupRingElement.one(2)
SHAPES_3 = enumerate_skew_shapes(3, 3, 3)


def rf(num, den=(1,)):
    return RationalFunction(fmpq_poly(list(num)), fmpq_poly(list(den)))


class TestFusionElement:
    def test_examples(self):
        assert fusion_element(EPSILON) == GroupRingElement.one(1)
        assert fusion_element(row(2)) == ONE2 + S12
        assert fusion_element(column(2)) == ONE2 - S12

    def test_column_and_row_are_symmetrizers(self):
        perms = all_permutations(3)
        sign = lambda g: (-1) ** sum(1 for i in range(3) for j in range(i + 1, 3) if g[i] > g[j])  # noqa: E731
        assert fusion_element(row(3)) == GroupRingElement(3, {g: 1 for g in perms})
        assert fusion_element(column(3)) == GroupRingElement(3, {g: sign(g) for g in perms})

    def test_text(self):
        assert str(fusion_element(column(2))) == "1·id − 1·(1 2)"

    def test_empty(self):
        with pytest.raises(ShapeError, match="empty diagram"):
            fusion_element(skew_shape_new((1,), (1,)))

    def test_guard(self):
        with guard_overrides(fusion_n=2), pytest.raises(GuardExceeded):
            fusion_element(row(3))

    @pytest.mark.parametrize("shape", enumerate_skew_shapes(4, 4, 4))
    def test_truncated_matches_reference(self, shape):
        for direction in ("column", "prime"):
            ctx = FusionContext.build(shape, direction)
            assert fusion_value_truncated(ctx) == fusion_fraction(ctx).value_at_zero()

    @given(shapes_4)
    def test_custom_direction(self, shape):
        cols = shape.column_of
        a = [3 * c * c + 1 for c in cols]
        assert fusion_element(shape, a) == fusion_element(shape)

    def test_direction_validation(self):
        s = skew_shape_new((2, 1))
        with pytest.raises(ValueError, match="constant on columns"):
            FusionContext.build(s, [1, 2, 3])
        with pytest.raises(ValueError, match="separate"):
            FusionContext.build(s, [1, 1, 1])
        with pytest.raises(ValueError, match="wrong length"):
            FusionContext.build(s, [1, 2])

    @pytest.mark.parametrize("shape", SHAPES_3)
    def test_structure_small(self, shape):
        res = SuiteResult("fusion")
        fusion_checks(shape, res)
        assert res.ok, res.failures

    def test_adjacency_helpers(self):
        s = skew_shape_new((2, 2))
        assert same_column_adjacent(s) == [1, 3]
        assert row_adjacent_pairs(s) == [(1, 3), (2, 4)]


class TestProductAt:
    def test_examples(self):
        assert fusion_product_at(EPSILON, [5]) == GroupRingElement.one(1)
        assert fusion_product_at(row(2), [0, 0]) == ONE2 + S12

    def test_singular(self):
        with pytest.raises(ZeroDivisionError, match=r"\(1,4\)"):
            fusion_product_at(skew_shape_new((2, 2)), [0, 0, 0, 0])

    def test_limit_is_value_near_origin(self):
        # for a shape without singular pairs the product is continuous at 0
        s = skew_shape_new((3, 1), (1,))
        assert fusion_product_at(s, [0, 0, 0]) == fusion_element(s)


class TestPairFunctions:
    def test_G_epsilon(self):
        G = pair_function_G(EPSILON, EPSILON)
        assert G == GroupRingElement(2, {(1, 2): rf([1]), (2, 1): rf([-1], [0, 1])}, "RF")

    def test_G_denominators(self):
        G = pair_function_G(EPSILON, column(2))
        dens = [c.den for c in G.terms.values()]
        assert any(d.degree() >= 1 for d in dens)
        assert G.coefficient_at(identity(3)).num.degree() == G.coefficient_at(identity(3)).den.degree()

    @pytest.mark.parametrize("a, b", [(a, b) for a in SHAPES_3 for b in SHAPES_3 if a.n + b.n <= 4])
    def test_orderings_and_unitarity(self, a, b):
        left = F_pair(a, b, "left")
        assert left.same_as(F_pair(a, b, "inner"))
        assert left.same_as(F_pair(a, b, "right"))
        assert check_G_unitarity(a, b)

    def test_bad_ordering(self):
        with pytest.raises(ValueError):
            F_pair(EPSILON, EPSILON, "sideways")

    def test_identity_coefficient_tends_to_one(self):
        G = pair_function_G(row(2), column(2))
        c = G.coefficient_at(identity(4))
        assert c.num.degree() == c.den.degree() and c.num.coeffs()[-1] == 1


class TestH:
    def test_examples(self):
        assert h_function(EPSILON) == rf([-1], [0, 1])
        assert h_function(row(2)) == RationalFunction(U + 2, U * (U + 1) ** 2)
        assert h_function(column(2)) == RationalFunction(U - 2, U * (U - 1) ** 2)

    def test_c(self):
        assert c_and_order(EPSILON) == (1, -1)
        assert c_and_order(row(2)) == (1, 2)
        assert c_and_order(column(2)) == (1, -2)

    def test_partition_product(self):
        assert h_partition_product(row(2)) == RationalFunction(U - 2, U)
        assert h_partition_product(EPSILON) == RationalFunction(U - 1, U)
        for s in (row(2), EPSILON):
            assert h_partition_product(s) == h_function(conjugate(s)) * RationalFunction(1 - U) ** s.n

    @given(shapes_4)
    def test_conjugate_relation(self, s):
        a, b = h_conjugate_relation(s)
        assert a == b

    @given(shapes_4)
    def test_factored_agrees(self, s):
        assert h_factored(s.contents).to_rational_function() == h_function(s)
        assert partition_product_factored(s.lam, s.mu).to_rational_function() == h_partition_product(s)

    @pytest.mark.parametrize("shape", enumerate_skew_shapes(5, 5, 5)[::7])
    def test_checks(self, shape):
        res = SuiteResult("h")
        h_checks(shape, res, symbolic=True)
        assert res.ok, res.failures


class TestLeadingTerm:
    def test_epsilon(self):
        rep = theorem_3_5_data(EPSILON)
        assert rep.ok and rep.order == -1
        assert rep.leading == GroupRingElement(2, {(2, 1): -1})

    @pytest.mark.parametrize("shape, c", [(column(2), -2), (row(2), 2)])
    def test_two_boxes(self, shape, c):
        rep = theorem_3_5_data(shape)
        assert rep.ok and rep.order == -1 and rep.c == c

    @pytest.mark.parametrize("shape", enumerate_skew_shapes(2, 2, 2) + [skew_shape_new((2, 1))])
    def test_verify(self, shape):
        assert verify_theorem_3_5(shape)
