"""
Tests for root system and weight lattice arithmetic
"""
import pytest
from sympy import Matrix, Rational

from app.services.cartan_core import (
    Weight,
    cartan_data,
    casimir_eigenvalue,
    dominant_conjugate,
    fundamental_weight,
    is_in_positive_root_cone,
    parse_weight,
    positive_roots,
    root_order,
    simple_root_in_weight_basis,
    weight_inner_product,
    weight_sort_key,
    weyl_dimension,
    weyl_vector,
    weyl_vector_coefficients,
)
from app.services.errors import CartanError, DominanceError

ALL_TYPES = (
    [("A", n) for n in range(1, 7)]
    + [("B", n) for n in range(2, 7)]
    + [("D", n) for n in range(3, 7)]
)


class TestCartanData:
    def test_a1(self):
        cd = cartan_data("A", 1)
        assert cd.cartan_matrix == ((2,),)
        assert cd.symmetrizer == (1,)

    def test_a2(self):
        cd = cartan_data("A", 2)
        assert cd.cartan_matrix == ((2, -1), (-1, 2))
        assert cd.symmetrizer == (1, 1)

    def test_b2(self):
        cd = cartan_data("B", 2)
        assert cd.cartan_matrix == ((2, -1), (-2, 2))
        assert cd.symmetrizer == (2, 1)
        sym = Matrix.diag(*cd.symmetrizer) * cd.matrix()
        assert sym == sym.T

    def test_d4_fork(self):
        cd = cartan_data("D", 4)
        assert cd.cartan_matrix[1] == (-1, 2, -1, -1)
        assert cd.cartan_matrix[3] == (0, -1, 0, 2)

    def test_lowercase_type_accepted(self):
        assert cartan_data("b", 3).name == "B3"

    @pytest.mark.parametrize("lie_type,rank", [("C", 2), ("G", 2), ("A", 0), ("B", 1), ("D", 2)])
    def test_rejects_unsupported(self, lie_type, rank):
        with pytest.raises(CartanError):
            cartan_data(lie_type, rank)

    @pytest.mark.parametrize("lie_type,rank", ALL_TYPES)
    def test_da_inverse_reproduces_symmetrizer(self, lie_type, rank):
        cd = cartan_data(lie_type, rank)
        assert Matrix(cd.da_inverse) * cd.matrix() == Matrix.diag(*cd.symmetrizer)


class TestInnerProduct:
    def test_a1_fundamental(self):
        cd = cartan_data("A", 1)
        omega = fundamental_weight(1, cd)
        assert weight_inner_product(omega, omega, cd) == Rational(1, 2)

    def test_a2_mixed(self):
        cd = cartan_data("A", 2)
        assert weight_inner_product(fundamental_weight(1, cd), fundamental_weight(2, cd), cd) == Rational(1, 3)

    def test_zero_weight(self):
        cd = cartan_data("B", 3)
        assert weight_inner_product(Weight.zero(3), Weight((3, -1, 2)), cd) == 0

    def test_b2_short_root(self):
        cd = cartan_data("B", 2)
        alpha = simple_root_in_weight_basis(2, cd)
        assert alpha.coords == (-1, 2)
        assert weight_inner_product(alpha, alpha, cd) == 2

    def test_length_mismatch(self):
        cd = cartan_data("A", 2)
        with pytest.raises(CartanError):
            weight_inner_product(Weight((1,)), Weight((1, 0)), cd)

    @pytest.mark.parametrize("lie_type,rank", ALL_TYPES)
    def test_fundamental_weights(self, lie_type, rank):
        cd = cartan_data(lie_type, rank)
        A_inv = cd.matrix().inv()
        for i in range(1, rank + 1):
            for j in range(1, rank + 1):
                value = weight_inner_product(fundamental_weight(i, cd), fundamental_weight(j, cd), cd)
                assert value == cd.symmetrizer[i - 1] * A_inv[i - 1, j - 1]

    @pytest.mark.parametrize("lie_type,rank", ALL_TYPES)
    def test_symmetry(self, lie_type, rank):
        cd = cartan_data(lie_type, rank)
        lam = Weight(tuple((3 * k + 1) % 5 - 2 for k in range(rank)))
        mu = Weight(tuple((2 * k + 3) % 7 - 3 for k in range(rank)))
        assert weight_inner_product(lam, mu, cd) == weight_inner_product(mu, lam, cd)

    @pytest.mark.parametrize("lie_type,rank", ALL_TYPES)
    def test_coroots_pair_to_one_with_rho(self, lie_type, rank):
        cd = cartan_data(lie_type, rank)
        rho = weyl_vector(cd)
        for i in range(1, rank + 1):
            alpha = simple_root_in_weight_basis(i, cd)
            assert weight_inner_product(alpha, rho, cd) / cd.symmetrizer[i - 1] == 1

    @pytest.mark.parametrize("lie_type,rank", ALL_TYPES)
    def test_cartan_integers_recovered(self, lie_type, rank):
        cd = cartan_data(lie_type, rank)
        for i in range(1, rank + 1):
            a_i = simple_root_in_weight_basis(i, cd)
            for j in range(1, rank + 1):
                a_j = simple_root_in_weight_basis(j, cd)
                value = 2 * weight_inner_product(a_i, a_j, cd) / weight_inner_product(a_i, a_i, cd)
                assert value == cd.cartan_matrix[i - 1][j - 1]


class TestWeylVector:
    def test_rho_coords(self):
        assert weyl_vector(cartan_data("A", 1)).coords == (1,)
        assert weyl_vector(cartan_data("B", 3)).coords == (1, 1, 1)

    def test_coefficients(self):
        assert weyl_vector_coefficients(cartan_data("A", 1)) == (Rational(1, 2),)
        assert weyl_vector_coefficients(cartan_data("A", 2)) == (1, 1)
        assert weyl_vector_coefficients(cartan_data("B", 2)) == (3, 2)

    @pytest.mark.parametrize("lie_type,rank", ALL_TYPES)
    def test_coefficients_solve_transpose_system(self, lie_type, rank):
        cd = cartan_data(lie_type, rank)
        b = Matrix(weyl_vector_coefficients(cd))
        assert cd.matrix().T * b == Matrix(cd.symmetrizer)

    @pytest.mark.parametrize("lie_type,rank", ALL_TYPES)
    def test_coefficients_give_pairing_with_rho(self, lie_type, rank):
        cd = cartan_data(lie_type, rank)
        lam = Weight(tuple(k + 1 for k in range(rank)))
        b = weyl_vector_coefficients(cd)
        assert sum(bi * li for bi, li in zip(b, lam.coords)) == weight_inner_product(lam, weyl_vector(cd), cd)


class TestCasimir:
    def test_a1_values(self):
        cd = cartan_data("A", 1)
        assert casimir_eigenvalue(Weight((1,)), cd) == Rational(3, 2)
        assert casimir_eigenvalue(Weight((2,)), cd) == 4
        assert casimir_eigenvalue(Weight((0,)), cd) == 0

    def test_a2_vector(self):
        assert casimir_eigenvalue(Weight((1, 0)), cartan_data("A", 2)) == Rational(8, 3)

    def test_non_dominant(self):
        with pytest.raises(DominanceError):
            casimir_eigenvalue(Weight((-1,)), cartan_data("A", 1))

    @pytest.mark.parametrize("lie_type,rank", ALL_TYPES)
    def test_positive_for_nonzero(self, lie_type, rank):
        cd = cartan_data(lie_type, rank)
        for i in range(1, rank + 1):
            assert casimir_eigenvalue(fundamental_weight(i, cd), cd) > 0


class TestRootSystem:
    def test_root_order(self):
        assert root_order(cartan_data("A", 1)) == 4
        assert root_order(cartan_data("A", 2)) == 6
        assert root_order(cartan_data("B", 2)) == 2

    @pytest.mark.parametrize("lie_type,rank,count", [
        ("A", 1, 1), ("A", 2, 3), ("A", 3, 6), ("B", 2, 4), ("B", 3, 9), ("D", 4, 12), ("D", 5, 20),
    ])
    def test_positive_root_count(self, lie_type, rank, count):
        assert len(positive_roots(cartan_data(lie_type, rank))) == count

    def test_b2_positive_roots(self):
        roots = {r.coords for r in positive_roots(cartan_data("B", 2))}
        assert roots == {(2, -2), (-1, 2), (1, 0), (0, 2)}

    @pytest.mark.parametrize("lie_type,rank,coords,dim", [
        ("A", 1, (3,), 4),
        ("A", 2, (1, 0), 3),
        ("A", 2, (1, 1), 8),
        ("B", 2, (1, 0), 5),
        ("B", 2, (0, 1), 4),
        ("D", 4, (1, 0, 0, 0), 8),
    ])
    def test_weyl_dimension(self, lie_type, rank, coords, dim):
        assert weyl_dimension(Weight(coords), cartan_data(lie_type, rank)) == dim

    def test_dominant_conjugate(self):
        cd = cartan_data("A", 2)
        assert dominant_conjugate(Weight((-1, 0)), cd).coords == (0, 1)
        assert dominant_conjugate(Weight((1, 1)), cd).coords == (1, 1)

    def test_positive_root_cone(self):
        cd = cartan_data("A", 2)
        assert is_in_positive_root_cone(Weight((2, -1)), cd)
        assert is_in_positive_root_cone(Weight((1, 1)), cd)
        assert not is_in_positive_root_cone(Weight((1, 0)), cd)

    def test_sort_key_puts_highest_first(self):
        cd = cartan_data("A", 2)
        weights = [Weight((0, -1)), Weight((1, 0)), Weight((-1, 1))]
        ordered = sorted(weights, key=lambda w: weight_sort_key(w, cd))
        assert [w.coords for w in ordered] == [(1, 0), (-1, 1), (0, -1)]

    def test_parse_weight(self):
        cd = cartan_data("A", 2)
        assert parse_weight("1, 0", cd).coords == (1, 0)
        with pytest.raises(CartanError):
            parse_weight("1,x", cd)
        with pytest.raises(CartanError):
            parse_weight("1,0,0", cd)
