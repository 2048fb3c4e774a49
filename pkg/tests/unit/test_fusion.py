"""
Tests for tensor square decompositions and isotypic projectors
"""
import pytest
from sympy import Rational

from app.services import linalg
from app.services.cartan_core import Weight, cartan_data
from app.services.errors import (
    DimensionCapError,
    DominanceError,
    MultiplicityError,
    UnsupportedConfigurationError,
)
from app.services.fusion import (
    component_for,
    decompose_general,
    isotypic_decomposition,
    sl2_tensor_square_decomposition,
    verify_projectors,
    weight_multiplicities,
)
from app.services.module_files import load_module
from app.services.qmodules import sl2_simple_module, tensor_module, tensor_power


class TestClebschGordan:
    def test_v1(self):
        decomposition = sl2_tensor_square_decomposition(1)
        assert [s.weight.coords for s in decomposition.summands] == [(2,), (0,)]
        assert decomposition.multiplicity_free

    def test_v2_dimensions(self):
        decomposition = sl2_tensor_square_decomposition(2)
        assert [s.dimension for s in decomposition.summands] == [5, 3, 1]
        assert decomposition.total_dimension == 9

    def test_negative(self):
        with pytest.raises(DominanceError):
            sl2_tensor_square_decomposition(-1)

    @pytest.mark.parametrize("m", range(0, 7))
    def test_agrees_with_characters(self, m):
        cd = cartan_data("A", 1)
        general = decompose_general(cd, Weight((m,)))
        assert general == sl2_tensor_square_decomposition(m)


class TestCharacters:
    def test_a2_adjoint(self):
        cd = cartan_data("A", 2)
        mults = weight_multiplicities(cd, Weight((1, 1)))
        assert mults[Weight((0, 0))] == 2
        assert len(mults) == 7
        assert sum(mults.values()) == 8

    def test_b2_vector(self):
        cd = cartan_data("B", 2)
        mults = weight_multiplicities(cd, Weight((1, 0)))
        assert mults[Weight((0, 0))] == 1
        assert sum(mults.values()) == 5

    def test_a2_vector_square(self):
        decomposition = decompose_general(cartan_data("A", 2), Weight((1, 0)))
        assert [s.weight.coords for s in decomposition.summands] == [(2, 0), (0, 1)]
        assert [s.dimension for s in decomposition.summands] == [6, 3]
        assert [s.casimir for s in decomposition.summands] == [Rational(20, 3), Rational(8, 3)]

    def test_trivial(self):
        decomposition = decompose_general(cartan_data("B", 3), Weight((0, 0, 0)))
        assert [s.weight.coords for s in decomposition.summands] == [(0, 0, 0)]

    def test_a2_adjoint_square_has_multiplicity(self):
        decomposition = decompose_general(cartan_data("A", 2), Weight((1, 1)))
        assert not decomposition.multiplicity_free
        assert decomposition.total_dimension == 64

    def test_cap(self):
        with pytest.raises(DimensionCapError):
            decompose_general(cartan_data("A", 2), Weight((2, 2)), cap=10)

    def test_rank_limit(self):
        with pytest.raises(UnsupportedConfigurationError):
            decompose_general(cartan_data("A", 5), Weight((1, 0, 0, 0, 0)))

    def test_non_dominant(self):
        with pytest.raises(DominanceError):
            decompose_general(cartan_data("A", 2), Weight((1, -1)))


class TestIsotypicComponents:
    def test_v1_square(self, v1):
        square = tensor_module(v1, v1)
        components = isotypic_decomposition(square)
        assert [c.weight.coords for c in components] == [(2,), (0,)]
        assert [linalg.rank(c.projector) for c in components] == [3, 1]
        assert all(c.passed for c in verify_projectors(components, square))

    def test_v2_square(self, v2):
        square = tensor_module(v2, v2)
        components = isotypic_decomposition(square)
        assert [c.dimension for c in components] == [5, 3, 1]
        assert all(c.passed for c in verify_projectors(components, square))

    def test_trivial_square(self, v0):
        components = isotypic_decomposition(tensor_module(v0, v0))
        assert len(components) == 1
        assert linalg.first_difference(components[0].projector, linalg.identity(1)) is None

    def test_mixed_product(self, v1, v2):
        components = isotypic_decomposition(tensor_module(v2, v1))
        assert [c.weight.coords for c in components] == [(3,), (1,)]

    def test_repeated_summand_rejected(self, v1):
        with pytest.raises(MultiplicityError) as exc:
            isotypic_decomposition(tensor_power(v1, 3))
        assert exc.value.coords == (1,)

    def test_component_lookup(self, v1):
        components = isotypic_decomposition(tensor_module(v1, v1))
        assert component_for(components, Weight((0,))).dimension == 1
        with pytest.raises(KeyError):
            component_for(components, Weight((4,)))

    def test_a2_components_match_characters(self, a2_vector_file):
        V = load_module(a2_vector_file)
        components = isotypic_decomposition(tensor_module(V, V))
        decomposition = decompose_general(V.cartan, Weight((1, 0)))
        assert [c.weight for c in components] == decomposition.weights()
        assert [c.dimension for c in components] == [6, 3]

    def test_larger_root_order(self):
        V = sl2_simple_module(1, root_order=8)
        assert len(isotypic_decomposition(tensor_module(V, V))) == 2
