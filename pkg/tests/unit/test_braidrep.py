"""
Tests for braid words, braid group representations and the hexagon identities
"""
import dataclasses

import pytest

from app.services import linalg
from app.services.braidrep import (
    BraidWord,
    build_representation,
    evaluate,
    place_generator,
    verify_eigenvalue_preservation,
    verify_hexagon_on_triple,
    verify_yang_baxter,
)
from app.services.errors import CertificationError, StrandMismatchError, UnsupportedConfigurationError
from app.services.qarith import q_power
from app.services.qmodules import sl2_simple_module
from app.services.ribbon_data import hexagon_braidings


@pytest.fixture(scope="module")
def rep3(braiding_v1):
    return build_representation(braiding_v1.matrix, 3, 2, 4, braiding_v1.inverse)


def same(a, b):
    return linalg.first_difference(a, b) is None


class TestBraidWord:
    def test_parse(self):
        word = BraidWord.parse("1 2 -1", 3)
        assert word.letters == (1, 2, -1)
        assert str(word) == "1 2 -1"

    def test_empty_word(self):
        assert BraidWord.parse("", 3).letters == ()

    @pytest.mark.parametrize("text", ["3", "0", "1 -3", "a b"])
    def test_invalid_letters(self, text):
        with pytest.raises(StrandMismatchError):
            BraidWord.parse(text, 3)

    def test_too_few_strands(self):
        with pytest.raises(StrandMismatchError):
            BraidWord(1)

    def test_composition_and_inverse(self):
        word = BraidWord.parse("1 -2", 3)
        assert (word * word.inverse()).letters == (1, -2, 2, -1)
        with pytest.raises(StrandMismatchError):
            word * BraidWord.parse("1", 4)


class TestYangBaxter:
    def test_identity_satisfies(self):
        assert verify_yang_baxter(linalg.identity(4), 2, 1).passed

    def test_flip_satisfies(self):
        assert verify_yang_baxter(linalg.flip(2, 2), 2, 1).passed

    def test_generic_diagonal_fails(self):
        r = linalg.embed({(k, k): k + 1 for k in range(4)}, (4, 4), 1)
        result = verify_yang_baxter(r, 2, 1)
        assert not result.passed
        assert result.detail

    def test_shape_mismatch(self):
        assert not verify_yang_baxter(linalg.identity(3), 2, 1).passed

    def test_v2_braiding(self, braiding_v2):
        assert verify_yang_baxter(braiding_v2.matrix, 3, 4).passed


class TestRepresentation:
    def test_placement(self, braiding_v1):
        assert same(place_generator(braiding_v1.matrix, 2, 1, 2), braiding_v1.matrix)
        assert place_generator(braiding_v1.matrix, 3, 2, 2).shape == (8, 8)
        with pytest.raises(StrandMismatchError):
            place_generator(braiding_v1.matrix, 3, 3, 2)

    def test_braid_relation_words_agree(self, rep3):
        assert same(evaluate("1 2 1", rep3), evaluate("2 1 2", rep3))

    def test_inverse_letters(self, rep3):
        assert same(evaluate("1 -1", rep3), linalg.identity(8))
        assert same(evaluate("", rep3), linalg.identity(8))

    def test_homomorphism(self, rep3):
        a = BraidWord.parse("1 2", 3)
        b = BraidWord.parse("-1 2 2", 3)
        assert same(evaluate(a * b, rep3), evaluate(a, rep3).matmul(evaluate(b, rep3)))

    def test_word_on_wrong_strand_count(self, rep3):
        with pytest.raises(StrandMismatchError):
            evaluate(BraidWord.parse("1", 4), rep3)

    def test_four_strands(self, braiding_v1):
        rep = build_representation(braiding_v1.matrix, 4, 2, 4)
        assert {c.name: c.status.value for c in rep.checks} == {
            "braid_relations": "pass",
            "far_commutativity": "pass",
        }
        assert same(evaluate("1 3", rep), evaluate("3 1", rep))

    def test_two_strands_skip_relations(self, braiding_v1):
        rep = build_representation(braiding_v1.matrix, 2, 2, 4)
        assert all(c.status.value == "skipped" for c in rep.checks)

    def test_full_twist_on_components(self, braiding_v1):
        rep = build_representation(braiding_v1.matrix, 2, 2, 4)
        full_twist = evaluate("1 1", rep)
        spectrum = braiding_v1.spectrum
        for e in spectrum.entries:
            factor = e.twist * spectrum.twist ** -2
            assert same(full_twist.matmul(e.projector), linalg.scale(e.projector, factor))

    def test_non_braiding_operator_names_pair(self):
        r = linalg.embed({(k, k): k + 1 for k in range(4)}, (4, 4), 1)
        with pytest.raises(CertificationError) as exc:
            build_representation(r, 3, 2, 1)
        assert exc.value.pair == (1, 2)

    def test_eigenvalues_preserved(self, rep3, braiding_v1):
        eigenvalues = braiding_v1.spectrum.eigenvalues()
        assert verify_eigenvalue_preservation(rep3, eigenvalues).passed
        assert not verify_eigenvalue_preservation(rep3, eigenvalues[:1]).passed


class TestHexagon:
    def test_v1_triple(self, v1):
        results = verify_hexagon_on_triple(v1, v1, v1, hexagon_braidings(v1, v1, v1))
        assert [r.name for r in results] == ["hexagon_left", "hexagon_right"]
        assert all(r.passed for r in results)

    def test_mixed_triple(self, v1, v2):
        assert all(r.passed for r in verify_hexagon_on_triple(v2, v1, v1, hexagon_braidings(v2, v1, v1)))

    def test_trivial_factor(self, v0, v1):
        assert all(r.passed for r in verify_hexagon_on_triple(v0, v1, v1, hexagon_braidings(v0, v1, v1)))

    def test_perturbed_braiding_fails(self, v1):
        braidings = hexagon_braidings(v1, v1, v1)
        key = ("V(1)", "V(1)")
        braidings[key] = linalg.scale(braidings[key], q_power(1, 4))
        results = verify_hexagon_on_triple(v1, v1, v1, braidings)
        assert not any(r.passed for r in results)

    def test_missing_braiding(self, v1):
        braidings = hexagon_braidings(v1, v1, v1)
        del braidings[("V(1)", "V(1)⊗V(1)")]
        with pytest.raises(UnsupportedConfigurationError):
            verify_hexagon_on_triple(v1, v1, v1, braidings)

    def test_shared_label_for_different_modules(self, v1, v2):
        impostor = dataclasses.replace(v2, label=v1.label)
        with pytest.raises(UnsupportedConfigurationError):
            hexagon_braidings(v1, impostor, v1)
        with pytest.raises(UnsupportedConfigurationError):
            verify_hexagon_on_triple(v1, impostor, v1, hexagon_braidings(v1, v1, v1))

    def test_equal_modules_may_share_a_label(self, v1):
        copy = sl2_simple_module(1)
        assert copy is not v1
        assert all(r.passed for r in verify_hexagon_on_triple(v1, copy, v1, hexagon_braidings(v1, copy, v1)))


def test_v2_three_strands(braiding_v2):
    rep = build_representation(braiding_v2.matrix, 3, 3, 4, braiding_v2.inverse)
    assert rep.dimension == 27
    assert all(c.passed for c in rep.checks)
    assert same(evaluate("1 2 1", rep), evaluate("2 1 2", rep))
