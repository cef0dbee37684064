"""Category-O bookkeeping: blocks, module identification, spectrum catalog."""

from fractions import Fraction

import pytest

from nhmf.category_o import (
    catalog,
    classify_block,
    composition_factors,
    dual_verma,
    finite,
    identify_module,
    integral_parallel_filter,
    projective,
    simple,
    trivial,
    verma,
)
from nhmf.decompose import iterate_raise
from nhmf.errors import AmbiguousModuleError, DomainError, NonEigenformError
from nhmf.generators import delta_cusp, eisenstein, eisenstein2, level1_basis
from nhmf.series import NearlyHolomorphicForm


class TestModuleClassCanonicalization:
    def test_simple_zero_is_trivial(self):
        assert simple(0) == trivial()

    def test_finite_two_is_trivial(self):
        assert finite(2) == trivial()

    def test_negative_simple_is_finite(self):
        assert simple(-2) == finite(4)
        assert finite(4).dimension == 3

    def test_irreducible_verma_is_simple(self):
        assert verma(4) == simple(4)
        assert verma(Fraction(1, 2)) == simple(Fraction(1, 2))
        assert verma(0) != simple(0)  # N(0) is reducible

    def test_projective_collapses_off_integral_blocks(self):
        assert projective(1) == simple(1)
        assert projective(Fraction(3, 2)) == simple(Fraction(3, 2))
        assert projective(5).kind == "projective"


class TestClassifyBlock:
    def test_singular_point_single_class(self):
        block = classify_block(1)
        assert block.classes == (simple(1),)
        assert block.exact_sequences == ()

    def test_integral_regular_block_has_five_classes(self):
        block = classify_block(5)
        assert set(block.classes) == {
            simple(5),
            simple(-3),
            verma(-3),
            dual_verma(-3),
            projective(5),
        }
        assert len(block.classes) == 5
        seqs = block.exact_sequences
        assert seqs[0] == (simple(5), verma(-3), simple(-3))
        assert seqs[1] == (simple(5), projective(5), verma(-3))

    def test_nonintegral_block_two_simple_vermas(self):
        block = classify_block(Fraction(1, 2))
        assert set(block.classes) == {simple(Fraction(1, 2)), simple(Fraction(3, 2))}

    def test_orbit_symmetry(self):
        for lam in (Fraction(1, 2), 3, 5, Fraction(7, 3), 1, 0, -4):
            a, b = classify_block(lam), classify_block(2 - Fraction(lam))
            assert set(a.classes) == set(b.classes)

    def test_composition_factor_consistency(self):
        for lam in (2, 3, 5, 9):
            from collections import Counter

            block = classify_block(lam)
            for sub, mid, quot in block.exact_sequences:
                assert Counter(composition_factors(mid)) == Counter(
                    composition_factors(sub) + composition_factors(quot)
                )

    def test_verma_factors(self):
        assert set(composition_factors(verma(-3))) == {simple(5), simple(-3)}
        from collections import Counter

        assert Counter(composition_factors(projective(5))) == Counter(
            [simple(5), simple(5), simple(-3)]
        )


class TestIdentifyModule:
    def test_holomorphic_forms_generate_simples(self):
        assert identify_module(eisenstein(4, 10)) == simple(4)
        assert identify_module(delta_cusp(12)) == simple(12)
        for g in level1_basis(8, 10):
            assert identify_module(g) == simple(8)

    def test_constants_generate_trivial(self):
        assert identify_module(NearlyHolomorphicForm.constant(5, 6)) == trivial()

    def test_weight_two_series_generates_dual_verma(self):
        # Lowering reaches the constants (a submodule), the quotient is L(2).
        assert identify_module(eisenstein2(10)) == dual_verma(0)

    def test_raising_stability(self):
        for w in (4, 6, 12):
            for g in level1_basis(w, 12):
                for r in (1, 2, 3):
                    assert identify_module(iterate_raise(g, r)) == simple(w)
        for r in (1, 2):
            assert identify_module(iterate_raise(eisenstein2(12), r)) == dual_verma(0)

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            identify_module(NearlyHolomorphicForm.zero(5))

    def test_non_eigenform_rejected(self):
        mixed = iterate_raise(eisenstein(4, 10), 1) + eisenstein(6, 10)
        with pytest.raises(NonEigenformError):
            identify_module(mixed)

    def test_max_steps_exceeded_is_ambiguous(self):
        f = iterate_raise(eisenstein(4, 12), 3)
        with pytest.raises(AmbiguousModuleError) as err:
            identify_module(f, max_steps=2)
        assert err.value.data["candidates"]

    def test_impure_orbit_is_ambiguous(self):
        # Weight-2 eigenform that is not a multiple of the weight-two seed:
        # scalar ratio fails on the q^1 coefficient.
        e2 = eisenstein2(8)
        fake = NearlyHolomorphicForm(
            2, 8, {key: value for key, value in e2.terms() if key != (0, 1)}
        )
        with pytest.raises((AmbiguousModuleError, NonEigenformError)):
            identify_module(fake)

    def test_free_weight_zero_seed_is_verma(self):
        f = NearlyHolomorphicForm(0, 8, {(0, 0): 1, (0, 1): 1})
        assert identify_module(f) == verma(0)


class TestCatalog:
    def test_regular_weight(self):
        doc = catalog(1, 4).to_json()
        assert doc["contains_trivial"] is False
        assert doc["pi_extension"] is None
        assert doc["space_enumeration"] is None
        [summand] = doc["summands"]
        assert summand["finite_part"]["kind"] == "induced_family"
        assert summand["finite_part"]["family"]["archimedean_parity"] == 1
        assert summand["finite_part"]["s"] == 3
        assert summand["archimedean"] == {"kind": "simple", "lambda": [4]}

    def test_odd_weight_parity(self):
        doc = catalog(2, 3).to_json()
        [summand] = doc["summands"]
        assert summand["finite_part"]["family"]["archimedean_parity"] == -1
        assert summand["archimedean"]["lambda"] == [3, 3]

    def test_weight_one_has_theta_hook(self):
        doc = catalog(1, 1).to_json()
        kinds = [s["finite_part"]["kind"] for s in doc["summands"]]
        assert kinds == ["induced_family", "space_enumeration"]
        family = doc["summands"][0]["finite_part"]["family"]
        assert family["constraints"] == ["non-quadratic", "associate-classes"]
        assert doc["space_enumeration"]["hook"] == "enumerate_definite_spaces"
        assert doc["space_enumeration"]["signature"] == [2, 0]

    def test_weight_two_degree_one_extension(self):
        doc = catalog(1, 2).to_json()
        assert doc["contains_trivial"] is True
        assert doc["pi_extension"]["sub"] == {"kind": "trivial"}
        quotient = doc["pi_extension"]["quotient"]
        assert quotient["archimedean"] == {"kind": "simple", "lambda": [2]}
        kinds = [s["finite_part"]["kind"] for s in doc["summands"]]
        assert kinds == ["induced_family", "extension"]
        assert doc["summands"][0]["finite_part"]["family"]["constraints"] == [
            "nontrivial"
        ]
        assert doc["summands"][1]["archimedean"] == {
            "kind": "dual_verma",
            "lambda": [0],
        }

    def test_weight_two_higher_degree_plain_trivial_summand(self):
        doc = catalog(2, 2).to_json()
        assert doc["contains_trivial"] is True
        assert doc["pi_extension"] is None
        kinds = [s["finite_part"]["kind"] for s in doc["summands"]]
        assert kinds == ["induced_family", "trivial"]
        assert doc["summands"][0]["finite_part"]["family"]["constraints"] == []

    def test_quotient_by_holomorphic(self):
        assert catalog(1, 4).to_json()["quotient_nearly_by_holomorphic"] == {
            "kind": "trivial_tensor_simple",
            "lambda": [2],
        }
        assert catalog(2, 4).to_json()["quotient_nearly_by_holomorphic"] == {
            "kind": "zero"
        }

    def test_trivial_summand_iff_weight_two(self):
        for d in (1, 2, 3):
            for k in (1, 2, 3, 4, 9):
                assert catalog(d, k).contains_trivial == (k == 2)

    def test_domain(self):
        with pytest.raises(DomainError):
            catalog(0, 4)
        with pytest.raises(DomainError):
            catalog(1, 0)


class TestIntegralParallelFilter:
    def test_already_parallel(self):
        assert integral_parallel_filter([3, 3]) == (True, (3, 3))

    def test_needs_flip(self):
        assert integral_parallel_filter([3, -1]) == (True, (3, 3))

    def test_not_parallel(self):
        assert integral_parallel_filter([3, 4]) == (False, None)

    def test_non_integral(self):
        assert integral_parallel_filter([Fraction(1, 2), Fraction(1, 2)]) == (
            False,
            None,
        )

    def test_flip_to_at_least_one(self):
        # (0,) flips to 2 under the dot action: representative max(0, 2) = 2.
        assert integral_parallel_filter([0]) == (True, (2,))
        assert integral_parallel_filter([Fraction(-3)]) == (True, (5,))

    def test_degree_three(self):
        assert integral_parallel_filter([4, -2, 4]) == (True, (4, 4, 4))
        assert integral_parallel_filter([4, -2, 3]) == (False, None)
