"""Deformations of Adams operations: verification, obstruction, extension."""

import random

import pytest

from lambdaring.cochain import differential, random_endomorphism, sample_tuples
from lambdaring.cohomology import compute_H1, inner_derivation
from lambdaring.deformation import (
    Deformation,
    FormalAutomorphism,
    apply_automorphism,
    check_equivalent_extensions,
    deformation_from_dict,
    deformation_to_dict,
    infinitesimal,
    make_deformation,
    normalize,
    obstruction,
    series_identity,
    series_inverse,
    series_mul,
    trivial_deformation,
    try_extend,
    verify_deformation,
)
from lambdaring.errors import (
    ConfigParseError,
    DivisibilityViolation,
    NotCoboundary,
    NotFrobeniusCompatible,
    PrefixMismatch,
)
from lambdaring.exactalg import IntMatrix
from lambdaring.rings import AdamsFamily, PrimeUniverse, preset_family


def scalar(x: int) -> IntMatrix:
    return IntMatrix.from_rows([[x]])


def random_automorphism(family, seed, order):
    rng = random.Random(f"auto:{seed}")
    coefficients = [IntMatrix.identity(family.rank)]
    for _ in range(order):
        coefficients.append(random_endomorphism(family, rng.randint(0, 10**6)))
    return FormalAutomorphism(family, coefficients)


def noncommuting_family() -> AdamsFamily:
    """Synthetic data violating generator commutation.

    Not a valid Adams family (verification reports the failure); used
    to exercise the no-extension certificate, which only needs the
    solver-side structure.
    """
    spec = preset_family("RC2", (2, 3)).ring
    return AdamsFamily(
        spec,
        PrimeUniverse((2, 3)),
        (
            (2, IntMatrix.from_rows([[1, 1], [0, 0]])),
            (3, IntMatrix.from_rows([[0, 1], [1, 0]])),
        ),
    )


class TestSeriesHelpers:
    def test_mul_truncates(self):
        a = (scalar(1), scalar(2))
        b = (scalar(1), scalar(3))
        assert series_mul(a, b, 2) == (scalar(1), scalar(5), scalar(6))
        assert series_mul(a, b, 1) == (scalar(1), scalar(5))

    def test_inverse(self):
        a = (scalar(1), scalar(2), scalar(-1))
        inv = series_inverse(a, 3)
        assert series_mul(a, inv, 3) == series_identity(1, 3)

    def test_inverse_needs_identity_head(self):
        with pytest.raises(ValueError):
            series_inverse((scalar(2),), 1)


class TestDeformationBasics:
    def test_trivial_verifies(self, each_preset):
        for order in (0, 1, 3):
            report = verify_deformation(trivial_deformation(each_preset, order))
            assert report.passed
            assert report.commuting and report.divisible
            assert report.product_law_samples > 0

    def test_scaling_series_on_integers(self, z_family):
        # psi_p deformed to p * (1 + t)^...: here 1 + p t per prime; the
        # value at 12 = 2*2*3 must be the coefficient-wise product.
        deformation = make_deformation(
            z_family, 3, {p: {1: scalar(p)} for p in (2, 3, 5)}
        )
        assert verify_deformation(deformation).passed
        assert [c[0, 0] for c in deformation.at(12)] == [1, 7, 16, 12]
        assert [c[0, 0] for c in deformation.at(1)] == [1, 0, 0, 0]

    def test_constructor_enforcements(self, rc2_family):
        gen2 = rc2_family.generator(2)
        with pytest.raises(ValueError):
            Deformation(rc2_family, 1, {2: (gen2, IntMatrix.zeros(2, 2))})
        with pytest.raises(ValueError):
            Deformation(
                rc2_family,
                1,
                {
                    2: (IntMatrix.identity(2), IntMatrix.zeros(2, 2)),
                    3: (rc2_family.generator(3), IntMatrix.zeros(2, 2)),
                    5: (rc2_family.generator(5), IntMatrix.zeros(2, 2)),
                },
            )
        with pytest.raises(DivisibilityViolation):
            make_deformation(rc2_family, 1, {2: {1: IntMatrix.identity(2)}})
        with pytest.raises(ValueError):
            make_deformation(rc2_family, 1, {2: {2: 2 * IntMatrix.identity(2)}})

    def test_equality_is_structural(self, z_family):
        a = trivial_deformation(z_family, 2)
        b = trivial_deformation(preset_family("Z", (2, 3, 5)), 2)
        assert a == b
        c = make_deformation(z_family, 2, {2: {1: scalar(2)}})
        assert a != c

    def test_infinitesimal(self, z_family):
        deformation = make_deformation(
            z_family, 2, {p: {1: scalar(2 * p)} for p in (2, 3, 5)}
        )
        spec = infinitesimal(deformation)
        for p in (2, 3, 5):
            assert spec.value(p) == scalar(2 * p)
        assert infinitesimal(trivial_deformation(z_family, 0)).is_zero

    def test_broken_commutation_reported(self):
        family = noncommuting_family()
        report = verify_deformation(trivial_deformation(family, 1))
        assert not report.passed
        assert not report.commuting
        assert any("commute" in f for f in report.failures)


class TestObstruction:
    def test_trivial_obstruction_vanishes(self, rc3_family):
        obs = obstruction(trivial_deformation(rc3_family, 2))
        for m in (2, 3, 6):
            for n in (2, 5, 10):
                assert obs.at(m, n).is_zero

    def test_obstruction_is_closed(self, each_preset):
        rng = random.Random(31)
        deformation = make_deformation(
            each_preset,
            1,
            {
                p: {1: p * random_endomorphism(each_preset, rng.randint(0, 99))}
                for p in each_preset.universe
            },
        )
        assert verify_deformation(deformation).passed
        d_obs = differential(obstruction(deformation))
        for args in sample_tuples(each_preset.universe, 3, 20, rng):
            assert d_obs.at(*args).is_zero

    def test_obstruction_values(self, z_family):
        # For the scaling deformation at order 1 the obstruction at
        # (m, n) is -(m-part coefficient) * (n-part coefficient).
        deformation = make_deformation(
            z_family, 1, {p: {1: scalar(p)} for p in (2, 3, 5)}
        )
        obs = obstruction(deformation)
        # at(6): series (1+2t)(1+3t) -> t-coefficient 5; obstruction at
        # (6, 6) is -(5 * 5).
        assert obs.at(6, 6) == scalar(-25)
        assert obs.at(2, 3) == scalar(-6)


class TestExtension:
    def test_trivial_extends(self, each_preset):
        result = try_extend(trivial_deformation(each_preset, 0), exponent_bound=2)
        assert result.succeeded
        assert result.extended.order == 1
        assert verify_deformation(result.extended).passed

    def test_scaling_deformation_extends_through_order_four(self, z_family):
        deformation = make_deformation(
            z_family, 1, {p: {1: scalar(p)} for p in (2, 3, 5)}
        )
        for target_order in (2, 3, 4):
            result = try_extend(deformation, exponent_bound=2)
            assert result.succeeded
            deformation = result.extended
            assert deformation.order == target_order
            assert verify_deformation(deformation).passed

    def test_extension_preserves_prefix(self, rc2_family):
        base = make_deformation(
            rc2_family,
            1,
            {2: {1: 2 * rc2_family.generator(2)}},
        )
        assert verify_deformation(base).passed
        result = try_extend(base)
        assert result.succeeded
        for p in (2, 3, 5):
            assert result.extended.series(p)[:2] == base.series(p)

    def test_random_valid_deformations_extend(self, each_preset):
        # Conjugates of the trivial deformation are always valid; the
        # solver must extend every one of them.
        for seed in range(5):
            auto = random_automorphism(each_preset, seed, 2)
            deformation = apply_automorphism(
                auto, trivial_deformation(each_preset, 2)
            )
            result = try_extend(deformation, exponent_bound=2)
            assert result.succeeded
            assert verify_deformation(result.extended).passed

    def test_unsolvable_system_certified(self):
        family = noncommuting_family()
        deformation = make_deformation(
            family,
            1,
            {
                2: {1: IntMatrix.from_rows([[2, 0], [0, 2]])},
                3: {1: IntMatrix.from_rows([[3, 3], [0, 0]])},
            },
        )
        result = try_extend(deformation, exponent_bound=2)
        assert not result.succeeded
        assert result.extended is None
        assert result.equations > 0

    def test_report_counts(self, z_family):
        result = try_extend(trivial_deformation(z_family, 0), exponent_bound=2)
        # box: all factored integers with exponent sum 1..2 over three
        # primes: 3 primes + 6 products = 9
        assert result.box_size == 9
        assert result.equations == result.box_size**2


class TestAutomorphisms:
    def test_constant_term_checked(self, rc2_family):
        with pytest.raises(ValueError):
            FormalAutomorphism(rc2_family, [2 * IntMatrix.identity(2)])

    def test_compatibility_checked(self, rc2_family):
        bad = IntMatrix.from_rows([[0, 0], [0, 1]])
        with pytest.raises(NotFrobeniusCompatible):
            FormalAutomorphism(rc2_family, [IntMatrix.identity(2), bad])

    def test_conjugation_preserves_validity(self, each_preset):
        for seed in range(5):
            auto = random_automorphism(each_preset, seed, 3)
            conjugated = apply_automorphism(
                auto, trivial_deformation(each_preset, 3)
            )
            assert verify_deformation(conjugated).passed

    def test_conjugated_infinitesimal_is_inner(self, rc2_family):
        u = IntMatrix.from_rows([[0, 0], [0, 2]])
        auto = FormalAutomorphism(rc2_family, [IntMatrix.identity(2), u])
        conjugated = apply_automorphism(auto, trivial_deformation(rc2_family, 2))
        assert infinitesimal(conjugated) == inner_derivation(rc2_family, u).scale(-1)

    def test_family_mismatch(self, rc2_family, rc3_family):
        auto = FormalAutomorphism(rc3_family, [IntMatrix.identity(3)])
        with pytest.raises(ValueError):
            apply_automorphism(auto, trivial_deformation(rc2_family, 1))


class TestEquivalence:
    def test_conjugate_tops_have_witness(self, rc2_family):
        base = trivial_deformation(rc2_family, 1)
        u = IntMatrix.from_rows([[0, 0], [0, 2]])
        auto = FormalAutomorphism(rc2_family, [IntMatrix.identity(2), u])
        other = apply_automorphism(auto, base)
        witness = check_equivalent_extensions(base, other)
        assert witness is not None
        for p in (2, 3, 5):
            a = rc2_family.generator(p)
            delta = other.series(p)[1] - base.series(p)[1]
            assert a @ witness - witness @ a == delta

    def test_class_shift_has_no_witness(self, z_family):
        base = trivial_deformation(z_family, 1)
        shifted = make_deformation(z_family, 1, {2: {1: scalar(2)}})
        assert check_equivalent_extensions(base, shifted) is None

    def test_prefix_mismatch(self, z_family, rc2_family):
        with pytest.raises(PrefixMismatch):
            check_equivalent_extensions(
                trivial_deformation(z_family, 1),
                trivial_deformation(rc2_family, 1),
            )
        with pytest.raises(PrefixMismatch):
            check_equivalent_extensions(
                trivial_deformation(z_family, 1),
                trivial_deformation(z_family, 2),
            )
        first = make_deformation(z_family, 2, {2: {1: scalar(2)}})
        second = make_deformation(z_family, 2, {2: {1: scalar(4)}})
        with pytest.raises(PrefixMismatch):
            check_equivalent_extensions(first, second)


class TestNormalize:
    def test_flattens_inner_level(self, rc3_family):
        auto = random_automorphism(rc3_family, 3, 1)
        conjugated = apply_automorphism(auto, trivial_deformation(rc3_family, 2))
        normalized, witness = normalize(conjugated, 1)
        for p in (2, 3, 5):
            assert normalized.series(p)[1].is_zero
        assert verify_deformation(normalized).passed

    def test_raises_on_genuine_class(self, z_family):
        result = compute_H1(z_family)
        rep = result.classes[0].derivation
        deformation = make_deformation(
            z_family, 1, {p: {1: rep.value(p)} for p in (2, 3, 5)}
        )
        with pytest.raises(NotCoboundary):
            normalize(deformation, 1)

    def test_level_bounds(self, z_family):
        deformation = trivial_deformation(z_family, 1)
        with pytest.raises(ValueError):
            normalize(deformation, 0)
        with pytest.raises(ValueError):
            normalize(deformation, 2)


class TestSerialization:
    def test_roundtrip(self, rc2_family):
        deformation = make_deformation(
            rc2_family,
            2,
            {
                2: {1: 2 * rc2_family.generator(2), 2: 4 * IntMatrix.identity(2)},
                3: {2: 3 * rc2_family.generator(3)},
            },
        )
        doc = deformation_to_dict(deformation)
        restored = deformation_from_dict(doc)
        assert restored == deformation

    def test_roundtrip_trivial(self, each_preset):
        deformation = trivial_deformation(each_preset, 2)
        doc = deformation_to_dict(deformation)
        assert doc["terms"] == {}
        assert deformation_from_dict(doc) == deformation

    def test_malformed(self):
        with pytest.raises(ConfigParseError):
            deformation_from_dict({"order": 1})
        with pytest.raises(ConfigParseError):
            deformation_from_dict(
                {
                    "family": {"rank": "x"},
                    "order": 1,
                    "terms": {},
                }
            )
