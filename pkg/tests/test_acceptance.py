"""End-to-end acceptance suite.

Run with ``pytest -v tests/test_acceptance.py`` to get one pass/fail
line per criterion.  Every check here is exact integer arithmetic; the
timed criteria assert their wall-clock budgets as well.
"""

import json
import math
import random
import time

from lambdaring.cli import entry
from lambdaring.cochain import (
    differential,
    endo_cochain,
    random_cochain,
    random_endomorphism,
    run_identity_check,
    sample_tuples,
)
from lambdaring.cohomology import (
    cocycle_space_basis,
    compute_H1,
    inner_derivation,
    solve_coboundary_1,
)
from lambdaring.deformation import (
    FormalAutomorphism,
    apply_automorphism,
    check_equivalent_extensions,
    infinitesimal,
    make_deformation,
    normalize,
    obstruction,
    trivial_deformation,
    try_extend,
    verify_deformation,
)
from lambdaring.exactalg import IntMatrix
from lambdaring.rings import lambda_from_adams, preset_family
from lambdaring.symfun import compute_P, compute_P_ij

PRESETS = ("Z", "RC2", "RC3")


def binomial(m: int, i: int) -> int:
    num = 1
    for k in range(i):
        num *= m - k
    return num // math.factorial(i)


def random_verified_deformation(family, order, rng):
    """A seeded deformation: random cocycle start, extended, conjugated."""
    basis = cocycle_space_basis(family)
    combo = [rng.randint(-2, 2) for _ in basis]
    if not any(combo):
        combo[0] = 1
    spec = basis[0].scale(combo[0])
    for c, b in zip(combo[1:], basis[1:]):
        spec = spec + b.scale(c)
    deformation = make_deformation(
        family, 1, {p: {1: spec.value(p)} for p in family.universe.primes}
    )
    for _ in range(order - 1):
        outcome = try_extend(deformation, 2)
        assert outcome.succeeded
        deformation = outcome.extended
    coefficients = [IntMatrix.identity(family.rank)]
    coefficients += [
        random_endomorphism(family, rng.randint(0, 10**6)) for _ in range(order)
    ]
    conjugated = apply_automorphism(
        FormalAutomorphism(family, coefficients), deformation
    )
    assert verify_deformation(conjugated).passed
    return conjugated


def test_criterion_01_h0_of_integers_cli(capsys):
    started = time.monotonic()
    code = entry(["cohomology", "h0", "--preset", "Z", "--format", "json"])
    elapsed = time.monotonic() - started
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["results"]["group"]["free_rank"] == 1
    assert report["results"]["group"]["torsion"] == []
    assert report["results"]["basis"] == [[1]]
    assert elapsed < 1.0


def test_criterion_02_h1_of_integers_by_universe():
    for primes, rank in (((2,), 1), ((2, 3), 2), ((2, 3, 5), 3)):
        family = preset_family("Z", primes)
        started = time.monotonic()
        outcome = compute_H1(family)
        elapsed = time.monotonic() - started
        assert outcome.group.free_rank == rank
        assert outcome.group.torsion == ()
        for cls in outcome.classes:
            for p in primes:
                value = cls.derivation.value(p)
                assert all(x % p == 0 for x in value.flat())
        assert elapsed < 1.0


def test_criterion_03_d_squared_vanishes_on_random_cochains():
    started = time.monotonic()
    for name in PRESETS:
        family = preset_family(name, (2, 3, 5))
        for n in (0, 1, 2):
            rng = random.Random(f"accept3:{name}:{n}")
            for c in range(100):
                if n == 0:
                    f = endo_cochain(family, random_endomorphism(family, 1000 + c))
                else:
                    f = random_cochain(family, n, seed=1000 + c)
                ddf = differential(differential(f))
                for args in sample_tuples(family.universe, n + 2, 100, rng):
                    assert ddf.at(*args).is_zero
    assert time.monotonic() - started < 30.0


def test_criterion_04_coface_and_leibniz_identities():
    started = time.monotonic()
    for name in PRESETS:
        family = preset_family(name, (2, 3, 5))
        for identity in ("cosimplicial", "leibniz"):
            evaluations = 0
            for n in (0, 1, 2):
                report = run_identity_check(family, identity, n, 34, seed=42 + n)
                assert report.passed
                evaluations += report.samples
            assert evaluations >= 100
    assert time.monotonic() - started < 30.0


def test_criterion_05_binomials_from_newton_recursion():
    family = preset_family("Z", (2, 3, 5))
    for m in range(-6, 7):
        values = lambda_from_adams(family, (m,), 6)
        for i in range(1, 7):
            assert values[i - 1] == (binomial(m, i),)


def test_criterion_06_universal_polynomial_specializations():
    for i in range(1, 5):
        polynomial = compute_P(i).expression
        for m in range(-5, 6):
            for n in range(-5, 6):
                assignment = {("s", a): binomial(m, a) for a in range(1, i + 1)}
                assignment.update(
                    {("t", b): binomial(n, b) for b in range(1, i + 1)}
                )
                assert polynomial.eval_int(assignment) == binomial(m * n, i)
    pairs = [(i, j) for i in range(1, 5) for j in range(1, 7) if i * j <= 6]
    for i, j in pairs:
        polynomial = compute_P_ij(i, j, 6).expression
        for m in range(-5, 6):
            assignment = {("s", a): binomial(m, a) for a in range(1, i * j + 1)}
            assert polynomial.eval_int(assignment) == binomial(binomial(m, j), i)


def test_criterion_07_obstruction_is_a_closed_two_cochain():
    for name in PRESETS:
        family = preset_family(name, (2, 3, 5))
        rng = random.Random(f"accept7:{name}")
        for k in range(20):
            deformation = random_verified_deformation(family, 1 + k % 3, rng)
            d_obs = differential(obstruction(deformation))
            for args in sample_tuples(family.universe, 3, 100, rng):
                assert d_obs.at(*args).is_zero


def test_criterion_08_deformation_round_trips():
    # (a) the rank-one scaling deformation: series 1 + t*p at each
    # prime verifies at order 3, and extension succeeds up to order 4.
    family = preset_family("Z", (2, 3, 5))
    scaling_terms = {p: {1: IntMatrix.from_rows([[p]])} for p in (2, 3, 5)}
    assert verify_deformation(make_deformation(family, 3, scaling_terms)).passed
    current = make_deformation(family, 1, scaling_terms)
    for target in (2, 3, 4):
        outcome = try_extend(current, 2)
        assert outcome.succeeded
        current = outcome.extended
        assert current.order == target
        assert verify_deformation(current).passed

    # (b) conjugates of the trivial deformation normalize back to it.
    for name in PRESETS:
        family = preset_family(name, (2, 3, 5))
        for seed in range(3):
            rng = random.Random(f"accept8b:{name}:{seed}")
            coefficients = [IntMatrix.identity(family.rank)]
            coefficients += [
                random_endomorphism(family, rng.randint(0, 10**6)) for _ in range(2)
            ]
            auto = FormalAutomorphism(family, coefficients)
            flattened = apply_automorphism(auto, trivial_deformation(family, 2))
            for level in (1, 2):
                flattened, _ = normalize(flattened, level)
            for p in family.universe.primes:
                assert all(c.is_zero for c in flattened.series(p)[1:])

    # (c) a witness exists exactly when the tops differ by the
    # coboundary of a compatible endomorphism.
    for name in PRESETS:
        family = preset_family(name, (2, 3, 5))
        base = trivial_deformation(family, 1)
        for seed in (11, 12):
            g = random_endomorphism(family, seed)
            shift = inner_derivation(family, g)
            shifted = make_deformation(
                family,
                1,
                {p: {1: shift.value(p)} for p in family.universe.primes},
            )
            witness = check_equivalent_extensions(base, shifted)
            assert witness is not None
            assert inner_derivation(family, witness) == shift
    z = preset_family("Z", (2, 3, 5))
    for p in (2, 3, 5):
        shifted = make_deformation(z, 1, {p: {1: IntMatrix.from_rows([[p]])}})
        assert check_equivalent_extensions(trivial_deformation(z, 1), shifted) is None


def test_criterion_09_infinitesimal_class_invariance():
    for name in PRESETS:
        family = preset_family(name, (2, 3, 5))
        rng = random.Random(f"accept9:{name}")
        for k in range(20):
            deformation = random_verified_deformation(family, 1 + k % 3, rng)
            coefficients = [IntMatrix.identity(family.rank)]
            coefficients += [
                random_endomorphism(family, rng.randint(0, 10**6))
                for _ in range(deformation.order)
            ]
            auto = FormalAutomorphism(family, coefficients)
            conjugated = apply_automorphism(auto, deformation)
            difference = infinitesimal(conjugated) - infinitesimal(deformation)
            witness = solve_coboundary_1(family, difference)
            assert witness is not None
            assert inner_derivation(family, witness) == difference
