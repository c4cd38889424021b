"""Shared fixtures: preset families and a small nilpotent example."""

import pytest

from lambdaring.exactalg import IntMatrix
from lambdaring.rings import AdamsFamily, PrimeUniverse, RingSpec, preset_family


def nilpotent_family(primes=(2, 3, 5)) -> AdamsFamily:
    """Rank-3 truncated polynomial ring Z[x]/(x^3) with basis (1, x, x^2).

    The Adams operation for p sends x to x^p, which is x^2 for p = 2 and
    zero for every larger prime because x^3 = 0.
    """
    structure = tuple(
        tuple(
            tuple(int(k == i + j) for k in range(3))
            for j in range(3)
        )
        for i in range(3)
    )
    spec = RingSpec(rank=3, structure=structure, unit=(1, 0, 0), name="NilCubed")
    generators = []
    for p in primes:
        image_of_x = (0, 0, 1) if p == 2 else (0, 0, 0)
        image_of_x2 = (0, 0, 0)
        cols = [(1, 0, 0), image_of_x, image_of_x2]
        generators.append((p, IntMatrix.from_columns(cols, 3)))
    return AdamsFamily(spec, PrimeUniverse(tuple(primes)), tuple(generators))


@pytest.fixture
def z_family() -> AdamsFamily:
    return preset_family("Z", (2, 3, 5))


@pytest.fixture
def rc2_family() -> AdamsFamily:
    return preset_family("RC2", (2, 3, 5))


@pytest.fixture
def rc3_family() -> AdamsFamily:
    return preset_family("RC3", (2, 3, 5))


@pytest.fixture
def nil3_family() -> AdamsFamily:
    return nilpotent_family((2, 3, 5))


@pytest.fixture(params=["Z", "RC2", "RC3"])
def each_preset(request) -> AdamsFamily:
    return preset_family(request.param, (2, 3, 5))
