"""Structural identities of the cochain complex, sampled exactly.

The differential is an alternating sum of cofaces; composing it with
itself must vanish on every cochain, the cofaces must satisfy the
simplicial exchange rule, and the differential must obey the Leibniz
rule for the juxtaposition product.  All three are checked pointwise
on seeded random cochains — every comparison is exact integer
arithmetic and the reported mismatch counts are genuine.
"""

import random

from lambdaring.cochain import (
    differential,
    random_cochain,
    run_identity_check,
    sample_tuples,
)
from lambdaring.rings import preset_family


def main() -> None:
    family = preset_family("RC2", (2, 3, 5))
    print("ring: rank-2 preset RC2, universe {2, 3, 5}")
    print()

    f = random_cochain(family, 1, seed=7)
    ddf = differential(differential(f))
    rng = random.Random("demo:ddf")
    checked = 0
    for args in sample_tuples(family.universe, 3, 50, rng):
        assert ddf.at(*args).is_zero
        checked += 1
    print(f"d(d(f)) vanished at all {checked} sampled argument triples")
    print()

    for identity in ("d-squared", "cosimplicial", "leibniz"):
        for dimension in (0, 1, 2):
            report = run_identity_check(family, identity, dimension, 25, seed=3)
            status = "ok" if report.passed else f"{len(report.failures)} mismatches"
            print(
                f"{identity:<12} dimension {dimension}: "
                f"{report.samples} samples, {status}"
            )


if __name__ == "__main__":
    main()
