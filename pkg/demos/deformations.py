"""Deformations of the Adams operations on the integers, end to end.

The scaling deformation multiplies the operation at each prime p by
the unit series 1 + t*p.  The script verifies it, reads off its
infinitesimal part, evaluates the obstruction against extending one
order further, extends it step by step, and finally shows that
conjugating the trivial deformation produces something normalize can
flatten back.
"""

from lambdaring.deformation import (
    FormalAutomorphism,
    apply_automorphism,
    infinitesimal,
    make_deformation,
    normalize,
    obstruction,
    trivial_deformation,
    try_extend,
    verify_deformation,
)
from lambdaring.exactalg import IntMatrix
from lambdaring.rings import preset_family


def main() -> None:
    family = preset_family("Z", (2, 3, 5))
    scaling = make_deformation(
        family, 1, {p: {1: IntMatrix.from_rows([[p]])} for p in (2, 3, 5)}
    )
    print("scaling deformation of the integers: series 1 + t*p at prime p")
    print("verified:", verify_deformation(scaling).passed)
    spec = infinitesimal(scaling)
    print("infinitesimal values:", {p: spec.value(p).flat() for p in (2, 3, 5)})
    print("infinitesimal is a cocycle:", spec.is_cocycle())

    obs = obstruction(scaling)
    print("obstruction at (2, 3):", obs.at(2, 3).flat())
    print("obstruction at (6, 6):", obs.at(6, 6).flat())

    current = scaling
    while current.order < 4:
        outcome = try_extend(current, 2)
        assert outcome.succeeded
        current = outcome.extended
        print(
            f"extended to order {current.order} "
            f"({outcome.equations} equations over a box of {outcome.box_size})"
        )
    print()

    rc2 = preset_family("RC2", (2, 3, 5))
    coefficients = [
        IntMatrix.identity(rc2.rank),
        IntMatrix.from_rows([[0, 0], [0, 2]]),
        IntMatrix.from_rows([[0, 0], [2, 0]]),
    ]
    auto = FormalAutomorphism(rc2, coefficients)
    conjugated = apply_automorphism(auto, trivial_deformation(rc2, 2))
    print("conjugated trivial deformation of RC2, order 2")
    print(
        "nonzero terms before:",
        sum(
            1
            for p in rc2.universe.primes
            for c in conjugated.series(p)[1:]
            if not c.is_zero
        ),
    )
    flattened = conjugated
    for level in (1, 2):
        flattened, witness = normalize(flattened, level)
        print(f"normalize level {level}: witness {list(witness.flat())}")
    remaining = sum(
        1
        for p in rc2.universe.primes
        for c in flattened.series(p)[1:]
        if not c.is_zero
    )
    print("nonzero terms after:", remaining)


if __name__ == "__main__":
    main()
