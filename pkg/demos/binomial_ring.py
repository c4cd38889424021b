"""The rank-one ring of integers with identity Adams operations.

Every Adams operation on the integers is the identity, and running the
Newton recursion backwards from that data recovers the binomial
coefficients: lambda_i(m) = C(m, i), including negative m.
"""

import math

from lambdaring.rings import lambda_from_adams, preset_family, verify_adams


def binomial(m: int, i: int) -> int:
    num = 1
    for k in range(i):
        num *= m - k
    return num // math.factorial(i)


def main() -> None:
    family = preset_family("Z", (2, 3, 5))
    print("ring: integers, rank 1, universe {2, 3, 5}")
    print("Adams generators:", {p: family.generator(p).flat() for p in (2, 3, 5)})
    print("axiom violations:", verify_adams(family))
    print()
    header = "m    " + "".join(f"lam_{i:<5}" for i in range(1, 7))
    print(header)
    for m in range(-4, 7):
        values = lambda_from_adams(family, (m,), 6)
        row = f"{m:<5}" + "".join(f"{v[0]:<9}" for v in values)
        print(row)
        assert all(v[0] == binomial(m, i) for i, v in enumerate(values, start=1))
    print()
    print("every entry equals the binomial coefficient C(m, i)")


if __name__ == "__main__":
    main()
