"""Degree-zero and degree-one cohomology of the three preset rings.

Degree zero collects the Frobenius-compatible endomorphisms commuting
with every Adams operation; degree one collects derivation-like
1-cocycles modulo the inner ones.  Both are presented as finitely
generated abelian groups with explicit generators, computed by Smith
normal form over the integers.
"""

from lambdaring.cohomology import compute_H0, compute_H1
from lambdaring.rings import preset_family


def main() -> None:
    for name in ("Z", "RC2", "RC3"):
        family = preset_family(name, (2, 3, 5))
        h0 = compute_H0(family)
        h1 = compute_H1(family)
        print(f"{name}: rank {family.rank}, universe {{2, 3, 5}}")
        print(f"  H0 = {h0.group.render()}")
        for basis in h0.basis:
            print(f"    basis: {list(basis.flat())}")
        print(f"  H1 = {h1.group.render()}  (cocycle rank {len(h1.cocycle_basis)})")
        for cls in h1.classes:
            label = "infinite order" if cls.order == 0 else f"order {cls.order}"
            values = {
                p: list(cls.derivation.value(p).flat())
                for p in family.universe.primes
            }
            print(f"    class ({label}): {values}")
        print()
    print("each degree-one representative value at p is divisible by p,")
    print("so dividing out p gives the X-coordinates the solver works in")


if __name__ == "__main__":
    main()
