"""Universal polynomials via symmetric functions in formal alphabets.

The product and composition rules of a lambda-structure are governed by
integer polynomials: expand a generating product over one or two formal
alphabets, take the relevant coefficient, and rewrite the resulting
symmetric polynomial in terms of elementary symmetric functions.  The
rewriting is the classical leading-term subtraction: the lex-leading
monomial of a symmetric polynomial is killed by the product of
elementaries indexed by the conjugate partition, and the remainder is
strictly smaller, so the loop terminates with the (unique) expression
in the elementary generators.

Variables are pairs ``(letter, index)``; the published polynomials use
``s`` for the elementary values of the first argument and ``t`` for
the second.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Mapping, Sequence

from .errors import LimitExceeded
from .exactalg import Vector, vec_add, vec_scale, vec_zero
from .rings import LambdaData, RingSpec

Variable = tuple[str, int]
Monomial = tuple[tuple[Variable, int], ...]

DEFAULT_COMPOSITION_LIMIT = 6


@dataclass(frozen=True)
class MultiPoly:
    """Multivariate polynomial with integer coefficients.

    Terms are stored canonically (highest total degree first, then by
    variable structure), so equal polynomials compare equal and print
    identically.

    >>> s1 = MultiPoly.variable("s", 1)
    >>> t1 = MultiPoly.variable("t", 1)
    >>> (s1 * t1 - 2 * s1).text()
    's1*t1 - 2*s1'
    >>> (s1 - s1).is_zero
    True
    """

    terms: tuple[tuple[Monomial, int], ...]

    @staticmethod
    def _term_key(item: tuple[Monomial, int]):
        monomial, _ = item
        degree = sum(e for _, e in monomial)
        return (-degree, monomial)

    @staticmethod
    def from_dict(data: Mapping[Monomial, int]) -> "MultiPoly":
        cleaned = {m: c for m, c in data.items() if c}
        return MultiPoly(tuple(sorted(cleaned.items(), key=MultiPoly._term_key)))

    @staticmethod
    def zero() -> "MultiPoly":
        return MultiPoly(())

    @staticmethod
    def constant(c: int) -> "MultiPoly":
        return MultiPoly.from_dict({(): int(c)})

    @staticmethod
    def variable(letter: str, index: int) -> "MultiPoly":
        return MultiPoly.from_dict({(((letter, index), 1),): 1})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> tuple[Variable, ...]:
        seen = sorted({v for monomial, _ in self.terms for v, _ in monomial})
        return tuple(seen)

    def __add__(self, other: "MultiPoly | int") -> "MultiPoly":
        other = _coerce(other)
        data = dict(self.terms)
        for m, c in other.terms:
            data[m] = data.get(m, 0) + c
        return MultiPoly.from_dict(data)

    def __radd__(self, other: int) -> "MultiPoly":
        return self + other

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: "MultiPoly | int") -> "MultiPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: int) -> "MultiPoly":
        return _coerce(other) - self

    def __mul__(self, other: "MultiPoly | int") -> "MultiPoly":
        other = _coerce(other)
        data: dict[Monomial, int] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = _monomial_mul(m1, m2)
                data[m] = data.get(m, 0) + c1 * c2
        return MultiPoly.from_dict(data)

    def __rmul__(self, other: int) -> "MultiPoly":
        return self * other

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = MultiPoly.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def substitute(self, mapping: Mapping[Variable, "MultiPoly"]) -> "MultiPoly":
        """Replace variables by polynomials; unmapped variables stay."""
        result = MultiPoly.zero()
        for monomial, coeff in self.terms:
            term = MultiPoly.constant(coeff)
            for var, exp in monomial:
                base = mapping.get(var, MultiPoly.variable(*var))
                term = term * base**exp
            result = result + term
        return result

    def eval_int(self, assignment: Mapping[Variable, int]) -> int:
        """Evaluate with integer values for every variable that occurs."""
        total = 0
        for monomial, coeff in self.terms:
            value = coeff
            for var, exp in monomial:
                value *= assignment[var] ** exp
            total += value
        return total

    def eval_in_ring(self, spec: RingSpec, assignment: Mapping[Variable, Vector]) -> Vector:
        """Evaluate with ring elements (coordinate vectors) as values."""
        total = vec_zero(spec.rank)
        for monomial, coeff in self.terms:
            value = spec.unit
            for var, exp in monomial:
                for _ in range(exp):
                    value = spec.mul(value, assignment[var])
            total = vec_add(total, vec_scale(coeff, value))
        return total

    def text(self) -> str:
        """Canonical human-readable form, deterministic across runs."""
        if not self.terms:
            return "0"
        chunks = []
        for position, (monomial, coeff) in enumerate(self.terms):
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            factors = [
                f"{letter}{index}" + (f"^{exp}" if exp > 1 else "")
                for (letter, index), exp in monomial
            ]
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = str(magnitude) + "*" + "*".join(factors)
            if position == 0:
                chunks.append(body if coeff > 0 else "-" + body)
            else:
                chunks.append(f"{sign} {body}")
        return " ".join(chunks)


def _coerce(value: "MultiPoly | int") -> MultiPoly:
    if isinstance(value, MultiPoly):
        return value
    return MultiPoly.constant(value)


def _monomial_mul(m1: Monomial, m2: Monomial) -> Monomial:
    exps = dict(m1)
    for var, e in m2:
        exps[var] = exps.get(var, 0) + e
    return tuple(sorted(exps.items()))


# Internal alphabet polynomials: dense exponent tuples over a fixed
# variable count, as dicts {exponents: coefficient}.

ExpVec = tuple[int, ...]
AlphabetPoly = dict[ExpVec, int]


def _alphabet_mul(a: AlphabetPoly, b: AlphabetPoly) -> AlphabetPoly:
    out: AlphabetPoly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def _elementary(nvars: int, k: int, offset: int = 0, width: int = 0) -> AlphabetPoly:
    """e_k in variables offset..offset+nvars-1 inside exponent vectors of width."""
    width = width or nvars
    out: AlphabetPoly = {}
    for subset in combinations(range(nvars), k):
        exps = [0] * width
        for a in subset:
            exps[offset + a] = 1
        out[tuple(exps)] = 1
    return out


def _conjugate_partition(parts: Sequence[int]) -> list[int]:
    """Conjugate of a weakly decreasing sequence (zeros allowed).

    >>> _conjugate_partition((3, 1, 1))
    [3, 1, 1]
    >>> _conjugate_partition((2, 2, 0))
    [2, 2]
    """
    positive = [p for p in parts if p > 0]
    if not positive:
        return []
    return [sum(1 for p in positive if p >= j) for j in range(1, positive[0] + 1)]


def _reduce_two_alphabets(poly: AlphabetPoly, nx: int, ny: int) -> MultiPoly:
    """Rewrite a bi-symmetric polynomial in elementary generators s/t."""
    work = dict(poly)
    result: dict[Monomial, int] = {}
    while work:
        leading = max(work)
        coeff = work[leading]
        xpart, ypart = leading[:nx], leading[nx:]
        if any(xpart[i] < xpart[i + 1] for i in range(nx - 1)) or any(
            ypart[i] < ypart[i + 1] for i in range(ny - 1)
        ):
            raise AssertionError("input polynomial is not symmetric in each alphabet")
        s_indices = _conjugate_partition(xpart)
        t_indices = _conjugate_partition(ypart)
        counts: dict[Variable, int] = {}
        for a in s_indices:
            counts[("s", a)] = counts.get(("s", a), 0) + 1
        for b in t_indices:
            counts[("t", b)] = counts.get(("t", b), 0) + 1
        monomial = tuple(sorted(counts.items()))
        result[monomial] = result.get(monomial, 0) + coeff
        subtrahend: AlphabetPoly = {tuple([0] * (nx + ny)): coeff}
        for a in s_indices:
            subtrahend = _alphabet_mul(subtrahend, _elementary(nx, a, 0, nx + ny))
        for b in t_indices:
            subtrahend = _alphabet_mul(subtrahend, _elementary(ny, b, nx, nx + ny))
        for exps, c in subtrahend.items():
            remaining = work.get(exps, 0) - c
            if remaining:
                work[exps] = remaining
            else:
                work.pop(exps, None)
    return MultiPoly.from_dict(result)


@dataclass(frozen=True)
class UniversalPolynomial:
    """A universal lambda-ring polynomial with its defining indices."""

    kind: str  # "product" or "composition"
    indices: tuple[int, ...]
    expression: MultiPoly

    def text(self) -> str:
        return self.expression.text()


@functools.lru_cache(maxsize=None)
def compute_P(i: int) -> UniversalPolynomial:
    """Polynomial expressing lambda_i(r*s) through lambda values of r and s.

    Coefficient of z^i in the product of (1 + x_a y_b z) over the i*i
    variable pairs, rewritten with s_a = e_a(x), t_b = e_b(y).

    >>> compute_P(1).text()
    's1*t1'
    >>> compute_P(2).text()
    's1^2*t2 + s2*t1^2 - 2*s2*t2'
    """
    if i < 1:
        raise ValueError("the product polynomial needs i >= 1")
    width = 2 * i
    coefficient: AlphabetPoly = {}
    pairs = [(a, b) for a in range(i) for b in range(i)]
    for chosen in combinations(pairs, i):
        exps = [0] * width
        for a, b in chosen:
            exps[a] += 1
            exps[i + b] += 1
        key = tuple(exps)
        coefficient[key] = coefficient.get(key, 0) + 1
    expression = _reduce_two_alphabets(coefficient, i, i)
    return UniversalPolynomial("product", (i,), expression)


@functools.lru_cache(maxsize=None)
def _compute_P_ij_cached(i: int, j: int) -> UniversalPolynomial:
    nvars = i * j
    subset_products = [frozenset(s) for s in combinations(range(nvars), j)]
    coefficient: AlphabetPoly = {}
    for chosen in combinations(subset_products, i):
        exps = [0] * nvars
        for subset in chosen:
            for a in subset:
                exps[a] += 1
        key = tuple(exps)
        coefficient[key] = coefficient.get(key, 0) + 1
    expression = _reduce_two_alphabets(coefficient, nvars, 0)
    return UniversalPolynomial("composition", (i, j), expression)


def compute_P_ij(i: int, j: int, limit: int = DEFAULT_COMPOSITION_LIMIT) -> UniversalPolynomial:
    """Polynomial expressing lambda_i(lambda_j(r)) through lambda values of r.

    Coefficient of z^i in the product of (1 + x_S z) over all j-element
    subsets S of an i*j-letter alphabet, where x_S is the product of
    the letters of S, rewritten with s_a = e_a(x).  The alphabet has
    i*j letters, so the cost explodes with i*j; requests beyond the
    limit raise LimitExceeded instead of hanging.

    >>> compute_P_ij(1, 2).text()
    's2'
    >>> compute_P_ij(3, 1).text()
    's3'
    """
    if i < 1 or j < 1:
        raise ValueError("the composition polynomial needs i, j >= 1")
    if i * j > limit:
        raise LimitExceeded(f"composition polynomial with i*j = {i * j} exceeds limit {limit}")
    return _compute_P_ij_cached(i, j)


def verify_lambda_axioms(
    data: LambdaData,
    samples: Sequence[Sequence[int]],
    bound: int,
    *,
    composition_limit: int = DEFAULT_COMPOSITION_LIMIT,
) -> list[str]:
    """Check the lambda-ring axioms on sampled elements up to a degree bound.

    Covers: lambda_0 = 1 and lambda_1 = id (structural for the data
    types here, still asserted), vanishing on the unit in degrees >= 2,
    the binomial-style sum rule on products of... of sums, the product
    rule through the universal product polynomials, and the composition
    rule through the universal composition polynomials with i*j capped
    by ``composition_limit``.

    Returns human-readable violation strings; empty means every sampled
    instance of every axiom holds.
    """
    spec = data.spec
    violations: list[str] = []
    elements = [tuple(r) for r in samples]

    def lam(r: Vector, k: int) -> Vector:
        return data.value(r, k)

    for r in elements:
        if lam(r, 0) != spec.unit:
            violations.append(f"lambda_0({r}) != 1")
        if lam(r, 1) != r:
            violations.append(f"lambda_1({r}) != the element itself")
    for i in range(2, bound + 1):
        if lam(spec.unit, i) != vec_zero(spec.rank):
            violations.append(f"lambda_{i}(1) != 0")
    for r, s in combinations_with_replacement(elements, 2):
        total = vec_add(r, s)
        for i in range(1, bound + 1):
            expected = vec_zero(spec.rank)
            for k in range(i + 1):
                expected = vec_add(expected, spec.mul(lam(r, k), lam(s, i - k)))
            if lam(total, i) != expected:
                violations.append(f"additivity fails: lambda_{i}({r} + {s})")
        product = spec.mul(r, s)
        for i in range(1, bound + 1):
            polynomial = compute_P(i)
            assignment = {("s", a): lam(r, a) for a in range(1, i + 1)}
            assignment.update({("t", b): lam(s, b) for b in range(1, i + 1)})
            expected = polynomial.expression.eval_in_ring(spec, assignment)
            if lam(product, i) != expected:
                violations.append(f"product rule fails: lambda_{i}({r} * {s})")
    for r in elements:
        for j in range(1, bound + 1):
            for i in range(1, bound // j + 1):
                if i * j > composition_limit or i * j > bound:
                    continue
                polynomial = compute_P_ij(i, j, composition_limit)
                assignment = {("s", a): lam(r, a) for a in range(1, i * j + 1)}
                expected = polynomial.expression.eval_in_ring(spec, assignment)
                if lam(lam(r, j), i) != expected:
                    violations.append(f"composition rule fails: lambda_{i}(lambda_{j}({r}))")
    return violations
