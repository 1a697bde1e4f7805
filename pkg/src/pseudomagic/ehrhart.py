"""Exact polynomial reconstruction of the lattice-count families, and volumes.

The magic-square count in dimension k is a polynomial of degree (k-1)^2, the
bounded-sum count a polynomial of degree k^2; both facts are theorems, so the
polynomials are recovered by exact rational interpolation at consecutive
integer nodes starting from 0 and then *verified* at two extra nodes.  A
verification mismatch raises: it can only mean a counting bug.

The symmetric even-diagonal bounded family is not a polynomial (the 1x1 case
is floor(l/2)+1), so it is reconstructed as a period-2 quasi-polynomial: one
polynomial per parity class, with leading-coefficient agreement reported.

Volumes fall out of leading coefficients: the substochastic polytope volume
is the leading coefficient of the bounded-count polynomial, and the Birkhoff
polytope volume is k^(k-1) times the leading coefficient of the magic-count
polynomial (relative-volume normalization).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import counting


@dataclass(frozen=True)
class CountingPolynomial:
    """Dense univariate polynomial with exact rational coefficients, constant term first."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            coeffs = (Fraction(0),)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coefficients[-1]

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def as_strings(self):
        return [str(c) for c in self.coefficients]


@dataclass(frozen=True)
class HVector:
    """Numerator coefficients h_0..h_d of the rational generating function of a count polynomial."""

    entries: tuple

    def stripped(self) -> tuple:
        e = self.entries
        while e and e[-1] == 0:
            e = e[:-1]
        return e


@dataclass(frozen=True)
class ParityPolynomials:
    """Period-2 quasi-polynomial: one polynomial per parity of the argument."""

    even: CountingPolynomial
    odd: CountingPolynomial

    @property
    def leading_coefficients_agree(self) -> bool:
        return (
            self.even.degree == self.odd.degree
            and self.even.leading_coefficient == self.odd.leading_coefficient
        )

    def __call__(self, x: int) -> Fraction:
        return self.even(x) if x % 2 == 0 else self.odd(x)


def interpolate(values, degree: int) -> CountingPolynomial:
    """Unique polynomial of degree <= ``degree`` through the given (point, value) pairs.

    Newton's divided-difference form over exact rationals.  The first
    degree+1 points determine the polynomial; any further points are checked
    against it and a mismatch raises (no such polynomial exists).
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in values]
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if len(pts) < degree + 1:
        raise ValueError(f"need at least {degree + 1} points, got {len(pts)}")
    if len({x for x, _ in pts[: degree + 1]}) != degree + 1:
        raise ValueError("interpolation points must be distinct")

    xs = [x for x, _ in pts[: degree + 1]]
    dd = [y for _, y in pts[: degree + 1]]
    n = len(xs)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])

    coeffs = [Fraction(0)] * n
    basis = [Fraction(1)]  # coefficients of prod_{t<i} (x - x_t)
    for i in range(n):
        for d, c in enumerate(basis):
            coeffs[d] += dd[i] * c
        nxt = [Fraction(0)] * (len(basis) + 1)
        for d, c in enumerate(basis):
            nxt[d + 1] += c
            nxt[d] -= c * xs[i]
        basis = nxt

    poly = CountingPolynomial(tuple(coeffs))
    for x, y in pts[degree + 1:]:
        if poly(x) != y:
            raise ValueError("extra points are inconsistent with the degree bound")
    return poly


def _interpolate_family(counter, degree: int, nodes) -> CountingPolynomial:
    nodes = list(nodes)
    data = [(x, counter(x)) for x in nodes[: degree + 1]]
    poly = interpolate(data, degree)
    for x in nodes[degree + 1:]:
        if poly(x) != counter(x):
            raise RuntimeError(
                f"polynomial verification failed at {x}: counting bug suspected"
            )
    return poly


def magic_polynomial(k: int) -> CountingPolynomial:
    """Exact polynomial agreeing with count_magic(k, .); degree (k-1)^2, verified at 2 extra nodes."""
    if k < 1:
        raise ValueError("k must be positive")
    d = (k - 1) ** 2
    return _interpolate_family(lambda j: counting.count_magic(k, j), d, range(d + 3))


def pseudomagic_polynomial(k: int) -> CountingPolynomial:
    """Exact polynomial agreeing with count_pseudomagic(k, .); degree k^2, verified at 2 extra nodes."""
    if k < 1:
        raise ValueError("k must be positive")
    d = k * k
    return _interpolate_family(lambda l: counting.count_pseudomagic(k, l), d, range(d + 3))


def symmetric_even_bounded_polynomials(k: int) -> ParityPolynomials:
    """Per-parity polynomials of the symmetric even-diagonal bounded count (period-2 quasi-polynomial)."""
    if k < 1:
        raise ValueError("k must be positive")
    d = k * (k + 1) // 2
    even = _interpolate_family(
        lambda l: counting.count_symmetric_even_bounded(k, l),
        d,
        [2 * t for t in range(d + 3)],
    )
    odd = _interpolate_family(
        lambda l: counting.count_symmetric_even_bounded(k, l),
        d,
        [2 * t + 1 for t in range(d + 3)],
    )
    return ParityPolynomials(even, odd)


def check_trivial_zeros(p: CountingPolynomial, k: int) -> bool:
    """True iff p vanishes at -1, -2, ..., -(k-1) exactly."""
    return all(p(-i) == 0 for i in range(1, k))


def check_reciprocity(p: CountingPolynomial, k: int) -> bool:
    """True iff p(-k-j) == (-1)^(k-1) p(j) as a polynomial identity (checked at deg+1 points)."""
    sign = 1 if (k - 1) % 2 == 0 else -1
    return all(p(-k - j) == sign * p(j) for j in range(p.degree + 1))


def h_vector(p: CountingPolynomial) -> HVector:
    """Numerator vector of sum_j p(j) x^j = h(x) / (1-x)^(deg+1).

    h_i = sum_{m=0..i} (-1)^m binom(deg+1, m) p(i-m); every entry must come
    out an integer, otherwise the input is not a lattice-count polynomial.
    """
    d = p.degree
    values = [p(i) for i in range(d + 1)]
    entries = []
    for i in range(d + 1):
        acc = Fraction(0)
        for m in range(i + 1):
            term = comb(d + 1, m) * values[i - m]
            acc += -term if m % 2 else term
        if acc.denominator != 1:
            raise ValueError(f"h_{i} = {acc} is not an integer; not a lattice-count polynomial")
        entries.append(int(acc))
    return HVector(tuple(entries))


def substochastic_volume(k: int) -> Fraction:
    """Euclidean volume of the square matrices with all line sums at most 1."""
    return pseudomagic_polynomial(k).leading_coefficient


def birkhoff_volume(k: int) -> Fraction:
    """Volume of the doubly stochastic matrices: k^(k-1) times the magic leading coefficient."""
    return k ** (k - 1) * magic_polynomial(k).leading_coefficient


def evaluate_real(p: CountingPolynomial, x: float) -> float:
    """Horner evaluation of the exact polynomial in double precision."""
    acc = 0.0
    for c in reversed(p.coefficients):
        acc = acc * x + float(c)
    return acc
