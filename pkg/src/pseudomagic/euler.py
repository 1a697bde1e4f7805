"""Truncated Euler products for the arithmetic constants of the moment predictions.

Two products are evaluated over primes p <= prime_limit:

  unitary factor   a_k = prod_p (1-1/p)^(k^2) * sum_{j>=0} d_k(p^j)^2 / p^j
  symplectic factor b_k = prod_p [(1-1/p)^(k(k+1)/2)/(1+1/p)]
                               * [((1-p^(-1/2))^(-k) + (1+p^(-1/2))^(-k))/2 + 1/p]

The local series of a_k is truncated at j_terms and topped up with a geometric
majorant of the tail, using d_k(p^j) = binom(j+k-1, k-1) <= (j+1)^(k-1).  For
k = 1 the majorant is the exact tail, so every local factor is exactly 1 and
the product telescopes to 1 at any truncation.

All accumulation happens in mpmath extended precision (113-bit mantissa) and
in the log domain, so the product cannot underflow even for k >= 4.  The
reported tail_estimate is the heuristic c_k/prime_limit with c_k calibrated
from the last included prime: |local(p_max) - 1| * p_max^2 / prime_limit.
Local factors are 1 + O(1/p^2) for both products, which makes this an
overestimate of the true missing tail by roughly a factor log(prime_limit).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from mpmath import mp, mpf, workprec

_PRECISION_BITS = 113


@dataclass(frozen=True)
class EulerFactorResult:
    """Value of a truncated Euler product together with its truncation bookkeeping."""

    k: int
    prime_limit: int
    j_terms: int
    value: float
    tail_estimate: float


def primes_up_to(limit: int):
    """All primes <= limit, by a plain byte sieve."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    p = 2
    while p * p <= limit:
        if flags[p]:
            flags[p * p:: p] = bytearray(len(flags[p * p:: p]))
        p += 1
    return [i for i in range(2, limit + 1) if flags[i]]


def dk_prime_power(k: int, j: int) -> int:
    """Number of ordered factorizations of p^j into k factors: binom(j+k-1, k-1)."""
    if k < 1:
        raise ValueError("k must be positive")
    if j < 0:
        raise ValueError("j must be nonnegative")
    return comb(j + k - 1, k - 1)


def _local_a(k: int, p: int, j_terms: int):
    """Local factor of a_k at p, in mpmath precision: prefactor times tail-completed series."""
    s = mpf(0)
    for j in range(j_terms + 1):
        s += mpf(dk_prime_power(k, j) ** 2) / p ** j
    # tail majorant: d_k(p^j)^2 <= (j+1)^(2(k-1)), geometric from j_terms+1 on
    e = 2 * (k - 1)
    t_next = mpf((j_terms + 2) ** e) / p ** (j_terms + 1)
    ratio = mpf((j_terms + 3) ** e) / (mpf((j_terms + 2) ** e) * p)
    if ratio >= 1:
        raise ValueError(f"j_terms={j_terms} too small for k={k}: tail ratio >= 1 at p={p}")
    s += t_next / (1 - ratio)
    return k * k * mp.log(1 - mpf(1) / p) + mp.log(s)


def _local_b(k: int, p: int):
    """Local factor of b_k at p, in mpmath precision (log scale)."""
    q = mp.sqrt(mpf(1) / p)
    avg = ((1 - q) ** (-k) + (1 + q) ** (-k)) / 2
    bracket = avg + mpf(1) / p
    return (
        (k * (k + 1) // 2) * mp.log(1 - mpf(1) / p)
        - mp.log(1 + mpf(1) / p)
        + mp.log(bracket)
    )


def _accumulate(k: int, prime_limit: int, j_terms: int, local_log) -> EulerFactorResult:
    ps = primes_up_to(prime_limit)
    if not ps:
        raise ValueError("prime_limit must be at least 2")
    with workprec(_PRECISION_BITS):
        acc = mpf(0)
        last = mpf(0)
        for p in ps:
            last = local_log(p)
            acc += last
        value = mp.exp(acc)
        p_max = ps[-1]
        c = abs(mp.exp(last) - 1) * p_max * p_max
        tail = c / prime_limit
        return EulerFactorResult(
            k=k,
            prime_limit=prime_limit,
            j_terms=j_terms,
            value=float(value),
            tail_estimate=float(tail),
        )


def arithmetic_factor_a(k: int, prime_limit: int = 10**5, j_terms: int = 64) -> EulerFactorResult:
    """Truncated unitary arithmetic factor a_k with a per-prime tail-completed local series."""
    if k < 1:
        raise ValueError("k must be positive")
    if prime_limit < 2:
        raise ValueError("prime_limit must be at least 2")
    if j_terms < 1:
        raise ValueError("j_terms must be at least 1")
    return _accumulate(k, prime_limit, j_terms, lambda p: _local_a(k, p, j_terms))


def arithmetic_factor_b(k: int, prime_limit: int = 10**5) -> EulerFactorResult:
    """Truncated symplectic arithmetic factor b_k (closed-form local factors, no series cutoff)."""
    if k < 1:
        raise ValueError("k must be positive")
    if prime_limit < 2:
        raise ValueError("prime_limit must be at least 2")
    return _accumulate(k, prime_limit, 0, lambda p: _local_b(k, p))
