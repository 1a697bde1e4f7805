"""Monte Carlo laboratory over Haar-distributed unitary matrices.

Secular coefficients (elementary symmetric functions of the eigenvalues) are
obtained from power traces through Newton's identities, so the whole pipeline
is matrix multiplication: no eigensolver.  Their absolute and mixed moments
estimate, by simulation, quantities that the counting module computes exactly
(line-sum matrix counts), and the exact side of the full characteristic
polynomial moment is a plain factorial product.

Sampling is Ginibre + QR with the phase fix that makes the triangular
factor's diagonal real positive; without the fix QR is not Haar.  Monte Carlo
runs are reproducible: worker w draws from the w-th spawn of the seed
sequence and partial sums are reduced in worker order, so a fixed
(seed, threads) pair gives bit-identical estimates.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, sqrt

import numpy as np

from . import counting

DEFAULT_BATCH = 4096
_UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class MomentEstimate:
    """Monte Carlo mean with its standard error and the exact target when one is known."""

    mean: object
    stderr: float
    samples: int
    target: object = None

    def z_score(self):
        """Standardized distance |mean - target| / stderr; None without a target."""
        if self.target is None:
            return None
        dev = abs(self.mean - self.target)
        if self.stderr == 0:
            return 0.0 if dev == 0 else float("inf")
        return float(dev / self.stderr)


def _ginibre(rng: np.random.Generator, batch: int, n: int) -> np.ndarray:
    a = rng.standard_normal((batch, n, n))
    b = rng.standard_normal((batch, n, n))
    return (a + 1j * b) / np.sqrt(2.0)


def _haar_batch(rng: np.random.Generator, batch: int, n: int) -> np.ndarray:
    """Stack of Haar unitaries: QR of Ginibre, columns rephased by the R diagonal."""
    q, r = np.linalg.qr(_ginibre(rng, batch, n))
    d = np.diagonal(r, axis1=-2, axis2=-1)
    ph = d / np.abs(d)
    return q * ph[:, None, :]


def haar_unitary(n: int, seed: int) -> np.ndarray:
    """One Haar-distributed n-by-n unitary; bit-identical for a fixed (n, seed)."""
    if n < 1:
        raise ValueError("n must be positive")
    m = _haar_batch(np.random.Generator(np.random.Philox(seed)), 1, n)[0]
    residual = np.max(np.abs(m @ m.conj().T - np.eye(n)))
    if residual >= _UNITARITY_TOL:
        raise RuntimeError(f"unitarity residual {residual:.3e} out of tolerance")
    return m


def _secular_batch(ms: np.ndarray, jmax: int) -> np.ndarray:
    """Coefficients e_0..e_jmax of each matrix in the stack, via traces + Newton's identities."""
    batch, n = ms.shape[0], ms.shape[1]
    p = np.empty((batch, jmax + 1), dtype=np.complex128)
    power = ms
    for m in range(1, jmax + 1):
        if m > 1:
            power = power @ ms
        p[:, m] = np.trace(power, axis1=1, axis2=2)
    e = np.zeros((batch, jmax + 1), dtype=np.complex128)
    e[:, 0] = 1.0
    for j in range(1, jmax + 1):
        acc = np.zeros(batch, dtype=np.complex128)
        for i in range(1, j + 1):
            term = e[:, j - i] * p[:, i]
            acc += term if i % 2 else -term
        e[:, j] = acc / j
    return e


def secular_coefficients(m: np.ndarray) -> np.ndarray:
    """All coefficients e_0..e_n of one square matrix (e_j = j-th elementary symmetric
    function of the eigenvalues, equivalently the degree-(n-j) characteristic
    polynomial coefficient up to sign)."""
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    return _secular_batch(m[None, :, :], m.shape[0])[0]


def _quotas(samples: int, threads: int):
    q, r = divmod(samples, threads)
    return [q + 1] * r + [q] * (threads - r)


def _mc_mean(
    n: int,
    jmax: int,
    samples: int,
    seed: int,
    threads: int,
    value_fn,
    complex_valued: bool,
    target,
) -> MomentEstimate:
    """Deterministic parallel Monte Carlo driver.

    value_fn maps a (batch, jmax+1) coefficient block to one value per sample.
    Each worker owns a spawned RNG substream and a fixed quota; partial sums
    are combined in worker order, so results depend only on (seed, threads).
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    if threads < 1:
        raise ValueError("threads must be positive")
    threads = min(threads, samples)
    quotas = _quotas(samples, threads)
    streams = np.random.SeedSequence(seed).spawn(threads)

    def work(w: int):
        rng = np.random.Generator(np.random.Philox(streams[w]))
        s1 = 0.0 + 0.0j
        s2 = 0.0
        left = quotas[w]
        while left:
            b = min(DEFAULT_BATCH, left)
            values = value_fn(_secular_batch(_haar_batch(rng, b, n), jmax))
            s1 += complex(np.sum(values))
            s2 += float(np.sum(np.abs(values) ** 2))
            left -= b
        return s1, s2

    if threads == 1:
        parts = [work(0)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = [f.result() for f in [pool.submit(work, w) for w in range(threads)]]

    s1 = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    mean = s1 / samples
    var = max(s2 / samples - abs(mean) ** 2, 0.0)
    stderr = sqrt(var / samples)
    if not complex_valued:
        mean = mean.real
    return MomentEstimate(mean=mean, stderr=stderr, samples=samples, target=target)


def secular_abs_moment_mc(
    j: int, k: int, n: int, samples: int, seed: int, threads: int = 1
) -> MomentEstimate:
    """Monte Carlo E|e_j|^(2k) over Haar; exact target count_magic(k, j) once n >= j*k."""
    if not 1 <= j <= n:
        raise ValueError("need 1 <= j <= n")
    if k < 1:
        raise ValueError("k must be positive")
    target = counting.count_magic(k, j) if n >= j * k else None
    return _mc_mean(
        n, j, samples, seed, threads,
        lambda e: np.abs(e[:, j]) ** (2 * k),
        complex_valued=False, target=target,
    )


def mixed_moment_mc(a, b, n: int, samples: int, seed: int, threads: int = 1) -> MomentEstimate:
    """Monte Carlo E prod_j e_j^(a_j) conj(e_j)^(b_j) over Haar.

    The exact target is the contingency count with row sums <1^(a_1) 2^(a_2) ...>
    and column sums from b, valid once n reaches both weights; in particular it
    is 0 whenever the two weights differ.
    """
    a = tuple(int(v) for v in a)
    b = tuple(int(v) for v in b)
    if len(a) != len(b):
        raise ValueError("exponent vectors must have equal length")
    if not a:
        raise ValueError("exponent vectors must be nonempty")
    if len(a) > n:
        raise ValueError("exponent vectors longer than the dimension")
    if any(v < 0 for v in a + b):
        raise ValueError("exponents must be nonnegative")
    l = len(a)
    wa = sum(jj * v for jj, v in enumerate(a, start=1))
    wb = sum(jj * v for jj, v in enumerate(b, start=1))
    target = None
    if n >= max(wa, wb):
        mu = [jj for jj, v in enumerate(a, start=1) for _ in range(v)]
        nu = [jj for jj, v in enumerate(b, start=1) for _ in range(v)]
        target = counting.count_contingency(mu, nu)

    def values(e: np.ndarray) -> np.ndarray:
        acc = np.ones(e.shape[0], dtype=np.complex128)
        for jj in range(1, l + 1):
            if a[jj - 1]:
                acc *= e[:, jj] ** a[jj - 1]
            if b[jj - 1]:
                acc *= np.conj(e[:, jj]) ** b[jj - 1]
        return acc

    return _mc_mean(n, l, samples, seed, threads, values, complex_valued=True, target=target)


def truncated_poly_moment_mc(
    l: int, k: int, n: int, z: complex, samples: int, seed: int, threads: int = 1
) -> MomentEstimate:
    """Monte Carlo E|sum_{j<=l} e_j z^(n-j) (-1)^j|^(2k): degree-truncated characteristic
    polynomial at a point on the unit circle; exact target count_pseudomagic(k, l)
    once n >= l*k (the expectation does not depend on z)."""
    if not 0 <= l <= n:
        raise ValueError("need 0 <= l <= n")
    if k < 1:
        raise ValueError("k must be positive")
    z = complex(z)
    if abs(abs(z) - 1.0) > 1e-12:
        raise ValueError(f"|z| = {abs(z)!r} is not on the unit circle")
    target = counting.count_pseudomagic(k, l) if n >= l * k else None
    weights = np.array([z ** (n - j) * (-1) ** j for j in range(l + 1)], dtype=np.complex128)

    def values(e: np.ndarray) -> np.ndarray:
        return np.abs(e[:, : l + 1] @ weights) ** (2 * k)

    return _mc_mean(n, l, samples, seed, threads, values, complex_valued=False, target=target)


def full_poly_moment_exact(n: int, k: int) -> Fraction:
    """E|det(z - M)|^(2k) over Haar on the unit circle, exactly:
    prod_{j=1..n} (j-1)! (j+2k-1)! / ((j+k-1)!)^2."""
    if n < 1:
        raise ValueError("n must be positive")
    if k < 0:
        raise ValueError("k must be nonnegative")
    num = 1
    den = 1
    for j in range(1, n + 1):
        num *= factorial(j - 1) * factorial(j + 2 * k - 1)
        den *= factorial(j + k - 1) ** 2
    return Fraction(num, den)


def g_factor(k: int) -> Fraction:
    """Large-dimension scale of the 2k-th full-polynomial moment: prod_{j=0..k-1} j!/(j+k)!."""
    if k < 1:
        raise ValueError("k must be positive")
    out = Fraction(1)
    for j in range(k):
        out *= Fraction(factorial(j), factorial(j + k))
    return out
