"""Exact enumeration of nonnegative integer matrices with line-sum constraints.

Counts contingency tables (prescribed row and column sums), magic squares
(every row and column summing to exactly j), pseudomagic squares (row and
column sums at most l, including per-line bound vectors), and symmetric
variants with even diagonal entries.  Everything returns arbitrary-precision
integers; there is no fixed-width fast path.

The workhorse is a column-by-column dynamic program.  Its state is the
multiset of remaining row capacities: once the processed columns are fixed,
rows with equal remaining capacity are interchangeable, so sorting the
capacity vector is a sound canonicalization that collapses the state space.
At-most constraints are handled directly (each column sum ranges over
0..bound) rather than through slack variables.

``brute_force_count`` enumerates matrices entry by entry with running-sum
pruning and no memoization; it is the independent oracle the test suite
checks every DP counter against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetError

DEFAULT_GRID_BUDGET = 10**7


class Partition:
    """Weakly decreasing tuple of positive integers (line-sum prescription).

    Accepts any iterable of nonnegative integers; zero parts are dropped and
    the rest sorted decreasing, so callers may pass unsorted compositions.
    """

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        cleaned = []
        for p in parts:
            q = int(p)
            if q < 0:
                raise ValueError(f"partition parts must be nonnegative, got {p}")
            if q:
                cleaned.append(q)
        cleaned.sort(reverse=True)
        self.parts = tuple(cleaned)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"


@dataclass(frozen=True)
class SumConstraint:
    """One line-sum constraint: the sum is exactly ``bound`` or at most ``bound``."""

    kind: str  # "exact" or "atmost"
    bound: int

    def __post_init__(self):
        if self.kind not in ("exact", "atmost"):
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if self.bound < 0:
            raise ValueError("constraint bound must be nonnegative")


def exact_sum(value: int) -> SumConstraint:
    return SumConstraint("exact", value)


def sum_at_most(value: int) -> SumConstraint:
    return SumConstraint("atmost", value)


@dataclass(frozen=True)
class MatrixCountSpec:
    """Full description of one matrix-counting problem.

    ``row_constraints[i]`` governs the sum of row i, ``col_constraints[j]``
    the sum of column j.  ``symmetric`` restricts to symmetric matrices
    (requires a square shape); ``even_diagonal`` restricts diagonal entries
    to even values.
    """

    rows: int
    cols: int
    row_constraints: tuple
    col_constraints: tuple
    symmetric: bool = False
    even_diagonal: bool = False

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix shape must be positive")
        if len(self.row_constraints) != self.rows:
            raise ValueError("need one constraint per row")
        if len(self.col_constraints) != self.cols:
            raise ValueError("need one constraint per column")
        if self.symmetric and self.rows != self.cols:
            raise ValueError("symmetric spec requires a square matrix")


#### spec constructors for the named families ####


def contingency_spec(rows, cols) -> MatrixCountSpec:
    mu, nu = Partition(rows), Partition(cols)
    rp = mu.parts or (0,)
    cp = nu.parts or (0,)
    return MatrixCountSpec(
        rows=len(rp),
        cols=len(cp),
        row_constraints=tuple(exact_sum(p) for p in rp),
        col_constraints=tuple(exact_sum(p) for p in cp),
    )


def magic_spec(k: int, j: int) -> MatrixCountSpec:
    return MatrixCountSpec(k, k, (exact_sum(j),) * k, (exact_sum(j),) * k)


def pseudomagic_spec(k: int, l: int) -> MatrixCountSpec:
    return MatrixCountSpec(k, k, (sum_at_most(l),) * k, (sum_at_most(l),) * k)


def pseudomagic_multi_spec(bounds) -> MatrixCountSpec:
    bounds = tuple(int(b) for b in bounds)
    k = len(bounds)
    cons = tuple(sum_at_most(b) for b in bounds)
    return MatrixCountSpec(k, k, cons, cons)


def symmetric_even_spec(k: int, j: int) -> MatrixCountSpec:
    return MatrixCountSpec(
        k, k, (exact_sum(j),) * k, (exact_sum(j),) * k,
        symmetric=True, even_diagonal=True,
    )


def symmetric_even_bounded_spec(k: int, l: int) -> MatrixCountSpec:
    return MatrixCountSpec(
        k, k, (sum_at_most(l),) * k, (sum_at_most(l),) * k,
        symmetric=True, even_diagonal=True,
    )


#### dynamic-programming kernels ####


def _count_exact(row_sums, col_sums) -> int:
    """Matrices with exact row sums ``row_sums`` and exact column sums ``col_sums``."""
    rows = tuple(sorted((r for r in row_sums if r), reverse=True))
    cols = tuple(sorted((c for c in col_sums if c), reverse=True))
    if sum(rows) != sum(cols):
        return 0
    if not cols:
        return 1
    ncols = len(cols)
    memo = {}

    def rec(ci, caps):
        if ci == ncols:
            return 1
        key = (ci, caps)
        hit = memo.get(key)
        if hit is not None:
            return hit
        target = cols[ci]
        m = len(caps)
        suffix = [0] * (m + 1)
        for i in range(m - 1, -1, -1):
            suffix[i] = suffix[i + 1] + caps[i]
        if target > suffix[0]:
            memo[key] = 0
            return 0
        total = 0
        left = [0] * m  # leftover capacity per row for the current allocation

        def alloc(i, rem):
            nonlocal total
            if i == m - 1:
                if rem <= caps[i]:
                    left[i] = caps[i] - rem
                    total += rec(ci + 1, tuple(sorted((c for c in left if c), reverse=True)))
                return
            lo = rem - suffix[i + 1]
            if lo < 0:
                lo = 0
            for c in range(min(caps[i], rem), lo - 1, -1):
                left[i] = caps[i] - c
                alloc(i + 1, rem - c)

        alloc(0, target)
        memo[key] = total
        return total

    return rec(0, rows)


def _count_atmost(bounds) -> int:
    """Square matrices with row i sum <= bounds[i] and column j sum <= bounds[j]."""
    # the count depends only on the multiset of bounds (relabeling rows and
    # columns by the same permutation is a bijection), so sort once
    live = tuple(sorted((b for b in bounds if b), reverse=True))
    if not live:
        return 1
    k = len(live)
    memo = {}

    def rec(ci, caps):
        if ci == k:
            return 1
        key = (ci, caps)
        hit = memo.get(key)
        if hit is not None:
            return hit
        m = len(caps)
        total = 0
        left = [0] * m

        def alloc(i, budget):
            nonlocal total
            if i == m - 1:
                top = caps[i] if caps[i] < budget else budget
                for c in range(top + 1):
                    left[i] = caps[i] - c
                    total += rec(ci + 1, tuple(sorted((x for x in left if x), reverse=True)))
                return
            top = caps[i] if caps[i] < budget else budget
            for c in range(top + 1):
                left[i] = caps[i] - c
                alloc(i + 1, budget - c)

        alloc(0, live[ci])
        memo[key] = total
        return total

    return rec(0, live)


#### counting operations ####


def count_contingency(rows, cols) -> int:
    """Number of nonnegative integer matrices with row sums ``rows`` and column sums ``cols``.

    Returns 0 when the weights differ.  Zero parts are dropped; the count is
    invariant under reordering of either prescription.
    """
    mu, nu = Partition(rows), Partition(cols)
    return _count_exact(mu.parts, nu.parts)


def count_magic(k: int, j: int) -> int:
    """Number of k-by-k nonnegative integer matrices with every line sum exactly j."""
    if k < 1:
        raise ValueError("k must be positive")
    if j < 0:
        raise ValueError("j must be nonnegative")
    return _count_exact((j,) * k, (j,) * k)


def count_pseudomagic(k: int, l: int) -> int:
    """Number of k-by-k nonnegative integer matrices with every line sum at most l."""
    if k < 1:
        raise ValueError("k must be positive")
    if l < 0:
        raise ValueError("l must be nonnegative")
    return _count_atmost((l,) * k)


def count_pseudomagic_multi(bounds) -> int:
    """Line-sum bounds per index: row i and column i both sum to at most bounds[i]."""
    bounds = tuple(int(b) for b in bounds)
    if not bounds:
        raise ValueError("need at least one bound")
    if any(b < 0 for b in bounds):
        raise ValueError("bounds must be nonnegative")
    return _count_atmost(bounds)


def count_symmetric_even(k: int, j: int) -> int:
    """Symmetric k-by-k nonnegative integer matrices, line sums exactly j, even diagonal.

    Zero whenever k*j is odd: the total weight equals the diagonal sum plus
    twice the off-diagonal sum, and an even diagonal forces it even.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if j < 0:
        raise ValueError("j must be nonnegative")
    load = [0] * k

    def row(i):
        r = j - load[i]
        if r < 0:
            return 0
        if i == k - 1:
            return 1 if r % 2 == 0 else 0
        total = 0

        def off(t, s):
            # s = row-i allowance left for entries (i,t..k-1) plus the diagonal
            nonlocal total
            if t == k:
                if s % 2 == 0:  # diagonal entry is forced to s
                    total += row(i + 1)
                return
            cap = j - load[t]
            if s < cap:
                cap = s
            for v in range(cap + 1):
                load[t] += v
                off(t + 1, s - v)
                load[t] -= v

        off(i + 1, r)
        return total

    return row(0)


def count_symmetric_even_bounded(k: int, l: int) -> int:
    """Symmetric k-by-k nonnegative integer matrices, line sums at most l, even diagonal."""
    if k < 1:
        raise ValueError("k must be positive")
    if l < 0:
        raise ValueError("l must be nonnegative")
    load = [0] * k

    def row(i):
        r = l - load[i]
        if r < 0:
            return 0
        if i == k - 1:
            return r // 2 + 1
        total = 0

        def off(t, s):
            nonlocal total
            if t == k:
                total += (s // 2 + 1) * row(i + 1)  # any even diagonal <= s
                return
            cap = l - load[t]
            if s < cap:
                cap = s
            for v in range(cap + 1):
                load[t] += v
                off(t + 1, s - v)
                load[t] -= v

        off(i + 1, r)
        return total

    return row(0)


#### brute-force oracle ####


def brute_force_count(spec: MatrixCountSpec, explosion_cap: int = DEFAULT_GRID_BUDGET) -> int:
    """Count matrices satisfying ``spec`` by entry-by-entry enumeration.

    Independent of the DP counters: row-major depth-first fill with
    running-sum pruning, no canonicalization, no memoization.  Refuses with
    BudgetError when the raw grid (product of per-entry ranges) exceeds
    ``explosion_cap``.
    """
    m, n = spec.rows, spec.cols
    row_lim = [c.bound for c in spec.row_constraints]
    col_lim = [c.bound for c in spec.col_constraints]
    row_exact = [c.kind == "exact" for c in spec.row_constraints]
    col_exact = [c.kind == "exact" for c in spec.col_constraints]

    if spec.symmetric:
        entries = [(i, jj) for i in range(m) for jj in range(i, n)]
    else:
        entries = [(i, jj) for i in range(m) for jj in range(n)]

    def entry_bound(i, jj):
        b = min(row_lim[i], col_lim[jj])
        if spec.symmetric and i != jj:
            b = min(b, row_lim[jj], col_lim[i])
        return b

    grid = 1
    for (i, jj) in entries:
        grid *= entry_bound(i, jj) + 1
        if grid > explosion_cap:
            raise BudgetError(
                f"brute-force grid exceeds explosion cap {explosion_cap}"
            )

    rsum = [0] * m
    csum = [0] * n
    last = len(entries) - 1
    count = 0

    def fill(pos):
        nonlocal count
        i, jj = entries[pos]
        step = 2 if (spec.even_diagonal and i == jj) else 1
        top = entry_bound(i, jj)
        for v in range(0, top + 1, step):
            if rsum[i] + v > row_lim[i] or csum[jj] + v > col_lim[jj]:
                break
            if spec.symmetric and i != jj and (
                rsum[jj] + v > row_lim[jj] or csum[i] + v > col_lim[i]
            ):
                continue
            rsum[i] += v
            csum[jj] += v
            if spec.symmetric and i != jj:
                rsum[jj] += v
                csum[i] += v
            ok = True
            if jj == n - 1 and row_exact[i] and rsum[i] != row_lim[i]:
                ok = False  # row i is complete but missed its exact sum
            if ok:
                if pos == last:
                    if all(
                        (not col_exact[t]) or csum[t] == col_lim[t] for t in range(n)
                    ) and all(
                        (not row_exact[t]) or rsum[t] == row_lim[t] for t in range(m)
                    ):
                        count += 1
                else:
                    fill(pos + 1)
            rsum[i] -= v
            csum[jj] -= v
            if spec.symmetric and i != jj:
                rsum[jj] -= v
                csum[i] -= v

    fill(0)
    return count
