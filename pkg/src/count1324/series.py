"""Truncated occurrence series for the pattern 1324.

Counts permutations of length n by their number of 1324 occurrences, up to a
truncation order r, via a recursion over exponent states.  A state is an
upper-triangular matrix U of exponents plus an exponent vector v; peeling off
the first value of a permutation maps a size-n state to a size-(n-1) state by
deleting a row, merging two columns (adding prefix sums of v into the merged
column) and merging two entries of v.  Exponents only matter up to r+1, so
all additions saturate there; a branch whose prefactor exponent already
exceeds r contributes nothing and is discarded.

The engine stores rows as byte strings (row i holds columns i..n; entries
below the diagonal are never read) and memoizes on the full state.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field

from .errors import ResourceLimitError
from .perms import ORACLE_CAP_DEFAULT, PATTERN_1324, brute_force_distribution

DEFAULT_MEMORY_CAP = 4 * 1024**3  # bytes, approximate accounting

# rough per-entry bookkeeping overhead of a big dict with bytes keys
_ENTRY_OVERHEAD = 120


@dataclass(frozen=True)
class TruncatedCounterSeries:
    """Coefficients [c_0..c_r] of the occurrence-marking series, truncated at r."""

    r: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.r + 1:
            raise ValueError("need exactly r+1 coefficients")
        if any(c < 0 for c in self.coeffs):
            raise ValueError("coefficients must be non-negative")


@dataclass(frozen=True)
class ExponentState:
    """Engine state: saturated exponent matrix (upper triangle) plus vector.

    ``rows[i-1]`` holds the entries of row i in columns i..n; ``v`` has one
    exponent per column.  All entries lie in 0..cap.
    """

    cap: int
    rows: tuple[bytes, ...]
    v: bytes

    @property
    def n(self) -> int:
        return len(self.v)

    @classmethod
    def zeros(cls, n: int, cap: int) -> "ExponentState":
        return cls(cap=cap, rows=tuple(bytes(n - i) for i in range(n)), v=bytes(n))

    @classmethod
    def from_square(cls, matrix, v, cap: int) -> "ExponentState":
        """Build a state from a full square matrix (sub-diagonal entries ignored)."""
        n = len(v)
        rows = tuple(bytes(min(x, cap) for x in matrix[i][i:]) for i in range(n))
        return cls(cap=cap, rows=rows, v=bytes(min(x, cap) for x in v))

    def square(self) -> list[list[int]]:
        """Full n x n matrix with zeros below the diagonal."""
        n = self.n
        return [[0] * i + list(self.rows[i]) for i in range(n)]


def _merge_vector(v: bytes, i: int, cap: int) -> bytes:
    """Entries i and i+1 of v collapse to sat(v_i + v_{i+1} + 1); at i=n the
    last entry is dropped instead."""
    n = len(v)
    if i < n:
        return v[: i - 1] + bytes((min(v[i - 1] + v[i] + 1, cap),)) + v[i + 1 :]
    return v[: n - 1]


def _merge_rows(rows: tuple[bytes, ...], v: bytes, i: int, cap: int) -> tuple[bytes, ...]:
    """Delete row i and merge columns i-1 and i of the trapezoid ``rows``.

    The merged column entry for a surviving row k <= i-1 is
    sat(v_1+...+v_k + u_{k,i-1} + u_{k,i}); rows below keep their stored
    span unchanged (the merged column falls under their diagonal).
    """
    if i == 1:
        return rows[1:]
    new_rows = []
    prefix = 0
    for k in range(1, i):  # surviving rows above the deleted one
        prefix += v[k - 1]
        old = rows[k - 1]  # columns k..n
        a = i - 1 - k  # offset of column i-1 in this row
        w = prefix + old[a] + old[a + 1]
        if w > cap:
            w = cap
        new_rows.append(old[:a] + bytes((w,)) + old[a + 2 :])
    new_rows.extend(rows[i:])
    return tuple(new_rows)


def vector_merge(v, i: int, cap: int) -> tuple[int, ...]:
    """Public form of the v-merge on plain integer sequences.

    >>> vector_merge((0, 0, 0), 1, 2)
    (1, 0)
    >>> vector_merge((0, 0), 2, 2)
    (0,)
    """
    if not 1 <= i <= len(v):
        raise ValueError(f"branch index {i} out of range 1..{len(v)}")
    return tuple(_merge_vector(bytes(min(x, cap) for x in v), i, cap))


def column_merge(state: ExponentState, i: int) -> ExponentState:
    """Apply one branch step to a state: matrix merge plus vector merge."""
    if not 1 <= i <= state.n:
        raise ValueError(f"branch index {i} out of range 1..{state.n}")
    return ExponentState(
        cap=state.cap,
        rows=_merge_rows(state.rows, state.v, i, state.cap),
        v=_merge_vector(state.v, i, state.cap),
    )


def _branch_exponent(row: bytes, n: int, i: int, r: int) -> int:
    """Prefactor exponent sum((n-j) * u_{i,j}, j=i..n-1), early-exiting past r."""
    e = 0
    for idx in range(len(row) - 1):  # column j = i + idx, weight n - j
        u = row[idx]
        if u:
            e += (n - i - idx) * u
            if e > r:
                return e
    return e


class SeriesEngine:
    """Memoized evaluator of the truncated occurrence series for fixed r.

    One engine instance holds one cache; successive calls for different n
    share it.  Evaluation is single-threaded and deterministic.
    """

    def __init__(self, r: int, memory_cap: int = DEFAULT_MEMORY_CAP,
                 discard_heavy_branches: bool = True):
        if r < 0:
            raise ValueError("truncation order must be >= 0")
        if r > 200:
            raise ValueError("truncation order too large for byte-packed exponents")
        self.r = r
        self.cap = r + 1
        self.memory_cap = memory_cap
        self.discard_heavy_branches = discard_heavy_branches
        self._memo: dict[tuple, tuple[int, ...]] = {}
        self._memo_bytes = 0
        self.hits = 0
        self.misses = 0
        self._unit = (1,) + (0,) * r
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))

    @property
    def cache_entries(self) -> int:
        return len(self._memo)

    def counts(self, n: int) -> TruncatedCounterSeries:
        """Series for S_n: coefficient j is the number of permutations with
        exactly j occurrences of 1324, for j = 0..r."""
        if n < 0:
            raise ValueError("n must be >= 0")
        state = ExponentState.zeros(n, self.cap)
        coeffs = self._eval(state.rows, state.v)
        return TruncatedCounterSeries(r=self.r, coeffs=coeffs)

    def _eval(self, rows: tuple[bytes, ...], v: bytes) -> tuple[int, ...]:
        n = len(v)
        if n <= 1:
            self.misses += 1
            return self._unit
        key = (rows, v)
        got = self._memo.get(key)
        if got is not None:
            self.hits += 1
            return got
        self.misses += 1
        r = self.r
        cap = self.cap
        total = [0] * (r + 1)
        for i in range(1, n + 1):
            e = _branch_exponent(rows[i - 1], n, i, r)
            if e > r and self.discard_heavy_branches:
                continue
            sub = self._eval(_merge_rows(rows, v, i, cap), _merge_vector(v, i, cap))
            for j in range(r + 1 - e):
                c = sub[j]
                if c:
                    total[j + e] += c
        out = tuple(total)
        self._memo[key] = out
        self._memo_bytes += sum(len(b) for b in rows) + len(v) + _ENTRY_OVERHEAD
        if self._memo_bytes > self.memory_cap:
            raise ResourceLimitError(
                f"series cache exceeded memory cap ({self.memory_cap} bytes) "
                f"at {len(self._memo)} entries"
            )
        return out


def series_counts(n: int, r: int, memory_cap: int = DEFAULT_MEMORY_CAP) -> TruncatedCounterSeries:
    """One-shot evaluation of the length-n series truncated at order r.

    >>> series_counts(4, 1).coeffs
    (23, 1)
    """
    return SeriesEngine(r, memory_cap=memory_cap).counts(n)


def series_counts_checked(n: int, r: int, cap: int = ORACLE_CAP_DEFAULT) -> TruncatedCounterSeries:
    """series_counts cross-checked against exhaustive enumeration of S_n."""
    out = series_counts(n, r)
    hist = brute_force_distribution(n, PATTERN_1324, cap=cap)
    expected = tuple(hist.get(j, 0) for j in range(r + 1))
    if out.coeffs != expected:
        raise AssertionError(
            f"series/oracle mismatch at n={n}, r={r}: engine {out.coeffs}, "
            f"oracle {expected}"
        )
    return out
