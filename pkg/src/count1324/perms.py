"""Ground-truth permutation machinery.

Permutations are plain tuples of the values 1..n ("one-line" notation,
one-indexed values).  Everything in this module is written for clarity and
used as the correctness oracle for the fast counting engines; none of it is
performance critical beyond desk scale.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ResourceLimitError

Permutation = tuple[int, ...]

# Exhaustive enumeration of S_n is n!; above this we refuse instead of
# silently grinding for hours.  10! ~ 3.6M permutations.
ORACLE_CAP_DEFAULT = 10

PATTERN_1324: Permutation = (1, 3, 2, 4)


def validate_permutation(entries: Sequence[int]) -> Permutation:
    """Check that ``entries`` is a rearrangement of 1..n and return it as a tuple.

    >>> validate_permutation([2, 1, 3])
    (2, 1, 3)
    """
    pi = tuple(entries)
    n = len(pi)
    if sorted(pi) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {pi!r}")
    return pi


def reduce(seq: Sequence[int]) -> Permutation:
    """The permutation order-isomorphic to a sequence of distinct integers.

    >>> reduce([9, 2, 7, 4])
    (4, 1, 3, 2)
    >>> reduce([5, 3, 4, 1, 2])
    (5, 3, 4, 1, 2)
    """
    rank = {v: r for r, v in enumerate(sorted(seq), 1)}
    if len(rank) != len(seq):
        raise ValueError(f"entries are not distinct: {tuple(seq)!r}")
    return tuple(rank[v] for v in seq)


def iter_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic order."""
    return itertools.permutations(range(1, n + 1))


def count_occurrences(pi: Sequence[int], tau: Sequence[int]) -> int:
    """Number of subsequences of ``pi`` order-isomorphic to the pattern ``tau``.

    Straightforward scan over all len(tau)-subsets; this is the oracle, not
    the fast path.

    >>> count_occurrences((5, 3, 4, 1, 2), (1, 2, 3))
    0
    >>> count_occurrences((5, 2, 1, 3, 4), (1, 2, 3))
    2
    >>> count_occurrences((1, 3, 2, 4), (1, 3, 2, 4))
    1
    """
    pi = validate_permutation(pi)
    tau = validate_permutation(tau)
    k = len(tau)
    if k == 0:
        raise ValueError("pattern must be non-empty")
    if k > len(pi):
        return 0
    # A subset matches iff reading it in tau's value order gives an
    # increasing sequence.
    order = tuple(sorted(range(k), key=tau.__getitem__))
    count = 0
    for combo in itertools.combinations(pi, k):
        if all(combo[order[t]] < combo[order[t + 1]] for t in range(k - 1)):
            count += 1
    return count


def inversions(pi: Sequence[int]) -> int:
    """Number of pairs i<j with pi_i > pi_j (the 21-pattern count).

    >>> inversions((4, 1, 3, 2, 5))
    4
    """
    pi = validate_permutation(pi)
    n = len(pi)
    return sum(1 for i in range(n) for j in range(i + 1, n) if pi[i] > pi[j])


def _check_oracle_cap(n: int, cap: int) -> None:
    if n > cap:
        raise ResourceLimitError(
            f"exhaustive enumeration of S_{n} refused (cap {cap}); "
            "raise the cap explicitly if you really want this"
        )


def _pattern_test(tau: Permutation):
    """Return fast predicate quad -> bool for length-4 patterns, else None."""
    if len(tau) != 4:
        return None
    o = tuple(sorted(range(4), key=tau.__getitem__))
    def test(q, o0=o[0], o1=o[1], o2=o[2], o3=o[3]):
        return q[o0] < q[o1] < q[o2] < q[o3]
    return test


def brute_force_distribution(n: int, tau: Sequence[int], cap: int = ORACLE_CAP_DEFAULT) -> dict[int, int]:
    """Histogram {r: #permutations in S_n with exactly r occurrences of tau}.

    The histogram sums to n!.  Deterministic; enumeration order is
    irrelevant to the result.

    >>> brute_force_distribution(4, (1, 3, 2, 4))
    {0: 23, 1: 1}
    """
    _check_oracle_cap(n, cap)
    tau = validate_permutation(tau)
    hist: dict[int, int] = {}
    quad = _pattern_test(tau)
    if quad is not None and n >= 4:
        for perm in itertools.permutations(range(1, n + 1)):
            c = 0
            for q in itertools.combinations(perm, 4):
                if quad(q):
                    c += 1
            hist[c] = hist.get(c, 0) + 1
    else:
        for perm in itertools.permutations(range(1, n + 1)):
            c = count_occurrences(perm, tau)
            hist[c] = hist.get(c, 0) + 1
    return dict(sorted(hist.items()))


def brute_force_joint(n: int, tau: Sequence[int], cap: int = ORACLE_CAP_DEFAULT) -> dict[tuple[int, int], int]:
    """Joint histogram {(r, k): #permutations with r occurrences and k inversions}.

    >>> brute_force_joint(2, (1, 3, 2, 4))
    {(0, 0): 1, (0, 1): 1}
    """
    _check_oracle_cap(n, cap)
    tau = validate_permutation(tau)
    out: dict[tuple[int, int], int] = {}
    quad = _pattern_test(tau)
    for perm in itertools.permutations(range(1, n + 1)):
        if quad is not None and n >= 4:
            c = 0
            for q in itertools.combinations(perm, 4):
                if quad(q):
                    c += 1
        else:
            c = count_occurrences(perm, tau)
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        out[(c, inv)] = out.get((c, inv), 0) + 1
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class WeightExponents:
    """Exponent bookkeeping for the catalytic weight of a permutation.

    ``x_exp[(i, j)]`` counts ascents (a, b) with pi_a = i < pi_b and pi_b > j
    (recorded for i <= j <= n); ``y_exp[(i, j)]`` counts 213-shaped triples
    (a, b, c) with pi_b < pi_a < pi_c, pi_a = i and pi_b >= j (recorded for
    j <= i).  ``t_exp`` is the 1324-occurrence count.  Only nonzero exponents
    are stored.
    """

    t_exp: int
    x_exp: dict[tuple[int, int], int]
    y_exp: dict[tuple[int, int], int]


def weight_exponents(pi: Sequence[int]) -> WeightExponents:
    """Compute the catalytic weight exponents of ``pi``.

    >>> weight_exponents((2, 1, 3)).y_exp
    {(2, 1): 1}
    """
    pi = validate_permutation(pi)
    n = len(pi)
    x: dict[tuple[int, int], int] = {}
    y: dict[tuple[int, int], int] = {}
    for a in range(n):
        for b in range(a + 1, n):
            if pi[a] < pi[b]:
                i = pi[a]
                for j in range(i, pi[b]):
                    x[(i, j)] = x.get((i, j), 0) + 1
    for a in range(n):
        for b in range(a + 1, n):
            if pi[b] >= pi[a]:
                continue
            for c in range(b + 1, n):
                if pi[a] < pi[c]:
                    i = pi[a]
                    for j in range(1, pi[b] + 1):
                        y[(i, j)] = y.get((i, j), 0) + 1
    t = count_occurrences(pi, PATTERN_1324) if n >= 4 else 0
    return WeightExponents(t_exp=t, x_exp=x, y_exp=y)


def weight_recursion_check(pi: Sequence[int]) -> bool:
    """Check the prepend-substitution identity for the weight of ``pi``.

    Removing the first value i of ``pi`` and reducing leaves a shorter
    permutation whose weight determines weight(pi):  apply the index
    substitutions induced by re-inserting i (values >= i shift up by one,
    ascents ending just below i split across the merged columns, 213-triples
    whose middle value equals i contribute a 1324 marker), then multiply by
    the prefactor recording the new ascents that start at i.  This identity
    is the engine recursion's correctness core, so it is checked exactly on
    integer exponent maps.
    """
    pi = validate_permutation(pi)
    if not pi:
        raise ValueError("permutation must be non-empty")
    n = len(pi)
    i = pi[0]
    direct = weight_exponents(pi)
    tail = weight_exponents(reduce(pi[1:]))

    t = tail.t_exp
    x: dict[tuple[int, int], int] = {}
    y: dict[tuple[int, int], int] = {}

    def add(d, key, e):
        d[key] = d.get(key, 0) + e

    for (b, c), e in tail.x_exp.items():
        if b < i and c >= i:
            add(x, (b, c + 1), e)
        elif b >= i:  # c >= b >= i
            add(x, (b + 1, c + 1), e)
        elif c == i - 1:  # b < i
            for m in range(1, b + 1):
                add(y, (i, m), e)
            add(x, (b, i - 1), e)
            add(x, (b, i), e)
        else:  # b < i, c < i - 1: untouched indices
            add(x, (b, c), e)
    for (b, c), e in tail.y_exp.items():
        if b >= i and c < i:
            add(y, (b + 1, c), e)
        elif b >= i and c > i:
            add(y, (b + 1, c + 1), e)
        elif b >= i:  # c == i
            t += e
            add(y, (b + 1, i), e)
            add(y, (b + 1, i + 1), e)
        else:  # b < i (hence c <= b < i): untouched
            add(y, (b, c), e)
    # new ascents created by prepending i: one to each of the n-i larger values
    for j in range(i, n):
        add(x, (i, j), n - j)

    x = {k: e for k, e in x.items() if e}
    y = {k: e for k, e in y.items() if e}
    return direct.t_exp == t and direct.x_exp == x and direct.y_exp == y
