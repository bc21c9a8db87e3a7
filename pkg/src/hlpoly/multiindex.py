"""Multi-index combinatorics.

Exponents are tuples ``alpha`` of nonnegative ints with ``sum(alpha) == m``.
Index tuples are 0-based tuples ``i = (i_1, ..., i_m)`` of variable indices;
the 1-based convention only appears at the JSON/CLI boundary.
"""

from __future__ import annotations

import math
from collections import Counter
from itertools import combinations

MAX_EXACT_DEGREE = 20
DEFAULT_ENUM_CAP = 10**7

Exponent = tuple[int, ...]
IndexTuple = tuple[int, ...]


def _check_exponent(alpha) -> Exponent:
    alpha = tuple(int(a) for a in alpha)
    if not alpha:
        raise ValueError("exponent must have length n >= 1")
    if any(a < 0 for a in alpha):
        raise ValueError(f"negative entry in exponent {alpha}")
    return alpha


def multinomial(m: int, alpha) -> int:
    """Return m! / (alpha_1! ... alpha_n!) exactly."""
    alpha = _check_exponent(alpha)
    if sum(alpha) != m:
        raise ValueError(f"degree mismatch: |alpha| = {sum(alpha)} != m = {m}")
    if m > MAX_EXACT_DEGREE:
        raise OverflowError(f"m = {m} exceeds exact range (m <= {MAX_EXACT_DEGREE}); use log_multinomial")
    out = math.factorial(m)
    for a in alpha:
        out //= math.factorial(a)
    return out


def log_multinomial(alpha) -> float:
    alpha = _check_exponent(alpha)
    return math.lgamma(sum(alpha) + 1) - sum(math.lgamma(a + 1) for a in alpha)


def count_exponents(m: int, n: int) -> int:
    return math.comb(n + m - 1, m)


def enumerate_exponents(m: int, n: int, cap: int = DEFAULT_ENUM_CAP) -> list[Exponent]:
    """All exponents of degree m in n variables, first entry descending.

    >>> enumerate_exponents(2, 2)
    [(2, 0), (1, 1), (0, 2)]
    """
    if m < 0 or n < 1:
        raise ValueError(f"need m >= 0 and n >= 1, got m={m}, n={n}")
    count = count_exponents(m, n)
    if count > cap:
        raise ValueError(f"{count} exponents for (m={m}, n={n}) exceeds cap {cap}")
    out: list[Exponent] = []

    def rec(prefix: list[int], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for a in range(remaining, -1, -1):
            prefix.append(a)
            rec(prefix, remaining - a, slots - 1)
            prefix.pop()

    rec([], m, n)
    return out


def exponent_of(i, n: int) -> Exponent:
    """Count occurrences of each variable index in ``i``."""
    alpha = [0] * n
    for k in i:
        if not 0 <= k < n:
            raise ValueError(f"index {k} out of range for n = {n}")
        alpha[k] += 1
    return tuple(alpha)


def canonical_index(alpha) -> IndexTuple:
    """Nondecreasing index tuple with exponent ``alpha`` (the class [i])."""
    alpha = _check_exponent(alpha)
    return tuple(j for j, a in enumerate(alpha) for _ in range(a))


def canonicalize(i) -> IndexTuple:
    return tuple(sorted(i))


def orbit_size(i) -> int:
    """Number of distinct rearrangements of ``i``, written |i|."""
    i = tuple(i)
    out = math.factorial(len(i))
    for c in Counter(i).values():
        out //= math.factorial(c)
    return out


def distinct_permutations(i):
    """Yield each distinct rearrangement of ``i`` once (the orbit of i)."""
    counts = Counter(i)
    keys = sorted(counts)
    m = len(i)
    buf: list[int] = []

    def rec():
        if len(buf) == m:
            yield tuple(buf)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                buf.append(k)
                yield from rec()
                buf.pop()
                counts[k] += 1

    yield from rec()


def index_tuples_J(m: int, n: int) -> list[IndexTuple]:
    """J(m, n): nondecreasing index tuples, in the order of enumerate_exponents."""
    return [canonical_index(a) for a in enumerate_exponents(m, n)]


def subsets(m: int, k: int) -> list[tuple[int, ...]]:
    """P_k(m) as sorted 0-based position tuples."""
    return list(combinations(range(m), k))
