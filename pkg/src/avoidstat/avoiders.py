"""Enumeration of pattern-avoiding permutations and brute-force totals.

``S_{n,r}(q)`` is the number of occurrences of ``q`` summed over all
``r``-avoiding permutations of length ``n``. Everything here is computed by
looking at every avoider and every position subset; nothing relies on a
formula. The other modules are checked against these numbers.

Two generators exist for 132-avoiders. :func:`enumerate_avoiders` is a
lexicographic stream built left to right. :func:`avoider_blocks` builds numpy
row blocks from the decomposition by the position of the entry ``n``: with
``n`` at position ``i`` the entries to its left are exactly ``n-i+1..n-1``
and both sides are again 132-avoiding. The blocks feed the vectorized
counters, one block per position of ``n``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterator, Sequence

import numpy as np

from .perms import Perm, all_perms, avoids, check_perm, count_occurrences

P132: Perm = (1, 3, 2)

THREADS_ENV = "AVOIDSTAT_THREADS"


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("catalan index must be nonnegative")
    return math.comb(2 * n, n) // (n + 1)


def expected_random_count(n: int, k: int) -> Fraction:
    """Mean number of copies of a fixed length-``k`` pattern in a uniform ``n``-permutation."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return Fraction(math.comb(n, k), math.factorial(k))


def _avoiders_132_lex(n: int) -> Iterator[Perm]:
    # A 132-avoiding prefix extends to a full avoider iff no unused value lies
    # strictly between some a < b with a before b (append the rest increasing).
    # So the next entry is either below the current minimum, or the smallest
    # unused value above it; this never reaches a dead end.
    used = [False] * (n + 2)
    prefix: list[int] = []

    def rec(lowest: int) -> Iterator[Perm]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            if v > lowest:
                if any(not used[w] for w in range(lowest + 1, v)):
                    break
            used[v] = True
            prefix.append(v)
            yield from rec(min(lowest, v))
            prefix.pop()
            used[v] = False
            if v > lowest:
                break

    yield from rec(n + 1)


def enumerate_avoiders(n: int, r: Sequence[int] = P132) -> Iterator[Perm]:
    """Stream the ``r``-avoiding permutations of length ``n`` in lexicographic order.

    For ``r != 132`` this filters all ``n!`` permutations, so it is
    exponential and only meant for small ``n``.
    """
    r = check_perm(r)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not r:
        raise ValueError("avoided pattern must be nonempty")
    if r == P132:
        return _avoiders_132_lex(n)
    return (p for p in all_perms(n) if avoids(p, r))


@lru_cache(maxsize=None)
def _all_132_rows(n: int) -> np.ndarray:
    rows = np.concatenate(list(_blocks(n)), axis=0) if n else np.zeros((1, 0), np.int8)
    rows.setflags(write=False)
    return rows


def _blocks(n: int) -> Iterator[np.ndarray]:
    for i in range(1, n + 1):
        yield _block(n, i)


def _block(n: int, i: int) -> np.ndarray:
    """All 132-avoiders of length ``n`` with ``n`` at (1-based) position ``i``."""
    left = _all_132_rows(i - 1)
    right = _all_132_rows(n - i)
    nl, nr = len(left), len(right)
    out = np.empty((nl * nr, n), dtype=np.int8)
    out[:, : i - 1] = np.repeat(left + np.int8(n - i), nr, axis=0)
    out[:, i - 1] = n
    out[:, i:] = np.tile(right, (nl, 1))
    return out


def avoider_blocks(n: int) -> Iterator[np.ndarray]:
    """Yield the 132-avoiders of length ``n`` as int8 arrays, one per position of ``n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        yield np.zeros((1, 0), np.int8)
        return
    yield from _blocks(n)


def _chain(q: Perm) -> list[int]:
    # positions of q sorted by value: q occurs at S iff the columns S[chain]
    # are increasing
    return sorted(range(len(q)), key=q.__getitem__)


def count_rows(rows: np.ndarray, q: Sequence[int]) -> np.ndarray:
    """Occurrence count of ``q`` in every row, by testing every position subset."""
    q = check_perm(q)
    n = rows.shape[1]
    k = len(q)
    counts = np.zeros(len(rows), dtype=np.int64)
    if k == 0 or k > n:
        return counts
    chain = _chain(q)
    for subset in combinations(range(n), k):
        cols = [rows[:, subset[j]] for j in chain]
        ok = cols[0] < cols[1] if k > 1 else np.ones(len(rows), bool)
        for a, b in zip(cols[1:], cols[2:]):
            ok &= a < b
        counts += ok
    return counts


def _map_blocks(fn, n: int, threads: int | None) -> int:
    threads = threads or default_threads()
    blocks = avoider_blocks(n)
    if threads == 1:
        return sum(fn(b) for b in blocks)
    with ThreadPoolExecutor(threads) as pool:
        return sum(pool.map(fn, blocks))


def total_occurrences(n: int, q: Sequence[int], r: Sequence[int] = P132,
                      threads: int | None = None) -> int:
    """``S_{n,r}(q)``: copies of ``q`` summed over every ``r``-avoider of length ``n``."""
    q, r = check_perm(q), check_perm(r)
    if not q:
        raise ValueError("pattern must be nonempty")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if len(q) > n:
        return 0
    if r == P132:
        return _map_blocks(lambda rows: int(count_rows(rows, q).sum()), n, threads)
    return sum(count_occurrences(p, q) for p in enumerate_avoiders(n, r))


def pattern_totals(n: int, k: int, threads: int | None = None) -> dict[Perm, int]:
    """``S_{n,132}(q)`` for every pattern ``q`` of length ``k`` in one pass.

    Each ``k``-subset of positions is standardized in every row and tallied.
    """
    patterns = list(permutations(range(1, k + 1)))
    if k > n:
        return {q: 0 for q in patterns}
    weights = k ** np.arange(k)
    code_of = {int(np.dot(np.array(q) - 1, weights)): q for q in patterns}
    size = k ** k

    def tally(rows: np.ndarray) -> np.ndarray:
        acc = np.zeros(size, dtype=np.int64)
        for subset in combinations(range(n), k):
            sub = rows[:, subset]
            ranks = np.argsort(np.argsort(sub, axis=1), axis=1)
            acc += np.bincount(ranks @ weights, minlength=size)
        return acc

    threads = threads or default_threads()
    blocks = avoider_blocks(n)
    if threads == 1:
        acc = sum(tally(b) for b in blocks)
    else:
        with ThreadPoolExecutor(threads) as pool:
            acc = sum(pool.map(tally, blocks))
    return {q: int(acc[c]) for c, q in code_of.items()}


@dataclass(frozen=True)
class Signature:
    q: Perm
    n_min: int
    n_max: int
    values: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        return self.values[n - self.n_min]


def signature(q: Sequence[int], n_min: int, n_max: int, r: Sequence[int] = P132,
              threads: int | None = None) -> Signature:
    if n_min > n_max:
        raise ValueError("empty range")
    q = check_perm(q)
    values = tuple(total_occurrences(n, q, r, threads) for n in range(n_min, n_max + 1))
    return Signature(q, n_min, n_max, values)
