"""Permutations, pattern occurrences and the direct/skew sum combinators.

Permutations are plain tuples of the integers ``1..n`` in one-line notation.
Occurrences are tuples of 1-based positions.
"""

from __future__ import annotations

import re
from itertools import permutations
from typing import Iterator, Sequence

Perm = tuple[int, ...]
Occurrence = tuple[int, ...]


class PermutationError(ValueError):
    pass


def check_perm(p: Sequence[int]) -> Perm:
    """Return ``p`` as a tuple, raising if it is not a permutation of 1..n."""
    p = tuple(int(x) for x in p)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise PermutationError(f"not a permutation of 1..{len(p)}: {p!r}")
    return p


def parse_perm(text: str) -> Perm:
    """Parse one-line notation.

    Entries may be separated by commas and/or whitespace. A bare digit
    string such as ``"214653"`` is accepted when the length is at most 9.
    """
    text = text.strip()
    if not text:
        return ()
    if re.fullmatch(r"\d+", text) and len(text) > 1:
        if len(text) > 9:
            raise PermutationError(
                f"compact digit string {text!r} is ambiguous for n > 9; separate entries"
            )
        return check_perm(int(c) for c in text)
    parts = [s for s in re.split(r"[,\s]+", text) if s]
    if not all(s.isdigit() for s in parts):
        raise PermutationError(f"malformed permutation: {text!r}")
    return check_perm(int(s) for s in parts)


def format_perm(p: Sequence[int], compact: bool = True) -> str:
    if compact and len(p) <= 9:
        return "".join(str(x) for x in p)
    return " ".join(str(x) for x in p)


def format_occurrence(occ: Occurrence) -> str:
    return ",".join(str(i) for i in occ)


def standardize(seq: Sequence[int]) -> Perm:
    """The permutation order-isomorphic to a sequence of distinct numbers."""
    ranks = {v: r for r, v in enumerate(sorted(seq), start=1)}
    return tuple(ranks[v] for v in seq)


def _bounds(q: Perm) -> list[tuple[int, int]]:
    # For each j, positions (within q[:j]) of the nearest smaller and nearest
    # larger earlier values; -1 when absent.
    out = []
    for j, v in enumerate(q):
        lo = hi = -1
        for i in range(j):
            w = q[i]
            if w < v and (lo < 0 or w > q[lo]):
                lo = i
            elif w > v and (hi < 0 or w < q[hi]):
                hi = i
        out.append((lo, hi))
    return out


def list_occurrences(p: Sequence[int], q: Sequence[int]) -> Iterator[Occurrence]:
    """Yield every occurrence of ``q`` in ``p`` in lexicographic index order.

    A partial selection is abandoned as soon as it stops being
    order-isomorphic to the matching prefix of ``q``.
    """
    k, n = len(q), len(p)
    if k == 0:
        raise PermutationError("pattern must be nonempty")
    if k > n:
        return
    bounds = _bounds(tuple(q))
    chosen = [0] * k  # 0-based positions

    def extend(j: int, start: int) -> Iterator[Occurrence]:
        lo, hi = bounds[j]
        floor = p[chosen[lo]] if lo >= 0 else 0
        ceil = p[chosen[hi]] if hi >= 0 else n + 1
        for i in range(start, n - (k - j) + 1):
            v = p[i]
            if floor < v < ceil:
                chosen[j] = i
                if j + 1 == k:
                    yield tuple(c + 1 for c in chosen)
                else:
                    yield from extend(j + 1, i + 1)

    yield from extend(0, 0)


def count_occurrences(p: Sequence[int], q: Sequence[int]) -> int:
    return sum(1 for _ in list_occurrences(p, q))


def avoids(p: Sequence[int], q: Sequence[int]) -> bool:
    return next(list_occurrences(p, q), None) is None


def is_occurrence(p: Sequence[int], q: Sequence[int], occ: Sequence[int]) -> bool:
    if len(occ) != len(q) or any(b <= a for a, b in zip(occ, occ[1:])):
        return False
    if not occ or occ[0] < 1 or occ[-1] > len(p):
        return False
    return standardize([p[i - 1] for i in occ]) == tuple(q)


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p, start=1):
        inv[v - 1] = i
    return tuple(inv)


def oplus(q: Sequence[int], t: Sequence[int]) -> Perm:
    """Direct sum: ``t`` placed after ``q`` with its entries raised by len(q)."""
    if not q and not t:
        raise PermutationError("direct sum of two empty patterns")
    k = len(q)
    return tuple(q) + tuple(x + k for x in t)


def ominus(q: Sequence[int], t: Sequence[int]) -> Perm:
    """Skew sum: ``t`` placed after ``q`` with the entries of ``q`` raised by len(t)."""
    if not q and not t:
        raise PermutationError("skew sum of two empty patterns")
    m = len(t)
    return tuple(x + m for x in q) + tuple(t)


def increasing(u: int) -> Perm:
    if u < 1:
        raise PermutationError(f"increasing pattern needs u >= 1, got {u}")
    return tuple(range(1, u + 1))


def ends_in_max(q: Sequence[int]) -> bool:
    return bool(q) and q[-1] == len(q)


def all_perms(n: int) -> Iterator[Perm]:
    """All of S_n in lexicographic order."""
    return permutations(range(1, n + 1))
