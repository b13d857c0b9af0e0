"""Grouping patterns by their totals over 132-avoiders, and explaining equal pairs.

Two patterns are grouped together when ``S_{n,132}`` agrees on every ``n``
in a finite range. That is evidence, not proof, and every report carries the
range it was computed on.

Known reasons for two patterns of the same length to agree:

* ``inverse-trivial``: one is the inverse of the other (132 is an
  involution, so inversion permutes the avoiders).
* ``theorem-general``: the pair is ``(q ⊖ t) ⊕ i_u`` and ``(q ⊕ i_u) ⊖ t``
  with ``q`` and ``t`` ending in their largest entry.
* ``corollary``: both lie in the family
  ``((q ⊕ i_v) ⊖ t) ⊕ i_{u-v}``, ``1 <= v < u``, of one such witness.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Optional, Sequence

from .avoiders import P132, enumerate_avoiders, pattern_totals, signature
from .perms import Perm, avoids, check_perm, increasing, inverse, ominus, oplus

MAX_H = 6
MAX_N = 12


class GuardError(ValueError):
    pass


class NotEquivalentError(ValueError):
    pass


@dataclass(frozen=True)
class EquivClass:
    members: tuple[Perm, ...]
    signature: tuple[int, ...]
    n_min: int
    n_max: int

    @property
    def degenerate(self) -> bool:
        """Members contain 132, so every total is zero."""
        return not any(avoids(q, P132) for q in self.members)

    def as_dict(self) -> dict:
        return {"members": ["".join(map(str, q)) for q in self.members],
                "signature": [str(v) for v in self.signature],
                "n_range": [self.n_min, self.n_max],
                "degenerate": self.degenerate}


def classify_patterns(h: int, n_min: int | None = None, n_max: int | None = None,
                      force: bool = False, threads: int | None = None) -> list[EquivClass]:
    """Partition all ``h!`` patterns by their totals over ``n_min..n_max``.

    Defaults to ``n`` in ``[h, h + 4]``. Classes are sorted by signature.
    """
    if h < 1:
        raise ValueError("h must be positive")
    n_min = h if n_min is None else n_min
    n_max = h + 4 if n_max is None else n_max
    if n_min > n_max:
        raise ValueError("empty n range")
    if not force and (h > MAX_H or n_max > MAX_N):
        raise GuardError(f"h={h}, n_max={n_max} exceed the guard (h <= {MAX_H}, n <= {MAX_N})")
    sigs: dict[Perm, list[int]] = {q: [] for q in permutations(range(1, h + 1))}
    for n in range(n_min, n_max + 1):
        totals = pattern_totals(n, h, threads)
        for q in sigs:
            sigs[q].append(totals[q])
    groups: dict[tuple[int, ...], list[Perm]] = {}
    for q, s in sigs.items():
        groups.setdefault(tuple(s), []).append(q)
    return [EquivClass(tuple(sorted(ms)), s, n_min, n_max) for s, ms in sorted(groups.items())]


@dataclass(frozen=True)
class TheoremPair:
    left: Perm   # (q ⊖ t) ⊕ i_u
    right: Perm  # (q ⊕ i_u) ⊖ t
    q: Perm
    t: Perm
    u: int

    def corollary_patterns(self) -> list[Perm]:
        """``((q ⊕ i_v) ⊖ t) ⊕ i_{u-v}`` for ``1 <= v < u``."""
        return [oplus(ominus(oplus(self.q, increasing(v)), self.t), increasing(self.u - v))
                for v in range(1, self.u)]


def _ending_in_max_avoiders(k: int) -> list[Perm]:
    # 132-avoiders of length k ending in k: a (k-1)-avoider followed by k
    return [p + (k,) for p in enumerate_avoiders(k - 1)]


def theorem_pairs(h: int, u: int | None = None) -> list[TheoremPair]:
    """Every pair the direct/skew sum construction gives at length ``h``.

    ``q`` and ``t`` range over 132-avoiders ending in their largest entry
    (anything else gives two identically zero sides). Pass ``u`` to restrict.
    """
    if h < 3:
        raise ValueError("pairs need h >= 3")
    seen: set[tuple[Perm, Perm]] = set()
    out = []
    for uu in range(1, h - 1):
        if u is not None and uu != u:
            continue
        for k in range(1, h - uu):
            m = h - uu - k
            for q in _ending_in_max_avoiders(k):
                for t in _ending_in_max_avoiders(m):
                    iu = increasing(uu)
                    left, right = oplus(ominus(q, t), iu), ominus(oplus(q, iu), t)
                    key = (left, right)
                    if key not in seen:
                        seen.add(key)
                        out.append(TheoremPair(left, right, q, t, uu))
    return out


@dataclass
class PairExplanation:
    q: Perm
    q2: Perm
    tag: str  # inverse-trivial | theorem-general | corollary | unexplained
    witness: Optional[dict] = None
    chain: list = field(default_factory=list)
    n_min: int = 0
    n_max: int = 0

    def as_dict(self) -> dict:
        return {"q": "".join(map(str, self.q)), "q2": "".join(map(str, self.q2)),
                "tag": self.tag, "witness": self.witness,
                "chain": [{"from": "".join(map(str, a)), "to": "".join(map(str, b)),
                           "tag": tg, "witness": w} for a, b, tg, w in self.chain],
                "n_range": [self.n_min, self.n_max],
                "evidence": "empirical, range-limited"}


@lru_cache(maxsize=None)
def _direct_edges(h: int) -> dict[Perm, list[tuple[Perm, str, dict]]]:
    edges: dict[Perm, list[tuple[Perm, str, dict]]] = {}

    def add(a, b, tag, w):
        edges.setdefault(a, []).append((b, tag, w))
        edges.setdefault(b, []).append((a, tag, w))

    for q in permutations(range(1, h + 1)):
        qi = inverse(q)
        if q < qi:
            add(q, qi, "inverse-trivial", None)
    if h >= 3:
        for pair in theorem_pairs(h):
            w = {"q": list(pair.q), "t": list(pair.t), "u": pair.u}
            add(pair.left, pair.right, "theorem-general", w)
            for v, c in enumerate(pair.corollary_patterns(), start=1):
                add(c, pair.right, "corollary", dict(w, v=v))
    return edges


_PRIORITY = ("inverse-trivial", "theorem-general", "corollary")


def explain_pair(q: Sequence[int], q2: Sequence[int], n_min: int | None = None,
                 n_max: int | None = None, threads: int | None = None) -> PairExplanation:
    """Say why ``S_{n,132}(q) = S_{n,132}(q2)``, after checking it on the range.

    A single known mechanism is preferred, in the order inverse, theorem,
    corollary. Failing that, a shortest chain of known steps through other
    patterns of the same length is reported, tagged with the strongest
    non-trivial mechanism it uses.
    """
    q, q2 = check_perm(q), check_perm(q2)
    if len(q) != len(q2):
        raise ValueError("patterns must have the same length")
    if q == q2:
        raise ValueError("the two patterns are identical")
    h = len(q)
    n_min = h if n_min is None else n_min
    n_max = h + 4 if n_max is None else n_max
    s1 = signature(q, n_min, n_max, threads=threads).values
    s2 = signature(q2, n_min, n_max, threads=threads).values
    if s1 != s2:
        raise NotEquivalentError(f"{q} and {q2} differ on n in [{n_min}, {n_max}]: {s1} vs {s2}")
    return explain_known(q, q2, n_min, n_max)


def explain_known(q: Perm, q2: Perm, n_min: int = 0, n_max: int = 0) -> PairExplanation:
    """Explanation search for a pair whose totals are already known to agree."""
    h = len(q)
    base = dict(q=q, q2=q2, n_min=n_min, n_max=n_max)
    edges = _direct_edges(h)
    direct = [(tag, w) for b, tag, w in edges.get(q, []) if b == q2]
    for tag in _PRIORITY:
        for tg, w in direct:
            if tg == tag:
                return PairExplanation(tag=tag, witness=w, chain=[(q, q2, tag, w)], **base)
    # breadth-first search for a chain of known steps
    prev: dict[Perm, tuple[Perm, str, dict]] = {q: None}
    todo = deque([q])
    while todo:
        a = todo.popleft()
        if a == q2:
            break
        for b, tag, w in edges.get(a, []):
            if b not in prev:
                prev[b] = (a, tag, w)
                todo.append(b)
    if q2 not in prev:
        return PairExplanation(tag="unexplained", **base)
    chain = []
    node = q2
    while prev[node] is not None:
        a, tag, w = prev[node]
        chain.append((a, node, tag, w))
        node = a
    chain.reverse()
    used = {tag for _, _, tag, _ in chain}
    tag = next(t for t in ("theorem-general", "corollary", "inverse-trivial") if t in used)
    return PairExplanation(tag=tag, witness=chain[0][3] if len(chain) == 1 else None,
                           chain=chain, **base)
