"""Colored binary plane trees and the subtree-swapping bijections.

A colored tree is a binary plane tree with ``h = k + m + u`` black vertices.
On the A side the black entries form ``(q ⊖ t) ⊕ i_u`` and on the B side
``(q ⊕ i_u) ⊖ t``, where ``q`` (length ``k``) and ``t`` (length ``m``) both
end in their largest entry. :func:`apply_F` maps A to B by exchanging two
right subtrees; :func:`apply_f` is the original three-vertex map
(``k = m = u = 1``, 213 to 231), kept as a separate implementation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional, Sequence

from .avoiders import P132, enumerate_avoiders, total_occurrences
from .perms import (Perm, check_perm, ends_in_max, increasing, is_occurrence,
                    list_occurrences, ominus, oplus, standardize, avoids)
from .trees import BinaryPlaneTree, TreeError, cartesian_tree, swap_right_subtrees, tree_to_perm


class BijectionError(ValueError):
    pass


class StructureError(AssertionError):
    """A colored tree satisfied neither case of the case split."""


def side_patterns(q: Sequence[int], t: Sequence[int], u: int) -> tuple[Perm, Perm]:
    """The A-side and B-side patterns for ``(q, t, u)``."""
    iu = increasing(u)
    return oplus(ominus(q, t), iu), ominus(oplus(q, iu), t)


def _blocks_ok(vals: Sequence[int], k: int, m: int, u: int, side: str) -> bool:
    # vals are the black entries left to right
    if side == "A":
        qb, tb, ib = vals[:k], vals[k:k + m], vals[k + m:]
        low = qb + tb
        return (min(qb) > max(tb) and max(low) < min(ib)
                and all(a < b for a, b in zip(ib, ib[1:]))
                and qb[-1] == max(qb) and tb[-1] == max(tb))
    qb, ib, tb = vals[:k], vals[k:k + u], vals[k + u:]
    high = qb + ib
    return (min(high) > max(tb) and max(qb) < min(ib)
            and all(a < b for a, b in zip(ib, ib[1:]))
            and qb[-1] == max(qb) and tb[-1] == max(tb))


@dataclass(frozen=True)
class ColoredTree:
    tree: BinaryPlaneTree
    black: tuple[int, ...]
    k: int = 1
    m: int = 1
    u: int = 1
    # derived in __post_init__: perm (the encoded avoider), entries (black labels)

    def __post_init__(self):
        h = self.k + self.m + self.u
        if min(self.k, self.m, self.u) < 1:
            raise BijectionError("k, m, u must all be at least 1")
        if len(self.black) != h:
            raise BijectionError(f"expected {h} black vertices, got {len(self.black)}")
        if any(b <= a for a, b in zip(self.black, self.black[1:])):
            raise BijectionError("black indices must be strictly increasing")
        if self.black[0] < 1 or self.black[-1] > self.tree.n:
            raise BijectionError("black index out of range")
        perm = tree_to_perm(self.tree)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "entries", tuple(perm[i - 1] for i in self.black))

    @property
    def h(self) -> int:
        return self.k + self.m + self.u

    @property
    def pattern(self) -> Perm:
        return standardize(self.entries)

    @cached_property
    def side(self) -> Optional[str]:
        """``"A"`` or ``"B"`` when the black entries have that block structure."""
        vals = self.entries
        for s in ("A", "B"):
            if _blocks_ok(vals, self.k, self.m, self.u, s):
                return s
        return None

    def to_text(self) -> str:
        return "{};{};{},{},{}".format(
            self.tree.to_text(), ",".join(map(str, self.black)), self.k, self.m, self.u)

    @classmethod
    def from_text(cls, text: str) -> "ColoredTree":
        parts = text.split(";")
        if len(parts) != 3:
            raise BijectionError("colored tree text needs 'tree;black;k,m,u'")
        try:
            black = tuple(int(s) for s in parts[1].split(",") if s.strip())
            k, m, u = (int(s) for s in parts[2].split(","))
        except ValueError as exc:
            raise BijectionError(f"malformed colored tree text: {text!r}") from exc
        return cls(BinaryPlaneTree.from_text(parts[0]), black, k, m, u)

    def __str__(self) -> str:
        return self.to_text()


def make_colored(p: Sequence[int], occ: Sequence[int], k: int = 1, m: int = 1, u: int = 1,
                 q: Sequence[int] | None = None, t: Sequence[int] | None = None) -> ColoredTree:
    """Color the vertices of ``T(p)`` at the positions ``occ``.

    The black entries must have the A-side or B-side block structure; with
    ``q`` and ``t`` given they must form exactly one of the two side patterns.
    """
    p = check_perm(p)
    if not avoids(p, P132):
        raise BijectionError(f"{p!r} contains 132")
    ct = ColoredTree(cartesian_tree(p), tuple(occ), k, m, u)
    if q is not None or t is not None:
        if q is None or t is None or len(q) != k or len(t) != m:
            raise BijectionError("q and t must both be given with lengths k and m")
        a_pat, b_pat = side_patterns(q, t, u)
        if not (is_occurrence(p, a_pat, occ) or is_occurrence(p, b_pat, occ)):
            raise BijectionError(f"{tuple(occ)} is not an occurrence of {a_pat} or {b_pat}")
    elif ct.side is None:
        raise BijectionError(f"black entries {ct.entries} match neither side for {(k, m, u)}")
    return ct


@dataclass(frozen=True)
class CaseTag:
    case: int
    pivot: Optional[int] = None


def classify(ct: ColoredTree) -> CaseTag:
    """Which rule of ``F`` applies to an A-side tree (pivot set in case 2)."""
    if ct.side != "A":
        raise BijectionError("classify needs an A-side colored tree")
    tree = ct.tree
    qb = ct.black[ct.k - 1]
    qa = ct.black[ct.k + ct.m - 1]
    if tree.is_right_descendant(qa, qb):
        return CaseTag(1)
    x = tree.lowest_common_ancestor(qb, qa)
    if not (tree.is_left_descendant(qb, x) and tree.is_right_descendant(qa, x)):
        raise StructureError(f"no case applies to {ct}")
    if x in ct.black:
        raise StructureError(f"pivot {x} is black in {ct}")
    return CaseTag(2, x)


def _recolor(tree: BinaryPlaneTree, a: int, b: int, black: Sequence[int],
             drop: int | None = None, add: int | None = None, with_map: bool = False):
    new_tree, relabel = swap_right_subtrees(tree, a, b)
    nodes = [v for v in black if v != drop]
    if add is not None:
        nodes.append(add)
    black = tuple(sorted(relabel[v] for v in nodes))
    if with_map:
        return new_tree, black, relabel
    return new_tree, black


def _require_side(ct: ColoredTree, side: str):
    if ct.side != side:
        raise BijectionError(f"expected a {side}-side colored tree for {(ct.k, ct.m, ct.u)}, got {ct}")


def _apply_F(ct: ColoredTree, tag: CaseTag | None = None) -> tuple[ColoredTree, dict[int, int]]:
    _require_side(ct, "A")
    tag = tag or classify(ct)
    qb = ct.black[ct.k - 1]
    qc = ct.black[-1]
    if tag.case == 1:
        tree, black, relabel = _recolor(ct.tree, qb, qc, ct.black, with_map=True)
    else:
        tree, black, relabel = _recolor(ct.tree, tag.pivot, qc, ct.black,
                                        drop=qc, add=tag.pivot, with_map=True)
    out = ColoredTree(tree, black, ct.k, ct.m, ct.u)
    assert out.side == "B", f"image of {ct} is not B-side: {out}"
    return out, relabel


def apply_F(ct: ColoredTree) -> ColoredTree:
    """Map an A-side colored tree to its B-side image.

    Rule 1 (the ``k``-th black vertex has the ``(k+m)``-th in its right
    subtree): swap the right subtrees of the ``k``-th and the last black
    vertex. Rule 2: swap the right subtrees of the separating vertex and the
    last black vertex, and move the last black color onto the separator.
    """
    return _apply_F(ct)[0]


def has_black_root(ct: ColoredTree) -> bool:
    """True if one black vertex is an ancestor of all the other black vertices."""
    tree = ct.tree
    return any(all(tree.is_ancestor(a, b) for b in ct.black if b != a) for a in ct.black)


def apply_F_inverse(ct: ColoredTree) -> ColoredTree:
    """Map a B-side colored tree back to its unique A-side preimage."""
    _require_side(ct, "B")
    k, u = ct.k, ct.u
    tree = ct.tree
    if has_black_root(ct):
        new_tree, black = _recolor(tree, ct.black[k - 1], ct.black[k + u - 1], ct.black)
    else:
        ux = ct.black[k]
        uc = tree.lowest_common_ancestor(ux, ct.black[-1])
        if uc in ct.black:
            raise StructureError(f"common ancestor {uc} is black in {ct}")
        new_tree, black = _recolor(tree, ux, uc, ct.black, drop=ux, add=uc)
    out = ColoredTree(new_tree, black, ct.k, ct.m, ct.u)
    assert out.side == "A", f"preimage of {ct} is not A-side: {out}"
    return out


def _three(ct: ColoredTree):
    if (ct.k, ct.m, ct.u) != (1, 1, 1):
        raise BijectionError("the three-vertex map needs k = m = u = 1")


def apply_f(ct: ColoredTree) -> ColoredTree:
    """213-colored tree to 231-colored tree.

    Case 1: the ``1`` is a right descendant of the ``2`` and the ``2`` is a
    left descendant of the ``3``; swap the right subtrees of the ``2`` and
    the ``3``. Case 2: take the lowest left descendant ``x`` of the ``3``
    having the ``2`` on its left and the ``1`` on its right; swap the right
    subtrees of ``x`` and the ``3`` and color ``x`` instead of the ``3``.
    """
    _three(ct)
    if ct.pattern != (2, 1, 3):
        raise BijectionError(f"apply_f needs a 213-colored tree, got {ct.pattern}")
    tree = ct.tree
    q2, q1, q3 = ct.black
    if tree.is_right_descendant(q1, q2) and tree.is_left_descendant(q2, q3):
        new_tree, black = _recolor(tree, q2, q3, ct.black)
        return ColoredTree(new_tree, black)
    pivots = [x for x in tree.subtree(tree.left[q3]) if tree.left[q3]
              and tree.is_left_descendant(q2, x) and tree.is_right_descendant(q1, x)]
    if not pivots:
        raise StructureError(f"neither case applies to {ct}")
    x = max(pivots, key=tree.depth)
    new_tree, black = _recolor(tree, x, q3, ct.black, drop=q3, add=x)
    return ColoredTree(new_tree, black)


def apply_f_inverse(ct: ColoredTree) -> ColoredTree:
    _three(ct)
    if ct.pattern != (2, 3, 1):
        raise BijectionError(f"apply_f_inverse needs a 231-colored tree, got {ct.pattern}")
    tree = ct.tree
    k2, k3, k1 = ct.black
    if tree.is_ancestor(k3, k2) and tree.is_ancestor(k3, k1):
        new_tree, black = _recolor(tree, k3, k2, ct.black)
    else:
        kx = tree.lowest_common_ancestor(k3, k1)
        new_tree, black = _recolor(tree, k3, kx, ct.black, drop=k3, add=kx)
    return ColoredTree(new_tree, black)


def colored_trees(n: int, pattern: Sequence[int], k: int, m: int, u: int) -> Iterator[ColoredTree]:
    """All trees on ``n`` vertices with one occurrence of ``pattern`` colored."""
    for p in enumerate_avoiders(n):
        tree = cartesian_tree(p)
        for occ in list_occurrences(p, pattern):
            yield ColoredTree(tree, occ, k, m, u)


def left_subtrees_kept(ct: ColoredTree) -> bool:
    """Whether ``apply_F`` leaves the left subtrees of the first ``k + m`` black vertices alone."""
    image, relabel = _apply_F(ct)
    t0, t1 = ct.tree, image.tree
    return all(t0.subtree_key(t0.left[v]) == t1.subtree_key(t1.left[relabel[v]])
               for v in ct.black[:ct.k + ct.m])


# exhaustive verification

GUARD_SHORT = 12   # largest n for three-letter patterns
GUARD_LONG = 11


@dataclass
class BijectionReport:
    n: int
    q: Perm
    t: Perm
    u: int
    a_pattern: Perm
    b_pattern: Perm
    size_a: int = 0
    size_b: int = 0
    expected_a: int = 0
    expected_b: int = 0
    image_in_b: bool = True
    injective: bool = True
    surjective: bool = True
    round_trip_a: bool = True
    round_trip_b: bool = True
    left_subtrees_kept: bool = True
    case_counts: dict = field(default_factory=lambda: {1: 0, 2: 0})
    counterexample: Optional[str] = None

    @property
    def ok(self) -> bool:
        return (self.image_in_b and self.injective and self.surjective
                and self.round_trip_a and self.round_trip_b and self.left_subtrees_kept
                and self.size_a == self.expected_a and self.size_b == self.expected_b
                and self.counterexample is None)

    def as_dict(self) -> dict:
        verdicts = ("image_in_b", "injective", "surjective", "round_trip_a",
                    "round_trip_b", "left_subtrees_kept")
        out = {"n": self.n, "q": list(self.q), "t": list(self.t), "u": self.u,
               "a_pattern": list(self.a_pattern), "b_pattern": list(self.b_pattern),
               "size_a": self.size_a, "size_b": self.size_b,
               "expected_a": self.expected_a, "expected_b": self.expected_b,
               "case_counts": {str(c): v for c, v in self.case_counts.items()},
               "ok": self.ok, "counterexample": self.counterexample}
        out.update({v: getattr(self, v) for v in verdicts})
        return out


def verify_bijection(n: int, q: Sequence[int], t: Sequence[int], u: int,
                     force: bool = False, threads: int | None = None) -> BijectionReport:
    """Check ``F`` exhaustively on every A-side colored tree with ``n`` vertices.

    The set sizes are compared against brute-force totals computed
    separately; the image set is compared against the enumerated B side.
    Only the first failure is kept as a counterexample.
    """
    q, t = check_perm(q), check_perm(t)
    if not (ends_in_max(q) and ends_in_max(t)):
        raise BijectionError("q and t must be nonempty and end in their largest entry")
    a_pat, b_pat = side_patterns(q, t, u)
    limit = GUARD_SHORT if len(a_pat) <= 3 else GUARD_LONG
    if n > limit and not force:
        raise BijectionError(f"n={n} exceeds the guard ({limit}) for length-{len(a_pat)} patterns")
    k, m = len(q), len(t)
    rep = BijectionReport(n, q, t, u, a_pat, b_pat)
    rep.expected_a = total_occurrences(n, a_pat, threads=threads)
    rep.expected_b = total_occurrences(n, b_pat, threads=threads)

    def fail(attr: str, witness: str):
        setattr(rep, attr, False)
        if rep.counterexample is None:
            rep.counterexample = witness

    images = set()
    for ct in colored_trees(n, a_pat, k, m, u):
        rep.size_a += 1
        try:
            tag = classify(ct)
            rep.case_counts[tag.case] += 1
            img, relabel = _apply_F(ct, tag)
        except (AssertionError, TreeError, BijectionError) as exc:
            fail("image_in_b", f"{ct}: {exc}")
            continue
        if standardize(img.entries) != b_pat:
            fail("image_in_b", f"{ct} -> {img}")
        images.add(img)
        t0, t1 = ct.tree, img.tree
        if any(t0.subtree_key(t0.left[v]) != t1.subtree_key(t1.left[relabel[v]])
               for v in ct.black[:k + m]):
            fail("left_subtrees_kept", f"{ct} -> {img}")
        try:
            back = apply_F_inverse(img)
        except (AssertionError, TreeError, BijectionError) as exc:
            fail("round_trip_a", f"{img}: {exc}")
            continue
        if back != ct:
            fail("round_trip_a", f"{ct} -> {img} -> {back}")
    if len(images) != rep.size_a:
        fail("injective", f"{rep.size_a - len(images)} collisions")

    b_side = set()
    for ct in colored_trees(n, b_pat, k, m, u):
        rep.size_b += 1
        b_side.add(ct)
        try:
            again = apply_F(apply_F_inverse(ct))
        except (AssertionError, TreeError, BijectionError) as exc:
            fail("round_trip_b", f"{ct}: {exc}")
            continue
        if again != ct:
            fail("round_trip_b", f"{ct} -> {again}")
    if images != b_side:
        missing = next(iter(b_side - images), None)
        fail("surjective", f"not hit: {missing}" if missing else "image leaves B")
    return rep
