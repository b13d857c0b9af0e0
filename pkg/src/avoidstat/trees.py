"""Binary plane trees and their bijection with 132-avoiding permutations.

A tree on ``n`` vertices is stored by child arrays indexed by in-order
position ``1..n``; ``0`` means "no child". Because identity is the in-order
index, two trees are equal exactly when their shapes are equal.

For a 132-avoider ``p`` the tree ``T(p)`` has the entry ``n`` at the root,
the entries left of ``n`` in the left subtree and those right of ``n`` in the
right subtree, recursively. In-order position ``i`` is then the vertex of
``p[i]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterator, Optional, Sequence

from .perms import Perm, avoids, check_perm

Shape = Optional[tuple]  # None | (left_shape, right_shape)


class TreeError(ValueError):
    pass


@dataclass(frozen=True)
class BinaryPlaneTree:
    left: tuple[int, ...]
    right: tuple[int, ...]
    root: int

    def __post_init__(self):
        n = len(self.left) - 1
        if len(self.right) != n + 1 or (n == 0) != (self.root == 0):
            raise TreeError("inconsistent child arrays")
        if any(not 0 <= c <= n for c in self.left + self.right):
            raise TreeError("child index out of range")
        self._span  # validates structure

    @classmethod
    def _trusted(cls, left: tuple[int, ...], right: tuple[int, ...], root: int) -> "BinaryPlaneTree":
        # for trees produced by our own rewrites; structure is checked lazily
        obj = object.__new__(cls)
        object.__setattr__(obj, "left", left)
        object.__setattr__(obj, "right", right)
        object.__setattr__(obj, "root", root)
        return obj

    @cached_property
    def _span(self) -> tuple[list[int], list[int], list[int]]:
        n = self.n
        lo = [0] * (n + 1)
        hi = [0] * (n + 1)
        parent = [0] * (n + 1)
        seen = 0
        if n:
            # iterative post-order; subtrees are contiguous in-order intervals
            stack = [(self.root, False)]
            while stack:
                v, done = stack.pop()
                lc, rc = self.left[v], self.right[v]
                if not done:
                    seen += 1
                    stack.append((v, True))
                    for c in (rc, lc):
                        if c:
                            if parent[c] or c == self.root:
                                raise TreeError("not a tree")
                            parent[c] = v
                            stack.append((c, False))
                    continue
                lo[v] = lo[lc] if lc else v
                hi[v] = hi[rc] if rc else v
                if (lc and hi[lc] != v - 1) or (rc and lo[rc] != v + 1):
                    raise TreeError("node indices are not in-order")
        if seen != n:
            raise TreeError("tree does not span all nodes")
        return lo, hi, parent

    @property
    def n(self) -> int:
        return len(self.left) - 1

    def __len__(self) -> int:
        return self.n

    def parent(self, v: int) -> int:
        return self._span[2][v]

    def subtree(self, v: int) -> range:
        """In-order indices of the subtree rooted at ``v`` (``v`` included)."""
        lo, hi, _ = self._span
        return range(lo[v], hi[v] + 1)

    def is_left_descendant(self, a: int, b: int) -> bool:
        """True iff ``a`` lies in the left subtree of ``b``."""
        return self._span[0][b] <= a < b

    def is_right_descendant(self, a: int, b: int) -> bool:
        """True iff ``a`` lies in the right subtree of ``b``."""
        return b < a <= self._span[1][b]

    def is_ancestor(self, a: int, b: int) -> bool:
        """True iff ``a`` is a proper ancestor of ``b``."""
        return a != b and self._span[0][a] <= b <= self._span[1][a]

    def lowest_common_ancestor(self, a: int, b: int) -> int:
        v = self.root
        while True:
            if a < v and b < v:
                v = self.left[v]
            elif a > v and b > v:
                v = self.right[v]
            else:
                return v

    def depth(self, v: int) -> int:
        d = 0
        while v != self.root:
            v = self.parent(v)
            d += 1
        return d

    def subtree_key(self, v: int) -> tuple:
        """Shape of the subtree at ``v`` (0 = empty), comparable across trees."""
        if not v:
            return ()
        r = self.subtree(v)
        base = r.start - 1
        return tuple((self.left[i] - base if self.left[i] else 0,
                      self.right[i] - base if self.right[i] else 0) for i in r)

    # construction and conversion

    @classmethod
    def empty(cls) -> "BinaryPlaneTree":
        return cls((0,), (0,), 0)

    @classmethod
    def from_shape(cls, shape: Shape) -> "BinaryPlaneTree":
        left, right = [0], [0]
        counter = 0

        # returns the in-order index of the subtree root
        def build(s: Shape) -> int:
            nonlocal counter
            if s is None:
                return 0
            lc = build(s[0])
            counter += 1
            v = counter
            left.append(lc)
            right.append(0)
            right[v] = build(s[1])
            return v

        root = build(shape)
        return cls(tuple(left), tuple(right), root)

    def shape(self, v: int | None = None) -> Shape:
        v = self.root if v is None else v
        if not v:
            return None
        return (self.shape(self.left[v]), self.shape(self.right[v]))

    def to_text(self) -> str:
        out: list[str] = []

        def emit(v: int):
            if not v:
                out.append(".")
                return
            out.append("(")
            emit(self.left[v])
            emit(self.right[v])
            out.append(")")

        emit(self.root)
        return "".join(out)

    @classmethod
    def from_text(cls, text: str) -> "BinaryPlaneTree":
        tokens = [c for c in text if not c.isspace()]
        pos = 0

        def parse() -> Shape:
            nonlocal pos
            if pos >= len(tokens):
                raise TreeError("unexpected end of tree text")
            c = tokens[pos]
            pos += 1
            if c == ".":
                return None
            if c != "(":
                raise TreeError(f"unexpected character {c!r} in tree text")
            lhs = parse()
            rhs = parse()
            if pos >= len(tokens) or tokens[pos] != ")":
                raise TreeError("expected ')' in tree text")
            pos += 1
            return (lhs, rhs)

        shape = parse()
        if pos != len(tokens):
            raise TreeError("trailing characters in tree text")
        return cls.from_shape(shape)

    def to_json(self) -> Any:
        def emit(v: int):
            return None if not v else {"l": emit(self.left[v]), "r": emit(self.right[v])}
        return emit(self.root)

    @classmethod
    def from_json(cls, obj: Any) -> "BinaryPlaneTree":
        def conv(o) -> Shape:
            if o is None:
                return None
            if not isinstance(o, dict) or set(o) != {"l", "r"}:
                raise TreeError(f"bad tree node: {o!r}")
            return (conv(o["l"]), conv(o["r"]))
        return cls.from_shape(conv(obj))

    def __str__(self) -> str:
        return self.to_text()


def all_trees(n: int) -> Iterator[BinaryPlaneTree]:
    """Every binary plane tree on ``n`` vertices."""
    for s in _shapes(n):
        yield BinaryPlaneTree.from_shape(s)


def _shapes(n: int) -> Iterator[Shape]:
    if n == 0:
        yield None
        return
    for nl in range(n):
        for ls in list(_shapes(nl)):
            for rs in _shapes(n - 1 - nl):
                yield (ls, rs)


def cartesian_tree(p: Sequence[int]) -> BinaryPlaneTree:
    """Max-rooted tree of ``p`` with no avoidance check."""
    n = len(p)
    left = [0] * (n + 1)
    right = [0] * (n + 1)
    stack: list[int] = []
    for i in range(1, n + 1):
        last = 0
        while stack and p[stack[-1] - 1] < p[i - 1]:
            last = stack.pop()
        left[i] = last
        if stack:
            right[stack[-1]] = i
        stack.append(i)
    return BinaryPlaneTree._trusted(tuple(left), tuple(right), stack[0] if stack else 0)


def perm_to_tree(p: Sequence[int]) -> BinaryPlaneTree:
    p = check_perm(p)
    if not avoids(p, (1, 3, 2)):
        raise TreeError(f"{p!r} contains 132; the tree encoding needs a 132-avoider")
    return cartesian_tree(p)


def entry_labels(tree: BinaryPlaneTree) -> dict[int, int]:
    """Entry of the encoded 132-avoider carried by each vertex.

    Every root exceeds its subtree and the left subtree holds the larger
    values, so labels decrease along a preorder walk (root, left, right).
    """
    return dict(zip(_preorder(tree), range(tree.n, 0, -1)))


def _preorder(tree: BinaryPlaneTree) -> list[int]:
    out: list[int] = []
    stack = [tree.root] if tree.root else []
    left, right = tree.left, tree.right
    while stack:
        v = stack.pop()
        out.append(v)
        if right[v]:
            stack.append(right[v])
        if left[v]:
            stack.append(left[v])
    return out


def tree_to_perm(tree: BinaryPlaneTree) -> Perm:
    n = len(tree.left) - 1
    perm = [0] * n
    for label, v in zip(range(n, 0, -1), _preorder(tree)):
        perm[v - 1] = label
    return tuple(perm)


def swap_right_subtrees(tree: BinaryPlaneTree, a: int, b: int) -> tuple[BinaryPlaneTree, dict[int, int]]:
    """Exchange the right subtrees of ``a`` and ``b``.

    Returns the new tree and the map from old to new in-order indices. The
    two right subtrees must be disjoint and neither vertex may sit inside
    the other's right subtree.
    """
    if a == b:
        raise TreeError("cannot swap a subtree with itself")
    ra, rb = tree.right[a], tree.right[b]
    for v, r in ((b, ra), (a, rb)):
        if r and v in tree.subtree(r):
            raise TreeError(f"right subtrees of {a} and {b} overlap")
    left = list(tree.left)
    right = list(tree.right)
    right[a], right[b] = rb, ra
    # in-order walk of the rewired tree
    order: list[int] = []
    stack: list[int] = []
    v = tree.root
    while stack or v:
        while v:
            stack.append(v)
            v = left[v]
        v = stack.pop()
        order.append(v)
        v = right[v]
    if len(order) != len(left) - 1:
        raise TreeError("swap did not preserve the vertex set")
    relabel = {old: new for new, old in enumerate(order, start=1)}
    relabel[0] = 0
    n = len(left) - 1
    new_left = [0] * (n + 1)
    new_right = [0] * (n + 1)
    for old, new in relabel.items():
        if old:
            new_left[new] = relabel[left[old]]
            new_right[new] = relabel[right[old]]
    del relabel[0]
    return BinaryPlaneTree._trusted(tuple(new_left), tuple(new_right), relabel[tree.root]), relabel
