"""Exact VC and Littlestone dimension, each with an independent oracle route.

``vc_dimension`` ascends through shattered-set sizes apriori-style, testing
candidates with per-element member bitmasks.  ``ls_dimension`` evaluates the
recursive split definition with memoization on canonical subfamilies, while
``ls_dimension_tree`` decides shattered labelings of a complete binary tree
directly from the tree semantics and serves as the unpruned cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ParameterError
from .family import Member, SetFamily, _canonical_pass, member_of
from .rng import Budget


@dataclass(frozen=True)
class ShatterTree:
    """A labeled complete binary tree witnessing a Littlestone dimension.

    Internal nodes carry a ground element (``element``); leaves carry a member
    index (``member``).  Going to the left child means the element is present
    in the leaf's member.
    """

    element: Optional[int] = None
    member: Optional[int] = None
    left: Optional["ShatterTree"] = None
    right: Optional["ShatterTree"] = None

    @classmethod
    def leaf(cls, member: int) -> "ShatterTree":
        return cls(member=member)

    @classmethod
    def node(cls, element: int, left: "ShatterTree", right: "ShatterTree") -> "ShatterTree":
        return cls(element=element, left=left, right=right)

    def is_leaf(self) -> bool:
        return self.member is not None

    def depth(self) -> int:
        if self.is_leaf():
            return 0
        return 1 + max(self.left.depth(), self.right.depth())

    def to_dict(self) -> dict:
        if self.is_leaf():
            return {"member": self.member}
        return {
            "element": self.element,
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }


@dataclass(frozen=True)
class DimensionReport:
    vc: int
    vc_witness: tuple[int, ...]
    ls: int
    ls_witness: Optional[ShatterTree]
    vc_exact: bool = True
    ls_exact: bool = True


def _distinct_masks(family: SetFamily) -> tuple[list[int], list[int]]:
    """Masks of distinct members plus the original index kept for each."""
    seen: dict[int, int] = {}
    masks: list[int] = []
    kept: list[int] = []
    for i, mask in enumerate(family.masks):
        if mask not in seen:
            seen[mask] = i
            masks.append(mask)
            kept.append(i)
    return masks, kept


# ---------------------------------------------------------------------------
# VC dimension


def _vc_from_masks(
    masks: Sequence[int], n: int, budget: Budget | None = None
) -> tuple[int, tuple[int, ...]]:
    md = len(masks)
    if md == 0:
        return 0, ()
    full = (1 << md) - 1
    cols = [0] * n
    for i, mask in enumerate(masks):
        bit = 1 << i
        rest = mask
        e = 0
        while rest:
            if rest & 1:
                cols[e] |= bit
            rest >>= 1
            e += 1

    def shattered(elems: tuple[int, ...]) -> bool:
        if budget is not None:
            budget.spend()
        parts = [full]
        for e in elems:
            ce = cols[e]
            nxt = []
            for p in parts:
                a = p & ce
                c = p & ~ce
                if a == 0 or c == 0:
                    return False
                nxt.append(a)
                nxt.append(c)
            parts = nxt
        return True

    # level-by-level ascent: a set can be shattered only if all its subsets are
    level: list[tuple[int, ...]] = [()]
    best: tuple[int, ...] = ()
    max_d = md.bit_length() - 1 if md else 0  # 2^d distinct traces need m >= 2^d
    while len(best) < max_d:
        prev = set(level)
        nxt: list[tuple[int, ...]] = []
        for t in level:
            lo = t[-1] + 1 if t else 0
            for v in range(lo, n):
                cand = t + (v,)
                if all(cand[:i] + cand[i + 1:] in prev for i in range(len(cand) - 1)):
                    if shattered(cand):
                        nxt.append(cand)
        if not nxt:
            break
        level = nxt
        best = level[0]
    return len(best), best


def vc_dimension(family: SetFamily, budget: int | None = None) -> tuple[int, tuple[int, ...]]:
    """Exact VC dimension with the lexicographically least shattered witness.

    Duplicate members never change shattering and are collapsed first.  The
    empty family reports 0 by convention.
    """
    masks, _ = _distinct_masks(family)
    b = Budget(budget) if budget is not None else None
    return _vc_from_masks(masks, family.ground_size, b)


def sauer_shelah_capacity(n: int, d: int) -> int:
    """Exact sum of binomials C(n, 0) + ... + C(n, d)."""
    if n < 0 or d < 0:
        raise ParameterError("sauer_shelah_capacity needs n, d >= 0")
    return sum(math.comb(n, i) for i in range(min(n, d) + 1))


# ---------------------------------------------------------------------------
# Littlestone dimension, recursive route


class LittlestoneSolver:
    """Memoized evaluator of the recursive split definition.

    The value of a family with at most one distinct member is 0; otherwise it
    is 1 plus the best min over the two restrictions of a splitting element.
    Subfamilies are memoized under their canonical form, so isomorphic
    subproblems across calls share work.  The memo stops growing at
    ``memo_budget`` entries and recursion proceeds uncached beyond that.
    """

    def __init__(self, memo_budget: int = 200_000):
        self.memo_budget = memo_budget
        self._memo: dict[tuple[Member, ...], int] = {}

    @staticmethod
    def _key(masks: frozenset[int]) -> tuple[Member, ...]:
        return tuple(_canonical_pass([member_of(mk) for mk in masks]))

    def value(self, masks: frozenset[int], budget: Budget | None = None) -> int:
        sz = len(masks)
        if sz <= 1:
            return 0
        ub = sz.bit_length() - 1  # floor(log2 sz): distinct traces bound
        key = self._key(masks)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if budget is not None:
            budget.spend()

        union = 0
        for mk in masks:
            union |= mk
        counts: dict[int, int] = {}
        rest = union
        e = 0
        while rest:
            if rest & 1:
                bit = 1 << e
                counts[e] = sum(1 for mk in masks if mk & bit)
            rest >>= 1
            e += 1
        # splitting elements only: others contribute exactly 1, matched below
        cands = sorted(
            ((min(c, sz - c), e) for e, c in counts.items() if 0 < c < sz),
            key=lambda t: (-t[0], t[1]),
        )
        best = 1  # two distinct members always split somewhere
        for bal, e in cands:
            cap_e = 1 + (bal.bit_length() - 1)
            if cap_e <= best:
                break
            bit = 1 << e
            left = frozenset(mk & ~bit for mk in masks if mk & bit)
            right = frozenset(mk for mk in masks if not mk & bit)
            first, second = (left, right) if len(left) <= len(right) else (right, left)
            a = self.value(first, budget)
            if 1 + a <= best:
                continue
            v = 1 + min(a, self.value(second, budget))
            if v > best:
                best = v
                if best == ub:
                    break
        if len(self._memo) < self.memo_budget:
            self._memo[key] = best
        return best

    def witness(
        self, items: list[tuple[int, int]], depth: int, budget: Budget | None = None
    ) -> ShatterTree:
        """A depth-``depth`` witness tree for ``items`` of (mask, original index)."""
        if depth == 0:
            return ShatterTree.leaf(min(i for _, i in items))
        union = 0
        for mk, _ in items:
            union |= mk
        sz = len(items)
        for e in range(union.bit_length()):
            bit = 1 << e
            if not union & bit:
                continue
            c = sum(1 for mk, _ in items if mk & bit)
            if not 0 < c < sz:
                continue
            left = [(mk & ~bit, i) for mk, i in items if mk & bit]
            right = [(mk, i) for mk, i in items if not mk & bit]
            if (
                self.value(frozenset(mk for mk, _ in left), budget) >= depth - 1
                and self.value(frozenset(mk for mk, _ in right), budget) >= depth - 1
            ):
                return ShatterTree.node(
                    e,
                    self.witness(left, depth - 1, budget),
                    self.witness(right, depth - 1, budget),
                )
        raise AssertionError("witness reconstruction failed")  # pragma: no cover


def ls_dimension(
    family: SetFamily,
    budget: int | None = None,
    solver: LittlestoneSolver | None = None,
) -> tuple[int, Optional[ShatterTree]]:
    """Exact Littlestone dimension with a witness tree.

    Duplicates are collapsed first (they never change the dimension).  Pass a
    shared :class:`LittlestoneSolver` to reuse its memo across calls.
    """
    masks, kept = _distinct_masks(family)
    if solver is None:
        solver = LittlestoneSolver()
    b = Budget(budget) if budget is not None else None
    d = solver.value(frozenset(masks), b)
    if not masks:
        return 0, None
    tree = solver.witness(list(zip(masks, kept)), d, b)
    return d, tree


# ---------------------------------------------------------------------------
# Littlestone dimension, direct tree-labeling route (oracle)


def ls_dimension_tree(
    family: SetFamily, d: int, budget: int | None = None
) -> tuple[bool, Optional[ShatterTree]]:
    """Decide whether a complete binary tree of depth ``d`` admits a shattered
    labeling by ``family``; exhaustive over element labels with memoization.

    This follows the tree definition literally (no element removal, no
    balance pruning, every ground element is a candidate at every node), so it
    is an independent oracle for :func:`ls_dimension`.
    """
    if d < 0:
        raise ParameterError("tree depth must be >= 0")
    masks, kept = _distinct_masks(family)
    md = len(masks)
    n = family.ground_size
    cols = [0] * n
    for i, mask in enumerate(masks):
        bit = 1 << i
        rest = mask
        e = 0
        while rest:
            if rest & 1:
                cols[e] |= bit
            rest >>= 1
            e += 1
    full = (1 << md) - 1
    b = Budget(budget) if budget is not None else None
    memo: dict[tuple[int, int], bool] = {}

    def ok(sel: int, depth: int) -> bool:
        if depth == 0:
            return sel != 0
        key = (sel, depth)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if b is not None:
            b.spend()
        res = False
        for e in range(n):
            inside = sel & cols[e]
            outside = sel & ~cols[e]
            if ok(inside, depth - 1) and ok(outside, depth - 1):
                res = True
                break
        memo[key] = res
        return res

    if not ok(full, d):
        return False, None

    def build(sel: int, depth: int) -> ShatterTree:
        if depth == 0:
            low = (sel & -sel).bit_length() - 1
            return ShatterTree.leaf(kept[low])
        for e in range(n):
            inside = sel & cols[e]
            outside = sel & ~cols[e]
            if ok(inside, depth - 1) and ok(outside, depth - 1):
                return ShatterTree.node(e, build(inside, depth - 1), build(outside, depth - 1))
        raise AssertionError  # pragma: no cover

    return True, build(full, d)


def dimension_report(family: SetFamily, budget: int | None = None) -> DimensionReport:
    """VC and Littlestone dimensions with witnesses, in one report."""
    vc, vc_w = vc_dimension(family, budget)
    ls, ls_w = ls_dimension(family, budget)
    return DimensionReport(vc=vc, vc_witness=vc_w, ls=ls, ls_witness=ls_w)
