"""Generators for structured families and tiny-scale exhaustive extremal search.

The extremal search enumerates families in a normal form (members in
lexicographic order, ground elements introduced in first-appearance order),
which reaches every isomorphism class at least once: scanning any family's
members greedily by least relabeled tuple yields such a representation.  All
constraints used for pruning (sunflower-freeness, dimension caps) are
hereditary under taking subfamilies, so pruning never loses the optimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .dimensions import LittlestoneSolver, _vc_from_masks
from .errors import BudgetExceededError, InvalidFamilyError, ParameterError
from .family import (
    Member,
    SetFamily,
    _sunflower_core_search,
    mask_of,
)
from .rng import Budget, seeded_rng

_DESK_MEMBER_LIMIT = 1_000_000


# ---------------------------------------------------------------------------
# explicit constructions


def tree_family(r: int, k: int, max_members: int = _DESK_MEMBER_LIMIT) -> SetFamily:
    """Root-to-leaf path sets of the complete (r-1)-ary tree with k levels.

    The family is k-uniform with (r-1)^(k-1) members, has VC dimension at
    most 1 and contains no r-sunflower.
    """
    if r < 3:
        raise ParameterError("tree_family requires r >= 3")
    if k < 1:
        raise ParameterError("tree_family requires k >= 1")
    branch = r - 1
    size = branch ** (k - 1)
    if size > max_members:
        raise ParameterError(f"tree_family would have {size} members (limit {max_members})")
    # vertices numbered level by level
    offsets = [0]
    for level in range(1, k):
        offsets.append(offsets[-1] + branch ** (level - 1))
    ground = offsets[-1] + branch ** (k - 1)
    members = []
    for leaf in range(size):
        path = []
        for level in range(k):
            path.append(offsets[level] + leaf // branch ** (k - 1 - level))
        members.append(tuple(path))
    return SetFamily(ground, tuple(members), False)


def product_family(first: SetFamily, second: SetFamily) -> SetFamily:
    """Every member of ``first`` unioned with each member of a fresh copy of
    ``second`` (one disjoint copy per member of ``first``).

    Inputs must be uniform with distinct members; the result is
    (k1+k2)-uniform of size m1*m2 and inherits sunflower-freeness from the
    factors.
    """
    k1 = first.is_uniform()
    k2 = second.is_uniform()
    if k1 is None or k2 is None:
        raise ParameterError("product_family requires uniform factors")
    if first.m == 0 or second.m == 0:
        raise ParameterError("product_family requires nonempty factors")
    for fam, name in ((first, "first"), (second, "second")):
        if len(set(fam.members)) != fam.m:
            raise InvalidFamilyError(f"product_family: {name} factor has duplicate members")
    n1 = first.ground_size
    n2 = second.ground_size
    ground = n1 + first.m * n2
    members = []
    for i, base in enumerate(first.members):
        offset = n1 + i * n2
        for tail in second.members:
            members.append(base + tuple(offset + e for e in tail))
    return SetFamily(ground, tuple(members), False)


def ls1_family(r: int, k: int) -> SetFamily:
    """A k-uniform family of k+r-2 members with Littlestone dimension 1 and
    no r-sunflower.

    Chain elements c_1..c_{k-1} each lie in every member except one: member j
    misses c_j and carries two private elements, and the remaining r-1
    members hold the whole chain plus one private element.  Every element is
    in at most one or in exactly m-1 members, which characterizes Littlestone
    dimension <= 1; and any r members include one that misses a chain
    element, which breaks pairwise-equal intersections.  For k = 1 the family
    is r-1 singletons.
    """
    if r < 2:
        raise ParameterError("ls1_family requires r >= 2")
    if k < 1:
        raise ParameterError("ls1_family requires k >= 1")
    chain = tuple(range(k - 1))
    next_id = k - 1
    members = []
    for i in range(k - 1):
        mem = [c for c in chain if c != i] + [next_id, next_id + 1]
        next_id += 2
        members.append(tuple(sorted(mem)))
    for _ in range(r - 1):
        members.append(chain + (next_id,))
        next_id += 1
    return SetFamily(next_id, tuple(members), False)


def pad_to_uniform(family: SetFamily, k: int) -> SetFamily:
    """Pad every member up to size ``k`` with fresh elements, each used in
    exactly one member.  Members already of size ``k`` are unchanged."""
    if family.max_member_size() > k:
        raise ParameterError(f"a member exceeds target size {k}")
    next_id = family.ground_size
    members = []
    for mem in family.members:
        deficit = k - len(mem)
        members.append(mem + tuple(range(next_id, next_id + deficit)))
        next_id += deficit
    return SetFamily(next_id, tuple(members), family.multifamily)


# ---------------------------------------------------------------------------
# randomized lower-bound style generator


@dataclass(frozen=True)
class RandomFamilyReport:
    d: int
    r: int
    k: int
    seed: int
    n: int
    t: int
    m_requested: int
    m_distinct: int
    used_recipe: bool
    notes: tuple[str, ...]


def random_lowerbound_family(
    d: int,
    r: int,
    k: int,
    n: Optional[int] = None,
    m: Optional[int] = None,
    seed: int = 0,
    max_members: int = _DESK_MEMBER_LIMIT,
) -> tuple[SetFamily, RandomFamilyReport]:
    """``m`` uniform random k-subsets of [n], duplicates collapsed.

    Without overrides, n and m follow the randomized lower-bound recipe
    n = k^2 r / (500 d log2 k), t = ceil(log2 d), m = n^(d-t-1) / k^(d-t),
    both rounded down (the rounding is reported).  The recipe needs d >= 6,
    r >= 3, k >= 4d and is rejected with guidance when it yields n < k or
    m < 1; overrides n and m are accepted at any desk scale.
    """
    notes: list[str] = []
    used_recipe = n is None and m is None
    if used_recipe:
        if d < 6 or r < 3 or k < 4 * d:
            raise ParameterError(
                "derived parameters need d >= 6, r >= 3, k >= 4d; pass n and m overrides"
            )
    t = math.ceil(math.log2(d)) if d >= 1 else 0
    if n is None:
        exact_n = k * k * r / (500 * d * math.log2(k))
        n = math.floor(exact_n)
        notes.append(f"n rounded down from {exact_n:.6g} to {n}")
    if m is None:
        if n >= 1 and d - t >= 0:
            m = n ** (d - t) // (k ** (d - t) * n) if n > 0 else 0
            notes.append(f"m computed as floor(n^(d-t) / (k^(d-t) n)) = {m}")
        else:
            m = 0
    if n < k or m < 1:
        raise ParameterError(
            f"derived n={n}, m={m} infeasible (need n >= k and m >= 1); "
            "pass n and m overrides for desk scale"
        )
    if m > max_members:
        raise ParameterError(f"m={m} exceeds the desk-scale limit {max_members}")

    rng = seeded_rng("randomlb", seed)
    drawn: list[Member] = []
    for _ in range(m):
        # Floyd's sampling: k distinct elements of range(n)
        chosen: set[int] = set()
        for j in range(n - k, n):
            pick = rng.randrange(j + 1)
            chosen.add(j if pick in chosen else pick)
        drawn.append(tuple(sorted(chosen)))
    seen = set()
    distinct: list[Member] = []
    for mem in drawn:
        if mem not in seen:
            seen.add(mem)
            distinct.append(mem)
    if len(distinct) < m:
        notes.append(f"{m - len(distinct)} duplicate draws collapsed")
    family = SetFamily(n, tuple(distinct), False)
    report = RandomFamilyReport(
        d=d,
        r=r,
        k=k,
        seed=seed,
        n=n,
        t=t,
        m_requested=m,
        m_distinct=len(distinct),
        used_recipe=used_recipe,
        notes=tuple(notes),
    )
    return family, report


# ---------------------------------------------------------------------------
# exhaustive extremal search

EXTREMAL_KINDS = ("family", "multifamily", "ls_bounded", "vc_bounded")


@dataclass(frozen=True)
class ExtremalResult:
    """Outcome of an exhaustive search for the least size forcing an r-sunflower.

    ``exact_value`` is the least m such that every family of k-sets of size m
    under the kind's constraint contains an r-sunflower; ``witness`` is a
    largest sunflower-free family found (of size ``exact_value - 1`` when the
    search completed).  ``exact=False`` flags a budget abort, in which case
    ``exact_value`` is only a lower bound.
    """

    kind: str
    r: int
    k: int
    d: Optional[int]
    exact_value: int
    witness: SetFamily
    exact: bool
    nodes: int
    ground_cap: Optional[int]
    max_ground_used: int
    notes: tuple[str, ...] = ()


def extremal_search(
    kind: str,
    r: int,
    k: int,
    d: Optional[int] = None,
    ground_cap: Optional[int] = None,
    node_budget: Optional[int] = None,
) -> ExtremalResult:
    """Exact extremal value by canonical-form backtracking, tiny scales only.

    Kinds: ``family`` (no constraint), ``multifamily`` (repeated members
    allowed), ``ls_bounded`` / ``vc_bounded`` (dimension at most ``d``).  The
    first-appearance normal form bounds the ground set by m*k automatically;
    ``ground_cap`` may tighten it further.  On budget exhaustion the best
    bound found so far is returned flagged inexact.
    """
    if kind not in EXTREMAL_KINDS:
        raise ParameterError(f"unknown extremal kind {kind!r}")
    if r < 3:
        raise ParameterError("extremal_search requires r >= 3")
    if k < 1:
        raise ParameterError("extremal_search requires k >= 1")
    if kind in ("ls_bounded", "vc_bounded"):
        if d is None or d < 0:
            raise ParameterError(f"kind {kind!r} requires d >= 0")
    else:
        d = None

    allow_duplicates = kind == "multifamily"
    solver = LittlestoneSolver()
    budget = Budget(node_budget) if node_budget is not None else None
    nodes = 0
    aborted = False
    best: list[Member] = []
    best_ground = 0
    max_ground_used = 0

    def constraint_ok(masks: list[int]) -> bool:
        if kind == "ls_bounded":
            return solver.value(frozenset(masks)) <= d
        if kind == "vc_bounded":
            distinct = list(dict.fromkeys(masks))
            cap = max(e for mk in masks for e in _bits(mk)) + 1 if masks else 0
            return _vc_from_masks(distinct, cap, None)[0] <= d
        return True

    def extend(members: list[Member], masks: list[int], used: int) -> None:
        nonlocal nodes, best, best_ground, max_ground_used, aborted
        nodes += 1
        if budget is not None:
            try:
                budget.spend()
            except BudgetExceededError:
                aborted = True
                raise
        if len(members) > len(best):
            best = members.copy()
            best_ground = used
        max_ground_used = max(max_ground_used, used)
        last = members[-1] if members else None
        for cand in _candidates(used, k, last, allow_duplicates, ground_cap):
            cmask = mask_of(cand)
            new_masks = masks + [cmask]
            if _sunflower_core_search(new_masks, range(len(new_masks)), r, None) is not None:
                continue
            if not constraint_ok(new_masks):
                continue
            new_used = max(used, (cand[-1] + 1) if cand else used)
            members.append(cand)
            extend(members, new_masks, new_used)
            members.pop()

    try:
        extend([], [], 0)
    except BudgetExceededError:
        pass

    witness = SetFamily(best_ground, tuple(best), allow_duplicates)
    notes = []
    if aborted:
        notes.append("node budget exhausted; exact_value is a lower bound")
    return ExtremalResult(
        kind=kind,
        r=r,
        k=k,
        d=d,
        exact_value=len(best) + 1,
        witness=witness,
        exact=not aborted,
        nodes=nodes,
        ground_cap=ground_cap,
        max_ground_used=max_ground_used,
        notes=tuple(notes),
    )


def _bits(mask: int):
    e = 0
    while mask:
        if mask & 1:
            yield e
        mask >>= 1
        e += 1


def _candidates(
    used: int,
    k: int,
    last: Optional[Member],
    allow_duplicates: bool,
    ground_cap: Optional[int],
):
    """Next members in normal form: a subset of the used elements followed by
    a block of consecutive fresh ones, lexicographically >= (or >) the last."""
    out: list[Member] = []
    for fresh in range(k + 1):
        if ground_cap is not None and used + fresh > ground_cap:
            continue
        block = tuple(range(used, used + fresh))
        old = k - fresh
        if old > used:
            continue
        for base in combinations(range(used), old):
            cand = base + block
            if last is not None:
                if allow_duplicates:
                    if cand < last:
                        continue
                else:
                    if cand <= last:
                        continue
            out.append(cand)
    out.sort()
    return out


def multifamily_identity_report(
    r: int, k: int, node_budget: Optional[int] = None
) -> dict:
    """Measure which closed form ties the multifamily threshold to the plain one.

    Computes f (plain) and g (multifamily) exactly at (r, k) and evaluates the
    three candidate identities; nothing is hard-coded.
    """
    f_res = extremal_search("family", r, k, node_budget=node_budget)
    g_res = extremal_search("multifamily", r, k, node_budget=node_budget)
    f, g = f_res.exact_value, g_res.exact_value
    candidates = {
        "(r-1)*f+1": (r - 1) * f + 1,
        "(k-1)*f+1": (k - 1) * f + 1,
        "(r-1)*(f-1)+1": (r - 1) * (f - 1) + 1,
    }
    return {
        "r": r,
        "k": k,
        "f": f,
        "g": g,
        "exact": f_res.exact and g_res.exact,
        "identities": {name: value == g for name, value in candidates.items()},
        "candidate_values": candidates,
    }
