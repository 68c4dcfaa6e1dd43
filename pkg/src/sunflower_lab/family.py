"""Set families over integer ground sets, and the exact combinatorial primitives.

A family is an ordered (multi)collection of finite sets over ground elements
``0..n-1``.  Members are stored as strictly increasing tuples; every search
routine mirrors them as integer bitmasks, which makes intersection and
disjointness tests single big-int operations.

All searches are exact and deterministic: witnesses are the lexicographically
least ones, candidate orders are fixed, and no randomness is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import (
    EmptyFamilyError,
    EmptyMemberError,
    InvalidFamilyError,
    ParameterError,
)
from .rng import Budget

Member = tuple[int, ...]

_UINT32_MAX = 2**32 - 1


def mask_of(member: Iterable[int]) -> int:
    m = 0
    for e in member:
        m |= 1 << e
    return m


def member_of(mask: int) -> Member:
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


@dataclass(frozen=True)
class SetFamily:
    """An ordered multifamily of finite sets over ground elements ``0..ground_size-1``.

    ``multifamily=False`` additionally promises that members are pairwise
    distinct as sets.  Construction validates all invariants.
    """

    ground_size: int
    members: tuple[Member, ...]
    multifamily: bool = False

    def __post_init__(self):
        n = self.ground_size
        if not (0 <= n <= _UINT32_MAX):
            raise InvalidFamilyError(f"ground_size {n} out of range")
        if len(self.members) > _UINT32_MAX:
            raise InvalidFamilyError("too many members")
        for i, mem in enumerate(self.members):
            prev = -1
            for e in mem:
                if not isinstance(e, int) or isinstance(e, bool):
                    raise InvalidFamilyError(f"member {i}: element {e!r} is not an int")
                if e <= prev:
                    raise InvalidFamilyError(
                        f"member {i} is not strictly increasing at element {e}"
                    )
                if e >= n:
                    raise InvalidFamilyError(
                        f"member {i}: element {e} outside ground [0, {n})"
                    )
                prev = e
        if not self.multifamily and len(set(self.members)) != len(self.members):
            raise InvalidFamilyError("duplicate members in a non-multifamily")

    @classmethod
    def from_sets(
        cls,
        ground_size: int,
        sets: Iterable[Iterable[int]],
        multifamily: bool = False,
    ) -> "SetFamily":
        """Build a family from arbitrary iterables, sorting each member."""
        members = []
        for s in sets:
            t = tuple(sorted(set(s)))
            members.append(t)
        return cls(ground_size, tuple(members), multifamily)

    @property
    def m(self) -> int:
        return len(self.members)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(mask_of(mem) for mem in self.members)

    @cached_property
    def columns(self) -> tuple[int, ...]:
        """For each ground element, the bitmask of members containing it."""
        cols = [0] * self.ground_size
        for i, mem in enumerate(self.members):
            bit = 1 << i
            for e in mem:
                cols[e] |= bit
        return tuple(cols)

    def member_sizes(self) -> tuple[int, ...]:
        return tuple(len(mem) for mem in self.members)

    def max_member_size(self) -> int:
        return max((len(mem) for mem in self.members), default=0)

    def is_uniform(self) -> Optional[int]:
        """The common member size if the family is uniform, else ``None``."""
        sizes = set(self.member_sizes())
        if len(sizes) == 1:
            return sizes.pop()
        return None

    def distinct(self) -> tuple["SetFamily", tuple[int, ...]]:
        """Collapse duplicate members; returns the family and the kept indices."""
        seen: dict[Member, int] = {}
        kept = []
        for i, mem in enumerate(self.members):
            if mem not in seen:
                seen[mem] = i
                kept.append(i)
        members = tuple(self.members[i] for i in kept)
        return SetFamily(self.ground_size, members, False), tuple(kept)


@dataclass(frozen=True)
class Sunflower:
    """A witness: ``r`` member indices whose pairwise intersections equal ``core``."""

    core: Member
    member_indices: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.member_indices)

    def holds_in(self, family: SetFamily) -> bool:
        """Exact re-check of the witness against ``family``."""
        idx = self.member_indices
        if len(idx) < 2 or len(set(idx)) != len(idx):
            return False
        core = mask_of(self.core)
        masks = family.masks
        for a, b in combinations(idx, 2):
            if masks[a] & masks[b] != core:
                return False
        return True


@dataclass(frozen=True)
class FrequencyProfile:
    """Per-element membership fractions of a family with ``member_count`` members."""

    fractions: tuple[Fraction, ...]
    member_count: int


@dataclass(frozen=True)
class PackingResult:
    value: int
    witness: tuple[int, ...]


@dataclass(frozen=True)
class TransversalResult:
    value: int
    witness: tuple[int, ...]


@dataclass(frozen=True)
class LambdaResult:
    value: int
    witness: tuple[int, ...]
    cap: int
    cap_hit: bool

    @property
    def exact(self) -> bool:
        return not self.cap_hit


# ---------------------------------------------------------------------------
# canonical form


def _canonical_pass(members: Sequence[Member]) -> list[Member]:
    ordered = sorted(members)
    relabel: dict[int, int] = {}
    for mem in ordered:
        for e in mem:
            if e not in relabel:
                relabel[e] = len(relabel)
    return sorted(tuple(sorted(relabel[e] for e in mem)) for mem in ordered)


def canonicalize(family: SetFamily) -> SetFamily:
    """Normal form: members sorted, elements relabeled by first appearance.

    Sorting and relabeling feed each other, so the pass is iterated to a
    fixed point (random testing shows a handful of passes at most).  If the
    iteration ever cycled, the lexicographically least state of the cycle
    would be returned, keeping the map idempotent either way.
    """
    cur = list(family.members)
    seen: list[list[Member]] = []
    while True:
        nxt = _canonical_pass(cur)
        if nxt == cur:
            break
        if nxt in seen:
            cycle = seen[seen.index(nxt):] + [cur]
            nxt = min(cycle)
            break
        seen.append(cur)
        cur = nxt
    ground = 1 + max((e for mem in nxt for e in mem), default=-1)
    return SetFamily(ground, tuple(nxt), family.multifamily)


# ---------------------------------------------------------------------------
# sunflowers


def is_sunflower(sets: Sequence[Iterable[int]], r_min: int = 2) -> Optional[Member]:
    """The common pairwise intersection of ``sets`` if all pairs agree, else ``None``.

    Needs at least ``max(2, r_min)`` sets; repeated sets are fine (a repeated
    set forces the core to equal that set).
    """
    need = max(2, r_min)
    masks = [mask_of(s) for s in sets]
    if len(masks) < need:
        raise ParameterError(f"need at least {need} sets, got {len(masks)}")
    core = masks[0] & masks[1]
    for a, b in combinations(range(len(masks)), 2):
        if masks[a] & masks[b] != core:
            return None
    return member_of(core)


def _sunflower_core_search(
    masks: Sequence[int],
    indices: Sequence[int],
    r: int,
    budget: Budget | None,
) -> Optional[tuple[int, tuple[int, ...]]]:
    """Exact search for ``r`` of the given members with pairwise-equal intersections.

    Candidate cores are all pairwise intersections plus the empty set and the
    members themselves; this is complete, because the core of any sunflower is
    the intersection of two of its members.  Per core, the petals (members
    minus core) must be pairwise disjoint; a depth-first packing search with
    a remaining-count bound finds the lexicographically least index witness.
    Returns ``(core_mask, indices)`` or ``None``.
    """
    if len(indices) < r:
        return None
    cores = {0}
    for i in indices:
        cores.add(masks[i])
    for a, b in combinations(indices, 2):
        cores.add(masks[a] & masks[b])

    for core in sorted(cores, key=member_of):
        eligible = [(i, masks[i] & ~core) for i in indices if masks[i] & core == core]
        if len(eligible) < r:
            continue
        found = _first_disjoint_r(eligible, r, budget)
        if found is not None:
            return core, found
    return None


def _first_disjoint_r(
    eligible: list[tuple[int, int]], r: int, budget: Budget | None
) -> Optional[tuple[int, ...]]:
    """Lexicographically first r-subset of ``eligible`` with pairwise disjoint petals."""
    total = len(eligible)
    chosen: list[int] = []

    def dfs(pos: int, used: int) -> bool:
        if len(chosen) == r:
            return True
        if len(chosen) + (total - pos) < r:
            return False
        if budget is not None:
            budget.spend()
        for t in range(pos, total):
            if len(chosen) + (total - t) < r:
                return False
            idx, petal = eligible[t]
            if petal & used == 0:
                chosen.append(idx)
                if dfs(t + 1, used | petal):
                    return True
                chosen.pop()
        return False

    if dfs(0, 0):
        return tuple(chosen)
    return None


def find_sunflower(
    family: SetFamily,
    r: int,
    distinct_only: bool = False,
    budget: int | None = None,
) -> Optional[Sunflower]:
    """Some ``r``-sunflower of ``family`` (distinct member indices), or ``None``.

    The search is exact and complete.  With ``distinct_only`` the petals must
    come from pairwise distinct sets; otherwise repeated identical members
    (legal in a multifamily) are eligible, so ``r`` copies of one set form a
    sunflower whose core is the set itself.

    ``r=2`` is rejected: any two sets trivially form a 2-sunflower.
    """
    if r < 3:
        raise ParameterError("find_sunflower requires r >= 3 (r = 2 is always satisfiable)")
    masks = family.masks
    if distinct_only:
        _, indices = family.distinct()
    else:
        indices = tuple(range(family.m))
    b = Budget(budget) if budget is not None else None
    hit = _sunflower_core_search(masks, indices, r, b)
    if hit is None:
        return None
    core, idx = hit
    return Sunflower(core=member_of(core), member_indices=idx)


def count_sunflower_tuples(family: SetFamily, r: int, budget: int | None = None) -> int:
    """Number of ordered r-tuples of member indices (repetition allowed) whose
    pairwise intersections are all equal.

    Counted exactly by grouping members into distinct values: a valid tuple is
    either constant, or consists of ``c >= 0`` copies of the common core (when
    the core itself is a member value) together with distinct values whose
    petals over the core are nonempty and pairwise disjoint.  The disjoint
    petal subsets are enumerated once per candidate core with their
    multiplicity weights.
    """
    if family.m == 0:
        raise EmptyFamilyError("count_sunflower_tuples needs a nonempty family")
    if r < 2:
        raise ParameterError("count_sunflower_tuples requires r >= 2")
    b = Budget(budget) if budget is not None else None

    counts: dict[int, int] = {}
    for mask in family.masks:
        counts[mask] = counts.get(mask, 0) + 1
    values = sorted(counts, key=member_of)

    total = sum(c**r for c in counts.values())

    cores = set(values)
    for va, vb in combinations(values, 2):
        cores.add(va & vb)

    fact = [math.factorial(s) for s in range(r + 1)]
    for core in sorted(cores, key=member_of):
        if b is not None:
            b.spend()
        petals = [(v & ~core, counts[v]) for v in values if v & core == core and v != core]
        if not petals:
            continue
        # weighted number of s-subsets of pairwise disjoint petals, s = 1..r
        e = [0] * (r + 1)

        def dfs(pos: int, depth: int, used: int, prod: int) -> None:
            if b is not None:
                b.spend()
            for t in range(pos, len(petals)):
                petal, w = petals[t]
                if petal & used == 0:
                    e[depth + 1] += prod * w
                    if depth + 1 < r:
                        dfs(t + 1, depth + 1, used | petal, prod * w)

        dfs(0, 0, 0, 1)
        total += fact[r] * e[r]
        n_core = counts.get(core)
        if n_core is not None:
            for s in range(1, r):
                c = r - s
                total += math.comb(r, c) * fact[s] * n_core**c * e[s]
    return total


# ---------------------------------------------------------------------------
# packing, transversal, lambda


def packing_number(family: SetFamily, budget: int | None = None) -> PackingResult:
    """Exact maximum number of pairwise disjoint members, with the
    lexicographically least maximum witness (branch and bound)."""
    masks = family.masks
    m = family.m
    b = Budget(budget) if budget is not None else None
    best: list[int] = []

    def dfs(pos: int, chosen: list[int], used: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = chosen.copy()
        if pos == m or len(chosen) + (m - pos) <= len(best):
            return
        if b is not None:
            b.spend()
        if masks[pos] & used == 0:
            chosen.append(pos)
            dfs(pos + 1, chosen, used | masks[pos])
            chosen.pop()
        dfs(pos + 1, chosen, used)

    dfs(0, [], 0)
    return PackingResult(len(best), tuple(best))


def transversal_number(family: SetFamily, budget: int | None = None) -> TransversalResult:
    """Exact minimum hitting set (branch and bound on the dual), with the
    lexicographically least minimum witness.

    Raises :class:`EmptyMemberError` if some member is empty (no transversal
    exists).  The empty family has transversal number 0.
    """
    m = family.m
    if m == 0:
        return TransversalResult(0, ())
    for i, mem in enumerate(family.members):
        if not mem:
            raise EmptyMemberError(f"member {i} is empty; no transversal exists")
    n = family.ground_size
    cols = family.columns
    masks = family.masks
    full = (1 << m) - 1
    b = Budget(budget) if budget is not None else None

    def greedy_lb(covered: int, min_elem: int) -> int:
        # pairwise (allowed-element)-disjoint uncovered members each need
        # their own hitting element
        allowed = ~((1 << min_elem) - 1) if min_elem else ~0
        used = 0
        lb = 0
        rem = full & ~covered
        i = 0
        while rem:
            if rem & 1:
                restricted = masks[i] & allowed
                if restricted == 0:
                    return m + 1  # member cannot be hit at all
                if restricted & used == 0:
                    lb += 1
                    used |= restricted
            rem >>= 1
            i += 1
        return lb

    def pick_member(covered: int, min_elem: int) -> int:
        # uncovered member with fewest allowed elements, ties to lowest index
        best_i, best_c = -1, n + 1
        rem = full & ~covered
        i = 0
        while rem:
            if rem & 1:
                c = sum(1 for e in family.members[i] if e >= min_elem)
                if c < best_c:
                    best_i, best_c = i, c
            rem >>= 1
            i += 1
        return best_i

    def solve(covered: int, min_elem: int, cap: int) -> bool:
        """Can the uncovered members be hit with <= cap elements >= min_elem?"""
        if covered == full:
            return True
        if cap <= 0:
            return False
        if greedy_lb(covered, min_elem) > cap:
            return False
        if b is not None:
            b.spend()
        i = pick_member(covered, min_elem)
        for e in family.members[i]:
            if e < min_elem:
                continue
            if solve(covered | cols[e], min_elem, cap - 1):
                return True
        return False

    tau = 1
    while not solve(0, 0, tau):
        tau += 1

    # lexicographically least witness of size tau
    witness: list[int] = []
    covered = 0
    floor = 0
    remaining = tau
    while covered != full:
        for e in range(floor, n):
            if cols[e] & ~covered == 0:
                continue  # covers nothing new; cannot be in a minimum witness
            if solve(covered | cols[e], e + 1, remaining - 1):
                witness.append(e)
                covered |= cols[e]
                floor = e + 1
                remaining -= 1
                break
        else:  # pragma: no cover - solve() guarantees completion
            raise AssertionError("witness reconstruction failed")
    return TransversalResult(tau, tuple(witness))


def lambda_number(
    family: SetFamily, cap: int = 8, budget: int | None = None
) -> LambdaResult:
    """Largest l <= cap such that some l members have, for every pair among
    them, a witness element lying in exactly that pair (among the chosen l).

    The property is hereditary, so a depth-first search over index subsets
    extends only satisfying sets.  ``cap_hit`` reports that the cap was
    reached while more members were available, in which case the value is a
    lower bound only.
    """
    if cap < 1:
        raise ParameterError("lambda cap must be >= 1")
    masks = family.masks
    m = family.m
    if m == 0:
        return LambdaResult(0, (), cap, False)
    cap_eff = min(cap, m)
    b = Budget(budget) if budget is not None else None
    best: list[int] = []

    def satisfies(chosen: list[int]) -> bool:
        union = [masks[i] for i in chosen]
        for a in range(len(chosen)):
            for c in range(a + 1, len(chosen)):
                others = 0
                for t in range(len(chosen)):
                    if t != a and t != c:
                        others |= union[t]
                if (union[a] & union[c]) & ~others == 0:
                    return False
        return True

    def dfs(start: int, chosen: list[int]) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = chosen.copy()
        if len(chosen) == cap_eff or len(best) == cap_eff:
            return
        if b is not None:
            b.spend()
        for i in range(start, m):
            if len(chosen) + (m - i) <= len(best):
                break
            chosen.append(i)
            if satisfies(chosen):
                dfs(i + 1, chosen)
            chosen.pop()
            if len(best) == cap_eff:
                return

    dfs(0, [])
    cap_hit = len(best) == cap and cap < m
    return LambdaResult(len(best), tuple(best), cap, cap_hit)


# ---------------------------------------------------------------------------
# duality and frequencies


def dual_family(family: SetFamily) -> SetFamily:
    """The dual family: one member per ground element, tracing which members
    contain it; empty traces dropped, duplicates collapsed, canonical form."""
    if family.multifamily:
        raise InvalidFamilyError("dual_family requires a plain family (no multifamily)")
    traces: list[Member] = []
    seen = set()
    for e in range(family.ground_size):
        col = family.columns[e]
        if col == 0:
            continue
        trace = member_of(col)
        if trace not in seen:
            seen.add(trace)
            traces.append(trace)
    dual = SetFamily(family.m, tuple(traces), False)
    return canonicalize(dual)


def element_frequencies(family: SetFamily) -> FrequencyProfile:
    """Exact per-element membership fractions."""
    if family.m == 0:
        raise EmptyFamilyError("element_frequencies needs a nonempty family")
    m = family.m
    fractions = []
    for e in range(family.ground_size):
        cnt = bin(family.columns[e]).count("1")
        fractions.append(Fraction(cnt, m))
    return FrequencyProfile(tuple(fractions), m)


def popular_element(family: SetFamily) -> tuple[int, Fraction]:
    """The most frequent ground element and its fraction (ties to the
    smallest element).  Requires a nonempty family with nonempty members."""
    if family.m == 0:
        raise EmptyFamilyError("popular_element needs a nonempty family")
    for i, mem in enumerate(family.members):
        if not mem:
            raise EmptyMemberError(f"member {i} is empty")
    profile = element_frequencies(family)
    best_e, best_f = 0, Fraction(-1)
    for e, f in enumerate(profile.fractions):
        if f > best_f:
            best_e, best_f = e, f
    return best_e, best_f
