"""Brute-force reference implementations used as independent test oracles.

Everything here enumerates exhaustively with no pruning and no shared code
with the package's search routines; sizes are kept small by the callers.
"""

from __future__ import annotations

import random
from itertools import combinations, product

from sunflower_lab import SetFamily
from sunflower_lab.dimensions import ShatterTree


def brute_has_sunflower(family: SetFamily, r: int, distinct_only: bool = False) -> bool:
    """Exhaustive check over all r-subsets of member indices."""
    members = [frozenset(mem) for mem in family.members]
    indices = range(len(members))
    if distinct_only:
        seen = {}
        for i, s in enumerate(members):
            seen.setdefault(s, i)
        indices = sorted(seen.values())
    for combo in combinations(indices, r):
        inters = {members[a] & members[b] for a, b in combinations(combo, 2)}
        if len(inters) == 1:
            return True
    return False


def brute_count_tuples(family: SetFamily, r: int) -> int:
    """Full m^r enumeration of ordered tuples with repetition."""
    members = [frozenset(mem) for mem in family.members]
    count = 0
    for combo in product(range(len(members)), repeat=r):
        inters = {
            members[combo[p]] & members[combo[q]]
            for p, q in combinations(range(r), 2)
        }
        if len(inters) == 1:
            count += 1
    return count


def brute_vc(family: SetFamily) -> int:
    """Largest shattered subset of the ground set, by full enumeration."""
    members = [frozenset(mem) for mem in family.members]
    if not members:
        return 0
    ground = range(family.ground_size)
    best = 0
    for size in range(family.ground_size + 1):
        found = False
        for cand in combinations(ground, size):
            cset = frozenset(cand)
            traces = {m & cset for m in members}
            if len(traces) == 2**size:
                found = True
                break
        if found:
            best = size
        else:
            break
    return best


def brute_packing(family: SetFamily) -> int:
    members = [frozenset(mem) for mem in family.members]
    best = 0
    for size in range(len(members), 0, -1):
        for combo in combinations(range(len(members)), size):
            if all(
                not (members[a] & members[b]) for a, b in combinations(combo, 2)
            ):
                return size
    return best


def brute_transversal(family: SetFamily) -> int:
    members = [frozenset(mem) for mem in family.members]
    if not members:
        return 0
    assert all(members), "undefined for empty members"
    ground = range(family.ground_size)
    for size in range(family.ground_size + 1):
        for combo in combinations(ground, size):
            cset = set(combo)
            if all(m & cset for m in members):
                return size
    raise AssertionError("some member has no elements")


def brute_lambda(family: SetFamily) -> int:
    members = [frozenset(mem) for mem in family.members]
    best = 0
    for size in range(1, len(members) + 1):
        for combo in combinations(range(len(members)), size):
            ok = True
            for a, b in combinations(combo, 2):
                others = frozenset().union(
                    *[members[t] for t in combo if t not in (a, b)]
                ) if size > 2 else frozenset()
                if not (members[a] & members[b]) - others:
                    ok = False
                    break
            if ok:
                best = size
                break
    return best


def validate_shatter_tree(family: SetFamily, tree: ShatterTree, depth: int) -> None:
    """Walk a witness tree checking uniform depth and trace consistency."""

    def walk(node: ShatterTree, level: int, must_have: set[int], must_lack: set[int]):
        if node.is_leaf():
            assert level == depth, "leaf at wrong depth"
            member = set(family.members[node.member])
            assert must_have <= member, "missing promised element"
            assert not (must_lack & member), "contains excluded element"
            return
        assert node.element is not None and node.left and node.right
        walk(node.left, level + 1, must_have | {node.element}, must_lack)
        walk(node.right, level + 1, must_have, must_lack | {node.element})

    walk(tree, 0, set(), set())


def random_family(
    rng: random.Random,
    max_m: int = 10,
    max_n: int = 10,
    max_k: int | None = None,
    multifamily: bool = False,
    allow_empty_members: bool = True,
) -> SetFamily:
    """A small random family; deterministic given the Random instance."""
    n = rng.randrange(1, max_n + 1)
    m = rng.randrange(0, max_m + 1)
    members = []
    seen = set()
    attempts = 0
    while len(members) < m and attempts < 200:
        attempts += 1
        top = max_k if max_k is not None else n
        lo = 0 if allow_empty_members else 1
        size = rng.randrange(lo, min(top, n) + 1)
        mem = tuple(sorted(rng.sample(range(n), size)))
        if not multifamily and mem in seen:
            continue
        seen.add(mem)
        members.append(mem)
    return SetFamily(n, tuple(members), multifamily)


def random_uniform_family(
    rng: random.Random, m: int, n: int, k: int, multifamily: bool = False
) -> SetFamily:
    members = []
    seen = set()
    attempts = 0
    while len(members) < m and attempts < 500:
        attempts += 1
        mem = tuple(sorted(rng.sample(range(n), k)))
        if not multifamily and mem in seen:
            continue
        seen.add(mem)
        members.append(mem)
    return SetFamily(n, tuple(members), multifamily)
