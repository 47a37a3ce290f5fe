"""Shared brute-force references for the test suite.

Everything here is written for obviousness, not speed: full enumerations
of symmetric groups, subset scans for blocks, and so on.  Library results
are compared against these on small degrees.
"""

from __future__ import annotations

import itertools

from rp2cover.branch import BranchData, Partition, parse_branch_data
from rp2cover.perm import Permutation


def all_images(d):
    """Every image tuple of degree d."""
    return itertools.permutations(range(1, d + 1))


def all_perms(d):
    return [Permutation(t) for t in all_images(d)]


def random_perm(d, rng):
    return Permutation(tuple(rng.sample(range(1, d + 1), d)))


def random_partition(d, rng):
    rest, parts = d, []
    while rest:
        p = rng.randint(1, rest)
        parts.append(p)
        rest -= p
    return tuple(sorted(parts, reverse=True))


def partitions_of(d):
    """All partitions of d in reverse-lexicographic order."""
    out = []

    def rec(rest, mx, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for p in range(min(rest, mx), 0, -1):
            acc.append(p)
            rec(rest - p, p, acc)
            acc.pop()

    rec(d, d, [])
    return out


def nontrivial_partitions(d):
    return [p for p in partitions_of(d) if any(x > 1 for x in p)]


def admissible_data(degrees, max_rows):
    """Every admissible branch datum with the given degrees and row counts.

    Rows are multisets of non-trivial partitions; the order of rows never
    affects admissibility or realizability, so one representative per
    multiset is enough.
    """
    from rp2cover.branch import is_admissible

    out = []
    for d in degrees:
        parts = nontrivial_partitions(d)
        for s in range(1, max_rows + 1):
            for combo in itertools.combinations_with_replacement(parts, s):
                data = BranchData(d, tuple(Partition(c) for c in combo))
                if is_admissible(data).ok:
                    out.append(data)
    return out


def data_of(text) -> BranchData:
    return parse_branch_data(text)


def brute_elements(gens, d, cap=100000):
    """Closure of image tuples under composition, as a set."""
    from rp2cover import kernels

    seen = {kernels.identity(d)}
    queue = list(seen)
    while queue:
        u = queue.pop()
        for g in gens:
            v = kernels.compose(u, g)
            if v not in seen:
                if len(seen) >= cap:
                    raise RuntimeError("closure too large for a brute check")
                seen.add(v)
                queue.append(v)
    return seen


def is_block_under(elements_imgs, subset):
    """True iff every translate of subset either equals or misses it."""
    b = frozenset(subset)
    for g in elements_imgs:
        image = frozenset(g[x - 1] for x in b)
        if image != b and image & b:
            return False
    return True


def brute_minimal_block(elements_imgs, d, x, y):
    """Smallest block containing x and y, by scanning all subsets.

    Only usable for small d.  The set of blocks containing a fixed pair is
    closed under intersection, so the minimum is unique.
    """
    best = tuple(range(1, d + 1))
    for r in range(2, d + 1):
        for subset in itertools.combinations(range(1, d + 1), r):
            if x not in subset or y not in subset:
                continue
            if len(subset) < len(best) and is_block_under(elements_imgs, subset):
                best = subset
    return tuple(best)


def brute_orbits(gens, d):
    """Orbit partition as a sorted tuple of sorted tuples."""
    reach = {x: {x} for x in range(1, d + 1)}
    changed = True
    while changed:
        changed = False
        for x in range(1, d + 1):
            for g in gens:
                for y in list(reach[x]):
                    if g[y - 1] not in reach[x]:
                        reach[x].add(g[y - 1])
                        changed = True
    seen = set()
    out = []
    for x in range(1, d + 1):
        rep = min(reach[x])
        if rep not in seen:
            seen.add(rep)
            out.append(tuple(sorted(reach[rep])))
    return tuple(out)
