"""Exhaustive ground truth at small sizes.

Streams every plane tree and every labeled mobile with up to six edges,
and computes the exact conditioned tree law in rational arithmetic.
These are the oracles against which the samplers and the bijection are
certified.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Iterator

import numpy as np

from .errors import TooLarge
from .laws import mu0_exact, mu1_exact
from .trees import Mobile, PlaneTree, count_labelings

ENUMERATION_LIMIT = 6


def _check_size(n: int, limit: int = ENUMERATION_LIMIT) -> None:
    if n < 1:
        raise TooLarge("enumeration needs n >= 1")
    if n > limit:
        raise TooLarge(f"enumeration supported only up to n = {limit} (asked {n})")


def enumerate_plane_trees(n: int) -> Iterator[PlaneTree]:
    """All plane trees with n edges, in lexicographic child-count order."""
    _check_size(n)
    V = n + 1
    counts = [0] * V

    def rec(i: int, pending: int, budget: int) -> Iterator[PlaneTree]:
        if i == V - 1:
            if pending == 1 and budget == 0:
                counts[i] = 0
                yield PlaneTree(np.array(counts, dtype=np.int32))
            return
        for c in range(budget + 1):
            # pending after this vertex must stay >= 1 until the last one
            if pending + c - 1 < 1:
                continue
            counts[i] = c
            yield from rec(i + 1, pending + c - 1, budget - c)

    yield from rec(0, 1, n)


def _admissible_offsets(k: int) -> list[tuple[int, ...]]:
    """Label offsets of the k white children relative to the parent.

    Enumerates the C(2k+1, k) cyclic increment vectors through the
    bars-in-slots correspondence and returns each as the prefix sums
    over the first k increments.
    """
    if k == 0:
        return [()]
    out = []
    for bars in combinations(range(2 * k + 1), k):
        parts = []
        prev = -1
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        # increments are parts - 1; offsets are prefix sums
        acc = 0
        offs = []
        for p in parts:
            acc += p - 1
            offs.append(acc)
        out.append(tuple(offs))
    return out


def enumerate_mobiles(n: int) -> Iterator[Mobile]:
    """All labeled mobiles with n edges, each exactly once."""
    _check_size(n)
    offsets_cache: dict[int, list[tuple[int, ...]]] = {}
    for tree in enumerate_plane_trees(n):
        blacks = tree.black_vertices
        ks = [int(tree.child_counts[b]) for b in blacks]
        for k in ks:
            if k not in offsets_cache:
                offsets_cache[k] = _admissible_offsets(k)
        whites = tree.white_vertices
        white_rank = tree.white_rank
        parents = tree.parents
        # children of each black, in lexicographic (sibling) order
        children = {int(b): [] for b in blacks}
        for w in whites[1:]:
            children[int(parents[w])].append(int(w))
        for choice in product(*(offsets_cache[k] for k in ks)):
            labels = np.zeros(len(whites), dtype=np.int64)
            for b, offs in zip(blacks, choice):
                base = labels[white_rank[parents[b]]]
                for w, o in zip(children[int(b)], offs):
                    labels[white_rank[w]] = base + o
            yield Mobile(tree, labels)


def count_mobiles(n: int) -> int:
    """Number of labeled mobiles with n edges (sum of labeling counts)."""
    _check_size(n)
    return sum(count_labelings(t) for t in enumerate_plane_trees(n))


def exact_tree_law(n: int) -> dict[PlaneTree, Fraction]:
    """Exact conditioned law: P(tree) over trees with n edges, rationals.

    The unconditioned weight of a tree is the product of white and black
    offspring probabilities; conditioning renormalizes over the n-edge
    event.  The law is proportional to the number of admissible
    labelings, which the tests assert.
    """
    _check_size(n)
    weights: dict[PlaneTree, Fraction] = {}
    for tree in enumerate_plane_trees(n):
        w = Fraction(1)
        cc = tree.child_counts
        for v in tree.white_vertices:
            w *= mu0_exact(int(cc[v]))
        for v in tree.black_vertices:
            w *= mu1_exact(int(cc[v]))
        weights[tree] = w
    total = sum(weights.values())
    return {t: w / total for t, w in weights.items()}


def count_rooted_pointed_maps(n: int) -> int:
    """Number of rooted-pointed bipartite maps with n edges: 2 x mobiles."""
    _check_size(n)
    return 2 * count_mobiles(n)
