"""Plane trees with two-type coloring and labeled mobiles.

A tree is stored as its depth-first child-count sequence, which makes
the walk correspondence used by the sampler a zero-cost view.  Vertices
are referred to by their position in depth-first (lexicographic) order;
a vertex is white when its depth is even, black when odd.  A mobile is
a tree plus one integer label per white vertex (lexicographic order,
root label 0) obeying the cyclic increment rule around each black
vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import IO, Iterable

import numpy as np

from . import _kernels
from .errors import BadLabeling, BadRootLabel, MalformedTree


@dataclass(frozen=True, eq=False)
class PlaneTree:
    """Rooted ordered tree given by child counts in depth-first order."""

    child_counts: np.ndarray

    def __post_init__(self):
        cc = np.ascontiguousarray(np.asarray(self.child_counts, dtype=np.int32))
        cc.setflags(write=False)
        object.__setattr__(self, "child_counts", cc)

    # -- identity ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, PlaneTree) and np.array_equal(
            self.child_counts, other.child_counts
        )

    def __hash__(self) -> int:
        return hash(self.child_counts.tobytes())

    def __repr__(self) -> str:
        return f"PlaneTree({self.child_counts.tolist()})"

    # -- basic counts ----------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return int(self.child_counts.shape[0])

    @property
    def edge_count(self) -> int:
        return self.n_vertices - 1

    # -- derived arrays (computed once) -----------------------------------

    @cached_property
    def parents(self) -> np.ndarray:
        parent, depth = _kernels.tree_arrays_from_counts(self.child_counts)
        self.__dict__["depths"] = depth
        return parent

    @cached_property
    def depths(self) -> np.ndarray:
        parent, depth = _kernels.tree_arrays_from_counts(self.child_counts)
        self.__dict__["parents"] = parent
        return depth

    @cached_property
    def subtree_sizes(self) -> np.ndarray:
        return _kernels.subtree_sizes(self.parents)

    @cached_property
    def white_vertices(self) -> np.ndarray:
        """Indices of even-depth vertices, in lexicographic order."""
        return np.flatnonzero(self.depths % 2 == 0)

    @cached_property
    def black_vertices(self) -> np.ndarray:
        return np.flatnonzero(self.depths % 2 == 1)

    @cached_property
    def white_rank(self) -> np.ndarray:
        """vertex index -> position among white vertices (-1 for black)."""
        rank = np.full(self.n_vertices, -1, dtype=np.int64)
        rank[self.white_vertices] = np.arange(len(self.white_vertices))
        return rank


def validate_tree(child_counts: Iterable[int]) -> PlaneTree:
    """Check the depth-first child-count encoding and wrap it.

    The running count of pending vertices (partial sums of count - 1
    started from 1) must stay >= 1 and reach exactly 0 at the last
    vertex; equivalently the sequence is a valid depth-first encoding.
    """
    cc = np.asarray(list(child_counts) if not isinstance(child_counts, np.ndarray)
                    else child_counts, dtype=np.int64)
    if cc.ndim != 1 or cc.shape[0] == 0:
        raise MalformedTree("child-count sequence must be a nonempty 1-d sequence")
    if np.any(cc < 0):
        raise MalformedTree("child counts must be nonnegative")
    pending = 1 + np.cumsum(cc - 1)
    if np.any(pending[:-1] < 1) or pending[-1] != 0:
        raise MalformedTree(
            f"invalid depth-first encoding: pending-vertex count path "
            f"{pending.tolist()[:20]}{'...' if len(pending) > 20 else ''}"
        )
    return PlaneTree(cc)


def contour_sequence(tree: PlaneTree) -> np.ndarray:
    """Vertex indices u_0..u_{2n} visited by the contour walk."""
    return _kernels.contour_seq(tree.child_counts, tree.parents, tree.subtree_sizes)


def white_contour_sequence(tree: PlaneTree) -> np.ndarray:
    """Even-time subsequence v_i = u_{2i} of the contour; length n+1, all white."""
    return contour_sequence(tree)[::2]


def count_labelings(tree: PlaneTree) -> int:
    """Number of admissible labelings: product over black vertices of C(2k+1, k)."""
    return math.prod(
        math.comb(2 * int(k) + 1, int(k))
        for k in tree.child_counts[tree.black_vertices]
    )


@dataclass(frozen=True, eq=False)
class Mobile:
    """Plane tree plus integer labels on white vertices (root label 0)."""

    tree: PlaneTree
    labels: np.ndarray

    def __post_init__(self):
        lab = np.ascontiguousarray(np.asarray(self.labels, dtype=np.int64))
        lab.setflags(write=False)
        object.__setattr__(self, "labels", lab)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mobile)
            and self.tree == other.tree
            and np.array_equal(self.labels, other.labels)
        )

    def __hash__(self) -> int:
        return hash((self.tree, self.labels.tobytes()))

    def __repr__(self) -> str:
        return f"Mobile({self.tree.child_counts.tolist()}, labels={self.labels.tolist()})"

    @property
    def edge_count(self) -> int:
        return self.tree.edge_count

    def label_of_vertex(self, v: int) -> int:
        """Label of a white vertex given by its lexicographic index."""
        r = self.tree.white_rank[v]
        if r < 0:
            raise IndexError(f"vertex {v} is black; labels live on white vertices")
        return int(self.labels[r])


def _black_cycles(tree: PlaneTree):
    """Per-black sibling structure.

    Returns (blacks, order, starts) where ``order`` lists non-root white
    vertices grouped by their black parent (groups in the order of
    ``blacks``, siblings in lexicographic order) and ``starts`` gives
    group boundaries.
    """
    nonroot_whites = tree.white_vertices[1:]
    par = tree.parents[nonroot_whites]
    sortidx = np.argsort(par, kind="stable")
    order = nonroot_whites[sortidx]
    grouped_par = par[sortidx]
    blacks_with_children, starts = np.unique(grouped_par, return_index=True)
    return blacks_with_children, order, starts


def validate_mobile(tree: PlaneTree, labels: Iterable[int]) -> Mobile:
    """Check the cyclic label rule around every black vertex.

    For a black vertex with children v_1..v_k and parent v_0 = v_{k+1},
    every consecutive pair in the cycle must satisfy
    label(v_{i+1}) >= label(v_i) - 1; the root label must be 0.
    """
    lab = np.asarray(list(labels) if not isinstance(labels, np.ndarray) else labels,
                     dtype=np.int64)
    whites = tree.white_vertices
    if lab.shape[0] != whites.shape[0]:
        raise BadLabeling(
            f"expected {whites.shape[0]} labels (one per white vertex), got {lab.shape[0]}"
        )
    if whites.shape[0] and lab[0] != 0:
        raise BadRootLabel(f"root label must be 0, got {int(lab[0])}")

    label_of = np.zeros(tree.n_vertices, dtype=np.int64)
    label_of[whites] = lab

    blacks, order, starts = _black_cycles(tree)
    if blacks.shape[0]:
        child_lab = label_of[order]
        parent_lab = label_of[tree.parents[blacks]]
        k = tree.child_counts[blacks].astype(np.int64)
        # entering increment: first child vs parent
        bad = child_lab[starts] < parent_lab - 1
        # sibling increments
        sib_prev = np.empty_like(child_lab)
        sib_prev[1:] = child_lab[:-1]
        sib_prev[starts] = child_lab[starts]  # neutralized below
        sib_bad = child_lab < sib_prev - 1
        sib_bad[starts] = False
        # closing increment: parent vs last child
        last = starts + k - 1
        bad_close = parent_lab < child_lab[last] - 1
        for flag, where in ((bad, blacks), (bad_close, blacks)):
            if np.any(flag):
                b = int(where[np.argmax(flag)])
                raise BadLabeling(f"cyclic increment below -1 around black vertex {b}")
        if np.any(sib_bad):
            group = np.searchsorted(starts, np.argmax(sib_bad), side="right") - 1
            raise BadLabeling(
                f"cyclic increment below -1 around black vertex {int(blacks[group])}"
            )
    # blacks with zero children impose nothing (single increment 0).
    return Mobile(tree, lab)


# -- text format -------------------------------------------------------

def write_mobile(mobile: Mobile, fp: IO[str], eps: int | None = None) -> None:
    """One mobile record: header, child counts, white labels, optional eps."""
    fp.write(f"MOBILE n={mobile.edge_count}\n")
    fp.write(" ".join(str(int(c)) for c in mobile.tree.child_counts) + "\n")
    fp.write(" ".join(str(int(x)) for x in mobile.labels) + "\n")
    if eps is not None:
        fp.write(f"eps={int(eps)}\n")


def parse_mobiles(text: str) -> list[tuple[Mobile, int]]:
    """Parse a sequence of mobile records; eps defaults to 0 when absent."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    records: list[tuple[Mobile, int]] = []
    i = 0
    while i < len(lines):
        header = lines[i]
        if not header.startswith("MOBILE"):
            raise MalformedTree(f"expected 'MOBILE n=<edges>' header, got {header!r}")
        try:
            n = int(header.split("n=")[1].split()[0])
        except (IndexError, ValueError) as exc:
            raise MalformedTree(f"unparseable mobile header {header!r}") from exc
        if i + 2 >= len(lines):
            raise MalformedTree("truncated mobile record")
        counts = [int(tok) for tok in lines[i + 1].split()]
        labels = [int(tok) for tok in lines[i + 2].split()]
        i += 3
        tree = validate_tree(counts)
        if tree.edge_count != n:
            raise MalformedTree(
                f"header says n={n} but child counts give n={tree.edge_count}"
            )
        mobile = validate_mobile(tree, labels)
        eps = 0
        if i < len(lines) and lines[i].startswith("eps="):
            eps = int(lines[i].split("=")[1])
            if eps not in (0, 1):
                raise MalformedTree(f"eps must be 0 or 1, got {eps}")
            i += 1
        records.append((mobile, eps))
    return records


def read_mobile(fp: IO[str]) -> tuple[Mobile, int]:
    """Parse the first mobile record of a stream."""
    records = parse_mobiles(fp.read())
    if not records:
        raise MalformedTree("empty mobile input")
    return records[0]
