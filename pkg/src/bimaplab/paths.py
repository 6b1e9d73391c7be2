"""Path-valued encodings of trees and mobiles.

All encodings are plain integer sequences with a kind tag; linear
interpolation for real-time indexing is left to consumers.  The module
also provides the time-reversal walk functionals and the cyclic label
functional that bounds graph distances between contour corners.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO

import numpy as np

from . import _kernels
from .errors import BimapLabError
from .trees import Mobile, PlaneTree, contour_sequence

PATH_KINDS = (
    "walk", "bridge", "excursion", "contour", "white_contour", "label", "height",
)


@dataclass(frozen=True, eq=False)
class LatticePath:
    """Integer path with a kind tag; value sequence, not increments."""

    values: np.ndarray
    kind: str
    origin_law: object = field(default=None, repr=False)

    def __post_init__(self):
        vals = np.ascontiguousarray(np.asarray(self.values, dtype=np.int64))
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if self.kind not in PATH_KINDS:
            raise ValueError(f"unknown path kind {self.kind!r}")
        self._check_kind()

    def _check_kind(self):
        v = self.values
        steps = np.diff(v)
        ok = True
        if self.kind == "bridge":
            ok = v[0] == 1 and v[-1] == 0 and np.all(steps >= -1)
        elif self.kind == "excursion":
            ok = v[0] == 1 and v[-1] == 0 and np.all(steps >= -1) and np.all(v[:-1] >= 1)
        elif self.kind == "contour":
            ok = v[0] == 0 and v[-1] == 0 and np.all(np.abs(steps) == 1)
        elif self.kind == "white_contour":
            ok = v[0] == 0 and v[-1] == 0 and np.all(v >= 0) and np.all(np.abs(steps) <= 1)
        elif self.kind == "label":
            ok = v[0] == 0 and v[-1] == 0
        elif self.kind == "height":
            ok = v[0] == 0 and v[-1] == 0 and np.all(v >= 0)
        if not ok:
            raise BimapLabError(f"values do not satisfy the {self.kind!r} invariant")

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LatticePath)
            and self.kind == other.kind
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.values.tobytes()))

    @property
    def increments(self) -> np.ndarray:
        return np.diff(self.values)

    def to_csv(self, fp: IO[str]) -> None:
        fp.write("index,value\n")
        for i, x in enumerate(self.values):
            fp.write(f"{i},{int(x)}\n")


def walk_path(values) -> LatticePath:
    return LatticePath(values, "walk")


# -- encodings of a tree / mobile --------------------------------------

def contour_path(tree: PlaneTree) -> LatticePath:
    """Depth along the contour walk: length 2n+1, +-1 steps."""
    seq = contour_sequence(tree)
    return LatticePath(tree.depths[seq], "contour")


def white_contour_path(tree: PlaneTree) -> LatticePath:
    """Half-depth along the white contour: length n+1, steps in {-1,0,1}."""
    seq = contour_sequence(tree)[::2]
    return LatticePath(tree.depths[seq] // 2, "white_contour")


def label_path(mobile: Mobile) -> LatticePath:
    """Labels along the white contour: length n+1, starts and ends at 0."""
    seq = contour_sequence(mobile.tree)[::2]
    return LatticePath(mobile.labels[mobile.tree.white_rank[seq]], "label")


def lukasiewicz_path(tree: PlaneTree) -> LatticePath:
    """Active-white-vertex count along the white contour; length n+2.

    Starts at 1, stays >= 1, ends at 0.  Step k gains the child count of
    the black vertex entered between white times k and k+1, or loses 1
    when the white vertex at time k is complete.
    """
    seq = contour_sequence(tree)
    n = tree.edge_count
    if n == 0:
        return LatticePath(np.array([1, 0]), "excursion")
    odd = seq[1::2]
    even = seq[0:-1:2]
    inc = np.where(tree.parents[odd] == even,
                   tree.child_counts[odd].astype(np.int64), -1)
    values = np.empty(n + 2, dtype=np.int64)
    values[0] = 1
    values[1:-1] = 1 + np.cumsum(inc)
    values[-1] = values[-2] - 1
    return LatticePath(values, "excursion")


def height_from_path_records(path: LatticePath) -> np.ndarray:
    """counts[k] = #{ j < k : values[j] < min(values[j+1..k]) } for every k."""
    return _kernels.record_counts(path.values)


def check_contour_record_identity(tree: PlaneTree) -> bool:
    """White contour height equals the record count of the tree's walk.

    Holds for every tree; exercised exhaustively in tests and asserted
    on every sampled tree in the experiment suite.
    """
    c0 = white_contour_path(tree).values
    counts = _kernels.record_counts(lukasiewicz_path(tree).values)
    return bool(np.array_equal(c0, counts[: len(c0)]))


# -- walk functionals ---------------------------------------------------

@dataclass(frozen=True)
class WalkFunctionals:
    """Running max/min and record counts of a walk prefix."""

    max_value: int
    min_value: int
    record_count: int          # strict records of the walk itself
    future_min_count: int      # indices staying below the future minimum

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.future_min_count, self.record_count, self.max_value, self.min_value)


def _strict_records(values: np.ndarray) -> int:
    if values.shape[0] <= 1:
        return 0
    runmax = np.maximum.accumulate(values[:-1])
    return int(np.count_nonzero(values[1:] > runmax))


def walk_functionals(path: LatticePath, m: int) -> WalkFunctionals:
    """Functionals of the first m steps (needs len(path) > m).

    The future-minimum count is computed both from the time-reversed
    walk's records and from the direct definition; the two must agree.
    """
    S = path.values
    if m < 0 or m >= S.shape[0]:
        raise IndexError(f"m={m} out of range for path of length {S.shape[0]}")
    head = S[: m + 1]
    reversed_walk = S[m] - head[::-1] + 1
    r_rev = _strict_records(reversed_walk)
    if m == 0:
        r_direct = 0
    else:
        future_min = np.minimum.accumulate(head[:0:-1])[::-1]
        r_direct = int(np.count_nonzero(head[:-1] < future_min))
    if r_rev != r_direct:
        raise BimapLabError(
            f"reversal/direct future-min counts disagree: {r_rev} != {r_direct}"
        )
    return WalkFunctionals(
        max_value=int(head.max()),
        min_value=int(head.min()),
        record_count=_strict_records(head),
        future_min_count=r_direct,
    )


# -- lexicographic height and label profiles ---------------------------

def height_and_label_profiles(mobile: Mobile) -> tuple[LatticePath, LatticePath]:
    """Depth and label over vertices in lexicographic order, plus closing 0.

    Black vertices inherit their parent's label.  Both sequences have
    length (number of vertices) + 1 so that forest concatenation is
    seamless.
    """
    tree = mobile.tree
    V = tree.n_vertices
    height = np.zeros(V + 1, dtype=np.int64)
    height[:V] = tree.depths
    label_of = np.zeros(V, dtype=np.int64)
    label_of[tree.white_vertices] = mobile.labels
    blacks = tree.black_vertices
    label_of[blacks] = label_of[tree.parents[blacks]]
    lab = np.zeros(V + 1, dtype=np.int64)
    lab[:V] = label_of
    return LatticePath(height, "height"), LatticePath(lab, "label")


# -- cyclic label distance bound ----------------------------------------

class RangeMin:
    """Sparse-table range minimum over a fixed integer array."""

    def __init__(self, values: np.ndarray):
        v = np.asarray(values, dtype=np.int64)
        self.levels = [v]
        size = v.shape[0]
        j = 1
        while (1 << j) <= size:
            prev = self.levels[-1]
            half = 1 << (j - 1)
            self.levels.append(np.minimum(prev[:-half], prev[half:]))
            j += 1

    def query(self, lo, hi):
        """Minimum over closed ranges [lo, hi] (vectorized; requires lo <= hi)."""
        lo = np.asarray(lo, dtype=np.int64)
        hi = np.asarray(hi, dtype=np.int64)
        span = hi - lo + 1
        j = np.maximum(np.int64(0), (np.floor(np.log2(span))).astype(np.int64))
        out = np.empty(lo.shape, dtype=np.int64)
        for level in np.unique(j):
            mask = j == level
            tab = self.levels[int(level)]
            width = np.int64(1) << level
            out[mask] = np.minimum(tab[lo[mask]], tab[hi[mask] - width + 1])
        return out


def corner_distance_upper_bound(label_values, s, t) -> np.ndarray | int:
    """Cyclic label functional bounding the distance between corners s and t.

    For labels L over white-contour times 0..n:
    L[s] + L[t] - 2 max( min L[s..t], min(L[t..n], L[0..s]) ) + 2,
    taking s <= t (the functional is symmetric).
    """
    L = label_values.values if isinstance(label_values, LatticePath) else np.asarray(
        label_values, dtype=np.int64)
    n = L.shape[0] - 1
    s_arr = np.atleast_1d(np.asarray(s, dtype=np.int64))
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.int64))
    if np.any(s_arr < 0) or np.any(t_arr < 0) or np.any(s_arr > n) or np.any(t_arr > n):
        raise IndexError("corner index out of range")
    lo = np.minimum(s_arr, t_arr)
    hi = np.maximum(s_arr, t_arr)
    rmq = RangeMin(L)
    inner = rmq.query(lo, hi)
    prefix_min = np.minimum.accumulate(L)
    suffix_min = np.minimum.accumulate(L[::-1])[::-1]
    outer = np.minimum(prefix_min[lo], suffix_min[hi])
    bound = L[lo] + L[hi] - 2 * np.maximum(inner, outer) + 2
    if np.isscalar(s) and np.isscalar(t):
        return int(bound[0])
    return bound
