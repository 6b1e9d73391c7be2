"""Corner-successor bijection between labeled mobiles and pointed maps.

Forward direction: every white-contour corner draws one arc to its
successor (the next corner, cyclically, whose label is one lower), or
to the added distinguished vertex when the corner's label is minimal.
The arc system is non-crossing, so ordering arc ends around each vertex
by the cyclic position of the far endpoint realizes the planar rotation
system directly; planarity is then *checked* (genus 0, even faces)
rather than assumed.

Inverse direction: distances from the distinguished vertex recover the
labels, half-edges pointing down the distance gradient mark the tree
corners, and a depth-first walk over rotation/face cycles rebuilds the
tree, labels, and orientation bit exactly.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import BimapLabError, Disconnected, NotBipartite, NotPointed
from .maps import CombinatorialMap, validate_map
from .trees import Mobile, PlaneTree, contour_sequence, validate_mobile


def successor_array(corner_labels: np.ndarray) -> np.ndarray:
    """Successor corner per corner (cyclic); -1 where the label is minimal.

    For corner i with label l, the successor is the first corner after i
    (wrapping around) with label l-1.
    """
    lab = np.asarray(corner_labels, dtype=np.int64)
    C = lab.shape[0]
    succ = np.full(C, -1, dtype=np.int64)
    min_label = int(lab.min())
    corners_by_label: dict[int, np.ndarray] = {}
    for value in np.unique(lab):
        corners_by_label[int(value)] = np.flatnonzero(lab == value)
    for value, corners in corners_by_label.items():
        if value == min_label:
            continue
        below = corners_by_label[value - 1]
        idx = np.searchsorted(below, corners, side="right")
        idx[idx == below.shape[0]] = 0
        succ[corners] = below[idx]
    return succ


def corner_successor(mobile: Mobile, i: int) -> int | None:
    """Successor of corner i, or None when the arc goes to the added vertex."""
    n = mobile.edge_count
    if not (0 <= i < n):
        raise IndexError(f"corner {i} out of range 0..{n-1}")
    seq = contour_sequence(mobile.tree)[::2]
    lab = mobile.labels[mobile.tree.white_rank[seq[:-1]]]
    s = int(successor_array(lab)[i])
    return None if s < 0 else s


def build_rotation_system(
    corner_vertex: np.ndarray, corner_labels: np.ndarray, eps: int
) -> CombinatorialMap:
    """Rotation system from a cyclic corner sequence with labels.

    Arc for corner i gets half-edges 2i (at corner i) and 2i+1 (at the
    successor corner, or at the distinguished vertex).  ``corner_vertex``
    gives the underlying vertex key of each corner, with corners of a
    vertex listed in rotation order along the cyclic sequence.  Also
    used by the quadrangulation sampler, whose corners run along the
    full contour of a one-type tree.
    """
    C = corner_vertex.shape[0]
    succ = successor_array(corner_labels)
    to_corner = succ >= 0

    # the rotation runs clockwise: corners of a vertex in contour order;
    # within a corner, incoming arcs by decreasing cyclic source
    # distance, then the outgoing arc
    ends = np.empty(2 * C, dtype=np.int64)     # half-edge ids
    at_corner = np.empty(2 * C, dtype=np.int64)
    key = np.empty(2 * C, dtype=np.int64)
    ends[:C] = 2 * np.arange(C)
    at_corner[:C] = np.arange(C)
    key[:C] = 0
    j = np.flatnonzero(to_corner)
    ends[C:C + j.shape[0]] = 2 * j + 1
    at_corner[C:C + j.shape[0]] = succ[j]
    key[C:C + j.shape[0]] = -((j - succ[j]) % C)
    m = C + j.shape[0]

    sigma = np.empty(2 * C, dtype=np.int64)
    vkey = corner_vertex[at_corner[:m]]
    order = np.lexsort((key[:m], at_corner[:m], vkey))
    sorted_ends = ends[:m][order]
    sorted_v = vkey[order]
    boundaries = np.flatnonzero(np.diff(sorted_v)) + 1
    starts = np.concatenate([[0], boundaries])
    stops = np.concatenate([boundaries, [m]])
    nxt = np.empty(m, dtype=np.int64)
    nxt[:-1] = sorted_ends[1:]
    nxt[stops - 1] = sorted_ends[starts]
    sigma[sorted_ends] = nxt

    # the distinguished vertex collects the remaining ends, clockwise
    # order = decreasing source corner
    dangling = np.flatnonzero(~to_corner)
    d_ends = (2 * dangling + 1)[::-1]
    if d_ends.shape[0] == 0:
        raise BimapLabError("no minimal-label corner; labels are inconsistent")
    sigma[d_ends[:-1]] = d_ends[1:]
    sigma[d_ends[-1]] = d_ends[0]

    origin = int(d_ends.min())
    root = 0 if eps == 0 else 1
    return CombinatorialMap(sigma, root=root, origin=origin)


def mobile_to_map(mobile: Mobile, eps: int = 0) -> CombinatorialMap:
    """Rooted-pointed bipartite map of a labeled mobile.

    The map has one edge per white-contour corner; its vertex set is the
    white vertices plus the distinguished vertex; the root edge is the
    arc drawn at corner 0, oriented away from the tree root iff eps = 0.
    """
    if eps not in (0, 1):
        raise ValueError("eps must be 0 or 1")
    tree = mobile.tree
    if tree.edge_count < 1:
        raise BimapLabError("mobile must have at least one edge")
    wc = contour_sequence(tree)[::2]
    corners = wc[:-1]
    labels = mobile.labels[tree.white_rank[corners]]
    return build_rotation_system(corners.astype(np.int64), labels, eps)


def map_to_mobile(m: CombinatorialMap) -> tuple[Mobile, int]:
    """Inverse construction; see :func:`map_to_mobile_with_corners`."""
    mobile, eps, _ = map_to_mobile_with_corners(m)
    return mobile, eps


def map_to_mobile_with_corners(
    m: CombinatorialMap,
) -> tuple[Mobile, int, np.ndarray]:
    """Mobile, orientation bit, and the map edge drawn at each corner.

    ``corner_edges[i]`` is the edge id (half-edge pair 2e, 2e+1 ...
    in the input map's labeling, edge id = half-edge // 2) of the arc
    that the forward construction draws at white-contour corner i.
    """
    if m.origin is None:
        raise NotPointed("inverse construction needs a distinguished vertex")
    report = validate_map(m)
    if not report.ok:
        msg = "; ".join(report.failures)
        if any("bipartite" in f for f in report.failures):
            raise NotBipartite(msg)
        if any("connected" in f for f in report.failures):
            raise Disconnected(msg)
        raise BimapLabError(msg)

    indptr, indices = m.adjacency
    source = m.compact_vertex(m.origin)
    dist = _kernels.bfs_csr(indptr, indices, source, m.vertex_count)
    dist_h = dist[m._compact].astype(np.int64)

    root_down = dist_h[m.root] == dist_h[m.root ^ 1] + 1
    eps = 0 if root_down else 1
    h_root = m.root if root_down else m.root ^ 1

    is_source = (dist_h == dist_h[np.arange(dist_h.shape[0]) ^ 1] + 1).astype(np.uint8)
    next_rot, next_face = _kernels.source_links(m.sigma, is_source)
    status, ccount, labels, corner_edges = _kernels.reconstruct_mobile(
        next_rot, next_face, dist_h, h_root, m.n_edges
    )
    if status != 0:
        raise BimapLabError(f"map is not in the image of the construction (code {status})")
    tree = PlaneTree(ccount)
    mobile = validate_mobile(tree, labels)
    return mobile, eps, corner_edges
