"""Graph distances on combinatorial maps.

BFS gives exact shortest-path distances in O(V+E); the corner-indexed
helpers assume the builder's half-edge convention (corner i owns
half-edge 2i), which holds for every map produced by the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO

import numpy as np

from . import _kernels
from .errors import Disconnected, NotPointed
from .maps import CombinatorialMap
from .sampler import as_generator


@dataclass(frozen=True)
class DistanceProfile:
    """Exact distances from one source vertex.

    ``vertex_ids`` aligns with ``distances``; vertex ids are minimal
    half-edges of rotation orbits.
    """

    source: int
    vertex_ids: np.ndarray
    distances: np.ndarray

    @property
    def eccentricity(self) -> int:
        return int(self.distances.max())

    @property
    def histogram(self) -> np.ndarray:
        """Count of vertices at each distance 0..eccentricity."""
        return np.bincount(self.distances)

    def distance_of(self, vertex_id: int) -> int:
        idx = int(np.searchsorted(self.vertex_ids, vertex_id))
        if idx >= self.vertex_ids.shape[0] or self.vertex_ids[idx] != vertex_id:
            raise IndexError(f"no vertex with id {vertex_id}")
        return int(self.distances[idx])

    def to_csv(self, fp: IO[str]) -> None:
        fp.write("vertex,distance\n")
        for v, d in zip(self.vertex_ids, self.distances):
            fp.write(f"{int(v)},{int(d)}\n")


def bfs(m: CombinatorialMap, source: int) -> DistanceProfile:
    """Exact distances from a vertex id; raises if the map is disconnected."""
    indptr, indices = m.adjacency
    dist = _kernels.bfs_csr(indptr, indices, m.compact_vertex(source), m.vertex_count)
    if np.any(dist < 0):
        raise Disconnected("map is not connected")
    return DistanceProfile(source=source, vertex_ids=m.vertex_ids, distances=dist)


def corner_distance_matrix(m: CombinatorialMap, corners) -> np.ndarray:
    """Pairwise distances between the vertices at the given corners.

    One BFS per distinct source vertex; entry [a, b] is the graph
    distance between the vertices of corners[a] and corners[b].
    """
    corners = np.asarray(corners, dtype=np.int64)
    if np.any(corners < 0) or np.any(corners >= m.n_edges):
        raise IndexError("corner index out of range")
    verts = m.vertex_of[2 * corners]
    compact = m._compact[2 * corners]
    indptr, indices = m.adjacency
    out = np.empty((corners.shape[0], corners.shape[0]), dtype=np.int32)
    cache: dict[int, np.ndarray] = {}
    for a, cv in enumerate(compact):
        key = int(cv)
        if key not in cache:
            cache[key] = _kernels.bfs_csr(indptr, indices, key, m.vertex_count)
        out[a, :] = cache[key][compact]
    del verts
    return out


def one_point_distance_sample(m: CombinatorialMap, rng) -> float:
    """Rescaled distance from the distinguished vertex to a uniform corner.

    Returns d(origin, v_U) * (2n)^(-1/4) with U uniform over corners
    0..n-1, distances by BFS.
    """
    if m.origin is None:
        raise NotPointed("one-point sampling needs a distinguished vertex")
    gen = as_generator(rng)
    n = m.n_edges
    u = int(gen.integers(0, n))
    profile = bfs(m, m.origin)
    d = profile.distance_of(m.vertex_of_corner(u))
    return float(d) * (2.0 * n) ** -0.25


def check_triangle_inequality(matrix: np.ndarray, samples: int, rng) -> bool:
    """Spot-check d(a,c) <= d(a,b) + d(b,c) on random triples of the matrix."""
    gen = as_generator(rng)
    k = matrix.shape[0]
    idx = gen.integers(0, k, size=(samples, 3))
    a, b, c = idx[:, 0], idx[:, 1], idx[:, 2]
    return bool(np.all(matrix[a, c] <= matrix[a, b] + matrix[b, c]))
