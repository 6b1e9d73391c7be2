"""Half-edge combinatorial maps.

A map on 2n half-edges is stored as the rotation permutation sigma
(counterclockwise order around each vertex) with the pairing fixed as
alpha(h) = h XOR 1, a root half-edge, and an optional distinguished
vertex.  Vertices are sigma-orbits identified by their minimal
half-edge; faces are orbits of sigma o alpha.  Genus-0 and even-face
checks make the planarity and bipartiteness of constructions
observable without geometric data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import IO

import numpy as np

from . import _kernels
from .errors import Disconnected, MalformedTree, NotPointed


@dataclass(frozen=True, eq=False)
class CombinatorialMap:
    """Rotation system with implicit pairing alpha(h) = h XOR 1."""

    sigma: np.ndarray
    root: int
    origin: int | None = None

    def __post_init__(self):
        sig = np.ascontiguousarray(np.asarray(self.sigma, dtype=np.int64))
        sig.setflags(write=False)
        object.__setattr__(self, "sigma", sig)
        H = sig.shape[0]
        if H % 2 != 0 or H == 0:
            raise ValueError("sigma must cover an even, positive number of half-edges")
        if not (0 <= self.root < H):
            raise ValueError(f"root half-edge {self.root} out of range")

    # -- identity ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CombinatorialMap)
            and self.root == other.root
            and self.origin == other.origin
            and np.array_equal(self.sigma, other.sigma)
        )

    def __hash__(self) -> int:
        return hash((self.root, self.origin, self.sigma.tobytes()))

    @property
    def n_edges(self) -> int:
        return int(self.sigma.shape[0]) // 2

    def alpha(self, h):
        return np.bitwise_xor(h, 1)

    # -- orbits ----------------------------------------------------------

    @cached_property
    def vertex_of(self) -> np.ndarray:
        """Vertex id (minimal half-edge of the sigma-orbit) per half-edge."""
        return _kernels.orbit_reps(self.sigma)

    @cached_property
    def vertex_ids(self) -> np.ndarray:
        return np.unique(self.vertex_of)

    @property
    def vertex_count(self) -> int:
        return int(self.vertex_ids.shape[0])

    @cached_property
    def face_perm(self) -> np.ndarray:
        h = np.arange(self.sigma.shape[0], dtype=np.int64)
        return self.sigma[h ^ 1]

    @cached_property
    def face_of(self) -> np.ndarray:
        return _kernels.orbit_reps(self.face_perm)

    @cached_property
    def face_ids(self) -> np.ndarray:
        return np.unique(self.face_of)

    @property
    def face_count(self) -> int:
        return int(self.face_ids.shape[0])

    @cached_property
    def face_degrees(self) -> np.ndarray:
        """Face degree (orbit length) aligned with face_ids."""
        _, counts = np.unique(self.face_of, return_counts=True)
        return counts

    # -- graph view --------------------------------------------------------

    @cached_property
    def _compact(self) -> np.ndarray:
        """Compact vertex index per half-edge."""
        return np.searchsorted(self.vertex_ids, self.vertex_of)

    def compact_vertex(self, vertex_id: int) -> int:
        idx = int(np.searchsorted(self.vertex_ids, vertex_id))
        if idx >= self.vertex_count or self.vertex_ids[idx] != vertex_id:
            raise IndexError(f"no vertex with id {vertex_id}")
        return idx

    @cached_property
    def adjacency(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR adjacency over compact vertex indices (parallel edges kept)."""
        H = self.sigma.shape[0]
        tail = self._compact
        head = tail[np.arange(H) ^ 1]
        order = np.argsort(tail, kind="stable")
        indices = head[order].astype(np.int64)
        counts = np.bincount(tail, minlength=self.vertex_count)
        indptr = np.zeros(self.vertex_count + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return indptr, indices

    def vertex_of_corner(self, i: int) -> int:
        """Map vertex at white-contour corner i (builder convention 2i)."""
        return int(self.vertex_of[2 * i])

    # -- checks ------------------------------------------------------------

    def is_permutation(self) -> bool:
        H = self.sigma.shape[0]
        return bool(np.array_equal(np.sort(self.sigma), np.arange(H)))

    def is_connected(self) -> bool:
        indptr, indices = self.adjacency
        dist = _kernels.bfs_csr(indptr, indices, 0, self.vertex_count)
        return bool(np.all(dist >= 0))


@dataclass(frozen=True)
class MapReport:
    """Structured validation result; failures listed rather than raised."""

    n_edges: int
    vertex_count: int
    face_count: int
    euler_characteristic: int
    failures: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures


def validate_map(m: CombinatorialMap) -> MapReport:
    """Permutation, connectivity, genus-0 and even-face checks."""
    failures = []
    if not m.is_permutation():
        return MapReport(m.n_edges, 0, 0, 0, ("sigma is not a permutation",))
    if not m.is_connected():
        failures.append("map is not connected")
    euler = m.vertex_count - m.n_edges + m.face_count
    if euler != 2:
        failures.append(f"genus is not zero (V-E+F = {euler})")
    if np.any(m.face_degrees % 2 != 0):
        failures.append("a face has odd degree (map is not bipartite)")
    if m.origin is not None:
        if m.origin not in m.vertex_ids:
            failures.append(f"origin {m.origin} is not a vertex id")
    return MapReport(
        n_edges=m.n_edges,
        vertex_count=m.vertex_count,
        face_count=m.face_count,
        euler_characteristic=euler,
        failures=tuple(failures),
    )


# -- canonical codes and root-preserving matching ------------------------

def _canonical_order(m: CombinatorialMap) -> np.ndarray:
    """Half-edges in canonical traversal order from the root.

    The traversal is a function of (sigma, alpha, root) only, so the
    induced relabeling is equivariant under isomorphism.
    """
    H = m.sigma.shape[0]
    ids = np.full(H, -1, dtype=np.int64)
    order = np.empty(H, dtype=np.int64)
    ids[m.root] = 0
    order[0] = m.root
    count = 1
    head = 0
    sigma = m.sigma
    while head < count:
        h = order[head]
        head += 1
        for g in (int(sigma[h]), int(h) ^ 1):
            if ids[g] < 0:
                ids[g] = count
                order[count] = g
                count += 1
    if count != H:
        raise Disconnected("map is not connected; canonical code undefined")
    return order


def canonical_code(m: CombinatorialMap) -> bytes:
    """Byte string equal iff rooted(-pointed) isomorphic.

    Rooted maps carry no nontrivial automorphisms, so the canonical
    relabeling of sigma (and the origin mark, when pointed) is a
    complete invariant.
    """
    order = _canonical_order(m)
    ids = np.empty_like(order)
    ids[order] = np.arange(order.shape[0])
    sig = ids[m.sigma[order]].astype(np.int32)
    alph = ids[order ^ 1].astype(np.int32)
    if m.origin is None:
        mark = -1
    else:
        mark = int(ids[m.vertex_of == m.origin].min())
    head = f"M{m.n_edges};{mark};".encode()
    return head + sig.tobytes() + alph.tobytes()


def match_rooted_maps(a: CombinatorialMap, b: CombinatorialMap) -> np.ndarray | None:
    """Half-edge bijection a->b respecting sigma, alpha and roots, or None."""
    if a.sigma.shape != b.sigma.shape:
        return None
    order_a = _canonical_order(a)
    order_b = _canonical_order(b)
    psi = np.empty_like(order_a)
    psi[order_a] = order_b
    ok = np.array_equal(psi[a.sigma], b.sigma[psi]) and np.array_equal(
        psi[np.arange(psi.shape[0]) ^ 1], psi ^ 1
    )
    return psi if ok else None


# -- text format -------------------------------------------------------

def write_map(m: CombinatorialMap, fp: IO[str]) -> None:
    origin = "none" if m.origin is None else str(m.origin)
    fp.write(f"MAP n={m.n_edges} root={m.root} origin={origin}\n")
    fp.write(" ".join(str(int(x)) for x in m.sigma) + "\n")


def parse_map(text: str) -> CombinatorialMap:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("MAP"):
        raise MalformedTree(f"expected 'MAP n=...' header, got {lines[:1]!r}")
    fields = dict(tok.split("=") for tok in lines[0].split()[1:])
    try:
        n = int(fields["n"])
        root = int(fields["root"])
        origin = None if fields["origin"] == "none" else int(fields["origin"])
    except (KeyError, ValueError) as exc:
        raise MalformedTree(f"unparseable map header {lines[0]!r}") from exc
    if len(lines) < 2:
        raise MalformedTree("truncated map record")
    sigma = np.array([int(tok) for tok in lines[1].split()], dtype=np.int64)
    if sigma.shape[0] != 2 * n:
        raise MalformedTree(f"expected {2*n} sigma images, got {sigma.shape[0]}")
    return CombinatorialMap(sigma, root, origin)


def read_map(fp: IO[str]) -> CombinatorialMap:
    return parse_map(fp.read())
