"""Independent quadrangulation sampler for cross-validation.

Uniform rooted-pointed quadrangulations with F faces come from a
uniform plane tree with F edges carrying i.i.d. uniform {-1, 0, +1}
edge increments, through the same corner-successor construction run
over the full contour.  The offspring law here is the critical
geometric of mean one, kept separate from the bipartite pipeline so the
two samplers share no distributional ingredients.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import MalformedExcursion
from .laws import geometric_walk_law
from .maps import CombinatorialMap
from .bijection import build_rotation_system
from .sampler import DEFAULT_MAX_ATTEMPTS, as_generator, bridge_increments
from .trees import PlaneTree, contour_sequence


def sample_uniform_plane_tree(
    edges: int, rng, max_attempts: int = DEFAULT_MAX_ATTEMPTS
) -> PlaneTree:
    """Uniform plane tree with the given number of edges (exact law).

    The critical geometric tree conditioned on its edge count is uniform,
    so a geometric-jump bridge plus the cyclic shift does it; the
    excursion increments are the child counts in depth-first order
    shifted by one.
    """
    if edges < 1:
        raise ValueError("edges must be >= 1")
    gen = as_generator(rng)
    law = geometric_walk_law()
    steps = bridge_increments(edges, gen, law.values, law.probs, max_attempts)
    prefix = np.cumsum(steps)
    r = int(np.argmin(prefix)) + 1
    rotated = np.concatenate([steps[r:], steps[:r]])
    counts = (rotated + 1).astype(np.int32)
    if counts[-1] != 0:
        raise MalformedExcursion("rotated bridge does not end at a leaf")
    return PlaneTree(counts)


def sample_labeled_plane_tree(edges: int, rng) -> tuple[PlaneTree, np.ndarray]:
    """Uniform plane tree plus i.i.d. uniform {-1,0,+1} edge increments.

    Returns the tree and one label per vertex (root label 0).
    """
    gen = as_generator(rng)
    tree = sample_uniform_plane_tree(edges, gen)
    inc = gen.integers(-1, 2, size=tree.n_vertices)
    inc[0] = 0
    labels = _kernels.chain_accumulate(tree.parents.astype(np.int64), inc)
    return tree, labels


def sample_quadrangulation(faces: int, rng, eps: int | None = None) -> CombinatorialMap:
    """Uniform rooted-pointed quadrangulation with the given face count.

    The result has 2*faces edges and all face degrees equal to 4; the
    distance identity from the distinguished vertex holds exactly
    (checked by tests through BFS).
    """
    if faces < 1:
        raise ValueError("faces must be >= 1")
    gen = as_generator(rng)
    tree, labels = sample_labeled_plane_tree(faces, gen)
    if eps is None:
        eps = int(gen.integers(0, 2))
    seq = contour_sequence(tree)
    corners = seq[:-1].astype(np.int64)
    return build_rotation_system(corners, labels[corners], eps)


def corner_label_distances(tree: PlaneTree, labels: np.ndarray) -> np.ndarray:
    """Distance from the distinguished vertex to each contour corner.

    Uses the label identity d = label - min(label) + 1, which tests
    certify against BFS on the built map.
    """
    seq = contour_sequence(tree)[:-1]
    lab = labels[seq]
    return lab - labels.min() + 1
