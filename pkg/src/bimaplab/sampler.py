"""Exact samplers for the conditioned two-type tree and labeled mobiles.

The conditioned tree is drawn in three exact steps: a jump-law bridge
(i.i.d. jumps conditioned to sum to -1, by rejection), the unique cyclic
shift turning the bridge into a first-passage excursion, and the
deterministic decoding of the excursion into the tree.  Labels are then
drawn uniformly over admissible labelings, black vertex by black
vertex, through the subset/composition correspondence.

Rejection never materializes rejected attempts: candidates are drawn as
multinomial count vectors (the sum only depends on counts) and the
accepted one is arranged by a uniform shuffle, which reproduces the
i.i.d.-conditioned law exactly.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import BudgetExceeded, MalformedExcursion, NotABridge
from .laws import OffspringLaws, standard_laws
from .paths import LatticePath
from .rng import RngState
from .trees import Mobile, PlaneTree, _black_cycles

DEFAULT_MAX_ATTEMPTS = 10_000_000
_BATCH = 2048


def as_generator(rng) -> np.random.Generator:
    """Accept an RngState (fresh stream) or a Generator (continue it)."""
    if isinstance(rng, RngState):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected RngState or numpy Generator, got {type(rng)!r}")


def bridge_increments(
    n: int,
    gen: np.random.Generator,
    values: np.ndarray,
    probs: np.ndarray,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> np.ndarray:
    """n+1 i.i.d. jumps from (values, probs) conditioned to sum to -1.

    Rejection runs on multinomial count vectors (the conditioning event
    depends on counts only); the accepted counts are arranged by a
    uniform shuffle, reproducing the conditioned i.i.d. law exactly.
    """
    attempts = 0
    while attempts < max_attempts:
        take = min(_BATCH, max_attempts - attempts)
        counts = gen.multinomial(n + 1, probs, size=take)
        attempts += take
        sums = counts @ values
        hits = np.flatnonzero(sums == -1)
        if hits.size:
            steps = np.repeat(values, counts[hits[0]])
            gen.shuffle(steps)
            return steps
    raise BudgetExceeded(f"no bridge found in {max_attempts} attempts at n={n}")


def sample_nu_bridge(
    n: int,
    rng,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    laws: OffspringLaws | None = None,
) -> LatticePath:
    """n+1 i.i.d. jumps conditioned on total sum -1, as a bridge path.

    Acceptance probability decays like 1/sqrt(n), so the expected number
    of candidate draws is O(sqrt(n)); each candidate costs O(1) in n
    through its count vector.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    gen = as_generator(rng)
    laws = laws or standard_laws()
    steps = bridge_increments(n, gen, laws.nu_values, laws.nu_probs, max_attempts)
    path = np.empty(n + 2, dtype=np.int64)
    path[0] = 1
    path[1:] = 1 + np.cumsum(steps)
    return LatticePath(path, "bridge", origin_law=laws)


def cycle_shift_to_excursion(bridge: LatticePath) -> LatticePath:
    """The unique rotation of a bridge that stays >= 1 until the final 0.

    Rotates the increments to begin right after the first minimum of
    the partial sums; uniqueness holds because all jumps are >= -1.
    """
    inc = bridge.increments
    if inc.sum() != -1 or np.any(inc < -1):
        raise NotABridge("increments must be >= -1 and sum to -1")
    prefix = np.cumsum(inc)
    r = int(np.argmin(prefix)) + 1
    rotated = np.concatenate([inc[r:], inc[:r]])
    path = np.empty(inc.shape[0] + 1, dtype=np.int64)
    path[0] = 1
    path[1:] = 1 + np.cumsum(rotated)
    return LatticePath(path, "excursion", origin_law=bridge.origin_law)


def decode_two_type_tree(excursion: LatticePath) -> PlaneTree:
    """The unique two-type tree whose walk has these increments."""
    inc = excursion.increments
    if inc.shape[0] < 2:
        raise MalformedExcursion("need at least two increments (n >= 1)")
    status, ccount, parent, depth = _kernels.decode_two_type(inc)
    if status != 0:
        raise MalformedExcursion(f"increments are not decodable (code {status})")
    tree = PlaneTree(ccount)
    tree.__dict__["parents"] = parent
    tree.__dict__["depths"] = depth
    return tree


def sample_conditioned_tree(
    n: int,
    rng,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    laws: OffspringLaws | None = None,
) -> PlaneTree:
    """Two-type tree conditioned to have exactly n edges (exact law)."""
    gen = as_generator(rng)
    bridge = sample_nu_bridge(n, gen, max_attempts=max_attempts, laws=laws)
    return decode_two_type_tree(cycle_shift_to_excursion(bridge))


def _uniform_subsets(gen: np.random.Generator, rows: int, k: int) -> np.ndarray:
    """rows x k matrix of sorted uniform k-subsets of {0..2k}."""
    u = gen.random((rows, 2 * k + 1))
    part = np.argpartition(u, k - 1, axis=1)[:, :k]
    part.sort(axis=1)
    return part


def sample_labels(tree: PlaneTree, rng) -> Mobile:
    """Uniform admissible labeling of a tree, root label 0.

    Around a black vertex with k children the k+1 cyclic increments
    (each >= -1, summing to 0) shift to a composition of k+1 into k+1
    nonnegative parts, i.e. a uniform k-subset of 2k+1 slots; labels
    then accumulate down the white generations.
    """
    gen = as_generator(rng)
    n_white = tree.white_vertices.shape[0]
    increments = np.zeros(n_white, dtype=np.int64)
    previous = np.full(n_white, -1, dtype=np.int64)

    blacks, order, starts = _black_cycles(tree)
    if blacks.shape[0]:
        ks = tree.child_counts[blacks].astype(np.int64)
        white_rank = tree.white_rank
        child_ranks = white_rank[order]
        gp_rank = white_rank[tree.parents[blacks]]
        counts = np.empty(len(starts), dtype=np.int64)
        counts[:-1] = np.diff(starts)
        counts[-1] = order.shape[0] - starts[-1]
        previous[child_ranks] = np.repeat(gp_rank, counts)

        for k in np.unique(ks):
            rows = np.flatnonzero(ks == k)
            bars = _uniform_subsets(gen, rows.shape[0], int(k))
            parts = np.empty((rows.shape[0], int(k)), dtype=np.int64)
            parts[:, 0] = bars[:, 0]
            if k > 1:
                parts[:, 1:] = bars[:, 1:] - bars[:, :-1] - 1
            offsets = np.cumsum(parts - 1, axis=1)
            idx = (starts[rows][:, None] + np.arange(int(k))[None, :]).ravel()
            increments[child_ranks[idx]] = offsets.ravel()

    labels = _kernels.chain_accumulate(previous, increments)
    return Mobile(tree, labels)


def sample_mobile(n: int, rng, max_attempts: int = DEFAULT_MAX_ATTEMPTS) -> Mobile:
    """Conditioned tree plus uniform labels, from one stream."""
    gen = as_generator(rng)
    tree = sample_conditioned_tree(n, gen, max_attempts=max_attempts)
    return sample_labels(tree, gen)


# -- unconditioned trees -------------------------------------------------

class _DrawBuffer:
    """Chunked i.i.d. draws so tree growth does not call the rng per vertex."""

    def __init__(self, gen, fn, chunk=4096):
        self.gen = gen
        self.fn = fn
        self.chunk = chunk
        self.buf = fn(gen, chunk)
        self.pos = 0

    def next(self) -> int:
        if self.pos == self.buf.shape[0]:
            self.buf = self.fn(self.gen, self.chunk)
            self.pos = 0
        v = self.buf[self.pos]
        self.pos += 1
        return int(v)


def sample_unconditioned_tree(rng, laws: OffspringLaws | None = None) -> PlaneTree:
    """One two-type tree grown directly from the offspring laws."""
    gen = as_generator(rng)
    laws = laws or standard_laws()
    white = _DrawBuffer(gen, lambda g, s: g.geometric(2.0 / 3.0, s) - 1)
    black = _DrawBuffer(gen, lambda g, s: laws.sample_mu1(g, s))
    counts: list[int] = []
    stack = [0]  # parity of the next vertex to realize
    while stack:
        parity = stack.pop()
        k = white.next() if parity == 0 else black.next()
        counts.append(k)
        stack.extend([1 - parity] * k)
    return PlaneTree(np.asarray(counts, dtype=np.int32))


def sample_unconditioned_forest(count: int, rng) -> list[Mobile]:
    """i.i.d. unconditioned mobiles (tree plus uniform labels)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    gen = as_generator(rng)
    out = []
    for _ in range(count):
        tree = sample_unconditioned_tree(gen)
        out.append(sample_labels(tree, gen))
    return out


_CHUNK_SCHEDULE = (16, 48, 192, 768)


def sample_progeny_sizes(
    count: int,
    rng,
    max_edges: int,
    laws: OffspringLaws | None = None,
    batch: int = 200_000,
) -> tuple[np.ndarray, np.ndarray]:
    """Edge counts of i.i.d. unconditioned trees, censored at max_edges.

    Simulates the first-passage walk of each tree (started at 1, stopped
    at 0), so nothing is materialized.  Returns (edges, censored); a
    censored entry means the tree has more than max_edges edges and its
    reported count is a lower bound.
    """
    gen = as_generator(rng)
    laws = laws or standard_laws()
    max_steps = max_edges + 1
    sizes = np.empty(count, dtype=np.int64)
    censored = np.zeros(count, dtype=bool)
    filled = 0
    while filled < count:
        b = min(batch, count - filled)
        level = np.ones(b, dtype=np.int64)
        taken = np.zeros(b, dtype=np.int64)
        alive = np.arange(b)
        out = np.empty(b, dtype=np.int64)
        cens = np.zeros(b, dtype=bool)
        chunk_iter = list(_CHUNK_SCHEDULE)
        steps_done = 0
        while alive.size and steps_done < max_steps:
            chunk = chunk_iter.pop(0) if chunk_iter else chunk_iter_last * 2
            chunk_iter_last = chunk
            chunk = min(chunk, max_steps - steps_done)
            draws = laws.sample_jumps(gen, alive.size * chunk).reshape(alive.size, chunk)
            pos = level[alive][:, None] + np.cumsum(draws, axis=1)
            hit = pos == 0
            any_hit = hit.any(axis=1)
            first = np.argmax(hit, axis=1)
            done_idx = alive[any_hit]
            out[done_idx] = taken[done_idx] + first[any_hit] + 1
            still = ~any_hit
            level[alive[still]] = pos[still, -1]
            taken[alive[still]] += chunk
            alive = alive[still]
            steps_done += chunk
        if alive.size:
            out[alive] = taken[alive]
            cens[alive] = True
        sizes[filled:filled + b] = out - 1  # vertices -> edges
        censored[filled:filled + b] = cens
        filled += b
    return sizes, censored
