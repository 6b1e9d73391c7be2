"""Offspring distributions of the two-type tree and the associated walk.

White vertices reproduce with a geometric law of mean 1/2, black
vertices with a law built from the ballot numbers C(2k+1, k); the pair
is critical.  The walk behind the tree sampler takes a jump of -1 with
probability 2/3 and a jump of k >= 0 with probability mu1(k)/3; it is
centered with variance 9/2.

Float tables are truncated at total tail mass below 1e-14 and
renormalized for sampling; exact `Fraction` values are available for
the finite-horizon dynamic programs, which provably never need jumps
beyond their horizon.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

TAIL_MASS = 1e-14

#: variance of the walk jump law
SIGMA2 = 4.5
SIGMA = np.sqrt(SIGMA2)

#: mean first ladder height minus one, 3*sigma^2/4
LADDER_MEAN = 27.0 / 8.0


def mu0_exact(k: int) -> Fraction:
    """White offspring probability (2/3)(1/3)^k."""
    return Fraction(2, 3) * Fraction(1, 3) ** k


def mu1_exact(k: int) -> Fraction:
    """Black offspring probability (3/8) C(2k+1, k) (3/16)^k."""
    return Fraction(3, 8) * comb(2 * k + 1, k) * Fraction(3, 16) ** k


def nu_exact(k: int) -> Fraction:
    """Walk jump probability: 2/3 at k = -1, mu1(k)/3 for k >= 0."""
    if k == -1:
        return Fraction(2, 3)
    if k < -1:
        return Fraction(0)
    return mu1_exact(k) / 3


@lru_cache(maxsize=None)
def nu_exact_table(kmax: int) -> tuple[Fraction, ...]:
    """Exact jump probabilities for jumps -1..kmax, as a tuple."""
    return tuple(nu_exact(k) for k in range(-1, kmax + 1))


def _truncation_point(pmf, tail: float) -> int:
    """Smallest K with sum_{k>K} pmf(k) < tail (pmf given as exact Fractions)."""
    total = Fraction(0)
    k = 0
    while True:
        total += pmf(k)
        if 1 - total < tail:
            return k
        k += 1
        if k > 10_000:
            raise RuntimeError("truncation point not found")


@dataclass(frozen=True)
class OffspringLaws:
    """Float sampling tables for mu0, mu1 and the jump law.

    Attributes
    ----------
    truncation : int
        largest jump/offspring value kept in the tables.
    renormalization : float
        total mass dropped by truncation (recorded in experiment
        reports; the kept mass is rescaled to sum to one).
    """

    truncation: int
    mu0: np.ndarray          # pmf over 0..truncation
    mu1: np.ndarray          # pmf over 0..truncation
    nu_values: np.ndarray    # jump values -1..truncation
    nu_probs: np.ndarray     # renormalized pmf aligned with nu_values
    nu_cumulative: np.ndarray
    renormalization: float

    @classmethod
    def build(cls, tail: float = TAIL_MASS) -> "OffspringLaws":
        K = _truncation_point(mu1_exact, tail / 2)
        K = max(K, _truncation_point(mu0_exact, tail / 2))
        mu0 = np.array([float(mu0_exact(k)) for k in range(K + 1)])
        mu1 = np.array([float(mu1_exact(k)) for k in range(K + 1)])
        nu_values = np.arange(-1, K + 1, dtype=np.int64)
        nu_probs = np.empty(K + 2)
        nu_probs[0] = 2.0 / 3.0
        nu_probs[1:] = mu1 / 3.0
        dropped = 1.0 - nu_probs.sum()
        nu_probs = nu_probs / nu_probs.sum()
        return cls(
            truncation=K,
            mu0=mu0,
            mu1=mu1,
            nu_values=nu_values,
            nu_probs=nu_probs,
            nu_cumulative=np.cumsum(nu_probs),
            renormalization=dropped,
        )

    # -- sampling -----------------------------------------------------

    def sample_jumps(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """i.i.d. jumps of the walk (values >= -1)."""
        return _guide_table(self.nu_cumulative, self.nu_values).draw(rng, size)

    def sample_mu1(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """i.i.d. black offspring counts."""
        cum = np.cumsum(self.mu1) / self.mu1.sum()
        return np.searchsorted(cum, rng.random(size))

    # -- moments ------------------------------------------------------

    def moments(self) -> dict:
        k = np.arange(self.truncation + 1, dtype=float)
        m0 = float(self.mu0 @ k)
        v0 = float(self.mu0 @ k**2) - m0**2
        m1 = float(self.mu1 @ k)
        v1 = float(self.mu1 @ k**2) - m1**2
        j = self.nu_values.astype(float)
        mn = float(self.nu_probs @ j)
        vn = float(self.nu_probs @ j**2) - mn**2
        return {
            "mu0_mean": m0, "mu0_var": v0,
            "mu1_mean": m1, "mu1_var": v1,
            "nu_mean": mn, "nu_var": vn,
        }


@lru_cache(maxsize=1)
def standard_laws() -> OffspringLaws:
    """The package-wide table instance (built once)."""
    return OffspringLaws.build()


class _GuideTable:
    """Quantized inverse-CDF lookup: one table read resolves most draws.

    Buckets of [0,1) whose whole range maps to a single outcome are
    answered directly; the few straddling a CDF boundary fall back to a
    binary search on the same uniform, so the law is identical to plain
    inverse-CDF sampling.
    """

    BUCKETS = 4096

    def __init__(self, cumulative: np.ndarray, values: np.ndarray):
        self.cumulative = cumulative
        self.values = values
        M = self.BUCKETS
        edges_lo = np.arange(M) / M
        edges_hi = np.nextafter((np.arange(M) + 1) / M, 0.0)
        lo = np.searchsorted(cumulative, edges_lo, side="right")
        hi = np.searchsorted(cumulative, edges_hi, side="right")
        table = np.where(lo == hi, values[np.minimum(lo, len(values) - 1)], 0)
        self.table = table.astype(values.dtype)
        self.mixed = lo != hi

    def draw(self, rng: np.random.Generator, size) -> np.ndarray:
        u = rng.random(size)
        bucket = (u * self.BUCKETS).astype(np.int64)
        out = self.table[bucket]
        mixed = self.mixed[bucket]
        if np.any(mixed):
            um = u[mixed]
            out[mixed] = self.values[np.searchsorted(self.cumulative, um, side="right")]
        return out


_GUIDE_TABLES: dict[int, _GuideTable] = {}


def _guide_table(cumulative: np.ndarray, values: np.ndarray) -> _GuideTable:
    key = id(cumulative)
    tab = _GUIDE_TABLES.get(key)
    if tab is None:
        tab = _GuideTable(cumulative, values)
        _GUIDE_TABLES[key] = tab
    return tab


# -- geometric law for the quadrangulation cross-check ----------------

@dataclass(frozen=True)
class GeometricWalkLaw:
    """Jump law of the uniform-plane-tree walk: P(j) = (1/2)^(j+2), j >= -1.

    This is the Lukasiewicz jump law of a critical geometric(1/2)
    Galton-Watson tree, whose conditioned version is the uniform plane
    tree.  Kept separate from the bipartite pipeline.
    """

    values: np.ndarray
    probs: np.ndarray
    cumulative: np.ndarray

    @classmethod
    def build(cls, tail: float = TAIL_MASS) -> "GeometricWalkLaw":
        K = 1
        while 2.0 ** -(K + 2) > tail / 2:
            K += 1
        values = np.arange(-1, K + 1, dtype=np.int64)
        probs = 0.5 ** (values + 2.0)
        probs = probs / probs.sum()
        return cls(values=values, probs=probs, cumulative=np.cumsum(probs))

    def sample_jumps(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return _guide_table(self.cumulative, self.values).draw(rng, size)


@lru_cache(maxsize=1)
def geometric_walk_law() -> GeometricWalkLaw:
    return GeometricWalkLaw.build()
