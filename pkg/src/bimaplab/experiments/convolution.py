"""Walk-distribution computations: exact rational and windowed float.

Finite-horizon return and first-passage probabilities only involve
jumps bounded by the horizon (a larger jump cannot be undone by unit
down-steps), so restricting the exact jump law to that range is
lossless and the rational dynamic programs are exact, not approximate.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..laws import nu_exact_table, standard_laws

SIGMA = np.sqrt(4.5)


def exact_return_table(m_max: int) -> list[list[Fraction]]:
    """ret[m][j] = P(sum of m jumps = -j) = P_j(S_m = 0), exact.

    Valid for 0 <= j <= m <= m_max.  Entry ret[m] is indexed by j.
    """
    nu = nu_exact_table(m_max)
    zero = Fraction(0)
    # dist over current sum, offset so index i holds sum = i - m_max
    lo, hi = -m_max, m_max
    size = hi - lo + 1
    dist = [zero] * size
    dist[-lo] = Fraction(1)
    out: list[list[Fraction]] = [[Fraction(1)]]
    for m in range(1, m_max + 1):
        new = [zero] * size
        for i, p in enumerate(dist):
            if p == 0:
                continue
            s = i + lo
            # prune values that cannot come back to <= 0 by step m_max
            for x in range(-1, m_max + 1):
                t = s + x
                if t < lo or t > m_max - m:
                    continue
                new[t - lo] += p * nu[x + 1]
        dist = new
        out.append([dist[-j - lo] for j in range(0, m + 1)])
    return out


def exact_first_passage_table(m_max: int) -> list[list[Fraction]]:
    """fp[m][j] = P_j(first hit of 0 at time m), exact, 0 <= j <= m_max.

    Backwards recursion on the remaining-time profile; level 0 is
    absorbing.
    """
    nu = nu_exact_table(m_max)
    zero = Fraction(0)
    size = m_max + 1
    g = [zero] * size
    g[0] = Fraction(1)
    out = [list(g)]
    for _ in range(m_max):
        new = [zero] * size
        for j in range(1, size):
            acc = zero
            for x in range(-1, m_max - j + 1):
                t = j + x
                if 0 <= t <= m_max:
                    p = g[t]
                    if p != 0:
                        acc += nu[x + 1] * p
            new[j] = acc
        g = new
        out.append(list(g))
    return out


def exact_progeny_probability(n: int) -> Fraction:
    """P(unconditioned tree has exactly n edges), exact rational."""
    fp = exact_first_passage_table(n + 1)
    return fp[n + 1][1]


class FloatWalkDistribution:
    """Windowed float distribution of the jump-sum walk, advanced stepwise.

    Probabilities below the window are dropped; the window is sized so
    the truncated mass stays below ~1e-16 per run at desk scales.
    """

    def __init__(self, m_max: int, window_sigmas: float = 12.0):
        laws = standard_laws()
        self.kernel = np.concatenate([[2.0 / 3.0], laws.mu1 / 3.0])
        self.kernel_lo = -1
        half = int(window_sigmas * SIGMA * np.sqrt(m_max)) + laws.truncation + 2
        self.lo = -min(half, m_max + 1)
        self.hi = half
        self.dist = np.zeros(self.hi - self.lo + 1)
        self.dist[-self.lo] = 1.0
        self.m = 0

    def step(self, count: int = 1) -> None:
        for _ in range(count):
            full = np.convolve(self.dist, self.kernel)
            # index i of `full` holds sum = lo + kernel_lo + i
            shift = self.kernel_lo
            lo_new = self.lo + shift
            # clip back to the fixed window
            start = self.lo - lo_new
            self.dist = full[start:start + (self.hi - self.lo + 1)]
            self.m += 1

    def prob_sum(self, value: int) -> float:
        """P(S_m - S_0 = value)."""
        idx = value - self.lo
        if idx < 0 or idx >= self.dist.shape[0]:
            return 0.0
        return float(self.dist[idx])

    def return_probabilities(self, j_max: int) -> np.ndarray:
        """P_j(S_m = 0) for j = 0..j_max."""
        out = np.zeros(j_max + 1)
        for j in range(j_max + 1):
            out[j] = self.prob_sum(-j)
        return out


def survival_profile(steps: int, window_sigmas: float = 12.0) -> np.ndarray:
    """a[j] = P_1(S_steps = j, no hit of 0 up to steps), float.

    Levels above the window carry negligible mass and are dropped.
    """
    laws = standard_laws()
    kernel = np.concatenate([[2.0 / 3.0], laws.mu1 / 3.0])
    hi = int(window_sigmas * SIGMA * np.sqrt(max(steps, 1))) + laws.truncation + 2
    a = np.zeros(hi + 1)
    a[1] = 1.0
    for _ in range(steps):
        full = np.convolve(a, kernel)[: hi + 2]
        # index i holds level i - 1; realign to level index
        a = full[1: hi + 2]
        if a.shape[0] < hi + 1:
            a = np.pad(a, (0, hi + 1 - a.shape[0]))
        a[0] = 0.0  # absorbed paths leave the survival mass
    return a


def fft_jump_sum_at(m: int, value: int, window_sigmas: float = 14.0) -> float:
    """P(sum of m jumps = value) by FFT binary powering (large m)."""
    laws = standard_laws()
    kernel = np.concatenate([[2.0 / 3.0], laws.mu1 / 3.0])
    half = int(window_sigmas * SIGMA * np.sqrt(m)) + laws.truncation + 2
    size = 1
    while size < 2 * (2 * half + 1):
        size *= 2
    # represent distributions over offsets -half..half via circular FFT;
    # the window is wide enough that wraparound mass is negligible
    base = np.zeros(size)
    base[0: kernel.shape[0] - 1] = kernel[1:]
    base[-1] = kernel[0]  # jump -1 wraps to the top slot
    acc = np.zeros(size)
    acc[0] = 1.0
    fb = np.fft.rfft(base)
    fa = np.fft.rfft(acc)
    e = m
    while e:
        if e & 1:
            fa = fa * fb
        fb = fb * fb
        e >>= 1
    dist = np.fft.irfft(fa, size)
    idx = value % size
    return float(dist[idx])
