"""Experiments on the jump-law walk: exact identities and asymptotics."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from scipy import stats

from ..laws import LADDER_MEAN, SIGMA2, nu_exact, standard_laws
from ..rng import RngState
from ..sampler import sample_progeny_sizes
from .convolution import (
    FloatWalkDistribution,
    exact_first_passage_table,
    exact_return_table,
    fft_jump_sum_at,
    survival_profile,
)
from .report import ExperimentReport

SIGMA = float(np.sqrt(SIGMA2))
GAUSS_PEAK = 1.0 / (SIGMA * np.sqrt(2.0 * np.pi))  # ~0.18806


def run_kemperman_check(config: dict | None = None, rng: RngState | None = None) -> ExperimentReport:
    """First-passage law equals (j/m) times the return law, exactly.

    Both sides are computed independently in rational arithmetic: the
    first-passage side by an absorbing dynamic program, the return side
    by convolution.  The identity must hold with zero error for all
    1 <= j <= m <= m_max, including the hand values at (1,1) and (1,3).
    """
    cfg = {"m_max": 40}
    cfg.update(config or {})
    m_max = cfg["m_max"]
    if m_max > 60:
        raise ValueError("exact mode supported up to m_max = 60")
    ret = exact_return_table(m_max)
    fp = exact_first_passage_table(m_max)
    mismatches = 0
    checked = 0
    for m in range(1, m_max + 1):
        for j in range(1, m + 1):
            checked += 1
            if fp[m][j] != Fraction(j, m) * ret[m][j]:
                mismatches += 1
    hand_1_1 = fp[1][1] == Fraction(2, 3)
    hand_1_3 = fp[3][1] == Fraction(1, 24)
    report = ExperimentReport(
        name="kemperman",
        config=cfg,
        statistics={
            "pairs_checked": checked,
            "mismatches": mismatches,
            "p_tau_1_from_1": str(fp[1][1]),
            "p_tau_3_from_1": str(fp[3][1]),
            "p_progeny_edges_1": str(fp[2][1]),
        },
    )
    report.verdicts["identity_exact"] = mismatches == 0
    report.verdicts["hand_value_tau1"] = hand_1_1
    report.verdicts["hand_value_tau3"] = hand_1_3
    return report


def _ladder_theory_pmf(kmax: int) -> np.ndarray:
    """P(first ladder height - 1 = k) = (3/2) * tail of the jump law."""
    tail = Fraction(1) - nu_exact(-1) - nu_exact(0)
    out = np.empty(kmax + 1)
    out[0] = 0.0
    for k in range(1, kmax + 1):
        out[k] = float(Fraction(3, 2) * tail)
        tail -= nu_exact(k)
    return out


def run_ladder_height_check(config: dict | None = None, rng: RngState | None = None) -> ExperimentReport:
    """Empirical ladder-height law against (3/2) times the jump tail.

    Ladder increments are i.i.d., so they are pooled from independent
    long walks; each walk contributes all its record increments.  The
    epoch straddling a walk's horizon is the only censored one, a
    fraction O(1/sqrt(walk_length)) of the sample with sub-tolerance
    effect on the pooled law.
    """
    cfg = {
        "epochs": 1_000_000,
        "walk_length": 100_000,
        "walk_batch": 32,
        "seed": 2024,
        "mean_rtol": 0.02,
        "chi2_significance": 1e-3,
    }
    cfg.update(config or {})
    rng = rng or RngState(cfg["seed"])
    laws = standard_laws()
    L = int(cfg["walk_length"])
    B = int(cfg["walk_batch"])
    need = int(cfg["epochs"])
    counts = np.zeros(512, dtype=np.int64)
    total = 0
    batch_idx = 0
    while total < need:
        gen = rng.split(batch_idx).generator()
        steps = laws.sample_jumps(gen, B * L).reshape(B, L)
        S = 1 + np.cumsum(steps, axis=1)
        # running max including the start value 1
        prev_max = np.maximum(np.maximum.accumulate(S, axis=1), 1)[:, :-1]
        rec = np.empty((B, L), dtype=bool)
        rec[:, 0] = S[:, 0] > 1
        rec[:, 1:] = S[:, 1:] > prev_max
        for b in range(B):
            vals = S[b][rec[b]]
            if vals.shape[0] == 0:
                continue
            inc = np.diff(vals, prepend=1)
            counts += np.bincount(inc, minlength=512)[:512]
            total += inc.shape[0]
        batch_idx += 1
    support = np.flatnonzero(counts)
    mean = float((counts * np.arange(512)).sum() / total)
    theory = _ladder_theory_pmf(511)
    # chi-square with a pooled tail bin so expected counts stay >= 5
    kcut = int(support.max())
    while kcut > 2 and theory[kcut:].sum() * total < 5:
        kcut -= 1
    obs = np.concatenate([counts[1:kcut], [counts[kcut:].sum()]]).astype(float)
    exp = np.concatenate([theory[1:kcut], [theory[kcut:].sum()]]) * total
    chi2, pvalue = stats.chisquare(obs, exp)
    report = ExperimentReport(
        name="ladder-heights",
        config=cfg,
        statistics={
            "epochs_collected": int(total),
            "mean": mean,
            "mean_target": LADDER_MEAN,
            "mean_relative_error": abs(mean / LADDER_MEAN - 1.0),
            "chi2": float(chi2),
            "chi2_pvalue": float(pvalue),
            "chi2_bins": int(obs.shape[0]),
        },
    )
    report.verdicts["mean_within_tolerance"] = (
        abs(mean / LADDER_MEAN - 1.0) <= cfg["mean_rtol"]
    )
    report.verdicts["pmf_chi2_passes"] = pvalue > cfg["chi2_significance"]
    return report


def _local_limit_sup_error(dist: FloatWalkDistribution) -> float:
    m = dist.m
    j_max = int(4 * SIGMA * np.sqrt(m))
    j = np.arange(-j_max, j_max + 1)
    p = np.array([dist.prob_sum(-v) for v in j])  # P_j(S_m = 0) with sign
    gauss = GAUSS_PEAK * np.exp(-(j.astype(float) ** 2) / (2 * SIGMA2 * m))
    weight = np.maximum(1.0, j.astype(float) ** 2 / m)
    return float(np.max(weight * np.abs(np.sqrt(m) * p - gauss)))


def run_local_limit_check(config: dict | None = None, rng: RngState | None = None) -> ExperimentReport:
    """Weighted sup error of the local normal approximation to the walk."""
    cfg = {"m_list": [500, 1000, 2000], "sup_tolerance": 0.02}
    cfg.update(config or {})
    m_list = sorted(int(m) for m in cfg["m_list"])
    if m_list[-1] > 5000:
        raise ValueError("direct convolution supported up to m = 5000")
    dist = FloatWalkDistribution(m_list[-1])
    errors = {}
    done = 0
    for m in m_list:
        dist.step(m - done)
        done = m
        errors[m] = _local_limit_sup_error(dist)
    sup_last = errors[m_list[-1]]
    decreasing = all(
        errors[a] > errors[b] for a, b in zip(m_list, m_list[1:])
    )
    report = ExperimentReport(
        name="local-limit",
        config=cfg,
        statistics={
            "sup_errors": {str(m): errors[m] for m in m_list},
            "gauss_peak": GAUSS_PEAK,
        },
    )
    report.verdicts["sup_error_at_largest"] = sup_last <= cfg["sup_tolerance"]
    report.verdicts["sup_error_decreasing"] = decreasing
    return report


def run_population_check(config: dict | None = None, rng: RngState | None = None) -> ExperimentReport:
    """Polynomial progeny asymptotics of the unconditioned tree.

    Estimates n^{3/2} P(N = n) and n^{1/2} P(N >= n) from simulated
    forests; the point mass at n is read from a narrow relative window
    around n (the raw frequency of the single value is unresolvable at
    feasible forest sizes; the window's curvature bias is far below the
    tolerance).  An exact convolution cross-check accompanies the
    Monte Carlo estimate.
    """
    cfg = {
        "n": 10_000,
        "trees": 10_000_000,
        "window": 0.05,
        "seed": 2024,
        "point_rtol": 0.05,
        "tail_rtol": 0.05,
    }
    cfg.update(config or {})
    rng = rng or RngState(cfg["seed"])
    n = int(cfg["n"])
    w = float(cfg["window"])
    lo = int(np.floor(n * (1 - w)))
    hi = int(np.ceil(n * (1 + w)))
    sizes, censored = sample_progeny_sizes(
        int(cfg["trees"]), rng.split(0), max_edges=hi + 1
    )
    tail = float(np.mean((sizes >= n) | censored))
    in_window = float(np.mean((sizes >= lo) & (sizes <= hi) & ~censored))
    point = in_window / (hi - lo + 1)
    point_scaled = n**1.5 * point
    tail_scaled = np.sqrt(n) * tail
    exact_point = fft_jump_sum_at(n + 1, -1) / (n + 1)
    report = ExperimentReport(
        name="population-tail",
        config=cfg,
        statistics={
            "point_scaled": point_scaled,
            "point_target": GAUSS_PEAK,
            "tail_scaled": tail_scaled,
            "tail_target": 2 * GAUSS_PEAK,
            "exact_point_scaled": n**1.5 * exact_point,
            "window_counts": int(in_window * int(cfg["trees"])),
        },
    )
    report.verdicts["point_mass_matches"] = (
        abs(point_scaled / GAUSS_PEAK - 1.0) <= cfg["point_rtol"]
    )
    report.verdicts["tail_matches"] = (
        abs(tail_scaled / (2 * GAUSS_PEAK) - 1.0) <= cfg["tail_rtol"]
    )
    return report


def _f_limit(x: np.ndarray, delta: float) -> np.ndarray:
    return x / (delta * SIGMA * np.sqrt(2 * np.pi)) * np.exp(-(x**2) / (2 * SIGMA2))


def run_passage_density_check(config: dict | None = None, rng: RngState | None = None) -> ExperimentReport:
    """Splitting density of the conditioned walk against its limit shape.

    With m = floor(delta n) + 1, the probability that the walk at level
    j first hits zero in exactly m more steps, scaled by n, converges
    to an explicit density in j/sqrt(m); the sup distance is reported.
    The exact splitting identity (survival profile at the split time
    integrated against the passage law equals the full passage
    probability) is checked in float to 1e-12.
    """
    cfg = {"n": 2000, "delta": 0.5, "sup_tolerance": 0.05, "identity_tolerance": 1e-12}
    cfg.update(config or {})
    n = int(cfg["n"])
    delta = float(cfg["delta"])
    if not (0.0 < delta < 1.0):
        raise ValueError("delta must be in (0, 1)")
    if n > 4000:
        raise ValueError("direct convolution supported up to n = 4000")
    m_n = int(np.floor(delta * n)) + 1
    ell = int(np.ceil((1 - delta) * n))
    assert ell + m_n == n + 1

    dist = FloatWalkDistribution(n + 1)
    dist.step(m_n)
    ret = dist.return_probabilities(m_n)          # P_j(S_{m_n} = 0)
    j = np.arange(m_n + 1, dtype=float)
    phi = j / m_n * ret
    sup_error = float(np.max(np.abs(n * phi - _f_limit(j / np.sqrt(m_n), delta))))

    # exact splitting identity
    alive = survival_profile(ell)
    kmax = min(alive.shape[0] - 1, m_n)
    lhs = float(np.dot(alive[: kmax + 1], phi[: kmax + 1]))
    dist.step(n + 1 - m_n)
    rhs = dist.prob_sum(-1) / (n + 1)
    identity_gap = abs(lhs - rhs)

    report = ExperimentReport(
        name="passage-density",
        config=cfg,
        statistics={
            "m_n": m_n,
            "sup_error": sup_error,
            "identity_lhs": lhs,
            "identity_rhs": rhs,
            "identity_gap": identity_gap,
        },
    )
    report.verdicts["sup_error_within_tolerance"] = sup_error <= cfg["sup_tolerance"]
    report.verdicts["splitting_identity_exact"] = identity_gap <= cfg["identity_tolerance"]
    return report


def run_moderate_deviation_check(config: dict | None = None, rng: RngState | None = None) -> ExperimentReport:
    """Deviation frequency between the reflected walk and its record count.

    Checks that |S_l - I_l + 1 - (27/8) R_l| exceeds m^{1/4+eps} with a
    frequency below a ceiling that shrinks with m, at l = m/4, m/2, m.
    The deviation itself has scale 2.1 m^{1/4} (the ladder-height law
    has variance 81/4 - (27/8)^2), so for small eps the exceedance
    decays like the normal tail beyond m^{eps}/2.1: the default ceilings
    are calibrated to that rate, and the normalized deviation scale is
    reported alongside.
    """
    cfg = {
        "m_list": [1000, 10_000, 100_000],
        "reps_list": [4000, 2000, 500],
        "epsilon": 0.1,
        "ceilings": [0.30, 0.25, 0.20],
        "seed": 2024,
    }
    cfg.update(config or {})
    eps = float(cfg["epsilon"])
    if not (0 < eps < 0.25):
        raise ValueError("epsilon must be in (0, 1/4)")
    rng = rng or RngState(cfg["seed"])
    laws = standard_laws()
    freqs = {}
    scale = {}
    for mi, (m, reps) in enumerate(zip(cfg["m_list"], cfg["reps_list"])):
        m = int(m)
        threshold = m ** (0.25 + eps)
        l_values = [m // 4, m // 2, m]
        exceed = np.zeros(len(l_values), dtype=np.int64)
        devs = np.empty(int(reps))
        for rep in range(int(reps)):
            gen = rng.split(mi, rep).generator()
            S = np.empty(m + 1, dtype=np.int64)
            S[0] = 1
            S[1:] = 1 + np.cumsum(laws.sample_jumps(gen, m))
            run_min = np.minimum.accumulate(S)
            # future-min counts at every prefix, in one backward sweep per l
            for li, l in enumerate(l_values):
                head = S[: l + 1]
                future_min = np.minimum.accumulate(head[:0:-1])[::-1]
                r = int(np.count_nonzero(head[:-1] < future_min))
                dev = abs(int(S[l]) - int(run_min[l]) + 1 - LADDER_MEAN * r)
                if dev > threshold:
                    exceed[li] += 1
                if l == m:
                    devs[rep] = dev
        freqs[m] = (exceed / int(reps)).tolist()
        scale[m] = float(np.median(devs) / m**0.25)
    worst = {m: max(v) for m, v in freqs.items()}
    m_sorted = sorted(worst)
    report = ExperimentReport(
        name="moderate-deviations",
        config=cfg,
        statistics={
            "exceedance": {str(m): freqs[m] for m in freqs},
            "worst": {str(m): worst[m] for m in worst},
            "median_deviation_over_m14": {str(m): scale[m] for m in scale},
        },
    )
    report.verdicts["frequency_below_ceilings"] = all(
        worst[m] <= c for m, c in zip(m_sorted, cfg["ceilings"])
    )
    report.verdicts["frequency_nonincreasing"] = all(
        worst[a] >= worst[b] for a, b in zip(m_sorted, m_sorted[1:])
    )
    report.verdicts["deviation_scale_bounded"] = all(
        v <= 4.0 for v in scale.values()
    )
    return report
