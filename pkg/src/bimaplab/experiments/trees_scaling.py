"""Scaling behavior of conditioned trees: contour maximum, label law,
white-vertex concentration."""

from __future__ import annotations

import numpy as np
from scipy import stats

from ..rng import RngState
from ..sampler import sample_conditioned_tree, sample_labels, sample_mobile
from ..trees import contour_sequence
from .report import ExperimentReport

#: contour scale of the conditioned tree (height per sqrt(n))
CONTOUR_SCALE = 4.0 * np.sqrt(2.0) / 9.0

#: mean maximum of the normalized excursion
EXCURSION_MAX_MEAN = float(np.sqrt(np.pi / 2.0))

#: product of the two: the target for E[max white contour / sqrt(n)]
MAX_CONTOUR_TARGET = CONTOUR_SCALE * EXCURSION_MAX_MEAN


def dyck_path_max(length_pairs: int, rng) -> int:
    """Maximum of a uniform nonnegative +-1 excursion with 2k steps.

    A uniform arrangement of k up-steps and k+1 down-steps has a unique
    rotation that stays nonnegative until its final step; its first 2k
    steps are a uniform such excursion.
    """
    k = length_pairs
    gen = rng.generator() if isinstance(rng, RngState) else rng
    steps = np.concatenate([np.ones(k, dtype=np.int64),
                            -np.ones(k + 1, dtype=np.int64)])
    gen.shuffle(steps)
    prefix = np.cumsum(steps)
    r = int(np.argmin(prefix)) + 1
    rotated = np.concatenate([steps[r:], steps[:r]])
    return int(np.max(np.cumsum(rotated[: 2 * k])))


def excursion_max_oracle(length_pairs: int, reps: int, rng: RngState) -> float:
    """Independent estimate of the normalized-excursion max mean."""
    total = 0.0
    for rep in range(reps):
        total += dyck_path_max(length_pairs, rng.split(rep))
    return total / reps / np.sqrt(2.0 * length_pairs)


def run_contour_label_scaling(config: dict | None = None, rng: RngState | None = None) -> ExperimentReport:
    """Contour-max constant and label-law self-consistency.

    (a) E[max white contour / sqrt(n)] against the limit constant
        (contour scale times excursion-max mean), with the excursion-max
        mean also re-estimated by an independent discrete excursion
        oracle;
    (b) two-sample KS between rescaled label marginals at fixed times
        for n and 2n (the laws share a limit, so the distance must be
        small);
    (c) full-contour max equals twice the white max, give or take the
        parity unit, on every replicate.
    """
    cfg = {
        "n_small": 50_000,
        "n_large": 100_000,
        "reps": 2000,
        "grid": [0.2, 0.5, 0.8],
        "seed": 2024,
        "max_mean_rtol": 0.03,
        "ks_tolerance": 0.05,
        "oracle_reps": 2000,
        "oracle_pairs": 50_000,
    }
    cfg.update(config or {})
    rng = rng or RngState(cfg["seed"])
    grid = list(cfg["grid"])
    reps = int(cfg["reps"])

    results = {}
    parity_ok = True
    for tag, n in (("small", int(cfg["n_small"])), ("large", int(cfg["n_large"]))):
        max_c0 = np.empty(reps)
        labels_at = np.empty((len(grid), reps))
        for rep in range(reps):
            mob = sample_mobile(n, rng.split(0 if tag == "small" else 1, rep))
            depths = mob.tree.depths
            m_c0 = int(depths.max()) // 2
            max_c0[rep] = m_c0
            if int(depths.max()) not in (2 * m_c0, 2 * m_c0 + 1):
                parity_ok = False
            wc = contour_sequence(mob.tree)[::2]
            lab = mob.labels[mob.tree.white_rank[wc]]
            for gi, t in enumerate(grid):
                labels_at[gi, rep] = lab[int(t * n)]
        results[tag] = {
            "n": n,
            "mean_max_scaled": float(np.mean(max_c0) / np.sqrt(n)),
            "labels_at": labels_at / n**0.25,
        }

    ks_by_t = {}
    for gi, t in enumerate(grid):
        stat = stats.ks_2samp(
            results["small"]["labels_at"][gi], results["large"]["labels_at"][gi]
        ).statistic
        ks_by_t[t] = float(stat)
    ks_max = max(ks_by_t.values())

    oracle = excursion_max_oracle(
        int(cfg["oracle_pairs"]), int(cfg["oracle_reps"]), rng.split(2)
    )

    mean_large = results["large"]["mean_max_scaled"]
    report = ExperimentReport(
        name="contour-label-scaling",
        config=cfg,
        statistics={
            "mean_max_scaled_small": results["small"]["mean_max_scaled"],
            "mean_max_scaled_large": mean_large,
            "target": MAX_CONTOUR_TARGET,
            "contour_scale_constant": CONTOUR_SCALE,
            "excursion_max_mean_theory": EXCURSION_MAX_MEAN,
            "excursion_max_mean_oracle": oracle,
            "ks_by_time": {str(t): v for t, v in ks_by_t.items()},
            "ks_max": ks_max,
        },
    )
    report.verdicts["max_mean_within_tolerance"] = (
        abs(mean_large / MAX_CONTOUR_TARGET - 1.0) <= cfg["max_mean_rtol"]
    )
    report.verdicts["label_law_self_consistent"] = ks_max <= cfg["ks_tolerance"]
    report.verdicts["contour_parity_identity"] = parity_ok
    report.verdicts["oracle_agrees_with_theory"] = (
        abs(oracle / EXCURSION_MAX_MEAN - 1.0) <= 0.05
    )
    return report


def run_vertex_count_check(config: dict | None = None, rng: RngState | None = None) -> ExperimentReport:
    """Concentration of the map's vertex count around two thirds of n.

    The pointed map has (number of white vertices + 1) vertices.  Checks
    the mean fraction, the large-deviation frequency, and the
    total-variation proxy E|1 - (1/X)/E(1/X)| with X the vertex count
    over 2n/3, which must shrink with n.
    """
    cfg = {
        "n_list": [1000, 10_000, 100_000],
        "reps": 200,
        "seed": 2024,
        "mean_tolerance": 0.01,
        "tv_tolerance": 0.02,
        "deviation_delta": 0.05,
    }
    cfg.update(config or {})
    rng = rng or RngState(cfg["seed"])
    reps = int(cfg["reps"])
    stats_by_n = {}
    for ni, n in enumerate(int(x) for x in cfg["n_list"]):
        card = np.empty(reps)
        for rep in range(reps):
            tree = sample_conditioned_tree(n, rng.split(ni, rep))
            card[rep] = np.count_nonzero(tree.depths % 2 == 0) + 1
        x = card / (2.0 * n / 3.0)
        inv = 1.0 / x
        tv_proxy = float(np.mean(np.abs(1.0 - inv / np.mean(inv))))
        stats_by_n[n] = {
            "mean_fraction": float(np.mean(card) / n),
            "mean_abs_error": abs(float(np.mean(card) / n) - 2.0 / 3.0),
            "deviation_freq": float(
                np.mean(np.abs(card - 2.0 * n / 3.0) > cfg["deviation_delta"] * n)
            ),
            "tv_proxy": tv_proxy,
        }
    n_list = sorted(stats_by_n)
    pivot = int(cfg.get("pivot_n", 10_000))
    if pivot not in stats_by_n:
        pivot = n_list[-1]
    tv_values = [stats_by_n[n]["tv_proxy"] for n in n_list]
    report = ExperimentReport(
        name="vertex-count",
        config=cfg,
        statistics={"by_n": {str(n): stats_by_n[n] for n in n_list},
                    "target_fraction": 2.0 / 3.0},
    )
    report.verdicts["mean_fraction_within_tolerance"] = (
        stats_by_n[pivot]["mean_abs_error"] <= cfg["mean_tolerance"]
    )
    report.verdicts["tv_proxy_within_tolerance"] = (
        stats_by_n[pivot]["tv_proxy"] <= cfg["tv_tolerance"]
    )
    report.verdicts["tv_proxy_decreasing"] = all(
        a > b for a, b in zip(tv_values, tv_values[1:])
    )
    return report
