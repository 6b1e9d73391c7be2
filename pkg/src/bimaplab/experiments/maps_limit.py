"""Map-level distance laws: the one-point cross-check and re-rooting."""

from __future__ import annotations

import numpy as np
from scipy import stats

from ..bijection import map_to_mobile_with_corners, mobile_to_map
from ..maps import CombinatorialMap
from ..metrics import bfs
from ..quadrangulation import sample_labeled_plane_tree
from ..rng import RngState
from ..sampler import sample_mobile
from .report import ExperimentReport


def _corner_uniform_label(mobile, gen) -> tuple[int, int]:
    """(label, min label) at a uniform white-contour corner.

    A white vertex owns one corner per incident tree edge below it plus
    one above (the root loses the extra one), so corners weight white
    vertices by child count + 1, root by child count.
    """
    tree = mobile.tree
    whites = tree.white_vertices
    visits = tree.child_counts[whites].astype(np.int64) + 1
    visits[0] -= 1
    cum = np.cumsum(visits)
    u = int(gen.integers(0, cum[-1]))
    idx = int(np.searchsorted(cum, u, side="right"))
    return int(mobile.labels[idx]), int(mobile.labels.min())


def _quad_corner_uniform_label(tree, labels, gen) -> tuple[int, int]:
    """Same drawing over the full contour of the one-type tree."""
    visits = tree.child_counts.astype(np.int64) + 1
    visits[0] -= 1
    cum = np.cumsum(visits)
    u = int(gen.integers(0, cum[-1]))
    idx = int(np.searchsorted(cum, u, side="right"))
    return int(labels[idx]), int(labels.min())


def run_one_point_law_check(config: dict | None = None, rng: RngState | None = None) -> ExperimentReport:
    """One-point distance law: bipartite maps against quadrangulations.

    Both rescaled distance-to-the-distinguished-vertex laws converge to
    the same limit; the two samplers share no distributional
    ingredients, so a small two-sample KS distance cross-validates the
    scaling constants (2n)^{-1/4} and (9/(4 n_q))^{1/4}.  Distances use
    the exact label identity, which the acceptance suite certifies
    against BFS separately; set use_bfs to recompute them by BFS.
    """
    cfg = {
        "n_bipartite": 50_000,
        "faces_quad": 50_000,
        "reps": 5000,
        "seed": 2024,
        "ks_tolerance": 0.05,
        "use_bfs": False,
    }
    cfg.update(config or {})
    rng = rng or RngState(cfg["seed"])
    reps = int(cfg["reps"])
    n = int(cfg["n_bipartite"])
    faces = int(cfg["faces_quad"])
    n_quad = 2 * faces

    bip = np.empty(reps)
    scale_b = (2.0 * n) ** -0.25
    for rep in range(reps):
        state = rng.split(0, rep)
        gen = state.generator()
        mob = sample_mobile(n, gen)
        if cfg["use_bfs"]:
            m = mobile_to_map(mob, 0)
            prof = bfs(m, m.origin)
            u = int(gen.integers(0, n))
            d = prof.distance_of(m.vertex_of_corner(u))
        else:
            lab, mn = _corner_uniform_label(mob, gen)
            d = lab - mn + 1
        bip[rep] = d * scale_b

    quad = np.empty(reps)
    scale_q = (9.0 / (4.0 * n_quad)) ** 0.25
    for rep in range(reps):
        gen = rng.split(1, rep).generator()
        tree, labels = sample_labeled_plane_tree(faces, gen)
        lab, mn = _quad_corner_uniform_label(tree, labels, gen)
        quad[rep] = (lab - mn + 1) * scale_q

    ks = float(stats.ks_2samp(bip, quad).statistic)
    report = ExperimentReport(
        name="one-point-law",
        config=cfg,
        statistics={
            "ks_distance": ks,
            "bipartite_mean": float(bip.mean()),
            "quad_mean": float(quad.mean()),
            "bipartite_scale": scale_b,
            "quad_scale": scale_q,
        },
    )
    report.verdicts["one_point_laws_close"] = ks <= cfg["ks_tolerance"]
    return report


def run_rerooting_check(config: dict | None = None, rng: RngState | None = None) -> ExperimentReport:
    """Root-edge invariance through the bijection.

    Re-rooting a sampled map at a uniform oriented edge and rebuilding
    its tree must move two-point distances by at most 2 (the old and
    new reference vertices are equal or adjacent), and the law of the
    one-point distance must be unchanged.
    """
    cfg = {
        "n": 20_000,
        "reps": 10_000,
        "seed": 2024,
        "bound": 2,
        "ks_tolerance": 0.03,
    }
    cfg.update(config or {})
    rng = rng or RngState(cfg["seed"])
    n = int(cfg["n"])
    reps = int(cfg["reps"])

    violations = 0
    d_root = np.empty(reps)      # d(v_0, v_{i_n}) on the original map
    d_reroot = np.empty(reps)    # d(v'_0, v'_{k_n}) on the re-rooted map
    for rep in range(reps):
        state = rng.split(rep)
        gen = state.generator()
        mob = sample_mobile(n, gen)
        eps = int(gen.integers(0, 2))
        m = mobile_to_map(mob, eps)
        i_n = int(gen.integers(0, n))
        j_n = int(gen.integers(0, n))
        orient = int(gen.integers(0, 2))

        v_i = m.vertex_of_corner(i_n)
        v_j = m.vertex_of_corner(j_n)
        v_0 = m.vertex_of_corner(0)
        prof_i = bfs(m, v_i)
        d_ij = prof_i.distance_of(v_j)
        d_root[rep] = prof_i.distance_of(v_0)

        m2 = CombinatorialMap(m.sigma, root=2 * i_n + orient, origin=m.origin)
        mob2, eps2, corner_edges = map_to_mobile_with_corners(m2)
        k_n = int(np.flatnonzero(corner_edges == j_n)[0])
        # root vertex of the rebuilt tree: the root half-edge's end that
        # lies farther from the distinguished vertex
        h_root_white = m2.root if eps2 == 0 else m2.root ^ 1
        v0_new = int(m2.vertex_of[h_root_white])
        # the corner k_n sits at the source end of its arc, i.e. the end
        # farther from the distinguished vertex
        prof_origin = bfs(m, m.origin)
        e = int(corner_edges[k_n])
        va, vb = int(m.vertex_of[2 * e]), int(m.vertex_of[2 * e + 1])
        v_kn = va if prof_origin.distance_of(va) > prof_origin.distance_of(vb) else vb
        prof_new = bfs(m2, v0_new)
        d_kn = prof_new.distance_of(v_kn)
        d_reroot[rep] = d_kn
        if abs(d_ij - d_kn) > cfg["bound"]:
            violations += 1

    ks = float(stats.ks_2samp(d_root, d_reroot).statistic)
    report = ExperimentReport(
        name="rerooting",
        config=cfg,
        statistics={
            "bound_violations": violations,
            "violation_rate": violations / reps,
            "ks_distance": ks,
            "mean_original": float(d_root.mean()),
            "mean_rerooted": float(d_reroot.mean()),
        },
    )
    report.verdicts["distance_bound_holds"] = violations == 0
    report.verdicts["one_point_law_invariant"] = ks <= cfg["ks_tolerance"]
    return report
