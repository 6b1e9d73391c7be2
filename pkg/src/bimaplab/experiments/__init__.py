"""Statistical test bench: every quantitative claim gets a seeded runner.

Each runner takes a config dict (thresholds included, so runs are
auditable) and an RngState, and returns an ExperimentReport with
computed verdicts.
"""

from .report import ExperimentReport
from .walks import (
    run_kemperman_check,
    run_ladder_height_check,
    run_local_limit_check,
    run_moderate_deviation_check,
    run_passage_density_check,
    run_population_check,
)
from .trees_scaling import (
    run_contour_label_scaling,
    run_vertex_count_check,
)
from .maps_limit import (
    run_one_point_law_check,
    run_rerooting_check,
)

EXPERIMENTS = {
    "kemperman": run_kemperman_check,
    "ladder-heights": run_ladder_height_check,
    "local-limit": run_local_limit_check,
    "population-tail": run_population_check,
    "passage-density": run_passage_density_check,
    "moderate-deviations": run_moderate_deviation_check,
    "contour-label-scaling": run_contour_label_scaling,
    "one-point-law": run_one_point_law_check,
    "rerooting": run_rerooting_check,
    "vertex-count": run_vertex_count_check,
}

__all__ = ["ExperimentReport", "EXPERIMENTS"] + [
    f.__name__ for f in EXPERIMENTS.values()
]
