"""Experiment result container with reproducible config echo."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class ExperimentReport:
    """Named, seeded statistical summary with per-check verdicts.

    ``config`` echoes everything needed to replay the run bit-exactly
    (seed, sizes, replicate counts, thresholds).  ``verdicts`` maps
    check names to booleans computed against the thresholds in config;
    they are never hand-set.
    """

    name: str
    config: dict
    statistics: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    replicate_rows: list = field(default_factory=list)  # (replicate, statistic, value)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def summary_dict(self) -> dict:
        return {
            "name": self.name,
            "config": self.config,
            "statistics": self.statistics,
            "verdicts": self.verdicts,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.summary_dict(), indent=2, sort_keys=True, default=_coerce)

    def file_stem(self) -> str:
        n = self.config.get("n", self.config.get("m", ""))
        seed = self.config.get("seed", "")
        return f"{self.name}_n{n}_seed{seed}"

    def write(self, outdir: str | Path) -> list[Path]:
        """JSON summary plus per-replicate CSV; returns written paths."""
        outdir = Path(outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        stem = self.file_stem()
        paths = []
        jpath = outdir / f"{stem}.json"
        jpath.write_text(self.to_json() + "\n")
        paths.append(jpath)
        if self.replicate_rows:
            cpath = outdir / f"{stem}.csv"
            with cpath.open("w") as fp:
                fp.write("replicate,statistic,value\n")
                for rep, stat, value in self.replicate_rows:
                    fp.write(f"{rep},{stat},{value}\n")
            paths.append(cpath)
        return paths

    def lines(self) -> list[str]:
        out = [f"experiment {self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for key, ok in sorted(self.verdicts.items()):
            out.append(f"  [{'pass' if ok else 'FAIL'}] {key}")
        return out


def _coerce(obj):
    try:
        import numpy as np
        if isinstance(obj, (np.integer,)):
            return int(obj)
        if isinstance(obj, (np.floating,)):
            return float(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
    except ImportError:
        pass
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f"not JSON serializable: {type(obj)!r}")
