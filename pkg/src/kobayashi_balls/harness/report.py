"""Writing suite reports: ``report.json``, ``violations.csv``, ``timings.json`` and ``grid.csv``.

``report.json`` is deterministic for a fixed configuration; wall-clock
timings go to the separate ``timings.json``.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

from .suites import SliceGrid, SuiteReport, _plain


def _dump(obj, path: Path):
    path.write_text(json.dumps(_plain(obj), sort_keys=True, indent=2) + "\n")


def write_report(reports: list[SuiteReport], out_dir, config: dict | None = None) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    body = {
        "passed": all(r.passed for r in reports),
        "violation_count": sum(r.violation_count for r in reports),
        "suites": [r.to_dict() for r in reports],
    }
    if config is not None:
        body["config"] = config
    _dump(body, out / "report.json")
    _dump({r.suite: r.timings for r in reports}, out / "timings.json")
    with open(out / "violations.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["suite", "experiment", "inequality", "witness", "values"])
        for r in reports:
            for v in r.violations:
                w.writerow([r.suite, v.experiment, v.inequality, json.dumps(v.witness),
                            json.dumps(_plain(v.values), sort_keys=True)])
    return out / "report.json"


def write_grid(grid: SliceGrid, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    regions = grid.regions
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "y", "region", "in_domain", "inner", "ball", "outer", "lower", "upper"])
        for i in range(grid.x.size):
            w.writerow([repr(float(grid.x[i])), repr(float(grid.y[i])), regions[i],
                        int(grid.in_domain[i]), int(grid.inner[i]), int(grid.ball[i]),
                        int(grid.outer[i]), repr(float(grid.lower[i])), repr(float(grid.upper[i]))])
    return path
