"""Scenario reports: JSON document, grid CSV files and exit codes."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "PASS",
    "FAIL",
    "ERROR",
    "ScenarioResult",
    "ScenarioReport",
    "to_jsonable",
    "report_json",
    "emit_report",
    "exit_code",
    "CSV_COLUMNS",
]

PASS, FAIL, ERROR = "pass", "fail", "error"
CSV_COLUMNS = ("re", "im", "u", "disk_mean", "circle_mean", "ln_f", "defect", "exceptional_flag")


@dataclass
class ScenarioResult:
    name: str
    inputs: dict = field(default_factory=dict)
    measured: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    witness_covers: list = field(default_factory=list)
    verdict: str = PASS
    reason: str = ""
    wall_time: float = 0.0
    grid_rows: list | None = None  # written to CSV, not to the JSON document

    def document(self) -> dict:
        return {
            "name": self.name,
            "inputs": self.inputs,
            "measured": self.measured,
            "bounds": self.bounds,
            "witness_covers": self.witness_covers,
            "verdict": {"status": self.verdict, "reason": self.reason},
        }


@dataclass
class ScenarioReport:
    toolkit_version: str
    seed: int
    config: dict
    scenarios: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    config_error: list | None = None

    @property
    def status(self) -> str:
        if self.config_error:
            return "config_error"
        if any(s.verdict == ERROR and s.reason.startswith("config:") for s in self.scenarios):
            return "config_error"
        if all(s.verdict == PASS for s in self.scenarios):
            return PASS
        return FAIL

    def document(self) -> dict:
        doc = {
            "toolkit_version": self.toolkit_version,
            "seed": self.seed,
            "status": self.status,
            "config": self.config,
            "warnings": self.warnings,
            "notes": self.notes,
            "scenarios": [s.document() for s in self.scenarios],
        }
        if self.config_error:
            doc["config_error"] = [{"path": p, "message": m} for p, m in self.config_error]
        return doc

    def timings(self) -> dict:
        return {s.name: s.wall_time for s in self.scenarios}


def to_jsonable(obj):
    """Recursively convert numpy scalars/arrays and non-finite floats for JSON.

    Non-finite floats become the strings ``"inf"``, ``"-inf"`` and ``"nan"``;
    finite floats keep full precision through ``repr``.
    """
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isfinite(x):
            return x
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if isinstance(obj, complex):
        return [to_jsonable(obj.real), to_jsonable(obj.imag)]
    return obj


def report_json(report: ScenarioReport) -> str:
    return json.dumps(to_jsonable(report.document()), indent=2, sort_keys=True, allow_nan=False) + "\n"


def exit_code(report: ScenarioReport) -> int:
    return {PASS: 0, FAIL: 1, "config_error": 2}[report.status]


def _csv_value(x):
    if isinstance(x, (bool, np.bool_)):
        return int(x)
    x = float(x)
    return repr(x) if math.isfinite(x) else ("nan" if math.isnan(x) else ("inf" if x > 0 else "-inf"))


def emit_report(report: ScenarioReport, out_dir, report_name="report.json", csv_name="grid.csv") -> int:
    """Write the report, timing sidecar and grid CSVs; return the process exit code.

    Wall times go to ``timings.json`` so that ``report.json`` stays
    byte-identical across runs with the same configuration and seed.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / report_name).write_text(report_json(report))
    (out / "timings.json").write_text(json.dumps(report.timings(), indent=2, sort_keys=True) + "\n")
    grids = [s for s in report.scenarios if s.grid_rows is not None]
    for s in grids:
        name = csv_name if len(grids) == 1 else f"{Path(csv_name).stem}_{s.name}.csv"
        with open(out / name, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for row in s.grid_rows:
                writer.writerow([_csv_value(v) for v in row])
    return exit_code(report)
