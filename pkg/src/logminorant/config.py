"""Run configuration: parsing, validation, defaults and measure generators."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .measure import AtomicMassDistribution
from .subharmonic import PowerRadius, RadiusFunction, TabulatedRadius

__all__ = [
    "SCENARIOS",
    "THEOREM_SCENARIOS",
    "Grid",
    "Output",
    "RunConfig",
    "parse_config",
    "load_config",
    "build_measure",
    "build_radius",
    "trial_rng",
]

SCENARIOS = ("means", "theorem1", "theorem2", "minorant", "grid", "degeneration", "besicovitch")
THEOREM_SCENARIOS = ("means", "theorem1", "theorem2", "minorant", "grid")
GENERATOR_KINDS = ("radial_power", "random_disk")
MASS_LAWS = ("unit", "uniform", "integer")
MAX_GRID_POINTS = 10**6
MAX_TRIALS = 10**3
GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


@dataclass(frozen=True)
class Grid:
    xmin: float = -2.0
    xmax: float = 2.0
    ymin: float = -2.0
    ymax: float = 2.0
    nx: int = 41
    ny: int = 41

    def points(self) -> np.ndarray:
        xs = np.linspace(self.xmin, self.xmax, self.nx)
        ys = np.linspace(self.ymin, self.ymax, self.ny)
        X, Y = np.meshgrid(xs, ys)
        return (X + 1j * Y).ravel()


@dataclass(frozen=True)
class Output:
    dir: str = "out"
    report: str = "report.json"
    csv: str = "grid.csv"


@dataclass(frozen=True)
class RunConfig:
    measure: tuple  # (("atoms", ((re, im, mass), ...)),) or (("generator", (...items)),)
    c0: float = 0.0
    radius_fn: tuple = (("kappa", 1.0), ("q", 0.0))
    d: float = 1.0
    l: float = 1.0
    order_window: tuple | None = None
    grid: Grid = field(default_factory=Grid)
    scenarios: tuple = ("means",)
    seed: int = 0
    trials: int = 1
    schedule_levels: int = 12
    output: Output = field(default_factory=Output)

    @property
    def measure_dict(self) -> dict:
        kind, payload = self.measure[0]
        if kind == "atoms":
            return {"atoms": [list(a) for a in payload]}
        return {"generator": dict(payload)}

    @property
    def radius_dict(self) -> dict:
        return dict(self.radius_fn)

    def to_dict(self) -> dict:
        """Plain-JSON form; ``parse_config(cfg.to_dict()) == cfg``."""
        return {
            "measure": self.measure_dict,
            "c0": self.c0,
            "radius_fn": self.radius_dict,
            "d": self.d,
            "l": self.l,
            "order_window": list(self.order_window) if self.order_window else None,
            "grid": asdict(self.grid),
            "scenarios": list(self.scenarios),
            "seed": self.seed,
            "trials": self.trials,
            "schedule_levels": self.schedule_levels,
            "output": asdict(self.output),
        }

    def with_overrides(self, seed=None, scenarios=None, out_dir=None) -> "RunConfig":
        kw = {}
        if seed is not None:
            kw["seed"] = int(seed)
        if scenarios:
            kw["scenarios"] = tuple(scenarios)
        if out_dir is not None:
            kw["output"] = Output(str(out_dir), self.output.report, self.output.csv)
        return replace(self, **kw)


# --- validation helpers ------------------------------------------------------


class _Checker:
    def __init__(self):
        self.problems = []
        self.warnings = []

    def error(self, path, msg):
        self.problems.append((path, msg))

    def unknown(self, path, doc, known):
        for key in doc:
            if key not in known:
                self.warnings.append(f"{path}{key}: unknown key ignored")

    def number(self, doc, key, path, default, *, integer=False, lo=None, hi=None,
               lo_open=False, hi_open=False):
        if key not in doc or doc[key] is None:
            return default
        val = doc[key]
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            self.error(path + key, "must be a number")
            return default
        if integer and not float(val).is_integer():
            self.error(path + key, "must be an integer")
            return default
        val = int(val) if integer else float(val)
        if not math.isfinite(val):
            self.error(path + key, "must be finite")
            return default
        if lo is not None and (val <= lo if lo_open else val < lo):
            self.error(path + key, f"must be {'>' if lo_open else '>='} {lo}")
        if hi is not None and (val >= hi if hi_open else val > hi):
            self.error(path + key, f"must be {'<' if hi_open else '<='} {hi}")
        return val


def _parse_measure(doc, chk: _Checker):
    path = "measure."
    if not isinstance(doc, dict):
        chk.error("measure", "must be an object with 'atoms' or 'generator'")
        return (("atoms", ()),)
    chk.unknown(path, doc, ("atoms", "generator"))
    if ("atoms" in doc) == ("generator" in doc):
        chk.error("measure", "exactly one of 'atoms' or 'generator' is required")
        return (("atoms", ()),)
    if "atoms" in doc:
        atoms = []
        if not isinstance(doc["atoms"], list):
            chk.error(path + "atoms", "must be a list of [re, im, mass] triples")
            return (("atoms", ()),)
        for i, a in enumerate(doc["atoms"]):
            p = f"{path}atoms[{i}]"
            if (not isinstance(a, (list, tuple)) or len(a) != 3
                    or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in a)):
                chk.error(p, "must be a [re, im, mass] triple of numbers")
                continue
            re_, im_, m = (float(v) for v in a)
            if not (math.isfinite(re_) and math.isfinite(im_)):
                chk.error(p, "center must be finite")
            if not (math.isfinite(m) and m > 0):
                chk.error(p, "mass must be positive and finite")
            atoms.append((re_, im_, m))
        return (("atoms", tuple(atoms)),)
    gen = doc["generator"]
    gp = path + "generator."
    if not isinstance(gen, dict):
        chk.error(path + "generator", "must be an object")
        return (("atoms", ()),)
    chk.unknown(gp, gen, ("kind", "exponent", "count", "mass_law", "max_mass", "radius"))
    kind = gen.get("kind")
    if kind not in GENERATOR_KINDS:
        chk.error(gp + "kind", f"must be one of {list(GENERATOR_KINDS)}")
        kind = GENERATOR_KINDS[0]
    law = gen.get("mass_law", "unit")
    if law not in MASS_LAWS:
        chk.error(gp + "mass_law", f"must be one of {list(MASS_LAWS)}")
        law = "unit"
    items = {
        "kind": kind,
        "count": chk.number(gen, "count", gp, 10, integer=True, lo=0),
        "mass_law": law,
        "max_mass": chk.number(gen, "max_mass", gp, 1.0, lo=0, lo_open=True),
    }
    if kind == "radial_power":
        items["exponent"] = chk.number(gen, "exponent", gp, 1.0, lo=0, lo_open=True)
    else:
        items["radius"] = chk.number(gen, "radius", gp, 1.0, lo=0, lo_open=True)
    return (("generator", tuple(sorted(items.items()))),)


def _parse_radius(doc, chk: _Checker, base_dir):
    path = "radius_fn."
    if doc is None:
        return (("kappa", 1.0), ("q", 0.0))
    if not isinstance(doc, dict):
        chk.error("radius_fn", "must be an object")
        return (("kappa", 1.0), ("q", 0.0))
    if "tabulated" in doc:
        chk.unknown(path, doc, ("tabulated", "tail_exponent"))
        src = doc["tabulated"]
        if not isinstance(src, str):
            chk.error(path + "tabulated", "must be a file path")
        else:
            full = Path(base_dir, src) if base_dir else Path(src)
            if not full.exists():
                chk.error(path + "tabulated", f"file not found: {src}")
        tail = chk.number(doc, "tail_exponent", path, 0.0, lo=0)
        return (("tabulated", src), ("tail_exponent", tail))
    chk.unknown(path, doc, ("kappa", "q"))
    kappa = chk.number(doc, "kappa", path, 1.0, lo=0, lo_open=True)
    q = chk.number(doc, "q", path, 0.0, lo=0)
    return (("kappa", kappa), ("q", q))


def parse_config(document, base_dir=None):
    """Validate a configuration document (JSON text or parsed mapping).

    Returns ``(RunConfig, warnings)``. All constraint violations are collected
    and raised together as a :class:`ConfigError` with key paths.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ConfigError([("<document>", f"invalid JSON: {exc}")]) from None
    if not isinstance(document, dict):
        raise ConfigError([("<document>", "top level must be an object")])
    chk = _Checker()
    known = [f.name for f in fields(RunConfig)]
    chk.unknown("", document, known)
    if "measure" not in document:
        chk.error("measure", "is required")
    measure = _parse_measure(document.get("measure", {"atoms": []}), chk)
    c0 = chk.number(document, "c0", "", 0.0)
    radius = _parse_radius(document.get("radius_fn"), chk, base_dir)

    scen = document.get("scenarios", ["means"])
    if isinstance(scen, str):
        scen = [scen]
    if not isinstance(scen, list) or not scen:
        chk.error("scenarios", "must be a non-empty list of names")
        scen = ["means"]
    for i, name in enumerate(scen):
        if name not in SCENARIOS:
            chk.error(f"scenarios[{i}]", f"unknown scenario {name!r}; choose from {list(SCENARIOS)}")
    scen = tuple(scen)

    d = chk.number(document, "d", "", 1.0, lo=0, lo_open=True)
    if d > 2 and any(s in THEOREM_SCENARIOS for s in scen):
        chk.error("d", "must lie in (0, 2] for scenarios "
                  + ", ".join(s for s in scen if s in THEOREM_SCENARIOS))
    l = chk.number(document, "l", "", 1.0, lo=0)

    window = document.get("order_window")
    if window is not None:
        if (not isinstance(window, list) or len(window) != 2
                or not all(isinstance(v, (int, float)) for v in window)
                or not window[1] > window[0] > 0):
            chk.error("order_window", "must be [t_min, t_max] with t_max > t_min > 0")
            window = None
        else:
            window = (float(window[0]), float(window[1]))

    gdoc = document.get("grid", {}) or {}
    if not isinstance(gdoc, dict):
        chk.error("grid", "must be an object")
        gdoc = {}
    chk.unknown("grid.", gdoc, [f.name for f in fields(Grid)])
    g = Grid()
    grid = Grid(
        xmin=chk.number(gdoc, "xmin", "grid.", g.xmin),
        xmax=chk.number(gdoc, "xmax", "grid.", g.xmax),
        ymin=chk.number(gdoc, "ymin", "grid.", g.ymin),
        ymax=chk.number(gdoc, "ymax", "grid.", g.ymax),
        nx=chk.number(gdoc, "nx", "grid.", g.nx, integer=True, lo=1),
        ny=chk.number(gdoc, "ny", "grid.", g.ny, integer=True, lo=1),
    )
    if grid.xmax < grid.xmin or grid.ymax < grid.ymin:
        chk.error("grid", "requires xmin <= xmax and ymin <= ymax")
    if grid.nx * grid.ny > MAX_GRID_POINTS:
        chk.error("grid", f"nx*ny must not exceed {MAX_GRID_POINTS}")

    seed = chk.number(document, "seed", "", 0, integer=True, lo=0)
    trials = chk.number(document, "trials", "", 1, integer=True, lo=1, hi=MAX_TRIALS)
    levels = chk.number(document, "schedule_levels", "", 12, integer=True, lo=1, hi=40)

    odoc = document.get("output", {}) or {}
    if not isinstance(odoc, dict):
        chk.error("output", "must be an object")
        odoc = {}
    chk.unknown("output.", odoc, [f.name for f in fields(Output)])
    o = Output()
    output = Output(str(odoc.get("dir", o.dir)), str(odoc.get("report", o.report)),
                    str(odoc.get("csv", o.csv)))

    if chk.problems:
        raise ConfigError(chk.problems)
    cfg = RunConfig(measure, c0, radius, d, l, window, grid, scen, seed, trials, levels, output)
    return cfg, chk.warnings


def load_config(path):
    """Read and validate a JSON configuration file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError([("<file>", str(exc))]) from None
    return parse_config(text, base_dir=path.parent)


# --- builders ----------------------------------------------------------------


def _masses(law, count, max_mass, rng):
    if law == "unit":
        return np.ones(count)
    if law == "integer":
        return rng.integers(1, max(1, int(max_mass)) + 1, count).astype(float)
    return max_mass * (1.0 - rng.random(count))  # uniform on (0, max_mass]


def build_measure(cfg: RunConfig, rng=None) -> AtomicMassDistribution:
    """The configured measure; random generators draw from ``rng``."""
    kind, payload = cfg.measure[0]
    if kind == "atoms":
        return AtomicMassDistribution.from_atoms(payload)
    gen = dict(payload)
    n = gen["count"]
    if n == 0:
        return AtomicMassDistribution.empty()
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    if gen["kind"] == "radial_power":
        k = np.arange(1, n + 1, dtype=float)
        centers = k ** gen["exponent"] * np.exp(1j * GOLDEN_ANGLE * k)
        masses = _masses(gen["mass_law"], n, gen["max_mass"], rng)
    else:
        rad = gen["radius"] * np.sqrt(rng.random(n))
        centers = rad * np.exp(2j * np.pi * rng.random(n))
        masses = _masses(gen["mass_law"], n, gen["max_mass"], rng)
    return AtomicMassDistribution(centers, masses)


def build_radius(cfg: RunConfig, base_dir=None) -> RadiusFunction:
    rdoc = cfg.radius_dict
    if "tabulated" in rdoc:
        path = Path(base_dir, rdoc["tabulated"]) if base_dir else Path(rdoc["tabulated"])
        return load_tabulated_radius(path, rdoc.get("tail_exponent", 0.0))
    return PowerRadius(rdoc["kappa"], rdoc["q"])


def load_tabulated_radius(path, tail_exponent=0.0) -> TabulatedRadius:
    """Read ``{"xs": [...], "ys": [...], "values": [[...], ...]}`` (JSON) or an ``.npz``."""
    path = Path(path)
    if path.suffix == ".npz":
        data = np.load(path)
        xs, ys, values = data["xs"], data["ys"], data["values"]
    else:
        data = json.loads(path.read_text())
        xs, ys, values = data["xs"], data["ys"], data["values"]
    return TabulatedRadius(np.asarray(xs), np.asarray(ys), np.asarray(values), tail_exponent)


def trial_rng(seed: int, scenario: str, trial: int) -> np.random.Generator:
    """Independent, reproducible substream for one trial of one scenario."""
    tag = int.from_bytes(scenario.encode(), "little") % (2**32)
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(tag, trial)))
