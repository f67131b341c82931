"""Scenario documents and CSV sweep tables.

A scenario is a JSON object with lengths in wavelengths and angles in
radians:

    {
      "lambda_m": 0.01,
      "Ls": 100, "Lp": 100,
      "placement": {"R": 500, "theta": 0},
      "orientation": "optimal",            // or {"psi": ..., "phi": ...}
      "spacing_s": 0.5, "spacing_p": 0.5,  // default lambda/2
      "quad_points": 129,                  // default
      "grid": [64, 64],                    // orientation-search grid, default
      "sweep": {"variable": "R", "start": 300, "stop": 1000, "count": 15},
      "theta_list": [0, 0.5236, 1.0472]
    }

Only lambda_m, Ls, Lp and placement are required.  "optimal" resolves to
the bandwidth-maximizing receive direction for the given placement.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import IO, Iterable, Mapping

from .bandwidth import OrientationAngles
from .errors import RangeError, SchemaError
from .geometry import PolarPlacement, Vec3, geometry_angles

DEFAULT_SPACING = 0.5
DEFAULT_QUAD_POINTS = 129
DEFAULT_GRID = (64, 64)
DEFAULT_SWEEP_COUNT = 15


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    count: int

    def values(self) -> list[float]:
        if self.count == 1:
            return [self.start]
        step = (self.stop - self.start) / (self.count - 1)
        return [self.start + i * step for i in range(self.count)]


@dataclass(frozen=True)
class Scenario:
    lambda_m: float
    Ls: float
    Lp: float
    placement: PolarPlacement
    orientation: OrientationAngles
    orientation_mode: str  # "optimal" or "explicit"
    spacing_s: float = DEFAULT_SPACING
    spacing_p: float = DEFAULT_SPACING
    quad_points: int = DEFAULT_QUAD_POINTS
    grid: tuple[int, int] = DEFAULT_GRID
    sweep: SweepSpec | None = None
    theta_list: tuple[float, ...] = ()
    config_id: int = 0

    def orientation_vector(self) -> Vec3:
        return self.orientation.vector()


def _require(doc: Mapping, key: str, path: str = "") -> object:
    if key not in doc:
        raise SchemaError(f"{path}{key}: required field is missing")
    return doc[key]


def _number(value: object, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{path}: expected a number, got {value!r}")
    return float(value)


def _positive(value: object, path: str) -> float:
    x = _number(value, path)
    if not x > 0.0:
        raise RangeError(f"{path}: {x} must be > 0")
    return x


def _in_range(value: object, path: str, lo: float, hi: float) -> float:
    x = _number(value, path)
    if not lo <= x <= hi:
        raise RangeError(f"{path}: {x} outside [{lo:g}, {hi:g}]")
    return x


def parse_scenario(text: str) -> Scenario:
    """Parse and validate a scenario document, applying defaults.

    Raises SchemaError for structural problems (with the offending field
    path) and RangeError for out-of-range values.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("top level: expected a JSON object")
    return _scenario_from_dict(doc)


def parse_scenarios(text: str) -> list[Scenario]:
    """Parse either a single scenario or {"scenarios": [...]} into a list."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    if isinstance(doc, dict) and "scenarios" in doc:
        items = doc["scenarios"]
        if not isinstance(items, list) or not items:
            raise SchemaError("scenarios: expected a non-empty array")
        out = []
        for i, item in enumerate(items):
            if not isinstance(item, dict):
                raise SchemaError(f"scenarios[{i}]: expected an object")
            out.append(_scenario_from_dict(item, config_id=i, path=f"scenarios[{i}]."))
        return out
    if isinstance(doc, dict):
        return [_scenario_from_dict(doc)]
    raise SchemaError("top level: expected a JSON object")


def _scenario_from_dict(doc: Mapping, config_id: int = 0, path: str = "") -> Scenario:
    lambda_m = _positive(_require(doc, "lambda_m", path), path + "lambda_m")
    Ls = _positive(_require(doc, "Ls", path), path + "Ls")
    Lp = _positive(_require(doc, "Lp", path), path + "Lp")

    pdoc = _require(doc, "placement", path)
    if not isinstance(pdoc, dict):
        raise SchemaError(f"{path}placement: expected an object")
    R = _positive(_require(pdoc, "R", path + "placement."), path + "placement.R")
    theta = _in_range(
        _require(pdoc, "theta", path + "placement."), path + "placement.theta", 0.0, 0.5 * math.pi
    )
    placement = PolarPlacement(R=R, theta=theta)

    odoc = doc.get("orientation", "optimal")
    if odoc == "optimal":
        beta = geometry_angles(placement, Ls).beta
        # v_NP = (0, -sin beta, cos beta) corresponds to (psi, phi) = (pi/2, beta + pi/2)
        orientation = OrientationAngles(psi=0.5 * math.pi, phi=beta + 0.5 * math.pi)
        mode = "optimal"
    elif isinstance(odoc, dict):
        psi = _in_range(_require(odoc, "psi", path + "orientation."), path + "orientation.psi", 0.0, math.pi)
        phi = _in_range(_require(odoc, "phi", path + "orientation."), path + "orientation.phi", 0.0, math.pi)
        orientation = OrientationAngles(psi=psi, phi=phi)
        mode = "explicit"
    else:
        raise SchemaError(f'{path}orientation: expected "optimal" or an object, got {odoc!r}')

    spacing_s = _positive(doc.get("spacing_s", DEFAULT_SPACING), path + "spacing_s")
    spacing_p = _positive(doc.get("spacing_p", DEFAULT_SPACING), path + "spacing_p")

    quad_points = doc.get("quad_points", DEFAULT_QUAD_POINTS)
    if isinstance(quad_points, bool) or not isinstance(quad_points, int):
        raise SchemaError(f"{path}quad_points: expected an integer, got {quad_points!r}")
    if quad_points < 3 or quad_points % 2 == 0:
        raise RangeError(f"{path}quad_points: {quad_points} must be odd and >= 3")

    gdoc = doc.get("grid", list(DEFAULT_GRID))
    if (
        not isinstance(gdoc, list)
        or len(gdoc) != 2
        or any(isinstance(g, bool) or not isinstance(g, int) for g in gdoc)
    ):
        raise SchemaError(f"{path}grid: expected [n_psi, n_phi] integers, got {gdoc!r}")
    if min(gdoc) < 8:
        raise RangeError(f"{path}grid: {gdoc} entries must be >= 8")

    sweep = None
    if "sweep" in doc:
        sdoc = doc["sweep"]
        if not isinstance(sdoc, dict):
            raise SchemaError(f"{path}sweep: expected an object")
        variable = _require(sdoc, "variable", path + "sweep.")
        if variable not in ("R",):
            raise SchemaError(f'{path}sweep.variable: only "R" sweeps are supported, got {variable!r}')
        start = _positive(_require(sdoc, "start", path + "sweep."), path + "sweep.start")
        stop = _positive(_require(sdoc, "stop", path + "sweep."), path + "sweep.stop")
        if stop < start:
            raise RangeError(f"{path}sweep.stop: {stop} must be >= start {start}")
        count = sdoc.get("count", DEFAULT_SWEEP_COUNT)
        if isinstance(count, bool) or not isinstance(count, int) or count < 1:
            raise RangeError(f"{path}sweep.count: {count!r} must be a positive integer")
        sweep = SweepSpec(variable=str(variable), start=start, stop=stop, count=count)

    theta_list: tuple[float, ...] = ()
    if "theta_list" in doc:
        tdoc = doc["theta_list"]
        if not isinstance(tdoc, list) or not tdoc:
            raise SchemaError(f"{path}theta_list: expected a non-empty array")
        theta_list = tuple(
            _in_range(t, f"{path}theta_list[{i}]", 0.0, 0.5 * math.pi) for i, t in enumerate(tdoc)
        )

    return Scenario(
        lambda_m=lambda_m,
        Ls=Ls,
        Lp=Lp,
        placement=placement,
        orientation=orientation,
        orientation_mode=mode,
        spacing_s=spacing_s,
        spacing_p=spacing_p,
        quad_points=quad_points,
        grid=(gdoc[0], gdoc[1]),
        sweep=sweep,
        theta_list=theta_list,
        config_id=config_id,
    )


@dataclass
class SweepTable:
    """Rectangular table of reals with a provenance comment header.

    The CSV body is RFC 4180 (comma separated, LF endings, "." decimal);
    values carry 17 significant digits so rereads round-trip exactly.
    Output is byte-identical across runs except the "generated" line.
    """

    columns: list[str]
    rows: list[tuple[float, ...]]
    command: str
    scenario_sha256: str
    notes: list[str] = field(default_factory=list)

    def write_csv(self, stream: IO[str], version: str, timestamp: str | None = None) -> None:
        if timestamp is None:
            timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        stream.write(f"# nfdof {version}\n")
        stream.write(f"# command: {self.command}\n")
        stream.write(f"# scenario-sha256: {self.scenario_sha256}\n")
        stream.write(f"# generated: {timestamp}\n")
        stream.write("# units: angles in radians, lengths in wavelengths, bandwidth as omega/k0\n")
        for note in self.notes:
            stream.write(f"# {note}\n")
        stream.write(",".join(self.columns) + "\n")
        for row in self.rows:
            stream.write(",".join(f"{v:.17g}" for v in row) + "\n")


def sha256_of(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def read_table(stream: Iterable[str]) -> tuple[list[str], list[list[float]]]:
    """Read back a SweepTable CSV, skipping the comment header."""
    columns: list[str] = []
    rows: list[list[float]] = []
    for line in stream:
        line = line.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        if not columns:
            columns = line.split(",")
            continue
        rows.append([float(tok) for tok in line.split(",")])
    return columns, rows
