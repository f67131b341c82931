"""Command-line front end: parameter sweeps to CSV plus the validation harness.

Subcommands
-----------
localbw-sweep   bandwidth over receive orientations (psi, phi') at one placement
maxbw-map       orientation-maximized bandwidth over a yOz window
kmax-sweep      analytic (AK) and searched (EK) maximum K numbers over (R, theta)
svd-spectrum    channel singular spectra and EDoF estimates per scenario
validate        oracle-equivalence self checks

Exit codes: 0 success, 1 validation failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace
from typing import Sequence

import numpy as np

from . import __version__
from .bandwidth import omega_grid
from .channel import antenna_grid, edof_quadratic, edof_threshold, los_channel, singular_spectrum
from .errors import DegenerateGeometry, DegeneratePoint, RangeError, SchemaError
from .geometry import ArraySegment, K0, PolarPlacement, SEGMENT_TOL, geometry_angles
from .knumber import k_number_center, k_number_max, maximize_k
from .scenario import (
    Scenario,
    SweepTable,
    parse_scenario,
    parse_scenarios,
    sha256_of,
)
from .validation import run_validation

DEFAULT_ORIENTATION_POINTS = 181
DEFAULT_MAP_EXTENT = 300.0
DEFAULT_MAP_POINTS = 601
DEFAULT_KMAX_THETAS = (0.0, math.pi / 6.0, math.pi / 3.0)
DEFAULT_EDOF_TAU = 0.1


def cmd_localbw_sweep(scenario: Scenario, n_points: int = DEFAULT_ORIENTATION_POINTS) -> SweepTable:
    """Sweep (psi, phi') over [0, pi]^2 at the scenario placement."""
    alpha = geometry_angles(scenario.placement, scenario.Ls).alpha
    psis = np.linspace(0.0, math.pi, n_points)
    phis = np.linspace(0.0, math.pi, n_points)
    omega = omega_grid(psis, phis, alpha) / K0
    rows = [
        (float(psis[i]), float(phis[j]), float(omega[i, j]))
        for i in range(n_points)
        for j in range(n_points)
    ]
    return SweepTable(
        columns=["psi", "phi_prime", "omega_over_k0"],
        rows=rows,
        command="localbw-sweep",
        scenario_sha256="",
        notes=[
            "psi: receive polar angle from +x; phi_prime: azimuth from the fan bisector",
            f"placement R={scenario.placement.R:.17g} theta={scenario.placement.theta:.17g}"
            f" Ls={scenario.Ls:.17g} (alpha={alpha:.17g})",
        ],
    )


def cmd_maxbw_map(
    scenario: Scenario,
    extent: float = DEFAULT_MAP_EXTENT,
    n_points: int = DEFAULT_MAP_POINTS,
) -> SweepTable:
    """Orientation-maximized bandwidth over the yOz window [-extent, extent]^2.

    Points inside the degeneracy band around the transmit segment emit the
    limiting value 2.0 (the fan opens to a half turn on the segment).
    """
    half = 0.5 * scenario.Ls
    ys = np.linspace(-extent, extent, n_points)
    zs = np.linspace(-extent, extent, n_points)
    yg = np.abs(ys)[:, None]
    zg = np.abs(zs)[None, :]
    alpha = np.arctan2(zg + half, yg) - np.arctan2(zg - half, yg)
    value = 2.0 * np.sin(0.5 * alpha)
    on_segment = (yg <= SEGMENT_TOL) & (zg <= half + SEGMENT_TOL)
    value = np.where(on_segment, 2.0, value)
    rows = [
        (float(ys[i]), float(zs[j]), float(value[i, j]))
        for i in range(n_points)
        for j in range(n_points)
    ]
    return SweepTable(
        columns=["y", "z", "omega_max_over_k0"],
        rows=rows,
        command="maxbw-map",
        scenario_sha256="",
        notes=[
            f"transmit segment length Ls={scenario.Ls:.17g} on the z axis",
            "points within the segment band carry the limiting value 2.0",
        ],
    )


def cmd_kmax_sweep(
    scenario: Scenario,
    r_values: Sequence[float] | None = None,
    theta_values: Sequence[float] | None = None,
) -> SweepTable:
    """AK (closed form) and EK (orientation search) over an (R, theta) sweep."""
    if r_values is None:
        if scenario.sweep is not None:
            r_values = scenario.sweep.values()
        else:
            r_values = list(np.linspace(300.0, 1000.0, 15))
    if theta_values is None:
        theta_values = scenario.theta_list or DEFAULT_KMAX_THETAS
    rows = []
    for R in r_values:
        for theta in theta_values:
            placement = PolarPlacement(R=float(R), theta=float(theta))
            ak = k_number_max(placement, scenario.Lp, scenario.Ls).value
            ek = maximize_k(
                placement,
                scenario.Lp,
                scenario.Ls,
                grid=scenario.grid,
                quad_points=scenario.quad_points,
            ).best_k.value
            rows.append((float(R), float(theta), ak, ek))
    return SweepTable(
        columns=["R", "theta", "AK", "EK"],
        rows=rows,
        command="kmax-sweep",
        scenario_sha256="",
        notes=[
            f"Ls={scenario.Ls:.17g} Lp={scenario.Lp:.17g}",
            "AK: center approximation at the optimal orientation; EK: grid search maximum",
        ],
    )


def cmd_svd_spectrum(scenarios: Sequence[Scenario], tau: float = DEFAULT_EDOF_TAU) -> SweepTable:
    """Normalized singular spectrum plus K/EDoF summaries for each scenario.

    The channel is built at the scenario's (resolved) orientation; EK is the
    orientation-search maximum, AK the center approximation at the scenario
    orientation, both orientation-search independent of antenna spacing.
    """
    rows = []
    for sc in scenarios:
        p0 = sc.placement.point()
        v = sc.orientation_vector()
        tx = antenna_grid(ArraySegment((0.0, 0.0, 0.0), (0.0, 0.0, 1.0), sc.Ls), sc.spacing_s)
        rx = antenna_grid(ArraySegment(p0, v, sc.Lp), sc.spacing_p)
        H = los_channel(tx, rx, sc.lambda_m)
        spectrum = singular_spectrum(H)
        ak = k_number_center(ArraySegment(p0, v, sc.Lp), sc.Ls).value
        ek = maximize_k(
            sc.placement, sc.Lp, sc.Ls, grid=sc.grid, quad_points=sc.quad_points
        ).best_k.value
        n_dof = edof_threshold(spectrum, tau)
        q_dof = edof_quadratic(spectrum)
        for n, sigma in enumerate(spectrum.normalized, start=1):
            rows.append((float(sc.config_id), float(n), float(sigma), ak, ek, float(n_dof), q_dof))
    return SweepTable(
        columns=[
            "config_id",
            "n",
            "sigma_normalized",
            "AK",
            "EK",
            "edof_threshold",
            "edof_quadratic",
        ],
        rows=rows,
        command="svd-spectrum",
        scenario_sha256="",
        notes=[f"edof_threshold at tau={tau:.17g} on normalized singular values"],
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nfdof",
        description="Spatial bandwidth, K numbers and LoS channel spectra for linear arrays.",
    )
    parser.add_argument("--version", action="version", version=f"nfdof {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, needs_config: bool = True) -> None:
        if needs_config:
            p.add_argument("--config", required=True, help="scenario JSON file")
        p.add_argument("--out", default=None, help="output CSV file (default: stdout)")
        p.add_argument("--seed", type=int, default=0,
                       help="recorded in the provenance header; sweeps are deterministic")

    p = sub.add_parser("localbw-sweep", help="bandwidth over receive orientations")
    add_common(p)
    p.add_argument("--grid", type=int, default=DEFAULT_ORIENTATION_POINTS,
                   help="points per orientation axis (default %(default)s)")

    p = sub.add_parser("maxbw-map", help="maximum bandwidth over a yOz window")
    add_common(p)
    p.add_argument("--grid", type=int, default=DEFAULT_MAP_POINTS,
                   help="points per map axis (default %(default)s)")
    p.add_argument("--extent", type=float, default=DEFAULT_MAP_EXTENT,
                   help="half-width of the map window in wavelengths (default %(default)s)")

    p = sub.add_parser("kmax-sweep", help="AK and EK over an (R, theta) sweep")
    add_common(p)
    p.add_argument("--grid", type=int, default=None,
                   help="orientation-search grid per axis (default: scenario grid)")
    p.add_argument("--quad", type=int, default=None,
                   help="quadrature nodes (default: scenario quad_points)")

    p = sub.add_parser("svd-spectrum", help="singular spectra and EDoF per scenario")
    add_common(p)
    p.add_argument("--grid", type=int, default=None,
                   help="orientation-search grid per axis (default: scenario grid)")
    p.add_argument("--quad", type=int, default=None,
                   help="quadrature nodes (default: scenario quad_points)")
    p.add_argument("--tau", type=float, default=DEFAULT_EDOF_TAU,
                   help="EDoF threshold on normalized singular values (default %(default)s)")

    p = sub.add_parser("validate", help="run oracle-equivalence self checks")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default %(default)s)")
    p.add_argument("--cases", type=int, default=200,
                   help="random cases for the oracle comparison (default %(default)s)")

    return parser


def _with_overrides(scenario: Scenario, args: argparse.Namespace) -> Scenario:
    changes = {}
    grid = getattr(args, "grid", None)
    if grid is not None:
        changes["grid"] = (grid, grid)
    quad = getattr(args, "quad", None)
    if quad is not None:
        changes["quad_points"] = quad
    if not changes:
        return scenario
    return replace(scenario, **changes)


def _emit(table: SweepTable, out: str | None, config_text: str, seed: int) -> None:
    table.scenario_sha256 = sha256_of(config_text)
    table.notes.append(f"seed: {seed}")
    if out is None:
        table.write_csv(sys.stdout, version=__version__)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            table.write_csv(fh, version=__version__)


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "validate":
        report = run_validation(args.seed, args.cases)
        for result in report.results:
            print(result.line())
        return 0 if report.passed else 1

    try:
        with open(args.config, encoding="utf-8") as fh:
            config_text = fh.read()
        if args.command == "svd-spectrum":
            scenarios = [_with_overrides(sc, args) for sc in parse_scenarios(config_text)]
            table = cmd_svd_spectrum(scenarios, tau=args.tau)
        else:
            scenario = _with_overrides(parse_scenario(config_text), args)
            if args.command == "localbw-sweep":
                table = cmd_localbw_sweep(scenario, n_points=args.grid)
            elif args.command == "maxbw-map":
                table = cmd_maxbw_map(scenario, extent=args.extent, n_points=args.grid)
            else:
                table = cmd_kmax_sweep(scenario)
        _emit(table, args.out, config_text, args.seed)
    except (SchemaError, RangeError, DegeneratePoint, DegenerateGeometry, OSError, ValueError) as exc:
        print(f"nfdof: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
