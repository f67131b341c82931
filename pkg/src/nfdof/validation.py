"""Self-check harness: cross-validates the closed forms against their oracles.

Each check draws seeded random configurations, compares two independent
computation routes, and reports the worst deviation.  The harness backs
the ``nfdof validate`` subcommand; ``corruption`` is a test hook that
biases the closed-form values so the harness itself can be checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bandwidth import (
    local_bandwidth_closed,
    local_bandwidth_oracle,
    max_bandwidth,
    omega_from_angles,
    omega_grid,
)
from .geometry import (
    K0,
    PolarPlacement,
    canonicalize,
    geometry_angles,
    subtended_angle_oracle,
)

ORACLE_SAMPLES = 100_000
ROUNDOFF_FLOOR = 1e-9 * K0


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    worst: float
    tolerance: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.name}: {self.cases} cases, "
            f"worst {self.worst:.3e} (tolerance {self.tolerance:.3e})"
        )


@dataclass(frozen=True)
class ValidationReport:
    results: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def _random_config(rng: np.random.Generator, Ls: float):
    R = rng.uniform(60.0, 2000.0)
    theta = rng.uniform(0.0, 0.5 * math.pi * 0.999999)
    psi = rng.uniform(0.0, math.pi)
    phi = rng.uniform(0.0, math.pi)
    azimuth = rng.uniform(0.0, 2.0 * math.pi)
    z_sign = 1.0 if rng.uniform() < 0.5 else -1.0
    # place the point anywhere in 3D; canonicalization brings it back
    rho = R * math.cos(theta)
    p = (rho * math.cos(azimuth), rho * math.sin(azimuth), z_sign * R * math.sin(theta))
    sp = math.sin(psi)
    v = (math.cos(psi), sp * math.cos(phi), sp * math.sin(phi))
    return p, v


def check_closed_vs_oracle(seed: int, n_cases: int, corruption: float = 0.0) -> CheckResult:
    """Closed form against the definition-level discretization, arbitrary 3D placements."""
    rng = np.random.default_rng(seed)
    Ls = 100.0
    worst = 0.0
    tol = 0.0
    for _ in range(n_cases):
        p, v = _random_config(rng, Ls)
        closed = local_bandwidth_closed(p, v, Ls) + corruption
        oracle = local_bandwidth_oracle(p, v, Ls, ORACLE_SAMPLES)
        alpha = geometry_angles(canonicalize(p, v, Ls)[0], Ls).alpha
        bound = 2.0 * K0 * alpha / ORACLE_SAMPLES + ROUNDOFF_FLOOR
        worst = max(worst, abs(closed - oracle))
        tol = max(tol, bound)
    return CheckResult("closed form vs definition oracle", worst <= tol, n_cases, worst, tol)


def check_angles(seed: int, n_cases: int) -> CheckResult:
    """Subtended angle against the cross/dot construction, plus the bisector tilt."""
    rng = np.random.default_rng(seed)
    Ls = 100.0
    worst = 0.0
    for _ in range(n_cases):
        R = rng.uniform(60.0, 2000.0)
        theta = rng.uniform(0.0, 0.5 * math.pi * 0.999999)
        placement = PolarPlacement(R=R, theta=theta)
        ang = geometry_angles(placement, Ls)
        P = placement.point()
        ref = subtended_angle_oracle(P, (0.0, 0.0, 0.5 * Ls), (0.0, 0.0, -0.5 * Ls))
        worst = max(worst, abs(ang.alpha - ref))
        if ang.alpha > 0.0:
            ra = _arrival_direction(P, 0.5 * Ls)
            rb = _arrival_direction(P, -0.5 * Ls)
            by, bz = ra[0] + rb[0], ra[1] + rb[1]
            worst = max(worst, abs(ang.beta - math.atan2(bz, by)))
    return CheckResult("geometry angles vs oracles", worst <= 1e-12, n_cases, worst, 1e-12)


def _arrival_direction(P, z_src: float) -> tuple[float, float]:
    dy, dz = P[1], P[2] - z_src
    n = math.hypot(dy, dz)
    return dy / n, dz / n


def check_orientation_maximum(seed: int, n_cases: int, grid_n: int = 501) -> CheckResult:
    """Grid maximum of the closed form against 2*K0*sin(alpha/2)."""
    rng = np.random.default_rng(seed)
    Ls = 100.0
    worst = 0.0
    psis = np.linspace(0.0, math.pi, grid_n)
    phis = np.linspace(0.0, math.pi, grid_n)
    h = math.pi / (grid_n - 1)
    tol = K0 * h * h + ROUNDOFF_FLOOR  # quadratic dip of the max between grid nodes
    for _ in range(n_cases):
        R = rng.uniform(60.0, 2000.0)
        theta = rng.uniform(0.0, 0.5 * math.pi * 0.98)
        alpha = geometry_angles(PolarPlacement(R=R, theta=theta), Ls).alpha
        grid_max = float(omega_grid(psis, phis, alpha).max())
        worst = max(worst, abs(grid_max - max_bandwidth(alpha)))
    return CheckResult("orientation maximum vs closed grid", worst <= tol, n_cases, worst, tol)


def check_branch_continuity(seed: int, n_cases: int) -> CheckResult:
    """Branch values must agree at the seams phi' = alpha/2 and pi - alpha/2."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_cases):
        alpha = rng.uniform(1e-6, math.pi * 0.999)
        psi = rng.uniform(0.0, math.pi)
        s, half = math.sin(psi), 0.5 * alpha
        lo_a = K0 * s * (1.0 - math.cos(half + half))
        lo_b = 2.0 * K0 * s * math.sin(half) * math.sin(half)
        hi_a = 2.0 * K0 * s * math.sin(half) * math.sin(math.pi - half)
        hi_b = K0 * s * (1.0 + math.cos(half - (math.pi - half)))
        lo = omega_from_angles(psi, half, alpha)
        hi = omega_from_angles(psi, math.pi - half, alpha)
        worst = max(
            worst,
            abs(lo - lo_a),
            abs(lo - lo_b),
            abs(hi - hi_a),
            abs(hi - hi_b),
        )
    return CheckResult("branch continuity at the seams", worst <= 1e-12, n_cases, worst, 1e-12)


def check_periodicity(seed: int, n_cases: int, grid_n: int = 41) -> CheckResult:
    """Bandwidth must be unchanged under phi -> phi + pi (opposite projection)."""
    rng = np.random.default_rng(seed)
    Ls = 100.0
    worst = 0.0
    psis = np.linspace(0.0, math.pi, grid_n)
    phis = np.linspace(0.0, math.pi, grid_n)
    for _ in range(n_cases):
        R = rng.uniform(60.0, 2000.0)
        theta = rng.uniform(0.0, 0.5 * math.pi * 0.98)
        p = PolarPlacement(R=R, theta=theta).point()
        for psi in psis:
            sp = math.sin(psi)
            for phi in phis:
                v = (math.cos(psi), sp * math.cos(phi), sp * math.sin(phi))
                w = (math.cos(psi), -sp * math.cos(phi), -sp * math.sin(phi))
                worst = max(
                    worst,
                    abs(local_bandwidth_closed(p, v, Ls) - local_bandwidth_closed(p, w, Ls)),
                )
    return CheckResult("periodicity under phi + pi", worst <= 1e-12, n_cases, worst, 1e-12)


def run_validation(seed: int, n_cases: int, corruption: float = 0.0) -> ValidationReport:
    """Run every check; ``n_cases`` scales the sampling effort of each."""
    results = [
        check_closed_vs_oracle(seed, n_cases, corruption=corruption),
        check_angles(seed + 1, 50 * n_cases),
        check_orientation_maximum(seed + 2, max(0, min(n_cases, 50))),
        check_branch_continuity(seed + 3, 50 * n_cases),
        check_periodicity(seed + 4, max(0, min(n_cases, 10))),
    ]
    return ValidationReport(results=results)
