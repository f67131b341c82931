"""K numbers: Nyquist sample counts of the field along the receive array.

``K = (1/2pi) * integral of the local bandwidth along the array``; when the
array is short relative to the link distance the center value suffices,
and at the optimal orientation the center value has the closed form
``(K0 * Lp / pi) * sin(alpha/2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bandwidth import OrientationAngles, local_bandwidth_closed, reduce_phi_prime
from .errors import DegenerateGeometry
from .geometry import ArraySegment, K0, PolarPlacement, geometry_angles
from .numerics import QuadratureRule, integrate

DEFAULT_QUAD_POINTS = 129
DEFAULT_SEARCH_GRID = (64, 64)
_REFINE_POINTS = 21  # spans one coarse cell on each side of the best point


class KMethod(Enum):
    NUMERIC = "numeric"
    CENTER_APPROX = "center-approx"
    CENTER_APPROX_MAX = "center-approx-max"


@dataclass(frozen=True)
class KNumber:
    value: float
    method: KMethod


@dataclass(frozen=True)
class OrientationSearchResult:
    best_orientation: OrientationAngles
    best_k: KNumber
    grid_resolution: tuple[int, int]


def k_number_numeric(
    receiver: ArraySegment, Ls: float, quad_points: int = DEFAULT_QUAD_POINTS
) -> KNumber:
    """Quadrature K number: integrate the closed-form bandwidth along the receiver."""
    rule = QuadratureRule("simpson", quad_points)
    cx, cy, cz = receiver.center
    dx, dy, dz = receiver.direction
    v = receiver.direction

    def omega_at(l: float) -> float:
        return local_bandwidth_closed((cx + l * dx, cy + l * dy, cz + l * dz), v, Ls)

    half = 0.5 * receiver.length
    value = integrate(omega_at, -half, half, rule) / (2.0 * math.pi)
    return KNumber(value=value, method=KMethod.NUMERIC)


def k_number_center(receiver: ArraySegment, Ls: float) -> KNumber:
    """Center approximation: (Lp / 2pi) times the bandwidth at the array center."""
    omega = local_bandwidth_closed(receiver.center, receiver.direction, Ls)
    return KNumber(value=receiver.length * omega / (2.0 * math.pi), method=KMethod.CENTER_APPROX)


def k_number_max(placement: PolarPlacement, Lp: float, Ls: float) -> KNumber:
    """Center approximation at the optimal orientation: (K0 Lp / pi) sin(alpha/2)."""
    alpha = geometry_angles(placement, Ls).alpha
    if alpha <= 0.0:
        raise DegenerateGeometry("subtended angle is zero; K number is zero at every orientation")
    value = K0 * Lp / math.pi * math.sin(0.5 * alpha)
    return KNumber(value=value, method=KMethod.CENTER_APPROX_MAX)


def maximize_k(
    placement: PolarPlacement,
    Lp: float,
    Ls: float,
    grid: tuple[int, int] = DEFAULT_SEARCH_GRID,
    quad_points: int = DEFAULT_QUAD_POINTS,
) -> OrientationSearchResult:
    """Exhaustive orientation search for the largest quadrature K number.

    Evaluates a coarse (psi, phi') grid over [0, pi] x [0, pi), then a 10x
    finer grid spanning one coarse cell around the best point.  phi' is
    measured from the fan bisector, so the landscape is placement-independent
    up to the bisector tilt beta; ties break to the lowest grid index.
    """
    n_psi, n_phi = grid
    if n_psi < 8 or n_phi < 8:
        raise ValueError(f"search grid must be at least 8x8, got {grid}")
    ang = geometry_angles(placement, Ls)
    if ang.alpha <= 0.0:
        raise DegenerateGeometry("subtended angle is zero; K number is zero at every orientation")
    p0 = placement.point()
    beta = ang.beta

    def k_at(psi: float, phi_prime: float) -> float:
        phi = math.fmod(phi_prime + beta, math.pi)
        if phi < 0.0:
            phi += math.pi
        sp = math.sin(psi)
        v = (math.cos(psi), sp * math.cos(phi), sp * math.sin(phi))
        seg = ArraySegment(center=p0, direction=v, length=Lp)
        return k_number_numeric(seg, Ls, quad_points).value

    psis = np.linspace(0.0, math.pi, n_psi)
    phis = np.linspace(0.0, math.pi, n_phi, endpoint=False)
    best = (-1.0, 0.0, 0.0)
    for psi in psis:
        for pp in phis:
            k = k_at(psi, pp)
            if k > best[0]:
                best = (k, float(psi), float(pp))

    psi_step = math.pi / (n_psi - 1)
    phi_step = math.pi / n_phi
    fine_psis = np.clip(
        best[1] + np.linspace(-psi_step, psi_step, _REFINE_POINTS), 0.0, math.pi
    )
    fine_phis = best[2] + np.linspace(-phi_step, phi_step, _REFINE_POINTS)
    for psi in fine_psis:
        for pp in fine_phis:
            pp = reduce_phi_prime(float(pp), 0.0)
            k = k_at(psi, pp)
            if k > best[0]:
                best = (k, float(psi), pp)

    k_best, psi_best, pp_best = best
    phi_best = math.fmod(pp_best + beta, math.pi)
    if phi_best < 0.0:
        phi_best += math.pi
    return OrientationSearchResult(
        best_orientation=OrientationAngles(psi=psi_best, phi=phi_best),
        best_k=KNumber(value=k_best, method=KMethod.NUMERIC),
        grid_resolution=(n_psi, n_phi),
    )
