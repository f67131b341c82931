"""Canonical frame and angle geometry for a pair of linear arrays.

Conventions used throughout the package:

* all lengths are in wavelength units, so the wavenumber is ``K0 = 2*pi``;
* the transmit segment is centered at the origin and oriented along z;
* observation points are reduced to the first quadrant of the yOz plane
  (x = 0, y >= 0, z >= 0) by a rotation about z plus an optional z-mirror,
  both of which leave the transmit segment (and hence every propagation
  angle) unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateGeometry, DegeneratePoint

Vec3 = tuple[float, float, float]

K0 = 2.0 * math.pi
"Wavenumber for lengths expressed in wavelengths."

SEGMENT_TOL = 1e-9
"Half-width of the degeneracy band around the transmit segment, in wavelengths."


def unit(v: Sequence[float]) -> Vec3:
    """Normalize a 3-vector; raises DegenerateGeometry on a zero vector."""
    x, y, z = float(v[0]), float(v[1]), float(v[2])
    n = math.sqrt(x * x + y * y + z * z)
    if n == 0.0:
        raise DegenerateGeometry("direction vector has zero norm")
    return (x / n, y / n, z / n)


@dataclass(frozen=True)
class ArraySegment:
    """A linear antenna array: center point, unit direction, length.

    ``length`` may be zero, which degenerates to a single point (useful for
    one-antenna grids); all bandwidth and K-number operations require the
    transmit length to be positive.
    """

    center: Vec3
    direction: Vec3
    length: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))
        object.__setattr__(self, "direction", unit(self.direction))
        object.__setattr__(self, "length", float(self.length))
        if self.length < 0.0:
            raise ValueError(f"segment length must be >= 0, got {self.length}")

    def endpoint(self, sign: float) -> Vec3:
        h = 0.5 * sign * self.length
        cx, cy, cz = self.center
        dx, dy, dz = self.direction
        return (cx + h * dx, cy + h * dy, cz + h * dz)


@dataclass(frozen=True)
class PolarPlacement:
    """Receive-array center in the canonical frame: p0 = (0, R cos(theta), R sin(theta))."""

    R: float
    theta: float

    def __post_init__(self) -> None:
        if not self.R > 0.0:
            raise ValueError(f"R must be positive, got {self.R}")
        if not 0.0 <= self.theta <= 0.5 * math.pi:
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")

    def point(self) -> Vec3:
        return (0.0, self.R * math.cos(self.theta), self.R * math.sin(self.theta))


@dataclass(frozen=True)
class GeometryAngles:
    """Angle pair describing the fan of arrival directions at a point.

    ``alpha`` is the angle subtended by the transmit segment's endpoints,
    ``beta`` the tilt of the fan bisector from the +y axis.  The arrival
    direction angles (from +y, in the yOz plane) span
    [beta - alpha/2, beta + alpha/2].
    """

    alpha: float
    beta: float


@dataclass(frozen=True)
class CanonicalTransform:
    """Rotation about z followed by an optional z-mirror; fixes the transmit segment."""

    z_rotation: float
    z_mirror: bool

    def apply_point(self, p: Sequence[float]) -> Vec3:
        c, s = math.cos(self.z_rotation), math.sin(self.z_rotation)
        x, y, z = float(p[0]), float(p[1]), float(p[2])
        xr, yr = c * x - s * y, s * x + c * y
        return (xr, yr, -z if self.z_mirror else z)

    # Directions transform exactly like points (the map is linear).
    apply_direction = apply_point


def _distance_to_axis_segment(y: float, z: float, half_length: float) -> float:
    # Distance from (0, y, z) to {(0, 0, t) : |t| <= half_length}.
    dz = abs(z) - half_length
    if dz <= 0.0:
        return abs(y)
    return math.hypot(y, dz)


def canonicalize(
    p: Sequence[float], v: Sequence[float], Ls: float = 0.0
) -> tuple[PolarPlacement, Vec3, CanonicalTransform]:
    """Reduce an arbitrary placement to the canonical yOz first quadrant.

    Parameters
    ----------
    p : observation point (wavelengths).
    v : receive-array direction (normalized on input).
    Ls : transmit-segment length; when positive, placements within
        ``SEGMENT_TOL`` of the segment raise DegeneratePoint.

    Returns
    -------
    (placement, direction, transform) where ``placement`` has x = 0,
    y >= 0, z >= 0, ``direction`` is ``v`` mapped by the same transform,
    and ``transform`` applied to the inputs reproduces the outputs.
    The local spatial bandwidth is invariant under this reduction.
    """
    x, y, z = float(p[0]), float(p[1]), float(p[2])
    vx, vy, vz = unit(v)

    R = math.sqrt(x * x + y * y + z * z)
    if R == 0.0:
        raise DegeneratePoint("observation point at the array origin")

    rho = math.hypot(x, y)
    if rho > 0.0:
        rot = math.remainder(0.5 * math.pi - math.atan2(y, x), 2.0 * math.pi)
        c, s = math.cos(rot), math.sin(rot)
        vx, vy = c * vx - s * vy, s * vx + c * vy
    else:
        rot = 0.0
    y_c = rho  # exact: the rotation sends (x, y) to (0, hypot(x, y))

    mirror = z < 0.0
    z_c = -z if mirror else z
    if mirror:
        vz = -vz

    if _distance_to_axis_segment(y_c, z_c, 0.5 * Ls) <= SEGMENT_TOL:
        raise DegeneratePoint("observation point intersects the transmit segment")

    placement = PolarPlacement(R=R, theta=math.atan2(z_c, y_c))
    return placement, (vx, vy, vz), CanonicalTransform(rot, mirror)


def geometry_angles(placement: PolarPlacement, Ls: float) -> GeometryAngles:
    """Compute (alpha, beta) for a canonical placement and transmit length.

    On the z-axis beyond the segment tip all arrival directions are
    parallel: alpha = 0 and beta = pi/2 (bandwidth is zero by convention).
    """
    if Ls <= 0.0:
        raise ValueError(f"Ls must be positive, got {Ls}")
    h = 0.5 * Ls
    y = placement.R * math.cos(placement.theta)
    z = placement.R * math.sin(placement.theta)
    if _distance_to_axis_segment(y, z, h) <= SEGMENT_TOL:
        raise DegeneratePoint("placement intersects the transmit segment")

    gamma_a = math.atan2(z - h, y)  # arrival angle from endpoint (0, 0, +h)
    gamma_b = math.atan2(z + h, y)  # arrival angle from endpoint (0, 0, -h)
    alpha = max(0.0, gamma_b - gamma_a)
    return GeometryAngles(alpha=alpha, beta=0.5 * (gamma_a + gamma_b))


def subtended_angle_oracle(
    P: Sequence[float], A: Sequence[float], B: Sequence[float]
) -> float:
    """Angle at P subtended by A and B, in [0, pi].

    Independent cross/dot construction used to validate geometry_angles.
    """
    ux, uy, uz = A[0] - P[0], A[1] - P[1], A[2] - P[2]
    wx, wy, wz = B[0] - P[0], B[1] - P[1], B[2] - P[2]
    if ux == uy == uz == 0.0 or wx == wy == wz == 0.0:
        raise DegeneratePoint("vertex coincides with an endpoint")
    dot = ux * wx + uy * wy + uz * wz
    cx = uy * wz - uz * wy
    cy = uz * wx - ux * wz
    cz = ux * wy - uy * wx
    return math.atan2(math.sqrt(cx * cx + cy * cy + cz * cz), dot)


def optimal_orientation(angles: GeometryAngles) -> Vec3:
    """Bandwidth-maximizing receive direction: in plane, perpendicular to the fan bisector."""
    if angles.alpha <= 0.0:
        raise DegenerateGeometry("subtended angle is zero; every orientation gives zero bandwidth")
    return (0.0, -math.sin(angles.beta), math.cos(angles.beta))
