"""Local spatial bandwidth of a line source observed along a direction.

The spatial frequency of the wave arriving at ``p`` from a source point
``s``, measured along the receive direction ``v``, is ``K0 * r_hat . v``
with ``r_hat = (p - s)/|p - s|``.  The local bandwidth is the spread
(max minus min) of that frequency over all source points.  For a linear
transmit segment the spread has an exact piecewise closed form in the
orientation angles (psi, phi') and the subtended angle alpha; the
brute-force discretization of the definition is kept alongside as an
oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegeneratePoint
from .geometry import K0, Vec3, canonicalize, geometry_angles, unit

_BRANCH_SNAP = 1e-12
"Snap width onto the branch boundaries phi' = alpha/2 and pi - alpha/2."

DEFAULT_ORACLE_SAMPLES = 100_000


@dataclass(frozen=True)
class OrientationAngles:
    """Receive direction in spherical form: v = (cos psi, sin psi cos phi, sin psi sin phi)."""

    psi: float
    phi: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.psi <= math.pi:
            raise ValueError(f"psi must lie in [0, pi], got {self.psi}")
        if not 0.0 <= self.phi <= math.pi:
            raise ValueError(f"phi must lie in [0, pi], got {self.phi}")

    def vector(self) -> Vec3:
        sp = math.sin(self.psi)
        return (math.cos(self.psi), sp * math.cos(self.phi), sp * math.sin(self.phi))


def orientation_angles(v: Sequence[float]) -> OrientationAngles:
    """Recover (psi, phi) from a direction vector.

    phi is reduced modulo pi (the bandwidth is pi-periodic in phi); when
    sin(psi) = 0 the azimuth is undefined and phi = 0 is returned.
    """
    vx, vy, vz = unit(v)
    psi = math.acos(min(1.0, max(-1.0, vx)))
    if math.sin(psi) == 0.0:
        return OrientationAngles(psi=psi, phi=0.0)
    phi = math.atan2(vz, vy)
    if phi < 0.0:
        phi += math.pi
    if phi >= math.pi:
        phi -= math.pi
    return OrientationAngles(psi=psi, phi=phi)


def reduce_phi_prime(phi: float, beta: float) -> float:
    """Map phi - beta into [0, pi)."""
    t = math.fmod(phi - beta, math.pi)
    if t < 0.0:
        t += math.pi
    if t >= math.pi:
        t = 0.0
    return t


def spatial_frequency(p: Sequence[float], s: Sequence[float], v: Sequence[float]) -> float:
    """Spatial frequency K0 * ((p - s)/|p - s|) . v, in [-K0, K0]."""
    vx, vy, vz = unit(v)
    rx, ry, rz = p[0] - s[0], p[1] - s[1], p[2] - s[2]
    n = math.sqrt(rx * rx + ry * ry + rz * rz)
    if n == 0.0:
        raise DegeneratePoint("observation point coincides with the source point")
    return K0 * (rx * vx + ry * vy + rz * vz) / n


def fmax_fmin(psi: float, phi_prime: float, alpha: float) -> tuple[float, float]:
    """Extreme spatial frequencies over the arrival fan, for orientation (psi, phi').

    The fan angle gamma ranges over [-alpha/2, alpha/2] relative to the
    bisector; the frequency is K0 sin(psi) cos(gamma - phi').
    """
    s = math.sin(psi)
    half = 0.5 * alpha
    fmax = K0 * s if phi_prime <= half else K0 * s * math.cos(phi_prime - half)
    fmin = -K0 * s if phi_prime >= math.pi - half else K0 * s * math.cos(phi_prime + half)
    return fmax, fmin


def omega_from_angles(psi: float, phi_prime: float, alpha: float) -> float:
    """Closed-form local bandwidth for orientation (psi, phi') and fan width alpha.

    Three branches, continuous across phi' = alpha/2 and pi - alpha/2;
    phi' values within _BRANCH_SNAP of a boundary are snapped onto it.
    Total on psi in [0, pi], phi' in [0, pi], alpha in [0, pi).
    """
    s = math.sin(psi)
    half = 0.5 * alpha
    if abs(phi_prime - half) < _BRANCH_SNAP:
        phi_prime = half
    elif abs(phi_prime - (math.pi - half)) < _BRANCH_SNAP:
        phi_prime = math.pi - half
    if phi_prime <= half:
        return K0 * s * (1.0 - math.cos(half + phi_prime))
    if phi_prime < math.pi - half:
        return 2.0 * K0 * s * math.sin(half) * math.sin(phi_prime)
    return K0 * s * (1.0 + math.cos(half - phi_prime))


def omega_profile(phi_prime: np.ndarray, alpha: float) -> np.ndarray:
    """Vectorized in-plane bandwidth profile omega(pi/2, phi'; alpha), over k0-included units.

    The closed form factorizes as sin(psi) times this profile, so grids
    over (psi, phi') reduce to an outer product (see omega_grid).
    """
    pp = np.asarray(phi_prime, dtype=float)
    half = 0.5 * alpha
    low = pp <= half
    high = pp >= math.pi - half
    mid = ~(low | high)
    out = np.empty_like(pp)
    out[low] = K0 * (1.0 - np.cos(half + pp[low]))
    out[mid] = 2.0 * K0 * math.sin(half) * np.sin(pp[mid])
    out[high] = K0 * (1.0 + np.cos(half - pp[high]))
    return out


def omega_grid(psi: np.ndarray, phi_prime: np.ndarray, alpha: float) -> np.ndarray:
    """Closed-form bandwidth on the tensor grid psi x phi', shape (len(psi), len(phi'))."""
    return np.outer(np.sin(np.asarray(psi, dtype=float)), omega_profile(phi_prime, alpha))


def local_bandwidth_closed(p: Sequence[float], v: Sequence[float], Ls: float) -> float:
    """Closed-form local bandwidth at point ``p`` for receive direction ``v``.

    The placement is first reduced to the canonical frame; degenerate
    collinear placements (zero fan) return 0 rather than raising.
    """
    placement, v_c, _ = canonicalize(p, v, Ls=Ls)
    ang = geometry_angles(placement, Ls)
    if ang.alpha == 0.0:
        return 0.0
    psi = math.acos(min(1.0, max(-1.0, v_c[0])))
    if math.sin(psi) == 0.0:
        return 0.0
    phi = math.atan2(v_c[2], v_c[1])
    return omega_from_angles(psi, reduce_phi_prime(phi, ang.beta), ang.alpha)


def local_bandwidth_oracle(
    p: Sequence[float],
    v: Sequence[float],
    Ls: float,
    n_samples: int = DEFAULT_ORACLE_SAMPLES,
) -> float:
    """Brute-force bandwidth: max minus min spatial frequency over sampled sources.

    Samples ``n_samples`` points uniformly on the transmit segment,
    endpoints included.  Discretization error is bounded by
    2*K0*alpha/n_samples; n_samples = 2 gives the two-endpoint fan,
    a lower bound on the true bandwidth.
    """
    if n_samples < 2:
        raise ValueError(f"n_samples must be >= 2, got {n_samples}")
    vx, vy, vz = unit(v)
    px, py, pz = float(p[0]), float(p[1]), float(p[2])
    sz = np.linspace(-0.5 * Ls, 0.5 * Ls, n_samples)
    rz = pz - sz
    norms = np.sqrt(px * px + py * py + rz * rz)
    if not norms.all():
        raise DegeneratePoint("a source sample coincides with the observation point")
    f = K0 * (px * vx + py * vy + rz * vz) / norms
    return float(f.max() - f.min())


def max_bandwidth(alpha: float) -> float:
    """Largest local bandwidth over all orientations: 2*K0*sin(alpha/2).

    Attained exactly at (psi, phi') = (pi/2, pi/2), i.e. the in-plane
    direction perpendicular to the fan bisector; the two outer branch
    maxima K0*(1 - cos alpha) never exceed it.
    """
    if not 0.0 <= alpha < math.pi:
        raise ValueError(f"alpha must lie in [0, pi), got {alpha}")
    return 2.0 * K0 * math.sin(0.5 * alpha)
