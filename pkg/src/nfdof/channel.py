"""Near-field line-of-sight channel matrices and their singular spectra.

Antennas are placed on uniform grids along each array segment; the gain
between a transmit/receive pair at distance r (wavelengths) is
``exp(j * 2*pi * r) / (4*pi*r)``: the free-space amplitude ``lambda/(4*pi*r_m)``
expressed in wavelength units, where the physical wavelength cancels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AllZeroSpectrum, CoincidentAntennas, NonIntegerGrid
from .geometry import ArraySegment
from .numerics import hermitian_eigenvalues

GRID_INTEGRALITY_TOL = 1e-9


@dataclass(frozen=True)
class AntennaGrid:
    """Uniformly spaced antenna positions along a segment, endpoints included."""

    positions: np.ndarray  # (count, 3), wavelengths
    spacing: float
    count: int


@dataclass(frozen=True)
class ChannelMatrix:
    """Dense complex LoS gain matrix, receive antennas on rows."""

    entries: np.ndarray  # (n_rx, n_tx) complex
    lambda_m: float  # physical wavelength in meters; amplitude bookkeeping only


@dataclass(frozen=True)
class SingularSpectrum:
    values: np.ndarray  # descending, >= 0
    normalized: np.ndarray  # values / values[0] (zeros if the matrix is zero)


def antenna_grid(segment: ArraySegment, spacing: float) -> AntennaGrid:
    """Place length/spacing + 1 antennas on the segment, symmetric about its center."""
    if spacing <= 0.0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    ratio = segment.length / spacing
    steps = round(ratio)
    if abs(ratio - steps) > GRID_INTEGRALITY_TOL:
        raise NonIntegerGrid(
            f"length {segment.length} is not an integer multiple of spacing {spacing}"
        )
    count = steps + 1
    offsets = (np.arange(count) - 0.5 * steps) * spacing
    positions = np.asarray(segment.center) + offsets[:, None] * np.asarray(segment.direction)
    return AntennaGrid(positions=positions, spacing=spacing, count=count)


def los_channel(tx: AntennaGrid, rx: AntennaGrid, lambda_m: float) -> ChannelMatrix:
    """Spherical-wave LoS channel between two antenna grids.

    The phase 2*pi*r is computed from the fractional part of r (in
    wavelengths) so that no precision is lost at large link distances.
    """
    if lambda_m <= 0.0:
        raise ValueError(f"lambda_m must be positive, got {lambda_m}")
    diff = rx.positions[:, None, :] - tx.positions[None, :, :]
    r = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    if not r.all():
        raise CoincidentAntennas("a transmit and a receive antenna coincide")
    phase = 2.0 * math.pi * (r - np.floor(r))
    entries = np.exp(1j * phase) / (4.0 * math.pi * r)
    return ChannelMatrix(entries=entries, lambda_m=lambda_m)


def singular_spectrum(H: ChannelMatrix) -> SingularSpectrum:
    """All singular values of the channel, descending, with the normalized copy.

    Computed as square roots of the eigenvalues of the smaller Gram matrix
    (H^H H or H H^H); accurate to roughly sqrt(machine epsilon) relative to
    the largest value, which is far below the thresholds used on these
    plateau-and-cliff spectra.
    """
    A = H.entries
    if not np.isfinite(A).all():
        raise ValueError("channel matrix has non-finite entries")
    if A.shape[0] <= A.shape[1]:
        gram = A @ A.conj().T
    else:
        gram = A.conj().T @ A
    eig = hermitian_eigenvalues(gram)
    values = np.sqrt(np.maximum(eig, 0.0))
    top = values[0] if values.size else 0.0
    normalized = values / top if top > 0.0 else np.zeros_like(values)
    return SingularSpectrum(values=values, normalized=normalized)


def edof_threshold(spectrum: SingularSpectrum, tau: float = 0.1) -> int:
    """Count of normalized singular values at or above tau, for tau in (0, 1)."""
    if not 0.0 < tau < 1.0:
        raise ValueError(f"tau must lie in (0, 1), got {tau}")
    return int(np.count_nonzero(spectrum.normalized >= tau))


def edof_quadratic(spectrum: SingularSpectrum) -> float:
    """Threshold-free effective rank (sum s^2)^2 / sum s^4, in [1, #nonzero]."""
    s2 = float(np.sum(spectrum.values**2))
    if s2 == 0.0:
        raise AllZeroSpectrum("all singular values are zero")
    s4 = float(np.sum(spectrum.values**4))
    return s2 * s2 / s4
