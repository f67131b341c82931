"""Channel matrices, singular spectra, and EDoF estimates."""

import math

import numpy as np
import pytest

from nfdof import (
    ArraySegment,
    ChannelMatrix,
    PolarPlacement,
    antenna_grid,
    edof_quadratic,
    edof_threshold,
    geometry_angles,
    los_channel,
    optimal_orientation,
    singular_spectrum,
)
from nfdof.errors import AllZeroSpectrum, CoincidentAntennas, NonIntegerGrid

Z_AXIS = (0.0, 0.0, 1.0)


def tx_segment(Ls):
    return ArraySegment((0.0, 0.0, 0.0), Z_AXIS, Ls)


def build_channel(R, theta, Ls, Lp, spacing, v=None):
    placement = PolarPlacement(R, theta)
    if v is None:
        v = optimal_orientation(geometry_angles(placement, Ls))
    tx = antenna_grid(tx_segment(Ls), spacing)
    rx = antenna_grid(ArraySegment(placement.point(), v, Lp), spacing)
    return los_channel(tx, rx, 0.01)


class TestAntennaGrid:
    def test_half_wavelength_count(self):
        grid = antenna_grid(tx_segment(100.0), 0.5)
        assert grid.count == 201
        assert grid.positions.shape == (201, 3)

    def test_quarter_wavelength_count(self):
        assert antenna_grid(tx_segment(100.0), 0.25).count == 401

    def test_single_antenna(self):
        grid = antenna_grid(tx_segment(0.0), 0.5)
        assert grid.count == 1
        assert grid.positions[0] == pytest.approx((0.0, 0.0, 0.0))

    def test_symmetric_and_uniform(self):
        seg = ArraySegment((1.0, 2.0, 3.0), (0.0, 1.0, 0.0), 10.0)
        grid = antenna_grid(seg, 0.5)
        assert grid.positions.mean(axis=0) == pytest.approx((1.0, 2.0, 3.0))
        steps = np.diff(grid.positions, axis=0)
        assert steps == pytest.approx(np.tile([0.0, 0.5, 0.0], (20, 1)))
        assert grid.positions[0] == pytest.approx((1.0, -3.0, 3.0))
        assert grid.positions[-1] == pytest.approx((1.0, 7.0, 3.0))

    def test_non_integer_ratio_rejected(self):
        with pytest.raises(NonIntegerGrid):
            antenna_grid(tx_segment(100.0), 0.3)

    def test_non_positive_spacing_rejected(self):
        with pytest.raises(ValueError):
            antenna_grid(tx_segment(100.0), 0.0)


class TestLosChannel:
    def test_one_wavelength_distance(self):
        tx = antenna_grid(tx_segment(0.0), 0.5)
        rx = antenna_grid(ArraySegment((0.0, 1.0, 0.0), Z_AXIS, 0.0), 0.5)
        H = los_channel(tx, rx, 0.01)
        h = H.entries[0, 0]
        assert abs(h) == pytest.approx(1.0 / (4.0 * math.pi))
        assert np.angle(h) == pytest.approx(0.0, abs=1e-12)

    def test_far_single_pair(self):
        tx = antenna_grid(tx_segment(0.0), 0.5)
        rx = antenna_grid(ArraySegment((0.0, 500.0, 0.0), Z_AXIS, 0.0), 0.5)
        H = los_channel(tx, rx, 0.01)
        assert abs(H.entries[0, 0]) == pytest.approx(1.0 / (4.0 * math.pi * 500.0))
        assert np.angle(H.entries[0, 0]) == pytest.approx(0.0, abs=1e-9)

    def test_quarter_wave_phase(self):
        tx = antenna_grid(tx_segment(0.0), 0.5)
        rx = antenna_grid(ArraySegment((0.0, 500.25, 0.0), Z_AXIS, 0.0), 0.5)
        H = los_channel(tx, rx, 0.01)
        assert np.angle(H.entries[0, 0]) == pytest.approx(0.5 * math.pi, abs=1e-9)

    def test_shape_and_finiteness(self):
        H = build_channel(60.0, 0.3, 16.0, 12.0, 0.5)
        assert H.entries.shape == (25, 33)  # rx rows, tx columns
        assert np.isfinite(H.entries).all()
        assert (np.abs(H.entries) > 0.0).all()

    def test_coincident_antennas_rejected(self):
        tx = antenna_grid(tx_segment(2.0), 0.5)
        rx = antenna_grid(ArraySegment((0.0, 0.0, 0.0), (0.0, 1.0, 0.0), 2.0), 0.5)
        with pytest.raises(CoincidentAntennas):
            los_channel(tx, rx, 0.01)


class TestSingularSpectrum:
    def test_diagonal(self):
        H = ChannelMatrix(entries=np.diag([3.0, 1.0, 2.0]).astype(complex), lambda_m=0.01)
        s = singular_spectrum(H)
        assert s.values == pytest.approx([3.0, 2.0, 1.0])
        assert s.normalized == pytest.approx([1.0, 2.0 / 3.0, 1.0 / 3.0])

    def test_rank_one(self):
        rng = np.random.default_rng(51)
        u = rng.normal(size=4) + 1j * rng.normal(size=4)
        v = rng.normal(size=6) + 1j * rng.normal(size=6)
        H = ChannelMatrix(entries=np.outer(u, v.conj()), lambda_m=0.01)
        s = singular_spectrum(H)
        top = np.linalg.norm(u) * np.linalg.norm(v)
        assert s.values[0] == pytest.approx(top, rel=1e-12)
        # zeros resolve only to the Gram noise floor ~ sqrt(eps) * sigma_1
        assert s.values[1:] == pytest.approx(np.zeros(3), abs=1e-7 * top)

    def test_matches_reference_svd(self):
        rng = np.random.default_rng(52)
        for _ in range(20):
            A = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
            s = singular_spectrum(ChannelMatrix(entries=A, lambda_m=0.01))
            ref = np.linalg.svd(A, compute_uv=False)
            assert s.values == pytest.approx(ref, rel=1e-9, abs=1e-9)

    def test_energy_identity(self):
        H = build_channel(80.0, 0.4, 20.0, 20.0, 0.5)
        s = singular_spectrum(H)
        assert np.sum(s.values**2) == pytest.approx(
            np.linalg.norm(H.entries) ** 2, rel=1e-9
        )

    def test_rectangular_uses_smaller_gram(self):
        rng = np.random.default_rng(53)
        A = rng.normal(size=(3, 9)) + 1j * rng.normal(size=(3, 9))
        s = singular_spectrum(ChannelMatrix(entries=A, lambda_m=0.01))
        assert len(s.values) == 3
        assert s.values == pytest.approx(np.linalg.svd(A, compute_uv=False), rel=1e-9)

    def test_non_finite_rejected(self):
        H = ChannelMatrix(entries=np.array([[np.inf + 0j]]), lambda_m=0.01)
        with pytest.raises(ValueError):
            singular_spectrum(H)


class TestEdof:
    def _spectrum(self, values):
        values = np.asarray(values, dtype=float)
        return singular_spectrum(
            ChannelMatrix(entries=np.diag(values).astype(complex), lambda_m=0.01)
        )

    def test_threshold_basic(self):
        s = self._spectrum([1.0, 1.0, 1e-6])
        assert edof_threshold(s, 0.5) == 2

    def test_threshold_all_equal(self):
        s = self._spectrum([2.0] * 7)
        for tau in (0.05, 0.5, 0.99):
            assert edof_threshold(s, tau) == 7

    def test_threshold_domain(self):
        s = self._spectrum([1.0])
        with pytest.raises(ValueError):
            edof_threshold(s, 0.0)
        with pytest.raises(ValueError):
            edof_threshold(s, 1.0)

    def test_quadratic_equal_values(self):
        assert edof_quadratic(self._spectrum([3.0] * 5)) == pytest.approx(5.0)

    def test_quadratic_single_value(self):
        assert edof_quadratic(self._spectrum([2.0, 0.0, 0.0])) == pytest.approx(1.0)

    def test_quadratic_near_two(self):
        assert edof_quadratic(self._spectrum([1.0, 1.0, 0.01])) == pytest.approx(
            2.0002, abs=1e-4
        )

    def test_quadratic_all_zero_rejected(self):
        with pytest.raises(AllZeroSpectrum):
            edof_quadratic(self._spectrum([0.0, 0.0]))


class TestPipelineProperties:
    def test_amplitude_scale_invariance(self):
        a = build_channel(60.0, 0.2, 16.0, 16.0, 0.5)
        b = ChannelMatrix(entries=a.entries, lambda_m=0.12345)
        sa, sb = singular_spectrum(a), singular_spectrum(b)
        assert sa.normalized == pytest.approx(sb.normalized, abs=1e-12)

    def test_spacing_invariance_small_arrays(self):
        # halving the spacing must not move the spectrum knee
        for theta in (0.0, math.pi / 6.0):
            e = {}
            for spacing in (0.5, 0.25):
                s = singular_spectrum(build_channel(60.0, theta, 16.0, 16.0, spacing))
                e[spacing] = edof_threshold(s, 0.1)
            assert abs(e[0.5] - e[0.25]) <= 1

    def test_tilt_monotonicity_small_arrays(self):
        edofs = []
        quads = []
        for theta in (0.0, math.pi / 6.0, math.pi / 3.0):
            s = singular_spectrum(build_channel(60.0, theta, 16.0, 16.0, 0.5))
            edofs.append(edof_threshold(s, 0.1))
            quads.append(edof_quadratic(s))
        assert edofs[0] >= edofs[1] >= edofs[2]
        assert quads[0] > quads[1] > quads[2]

    def test_spectra_non_increasing(self):
        s = singular_spectrum(build_channel(90.0, 0.5, 16.0, 16.0, 0.5))
        assert (np.diff(s.values) <= 1e-12).all()
        assert s.normalized[0] == pytest.approx(1.0)
