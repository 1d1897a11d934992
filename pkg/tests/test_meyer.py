import math
import unittest

import numpy as np
from hypothesis import given, strategies as st

from meyerbhcp.errors import DomainError
from meyerbhcp.grid import RealField, UniformGrid, forward_transform, inverse_transform, spectral_derivative
from meyerbhcp.meyer import (
    PASSBAND_EDGE, STOPBAND_EDGE, MeyerLevel, SpectralMultiplier, apply_projection, aux_poly,
    detail_multiplier, high_pass_multiplier, projection_multiplier, scaling_hat, wavelet_hat_magnitude)

from .utils.fields import random_field, sine_grid


def passband_mask(grid, J):
    inside = np.ones(grid.shape, dtype=bool)
    for omega in grid.frequencies():
        inside = inside & (np.abs(omega) <= PASSBAND_EDGE * 2 ** J)
    return inside


def stopband_mask(grid, J):
    """Some |omega_i| >= (4 pi / 3) 2^J, i.e. outside the next passband cube."""
    outside = np.zeros(grid.shape, dtype=bool)
    for omega in grid.frequencies():
        outside = outside | (np.abs(omega) >= STOPBAND_EDGE * 2 ** J)
    return outside


class MeyerFunctionsTest(unittest.TestCase):

    def test_aux_poly_end_points(self):
        self.assertEqual(aux_poly(0.0), 0.0)
        self.assertEqual(aux_poly(1.0), 1.0)
        self.assertEqual(aux_poly(-3.0), 0.0)
        self.assertEqual(aux_poly(7.0), 1.0)

    @given(x=st.floats(0.0, 1.0))
    def test_aux_poly_symmetry(self, x):
        self.assertAlmostEqual(aux_poly(x) + aux_poly(1.0 - x), 1.0, places=12)

    def test_scaling_hat_values(self):
        self.assertEqual(scaling_hat(0.0), 1.0)
        self.assertEqual(scaling_hat(PASSBAND_EDGE), 1.0)
        self.assertEqual(scaling_hat(STOPBAND_EDGE), 0.0)
        self.assertEqual(scaling_hat(-10.0), 0.0)
        self.assertAlmostEqual(scaling_hat(math.pi), math.cos(math.pi / 4), places=12)

    def test_partition_of_unity(self):
        omega = np.linspace(-STOPBAND_EDGE, STOPBAND_EDGE, 4001)
        total = scaling_hat(omega) ** 2 + wavelet_hat_magnitude(omega) ** 2
        np.testing.assert_allclose(total, 1.0, atol=1e-12)

    def test_integer_translates_are_orthonormal(self):
        # Only k in {-1, 0, 1} reach the support for |omega| <= pi.
        omega = np.linspace(-math.pi, math.pi, 4001)
        total = sum(scaling_hat(omega + 2 * math.pi * k) ** 2 for k in range(-2, 3))
        np.testing.assert_allclose(total, 1.0, atol=1e-12)

    def test_two_scale_identity(self):
        omega = np.linspace(-4 * STOPBAND_EDGE, 4 * STOPBAND_EDGE, 8001)
        total = scaling_hat(omega) ** 2 + wavelet_hat_magnitude(omega) ** 2
        np.testing.assert_allclose(total, scaling_hat(omega / 2) ** 2, atol=1e-12)

    def test_level_validation(self):
        with self.assertRaises(DomainError):
            MeyerLevel(-1)
        with self.assertRaises(DomainError):
            MeyerLevel(1.5)
        with self.assertRaises(DomainError):
            MeyerLevel(2, frequency_unit=0.0)

    def test_level_edges(self):
        level = MeyerLevel(3, frequency_unit=3 / (16 * math.pi))
        self.assertAlmostEqual(level.passband_edge, 1.0, places=14)
        self.assertAlmostEqual(level.stopband_edge, 2.0, places=14)


class ProjectionTest(unittest.TestCase):

    def test_support_exactness_1d(self):
        grid = sine_grid(1024)
        for J in range(7):
            gains = projection_multiplier(grid, J).gains
            self.assertTrue(np.all(gains[passband_mask(grid, J)] == 1.0), f'J={J}')
            self.assertTrue(np.all(gains[stopband_mask(grid, J)] == 0.0), f'J={J}')

    def test_support_exactness_2d(self):
        grid = sine_grid(128, dim=2)
        for J in range(7):
            gains = projection_multiplier(grid, J).gains
            self.assertTrue(np.all(gains[passband_mask(grid, J)] == 1.0), f'J={J}')
            self.assertTrue(np.all(gains[stopband_mask(grid, J)] == 0.0), f'J={J}')

    def test_gains_even_in_frequency(self):
        grid = sine_grid(64)
        gains = projection_multiplier(grid, 3).gains
        # Storage order: index -k is (n - k) mod n; the Nyquist index has no partner.
        np.testing.assert_array_equal(gains[1:32], gains[:32:-1])

    def test_idempotent_outside_transition_band(self):
        grid = sine_grid(256)
        p = projection_multiplier(grid, 2).gains
        transition = ~passband_mask(grid, 2) & ~stopband_mask(grid, 2)
        np.testing.assert_array_equal((p * p)[~transition], p[~transition])
        self.assertTrue(np.any((p * p)[transition] < p[transition]))

    def test_projection_keeps_passband_mode(self):
        f = RealField.from_function(sine_grid(256), lambda x: np.sin(x) + np.sin(40 * x))
        projected = inverse_transform(apply_projection(forward_transform(f), 0))
        x, = f.grid.coordinates()
        np.testing.assert_allclose(projected.values, np.sin(x), atol=1e-12)

    def test_high_pass_is_complement_of_closed_box(self):
        grid = sine_grid(256)
        gains = high_pass_multiplier(grid, 2).gains
        inside = passband_mask(grid, 2)
        self.assertTrue(np.all(gains[inside] == 0.0))
        self.assertTrue(np.all(gains[~inside] == 1.0))

    def test_detail_multiplier_support(self):
        grid = sine_grid(512, dim=1)
        for J in range(5):
            gains = detail_multiplier(grid, J).gains
            self.assertTrue(np.all(gains[passband_mask(grid, J)] == 0.0))
            self.assertTrue(np.all(gains[stopband_mask(grid, J + 1)] == 0.0))
            self.assertTrue(np.all((gains >= 0.0) & (gains <= 1.0)))
            self.assertTrue(np.any(gains > 0.0))

    def test_derivative_bounded_by_stopband_edge(self):
        for seed in range(50):
            dim = 1 + seed % 2
            grid = UniformGrid.cube(-3.0, 5.0, 128 if dim == 1 else 32, dim=dim)
            J = seed % 3 if dim == 1 else seed % 2
            noise = random_field(grid, seed)
            f = inverse_transform(apply_projection(forward_transform(noise), J))
            for axis in range(dim):
                derivative = spectral_derivative(f, axis=axis)
                self.assertLessEqual(derivative.l2_norm(), STOPBAND_EDGE * 2 ** J * f.l2_norm() * (1 + 1e-12),
                                     f'seed={seed}, J={J}, axis={axis}')

    def test_multiplier_range_checked(self):
        grid = sine_grid(8)
        with self.assertRaises(DomainError):
            SpectralMultiplier(grid, np.full(8, 1.5))

    def test_warns_when_passband_exceeds_nyquist(self):
        with self.assertLogs('meyerbhcp.meyer', level='WARNING') as logs:
            projection_multiplier(sine_grid(8), 3)
        self.assertIn('passband', logs.output[0])


if __name__ == '__main__':
    unittest.main()
