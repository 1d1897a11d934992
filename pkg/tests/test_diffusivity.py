import tempfile
import unittest
from pathlib import Path

import numpy as np
from hypothesis import assume, given, settings, strategies as st
from scipy.integrate import simpson

from meyerbhcp.diffusivity import (
    AffineProfile, Rational100ExpProfile, TabulatedProfile, kappa_eval, load_tabulated_csv, mu, profile_from_spec)
from meyerbhcp.errors import DomainError


class AffineProfileTest(unittest.TestCase):

    def test_mu_closed_form(self):
        p = AffineProfile(horizon=1.0, slope=2.0, intercept=1.0)
        self.assertAlmostEqual(mu(p, 0.0).value, 2.0)
        self.assertAlmostEqual(mu(p, 0.5).value, 1.25)
        self.assertEqual(mu(p, 1.0).value, 0.0)

    def test_mu_to_intermediate_time(self):
        p = AffineProfile(horizon=1.0, slope=2.0, intercept=1.0)
        self.assertAlmostEqual(mu(p, 0.0, 0.5).value, 0.75)

    def test_kappa_eval(self):
        p = AffineProfile(horizon=1.0, slope=200.0, intercept=1.0)
        self.assertEqual(kappa_eval(p, 0.0), 1.0)
        self.assertEqual(kappa_eval(p, 1.0), 201.0)

    def test_out_of_range(self):
        p = AffineProfile(horizon=1.0)
        with self.assertRaises(DomainError):
            kappa_eval(p, 1.5)
        with self.assertRaises(DomainError):
            mu(p, -0.1)
        with self.assertRaises(DomainError):
            mu(p, 0.8, 0.5)

    def test_rejects_non_positive(self):
        with self.assertRaises(DomainError):
            AffineProfile(horizon=1.0, slope=-2.0, intercept=1.0)
        with self.assertRaises(DomainError):
            AffineProfile(horizon=0.0)

    def test_spec_round_trip(self):
        p = AffineProfile(horizon=1.0, slope=2.0, intercept=1.0)
        self.assertEqual(profile_from_spec(p.spec(), 1.0), p)


class Rational100ExpProfileTest(unittest.TestCase):

    def test_mu_value(self):
        p = Rational100ExpProfile(horizon=1.0)
        self.assertAlmostEqual(mu(p, 0.0).value, 0.009856, delta=2e-6)

    def test_mu_against_simpson(self):
        p = Rational100ExpProfile(horizon=1.0)
        t = np.linspace(0.0, 1.0, 2001)
        self.assertAlmostEqual(mu(p, 0.0).value, simpson(p.kappa_unchecked(t), x=t), places=12)

    def test_reports_error_estimate(self):
        value = mu(Rational100ExpProfile(horizon=1.0), 0.25)
        self.assertLessEqual(value.estimated_quadrature_error, 1e-12)

    @settings(max_examples=30, deadline=None)
    @given(t=st.floats(0.0, 1.0), s=st.floats(0.0, 1.0))
    def test_additive(self, t, s):
        t, s = min(t, s), max(t, s)
        p = Rational100ExpProfile(horizon=1.0)
        self.assertAlmostEqual(mu(p, t).value, mu(p, t, s).value + mu(p, s).value, places=12)

    def test_from_spec(self):
        self.assertIsInstance(profile_from_spec('rational100exp', 1.0), Rational100ExpProfile)
        with self.assertRaises(DomainError):
            profile_from_spec('cubic:1,2', 1.0)
        with self.assertRaises(DomainError):
            profile_from_spec('affine:1', 1.0)


class TabulatedProfileTest(unittest.TestCase):

    def write_csv(self, text: str) -> Path:
        directory = Path(tempfile.mkdtemp())
        path = directory / 'kappa.csv'
        path.write_text(text)
        return path

    def test_linear_knots_reproduce_affine(self):
        path = self.write_csv('t,kappa\n0,1\n0.5,2\n1,3\n')
        p = load_tabulated_csv(path, horizon=1.0)
        self.assertAlmostEqual(mu(p, 0.0).value, 2.0, places=10)
        self.assertAlmostEqual(kappa_eval(p, 0.25), 1.5, places=12)
        self.assertEqual(p.spec(), f'file:{path}')

    def test_from_spec(self):
        path = self.write_csv('t,kappa\n0,1\n1,1\n')
        p = profile_from_spec(f'file:{path}', 1.0)
        self.assertAlmostEqual(mu(p, 0.0).value, 1.0, places=12)

    def test_malformed_row(self):
        path = self.write_csv('t,kappa\n0,1\n0.5,oops\n1,3\n')
        with self.assertRaisesRegex(DomainError, ':3:'):
            load_tabulated_csv(path, horizon=1.0)

    def test_missing_file(self):
        with self.assertRaises(DomainError):
            load_tabulated_csv(Path(tempfile.mkdtemp()) / 'absent.csv', horizon=1.0)

    def test_knots_must_cover_horizon(self):
        with self.assertRaises(DomainError):
            TabulatedProfile(horizon=2.0, times=(0.0, 1.0), values=(1.0, 1.0))

    def test_large_diffusivity_table(self):
        path = self.write_csv('t,kappa\n0,200\n0.5,250\n1,300\n')
        p = profile_from_spec(f'file:{path}', 1.0)
        self.assertAlmostEqual(mu(p, 0.0).value, 250.0, places=8)
        self.assertAlmostEqual(mu(p, 0.5).value, 137.5, places=8)

    def test_rejects_non_positive_knot(self):
        with self.assertRaises(DomainError):
            TabulatedProfile(horizon=1.0, times=(0.0, 1.0), values=(1.0, 0.0))


class MuPropertiesTest(unittest.TestCase):
    """Checked on every kind of profile, including a tabulated one with kappa in the hundreds."""

    PROFILES = (
        AffineProfile(horizon=1.0, slope=2.0, intercept=1.0),
        AffineProfile(horizon=1.0, slope=400.0, intercept=1.0),
        Rational100ExpProfile(horizon=1.0),
        TabulatedProfile(horizon=1.0, times=(0.0, 0.3, 1.0), values=(200.0, 230.0, 300.0)),
    )

    @settings(max_examples=40, deadline=None)
    @given(t=st.floats(0.0, 1.0), s=st.floats(0.0, 1.0))
    def test_strictly_decreasing_in_t(self, t, s):
        assume(abs(s - t) > 1e-6)
        t, s = min(t, s), max(t, s)
        for p in self.PROFILES:
            self.assertGreater(mu(p, t).value, mu(p, s).value, p)

    @settings(max_examples=40, deadline=None)
    @given(t=st.floats(0.0, 0.99))
    def test_bounded_by_extreme_diffusivities(self, t):
        samples = np.linspace(t, 1.0, 2001)
        for p in self.PROFILES:
            kappa = np.array([kappa_eval(p, x) for x in samples])
            value = mu(p, t).value
            slack = 1e-12 * value
            self.assertLessEqual((1.0 - t) * kappa.min(), value + slack, p)
            self.assertLessEqual(value, (1.0 - t) * kappa.max() + slack, p)

    def test_derivative_is_diffusivity(self):
        step = 1e-5
        for p in self.PROFILES:
            for t in np.linspace(0.005, 0.995, 100):
                t = float(t)
                derivative = (mu(p, 0.0, t + step).value - mu(p, 0.0, t - step).value) / (2 * step)
                kappa = kappa_eval(p, t)
                self.assertAlmostEqual(derivative / kappa, 1.0, delta=1e-5, msg=f'{p} at t={t}')


if __name__ == '__main__':
    unittest.main()
