import numpy as np
import pytest
from scipy.integrate import quad

import fano_medium as fm
from fano_medium import bath_oracle as bo
from fano_medium import fano_single as fs
from fano_medium.errors import (
    AssumptionViolationError,
    DomainError,
    PassivityError,
    PoleProximityError,
)
from fano_medium.medium import FrequencyGrid, composite_grid

from conftest import K_SINGLE, max_ulp


def pv_odd_scipy(spec, om):
    """scipy oracle for P int_0^inf S(w) [1/(w-om) + 1/(w+om)] dw = -T(om)."""
    def S(w):
        return spec._eval_analytic(np.abs(np.atleast_1d(w)))[0]

    v1, _ = quad(lambda w: S(w), 0, 2 * om, weight="cauchy", wvar=om,
                 limit=600, epsabs=1e-13, epsrel=1e-13)
    c = spec.params[0]
    v2, _ = quad(lambda w: S(w) / (w - om), 2 * om, 400,
                 points=[p for p in (c - 0.2, c, c + 0.2) if 2 * om < p < 400],
                 limit=1200, epsabs=1e-13, epsrel=1e-13)
    v3, _ = quad(lambda w: S(w) / (w + om), 0, 400,
                 points=[c - 0.2, c, c + 0.2], limit=1200,
                 epsabs=1e-13, epsrel=1e-13)
    tail, _ = quad(lambda u: S(1.0 / u) * 2.0 / (u * (1.0 - om * om * u * u)),
                   1e-12, 1 / 400.0, limit=300, epsabs=1e-15)
    return v1 + v2 + v3 + tail


class TestZFunction:
    def test_empty_reservoir(self):
        spec = fm.CouplingSpectrum.lorentzian(1.0, 0.1, 0.0)
        assert fs.z_function(spec, 1.0, 0.7) == 1.0

    def test_plemelj_imaginary_part(self, spec_f):
        # Im z = (pi / 2 omega_k) V^2 = (pi/2) S with V^2 = omega_k S
        for om in (0.6, 1.2, 2.4):
            z = fs.z_function(spec_f, K_SINGLE, om)
            assert z.imag == pytest.approx(0.5 * np.pi * spec_f(om), rel=1e-14)

    def test_real_part_against_scipy(self, spec_f):
        # z = 1 + (T_S + i pi S)/2 with T_S = -pv_odd
        for om in (0.45, 1.2, 3.1):
            z = fs.z_function(spec_f, K_SINGLE, om)
            ref = 1.0 - 0.5 * pv_odd_scipy(spec_f, om)
            assert z.real == pytest.approx(ref, abs=1e-10)

    def test_k_validation(self, spec_f):
        with pytest.raises(DomainError):
            fs.z_function(spec_f, -1.0, 0.5)


class TestSingleCoeffs:
    def test_beta_vanishes_at_omega_k(self, spec_f):
        grid = FrequencyGrid(np.array([0.5, K_SINGLE, 2.0]))
        coeffs = fs.single_coeffs(spec_f, K_SINGLE, grid)
        assert coeffs.beta0_t[1] == 0.0
        assert coeffs.alpha0_t[1] != 0.0

    def test_zero_coupling_tables_vanish(self, grid_single):
        spec = fm.CouplingSpectrum.lorentzian(1.0, 0.1, 0.0)
        coeffs = fs.single_coeffs(spec, 1.3, grid_single)
        assert np.all(coeffs.alpha0_t == 0.0)
        assert np.all(coeffs.beta0_t == 0.0)

    def test_ratio_law_pointwise(self, coeffs_single, grid_single):
        om = grid_single.points
        lhs = coeffs_single.beta0_t * (om + K_SINGLE)
        rhs = coeffs_single.alpha0_t * (om - K_SINGLE)
        assert max_ulp(lhs.real, rhs.real) <= 4.0
        assert max_ulp(lhs.imag, rhs.imag) <= 4.0

    def test_sum_rule(self, coeffs_single):
        assert fs.sum_rule(coeffs_single) == pytest.approx(1.0, abs=1e-3)

    def test_sum_rule_improves_under_refinement(self, spec_f):
        foci = fs.resonance_foci(spec_f, K_SINGLE, 1e-3, 50.0)
        defects = []
        for n in (500, 1000, 2000):
            grid = composite_grid(1e-3, 50.0, n, foci=foci)
            defects.append(abs(fs.sum_rule(fs.single_coeffs(spec_f, K_SINGLE, grid)) - 1))
        assert defects[0] > defects[1] > defects[2]

    def test_flat_band_rejected_for_diagonalization(self, grid_single):
        spec = fm.CouplingSpectrum.flat_band(1.0, 2.0, 0.5)
        with pytest.raises(AssumptionViolationError):
            fs.single_coeffs(spec, 1.0, grid_single)


class TestKernelCoeffs:
    def test_zero_coupling(self):
        spec = fm.CouplingSpectrum.lorentzian(1.0, 0.1, 0.0)
        a, b = fs.kernel_coeffs(spec, 1.0, 2.0, 0.5)
        assert a == 0.0 and b == 0.0
        assert fs.kernel_delta_coefficient(spec, 1.0, 2.0) == 1.0

    def test_beta_symmetry_structure(self, spec_f):
        # beta(w, w') / beta at swapped V-arguments follows the 1/(w+w') kernel
        k = K_SINGLE
        a1, b1 = fs.kernel_coeffs(spec_f, k, 2.0, 0.5)
        V = lambda w: np.sqrt(k * spec_f(w))  # noqa: E731
        zv = fs.z_function(spec_f, k, 2.0)
        D = 2.0**2 - k * k * zv
        expected = 0.5 * k * V(2.0) * V(0.5) / (2.5 * D)
        assert b1 == pytest.approx(expected, rel=1e-12)

    def test_spot_value_against_independent_formula(self, spec_f):
        # brute-force evaluation: independent z from scipy quadrature
        k = K_SINGLE
        om, omp = 2.0 * k, 0.5 * k
        z_ind = 1.0 + 0.5 * (-pv_odd_scipy(spec_f, om)
                             + 1j * np.pi * spec_f(om))
        D = om * om - k * k * z_ind
        V = lambda w: np.sqrt(k * spec_f(w))  # noqa: E731
        a_ref = 0.5 * k * V(om) * V(omp) / ((om - omp) * D)
        b_ref = 0.5 * k * V(om) * V(omp) / ((om + omp) * D)
        a, b = fs.kernel_coeffs(spec_f, k, om, omp)
        assert a == pytest.approx(a_ref, rel=1e-9)
        assert b == pytest.approx(b_ref, rel=1e-9)

    def test_coincident_frequencies_rejected(self, spec_f):
        with pytest.raises(DomainError):
            fs.kernel_coeffs(spec_f, 1.0, 1.5, 1.5)


class TestSusceptibilityM:
    def test_kind_tag(self, chi_m_ref):
        assert chi_m_ref.kind == "magnetic"

    def test_round_trip_through_spectrum(self, chi_m_ref, grid_single):
        # spectrum from Im chi via the Plemelj identity, transformed back;
        # probed strictly inside the rebuilt support (the interpolant's own
        # transform diverges at its support edges)
        x = grid_single.points
        s_back = 2.0 * chi_m_ref.values.imag / np.pi
        tab = fm.CouplingSpectrum.tabulated(x, s_back)
        inner = FrequencyGrid(x[1:-1])
        chi2 = fm.transform_grid(tab, inner)
        scale = np.max(np.abs(chi_m_ref.values))
        # the rebuilt support misses the [0, x_min) sliver of the even
        # extension, which only pollutes the lowest frequencies
        mask = inner.points > 20 * x[0]
        err = np.abs(chi2.values - chi_m_ref.values[1:-1])[mask]
        assert np.max(err) / scale < 2e-3

    def test_zero_spectrum(self, grid_single):
        spec = fm.CouplingSpectrum.lorentzian(1.0, 0.1, 0.0)
        chi = fm.susceptibility_m(spec, grid_single)
        assert np.all(chi.values == 0.0)


class TestModeKernel:
    def test_denominator_identity_random_points(self):
        # omega^2 - omega_k^2 + omega_k^2 chi == omega^2 - omega_k^2 (1 - chi)
        # (algebraically identical; floats agree to rounding)
        rng = np.random.default_rng(3)
        for _ in range(50):
            om, k = rng.uniform(0.1, 5.0, 2)
            chi = complex(*rng.normal(size=2))
            lhs = om * om - k * k + k * k * chi
            rhs = om * om - k * k * (1.0 - chi)
            assert abs(lhs - rhs) <= 4 * np.spacing(abs(lhs))

    def test_lossless_input_rejected(self, grid_single):
        spec = fm.CouplingSpectrum.lorentzian(1.0, 0.1, 0.0)
        grid = FrequencyGrid(np.array([0.5, 1.3, 2.0]))
        chi = fm.transform_grid(spec, grid)
        with pytest.raises(PoleProximityError):
            fm.mode_kernel_mag(chi, 1.3, 1.3)

    def test_finite_for_lossy_input(self, chi_m_ref, grid_single):
        vals = [fm.mode_kernel_mag(chi_m_ref, K_SINGLE, om)
                for om in grid_single.points[::97]]
        assert all(np.isfinite(v) for v in vals)

    def test_peak_location_near_real_root(self, chi_m_ref, grid_single):
        k = K_SINGLE
        om = grid_single.points
        kern = np.array([fm.mode_kernel_mag(chi_m_ref, k, w) for w in om])
        peak = om[np.argmax(np.abs(kern) ** 2)]
        re_d = om * om - k * k * (1.0 - chi_m_ref.values.real)
        sign_change = om[:-1][np.diff(np.sign(re_d)) != 0]
        assert np.min(np.abs(sign_change - peak)) < 0.05

    def test_kernel_analytic_in_physical_upper_quadrant(self, spec_f):
        # the kernel denominator has no zeros for Re omega > 0, Im omega > 0
        # (all its resonances are damped); counted by the argument principle
        from fano_medium.fano_double import _winding_number

        k = K_SINGLE
        c, g, wt = spec_f.params

        def chi(z):
            z = np.asarray(z, complex)
            return -(wt / 2.0) * (1.0 / (z - c + 1j * g) + 1.0 / (z + c + 1j * g))

        def D(z):
            z = np.asarray(z, complex)
            return z * z - k * k * (1.0 - chi(z))

        corners = [0.05 + 1e-3j, 6.0 + 1e-3j, 6.0 + 2.0j, 0.05 + 2.0j]
        assert _winding_number(D, corners) == 0

    def test_kernel_resonances_damped(self, spec_f, grid_single):
        # the same denominator's roots (continued below the axis) all decay
        from fano_medium.fano_double import dispersion_roots
        from fano_medium.medium import CouplingSpectrum

        zero = CouplingSpectrum.lorentzian(1.0, 0.1, 0.0, kind="f1")
        chi_e0 = fm.transform_grid(zero, grid_single, "electric")
        chi_m = fm.transform_grid(spec_f, grid_single, "magnetic")
        roots = dispersion_roots(chi_e0, chi_m, K_SINGLE)
        assert roots and all(r.imag <= 1e-12 for r in roots)


class TestNoiseAmplitude:
    def test_values(self, chi_m_ref, grid_single):
        om = grid_single.points[777]
        amp = fm.noise_amplitude_m(chi_m_ref, om)
        assert amp == pytest.approx(np.sqrt(2 * chi_m_ref.values.imag[777]), rel=0)

    def test_zero_im(self, grid_single):
        spec = fm.CouplingSpectrum.lorentzian(1.0, 0.1, 0.0)
        chi = fm.transform_grid(spec, grid_single)
        assert fm.noise_amplitude_m(chi, grid_single.points[5]) == 0.0

    def test_passivity_violation(self, chi_m_ref):
        import dataclasses

        bad = dataclasses.replace(chi_m_ref, values=-chi_m_ref.values.imag * 1j
                                  + chi_m_ref.values.real)
        with pytest.raises(PassivityError):
            fm.noise_amplitude_m(bad, chi_m_ref.grid.points[777])

    def test_fdt_identities(self, spec_f, chi_m_ref, grid_single):
        om = grid_single.points
        amps = np.sqrt(2.0 * chi_m_ref.values.imag)
        scale = np.maximum(np.spacing(2.0 * chi_m_ref.values.imag), 5e-324)
        assert float(np.max(np.abs(amps**2 - 2 * chi_m_ref.values.imag) / scale)) <= 4
        assert float(np.max(np.abs(amps**2 - np.pi * spec_f(om)) / scale)) <= 4


class TestOracleAgreement:
    def test_alpha_profile_and_completeness(self, spec_f, coeffs_single):
        bath = bo.discretize(spec_f, 256, (1e-3, 50.0), scheme="composite")
        H = bo.hamiltonian_single(spec_f, K_SINGLE, bath)
        cmp = bo.compare_fano(H, coeffs_single)
        assert cmp.coefficient_supnorm < 0.02
        assert cmp.completeness_defect < 1e-10
        assert cmp.eigenop_residual < 1e-8
