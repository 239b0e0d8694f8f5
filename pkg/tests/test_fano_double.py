import numpy as np
import pytest

import fano_medium as fm
from fano_medium import bath_oracle as bo
from fano_medium import fano_double as fd
from fano_medium import fano_single as fs
from fano_medium.errors import (
    AssumptionViolationError,
    DegenerateBranchError,
    DomainError,
)
from fano_medium.medium import FrequencyGrid, MediumParameters, composite_grid

from conftest import K_DOUBLE, max_ulp


class TestYSolution:
    def test_branch_relations_hold(self, spec_f1, spec_f2, medium):
        for om in (0.6, 1.1, 1.9):
            y1, y2 = fd.y_solution(spec_f1, spec_f2, K_DOUBLE, om, "plus", medium)
            wtk, V1, V2 = fd._couplings(spec_f1, spec_f2, K_DOUBLE, medium,
                                        np.atleast_1d(om))
            V1, V2 = float(V1[0]), float(V2[0])
            assert V1 * (y1 - 1j * np.pi) == pytest.approx(
                V2 * (y2 - 1j * np.pi), rel=1e-12)
            y1p, y2p = fd.y_solution(spec_f1, spec_f2, K_DOUBLE, om, "minus", medium)
            assert V1 * (y1p - 1j * np.pi) == pytest.approx(
                -V2 * (y2p - 1j * np.pi), rel=1e-12)

    def test_constraint_by_independent_quadrature(self, spec_f1, spec_f2, medium):
        # substitute (y1, y2) into the constraint with the right side from
        # the independent PV route
        om = np.atleast_1d(1.11)
        y1, y2 = fd.y_solution(spec_f1, spec_f2, K_DOUBLE, float(om[0]), "plus",
                               medium)
        wtk, V1, V2 = fd._couplings(spec_f1, spec_f2, K_DOUBLE, medium, om)
        T1, T2 = fd.t_functions(spec_f1, spec_f2, K_DOUBLE, om, medium,
                                independent=True)
        R = 2 * (om[0]**2 - wtk**2) / wtk - T1[0] - T2[0]
        lhs = V1[0]**2 * y1 + V2[0]**2 * y2
        assert abs(lhs - R) / (abs(R) + np.pi * (V1[0]**2 + V2[0]**2)) < 1e-8

    def test_identical_reservoirs_symmetry(self):
        # identical sampled couplings, probed at omega = k where the
        # electric and magnetic weights coincide exactly: y1 = y2 on the
        # plus branch and the minus branch degenerates
        base = fm.CouplingSpectrum.lorentzian(1.2, 0.05, 0.05)
        xs = np.geomspace(1e-4, 60.0, 4000)
        tab1 = fm.CouplingSpectrum.tabulated(xs, base(xs), kind="f1")
        tab2 = fm.CouplingSpectrum.tabulated(xs, base(xs), kind="f2")
        k = om = 1.3  # V1 = om sqrt(S)/sqrt(wtk) equals V2 = k sqrt(S)/sqrt(wtk)
        med0 = MediumParameters()
        y1, y2 = fd.y_solution(tab1, tab2, k, om, "plus", med0)
        assert y1 == pytest.approx(y2, rel=1e-12)
        with pytest.raises(DegenerateBranchError):
            fd.y_solution(tab1, tab2, k, om, "minus", med0)

    def test_assumption_ii_guard(self, spec_f2, medium):
        flat = fm.CouplingSpectrum.flat_band(1.0, 2.0, 0.5, kind="f1")
        with pytest.raises(AssumptionViolationError):
            fd.y_solution(flat, spec_f2, 1.0, 3.0, "plus", medium)


class TestDoubleCoeffs:
    def test_beta_vanishes_at_omega_k_tilde(self, spec_f1, spec_f2, medium):
        wtk = fd.omega_k_tilde(K_DOUBLE, medium)
        grid = FrequencyGrid(np.array([0.5, wtk, 2.0]))
        coeffs = fd.double_coeffs(spec_f1, spec_f2, K_DOUBLE, grid, medium)
        assert coeffs.beta0[1] == 0.0
        assert coeffs.beta0p[1] == 0.0

    def test_ratio_law(self, coeffs_double, grid_double):
        om = grid_double.points
        wtk = coeffs_double.omega_k_tilde
        for a, b in ((coeffs_double.alpha0, coeffs_double.beta0),
                     (coeffs_double.alpha0p, coeffs_double.beta0p)):
            lhs = b * (om + wtk)
            rhs = a * (om - wtk)
            assert max_ulp(lhs.real, rhs.real) <= 4.0
            assert max_ulp(lhs.imag, rhs.imag) <= 4.0

    def test_identical_couplings_kill_primed_family(self):
        base = fm.CouplingSpectrum.lorentzian(1.2, 0.05, 0.05)
        xs = np.geomspace(1e-4, 60.0, 4000)
        tab1 = fm.CouplingSpectrum.tabulated(xs, base(xs), kind="f1")
        tab2 = fm.CouplingSpectrum.tabulated(xs, base(xs), kind="f2")
        k = 1.3
        med0 = MediumParameters()
        # identical spectra: V1/V2 = om/k, so alpha0'/alpha0 = (om-k)/(om+k)
        grid = FrequencyGrid(np.array([0.5, 2.0, 3.0]))
        coeffs = fd.double_coeffs(tab1, tab2, k, grid, med0)
        ratio = np.abs(coeffs.alpha0p) / np.abs(coeffs.alpha0)
        expected = np.abs(grid.points - k) / (grid.points + k)
        assert ratio == pytest.approx(expected, rel=1e-12)

    def test_joint_sum_rule(self, coeffs_double):
        assert fd.joint_sum_rule(coeffs_double) == pytest.approx(1.0, abs=1e-3)

    def test_sum_rule_improves_under_refinement(self, spec_f1, spec_f2, medium):
        foci = fd.resonance_foci(spec_f1, spec_f2, K_DOUBLE, 1e-3, 50.0, medium)
        defects = []
        for n in (500, 1000, 2000):
            grid = composite_grid(1e-3, 50.0, n, foci=foci)
            coeffs = fd.double_coeffs(spec_f1, spec_f2, K_DOUBLE, grid, medium)
            defects.append(abs(fd.joint_sum_rule(coeffs) - 1.0))
        assert defects[0] > defects[2]
        assert defects[2] < 1e-3

    def test_constraint_residual_pointwise(self, spec_f1, spec_f2, coeffs_double,
                                           medium):
        res = fd.constraint_residual(spec_f1, spec_f2, K_DOUBLE, coeffs_double,
                                     medium)
        assert np.max(res) < 1e-8

    def test_eigenoperator_residual(self, spec_f1, spec_f2, coeffs_double, medium):
        res = fd.eigenoperator_residual(spec_f1, spec_f2, K_DOUBLE, coeffs_double,
                                        medium)
        assert np.max(res) < 1e-8

    def test_orthogonality_defect(self, coeffs_double):
        assert fd.orthogonality_defect(coeffs_double) < 1e-12


class TestKernelCoeffsDouble:
    def test_zero_coupling_channel(self, spec_f2, medium, grid_double):
        zero = fm.CouplingSpectrum.lorentzian(1.0, 0.1, 0.0, kind="f1")
        a, b = fd.kernel_coeffs_double(zero, spec_f2, 1.0, 2.0, 0.7, 1, medium)
        assert a == 0.0 and b == 0.0

    def test_beta_regular_at_coincidence_kernel(self, spec_f1, spec_f2, medium):
        # beta's 1/(w+w') kernel has no singularity on the positive half line
        a1, b1 = fd.kernel_coeffs_double(spec_f1, spec_f2, 1.0, 2.0, 1.9999, 2,
                                         medium)
        assert np.isfinite(b1) and abs(b1) < abs(a1)

    def test_spot_value_against_direct_formula(self, spec_f1, spec_f2, medium):
        k, om, omp = 1.0, 1.7, 0.4
        a, b = fd.kernel_coeffs_double(spec_f1, spec_f2, k, om, omp, 2, medium)
        omv = np.atleast_1d(om)
        wtk, V1, V2, T1, T2, z1, z2 = fd._z_pair(spec_f1, spec_f2, k, omv, medium)
        D = omv[0]**2 - wtk**2 + complex(z1[0] + z2[0])
        a0 = (omv[0] + wtk) / (2 * np.sqrt(2)) * (V1[0] + V2[0]) / D
        _, _, V2p = fd._couplings(spec_f1, spec_f2, k, medium, np.atleast_1d(omp))
        w_i = wtk / (omv[0] + wtk) * a0 * V2p[0]
        assert a == pytest.approx(w_i / (om - omp), rel=1e-12)
        assert b == pytest.approx(w_i / (om + omp), rel=1e-12)


class TestBogoliubov:
    def test_channel_weights_proportional_to_couplings(self, coeffs_double):
        ch = fd.bogoliubov_split(coeffs_double)
        # e-channel weight ~ V1, m-channel ~ V2 with the shared denominator
        ratio = np.abs(ch.e_alpha) / np.abs(ch.m_alpha)
        assert ratio == pytest.approx(coeffs_double.V1 / coeffs_double.V2, rel=1e-10)

    def test_pure_dielectric_kills_m_channel(self, spec_f1, medium, grid_double):
        zero2 = fm.CouplingSpectrum.lorentzian(1.0, 0.1, 0.0, kind="f2")
        coeffs = fd.double_coeffs(spec_f1, zero2, 1.0, grid_double, medium)
        ch = fd.bogoliubov_split(coeffs)
        assert np.max(np.abs(ch.m_alpha)) == 0.0

    def test_channel_sums_redistribute_the_joint_rule(self, coeffs_double):
        se, sm = fd.channel_sum_rule(fd.bogoliubov_split(coeffs_double))
        assert se + sm == pytest.approx(fd.joint_sum_rule(coeffs_double), rel=1e-12)
        assert se + sm == pytest.approx(1.0, abs=1e-3)


class TestSusceptibilitiesMd:
    def test_kinds(self, spec_f1, spec_f2, grid_double):
        chi_e, chi_m = fd.susceptibilities_md(spec_f1, spec_f2, grid_double)
        assert chi_e.kind == "electric" and chi_m.kind == "magnetic"

    def test_plemelj_both_kinds(self, spec_f1, spec_f2, grid_double):
        chi_e, chi_m = fd.susceptibilities_md(spec_f1, spec_f2, grid_double)
        x = grid_double.points
        assert max_ulp(chi_e.values.imag, 0.5 * np.pi * spec_f1.value_or_zero(x)) <= 4
        assert max_ulp(chi_m.values.imag, 0.5 * np.pi * spec_f2.value_or_zero(x)) <= 4

    def test_zero_f1_recovers_pure_magnetic(self, spec_f2, grid_double):
        zero = fm.CouplingSpectrum.lorentzian(1.0, 0.1, 0.0, kind="f1")
        chi_e, chi_m = fd.susceptibilities_md(zero, spec_f2, grid_double)
        assert np.all(chi_e.values == 0.0)
        ref = fm.transform_grid(spec_f2, grid_double)
        assert np.array_equal(chi_m.values, ref.values)


class TestModeKernelMd:
    def test_channels(self, spec_f1, spec_f2, grid_double):
        chi_e, chi_m = fd.susceptibilities_md(spec_f1, spec_f2, grid_double)
        k = 1.0
        om = grid_double.points[900]
        ke = fd.mode_kernel_md(chi_e, chi_m, k, om, "e")
        km = fd.mode_kernel_md(chi_e, chi_m, k, om, "m")
        D = k * k * (1 - chi_m.value_at(om)) - om * om * (1 + chi_e.value_at(om))
        assert ke == pytest.approx(om * np.sqrt(chi_e.value_at(om).imag) / D)
        assert km == pytest.approx(k * np.sqrt(chi_m.value_at(om).imag) / D)

    def test_chi_m_zero_reduces_to_dielectric_form(self, spec_f1, grid_double):
        zero2 = fm.CouplingSpectrum.lorentzian(1.0, 0.1, 0.0, kind="f2")
        chi_e, chi_m = fd.susceptibilities_md(spec_f1, zero2, grid_double)
        k = 1.0
        om = grid_double.points[900]
        ke = fd.mode_kernel_md(chi_e, chi_m, k, om, "e")
        D = k * k - om * om * (1 + chi_e.value_at(om))
        assert ke == pytest.approx(om * np.sqrt(chi_e.value_at(om).imag) / D)

    def test_no_real_pole_for_lossy_medium(self, spec_f1, spec_f2, grid_double):
        chi_e, chi_m = fd.susceptibilities_md(spec_f1, spec_f2, grid_double)
        for om in grid_double.points[::149]:
            assert np.isfinite(fd.mode_kernel_md(chi_e, chi_m, 1.0, om, "e"))


class TestNoiseAmplitudesMd:
    def test_values_and_identities(self, spec_f1, spec_f2, grid_double):
        chi_e, chi_m = fd.susceptibilities_md(spec_f1, spec_f2, grid_double)
        om = grid_double.points[700]
        ae, am = fd.noise_amplitudes_md(chi_e, chi_m, om)
        assert ae**2 == pytest.approx(np.pi * spec_f1(om), rel=1e-14)
        assert am**2 == pytest.approx(np.pi * spec_f2(om), rel=1e-14)

    def test_pure_magnetic_matches_single(self, spec_f2, grid_double):
        zero = fm.CouplingSpectrum.lorentzian(1.0, 0.1, 0.0, kind="f1")
        chi_e, chi_m = fd.susceptibilities_md(zero, spec_f2, grid_double)
        om = grid_double.points[700]
        _, am = fd.noise_amplitudes_md(chi_e, chi_m, om)
        assert am == fm.noise_amplitude_m(chi_m, om)


class TestDispersionRoots:
    def test_vacuum(self, grid_double):
        zero_e = fm.CouplingSpectrum.lorentzian(1.0, 0.1, 0.0, kind="f1")
        zero_m = fm.CouplingSpectrum.lorentzian(1.0, 0.1, 0.0, kind="f2")
        chi_e, chi_m = fd.susceptibilities_md(zero_e, zero_m, grid_double)
        roots = fd.dispersion_roots(chi_e, chi_m, 1.3)
        assert len(roots) == 1
        assert abs(roots[0] - 1.3) <= 1e-12

    def test_weak_single_pole_two_branches(self, grid_double):
        spec_e = fm.CouplingSpectrum.lorentzian(1.2, 0.05, 0.01, kind="f1")
        zero_m = fm.CouplingSpectrum.lorentzian(1.0, 0.1, 0.0, kind="f2")
        chi_e, chi_m = fd.susceptibilities_md(spec_e, zero_m, grid_double)
        roots = fd.dispersion_roots(chi_e, chi_m, 1.2)
        assert len(roots) == 2
        assert all(r.imag <= 1e-12 for r in roots)

    def test_rational_fit_route_matches_closed_form(self, grid_double):
        from fano_medium.cauchy import Susceptibility

        spec_e = fm.CouplingSpectrum.lorentzian(1.2, 0.05, 0.01, kind="f1")
        zero_m = fm.CouplingSpectrum.lorentzian(1.0, 0.1, 0.0, kind="f2")
        chi_e, chi_m = fd.susceptibilities_md(spec_e, zero_m, grid_double)
        data = Susceptibility("electric", grid_double, chi_e.values, None)
        r1 = sorted(fd.dispersion_roots(chi_e, chi_m, 1.2), key=lambda z: z.real)
        r2 = sorted(fd.dispersion_roots(data, chi_m, 1.2), key=lambda z: z.real)
        assert max(abs(a - b) for a, b in zip(r1, r2)) < 1e-10


class TestLimitConsistency:
    def test_double_reduces_to_single(self, spec_f, grid_single):
        # electric channel scaled to nothing, k_c = 0: every double output
        # must collapse onto the single-reservoir one
        med0 = MediumParameters()
        k = 1.2
        xs = np.geomspace(1e-5, 60.0, 6000)
        tiny_f1 = fm.CouplingSpectrum.tabulated(xs, 1e-8 * spec_f(xs), kind="f1")
        spec2 = fm.CouplingSpectrum.lorentzian(*spec_f.params, kind="f2")
        dbl = fd.double_coeffs(tiny_f1, spec2, k, grid_single, med0)
        sng = fs.single_coeffs(spec_f, k, grid_single)
        ch = fd.bogoliubov_split(dbl)
        scale = np.max(np.abs(sng.alpha0_t))
        assert np.max(np.abs(ch.m_alpha - sng.alpha0_t)) / scale < 1e-6
        assert np.max(np.abs(ch.m_beta - sng.beta0_t)) / scale < 1e-6
        # susceptibilities and noise amplitudes collapse as well
        chi_e, chi_m = fd.susceptibilities_md(tiny_f1, spec2, grid_single)
        chi_s = fm.susceptibility_m(spec_f, grid_single)
        assert np.max(np.abs(chi_m.values - chi_s.values)) < 1e-6
        assert np.max(np.abs(chi_e.values)) < 1e-6
        om = grid_single.points[1000]
        _, am = fd.noise_amplitudes_md(chi_e, chi_m, om)
        assert abs(am - fm.noise_amplitude_m(chi_s, om)) < 1e-6


class TestCrossChannel:
    def test_discretized_commutator_vanishes(self, spec_f1, spec_f2,
                                             coeffs_double, medium):
        worst = bo.cross_channel_form(spec_f1, spec_f2, K_DOUBLE, coeffs_double,
                                      medium)
        assert worst < 1e-3
