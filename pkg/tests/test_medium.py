import io

import numpy as np
import pytest
from hypothesis import given, strategies as st

import fano_medium as fm
from fano_medium.errors import DomainError, SupportError
from fano_medium.medium import (
    FrequencyGrid,
    MediumParameters,
    composite_grid,
    eval_spectrum,
    longitudinal_frequency,
    validate_spectrum,
)


class TestMediumParameters:
    def test_longitudinal_frequency_values(self):
        assert longitudinal_frequency(MediumParameters(omega_c=0.0)) == 1.0
        assert longitudinal_frequency(MediumParameters(3.0, 3.0, 4.0)) == 5.0
        assert longitudinal_frequency(MediumParameters(omega_c=1.0)) == pytest.approx(
            np.sqrt(2.0), abs=0, rel=1e-15)

    def test_renormalized_frequency_must_not_decrease(self):
        with pytest.raises(DomainError):
            MediumParameters(omega0=1.0, omega0_tilde=0.9)

    def test_k_c_equals_omega_c_in_natural_units(self):
        assert MediumParameters(omega_c=0.25).k_c == 0.25

    @given(st.floats(0.0, 10.0), st.floats(0.0, 10.0))
    def test_longitudinal_frequency_monotone_in_omega_c(self, wc1, wc2):
        lo, hi = sorted((wc1, wc2))
        assert (longitudinal_frequency(MediumParameters(omega_c=hi))
                >= longitudinal_frequency(MediumParameters(omega_c=lo)))


class TestEvalSpectrum:
    def test_flat_band_inside(self):
        spec = fm.CouplingSpectrum.flat_band(1.0, 2.0, 0.5)
        assert eval_spectrum(spec, 1.5) == 0.5
        assert eval_spectrum(spec, 0.5) == 0.0

    def test_even_extension_exact(self):
        for spec in (fm.CouplingSpectrum.lorentzian(1.0, 0.1, 1.0),
                     fm.CouplingSpectrum.flat_band(1.0, 2.0, 0.5),
                     fm.CouplingSpectrum.tabulated([0.5, 1.0, 2.0], [0.1, 0.4, 0.2])):
            for w in (0.7, 1.3, 1.9):
                assert eval_spectrum(spec, -w) == eval_spectrum(spec, w)

    def test_lorentzian_at_center(self):
        # direct evaluation of the pair formula, mirror term included
        spec = fm.CouplingSpectrum.lorentzian(1.0, 0.1, 1.0)
        expected = (0.1 / np.pi) * (1.0 / 0.1**2 + 1.0 / (4.0 + 0.1**2))
        assert eval_spectrum(spec, 1.0) == pytest.approx(expected, rel=1e-15)
        # the direct peak term dominates
        assert eval_spectrum(spec, 1.0) == pytest.approx(1.0 / (0.1 * np.pi), rel=3e-3)

    def test_tabulated_outside_support_raises(self):
        spec = fm.CouplingSpectrum.tabulated([1.0, 2.0], [0.3, 0.3])
        with pytest.raises(SupportError):
            eval_spectrum(spec, 2.5)
        with pytest.raises(SupportError):
            eval_spectrum(spec, 0.5)
        assert spec.value_or_zero(2.5) == 0.0

    def test_nonfinite_omega_rejected(self):
        spec = fm.CouplingSpectrum.lorentzian(1.0, 0.1, 1.0)
        with pytest.raises(DomainError):
            eval_spectrum(spec, np.inf)

    @given(st.floats(-30.0, 30.0, allow_nan=False))
    def test_lorentzian_even_property(self, w):
        spec = fm.CouplingSpectrum.lorentzian(1.3, 0.2, 0.7)
        assert eval_spectrum(spec, -w) == eval_spectrum(spec, w)

    def test_from_text_two_columns_with_comments(self):
        buf = io.StringIO("# coupling spectrum\n0.5 0.1\n1.0 0.4\n2.0 0.2\n")
        spec = fm.CouplingSpectrum.from_text(buf, kind="f1")
        assert spec.kind == "f1"
        assert eval_spectrum(spec, 1.0) == 0.4


class TestValidateSpectrum:
    def test_positive_lorentzian_admissible(self):
        assert validate_spectrum(fm.CouplingSpectrum.lorentzian(1.0, 0.1, 1.0)).ok

    def test_tabulated_negative_sample(self):
        spec = fm.CouplingSpectrum.tabulated([1.0, 2.0, 3.0], [0.1, -0.2, 0.1])
        report = validate_spectrum(spec)
        assert "negativity" in report.codes()

    def test_flat_band_fails_assumption_ii(self):
        report = validate_spectrum(fm.CouplingSpectrum.flat_band(1.0, 2.0, 0.5))
        assert "assumption_ii" in report.codes()

    def test_lorentzian_f1_tail_flagged(self):
        spec = fm.CouplingSpectrum.lorentzian(1.0, 0.1, 1.0, kind="f1")
        assert "non_integrable_tail_f1" in validate_spectrum(spec).codes()

    def test_compact_f1_tail_ok(self):
        spec = fm.CouplingSpectrum.tabulated([0.5, 1.0, 2.0], [0.1, 0.4, 0.2], kind="f1")
        assert validate_spectrum(spec).ok


class TestFrequencyGrid:
    def test_validation(self):
        with pytest.raises(DomainError):
            FrequencyGrid(np.array([0.0, 1.0]))
        with pytest.raises(DomainError):
            FrequencyGrid(np.array([1.0, 1.0]))
        with pytest.raises(DomainError):
            FrequencyGrid(np.array([1.0]))

    def test_composite_contains_endpoints_and_is_sorted(self):
        g = composite_grid(1e-3, 50.0, 500, foci=[(1.2, 0.05)])
        assert g.points[0] >= 1e-3 and g.points[-1] <= 50.0
        assert np.all(np.diff(g.points) > 0)

    def test_composite_densifies_near_focus(self):
        g = composite_grid(1e-3, 50.0, 2000, foci=[(1.2, 0.05)])
        near = np.diff(g.points[np.abs(g.points - 1.2) < 0.05])
        far = np.diff(g.points[(g.points > 10) & (g.points < 40)])
        assert np.median(near) < np.median(far) / 50

    def test_refined_keeps_span(self):
        g = FrequencyGrid.linear(1.0, 2.0, 11)
        r = g.refined(2)
        assert r.points[0] == 1.0 and r.points[-1] == 2.0
        assert len(r) == 21
