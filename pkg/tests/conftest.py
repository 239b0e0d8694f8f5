import numpy as np
import pytest

import fano_medium as fm
from fano_medium import fano_double as fd
from fano_medium import fano_single as fs
from fano_medium.medium import MediumParameters, composite_grid

REFERENCE_DIR = None

# reference medium constants: even-Lorentzian pairs, weights calibrated so
# max Im chi = 0.5 (see configs/reference.ini)
W_F = 0.04997831742875315
W_F2 = 0.04998611882287619
K_SINGLE = 1.2
K_DOUBLE = 1.2
OMEGA_C = 0.3


def _f1_tabulated():
    from pathlib import Path

    path = Path(__file__).resolve().parents[1] / "configs" / "f1_lorentzian_pair.txt"
    return fm.CouplingSpectrum.from_text(path, kind="f1")


@pytest.fixture(scope="session")
def spec_f():
    return fm.CouplingSpectrum.lorentzian(1.2, 0.05, W_F, kind="f")


@pytest.fixture(scope="session")
def spec_f1():
    return _f1_tabulated()


@pytest.fixture(scope="session")
def spec_f2():
    return fm.CouplingSpectrum.lorentzian(1.5, 0.05, W_F2, kind="f2")


@pytest.fixture(scope="session")
def medium():
    return MediumParameters(omega_c=OMEGA_C)


@pytest.fixture(scope="session")
def grid_single(spec_f):
    foci = fs.resonance_foci(spec_f, K_SINGLE, 1e-3, 50.0)
    return composite_grid(1e-3, 50.0, 2000, foci=foci)


@pytest.fixture(scope="session")
def grid_double(spec_f1, spec_f2, medium):
    foci = fd.resonance_foci(spec_f1, spec_f2, K_DOUBLE, 1e-3, 50.0, medium)
    return composite_grid(1e-3, 50.0, 2000, foci=foci)


@pytest.fixture(scope="session")
def chi_m_ref(spec_f, grid_single):
    return fm.susceptibility_m(spec_f, grid_single)


@pytest.fixture(scope="session")
def coeffs_single(spec_f, grid_single):
    return fm.single_coeffs(spec_f, K_SINGLE, grid_single)


@pytest.fixture(scope="session")
def coeffs_double(spec_f1, spec_f2, grid_double, medium):
    return fd.double_coeffs(spec_f1, spec_f2, K_DOUBLE, grid_double, medium)


def max_ulp(a, b):
    """Elementwise ulp distance between arrays (0 where exactly equal)."""
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    return float(np.max(np.abs(a - b) / np.maximum(np.spacing(np.abs(a)), 5e-324)))
