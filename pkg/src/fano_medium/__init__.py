"""Fano diagonalization and noise amplitudes for lossy magnetizable and
magnetodielectric media, with finite-bath verification oracles."""

from .medium import (
    CouplingSpectrum,
    FrequencyGrid,
    MediumParameters,
    SpectrumReport,
    composite_grid,
    eval_spectrum,
    longitudinal_frequency,
    validate_spectrum,
)
from .cauchy import (
    Susceptibility,
    cauchy_transform,
    kk_residual,
    time_domain_response,
    transform_grid,
)
from .fano_single import (
    SingleFanoCoefficients,
    kernel_coeffs,
    mode_kernel_mag,
    noise_amplitude_m,
    single_coeffs,
    sum_rule,
    susceptibility_m,
    z_function,
)
from .fano_double import (
    BogoliubovChannels,
    DoubleFanoCoefficients,
    bogoliubov_split,
    channel_sum_rule,
    dispersion_roots,
    double_coeffs,
    joint_sum_rule,
    kernel_coeffs_double,
    mode_kernel_md,
    noise_amplitudes_md,
    susceptibilities_md,
    y_solution,
)
from .bath_oracle import (
    BathDiscretization,
    QuadraticHamiltonian,
    compare_fano,
    discrete_susceptibility,
    discretize,
    hamiltonian_double,
    hamiltonian_single,
    symplectic_diagonalize,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
