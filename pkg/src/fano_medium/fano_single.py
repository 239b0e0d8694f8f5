"""Single-reservoir diagonalization for a lossy magnetizable medium.

For a field mode of wavenumber k (omega_k = k in natural units) coupled to
one dressed-matter continuum with weight S(omega), the coupling form
factor is V^2(omega) = omega_k * S(omega).  The dressed eigenoperator
coefficients are

    alpha0(omega) = (omega + omega_k)/2 * V(omega) / D(omega)
    beta0(omega)  = (omega - omega_k)/2 * V(omega) / D(omega)
    D(omega)      = omega^2 - omega_k^2 * z(omega)

with z from the odd-extension Cauchy transform of V^2 taken with the
(omega' - omega + i eps) kernel,

    z(omega) = 1 - (1/2 omega_k) int [V^2]_odd(omega') / (omega'-omega+ieps) domega'
             = 1 + (1/2) [ T_S(omega) + i pi S(omega) ],
    T_S(omega) = P int_0^inf S(omega') 2 omega' / (omega^2 - omega'^2) domega'.

The ratio law beta0/alpha0 = (omega-omega_k)/(omega+omega_k) holds by
construction and int (|alpha0|^2 - |beta0|^2) domega = 1 (checked against
the finite-bath symplectic oracle).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cauchy import Susceptibility, pv_halfline, transform_grid
from .errors import (
    AssumptionViolationError,
    DomainError,
    NearResonanceError,
    PassivityError,
    PoleProximityError,
)
from .medium import LORENTZIAN, TABULATED, CouplingSpectrum, FrequencyGrid, validate_spectrum

__all__ = [
    "SingleFanoCoefficients",
    "z_function",
    "single_coeffs",
    "kernel_coeffs",
    "kernel_delta_coefficient",
    "susceptibility_m",
    "mode_kernel_mag",
    "noise_amplitude_m",
    "sum_rule",
]

DENOM_FLOOR = 1e-14


@dataclass(frozen=True)
class SingleFanoCoefficients:
    """Per-k tables of the dressing coefficients on a frequency grid."""

    k: float
    omega_k: float
    grid: FrequencyGrid
    alpha0_t: np.ndarray
    beta0_t: np.ndarray
    z: np.ndarray

    def __post_init__(self):
        for name in ("alpha0_t", "beta0_t", "z"):
            v = np.asarray(getattr(self, name), dtype=complex)
            if v.shape != self.grid.points.shape:
                raise DomainError(f"{name} length does not match grid")
            v = v.copy()
            v.flags.writeable = False
            object.__setattr__(self, name, v)


def _check_k(k):
    if not (k > 0 and np.isfinite(k)):
        raise DomainError(f"wavenumber k must be positive, got {k}")


def _gate_diagonalization(spec):
    report = validate_spectrum(spec)
    # the identically-zero spectrum is the trivial decoupled limit; its
    # assumption-(ii) flag is not fatal
    fatal = [v for v in report.violations
             if not (v.code == "assumption_ii" and spec.is_zero)]
    if fatal:
        raise AssumptionViolationError(
            "spectrum not admissible for diagonalization ("
            + "; ".join(f"{v.code}: {v.message}" for v in fatal) + ")"
        )


def t_odd(spec: CouplingSpectrum, omega) -> np.ndarray:
    """T_S(omega) = P int_0^inf S(w') 2w'/(omega^2 - w'^2) dw'."""
    return -pv_halfline(spec, 0, omega, -1)


def z_function(spec: CouplingSpectrum, k: float, omega) -> complex | np.ndarray:
    """z(omega) for the (omega'-omega+ieps) kernel; Im z = (pi/2 omega_k) V^2."""
    _check_k(k)
    om = np.atleast_1d(np.asarray(omega, dtype=float))
    if np.any(om <= 0):
        raise DomainError("z_function needs omega > 0")
    zv = 1.0 + 0.5 * (t_odd(spec, om) + 1j * np.pi * spec.value_or_zero(om))
    return complex(zv[0]) if np.isscalar(omega) else zv


def _denominator(spec, k, om, zv):
    D = om * om - k * k * zv
    scale = np.maximum(om * om, k * k)
    bad = np.abs(D) < DENOM_FLOOR * scale
    if np.any(bad):
        w = om[np.argmax(bad)] if hasattr(om, "__len__") else om
        raise NearResonanceError(
            f"|omega^2 - omega_k^2 z| below {DENOM_FLOOR:g} near omega={w:g}; "
            "densify the grid locally (input is effectively lossless there)"
        )
    return D


def single_coeffs(spec: CouplingSpectrum, k: float, grid: FrequencyGrid) -> SingleFanoCoefficients:
    """Fill alpha0/beta0/z tables; the ratio law holds by construction."""
    _check_k(k)
    _gate_diagonalization(spec)
    om = grid.points
    s = spec(om)
    zv = z_function(spec, k, om)
    D = _denominator(spec, k, om, zv)
    V = np.sqrt(k * s)
    a0 = 0.5 * (om + k) * V / D
    b0 = 0.5 * (om - k) * V / D
    return SingleFanoCoefficients(k=k, omega_k=k, grid=grid, alpha0_t=a0, beta0_t=b0, z=zv)


def kernel_coeffs(spec: CouplingSpectrum, k: float, omega: float, omega_prime: float):
    """Smooth parts of the continuum-continuum coefficients at omega != omega'.

    The delta(omega-omega') part is carried separately; see
    ``kernel_delta_coefficient``.
    """
    _check_k(k)
    if omega <= 0 or omega_prime <= 0:
        raise DomainError("kernel coefficients need positive frequencies")
    if np.isclose(omega, omega_prime, rtol=1e-12, atol=0.0):
        raise DomainError(
            "smooth kernel part is undefined at omega == omega'; the "
            "coincident contribution lives in the delta flag"
        )
    zv = z_function(spec, k, omega)
    D = _denominator(spec, k, np.float64(omega), zv)
    V_w = np.sqrt(k * spec.value_or_zero(omega))
    V_wp = np.sqrt(k * spec.value_or_zero(omega_prime))
    front = 0.5 * k * V_w * V_wp / D
    alpha_smooth = front / (omega - omega_prime)
    beta = front / (omega + omega_prime)
    return complex(alpha_smooth), complex(beta)


def kernel_delta_coefficient(spec: CouplingSpectrum, k: float, omega: float) -> complex:
    """Coefficient of delta(omega-omega') in the continuum-continuum kernel.

    Equals 1 + i pi (omega_k/2) V^2(omega) / D(omega): the bare delta plus
    the Plemelj part of the (omega - omega' - i eps) kernel.
    """
    _check_k(k)
    zv = z_function(spec, k, omega)
    D = _denominator(spec, k, np.float64(omega), zv)
    return complex(1.0 + 1j * np.pi * 0.5 * k * k * spec.value_or_zero(omega) / D)


def susceptibility_m(spec: CouplingSpectrum, grid: FrequencyGrid) -> Susceptibility:
    """Magnetic susceptibility: the Cauchy transform of S tagged magnetic."""
    return transform_grid(spec, grid, kind="magnetic")


def mode_kernel_mag(chi_m: Susceptibility, k: float, omega: float) -> complex:
    """omega_k sqrt(Im chi_m) / (omega^2 - omega_k^2 (1 - chi_m)) at a grid point."""
    _check_k(k)
    if chi_m.kind != "magnetic":
        raise DomainError("mode_kernel_mag needs a magnetic susceptibility")
    chi = chi_m.value_at(omega)
    D = omega * omega - k * k * (1.0 - chi)
    if abs(D) < DENOM_FLOOR * max(omega * omega, k * k, 1.0):
        raise PoleProximityError(
            f"mode kernel pole at omega={omega:g}: lossless input has a real "
            "resonance at omega = omega_k"
        )
    return k * np.sqrt(max(chi.imag, 0.0)) / D


def noise_amplitude_m(chi_m: Susceptibility, omega: float) -> float:
    """sqrt(2 Im chi_m(omega)); its square is the commutator amplitude."""
    im = chi_m.value_at(omega).imag
    if im < 0:
        raise PassivityError(f"Im chi_m(omega={omega:g}) = {im:g} < 0")
    return float(np.sqrt(2.0 * im))


def sum_rule(coeffs: SingleFanoCoefficients) -> float:
    """int_0^inf (|alpha0|^2 - |beta0|^2) domega on the table's grid."""
    integrand = np.abs(coeffs.alpha0_t) ** 2 - np.abs(coeffs.beta0_t) ** 2
    return float(np.trapezoid(integrand, coeffs.grid.points))


def detect_foci(x, v, threshold: float = 0.05):
    """(center, scale) pairs for every local maximum of a sampled profile.

    Used to densify composite grids around spectral lines and polariton
    resonances whose positions are not known a priori; the scale is the
    half-width at half maximum estimated from the samples.
    """
    x = np.asarray(x, float)
    v = np.asarray(v, float)
    vmax = float(np.max(v))
    if vmax <= 0:
        return []
    out = []
    for i in range(1, x.size - 1):
        if v[i] >= v[i - 1] and v[i] > v[i + 1] and v[i] > threshold * vmax:
            half = v[i] / 2.0
            li = np.where(v[:i] < half)[0]
            ri = np.where(v[i:] < half)[0]
            lo = x[li[-1]] if li.size else x[0]
            hi = x[i + ri[0]] if ri.size else x[-1]
            out.append((float(x[i]), float(max(0.5 * (hi - lo), 1e-3))))
    return out


def spectral_foci(spec: CouplingSpectrum):
    """Grid foci at the spectral lines of a coupling spectrum."""
    if spec.family == LORENTZIAN:
        c, g, _ = spec.params
        return [(c, g)]
    if spec.family == TABULATED:
        return detect_foci(spec.grid, spec.values)
    lo, hi = spec.params[0], spec.params[1]
    return [(lo, (hi - lo) / 10.0), (hi, (hi - lo) / 10.0)]


def resonance_foci(spec: CouplingSpectrum, k: float, lo: float, hi: float,
                   n_pilot: int = 1200):
    """Foci for the spectral lines plus the detected polariton resonances."""
    from .medium import composite_grid

    base = spectral_foci(spec)
    pilot = composite_grid(lo, hi, n_pilot, foci=base)
    coeffs = single_coeffs(spec, k, pilot)
    integrand = np.abs(coeffs.alpha0_t) ** 2 - np.abs(coeffs.beta0_t) ** 2
    return base + detect_foci(pilot.points, integrand)
