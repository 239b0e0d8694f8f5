"""Two-reservoir diagonalization for a lossy magnetodielectric medium.

The field mode at omega_k_tilde = sqrt(k^2 + k_c^2) couples to an electric
and a magnetic dressed-matter continuum with weights S1 = f1^2, S2 = f2^2.
The coupling form factors are

    V1^2(w) = w^2  S1(w) / omega_k_tilde      (electric channel)
    V2^2(w) = k^2  S2(w) / omega_k_tilde      (magnetic channel)

Both eigenoperator families share the denominator

    Dz(w) = w^2 - omega_k_tilde^2 + z1(w) + z2(w),
    z_i(w) = -(omega_k_tilde/2) [ T_i(w) + i pi V_i^2(w) ],
    T_i(w) = P int_0^inf V_i^2(w') 2w' / (w^2 - w'^2) dw',

and the normalized coefficients are

    alpha0  = (w + wtk)/(2 sqrt2) (V1 + V2)/Dz,   beta0  = r alpha0,
    alpha0' = (w + wtk)/(2 sqrt2) (V1 - V2)/Dz,   beta0' = r alpha0',
    r = (w - wtk)/(w + wtk).

The delta-channel weights y_i solve the constraint

    V1^2 y1 + V2^2 y2 = R(w) = 2 (w^2 - wtk^2)/wtk - T1 - T2

together with the branch relations V1 (y1 - i pi) = +- V2 (y2 - i pi);
cross-branch orthogonality fixes the i pi weight and the finite-bath
symplectic oracle fixes every prefactor above.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cauchy import (
    Susceptibility,
    pv_halfline,
    pv_halfline_independent,
    transform_grid,
)
from .errors import (
    AssumptionViolationError,
    DegenerateBranchError,
    DomainError,
    NearResonanceError,
    PassivityError,
    PoleProximityError,
    RootFindingError,
)
from .fano_single import _check_k, _gate_diagonalization
from .medium import LORENTZIAN, CouplingSpectrum, FrequencyGrid, MediumParameters

__all__ = [
    "DoubleFanoCoefficients",
    "BogoliubovChannels",
    "y_solution",
    "double_coeffs",
    "kernel_coeffs_double",
    "kernel_delta_coefficient_double",
    "bogoliubov_split",
    "susceptibilities_md",
    "mode_kernel_md",
    "dispersion_roots",
    "noise_amplitudes_md",
    "joint_sum_rule",
    "channel_sum_rule",
    "constraint_residual",
    "eigenoperator_residual",
    "orthogonality_defect",
]

DENOM_FLOOR = 1e-14


@dataclass(frozen=True)
class DoubleFanoCoefficients:
    """Per-k tables for both eigenoperator families of the two-reservoir model."""

    k: float
    omega_k_tilde: float
    grid: FrequencyGrid
    y1: np.ndarray
    y2: np.ndarray
    y1p: np.ndarray
    y2p: np.ndarray
    z1: np.ndarray
    z2: np.ndarray
    alpha0: np.ndarray
    alpha0p: np.ndarray
    beta0: np.ndarray
    beta0p: np.ndarray
    V1: np.ndarray
    V2: np.ndarray

    def __post_init__(self):
        for name in ("y1", "y2", "y1p", "y2p", "z1", "z2",
                     "alpha0", "alpha0p", "beta0", "beta0p"):
            v = np.asarray(getattr(self, name), dtype=complex)
            if v.shape != self.grid.points.shape:
                raise DomainError(f"{name} length does not match grid")
            v = v.copy(); v.flags.writeable = False
            object.__setattr__(self, name, v)
        for name in ("V1", "V2"):
            v = np.asarray(getattr(self, name), dtype=float).copy()
            v.flags.writeable = False
            object.__setattr__(self, name, v)


def omega_k_tilde(k: float, medium: MediumParameters) -> float:
    return float(np.hypot(k, medium.k_c))


def _couplings(spec1, spec2, k, medium, om, strict=True):
    wtk = omega_k_tilde(k, medium)
    s1 = spec1(om) if strict else spec1.value_or_zero(om)
    s2 = spec2(om) if strict else spec2.value_or_zero(om)
    V1 = om * np.sqrt(s1 / wtk)
    V2 = k * np.sqrt(s2 / wtk)
    return wtk, V1, V2


def t_functions(spec1, spec2, k, om, medium, independent=False):
    """(T1, T2) odd-extension principal-value transforms of V_i^2."""
    wtk = omega_k_tilde(k, medium)
    pv = pv_halfline_independent if independent else pv_halfline
    T1 = -pv(spec1, 2, om, -1) / wtk
    T2 = -pv(spec2, 0, om, -1) * (k * k / wtk)
    return T1, T2


def _z_pair(spec1, spec2, k, om, medium):
    wtk, V1, V2 = _couplings(spec1, spec2, k, medium, om, strict=False)
    T1, T2 = t_functions(spec1, spec2, k, om, medium)
    z1 = -(wtk / 2.0) * (T1 + 1j * np.pi * V1 * V1)
    z2 = -(wtk / 2.0) * (T2 + 1j * np.pi * V2 * V2)
    return wtk, V1, V2, T1, T2, z1, z2


def _constraint_rhs(wtk, om, T1, T2):
    return 2.0 * (om * om - wtk * wtk) / wtk - T1 - T2


def y_solution(spec1: CouplingSpectrum, spec2: CouplingSpectrum, k: float,
               omega: float, branch: str,
               medium: MediumParameters = MediumParameters()):
    """(y1, y2) for branch 'plus' or the primed pair for branch 'minus'.

    Both satisfy the constraint by construction; the minus branch is
    undefined at points where V1 == V2 exactly (the primed operator
    decouples there).
    """
    if branch not in ("plus", "minus"):
        raise DomainError(f"branch must be plus|minus, got {branch!r}")
    _check_k(k)
    om = np.float64(omega)
    if not om > 0:
        raise DomainError("y_solution needs omega > 0")
    wtk, V1, V2, T1, T2, _, _ = _z_pair(spec1, spec2, k, np.atleast_1d(om), medium)
    V1, V2, T1, T2 = float(V1[0]), float(V2[0]), float(T1[0]), float(T2[0])
    if V1 == 0.0 or V2 == 0.0:
        raise AssumptionViolationError(
            f"coupling vanishes at omega={omega:g} (assumption (ii)); "
            "the branch relations divide by V_i"
        )
    R = _constraint_rhs(wtk, om, T1, T2)
    Q = V1 * V1 + V2 * V2
    if branch == "plus":
        s = (R - 1j * np.pi * Q) / (V1 + V2)
        return s / V1 + 1j * np.pi, s / V2 + 1j * np.pi
    if V1 == V2:
        raise DegenerateBranchError(
            "V1 == V2 exactly: the primed family carries zero photon weight "
            "and its y's are unbounded"
        )
    sp = (R - 1j * np.pi * Q) / (V1 - V2)
    return sp / V1 + 1j * np.pi, -sp / V2 + 1j * np.pi


def double_coeffs(spec1: CouplingSpectrum, spec2: CouplingSpectrum, k: float,
                  grid: FrequencyGrid,
                  medium: MediumParameters = MediumParameters()) -> DoubleFanoCoefficients:
    """Fill all coefficient tables for one wavenumber."""
    _check_k(k)
    _gate_diagonalization(spec1)
    _gate_diagonalization(spec2)
    om = grid.points
    wtk, V1, V2, T1, T2, z1, z2 = _z_pair(spec1, spec2, k, om, medium)
    D = om * om - wtk * wtk + z1 + z2
    scale = np.maximum(om * om, wtk * wtk)
    if np.any(np.abs(D) < DENOM_FLOOR * scale):
        w = om[np.argmax(np.abs(D) < DENOM_FLOOR * scale)]
        raise NearResonanceError(
            f"|Dz| below floor near omega={w:g}; densify the grid locally"
        )
    R = _constraint_rhs(wtk, om, T1, T2)
    Q = V1 * V1 + V2 * V2
    if np.any((V1 == 0.0) | (V2 == 0.0)) and not (spec1.is_zero or spec2.is_zero):
        raise AssumptionViolationError("coupling vanishes on the grid (assumption (ii))")
    with np.errstate(divide="ignore", invalid="ignore"):
        s = (R - 1j * np.pi * Q) / (V1 + V2)
        y1 = s / V1 + 1j * np.pi
        y2 = s / V2 + 1j * np.pi
        dv = V1 - V2
        if np.any(dv == 0.0):
            raise DegenerateBranchError(
                "V1 == V2 exactly on a grid point; the primed y's are unbounded there"
            )
        sp = (R - 1j * np.pi * Q) / dv
        y1p = sp / V1 + 1j * np.pi
        y2p = -sp / V2 + 1j * np.pi
    front = (om + wtk) / (2.0 * np.sqrt(2.0))
    r = (om - wtk) / (om + wtk)
    a0 = front * (V1 + V2) / D
    a0p = front * (V1 - V2) / D
    return DoubleFanoCoefficients(
        k=k, omega_k_tilde=wtk, grid=grid,
        y1=y1, y2=y2, y1p=y1p, y2p=y2p, z1=z1, z2=z2,
        alpha0=a0, alpha0p=a0p, beta0=r * a0, beta0p=r * a0p,
        V1=V1, V2=V2,
    )


def kernel_coeffs_double(spec1, spec2, k, omega, omega_prime, i,
                         medium: MediumParameters = MediumParameters()):
    """Smooth parts of (alpha_i, beta_i) for reservoir i at omega != omega'."""
    if i not in (1, 2):
        raise DomainError("reservoir index i must be 1 or 2")
    if omega <= 0 or omega_prime <= 0:
        raise DomainError("kernel coefficients need positive frequencies")
    if np.isclose(omega, omega_prime, rtol=1e-12, atol=0.0):
        raise DomainError("smooth kernel part undefined at omega == omega'; "
                          "see kernel_delta_coefficient_double")
    om = np.atleast_1d(np.float64(omega))
    wtk, V1, V2, T1, T2, z1, z2 = _z_pair(spec1, spec2, k, om, medium)
    D = om * om - wtk * wtk + z1 + z2
    a0 = (om + wtk) / (2.0 * np.sqrt(2.0)) * (V1 + V2) / D
    w_i = wtk / (om + wtk) * a0
    _, V1p, V2p = _couplings(spec1, spec2, k, medium, np.atleast_1d(omega_prime),
                             strict=False)
    Vp = V1p[0] if i == 1 else V2p[0]
    alpha_smooth = complex(w_i[0] * Vp / (omega - omega_prime))
    beta = complex(w_i[0] * Vp / (omega + omega_prime))
    return alpha_smooth, beta


def kernel_delta_coefficient_double(spec1, spec2, k, omega, i,
                                    medium: MediumParameters = MediumParameters()):
    """Coefficient of delta(omega-omega') in alpha_i: w_i(omega) y_i(omega)."""
    if i not in (1, 2):
        raise DomainError("reservoir index i must be 1 or 2")
    om = np.atleast_1d(np.float64(omega))
    wtk, V1, V2, T1, T2, z1, z2 = _z_pair(spec1, spec2, k, om, medium)
    D = om * om - wtk * wtk + z1 + z2
    a0 = (om + wtk) / (2.0 * np.sqrt(2.0)) * (V1 + V2) / D
    y1, y2 = y_solution(spec1, spec2, k, float(omega), "plus", medium)
    w_i = wtk / (om + wtk) * a0 * (V1 if i == 1 else V2)
    return complex(w_i[0] * (y1 if i == 1 else y2))


# -- Bogoliubov channels ----------------------------------------------------


@dataclass(frozen=True)
class BogoliubovChannels:
    """Electric/magnetic channel weights K_e = (C+C')/sqrt2, K_m = (C-C')/sqrt2."""

    grid: FrequencyGrid
    e_alpha: np.ndarray
    e_beta: np.ndarray
    m_alpha: np.ndarray
    m_beta: np.ndarray


def bogoliubov_split(coeffs: DoubleFanoCoefficients) -> BogoliubovChannels:
    """Rotate (C, C') into the channels that source P_N and M_N.

    The e-channel photon weight is proportional to V1, the m-channel weight
    to V2; in the V1 -> 0 limit the m channel reproduces the
    single-reservoir coefficients exactly.
    """
    rt = np.sqrt(2.0)
    return BogoliubovChannels(
        grid=coeffs.grid,
        e_alpha=(coeffs.alpha0 + coeffs.alpha0p) / rt,
        e_beta=(coeffs.beta0 + coeffs.beta0p) / rt,
        m_alpha=(coeffs.alpha0 - coeffs.alpha0p) / rt,
        m_beta=(coeffs.beta0 - coeffs.beta0p) / rt,
    )


def joint_sum_rule(coeffs: DoubleFanoCoefficients) -> float:
    """int (|a0|^2 - |b0|^2 + |a0'|^2 - |b0'|^2) domega on the table grid."""
    integrand = (np.abs(coeffs.alpha0) ** 2 - np.abs(coeffs.beta0) ** 2
                 + np.abs(coeffs.alpha0p) ** 2 - np.abs(coeffs.beta0p) ** 2)
    return float(np.trapezoid(integrand, coeffs.grid.points))


def channel_sum_rule(ch: BogoliubovChannels) -> tuple[float, float]:
    """Per-channel shares of the joint sum rule (they add up to it)."""
    e = np.abs(ch.e_alpha) ** 2 - np.abs(ch.e_beta) ** 2
    m = np.abs(ch.m_alpha) ** 2 - np.abs(ch.m_beta) ** 2
    x = ch.grid.points
    return float(np.trapezoid(e, x)), float(np.trapezoid(m, x))


# -- susceptibilities, field kernel, dispersion -----------------------------


def susceptibilities_md(spec1: CouplingSpectrum, spec2: CouplingSpectrum,
                        grid: FrequencyGrid):
    """(chi_e, chi_m) from the f1 and f2 spectra via the Cauchy engine."""
    return (transform_grid(spec1, grid, kind="electric"),
            transform_grid(spec2, grid, kind="magnetic"))


def mode_kernel_md(chi_e: Susceptibility, chi_m: Susceptibility, k: float,
                   omega: float, channel: str) -> complex:
    """omega sqrt(Im chi_e)/D or omega_k sqrt(Im chi_m)/D per channel,
    D = omega_k^2 (1 - chi_m) - omega^2 (1 + chi_e)."""
    _check_k(k)
    if channel not in ("e", "m"):
        raise DomainError(f"channel must be e|m, got {channel!r}")
    ce = chi_e.value_at(omega)
    cm = chi_m.value_at(omega)
    D = k * k * (1.0 - cm) - omega * omega * (1.0 + ce)
    if abs(D) < DENOM_FLOOR * max(omega * omega, k * k, 1.0):
        raise PoleProximityError(
            f"mode kernel pole at omega={omega:g} (lossless input)"
        )
    if channel == "e":
        return omega * np.sqrt(max(ce.imag, 0.0)) / D
    return k * np.sqrt(max(cm.imag, 0.0)) / D


def noise_amplitudes_md(chi_e: Susceptibility, chi_m: Susceptibility,
                        omega: float) -> tuple[float, float]:
    """(sqrt(2 Im chi_e), sqrt(2 Im chi_m)) in natural units."""
    ims = []
    for chi, tag in ((chi_e, "chi_e"), (chi_m, "chi_m")):
        im = chi.value_at(omega).imag
        if im < 0:
            raise PassivityError(f"Im {tag}(omega={omega:g}) = {im:g} < 0")
        ims.append(im)
    return float(np.sqrt(2.0 * ims[0])), float(np.sqrt(2.0 * ims[1]))


# -- analytic continuation + roots ------------------------------------------


def _continuation(chi: Susceptibility):
    """(f, fprime, poles) analytic continuation of chi off the real axis."""
    src = chi.source
    if src is None:
        return _rational_continuation(chi)
    if src.is_zero:
        zero = lambda z: np.zeros_like(np.asarray(z, complex))  # noqa: E731
        return zero, zero, np.empty(0, dtype=complex)
    if src.family == LORENTZIAN:
        c, g, wt = src.params

        def f(z):
            z = np.asarray(z, dtype=complex)
            return -(wt / 2.0) * (1.0 / (z - c + 1j * g) + 1.0 / (z + c + 1j * g))

        def fp(z):
            z = np.asarray(z, dtype=complex)
            return (wt / 2.0) * (1.0 / (z - c + 1j * g) ** 2 + 1.0 / (z + c + 1j * g) ** 2)

        return f, fp, np.array([c - 1j * g, -c - 1j * g])
    return _rational_continuation(chi)


def _rational_continuation(chi: Susceptibility):
    from scipy.interpolate import AAA

    x = chi.grid.points
    v = chi.values
    fit = AAA(x, v, rtol=1e-13)
    err = np.max(np.abs(fit(x) - v))
    if err > 1e-8 * np.max(np.abs(v)):
        raise DomainError(
            f"rational continuation fit error {err:.2e} exceeds the 1e-8 gate"
        )

    def fp(z, h=1e-6):
        z = np.asarray(z, dtype=complex)
        return (fit(z + h) - fit(z - h)) / (2 * h)

    # drop Froissart doublets: spurious poles carry negligible residue
    poles = np.asarray(fit.poles(), dtype=complex)
    res = np.abs(np.asarray(fit.residues(), dtype=complex))
    if res.size and res.max() > 0:
        poles = poles[res > 1e-6 * res.max()]
    return fit, fp, poles


def _winding_number(f, corners, n0=256, max_pass=14):
    """Winding of f around a closed polygon by adaptive phase tracking."""
    pts = []
    for a, b in zip(corners, corners[1:] + corners[:1]):
        pts.append(a + (b - a) * np.linspace(0.0, 1.0, n0, endpoint=False))
    zs = np.concatenate(pts)
    vals = f(zs)
    for _ in range(max_pass):
        nxt = np.roll(vals, -1)
        dphi = np.angle(nxt / vals)
        bad = np.abs(dphi) > 2.0
        if not np.any(bad):
            return int(np.rint(np.sum(dphi) / (2 * np.pi)))
        idx = np.where(bad)[0]
        mid = 0.5 * (zs[idx] + np.roll(zs, -1)[idx])
        zs = np.insert(zs, idx + 1, mid)
        vals = np.insert(vals, idx + 1, f(mid))
    raise RootFindingError("contour phase tracking failed to resolve the winding")


def dispersion_roots(chi_e: Susceptibility, chi_m: Susceptibility, k: float,
                     search=None, n_scan: int = 160) -> list[complex]:
    """All roots of D(omega) = omega_k^2(1-chi_m) - omega^2(1+chi_e) in the
    fourth quadrant, counted by the argument principle and polished by
    Newton iteration.  Passive media give Im(root) <= 0.
    """
    _check_k(k)
    fe, fep, pe = _continuation(chi_e)
    fm, fmp, pm = _continuation(chi_m)

    def D(z):
        z = np.asarray(z, dtype=complex)
        return k * k * (1.0 - fm(z)) - z * z * (1.0 + fe(z))

    def Dp(z):
        z = np.asarray(z, dtype=complex)
        return -k * k * fmp(z) - 2.0 * z * (1.0 + fe(z)) - z * z * fep(z)

    if search is None:
        hi = max(4.0 * k, 4.0)
        search = (1e-2, hi, -2.0)
    re_lo, re_hi, im_lo = search
    # passivity excludes upper-half-plane zeros, so the top edge may sit at
    # a height the phase tracker can resolve while still enclosing
    # real-axis roots (the lossless limit)
    im_hi = 1e-3
    corners = [complex(re_lo, im_lo), complex(re_hi, im_lo),
               complex(re_hi, im_hi), complex(re_lo, im_hi)]
    winding = _winding_number(D, corners)
    # the winding counts zeros minus the continuation poles inside
    poles = np.concatenate([pe, pm])
    n_poles = int(np.count_nonzero(
        (poles.real > re_lo) & (poles.real < re_hi)
        & (poles.imag > im_lo) & (poles.imag < im_hi)))
    count = winding + n_poles

    roots: list[complex] = []
    scan = n_scan
    for _attempt in range(3):
        rr = np.linspace(re_lo, re_hi, scan)
        ii = np.linspace(im_lo, im_hi, scan // 2)
        Z = rr[None, :] + 1j * ii[:, None]
        A = np.abs(D(Z))
        Ap = np.pad(A, 1, constant_values=np.inf)  # boundary minima count too
        isnbrmin = np.ones_like(A, dtype=bool)
        for di in (-1, 0, 1):
            for dj in (-1, 0, 1):
                if di == dj == 0:
                    continue
                isnbrmin &= A <= Ap[1 + di:Ap.shape[0] - 1 + di,
                                    1 + dj:Ap.shape[1] - 1 + dj]
        cand = Z[isnbrmin]
        roots = []
        for z0 in cand:
            z = complex(z0)
            ok = False
            for _ in range(80):
                dz = D(z) / Dp(z)
                z -= complex(dz)
                if abs(dz) < 1e-14 * (1.0 + abs(z)):
                    ok = True
                    break
            if not ok or not (re_lo - 1e-9 <= z.real <= re_hi + 1e-9
                              and im_lo - 1e-9 <= z.imag <= im_hi + 1e-9):
                continue
            if abs(complex(D(z))) > 1e-8 * max(k * k, abs(z) ** 2):
                continue
            if poles.size and np.min(np.abs(z - poles)) < 1e-5 * (1.0 + abs(z)):
                continue  # spurious zero glued to a continuation pole
            if all(abs(z - r) > 1e-7 * (1.0 + abs(z)) for r in roots):
                roots.append(z)
        if len(roots) == count:
            return sorted(roots, key=lambda z: z.real)
        scan *= 2
    raise RootFindingError(
        f"argument principle counts {count} roots but {len(roots)} converged"
    )


# -- residual checkers -------------------------------------------------------


def constraint_residual(spec1, spec2, k, coeffs: DoubleFanoCoefficients,
                        medium: MediumParameters = MediumParameters(),
                        independent: bool = True) -> np.ndarray:
    """|V1^2 y1 + V2^2 y2 - R| / scale pointwise, worst of the two branches.

    With ``independent`` the right side is recomputed by the independent
    quadrature route, so the residual bounds the production error.
    """
    om = coeffs.grid.points
    wtk = coeffs.omega_k_tilde
    T1, T2 = t_functions(spec1, spec2, k, om, medium, independent=independent)
    R = _constraint_rhs(wtk, om, T1, T2)
    q1 = coeffs.V1**2
    q2 = coeffs.V2**2
    scale = np.abs(R) + np.pi * (q1 + q2)
    r_plus = np.abs(q1 * coeffs.y1 + q2 * coeffs.y2 - R) / scale
    r_minus = np.abs(q1 * coeffs.y1p + q2 * coeffs.y2p - R) / scale
    return np.maximum(r_plus, r_minus)


def eigenoperator_residual(spec1, spec2, k, coeffs: DoubleFanoCoefficients,
                           medium: MediumParameters = MediumParameters()) -> np.ndarray:
    """Substitute the closed-form tables into the eigenoperator linear system.

    The photon rows reduce to (w - wtk) alpha0 = (alpha0 - beta0)/4 *
    sum_i [T_i + y_i V_i^2] with the T_i evaluated by the independent
    quadrature; the continuum rows hold algebraically.  Returns the
    relative residual per grid point (worst branch).
    """
    om = coeffs.grid.points
    wtk = coeffs.omega_k_tilde
    T1, T2 = t_functions(spec1, spec2, k, om, medium, independent=True)
    q1 = coeffs.V1**2
    q2 = coeffs.V2**2
    out = np.zeros(om.size)
    for a0, b0, y1, y2 in (
        (coeffs.alpha0, coeffs.beta0, coeffs.y1, coeffs.y2),
        (coeffs.alpha0p, coeffs.beta0p, coeffs.y1p, coeffs.y2p),
    ):
        lhs = (om - wtk) * a0
        rhs = 0.25 * (a0 - b0) * (T1 + T2 + y1 * q1 + y2 * q2)
        scale = np.abs(lhs) + 0.25 * np.abs(a0 - b0) * (
            np.abs(T1) + np.abs(T2) + np.abs(y1) * q1 + np.abs(y2) * q2) + 1e-300
        out = np.maximum(out, np.abs(lhs - rhs) / scale)
    return out


def orthogonality_defect(coeffs: DoubleFanoCoefficients) -> float:
    """Normalized delta-part of [C, C'+] at coincident frequencies.

    |sum_i V_i^2 (pi^2 + y_i conj(y_i'))| over the magnitude of the terms
    being cancelled; zero in exact arithmetic for the chosen branches.
    Near V1 = V2 crossings the individual terms blow up like 1/(V1-V2), so
    the cancellation quality, not the pi^2 Q scale, is the meaningful
    normalizer.
    """
    q1 = coeffs.V1**2
    q2 = coeffs.V2**2
    t1 = q1 * (np.pi**2 + coeffs.y1 * np.conj(coeffs.y1p))
    t2 = q2 * (np.pi**2 + coeffs.y2 * np.conj(coeffs.y2p))
    scale = np.pi**2 * (q1 + q2) + np.abs(t1) + np.abs(t2)
    return float(np.max(np.abs(t1 + t2) / scale))


def resonance_foci(spec1: CouplingSpectrum, spec2: CouplingSpectrum, k: float,
                   lo: float, hi: float,
                   medium: MediumParameters = MediumParameters(),
                   n_pilot: int = 1200):
    """Foci at the spectral lines plus the detected polariton resonances."""
    from .fano_single import detect_foci, spectral_foci
    from .medium import composite_grid

    base = spectral_foci(spec1) + spectral_foci(spec2)
    pilot = composite_grid(lo, hi, n_pilot, foci=base)
    coeffs = double_coeffs(spec1, spec2, k, pilot, medium)
    integrand = (np.abs(coeffs.alpha0) ** 2 - np.abs(coeffs.beta0) ** 2
                 + np.abs(coeffs.alpha0p) ** 2 - np.abs(coeffs.beta0p) ** 2)
    return base + detect_foci(pilot.points, integrand)
