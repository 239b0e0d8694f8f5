"""Medium parameters, coupling spectra and frequency grids.

Everything downstream is computed from a nonnegative spectral weight
S(omega) = |f(omega)|^2 describing how strongly the dressed matter couples
to the field at each frequency.  Natural units are used throughout:
hbar = eps0 = kappa0 = c = 1 and frequencies are measured in units of the
bare matter frequency omega0.  The spectral weight is extended to negative
frequencies as an even function, S(-omega) = S(omega); all full-line
integrals in the package rely on that convention.

Three parametric families are supported:

  lorentzian(center, width, weight)
      S(w) = weight*(width/pi) * [ 1/((w-center)^2+width^2)
                                 + 1/((w+center)^2+width^2) ]
      The mirror term at -center makes the even extension explicit; the
      full-line integral equals 2*weight.

  flat_band(lo, hi, height)
      S(w) = height for lo <= |w| <= hi, zero otherwise.

  tabulated(grid, values)
      Piecewise-linear between samples, zero outside the sampled support.
      Pointwise queries outside the support raise (no silent
      extrapolation); integral transforms treat the outside as zero.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, SupportError

__all__ = [
    "MediumParameters",
    "CouplingSpectrum",
    "FrequencyGrid",
    "SpectrumReport",
    "eval_spectrum",
    "longitudinal_frequency",
    "validate_spectrum",
    "composite_grid",
]

# family codes shared with the compiled kernels
LORENTZIAN = 0
FLAT_BAND = 1
TABULATED = 2

_FAMILY_NAMES = {LORENTZIAN: "lorentzian", FLAT_BAND: "flat_band", TABULATED: "tabulated"}

SPECTRUM_KINDS = ("f", "f1", "f2")


@dataclass(frozen=True)
class MediumParameters:
    """Scalar medium constants in natural units.

    omega0        bare matter frequency (the frequency unit; keep at 1.0)
    omega0_tilde  renormalized matter frequency, >= omega0
    omega_c       coupling frequency; k_c = omega_c since c = 1
    """

    omega0: float = 1.0
    omega0_tilde: float = 1.0
    omega_c: float = 0.0

    c_light = 1.0
    eps0 = 1.0
    kappa0 = 1.0
    hbar = 1.0

    def __post_init__(self):
        if not (self.omega0 > 0):
            raise DomainError(f"omega0 must be positive, got {self.omega0}")
        if self.omega0_tilde < self.omega0:
            raise DomainError(
                f"omega0_tilde={self.omega0_tilde} < omega0={self.omega0}; "
                "renormalization only raises the frequency"
            )
        if self.omega_c < 0:
            raise DomainError(f"omega_c must be nonnegative, got {self.omega_c}")

    @property
    def k_c(self) -> float:
        return self.omega_c / self.c_light

    @property
    def omega_L(self) -> float:
        """Longitudinal frequency sqrt(omega0^2 + omega_c^2)."""
        return float(np.hypot(self.omega0, self.omega_c))


def longitudinal_frequency(params: MediumParameters) -> float:
    """sqrt(omega0^2 + omega_c^2); monotone nondecreasing in omega_c."""
    return params.omega_L


@dataclass(frozen=True)
class CouplingSpectrum:
    """Even, nonnegative spectral weight S(omega) = |f(omega)|^2.

    ``kind`` tags which coupling the spectrum describes: 'f' for the
    single-reservoir (magnetizable) model, 'f1'/'f2' for the electric and
    magnetic channels of the two-reservoir model.
    """

    family: int
    kind: str = "f"
    params: tuple = ()
    grid: np.ndarray | None = None
    values: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in SPECTRUM_KINDS:
            raise DomainError(f"unknown spectrum kind {self.kind!r}")
        if self.family == TABULATED:
            g = np.asarray(self.grid, dtype=float)
            v = np.asarray(self.values, dtype=float)
            if g.ndim != 1 or g.size < 2:
                raise DomainError("tabulated spectrum needs at least 2 samples")
            if v.shape != g.shape:
                raise DomainError("tabulated grid/values length mismatch")
            if not np.all(np.diff(g) > 0):
                raise DomainError("tabulated grid must be strictly increasing")
            if g[0] <= 0:
                raise DomainError("tabulated grid must be positive")
            g = g.copy(); v = v.copy()
            g.flags.writeable = False
            v.flags.writeable = False
            object.__setattr__(self, "grid", g)
            object.__setattr__(self, "values", v)

    # -- constructors ---------------------------------------------------

    @classmethod
    def lorentzian(cls, center: float, width: float, weight: float, kind: str = "f"):
        if center <= 0 or width <= 0:
            raise DomainError("lorentzian needs center > 0 and width > 0")
        if weight < 0:
            raise DomainError("lorentzian weight must be nonnegative")
        return cls(LORENTZIAN, kind, (float(center), float(width), float(weight)))

    @classmethod
    def flat_band(cls, lo: float, hi: float, height: float, kind: str = "f"):
        if not (0 < lo < hi):
            raise DomainError("flat_band needs 0 < lo < hi")
        if height < 0:
            raise DomainError("flat_band height must be nonnegative")
        return cls(FLAT_BAND, kind, (float(lo), float(hi), float(height)))

    @classmethod
    def tabulated(cls, grid, values, kind: str = "f"):
        return cls(TABULATED, kind, (), np.asarray(grid, float), np.asarray(values, float))

    @classmethod
    def from_text(cls, source, kind: str = "f"):
        """Load a tabulated spectrum from two-column text (omega, S).

        Whitespace-separated, '#' starts a comment.  ``source`` may be a
        path or a file-like object.
        """
        data = np.loadtxt(source, comments="#", ndmin=2)
        if data.shape[1] < 2:
            raise DomainError("tabulated file needs two columns: omega, S(omega)")
        return cls.tabulated(data[:, 0], data[:, 1], kind=kind)

    # -- evaluation -----------------------------------------------------

    @property
    def family_name(self) -> str:
        return _FAMILY_NAMES[self.family]

    @property
    def is_zero(self) -> bool:
        """True when S vanishes identically (the decoupled limit)."""
        if self.family == TABULATED:
            return bool(np.all(self.values == 0.0))
        return self.params[2] == 0.0

    def __call__(self, omega):
        """S(|omega|) with the even extension.  Strict outside tabulated support."""
        w = np.abs(np.asarray(omega, dtype=float))
        if self.family == TABULATED:
            lo, hi = self.grid[0], self.grid[-1]
            if np.any(w < lo) or np.any(w > hi):
                raise SupportError(
                    f"tabulated spectrum queried outside its support [{lo}, {hi}]"
                )
            out = np.interp(w, self.grid, self.values)
        else:
            out = self._eval_analytic(w)
        return float(out) if np.isscalar(omega) else out

    def value_or_zero(self, omega):
        """Like ``__call__`` but zero outside a tabulated support (transform use)."""
        w = np.abs(np.asarray(omega, dtype=float))
        if self.family == TABULATED:
            out = np.interp(w, self.grid, self.values, left=0.0, right=0.0)
            out = np.where((w >= self.grid[0]) & (w <= self.grid[-1]), out, 0.0)
        else:
            out = self._eval_analytic(w)
        return float(out) if np.isscalar(omega) else out

    def _eval_analytic(self, w):
        if self.family == LORENTZIAN:
            c, g, wt = self.params
            return wt * (g / np.pi) * (
                1.0 / ((w - c) ** 2 + g * g) + 1.0 / ((w + c) ** 2 + g * g)
            )
        if self.family == FLAT_BAND:
            lo, hi, h = self.params
            return np.where((w >= lo) & (w <= hi), h, 0.0)
        raise DomainError(f"unknown family code {self.family}")

    # -- structure queries used by the transform engines -----------------

    def support(self) -> tuple[float, float]:
        """(lo, hi) outside of which S is zero; hi = inf for lorentzian."""
        if self.family == LORENTZIAN:
            return (0.0, np.inf)
        if self.family == FLAT_BAND:
            return (self.params[0], self.params[1])
        return (float(self.grid[0]), float(self.grid[-1]))

    def landmarks(self) -> np.ndarray:
        """Frequencies where S varies fast; quadrature panels break here."""
        if self.family == LORENTZIAN:
            c, g, _ = self.params
            pts = c + g * np.array([-30.0, -10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0, 30.0])
            return pts[pts > 0]
        if self.family == FLAT_BAND:
            return np.array(self.params[:2])
        return np.array([self.grid[0], self.grid[-1]])

    def spectral_tail_coeff(self) -> float:
        """s2 with S(w) ~ s2/w^2 as w -> inf (0 for compact support)."""
        if self.family == LORENTZIAN:
            c, g, wt = self.params
            return 2.0 * wt * g / np.pi
        return 0.0

    def chi_tail_coeffs(self) -> tuple[float, float]:
        """(a1, a3) with Re chi(w) ~ -a1/w - a3/w^3 for large w.

        a1 = int_0^inf S; a3 is the next moment (exact value for the
        lorentzian family comes from its closed-form transform).
        """
        if self.family == LORENTZIAN:
            c, g, wt = self.params
            return wt, wt * (c * c - g * g)
        if self.family == FLAT_BAND:
            lo, hi, h = self.params
            return h * (hi - lo), h * (hi**3 - lo**3) / 3.0
        x, y = self.grid, self.values
        a1 = float(np.trapezoid(y, x))
        a3 = float(np.trapezoid(y * x * x, x))
        return a1, a3

    def half_line_integral(self) -> float:
        """int_0^inf S(w) dw (exact for lorentzian/flat, trapezoid for tabulated)."""
        if self.family == LORENTZIAN:
            return self.params[2]
        if self.family == FLAT_BAND:
            lo, hi, h = self.params
            return h * (hi - lo)
        return float(np.trapezoid(self.values, self.grid))

    def packed(self):
        """(family_code, params, grid, values) for the compiled kernels."""
        par = np.asarray(self.params, dtype=float)
        if self.family == TABULATED:
            return self.family, par, self.grid, self.values
        empty = np.empty(0)
        return self.family, par, empty, empty


def eval_spectrum(spec: CouplingSpectrum, omega: float) -> float:
    """S(|omega|) using the even extension; raises outside tabulated support."""
    if not np.isfinite(omega):
        raise DomainError(f"omega must be finite, got {omega}")
    return spec(omega)


# -- admissibility diagnostics -------------------------------------------


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


@dataclass(frozen=True)
class SpectrumReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> tuple[str, ...]:
        return tuple(v.code for v in self.violations)

    def __str__(self):
        if self.ok:
            return "admissible"
        return "; ".join(f"{v.code}: {v.message}" for v in self.violations)


def validate_spectrum(spec: CouplingSpectrum) -> SpectrumReport:
    """Diagnostic report of violated admissibility assumptions.

    Checks, in order: pointwise nonnegativity, strict positivity on
    (0, inf) as required when the spectrum feeds a diagonalization
    (assumption (ii)), and integrability of the Cauchy tail.  An empty
    report means the spectrum is admissible for every operation.
    """
    out: list[Violation] = []

    if spec.family == TABULATED:
        neg = np.where(spec.values < 0)[0]
        if neg.size:
            w = spec.grid[neg[0]]
            out.append(Violation("negativity", f"S({w:g}) = {spec.values[neg[0]]:g} < 0"))
        if np.any(spec.values == 0):
            out.append(Violation(
                "assumption_ii",
                "tabulated spectrum vanishes on its support; every reservoir "
                "oscillator must couple",
            ))
        out.extend(_tail_violations(spec))
        if not np.all(np.isfinite(spec.values)):
            out.append(Violation("non_integrable_tail", "non-finite samples"))
        return SpectrumReport(tuple(out))

    if spec.family == FLAT_BAND:
        lo, hi, h = spec.params
        if h < 0:
            out.append(Violation("negativity", f"height {h:g} < 0"))
        out.append(Violation(
            "assumption_ii",
            f"flat_band vanishes outside [{lo:g}, {hi:g}]; admissible for "
            "transforms only, not for diagonalization",
        ))
        return SpectrumReport(tuple(out))

    # lorentzian
    c, g, wt = spec.params
    if wt < 0:
        out.append(Violation("negativity", f"weight {wt:g} < 0"))
    if wt == 0:
        out.append(Violation("assumption_ii", "zero weight: no coupling anywhere"))
    out.extend(_tail_violations(spec))
    return SpectrumReport(tuple(out))


def _tail_violations(spec: CouplingSpectrum) -> list[Violation]:
    # int_0^inf S/(1+w^2) must converge.  Compact supports always pass;
    # the lorentzian tail ~ 1/w^2 passes.  The stronger condition needed
    # by the electric channel (weight w^2 S) is flagged for kind 'f1'.
    out = []
    if spec.kind == "f1" and spec.spectral_tail_coeff() > 0:
        out.append(Violation(
            "non_integrable_tail_f1",
            "electric-channel transforms weight the spectrum by omega^2; "
            "S must decay faster than 1/omega^2 (use a compactly supported "
            "tabulation)",
        ))
    return out


# -- frequency grids -------------------------------------------------------


@dataclass(frozen=True)
class FrequencyGrid:
    """Strictly increasing positive frequencies plus the scheme that built them."""

    points: np.ndarray
    scheme: str = "linear"

    def __post_init__(self):
        p = np.asarray(self.points, dtype=float)
        if p.ndim != 1 or p.size < 2:
            raise DomainError("grid needs at least 2 points")
        if p[0] <= 0:
            raise DomainError("grid points must be positive")
        if not np.all(np.diff(p) > 0):
            raise DomainError("grid points must be strictly increasing")
        p = p.copy()
        p.flags.writeable = False
        object.__setattr__(self, "points", p)

    def __len__(self):
        return self.points.size

    @classmethod
    def linear(cls, lo: float, hi: float, n: int):
        return cls(np.linspace(lo, hi, n), "linear")

    @classmethod
    def log(cls, lo: float, hi: float, n: int):
        return cls(np.geomspace(lo, hi, n), "log")

    @classmethod
    def composite(cls, lo: float, hi: float, n: int, foci=()):
        return composite_grid(lo, hi, n, foci)

    def refined(self, factor: int = 2) -> "FrequencyGrid":
        """Insert factor-1 midpoints per interval (keeps the span)."""
        p = self.points
        segs = [np.linspace(p[i], p[i + 1], factor + 1)[:-1] for i in range(p.size - 1)]
        pts = np.concatenate(segs + [p[-1:]])
        return FrequencyGrid(pts, self.scheme)


def composite_grid(lo: float, hi: float, n: int, foci=()) -> FrequencyGrid:
    """Log backbone plus arcsinh-clustered points around each (center, scale) focus.

    Half the budget goes to the backbone, the rest is split among the foci;
    clustering is uniform in asinh((w-center)/scale), i.e. spacing ~ scale
    near the focus and geometric away from it.  Duplicates closer than
    1e-6 * local scale are dropped (floor spacing of the densification).
    """
    if not (0 < lo < hi):
        raise DomainError("composite grid needs 0 < lo < hi")
    foci = [(float(c), float(s)) for c, s in foci]
    n_backbone = n if not foci else max(n // 4, 16)
    parts = [np.geomspace(lo, hi, n_backbone)]
    if foci:
        per = max((n - n_backbone) // len(foci), 8)
        for c, s in foci:
            ua = np.arcsinh((lo - c) / s)
            ub = np.arcsinh((hi - c) / s)
            u = np.linspace(ua, ub, per)
            parts.append(c + s * np.sinh(u))
    pts = np.unique(np.concatenate(parts))
    pts = pts[(pts >= lo) & (pts <= hi)]
    scale = min(s for _, s in foci) if foci else (hi - lo)
    keep = np.concatenate([[True], np.diff(pts) > 1e-6 * scale])
    return FrequencyGrid(pts[keep], "composite")
