"""Configuration ingestion, command dispatch and bit-stable output.

Config files are flat INI: a ``[medium]`` section, one ``[spectrum.NAME]``
section per coupling spectrum (NAME in {f, f1, f2}), ``[grid]``, ``[run]``,
``[tolerances]`` and ``[output]``.  Every command writes CSV tables with 17
significant digits in lowercase scientific notation, so identical inputs
produce byte-identical files; ``report`` writes one JSON summary with a
pass/fail entry per invariant.

Exit codes: 0 success, 1 a named check or invariant failed, 2 the
configuration did not parse or validate.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from pathlib import Path

import numpy as np

from . import bath_oracle as bo
from . import fano_double as fd
from . import fano_single as fs
from .cauchy import kk_residual, time_domain_response, transform_grid
from .errors import ConfigError, FanoMediumError
from .medium import (
    CouplingSpectrum,
    FrequencyGrid,
    MediumParameters,
    composite_grid,
    validate_spectrum,
)

SCHEMA_VERSION = 1

COMMANDS = ("chi", "kk", "fano1", "fano2", "dispersion", "fdt", "oracle", "report")

DEFAULT_TOLERANCES = {
    "plemelj_ulps": 4.0,
    "kk_residual": 1e-5,
    "causality": 1e-4,
    "sum_rule": 1e-3,
    "ratio_ulps": 4.0,
    "constraint": 1e-8,
    "eigenop": 1e-8,
    "orthogonality": 1e-3,
    "oracle_chi": 0.01,
    "oracle_alpha": 0.02,
    "completeness": 1e-10,
    "fdt_ulps": 4.0,
    "dispersion_im": 1e-12,
    "limit_consistency": 1e-6,
}

KIND_TO_SUSCEPTIBILITY = {"f": "magnetic", "f1": "electric", "f2": "magnetic"}


def _fmt(x: float) -> str:
    return f"{x:.16e}"


class RunConfig:
    """Parsed and validated run configuration."""

    def __init__(self, medium, spectra, grid_spec, k_values, bath_modes,
                 bath_band, taus, tolerances, out_format):
        self.medium = medium
        self.spectra = spectra            # dict name -> CouplingSpectrum
        self.grid_spec = grid_spec        # (scheme, lo, hi, n, foci or None)
        self.k_values = k_values
        self.bath_modes = bath_modes
        self.bath_band = bath_band
        self.taus = taus
        self.tolerances = tolerances
        self.out_format = out_format

    @classmethod
    def load(cls, path) -> "RunConfig":
        cp = configparser.ConfigParser()
        read = cp.read(path)
        if not read:
            raise ConfigError(f"cannot read config file {path}")
        try:
            return cls._parse(cp, Path(path).parent)
        except (configparser.Error, ValueError, KeyError) as exc:
            raise ConfigError(f"invalid configuration: {exc}") from exc

    @classmethod
    def _parse(cls, cp, base_dir):
        med = cp["medium"] if cp.has_section("medium") else {}
        omega0 = float(med.get("omega0", 1.0))
        if omega0 <= 0:
            raise ConfigError("medium.omega0 must be positive")
        # unit conversion happens here and only here: everything below is
        # expressed in units of omega0
        medium = MediumParameters(
            omega0=1.0,
            omega0_tilde=float(med.get("omega0_tilde", omega0)) / omega0,
            omega_c=float(med.get("omega_c", 0.0)) / omega0,
        )

        spectra = {}
        for section in cp.sections():
            if not section.startswith("spectrum."):
                continue
            name = section.split(".", 1)[1]
            if name not in ("f", "f1", "f2"):
                raise ConfigError(f"spectrum name must be f|f1|f2, got {name!r}")
            s = cp[section]
            family = s.get("family", "").strip()
            if family == "lorentzian":
                spec = CouplingSpectrum.lorentzian(
                    float(s["center"]) / omega0, float(s["width"]) / omega0,
                    float(s["weight"]), kind=name)
            elif family == "flat_band":
                spec = CouplingSpectrum.flat_band(
                    float(s["lo"]) / omega0, float(s["hi"]) / omega0,
                    float(s["height"]), kind=name)
            elif family == "tabulated":
                p = Path(s["path"])
                if not p.is_absolute():
                    p = base_dir / p
                spec = CouplingSpectrum.from_text(p, kind=name)
                if omega0 != 1.0:
                    spec = CouplingSpectrum.tabulated(
                        spec.grid / omega0, spec.values, kind=name)
            else:
                raise ConfigError(f"unknown spectrum family {family!r} in {section}")
            spectra[name] = spec
        if not spectra:
            raise ConfigError("at least one [spectrum.*] section is required")

        g = cp["grid"] if cp.has_section("grid") else {}
        scheme = g.get("scheme", "composite").strip()
        lo = float(g.get("lo", 1e-3)) / omega0
        hi = float(g.get("hi", 50.0)) / omega0
        n = int(g.get("points", 2000))
        foci = None
        if "foci" in g:
            foci = []
            for tok in g["foci"].split(","):
                c, w = tok.split(":")
                foci.append((float(c) / omega0, float(w) / omega0))
        grid_spec = (scheme, lo, hi, n, foci)

        r = cp["run"] if cp.has_section("run") else {}
        k_values = [float(t) / omega0 for t in r.get("k_values", "1.0").split(",")]
        if any(k <= 0 for k in k_values):
            raise ConfigError("k_values must be positive")
        bath_modes = int(r.get("bath_modes", 256))
        band_tok = r.get("bath_band", f"{lo * omega0}, {hi * omega0}").split(",")
        bath_band = (float(band_tok[0]) / omega0, float(band_tok[1]) / omega0)
        taus = np.linspace(float(r.get("tau_lo", -20.0)),
                           float(r.get("tau_hi", 20.0)),
                           int(r.get("tau_points", 801)))

        tolerances = dict(DEFAULT_TOLERANCES)
        if cp.has_section("tolerances"):
            for key, val in cp["tolerances"].items():
                if key not in tolerances:
                    raise ConfigError(f"unknown tolerance {key!r}")
                v = float(val)
                if v <= 0:
                    raise ConfigError(f"tolerance {key} must be positive")
                tolerances[key] = v

        out_format = "csv"
        if cp.has_section("output"):
            out_format = cp["output"].get("format", "csv").strip()
            if out_format not in ("csv", "json"):
                raise ConfigError(f"output format must be csv|json, got {out_format!r}")
        return cls(medium, spectra, grid_spec, k_values, bath_modes,
                   bath_band, taus, tolerances, out_format)

    # -- derived objects --------------------------------------------------

    def build_grid(self, n_override=None) -> FrequencyGrid:
        scheme, lo, hi, n, foci = self.grid_spec
        n = n_override or n
        if scheme == "linear":
            return FrequencyGrid.linear(lo, hi, n)
        if scheme == "log":
            return FrequencyGrid.log(lo, hi, n)
        if scheme != "composite":
            raise ConfigError(f"unknown grid scheme {scheme!r}")
        if foci is None:
            foci = self.auto_foci(lo, hi)
        return composite_grid(lo, hi, n, foci)

    def auto_foci(self, lo, hi):
        k = self.k_values[0]
        if "f1" in self.spectra and "f2" in self.spectra:
            return fd.resonance_foci(self.spectra["f1"], self.spectra["f2"],
                                     k, lo, hi, self.medium)
        if "f" in self.spectra:
            return fs.resonance_foci(self.spectra["f"], k, lo, hi)
        spec = next(iter(self.spectra.values()))
        return fs.spectral_foci(spec)


# ---------------------------------------------------------------------------
# table writers
# ---------------------------------------------------------------------------


def _write_table(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(float(v)) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _write_metrics(path: Path, metrics: dict) -> None:
    lines = ["metric,value"]
    for key in sorted(metrics):
        lines.append(f"{key},{_fmt(float(metrics[key]))}")
    path.write_text("\n".join(lines) + "\n")


def _ktag(k: float) -> str:
    return f"{k:g}".replace(".", "p")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _cmd_chi(cfg, out, grid):
    files = []
    for name, spec in sorted(cfg.spectra.items()):
        chi = transform_grid(spec, grid, KIND_TO_SUSCEPTIBILITY[name])
        path = out / f"chi_{name}.csv"
        _write_table(path, ["omega", "re_chi", "im_chi"],
                     zip(grid.points, chi.values.real, chi.values.imag))
        files.append(path)
    return {"files": files}


def _cmd_kk(cfg, out, grid):
    files = []
    worst = {}
    for name, spec in sorted(cfg.spectra.items()):
        chi = transform_grid(spec, grid, KIND_TO_SUSCEPTIBILITY[name])
        res = kk_residual(chi)
        resp = time_domain_response(chi, cfg.taus)
        neg = np.abs(resp[cfg.taus < 0])
        pos = np.abs(resp[cfg.taus > 0])
        floor = float(neg.max() / pos.max()) if pos.size and pos.max() > 0 else 0.0
        path = out / f"kk_{name}.csv"
        _write_metrics(path, {"kk_residual": res, "causality_floor": floor})
        files.append(path)
        worst[name] = (res, floor)
    return {"files": files, "metrics": worst}


def _cmd_fano1(cfg, out, grid):
    if "f" not in cfg.spectra:
        raise ConfigError("fano1 needs a [spectrum.f] section")
    spec = cfg.spectra["f"]
    files = []
    checks = {}
    for k in cfg.k_values:
        coeffs = fs.single_coeffs(spec, k, grid)
        path = out / f"fano1_k{_ktag(k)}.csv"
        _write_table(
            path,
            ["omega", "re_alpha0", "im_alpha0", "re_beta0", "im_beta0",
             "re_z", "im_z"],
            zip(grid.points,
                coeffs.alpha0_t.real, coeffs.alpha0_t.imag,
                coeffs.beta0_t.real, coeffs.beta0_t.imag,
                coeffs.z.real, coeffs.z.imag))
        files.append(path)
        lhs = coeffs.beta0_t * (grid.points + k)
        rhs = coeffs.alpha0_t * (grid.points - k)
        ulp = np.abs(lhs - rhs) / np.maximum(np.spacing(np.abs(lhs)), 5e-324)
        checks[f"sum_rule_k{_ktag(k)}"] = fs.sum_rule(coeffs)
        checks[f"ratio_law_max_ulp_k{_ktag(k)}"] = float(np.max(ulp))
    cpath = out / "fano1_checks.csv"
    _write_metrics(cpath, checks)
    files.append(cpath)
    return {"files": files, "metrics": checks}


def _require_double(cfg):
    missing = [n for n in ("f1", "f2") if n not in cfg.spectra]
    if missing:
        raise ConfigError(f"fano2-type commands need spectrum sections: {missing}")
    for name in ("f1", "f2"):
        report = validate_spectrum(cfg.spectra[name])
        if not report.ok:
            raise FanoMediumError(
                f"check spectrum_admissible_{name} failed: {report}")
    return cfg.spectra["f1"], cfg.spectra["f2"]


def _cmd_fano2(cfg, out, grid):
    spec1, spec2 = _require_double(cfg)
    files = []
    checks = {}
    for k in cfg.k_values:
        coeffs = fd.double_coeffs(spec1, spec2, k, grid, cfg.medium)
        path = out / f"fano2_k{_ktag(k)}.csv"
        cols = {"omega": grid.points, "V1": coeffs.V1, "V2": coeffs.V2}
        for nm in ("alpha0", "alpha0p", "beta0", "beta0p",
                   "y1", "y2", "y1p", "y2p", "z1", "z2"):
            v = getattr(coeffs, nm)
            cols[f"re_{nm}"] = v.real
            cols[f"im_{nm}"] = v.imag
        _write_table(path, list(cols), zip(*cols.values()))
        files.append(path)
        tag = _ktag(k)
        checks[f"joint_sum_rule_k{tag}"] = fd.joint_sum_rule(coeffs)
        checks[f"constraint_residual_k{tag}"] = float(np.max(
            fd.constraint_residual(spec1, spec2, k, coeffs, cfg.medium)))
        checks[f"eigenop_residual_k{tag}"] = float(np.max(
            fd.eigenoperator_residual(spec1, spec2, k, coeffs, cfg.medium)))
        checks[f"orthogonality_defect_k{tag}"] = fd.orthogonality_defect(coeffs)
        se, sm = fd.channel_sum_rule(fd.bogoliubov_split(coeffs))
        checks[f"channel_sum_e_k{tag}"] = se
        checks[f"channel_sum_m_k{tag}"] = sm
    cpath = out / "fano2_checks.csv"
    _write_metrics(cpath, checks)
    files.append(cpath)
    return {"files": files, "metrics": checks}


def _cmd_dispersion(cfg, out, grid):
    spec1, spec2 = _require_double(cfg)
    chi_e = transform_grid(spec1, grid, "electric")
    chi_m = transform_grid(spec2, grid, "magnetic")
    files = []
    worst_im = -np.inf
    for k in cfg.k_values:
        roots = fd.dispersion_roots(chi_e, chi_m, k)
        path = out / f"dispersion_k{_ktag(k)}.csv"
        _write_table(path, ["re_omega", "im_omega"],
                     [(r.real, r.imag) for r in roots])
        files.append(path)
        if roots:
            worst_im = max(worst_im, max(r.imag for r in roots))
    return {"files": files, "metrics": {"max_im_root": worst_im}}


def _fdt_rows(chi, spec):
    om = chi.grid.points
    im = chi.values.imag
    amp = np.sqrt(2.0 * np.maximum(im, 0.0))
    s = spec.value_or_zero(om)
    res_sq = np.abs(amp * amp - 2.0 * im)
    res_pi = np.abs(amp * amp - np.pi * s)
    return zip(om, im, amp, res_sq, res_pi), res_sq, res_pi, im


def _cmd_fdt(cfg, out, grid):
    files = []
    checks = {}
    for name, spec in sorted(cfg.spectra.items()):
        chi = transform_grid(spec, grid, KIND_TO_SUSCEPTIBILITY[name])
        rows, res_sq, res_pi, im = _fdt_rows(chi, spec)
        path = out / f"fdt_{name}.csv"
        _write_table(path, ["omega", "im_chi", "amplitude",
                            "resid_square_vs_2im", "resid_square_vs_pi_s"], rows)
        files.append(path)
        scale = np.maximum(np.spacing(2.0 * np.abs(im)), 5e-324)
        checks[f"fdt_sq_max_ulp_{name}"] = float(np.max(res_sq / scale))
        checks[f"fdt_pis_max_ulp_{name}"] = float(np.max(res_pi / scale))
    cpath = out / "fdt_checks.csv"
    _write_metrics(cpath, checks)
    files.append(cpath)
    return {"files": files, "metrics": checks}


def _cmd_oracle(cfg, out, grid, bath_modes=None):
    files = []
    metrics = {}
    nbath = bath_modes or cfg.bath_modes
    for name, spec in sorted(cfg.spectra.items()):
        if spec.family == 1:  # flat bands are transform-only
            continue
        bath = bo.discretize(spec, min(4096, max(nbath * 16, 1024)),
                             cfg.bath_band, scheme="composite")
        probes = grid.points[(grid.points >= 0.1) & (grid.points <= 10.0)]
        chi_n = bo.discrete_susceptibility(bath, probes)
        chi = transform_grid(spec, grid, KIND_TO_SUSCEPTIBILITY[name])
        sel = (grid.points >= 0.1) & (grid.points <= 10.0)
        err = float(np.max(np.abs(chi_n - chi.values[sel]))
                    / np.max(np.abs(chi.values)))
        metrics[f"discrete_chi_err_{name}"] = err
        path = out / f"oracle_{name}.csv"
        _write_metrics(path, {
            "n_modes": bath.n_modes,
            "weight_sum_error": bo.weight_sum_error(bath, spec),
            "discrete_chi_sup_rel_err": err,
        })
        files.append(path)
    if "f" in cfg.spectra:
        spec = cfg.spectra["f"]
        for k in cfg.k_values:
            bath = bo.discretize(spec, nbath, cfg.bath_band, scheme="composite")
            H = bo.hamiltonian_single(spec, k, bath)
            coeffs = fs.single_coeffs(spec, k, grid)
            cmp = bo.compare_fano(H, coeffs)
            path = out / f"oracle_fano_k{_ktag(k)}.csv"
            _write_metrics(path, {
                "coefficient_supnorm": cmp.coefficient_supnorm,
                "n_compared": cmp.n_compared,
                "sum_rule": cmp.sum_rule,
                "completeness_defect": cmp.completeness_defect,
                "eigenop_residual": cmp.eigenop_residual,
            })
            files.append(path)
            metrics[f"oracle_alpha_supnorm_k{_ktag(k)}"] = cmp.coefficient_supnorm
            metrics[f"completeness_defect_k{_ktag(k)}"] = cmp.completeness_defect
    return {"files": files, "metrics": metrics}


def _cmd_report(cfg, out, grid, bath_modes=None):
    tol = cfg.tolerances
    checks = []

    def add(name, value, tolerance):
        checks.append({
            "name": name,
            "value": float(value),
            "tolerance": float(tolerance),
            "pass": bool(value <= tolerance),
        })

    for name, spec in sorted(cfg.spectra.items()):
        chi = transform_grid(spec, grid, KIND_TO_SUSCEPTIBILITY[name])
        s = spec.value_or_zero(grid.points)
        plemelj = np.abs(chi.values.imag - 0.5 * np.pi * s)
        scale = np.maximum(np.spacing(np.abs(chi.values.imag)), 5e-324)
        add(f"plemelj_max_ulp_{name}", np.max(plemelj / scale), tol["plemelj_ulps"])
        add(f"kk_residual_{name}", kk_residual(chi), tol["kk_residual"])
        resp = time_domain_response(chi, cfg.taus)
        pos = np.abs(resp[cfg.taus > 0])
        neg = np.abs(resp[cfg.taus < 0])
        floor = neg.max() / pos.max() if pos.max() > 0 else 0.0
        add(f"causality_floor_{name}", floor, tol["causality"])
        amp2 = 2.0 * np.maximum(chi.values.imag, 0.0)
        res_pi = np.abs(amp2 - np.pi * s)
        add(f"fdt_pis_max_ulp_{name}", np.max(res_pi / np.maximum(
            np.spacing(amp2), 5e-324)), tol["fdt_ulps"])

    k0 = cfg.k_values[0]
    if "f" in cfg.spectra:
        spec = cfg.spectra["f"]
        coeffs = fs.single_coeffs(spec, k0, grid)
        add("single_sum_rule_defect", abs(fs.sum_rule(coeffs) - 1.0), tol["sum_rule"])
        lhs = coeffs.beta0_t * (grid.points + k0)
        rhs = coeffs.alpha0_t * (grid.points - k0)
        ulp = np.abs(lhs - rhs) / np.maximum(np.spacing(np.abs(lhs)), 5e-324)
        add("single_ratio_law_max_ulp", np.max(ulp), tol["ratio_ulps"])
        nbath = bath_modes or cfg.bath_modes
        bath = bo.discretize(spec, nbath, cfg.bath_band, scheme="composite")
        cmp = bo.compare_fano(bo.hamiltonian_single(spec, k0, bath), coeffs)
        add("oracle_alpha_supnorm", cmp.coefficient_supnorm, tol["oracle_alpha"])
        add("oracle_completeness_defect", cmp.completeness_defect, tol["completeness"])
        add("single_eigenop_residual", cmp.eigenop_residual, tol["eigenop"])
        bath4k = bo.discretize(spec, 4096, cfg.bath_band, scheme="composite")
        sel = (grid.points >= 0.1) & (grid.points <= 10.0)
        chi = transform_grid(spec, grid, "magnetic")
        chi_n = bo.discrete_susceptibility(bath4k, grid.points[sel])
        add("oracle_chi_err",
            np.max(np.abs(chi_n - chi.values[sel])) / np.max(np.abs(chi.values)),
            tol["oracle_chi"])

    if "f1" in cfg.spectra and "f2" in cfg.spectra:
        spec1, spec2 = _require_double(cfg)
        coeffs = fd.double_coeffs(spec1, spec2, k0, grid, cfg.medium)
        add("joint_sum_rule_defect", abs(fd.joint_sum_rule(coeffs) - 1.0),
            tol["sum_rule"])
        add("constraint_residual", np.max(
            fd.constraint_residual(spec1, spec2, k0, coeffs, cfg.medium)),
            tol["constraint"])
        add("eigenop_residual", np.max(
            fd.eigenoperator_residual(spec1, spec2, k0, coeffs, cfg.medium)),
            tol["eigenop"])
        add("orthogonality_defect", fd.orthogonality_defect(coeffs),
            tol["orthogonality"])
        add("cross_channel_form", bo.cross_channel_form(
            spec1, spec2, k0, coeffs, cfg.medium), tol["orthogonality"])
        # dispersion roots need an analytic continuation; piecewise spectra
        # have a branch cut instead of a second sheet, so only closed-form
        # families are checked here (the vacuum limit always is)
        if all(cfg.spectra[n].family == 0 or cfg.spectra[n].is_zero
               for n in ("f1", "f2")):
            chi_e = transform_grid(spec1, grid, "electric")
            chi_m = transform_grid(spec2, grid, "magnetic")
            roots = fd.dispersion_roots(chi_e, chi_m, k0)
            add("dispersion_max_im_root",
                max((r.imag for r in roots), default=-1.0), tol["dispersion_im"])

    zero = CouplingSpectrum.lorentzian(1.0, 0.1, 0.0)
    vac_e = transform_grid(CouplingSpectrum(0, "f1", zero.params), grid, "electric")
    vac_m = transform_grid(CouplingSpectrum(0, "f2", zero.params), grid, "magnetic")
    vac_roots = fd.dispersion_roots(vac_e, vac_m, k0)
    add("vacuum_root_err",
        min((abs(r - k0) for r in vac_roots), default=np.inf), tol["dispersion_im"])

    report = {
        "schema_version": SCHEMA_VERSION,
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }
    path = out / "report.json"
    path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    status = 0 if report["pass"] else 1
    failing = [c["name"] for c in checks if not c["pass"]]
    return {"files": [path], "metrics": report, "status": status,
            "failing": failing}


def run_command(cfg: RunConfig, command: str, out_dir, grid_points=None,
                bath_modes=None):
    """Dispatch one command; returns (exit_status, artifact dict)."""
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    grid = cfg.build_grid(grid_points)
    if command == "chi":
        result = _cmd_chi(cfg, out, grid)
    elif command == "kk":
        result = _cmd_kk(cfg, out, grid)
    elif command == "fano1":
        result = _cmd_fano1(cfg, out, grid)
    elif command == "fano2":
        result = _cmd_fano2(cfg, out, grid)
    elif command == "dispersion":
        result = _cmd_dispersion(cfg, out, grid)
    elif command == "fdt":
        result = _cmd_fdt(cfg, out, grid)
    elif command == "oracle":
        result = _cmd_oracle(cfg, out, grid, bath_modes)
    else:
        result = _cmd_report(cfg, out, grid, bath_modes)
    return result.get("status", 0), result


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="fano-medium",
        description="Fano diagonalization and noise amplitudes for lossy media",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="INI run configuration")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--grid-points", type=int, default=None)
    parser.add_argument("--bath-modes", type=int, default=None)
    args = parser.parse_args(argv)

    try:
        cfg = RunConfig.load(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        status, result = run_command(cfg, args.command, args.out,
                                     args.grid_points, args.bath_modes)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except FanoMediumError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    for f in result.get("files", []):
        print(f"wrote {f}")
    if args.command == "report":
        for c in result["metrics"]["checks"]:
            flag = "PASS" if c["pass"] else "FAIL"
            print(f"{flag} {c['name']}: {c['value']:.3e} (tol {c['tolerance']:.1e})")
        if status != 0:
            print("failing checks: " + ", ".join(result["failing"]),
                  file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
