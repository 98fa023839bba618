"""Scenario runner: build fields from a config file, verify, emit CSV + report.

Config grammar (documented in the README): one ``key = value`` pair per
line, ``#`` comments, dotted keys for grouping.  Values are Python
literals (numbers, complex, lists, strings); bare words are strings.

Verbs:  run <config>   execute a scenario, write report.txt and CSV files
        check <config> validate a config and print the derived summary
        presets <dir>  write one runnable example config per scenario

Exit codes: 0 success, 1 invariant failure, 2 config error.
All outputs are deterministic functions of (config, seed): identical
inputs give byte-identical files.
"""

import argparse
import ast
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import fock as fk
from .lattice import (NATURAL, Grid3D, PhysicalConstants, SpectralField,
                      make_grid, si_constants, to_spatial, to_spectral)
from .helicity import (SpectralCoefficients, grid_basis, helicity_eigencheck,
                       project, synthesize, transverse_basis)
from .maxwell import (continuity_residual, evolve, observables,
                      transversality_residual)
from .photon import (centroid_velocity, density_comparison,
                     photon_number_spectrum, probability_current_consistency,
                     scale_to_photon, spin_form_current, synthesize_position)

SCENARIOS = ("monochromatic", "gaussian_pulse", "bichromatic", "fock_demo",
             "invariant_suite")


class ConfigError(Exception):
    """Anything wrong with a config file or its derived objects."""


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


# ---------------------------------------------------------------------------
# config parsing


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` lines into a flat dict of dotted keys."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            out[key] = ast.literal_eval(value)
        except (ValueError, SyntaxError):
            out[key] = value  # bare word -> string
    return out


def load_config(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text)


def _require(cfg: dict, key: str):
    if key not in cfg:
        raise ConfigError(f"missing required key {key!r}")
    return cfg[key]


def _int_triple(value, key: str) -> tuple:
    if np.isscalar(value):
        value = [value] * 3
    if len(value) != 3:
        raise ConfigError(f"{key} must have three components")
    return tuple(int(v) for v in value)


def _float_triple(value, key: str) -> tuple:
    if np.isscalar(value):
        value = [value] * 3
    if len(value) != 3:
        raise ConfigError(f"{key} must have three components")
    return tuple(float(v) for v in value)


def build_grid(cfg: dict) -> Grid3D:
    n = _int_triple(_require(cfg, "grid.n"), "grid.n")
    dr = _float_triple(_require(cfg, "grid.dr"), "grid.dr")
    origin = _float_triple(cfg.get("grid.origin", 0.0), "grid.origin")
    try:
        return make_grid(n, dr, origin)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def build_constants(cfg: dict) -> PhysicalConstants:
    explicit = {k.split(".", 1)[1]: v for k, v in cfg.items()
                if k.startswith("constants.")}
    name = cfg.get("constants", "natural")
    try:
        if explicit:
            return PhysicalConstants(**{k: float(v) for k, v in explicit.items()})
        if name == "natural":
            return NATURAL
        if name == "SI":
            return si_constants()
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad constants: {exc}") from exc
    raise ConfigError(f"constants must be 'natural', 'SI' or explicit "
                      f"constants.* values, got {name!r}")


def _helicity_mix(cfg: dict, key: str) -> tuple:
    mix = cfg.get(key, [1.0, 0.0])
    if np.isscalar(mix) or len(mix) != 2:
        raise ConfigError(f"{key} must be a pair of complex amplitudes")
    alpha, beta = complex(mix[0]), complex(mix[1])
    if alpha == 0 and beta == 0:
        raise ConfigError(f"{key} must not be identically zero")
    norm = np.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
    return alpha / norm, beta / norm


def _mode_amplitude(grid: Grid3D, energy: float) -> float:
    """Helicity amplitude giving a single k-bin the requested total energy."""
    return float(np.sqrt(energy / (2.0 * grid.k_cell_volume)))


def _bins_to_k(grid: Grid3D, bins) -> np.ndarray:
    return np.array([bins[a] * grid.dk[a] for a in range(3)])


def _place_mode(grid: Grid3D, cp, cm, bins, mix, amplitude):
    idx = grid.bin_index(bins)
    if all(b == 0 for b in bins):
        raise ConfigError("mode at the DC bin carries no photon")
    cp[idx] += mix[0] * amplitude
    cm[idx] += mix[1] * amplitude
    return idx


# ---------------------------------------------------------------------------
# field builders


def build_monochromatic(cfg, grid, consts) -> tuple:
    bins = _int_triple(_require(cfg, "mono.k"), "mono.k")
    mix = _helicity_mix(cfg, "mono.helicity_mix")
    omega = consts.c * float(np.linalg.norm(_bins_to_k(grid, bins)))
    if "mono.energy" in cfg:
        energy = float(cfg["mono.energy"])
    else:
        energy = float(cfg.get("mono.photons", 1.0)) * consts.hbar * omega
    cp = np.zeros(grid.shape, complex)
    cm = np.zeros(grid.shape, complex)
    _place_mode(grid, cp, cm, bins, mix, _mode_amplitude(grid, energy))
    coeffs = SpectralCoefficients(grid, cp, cm)
    return coeffs, {"omega": omega, "energy": energy,
                    "expected_photons": energy / (consts.hbar * omega)}


def build_gaussian_pulse(cfg, grid, consts) -> tuple:
    bins = _int_triple(_require(cfg, "pulse.k_center"), "pulse.k_center")
    bandwidth = float(cfg.get("pulse.bandwidth", 0.05))
    if not 0.0 < bandwidth <= 0.25:
        raise ConfigError("pulse.bandwidth must be in (0, 0.25]")
    mix = _helicity_mix(cfg, "pulse.helicity_mix")
    k0 = _bins_to_k(grid, bins)
    k0_norm = float(np.linalg.norm(k0))
    if k0_norm == 0.0:
        raise ConfigError("pulse.k_center must not be the DC bin")
    sigma = bandwidth * k0_norm
    kv = grid.k_vectors
    envelope = np.exp(-((kv - k0) ** 2).sum(-1) / (4.0 * sigma ** 2))
    envelope[0, 0, 0] = 0.0
    coeffs = SpectralCoefficients(grid, mix[0] * envelope, mix[1] * envelope)
    return coeffs, {"k_center": k0, "sigma": sigma,
                    "omega0": consts.c * k0_norm}


def build_bichromatic(cfg, grid, consts) -> tuple:
    bins1 = _int_triple(_require(cfg, "bichromatic.k1"), "bichromatic.k1")
    bins2 = _int_triple(_require(cfg, "bichromatic.k2"), "bichromatic.k2")
    e1 = float(_require(cfg, "bichromatic.e1"))
    e2 = float(_require(cfg, "bichromatic.e2"))
    mix = _helicity_mix(cfg, "bichromatic.helicity_mix")
    cp = np.zeros(grid.shape, complex)
    cm = np.zeros(grid.shape, complex)
    _place_mode(grid, cp, cm, bins1, mix, _mode_amplitude(grid, e1))
    _place_mode(grid, cp, cm, bins2, mix, _mode_amplitude(grid, e2))
    w1 = consts.c * float(np.linalg.norm(_bins_to_k(grid, bins1)))
    w2 = consts.c * float(np.linalg.norm(_bins_to_k(grid, bins2)))
    coeffs = SpectralCoefficients(grid, cp, cm)
    expected = e1 / (consts.hbar * w1) + e2 / (consts.hbar * w2)
    return coeffs, {"omega1": w1, "omega2": w2, "e1": e1, "e2": e2,
                    "expected_photons": expected}


def build_fock(cfg, grid, consts) -> tuple:
    raw_modes = _require(cfg, "fock.modes")
    if not raw_modes:
        raise ConfigError("fock.modes must declare at least one mode")
    modes = []
    for entry in raw_modes:
        if len(entry) != 4:
            raise ConfigError("each fock mode is [bx, by, bz, helicity]")
        bins = _int_triple(entry[:3], "fock.modes entry")
        modes.append((tuple(_bins_to_k(grid, bins)), int(entry[3])))
    try:
        modeset = fk.ModeSet(modes=tuple(modes),
                             max_occupation=int(cfg.get("fock.max_occupation", 3)))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    state = fk.FockState.vacuum(modeset)
    prep = cfg.get("fock.preparation", [0])
    for step in prep:
        step = int(step)
        if not 0 <= step < len(modeset):
            raise ConfigError(f"fock.preparation index {step} out of range")
        state = fk.create(state, step)
    if state.is_zero:
        raise ConfigError("preparation truncated the state to zero")
    return modeset, state.normalized(), {"preparation": [int(s) for s in prep]}


# ---------------------------------------------------------------------------
# checks and report plumbing


@dataclass
class Check:
    name: str
    measured: float
    tol: float
    passed: bool
    kind: str = "max"  # "max": measured <= tol; "min": measured >= tol

    @classmethod
    def at_most(cls, name, measured, tol):
        return cls(name, float(measured), float(tol), float(measured) <= float(tol))

    @classmethod
    def at_least(cls, name, measured, tol):
        return cls(name, float(measured), float(tol),
                   float(measured) >= float(tol), kind="min")

    @classmethod
    def within(cls, name, measured, lo, hi):
        c = cls(name, float(measured), float(hi),
                lo <= float(measured) <= float(hi), kind=f"range[{lo},{hi}]")
        return c

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        rel = {"max": "<=", "min": ">="}.get(self.kind, "in")
        bound = _fmt(self.tol) if self.kind in ("max", "min") else self.kind[5:]
        return (f"[{status}] {self.name}: measured={_fmt(self.measured)} "
                f"required {rel} {bound}")


def _photon_norm_checks(coeffs, consts, times) -> list:
    p = scale_to_photon(synthesize(coeffs), consts)
    checks = []
    worst = 0.0
    for t in times:
        densities, _ = synthesize_position(p, t)
        worst = max(worst, abs(densities.total - 1.0))
    checks.append(Check.at_most("photon_norm_unity_over_time", worst, 1e-10))
    return checks


def _current_checks(coeffs, consts) -> list:
    p = scale_to_photon(synthesize(coeffs), consts)
    gap = probability_current_consistency(p, 0.0)
    _, psi = synthesize_position(p, 0.0)
    flux = observables(psi, consts)
    return [Check.at_most("current_spin_vs_cross_form", gap, 1e-12),
            Check.at_most("current_realness", flux.imag_residual, 1e-12)]


# ---------------------------------------------------------------------------
# CSV writers


def write_spectrum_csv(path: Path, coeffs: SpectralCoefficients,
                       consts: PhysicalConstants) -> None:
    grid = coeffs.grid
    spec = synthesize(coeffs)
    n_k, _ = photon_number_spectrum(spec, consts)
    u_k = np.einsum("...i,...i->...", spec.values.conj(), spec.values).real
    kv = grid.k_vectors
    with path.open("w", newline="") as fh:
        fh.write("k_index,kx,ky,kz,abs_c_plus,abs_c_minus,"
                 "energy_density,photon_density\n")
        flat = 0
        for ix in range(grid.n[0]):
            for iy in range(grid.n[1]):
                for iz in range(grid.n[2]):
                    row = (flat, kv[ix, iy, iz, 0], kv[ix, iy, iz, 1],
                           kv[ix, iy, iz, 2],
                           abs(coeffs.c_plus[ix, iy, iz]),
                           abs(coeffs.c_minus[ix, iy, iz]),
                           u_k[ix, iy, iz], n_k[ix, iy, iz])
                    fh.write(str(flat) + "," +
                             ",".join(_fmt(v) for v in row[1:]) + "\n")
                    flat += 1


def write_density_csv(path: Path, grid: Grid3D, rho: np.ndarray,
                      u: np.ndarray, j: np.ndarray) -> None:
    xs, ys, zs = grid.r_axes
    with path.open("w", newline="") as fh:
        fh.write("ix,iy,iz,x,y,z,rho,u,jx,jy,jz\n")
        for ix in range(grid.n[0]):
            for iy in range(grid.n[1]):
                for iz in range(grid.n[2]):
                    vals = (xs[ix], ys[iy], zs[iz], rho[ix, iy, iz],
                            u[ix, iy, iz], j[ix, iy, iz, 0],
                            j[ix, iy, iz, 1], j[ix, iy, iz, 2])
                    fh.write(f"{ix},{iy},{iz}," +
                             ",".join(_fmt(v) for v in vals) + "\n")


def write_comparison_csv(path: Path, grid: Grid3D, report) -> None:
    xs, ys, zs = grid.r_axes
    with path.open("w", newline="") as fh:
        fh.write("x,y,z,rho_photon,u_over_hbar_omega_bar,relative_deviation\n")
        for ix in range(grid.n[0]):
            for iy in range(grid.n[1]):
                for iz in range(grid.n[2]):
                    vals = (xs[ix], ys[iy], zs[iz],
                            report.rho_photon[ix, iy, iz],
                            report.u_scaled[ix, iy, iz],
                            report.deviation[ix, iy, iz])
                    fh.write(",".join(_fmt(v) for v in vals) + "\n")


# ---------------------------------------------------------------------------
# scenario runners (each returns report lines + checks)


def _grid_summary(grid: Grid3D, consts: PhysicalConstants) -> list:
    return [
        f"grid.n = [{grid.n[0]}, {grid.n[1]}, {grid.n[2]}]",
        f"grid.dr = [{_fmt(grid.dr[0])}, {_fmt(grid.dr[1])}, {_fmt(grid.dr[2])}]",
        f"grid.lengths = [{_fmt(grid.lengths[0])}, {_fmt(grid.lengths[1])}, "
        f"{_fmt(grid.lengths[2])}]",
        f"grid.dk = [{_fmt(grid.dk[0])}, {_fmt(grid.dk[1])}, {_fmt(grid.dk[2])}]",
        f"constants: hbar={_fmt(consts.hbar)} c={_fmt(consts.c)} "
        f"eps0={_fmt(consts.eps0)} mu0={_fmt(consts.mu0)}",
    ]


def _field_outputs(out_dir: Path, coeffs, consts, sample_time: float,
                   with_comparison: bool) -> tuple:
    """Common CSV emission for the classical-field scenarios."""
    write_spectrum_csv(out_dir / "spectrum.csv", coeffs, consts)
    p = scale_to_photon(synthesize(coeffs), consts)
    densities, _ = synthesize_position(p, sample_time)
    advanced = evolve(coeffs, sample_time - coeffs.time, consts)
    classical = observables(to_spatial(synthesize(advanced)), consts)
    write_density_csv(out_dir / "density.csv", coeffs.grid, densities.rho,
                      classical.u, classical.j)
    lines = [f"sample_time = {_fmt(sample_time)}",
             f"total_energy = {_fmt(classical.total_energy)}",
             f"photon_number = {_fmt(p.photon_number)}"]
    report = None
    if with_comparison:
        report = density_comparison(synthesize(coeffs), consts)
        write_comparison_csv(out_dir / "comparison.csv", coeffs.grid, report)
        lines += [f"omega_bar_energy_weighted = {_fmt(report.omega_bar)}",
                  f"monochromatic = {report.monochromatic}",
                  f"max_ratio_deviation = {_fmt(report.max_ratio_deviation)}"]
    return lines, p, report


def run_monochromatic(cfg, grid, consts, out_dir, rng) -> tuple:
    coeffs, meta = build_monochromatic(cfg, grid, consts)
    sample_time = float(cfg.get("sample_time", 0.0))
    lines, p, report = _field_outputs(out_dir, coeffs, consts, sample_time, True)
    lines.insert(0, f"omega = {_fmt(meta['omega'])}")
    t_box = float(grid.lengths.max()) / consts.c
    checks = [
        Check.at_most("photon_number_energy_identity",
                      abs(p.photon_number - meta["expected_photons"]), 1e-8),
        Check.at_most("monochromatic_density_ratio_deviation",
                      report.max_ratio_deviation, 1e-10),
        Check.at_most("transversality",
                      transversality_residual(synthesize(coeffs)), 1e-10),
    ]
    checks += _photon_norm_checks(coeffs, consts, (0.0, 0.37 * t_box, 1.61 * t_box))
    checks += _current_checks(coeffs, consts)
    return lines, checks


def run_gaussian_pulse(cfg, grid, consts, out_dir, rng) -> tuple:
    coeffs, meta = build_gaussian_pulse(cfg, grid, consts)
    sample_time = float(cfg.get("sample_time", 0.0))
    lines, p, _ = _field_outputs(out_dir, coeffs, consts, sample_time, False)
    lines.insert(0, f"omega0 = {_fmt(meta['omega0'])}  "
                    f"sigma_k = {_fmt(meta['sigma'])}")
    t_box = float(grid.lengths.max()) / consts.c
    khat = meta["k_center"] / np.linalg.norm(meta["k_center"])

    velocity = centroid_velocity(p, 0.0, 0.05 * t_box)
    speed_err = float(np.linalg.norm(velocity - consts.c * khat)) / consts.c
    lines.append(f"centroid_velocity = [{_fmt(velocity[0])}, "
                 f"{_fmt(velocity[1])}, {_fmt(velocity[2])}]")

    r1 = continuity_residual(coeffs, 1e-3 * t_box, consts)
    r2 = continuity_residual(coeffs, 0.5e-3 * t_box, consts)
    photon_r1 = continuity_residual(p.coeffs, 1e-3 * t_box, consts)
    checks = [
        Check.at_most("packet_speed_error", speed_err, 0.01),
        Check.at_most("continuity_classical", r1, 1e-6),
        Check.within("continuity_convergence_factor", r1 / r2, 3.5, 4.5),
        Check.at_most("continuity_photon", photon_r1, 1e-6),
        Check.at_most("transversality",
                      transversality_residual(synthesize(coeffs)), 1e-10),
    ]
    checks += _photon_norm_checks(coeffs, consts, (0.0, 0.29 * t_box, 1.13 * t_box))
    checks += _current_checks(coeffs, consts)
    return lines, checks


def run_bichromatic(cfg, grid, consts, out_dir, rng) -> tuple:
    coeffs, meta = build_bichromatic(cfg, grid, consts)
    sample_time = float(cfg.get("sample_time", 0.0))
    lines, p, report = _field_outputs(out_dir, coeffs, consts, sample_time, True)
    lines.insert(0, f"omega1 = {_fmt(meta['omega1'])}  "
                    f"omega2 = {_fmt(meta['omega2'])}")
    lines.append(f"expected_photon_number = {_fmt(meta['expected_photons'])}")
    naive = ((meta["e1"] + meta["e2"]) / (consts.hbar * report.omega_bar))
    lines.append(f"naive_energy_over_mean_quantum = {_fmt(naive)}")
    checks = [
        Check.at_most("photon_number_per_component_identity",
                      abs(p.photon_number - meta["expected_photons"]), 1e-10),
        Check.at_least("polychromatic_density_ratio_deviation",
                       report.max_ratio_deviation, 0.1),
        Check.at_most("transversality",
                      transversality_residual(synthesize(coeffs)), 1e-10),
    ]
    checks += _photon_norm_checks(coeffs, consts, (0.0, 0.41, 0.93))
    checks += _current_checks(coeffs, consts)
    return lines, checks


def run_fock_demo(cfg, grid, consts, out_dir, rng) -> tuple:
    modeset, state, meta = build_fock(cfg, grid, consts)
    lines = [f"modes = {len(modeset)}  max_occupation = {modeset.max_occupation}",
             f"preparation = {meta['preparation']}"]
    occupations = [fk.number_expectation(state, m) for m in range(len(modeset))]
    for m, (mode, occ) in enumerate(zip(modeset.modes, occupations)):
        omega = consts.c * float(np.linalg.norm(mode.k))
        lines.append(f"mode[{m}]: k=[{_fmt(mode.k[0])}, {_fmt(mode.k[1])}, "
                     f"{_fmt(mode.k[2])}] helicity={mode.helicity:+d} "
                     f"omega={_fmt(omega)} occupation={_fmt(occ)}")
    energy = fk.hamiltonian_expectation(state, consts)
    vacuum_energy = fk.hamiltonian_expectation(fk.FockState.vacuum(modeset), consts)
    lines.append(f"hamiltonian_expectation = {_fmt(energy)}")
    lines.append(f"vacuum_expectation = {_fmt(vacuum_energy)}")
    lines.append(f"truncation_loss = {_fmt(state.truncation_loss)}")

    whole = fk.RegionSpec.box(grid.origin, tuple(np.array(grid.origin) + grid.lengths))
    n_whole = fk.coarse_number_in_volume(state, whole, grid)
    fraction = float(cfg.get("fock.volume_fraction", 0.5))
    if not 0.0 < fraction <= 1.0:
        raise ConfigError("fock.volume_fraction must be in (0, 1]")
    hi = np.array(grid.origin) + grid.lengths
    hi[0] = grid.origin[0] + fraction * float(grid.lengths[0])
    part = fk.RegionSpec.box(grid.origin, tuple(hi))
    n_part = fk.coarse_number_in_volume(state, part, grid)
    lines.append(f"number_in_whole_box = {_fmt(n_whole)}")
    lines.append(f"number_in_x_fraction({_fmt(fraction)}) = {_fmt(n_part)}")

    crossings = float(cfg.get("fock.crossings", 1.0))
    window = crossings * float(grid.lengths[0]) / consts.c
    plane = fk.RegionSpec.plane(0, grid.origin[0] + float(grid.lengths[0]) / 2.0,
                                0.0, window)
    n_sigma = fk.coarse_flux_through_surface(state, plane, grid, consts)
    lines.append(f"flux_through_x_plane({_fmt(crossings)} crossings) = "
                 f"{_fmt(n_sigma)}")

    rho, u, j = fk.coarse_fields(state, grid, consts, t=0.0)
    write_density_csv(out_dir / "density.csv", grid, rho, u, j)
    _write_fock_spectrum(out_dir / "spectrum.csv", modeset, occupations,
                         grid, consts)

    checks = [
        Check.at_most("vacuum_energy_is_zero", abs(vacuum_energy), 0.0),
        Check.at_most("whole_box_count_equals_occupation",
                      abs(n_whole - sum(occupations)), 1e-10),
        Check.at_least("hamiltonian_nonnegative", energy, 0.0),
    ]
    return lines, checks


def _write_fock_spectrum(path: Path, modeset, occupations, grid, consts) -> None:
    """Per-mode analog of spectrum.csv (one row per declared mode)."""
    with path.open("w", newline="") as fh:
        fh.write("k_index,kx,ky,kz,abs_c_plus,abs_c_minus,"
                 "energy_density,photon_density\n")
        for m, (mode, occ) in enumerate(zip(modeset.modes, occupations)):
            omega = consts.c * float(np.linalg.norm(mode.k))
            amp = np.sqrt(max(occ, 0.0))
            plus = amp if mode.helicity > 0 else 0.0
            minus = amp if mode.helicity < 0 else 0.0
            u_k = consts.hbar * omega * occ / grid.k_cell_volume
            n_k = occ / grid.k_cell_volume
            fh.write(f"{m}," + ",".join(_fmt(v) for v in (
                mode.k[0], mode.k[1], mode.k[2], plus, minus, u_k, n_k)) + "\n")


def run_invariant_suite(cfg, grid, consts, out_dir, rng) -> tuple:
    lines = ["rng = numpy default_rng(seed), samples drawn in a fixed order"]
    checks = []

    # helicity basis over random directions, including near-axis rays
    n_samples = int(cfg.get("suite.k_samples", 1000))
    worst_basis = 0.0
    worst_axis_tail = 0.0
    for i in range(n_samples):
        if i % 5 == 4:  # every fifth sample hugs the z-axis
            tilt = 10.0 ** rng.uniform(-6, -2)
            phi = rng.uniform(0, 2 * np.pi)
            direction = np.array([tilt * np.cos(phi), tilt * np.sin(phi),
                                  rng.choice([-1.0, 1.0])])
        else:
            direction = rng.normal(size=3)
        k = direction / np.linalg.norm(direction) * 10.0 ** rng.uniform(-2, 2)
        basis = transverse_basis(k)
        khat = k / np.linalg.norm(k)
        res = [abs(np.linalg.norm(basis.f_plus) - 1.0),
               abs(np.linalg.norm(basis.f_minus) - 1.0),
               abs(np.vdot(basis.f_plus, basis.f_minus)),
               abs(khat @ basis.f_plus), abs(khat @ basis.f_minus),
               np.abs(1j * basis.f_plus + np.cross(khat, basis.f_plus)).max(),
               np.abs(-1j * basis.f_minus + np.cross(khat, basis.f_minus)).max(),
               *helicity_eigencheck(k, basis)]
        worst_basis = max(worst_basis, max(res))
    checks.append(Check.at_most("helicity_basis_identities", worst_basis, 1e-12))

    for eps in (1e-3, 1e-4, 1e-5, 1e-6):
        b = transverse_basis((eps, 0.0, 1.0))
        b0 = transverse_basis((0.0, 0.0, np.sqrt(1 + eps * eps)))
        worst_axis_tail = np.abs(b.f_plus - b0.f_plus).max()
    checks.append(Check.at_most("on_axis_limit_continuity", worst_axis_tail, 1e-5))

    # Fourier contract on a random transversal field
    cp = rng.normal(size=grid.shape) + 1j * rng.normal(size=grid.shape)
    cm = rng.normal(size=grid.shape) + 1j * rng.normal(size=grid.shape)
    coeffs = SpectralCoefficients(grid, cp, cm)
    spec = synthesize(coeffs)
    f = to_spatial(spec)
    spec2 = to_spectral(f)
    rt = float(np.abs(spec2.values - spec.values).max()
               / np.abs(spec.values).max())
    pr = (np.abs(f.values) ** 2).sum() * grid.cell_volume
    pk_ = (np.abs(spec.values) ** 2).sum() * grid.k_cell_volume
    checks.append(Check.at_most("fourier_roundtrip", rt, 1e-12))
    checks.append(Check.at_most("parseval", abs(pr - pk_) / pk_, 1e-10))
    checks.append(Check.at_most("transversality_of_synthesis",
                                transversality_residual(spec), 1e-10))

    # projection round trip
    back, resid = project(spec)
    perr = max(np.abs(back.c_plus - coeffs.c_plus).max(),
               np.abs(back.c_minus - coeffs.c_minus).max())
    checks.append(Check.at_most("projection_roundtrip",
                                max(perr, resid / np.abs(spec.values).max()),
                                1e-12))

    # Hamiltonian eigenvalue on every grid mode, both helicities
    from .maxwell import apply_hamiltonian
    psi_p, psi_m = grid_basis(grid)
    hw = consts.hbar * consts.c * grid.k_norm
    worst_h = 0.0
    for vecs in (psi_p, psi_m):
        hv = apply_hamiltonian(SpectralField(grid, vecs.copy()), consts)
        gap = np.linalg.norm(hv.values - hw[..., None] * vecs, axis=-1)
        scale = hw * np.sqrt(2.0)
        mask = scale > 0
        worst_h = max(worst_h, float((gap[mask] / scale[mask]).max()))
    checks.append(Check.at_most("hamiltonian_eigenvalue", worst_h, 1e-12))

    # exact evolution: energy conservation and the group property
    t_box = float(grid.lengths.max()) / consts.c
    u0 = observables(f, consts).total_energy
    moved = evolve(coeffs, 0.731 * t_box, consts)
    u1 = observables(to_spatial(synthesize(moved)), consts).total_energy
    checks.append(Check.at_most("energy_conservation",
                                abs(u1 - u0) / u0, 1e-12))
    two_step = evolve(evolve(coeffs, 0.3, consts), 0.45, consts)
    one_step = evolve(coeffs, 0.75, consts)
    gp = max(np.abs(two_step.c_plus - one_step.c_plus).max(),
             np.abs(two_step.c_minus - one_step.c_minus).max())
    gp /= max(np.abs(one_step.c_plus).max(), np.abs(one_step.c_minus).max())
    checks.append(Check.at_most("evolution_group_property", gp, 1e-13))

    # continuity on the canonical narrow packet (classical and photon)
    pulse_cfg = {"pulse.k_center": [grid.n[0] // 4, 0, 0],
                 "pulse.bandwidth": 0.05}
    packet, _ = build_gaussian_pulse(pulse_cfg, grid, consts)
    r1 = continuity_residual(packet, 1e-3 * t_box, consts)
    r2 = continuity_residual(packet, 0.5e-3 * t_box, consts)
    p = scale_to_photon(synthesize(packet), consts)
    rp = continuity_residual(p.coeffs, 1e-3 * t_box, consts)
    checks.append(Check.at_most("continuity_classical", r1, 1e-6))
    checks.append(Check.within("continuity_convergence_factor", r1 / r2, 3.5, 4.5))
    checks.append(Check.at_most("continuity_photon", rp, 1e-6))

    # photon normalization, current identity, scaling covariance
    checks += _photon_norm_checks(packet, consts,
                                  (0.0, 0.41 * t_box, 1.27 * t_box))
    checks += _current_checks(packet, consts)
    lam = 2.3 - 1.7j
    scaled = scale_to_photon(
        SpectralField(grid, synthesize(packet).values * lam), consts)
    cov = abs(scaled.photon_number - abs(lam) ** 2 * p.photon_number) \
        / scaled.photon_number
    phase = lam / abs(lam)
    align = np.abs(scaled.coeffs.c_plus - phase * p.coeffs.c_plus).max() \
        / np.abs(p.coeffs.c_plus).max()
    checks.append(Check.at_most("photon_scaling_covariance", max(cov, align), 1e-10))

    # Fock ladder algebra and the coarse counters
    dk = grid.dk
    modeset = fk.ModeSet(modes=(((8 * dk[0], 0.0, 0.0), +1),
                                ((0.0, 2 * dk[1], 0.0), -1)),
                         max_occupation=3)
    vac = fk.FockState.vacuum(modeset)
    checks.append(Check.at_most("fock_vacuum_energy",
                                abs(fk.hamiltonian_expectation(vac, consts)), 0.0))
    st = fk.create(fk.create(vac, 0), 1)
    comm_err = 0.0
    for mode in range(2):
        left = fk.annihilate(fk.create(st, mode), mode)
        right = fk.create(fk.annihilate(st, mode), mode)
        keys = set(left.amplitudes) | set(right.amplitudes) | set(st.amplitudes)
        for occ in keys:
            diff = (left.amplitudes.get(occ, 0.0) - right.amplitudes.get(occ, 0.0)
                    - st.amplitudes.get(occ, 0.0))
            comm_err = max(comm_err, abs(diff))
    checks.append(Check.at_most("fock_commutator", comm_err, 1e-13))

    one = fk.create(vac, 0)
    whole = fk.RegionSpec.box(grid.origin,
                              tuple(np.array(grid.origin) + grid.lengths))
    half_hi = np.array(grid.origin) + grid.lengths
    half_hi[0] = grid.origin[0] + float(grid.lengths[0]) / 2.0
    half = fk.RegionSpec.box(grid.origin, tuple(half_hi))
    checks.append(Check.at_most(
        "whole_box_count",
        abs(fk.coarse_number_in_volume(one, whole, grid) - 1.0), 1e-10))
    checks.append(Check.at_most(
        "half_box_count",
        abs(fk.coarse_number_in_volume(one, half, grid) - 0.5), 1e-10))
    lx = float(grid.lengths[0])
    plane = fk.RegionSpec.plane(0, grid.origin[0] + lx / 2.0, 0.0, lx / consts.c)
    checks.append(Check.at_most(
        "one_crossing_flux",
        abs(fk.coarse_flux_through_surface(one, plane, grid, consts) - 1.0), 0.02))

    # the polychromatic-versus-monochromatic density demonstration
    bi_cfg = {"bichromatic.k1": [1, 0, 0], "bichromatic.k2": [2, 0, 0],
              "bichromatic.e1": 1.0, "bichromatic.e2": 1.0}
    bi, bi_meta = build_bichromatic(bi_cfg, grid, consts)
    bp = scale_to_photon(synthesize(bi), consts)
    bi_report = density_comparison(synthesize(bi), consts)
    checks.append(Check.at_most(
        "bichromatic_photon_number_identity",
        abs(bp.photon_number - bi_meta["expected_photons"]), 1e-10))
    checks.append(Check.at_least("bichromatic_density_ratio_deviation",
                                 bi_report.max_ratio_deviation, 0.1))
    mono_cfg = {"mono.k": [2, 0, 0], "mono.photons": 1.0}
    mono, _ = build_monochromatic(mono_cfg, grid, consts)
    mono_report = density_comparison(synthesize(mono), consts)
    checks.append(Check.at_most("monochromatic_density_ratio_deviation",
                                mono_report.max_ratio_deviation, 1e-10))

    # representative CSVs from the random transversal field
    write_spectrum_csv(out_dir / "spectrum.csv", coeffs, consts)
    flux = observables(f, consts)
    prand = scale_to_photon(spec, consts)
    dens, _ = synthesize_position(prand, 0.0)
    write_density_csv(out_dir / "density.csv", grid, dens.rho, flux.u, flux.j)
    return lines, checks


RUNNERS = {
    "monochromatic": run_monochromatic,
    "gaussian_pulse": run_gaussian_pulse,
    "bichromatic": run_bichromatic,
    "fock_demo": run_fock_demo,
    "invariant_suite": run_invariant_suite,
}


# ---------------------------------------------------------------------------
# verbs


def _validated(cfg: dict) -> tuple:
    scenario = _require(cfg, "scenario")
    if scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario {scenario!r}; "
                          f"choose one of {', '.join(SCENARIOS)}")
    grid = build_grid(cfg)
    consts = build_constants(cfg)
    # building the scenario objects validates the scenario-specific keys
    if scenario == "monochromatic":
        build_monochromatic(cfg, grid, consts)
    elif scenario == "gaussian_pulse":
        build_gaussian_pulse(cfg, grid, consts)
    elif scenario == "bichromatic":
        build_bichromatic(cfg, grid, consts)
    elif scenario == "fock_demo":
        build_fock(cfg, grid, consts)
    return scenario, grid, consts


def run(config_path, out_override=None, seed_override=None,
        quiet=False) -> int:
    try:
        cfg = load_config(config_path)
        scenario, grid, consts = _validated(cfg)
        seed = int(seed_override if seed_override is not None
                   else cfg.get("seed", 0))
        out_dir = Path(out_override if out_override is not None
                       else cfg.get("output_dir", "out"))
        out_dir.mkdir(parents=True, exist_ok=True)
        rng = np.random.default_rng(seed)
        lines, checks = RUNNERS[scenario](cfg, grid, consts, out_dir, rng)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    report = [f"scenario: {scenario}", f"seed: {seed}"]
    report += _grid_summary(grid, consts)
    report.append("-- results --")
    report += lines
    report.append("-- checks --")
    report += [c.line() for c in checks]
    failed = [c for c in checks if not c.passed]
    report.append(f"checks: {len(checks) - len(failed)} passed, "
                  f"{len(failed)} failed")
    (out_dir / "report.txt").write_text("\n".join(report) + "\n")
    if not quiet:
        print("\n".join(report))
        print(f"wrote {out_dir}/report.txt")
    if failed:
        if not quiet:
            print(f"{len(failed)} check(s) failed", file=sys.stderr)
        return 1
    return 0


def check(config_path, quiet=False) -> int:
    try:
        cfg = load_config(config_path)
        scenario, grid, consts = _validated(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    if not quiet:
        print(f"scenario: {scenario}")
        print("\n".join(_grid_summary(grid, consts)))
        print("config OK")
    return 0


PRESETS = {
    "monochromatic.cfg": """\
# single k-bin carrying exactly one photon's worth of energy
scenario = monochromatic
grid.n = [16, 16, 16]
grid.dr = [1.0, 1.0, 1.0]
constants = natural
mono.k = [2, 0, 0]
mono.helicity_mix = [1.0, 0.0]
mono.photons = 1.0
seed = 1
output_dir = out_monochromatic
""",
    "gaussian_pulse.cfg": """\
# narrow-band packet: continuity diagnostics and transport at speed c
scenario = gaussian_pulse
grid.n = [16, 16, 16]
grid.dr = [1.0, 1.0, 1.0]
constants = natural
pulse.k_center = [4, 0, 0]
pulse.bandwidth = 0.05
pulse.helicity_mix = [1.0, 0.0]
seed = 2
output_dir = out_gaussian_pulse
""",
    "bichromatic.cfg": """\
# two colors, omega2 = 2*omega1, equal energies: photon density is not
# energy density divided by a mean quantum
scenario = bichromatic
grid.n = [16, 16, 16]
grid.dr = [0.39269908169872414, 0.39269908169872414, 0.39269908169872414]
constants = natural
bichromatic.k1 = [1, 0, 0]
bichromatic.e1 = 1.0
bichromatic.k2 = [2, 0, 0]
bichromatic.e2 = 1.0
bichromatic.helicity_mix = [1.0, 0.0]
seed = 3
output_dir = out_bichromatic
""",
    "fock_demo.cfg": """\
# two declared modes, one photon created in the first; coarse counters
scenario = fock_demo
grid.n = [16, 16, 16]
grid.dr = [1.0, 1.0, 1.0]
constants = natural
fock.modes = [[8, 0, 0, 1], [0, 2, 0, -1]]
fock.max_occupation = 3
fock.preparation = [0]
fock.volume_fraction = 0.5
fock.crossings = 1.0
seed = 4
output_dir = out_fock_demo
""",
    "invariant_suite.cfg": """\
# full verification battery on a 16^3 grid; nonzero exit on any failure
scenario = invariant_suite
grid.n = [16, 16, 16]
grid.dr = [1.0, 1.0, 1.0]
constants = natural
suite.k_samples = 1000
seed = 5
output_dir = out_invariant_suite
""",
}


def emit_presets(directory, quiet=False) -> int:
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=True)
        for name, body in PRESETS.items():
            (directory / name).write_text(body)
    except OSError as exc:
        print(f"config error: cannot write presets: {exc}", file=sys.stderr)
        return 2
    if not quiet:
        for name in PRESETS:
            print(f"wrote {directory / name}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="photonkit",
        description="spectral-grid photon wavefunction scenario runner")
    parser.add_argument("--quiet", action="store_true",
                        help="suppress stdout (files are still written)")
    sub = parser.add_subparsers(dest="verb", required=True)

    p_run = sub.add_parser("run", help="run a scenario config")
    p_run.add_argument("config")
    p_run.add_argument("--out", default=None, help="override output_dir")
    p_run.add_argument("--seed", type=int, default=None, help="override seed")

    p_check = sub.add_parser("check", help="validate a config without running")
    p_check.add_argument("config")

    p_presets = sub.add_parser("presets", help="write example configs")
    p_presets.add_argument("directory")

    args = parser.parse_args(argv)
    if args.verb == "run":
        return run(args.config, out_override=args.out,
                   seed_override=args.seed, quiet=args.quiet)
    if args.verb == "check":
        return check(args.config, quiet=args.quiet)
    return emit_presets(args.directory, quiet=args.quiet)


if __name__ == "__main__":
    sys.exit(main())
