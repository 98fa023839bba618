"""Single-photon wavefunctions built from classical spectral fields.

Each helicity amplitude of the classical field is divided by
sqrt(hbar*c*|k|), i.e. by the square root of the photon energy of its own
spectral component.  The squared norm of the scaled field *before* the
final renormalization is the photon number carried by the classical
field; the stored wavefunction is always renormalized so that

    sum (|c+|^2 + |c-|^2) dV_k = 1 = sum Psi^dag Psi dV_r.

On the lattice the position synthesis is to_spatial(synthesize(c)) / sqrt(2);
the 1/sqrt(2) cancels psi^dag psi = 2 and is what makes the position-space
norm come out to exactly one.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .lattice import (NATURAL, Grid3D, PhysicalConstants,
                      SpectralField, to_spatial)
from .helicity import J6, SPIN, SpectralCoefficients, project, synthesize
from .maxwell import evolve, observables

# Non-forward spectral content above this fraction of the peak amplitude
# earns a warning on the constructed wavefunction.
FORWARD_RESIDUAL_WARN = 1e-6


@dataclass
class PhotonWavefunction:
    """Normalized momentum-space photon wavefunction.

    ``photon_number`` is the squared norm of the scaled field before
    renormalization (the photon content of the classical input);
    ``norm_check`` re-measures the stored norm and should be 1.
    """

    coeffs: SpectralCoefficients
    norm_check: float
    consts: PhysicalConstants
    photon_number: float
    forward_residual: float = 0.0
    warning: str | None = None


@dataclass
class PhotonDensities:
    """Position-space probability density and probability current."""

    grid: Grid3D
    rho: np.ndarray
    jprob: np.ndarray

    @property
    def total(self) -> float:
        return float(self.rho.sum() * self.grid.cell_volume)


def scale_to_photon(g: SpectralField,
                    consts: PhysicalConstants = NATURAL) -> PhotonWavefunction:
    """Scale a classical spectral field into a unit-norm photon wavefunction.

    Raises ValueError on a zero field (no photon to normalize); attaches a
    warning when the input has appreciable non-forward content.
    """
    coeffs, residual = project(g)
    peak = float(np.linalg.norm(g.values, axis=-1).max())
    forward_residual = residual / peak if peak > 0.0 else 0.0

    omega = consts.c * g.grid.k_norm
    with np.errstate(divide="ignore"):
        scale = np.sqrt(2.0 / (consts.hbar * omega))
    scale[0, 0, 0] = 0.0  # DC carries no photon

    phi_plus = coeffs.c_plus * scale
    phi_minus = coeffs.c_minus * scale
    number = float((np.abs(phi_plus) ** 2 + np.abs(phi_minus) ** 2).sum()
                   * g.grid.k_cell_volume)
    if number == 0.0:
        raise ValueError("zero field has no photon content to normalize")

    root = np.sqrt(number)
    normalized = SpectralCoefficients(grid=g.grid,
                                      c_plus=phi_plus / root,
                                      c_minus=phi_minus / root,
                                      time=g.time)
    message = None
    if forward_residual > FORWARD_RESIDUAL_WARN:
        message = (f"non-forward spectral content at relative level "
                   f"{forward_residual:.3e} was discarded by the projection")
        warnings.warn(message, stacklevel=2)
    return PhotonWavefunction(coeffs=normalized,
                              norm_check=normalized.norm_squared(),
                              consts=consts,
                              photon_number=number,
                              forward_residual=forward_residual,
                              warning=message)


def synthesize_position(p: PhotonWavefunction, t: float) -> tuple:
    """Position representation at time t.

    Returns (PhotonDensities, FieldState).  The six-vector field is
    to_spatial((c+ psi+ + c- psi-) / sqrt(2)) after exact phase evolution,
    rho = Psi^dag Psi and jprob is the probability current.
    """
    advanced = evolve(p.coeffs, t - p.coeffs.time, p.consts)
    g = synthesize(advanced)
    g = SpectralField(grid=g.grid, values=g.values / np.sqrt(2.0), time=g.time)
    psi = to_spatial(g)
    flux = observables(psi, p.consts)
    return PhotonDensities(grid=psi.grid, rho=flux.u, jprob=flux.j), psi


def spin_form_current(values: np.ndarray,
                      consts: PhysicalConstants = NATURAL) -> np.ndarray:
    """Probability current i c Psi^dag S (J Psi), from the operator constants.

    Kept as an explicitly matrix-valued route so it can be checked against
    the cross-product form computed elsewhere.
    """
    w = np.einsum("ij,...j->...i", J6, values)
    cur = 1j * consts.c * (
        np.einsum("...i,aij,...j->...a", values[..., :3].conj(), SPIN, w[..., :3])
        + np.einsum("...i,aij,...j->...a", values[..., 3:].conj(), SPIN, w[..., 3:]))
    return cur


def probability_current_consistency(p: PhotonWavefunction, t: float) -> float:
    """Max relative pointwise gap between the spin-form and cross-product currents."""
    densities, psi = synthesize_position(p, t)
    j_spin = spin_form_current(psi.values, p.consts)
    scale = float(np.abs(densities.jprob).max())
    if scale == 0.0:
        return float(np.abs(j_spin).max())
    return float(np.abs(j_spin - densities.jprob).max() / scale)


def photon_number_spectrum(g: SpectralField,
                           consts: PhysicalConstants = NATURAL) -> tuple:
    """Per-bin photon density n(k) = Phi^dag Phi / (hbar c |k|) and its total.

    For a monochromatic field the total is exactly U / (hbar omega); for a
    polychromatic field it is the sum of per-component photon counts, which
    no single mean frequency reproduces.
    """
    dens = np.einsum("...i,...i->...", g.values.conj(), g.values).real
    omega = consts.c * g.grid.k_norm
    n = np.zeros_like(dens)
    mask = omega > 0.0
    n[mask] = dens[mask] / (consts.hbar * omega[mask])
    total = float(n.sum() * g.grid.k_cell_volume)
    return n, total


@dataclass
class DensityComparison:
    """Pointwise photon density versus energy density / (hbar * mean omega)."""

    monochromatic: bool
    omega_bar: float
    max_ratio_deviation: float
    rho_photon: np.ndarray
    u_scaled: np.ndarray
    deviation: np.ndarray


def density_comparison(g: SpectralField,
                       consts: PhysicalConstants = NATURAL) -> DensityComparison:
    """Compare photon density with energy density scaled by the mean photon energy.

    The energy-weighted mean frequency omega_bar defines the naive density
    u(r) / (hbar omega_bar).  For a single-frequency field the two densities
    are proportional; any spread in frequency makes them genuinely different
    fields.  The deviation is the pointwise |rho_photon / u_scaled - 1|,
    evaluated where u_scaled exceeds 1e-9 of its peak (the photon density
    stays finite at energy-density nodes, where the raw ratio diverges).
    """
    dens_k = np.einsum("...i,...i->...", g.values.conj(), g.values).real
    total = float(dens_k.sum())
    zeros = np.zeros(g.grid.shape)
    if total == 0.0:
        return DensityComparison(False, 0.0, 0.0, zeros, zeros, zeros)

    omega = consts.c * g.grid.k_norm
    omega_bar = float((dens_k * omega).sum() / total)
    support = omega[dens_k > 1e-12 * dens_k.max()]
    monochromatic = bool((support.max() - support.min()) <= 1e-9 * omega_bar)

    p = scale_to_photon(g, consts)
    densities, _ = synthesize_position(p, g.time)
    rho_photon = p.photon_number * densities.rho

    u = observables(to_spatial(g), consts).u
    u_scaled = u / (consts.hbar * omega_bar)
    mask = u_scaled > 1e-9 * u_scaled.max()
    deviation = np.zeros_like(u_scaled)
    deviation[mask] = np.abs(rho_photon[mask] / u_scaled[mask] - 1.0)
    return DensityComparison(monochromatic=monochromatic,
                             omega_bar=omega_bar,
                             max_ratio_deviation=float(deviation.max()),
                             rho_photon=rho_photon,
                             u_scaled=u_scaled,
                             deviation=deviation)


def packet_centroid(densities: PhotonDensities) -> np.ndarray:
    """Density centroid, via the circular mean on each periodic axis.

    Wrap-safe for localized packets; drifts of less than half a box length
    between samples are recovered exactly by angle differences.
    """
    grid = densities.grid
    total = densities.rho.sum()
    if total == 0.0:
        return np.array(grid.origin, dtype=float)
    out = np.empty(3)
    for a in range(3):
        length = float(grid.lengths[a])
        x = grid.r_axes[a].reshape([-1 if i == a else 1 for i in range(3)])
        z = (densities.rho * np.exp(2j * np.pi * x / length)).sum() / total
        out[a] = np.angle(z) * length / (2.0 * np.pi)
    return out


def centroid_velocity(p: PhotonWavefunction, t0: float, t1: float) -> np.ndarray:
    """Centroid displacement rate between two times (displacement < L/2)."""
    if t1 == t0:
        raise ValueError("need two distinct times")
    d0, _ = synthesize_position(p, t0)
    d1, _ = synthesize_position(p, t1)
    c0 = packet_centroid(d0)
    c1 = packet_centroid(d1)
    lengths = np.asarray(p.coeffs.grid.lengths, dtype=float)
    delta = (c1 - c0 + lengths / 2.0) % lengths - lengths / 2.0
    return delta / (t1 - t0)


def angular_momentum_z(p: PhotonWavefunction, t: float) -> float:
    """<J_z> = sum Psi^dag [(r x (hbar/i) grad)_z + hbar S_z] Psi dV_r.

    The gradient is spectral; S_z acts on the upper and lower three-vectors
    separately.
    """
    _, psi = synthesize_position(p, t)
    grid = psi.grid
    hbar = p.consts.hbar

    vk = np.fft.fftn(psi.values, axes=(0, 1, 2))
    kx = grid.k_axes[0].reshape(-1, 1, 1, 1)
    ky = grid.k_axes[1].reshape(1, -1, 1, 1)
    dvx = np.fft.ifftn(1j * kx * vk, axes=(0, 1, 2))
    dvy = np.fft.ifftn(1j * ky * vk, axes=(0, 1, 2))

    x = grid.r_axes[0].reshape(-1, 1, 1)
    y = grid.r_axes[1].reshape(1, -1, 1)
    orbital = (hbar / 1j) * (
        x * np.einsum("...i,...i->...", psi.values.conj(), dvy)
        - y * np.einsum("...i,...i->...", psi.values.conj(), dvx))

    sz = hbar * (np.einsum("...i,ij,...j->...", psi.values[..., :3].conj(),
                           SPIN[2], psi.values[..., :3])
                 + np.einsum("...i,ij,...j->...", psi.values[..., 3:].conj(),
                             SPIN[2], psi.values[..., 3:]))
    return float((orbital + sz).sum().real * grid.cell_volume)
