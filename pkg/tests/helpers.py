"""Shared builders and independent oracles for the test suite.

The oracles here deliberately avoid the library's own code paths:
the DFT oracle is an explicit triple sum, the Fock oracle materializes
dense ladder matrices, and the analytic time derivative differentiates
the per-mode phases by hand.
"""

import numpy as np

import photonkit as pk


def single_mode_coeffs(grid, bins, c_plus=1.0, c_minus=0.0, time=0.0):
    """Coefficients with one occupied k-bin (bins are integers, units of dk)."""
    cp = np.zeros(grid.shape, complex)
    cm = np.zeros(grid.shape, complex)
    idx = grid.bin_index(bins)
    cp[idx] = c_plus
    cm[idx] = c_minus
    return pk.SpectralCoefficients(grid, cp, cm, time=time)


def plane_wave_field(grid, bins, helicity=+1):
    """Position-space plane wave with unit polarization amplitude.

    The spectral delta is sized so the spatial field is psi_pm(k) e^{ik.r}
    exactly (f amplitude one).
    """
    weight = (2.0 * np.pi) ** 1.5 / grid.k_cell_volume
    if helicity > 0:
        coeffs = single_mode_coeffs(grid, bins, c_plus=weight)
    else:
        coeffs = single_mode_coeffs(grid, bins, c_minus=weight)
    return pk.to_spatial(pk.synthesize(coeffs))


def random_transversal_coeffs(grid, rng, scale=1.0, time=0.0):
    """Random forward field: independent complex Gaussians per bin and helicity."""
    cp = scale * (rng.normal(size=grid.shape) + 1j * rng.normal(size=grid.shape))
    cm = scale * (rng.normal(size=grid.shape) + 1j * rng.normal(size=grid.shape))
    return pk.SpectralCoefficients(grid, cp, cm, time=time)


def narrow_packet_coeffs(grid, center_bins=None, sigma_bins=0.2, mix=(1.0, 0.0)):
    """Collinear Gaussian packet along +x, bandwidth sigma_bins * dk."""
    if center_bins is None:
        center_bins = grid.n[0] // 4
    dk = grid.dk[0]
    kx = grid.k_axes[0]
    envelope = np.exp(-(kx - center_bins * dk) ** 2 / (4.0 * (sigma_bins * dk) ** 2))
    envelope[np.abs(kx - center_bins * dk) > 6.0 * dk] = 0.0
    cp = np.zeros(grid.shape, complex)
    cm = np.zeros(grid.shape, complex)
    cp[:, 0, 0] = mix[0] * envelope
    cm[:, 0, 0] = mix[1] * envelope
    return pk.SpectralCoefficients(grid, cp, cm)


def gaussian_packet_3d(grid, center_bins=(8, 0, 0), sigma_bins=0.5,
                       mix=(1.0, 0.0)):
    """Fully localized packet: isotropic Gaussian envelope around k0."""
    k0 = np.array([center_bins[a] * grid.dk[a] for a in range(3)])
    sigma = sigma_bins * grid.dk[0]
    kv = grid.k_vectors
    envelope = np.exp(-((kv - k0) ** 2).sum(-1) / (4.0 * sigma ** 2))
    envelope[0, 0, 0] = 0.0
    return pk.SpectralCoefficients(grid, mix[0] * envelope, mix[1] * envelope)


def energy_mode_amplitude(grid, energy):
    """Helicity amplitude that gives one k-bin the requested total energy."""
    return np.sqrt(energy / (2.0 * grid.k_cell_volume))


def dft_oracle(field):
    """Explicit triple-sum DFT of a FieldState (slow; tiny grids only)."""
    grid = field.grid
    out = np.zeros(grid.shape + (6,), complex)
    rx, ry, rz = grid.r_axes
    kx, ky, kz = grid.k_axes
    for ix in range(grid.n[0]):
        for iy in range(grid.n[1]):
            for iz in range(grid.n[2]):
                phase = np.exp(-1j * (kx[ix] * rx[:, None, None]
                                      + ky[iy] * ry[None, :, None]
                                      + kz[iz] * rz[None, None, :]))
                out[ix, iy, iz] = (field.values
                                   * phase[..., None]).sum(axis=(0, 1, 2))
    return out * (2.0 * np.pi) ** (-1.5) * grid.cell_volume


def analytic_density_rate(coeffs, consts=pk.NATURAL):
    """Exact d(Psi^dag Psi)/dt via the per-mode -i*omega phase derivative."""
    omega = consts.c * coeffs.grid.k_norm
    spec = pk.synthesize(coeffs)
    psi = pk.to_spatial(spec).values
    dspec = pk.SpectralField(coeffs.grid, -1j * omega[..., None] * spec.values,
                             time=coeffs.time)
    dpsi = pk.to_spatial(dspec).values
    return 2.0 * np.einsum("...i,...i->...", psi.conj(), dpsi).real


class DenseFockOracle:
    """Dense ladder matrices on the full truncated product basis."""

    def __init__(self, modeset, consts=pk.NATURAL):
        self.modeset = modeset
        dim_local = modeset.max_occupation + 1
        nmodes = len(modeset)
        a_local = np.diag(np.sqrt(np.arange(1, dim_local)), k=1)
        eye = np.eye(dim_local)
        self.a = []
        for m in range(nmodes):
            op = np.array([[1.0]])
            for j in range(nmodes):
                op = np.kron(op, a_local if j == m else eye)
            self.a.append(op)
        omegas = modeset.omegas(consts)
        self.number_ops = [op.conj().T @ op for op in self.a]
        self.h = sum(consts.hbar * w * n
                     for w, n in zip(omegas, self.number_ops))
        self.dim_local = dim_local
        self.nmodes = nmodes

    def index(self, occupation):
        idx = 0
        for n in occupation:
            idx = idx * self.dim_local + n
        return idx

    def vector(self, state):
        vec = np.zeros(self.dim_local ** self.nmodes, complex)
        for occ, amp in state.amplitudes.items():
            vec[self.index(occ)] = amp
        return vec

    def hamiltonian_expectation(self, state):
        v = self.vector(state)
        return float(np.vdot(v, self.h @ v).real)

    def number_expectation(self, state, mode):
        v = self.vector(state)
        return float(np.vdot(v, self.number_ops[mode] @ v).real)

    def basis_states(self):
        from itertools import product
        for occ in product(range(self.dim_local), repeat=self.nmodes):
            yield occ
