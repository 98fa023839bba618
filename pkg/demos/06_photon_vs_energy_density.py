"""Photon density versus energy density for polychromatic light.

For a single frequency the two densities are proportional.  Mix two
frequencies and no single mean quantum converts energy into photon count:
the photon number comes out right only when each spectral component is
divided by its own hbar*omega, and the position-space densities develop
order-one disagreements (the photon density even stays finite where the
energy density has nodes).
"""

import numpy as np

import photonkit as pk

# grid with dk = 1 so a bin index is its frequency in natural units
grid = pk.make_grid(16, 2.0 * np.pi / 16.0)


def mode(bins, energy):
    cp = np.zeros(grid.shape, complex)
    cp[grid.bin_index(bins)] = np.sqrt(energy / (2.0 * grid.k_cell_volume))
    return cp


print("monochromatic field (omega = 2):")
mono = pk.SpectralCoefficients(grid, mode((2, 0, 0), 1.0),
                               np.zeros(grid.shape, complex))
report = pk.density_comparison(pk.synthesize(mono))
print("  detected monochromatic  :", report.monochromatic)
print("  max ratio deviation     :", report.max_ratio_deviation)

print("\nbichromatic field (omega = 1 and 2, unit energy each):")
bi = pk.SpectralCoefficients(grid, mode((1, 0, 0), 1.0) + mode((2, 0, 0), 1.0),
                             np.zeros(grid.shape, complex))
spec = pk.synthesize(bi)
n_k, total = pk.photon_number_spectrum(spec)
report = pk.density_comparison(spec)
print("  photon number N = sum E_i/(hbar omega_i) :", total)
print("  energy-weighted mean frequency           :", report.omega_bar)
print("  naive U/(hbar omega_bar)                 :",
      2.0 / report.omega_bar)
print("  -> counting photons with a mean quantum undercounts by",
      total - 2.0 / report.omega_bar)
print("  max pointwise ratio deviation            :",
      report.max_ratio_deviation)

# where the disagreement lives: zoom along the x axis
x = grid.r_axes[0]
rho_line = report.rho_photon[:, 0, 0]
u_line = report.u_scaled[:, 0, 0]
print("\n  x      photon density   u/(hbar omega_bar)")
for i in range(0, grid.n[0], 2):
    print(f"  {x[i]:5.2f}   {rho_line[i]:13.6f}   {u_line[i]:13.6f}")
print("\nnote the energy-density node where the photon density stays finite.")
