"""From a classical field to a normalized single-photon wavefunction.

Dividing each helicity amplitude by sqrt(hbar c |k|) counts one photon per
hbar*omega of energy in each spectral component; renormalizing gives a
probability density amplitude whose position-space norm is exactly one.
"""

import numpy as np

import photonkit as pk

grid = pk.make_grid(16, 1.0)
omega = 2.0 * grid.dk[0]

# classical single mode carrying exactly one quantum of energy
amplitude = np.sqrt(omega / (2.0 * grid.k_cell_volume))
cp = np.zeros(grid.shape, complex)
cp[grid.bin_index((2, 0, 0))] = amplitude
coeffs = pk.SpectralCoefficients(grid, cp, np.zeros_like(cp))
spec = pk.synthesize(coeffs)

flux = pk.observables(pk.to_spatial(spec))
print(f"classical field: omega = {omega:.6f}, total energy = "
      f"{flux.total_energy:.6f} (= hbar omega)")

p = pk.scale_to_photon(spec)
print("photon number (squared norm before renormalization):", p.photon_number)
print("stored norm check:", p.norm_check)

for energy_factor in (3.0, 0.5):
    scaled = pk.scale_to_photon(
        pk.SpectralField(grid, np.sqrt(energy_factor) * spec.values))
    print(f"  energy x {energy_factor}: photon number = {scaled.photon_number}")

densities, psi = pk.synthesize_position(p, t=0.0)
print("\nposition representation:")
print("  sum rho dV_r =", densities.total)
print("  rho is uniform (plane wave):", densities.rho.min(), "..",
      densities.rho.max())
print("  current forms agree to:",
      pk.probability_current_consistency(p, 0.0))

# angular momentum tracks helicity for packets travelling along +z
kz = grid.k_axes[2]
envelope = np.exp(-(kz - 4.0 * grid.dk[2]) ** 2 / (4.0 * (0.5 * grid.dk[2]) ** 2))
axial = np.zeros(grid.shape, complex)
axial[0, 0, :] = envelope
zeros = np.zeros_like(axial)
print("\n<J_z> per photon for packets along +z:")
for label, (a, b) in [("helicity +", (axial, zeros)),
                      ("helicity -", (zeros, axial)),
                      ("equal mix ", (axial, axial))]:
    pw = pk.scale_to_photon(pk.synthesize(pk.SpectralCoefficients(grid, a, b)))
    print(f"  {label}: {pk.angular_momentum_z(pw, 0.0):+.12f}")
