"""Grids and the discrete Fourier pair.

Walks through the lattice conventions: box and k-grid geometry, the
symmetric transform normalization, round-trip exactness and Parseval.
"""

import numpy as np

import photonkit as pk

grid = pk.make_grid(n=16, dr=1.0)
print("16^3 grid, spacing 1:")
print("  box lengths     :", grid.lengths)
print("  k-grid spacing  :", grid.dk)
print("  k samples (x)   :", np.sort(grid.k_axes[0])[:4], "...")
print("  cell volumes    : dV_r =", grid.cell_volume, " dV_k =", grid.k_cell_volume)

# A random forward-propagating field, built from helicity coefficients so it
# is automatically transverse and free of the k = 0 (DC) bin.
rng = np.random.default_rng(1)
cp = rng.normal(size=grid.shape) + 1j * rng.normal(size=grid.shape)
cm = rng.normal(size=grid.shape) + 1j * rng.normal(size=grid.shape)
coeffs = pk.SpectralCoefficients(grid, cp, cm)
spec = pk.synthesize(coeffs)

field = pk.to_spatial(spec)
back = pk.to_spectral(field)
print("\nround trip to_spatial -> to_spectral:")
print("  max |Phi' - Phi| / max |Phi| =",
      np.abs(back.values - spec.values).max() / np.abs(spec.values).max())

norm_r = (np.abs(field.values) ** 2).sum() * grid.cell_volume
norm_k = (np.abs(spec.values) ** 2).sum() * grid.k_cell_volume
print("\nParseval:")
print("  sum |Psi|^2 dV_r =", norm_r)
print("  sum |Phi|^2 dV_k =", norm_k)
print("  relative gap     =", abs(norm_r - norm_k) / norm_k)

print("\ntransversality of the synthesis (max |k.Phi| / (|k||Phi|)):",
      pk.transversality_residual(spec))

# Constructors drop whatever lands on the DC bin and record how much it was.
constant = pk.FieldState(grid, np.ones(grid.shape + (6,), complex))
spec_const = pk.to_spectral(constant)
print("\na constant field is pure DC; discarded amplitude norm =",
      spec_const.dc_discarded)
