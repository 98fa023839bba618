"""The transverse circular basis f+(k), f-(k).

Shows the closed-form vectors at a few directions, their defining
identities, and the deterministic gauge on the kz axis where the closed
form would be 0/0.
"""

import numpy as np

import photonkit as pk

np.set_printoptions(precision=6, suppress=True)

for k in [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0), (3.0, -2.0, 5.0)]:
    b = pk.transverse_basis(k)
    khat = np.array(k) / np.linalg.norm(k)
    print(f"k = {k}")
    print("  f+        :", np.round(b.f_plus, 6))
    print("  f-        :", np.round(b.f_minus, 6))
    print("  |f+|, |f-|:", np.linalg.norm(b.f_plus), np.linalg.norm(b.f_minus))
    print("  f+^H f-   :", abs(np.vdot(b.f_plus, b.f_minus)))
    print("  k.f+      :", abs(khat @ b.f_plus))
    res_p, res_m = pk.helicity_eigencheck(k, b)
    print("  (S.khat) f = +/- f residuals:", res_p, res_m)
    print()

# The six-vector plane-wave polarizations carry psi^dag psi = 2 by
# construction; the lower block is (k/|k|) x f, the magnetic partner.
b = pk.transverse_basis((3.0, -2.0, 5.0))
print("psi+^dag psi+ =", np.vdot(b.psi_plus, b.psi_plus).real)
print("psi-^dag psi- =", np.vdot(b.psi_minus, b.psi_minus).real)

# Approaching the z-axis along kx -> 0+ converges to the on-axis gauge.
print("\napproach to the +z axis (gap to the on-axis vectors):")
for eps in (1e-2, 1e-4, 1e-6, 1e-8):
    b_near = pk.transverse_basis((eps, 0.0, 1.0))
    b_axis = pk.transverse_basis((0.0, 0.0, 1.0))
    print(f"  kx/|k| = {eps:.0e}: max|f+ - f+(axis)| =",
          np.abs(b_near.f_plus - b_axis.f_plus).max())

# The complex conjugate of a forward wave is a counterpropagating solution:
# spectrally it lives at -k and is orthogonal to the forward span there.
grid = pk.make_grid(8, 1.0)
cp = np.zeros(grid.shape, complex)
cp[grid.bin_index((2, 1, 0))] = 1.0
forward = pk.to_spatial(pk.synthesize(
    pk.SpectralCoefficients(grid, cp, np.zeros_like(cp))))
conjugate = pk.FieldState(grid, forward.values.conj())
_, residual = pk.project(pk.to_spectral(conjugate))
print("\nprojection residual of the conjugated (counterpropagating) wave:",
      residual, " (its full amplitude -> flagged, not representable)")
