"""Many-photon states over declared modes, with coarse-grained counters.

The Hamiltonian is a plain sum of hbar*c*|k| per occupied quantum: there is
no zero-point term because only forward-propagating modes are declared.
N_V integrates the coarse photon density over a sub-box; N_Sigma counts
crossings of a plane during a time window.
"""

import numpy as np

import photonkit as pk

grid = pk.make_grid(16, 1.0)
dk = grid.dk[0]
modeset = pk.ModeSet(modes=(((8.0 * dk, 0.0, 0.0), +1),
                            ((0.0, 2.0 * dk, 0.0), -1)),
                     max_occupation=3)
omegas = modeset.omegas()
print("declared modes: omega =", omegas, " helicity = (+1, -1)")

vacuum = pk.FockState.vacuum(modeset)
print("\nvacuum <H> =", pk.hamiltonian_expectation(vacuum), "(exactly zero)")

state = pk.create(pk.create(pk.create(vacuum, 0), 0), 1).normalized()
print("after a0^dag a0^dag a1^dag |0>:")
print("  amplitudes:", {occ: round(abs(a), 6)
                        for occ, a in state.amplitudes.items()})
print("  <n_0>, <n_1> =", pk.number_expectation(state, 0),
      pk.number_expectation(state, 1))
print("  <H> =", pk.hamiltonian_expectation(state),
      " (= 2 omega_0 + omega_1 =", 2 * omegas[0] + omegas[1], ")")

aa = pk.annihilate(pk.create(state, 1), 1)
ad = pk.create(pk.annihilate(state, 1), 1)
gap = max(abs(aa.amplitudes.get(occ, 0) - ad.amplitudes.get(occ, 0)
              - state.amplitudes.get(occ, 0))
          for occ in set(aa.amplitudes) | set(state.amplitudes))
print("  [a, a^dag] = 1 residual:", gap)

lo = grid.origin
hi = tuple(np.array(grid.origin) + grid.lengths)
whole = pk.RegionSpec.box(lo, hi)
print("\ncoarse counting:")
print("  N_V over the whole box  :",
      pk.coarse_number_in_volume(state, whole, grid), " (total occupation 3)")
half_hi = np.array(hi)
half_hi[0] = grid.origin[0] + grid.lengths[0] / 2.0
half = pk.RegionSpec.box(lo, tuple(half_hi))
print("  N_V over the half box   :",
      pk.coarse_number_in_volume(state, half, grid),
      " (plane waves fill the box uniformly)")

one = pk.create(vacuum, 0)
lx = float(grid.lengths[0])
plane = pk.RegionSpec.plane(0, lx / 2.0, 0.0, lx)  # one crossing time
print("  N_Sigma, one crossing   :",
      pk.coarse_flux_through_surface(one, plane, grid))
sideways = pk.create(vacuum, 1)
print("  N_Sigma, parallel photon:",
      pk.coarse_flux_through_surface(sideways, plane, grid))

capped = pk.create(pk.create(pk.create(pk.create(vacuum, 0), 0), 0), 0)
print("\nocc cap 3: a fourth quantum truncates; recorded loss =",
      capped.truncation_loss)
