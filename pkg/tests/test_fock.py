"""Bosonic ladder algebra, expectations and the coarse-grained counters."""

import numpy as np
import pytest

import photonkit as pk
from helpers import DenseFockOracle


def _two_mode_set(grid=None, max_occupation=3):
    grid = grid or pk.make_grid(16, 1.0)
    dk = grid.dk
    modes = (((8.0 * dk[0], 0.0, 0.0), +1),
             ((0.0, 2.0 * dk[1], 0.0), -1))
    return grid, pk.ModeSet(modes=modes, max_occupation=max_occupation)


def test_modeset_validation():
    with pytest.raises(ValueError):
        pk.ModeSet(modes=(((0.0, 0.0, 0.0), +1),))
    with pytest.raises(ValueError):
        pk.ModeSet(modes=(((1.0, 0.0, 0.0), 2),))
    with pytest.raises(ValueError):
        pk.ModeSet(modes=(((1.0, 0.0, 0.0), +1), ((1.0, 0.0, 0.0), +1)))
    with pytest.raises(ValueError):
        pk.ModeSet(modes=(((1.0, 0.0, 0.0), +1),), max_occupation=0)


def test_ladder_on_vacuum():
    _, ms = _two_mode_set()
    vac = pk.FockState.vacuum(ms)
    one = pk.create(vac, 0)
    assert one.amplitudes == {(1, 0): pytest.approx(1.0)}
    two = pk.create(one, 0)
    assert two.amplitudes[(2, 0)] == pytest.approx(np.sqrt(2.0))
    back = pk.annihilate(one, 0)
    assert back.amplitudes == {(0, 0): pytest.approx(1.0)}
    nothing = pk.annihilate(vac, 0)
    assert nothing.is_zero


def test_ladder_is_linear_on_superpositions():
    _, ms = _two_mode_set()
    vac = pk.FockState.vacuum(ms)
    s = 1.0 / np.sqrt(2.0)
    state = pk.FockState(ms, {(0, 0): s, (1, 0): s})
    raised = pk.create(state, 0)
    assert raised.amplitudes[(1, 0)] == pytest.approx(s)
    assert raised.amplitudes[(2, 0)] == pytest.approx(s * np.sqrt(2.0))


def test_invalid_mode_index():
    _, ms = _two_mode_set()
    vac = pk.FockState.vacuum(ms)
    with pytest.raises(IndexError):
        pk.create(vac, 5)
    with pytest.raises(IndexError):
        pk.annihilate(vac, -1)


def test_commutator_identity_below_truncation():
    _, ms = _two_mode_set()
    vac = pk.FockState.vacuum(ms)
    state = pk.create(pk.create(pk.create(vac, 0), 0), 1)  # |2, 1>
    for mode in range(2):
        left = pk.annihilate(pk.create(state, mode), mode)
        right = pk.create(pk.annihilate(state, mode), mode)
        keys = set(left.amplitudes) | set(right.amplitudes) | set(state.amplitudes)
        for occ in keys:
            gap = (left.amplitudes.get(occ, 0.0)
                   - right.amplitudes.get(occ, 0.0)
                   - state.amplitudes.get(occ, 0.0))
            assert abs(gap) <= 1e-13 * abs(state.amplitudes.get(occ, 1.0))
    # cross-mode commutator vanishes identically
    cross_left = pk.annihilate(pk.create(state, 0), 1)
    cross_right = pk.create(pk.annihilate(state, 1), 0)
    for occ in set(cross_left.amplitudes) | set(cross_right.amplitudes):
        gap = (cross_left.amplitudes.get(occ, 0.0)
               - cross_right.amplitudes.get(occ, 0.0))
        assert abs(gap) <= 1e-13


def test_truncation_records_loss():
    _, ms = _two_mode_set(max_occupation=2)
    vac = pk.FockState.vacuum(ms)
    full = pk.create(pk.create(vac, 0), 0)      # |2, 0>, at the cap
    clipped = pk.create(full, 0)
    assert clipped.is_zero
    assert clipped.truncation_loss == pytest.approx(2.0 * 3.0)  # |amp|^2 (n+1)


def test_vacuum_energy_is_exactly_zero():
    _, ms = _two_mode_set()
    vac = pk.FockState.vacuum(ms)
    assert pk.hamiltonian_expectation(vac) == 0.0


def test_single_quantum_energy():
    # |k| = 2 in natural units: one created photon carries energy 2
    ms = pk.ModeSet(modes=(((2.0, 0.0, 0.0), +1),))
    state = pk.create(pk.FockState.vacuum(ms), 0)
    assert pk.hamiltonian_expectation(state) == pytest.approx(2.0, abs=1e-14)


def test_expectations_match_dense_oracle_on_all_basis_states():
    grid, ms = _two_mode_set()
    oracle = DenseFockOracle(ms)
    for occ in oracle.basis_states():
        state = pk.FockState(ms, {occ: 1.0 + 0.0j})
        assert abs(pk.hamiltonian_expectation(state)
                   - oracle.hamiltonian_expectation(state)) <= 1e-12
        for mode in range(len(ms)):
            assert abs(pk.number_expectation(state, mode)
                       - oracle.number_expectation(state, mode)) <= 1e-12


def test_expectations_match_dense_oracle_on_random_states():
    grid, ms = _two_mode_set()
    oracle = DenseFockOracle(ms)
    rng = np.random.default_rng(123)
    basis = list(oracle.basis_states())
    for _ in range(25):
        amps = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
        amps /= np.linalg.norm(amps)
        state = pk.FockState(ms, dict(zip(basis, amps)))
        h_ref = oracle.hamiltonian_expectation(state)
        assert abs(pk.hamiltonian_expectation(state) - h_ref) <= 1e-12 * max(1.0, h_ref)
        assert pk.hamiltonian_expectation(state) >= 0.0
        for mode in range(len(ms)):
            n_ref = oracle.number_expectation(state, mode)
            assert abs(pk.number_expectation(state, mode) - n_ref) <= 1e-12


def test_number_expectation_examples():
    _, ms = _two_mode_set()
    vac = pk.FockState.vacuum(ms)
    one = pk.create(vac, 0)
    assert pk.number_expectation(one, 0) == pytest.approx(1.0)
    assert pk.number_expectation(vac, 0) == 0.0
    s = 1.0 / np.sqrt(2.0)
    mixed = pk.FockState(ms, {(0, 0): s, (2, 0): s})
    assert pk.number_expectation(mixed, 0) == pytest.approx(1.0, abs=1e-12)


def test_expectations_require_normalized_states():
    _, ms = _two_mode_set()
    lopsided = pk.FockState(ms, {(1, 0): 2.0})
    with pytest.raises(ValueError):
        pk.hamiltonian_expectation(lopsided)
    with pytest.raises(ValueError):
        pk.number_expectation(lopsided, 0)


def test_energy_zero_only_for_vacuum():
    _, ms = _two_mode_set()
    vac = pk.FockState.vacuum(ms)
    assert pk.hamiltonian_expectation(vac) == 0.0
    lifted = pk.create(vac, 1)
    assert pk.hamiltonian_expectation(lifted) > 0.0


def test_number_in_volume_whole_half_and_additive():
    grid, ms = _two_mode_set()
    vac = pk.FockState.vacuum(ms)
    one = pk.create(vac, 0)
    lo = grid.origin
    hi = tuple(np.array(grid.origin) + grid.lengths)
    whole = pk.RegionSpec.box(lo, hi)
    assert abs(pk.coarse_number_in_volume(one, whole, grid) - 1.0) <= 1e-10

    half_hi = np.array(hi)
    half_hi[0] = grid.origin[0] + grid.lengths[0] / 2.0
    half = pk.RegionSpec.box(lo, tuple(half_hi))
    assert abs(pk.coarse_number_in_volume(one, half, grid) - 0.5) <= 1e-10

    pair = pk.create(pk.create(vac, 0), 1)
    assert abs(pk.coarse_number_in_volume(pair, whole, grid) - 2.0) <= 1e-10


def test_number_in_volume_equals_total_occupation_for_superpositions():
    grid, ms = _two_mode_set()
    rng = np.random.default_rng(5)
    oracle_basis = [(0, 0), (1, 0), (0, 1), (2, 1), (1, 2), (3, 0)]
    amps = rng.normal(size=len(oracle_basis)) + 1j * rng.normal(size=len(oracle_basis))
    amps /= np.linalg.norm(amps)
    state = pk.FockState(ms, dict(zip(oracle_basis, amps)))
    whole = pk.RegionSpec.box(grid.origin,
                              tuple(np.array(grid.origin) + grid.lengths))
    total = sum(pk.number_expectation(state, m) for m in range(len(ms)))
    assert abs(pk.coarse_number_in_volume(state, whole, grid) - total) <= 1e-10


def test_number_in_volume_rejects_out_of_box_region():
    grid, ms = _two_mode_set()
    one = pk.create(pk.FockState.vacuum(ms), 0)
    too_big = pk.RegionSpec.box((0.0, 0.0, 0.0), (100.0, 1.0, 1.0))
    with pytest.raises(ValueError):
        pk.coarse_number_in_volume(one, too_big, grid)


def test_off_grid_modes_are_rejected():
    grid = pk.make_grid(16, 1.0)
    ms = pk.ModeSet(modes=(((0.5 * grid.dk[0], 0.0, 0.0), +1),))
    one = pk.create(pk.FockState.vacuum(ms), 0)
    whole = pk.RegionSpec.box(grid.origin,
                              tuple(np.array(grid.origin) + grid.lengths))
    with pytest.raises(ValueError):
        pk.coarse_number_in_volume(one, whole, grid)


def test_flux_counts_one_crossing():
    # |k| = 8 dk along x on a 32^3 grid, window of one box-crossing time
    grid = pk.make_grid(32, 1.0)
    ms = pk.ModeSet(modes=(((8.0 * grid.dk[0], 0.0, 0.0), +1),))
    one = pk.create(pk.FockState.vacuum(ms), 0)
    lx = float(grid.lengths[0])
    plane = pk.RegionSpec.plane(0, lx / 2.0, 0.0, lx)  # c = 1
    flux = pk.coarse_flux_through_surface(one, plane, grid)
    assert abs(flux - 1.0) <= 0.02


def test_flux_window_scales_and_sign():
    grid, ms = _two_mode_set()
    one = pk.create(pk.FockState.vacuum(ms), 0)
    lx = float(grid.lengths[0])
    half_window = pk.RegionSpec.plane(0, lx / 2.0, 0.0, lx / 2.0)
    assert abs(pk.coarse_flux_through_surface(one, half_window, grid) - 0.5) <= 0.02
    reversed_normal = pk.RegionSpec.plane(0, lx / 2.0, 0.0, lx, normal_sign=-1)
    assert abs(pk.coarse_flux_through_surface(one, reversed_normal, grid) + 1.0) <= 0.02


def test_flux_near_zero_for_tiny_window():
    grid, ms = _two_mode_set()
    one = pk.create(pk.FockState.vacuum(ms), 0)
    lx = float(grid.lengths[0])
    tiny = pk.RegionSpec.plane(0, lx / 2.0, 0.0, 1e-12)
    assert abs(pk.coarse_flux_through_surface(one, tiny, grid)) <= 1e-10


def test_flux_zero_for_parallel_propagation():
    grid, ms = _two_mode_set()
    sideways = pk.create(pk.FockState.vacuum(ms), 1)  # k along y
    lx = float(grid.lengths[0])
    plane = pk.RegionSpec.plane(0, lx / 2.0, 0.0, lx)
    assert abs(pk.coarse_flux_through_surface(sideways, plane, grid)) <= 1e-10


def test_region_validation():
    with pytest.raises(ValueError):
        pk.RegionSpec.box((0.0, 0.0, 0.0), (0.0, 1.0, 1.0))
    with pytest.raises(ValueError):
        pk.RegionSpec.plane(3, 0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        pk.RegionSpec.plane(0, 0.0, 1.0, 1.0)  # empty time window
    grid, ms = _two_mode_set()
    one = pk.create(pk.FockState.vacuum(ms), 0)
    box = pk.RegionSpec.box(grid.origin, tuple(np.array(grid.origin) + grid.lengths))
    plane = pk.RegionSpec.plane(0, 1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        pk.coarse_flux_through_surface(one, box, grid)
    with pytest.raises(ValueError):
        pk.coarse_number_in_volume(one, plane, grid)


def test_expectations_are_real_for_random_states():
    grid, ms = _two_mode_set()
    rng = np.random.default_rng(17)
    basis = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)]
    amps = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
    amps /= np.linalg.norm(amps)
    state = pk.FockState(ms, dict(zip(basis, amps)))
    g = pk.transition_matrix(state)
    assert np.abs(g - g.conj().T).max() <= 1e-13  # Hermitian
    h = pk.hamiltonian_expectation(state)
    assert isinstance(h, float) and h >= 0.0
