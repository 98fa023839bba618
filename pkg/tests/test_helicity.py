"""Operator constants and the transverse helicity basis."""

import numpy as np
import pytest

import photonkit as pk
from helpers import random_transversal_coeffs, single_mode_coeffs

SQRT2 = np.sqrt(2.0)


def test_spin_matrices_algebra():
    for s in (pk.SX, pk.SY, pk.SZ):
        assert np.array_equal(s, s.conj().T)
    assert np.array_equal(pk.SX @ pk.SY - pk.SY @ pk.SX, 1j * pk.SZ)
    assert np.array_equal(pk.SY @ pk.SZ - pk.SZ @ pk.SY, 1j * pk.SX)
    assert np.array_equal(pk.SZ @ pk.SX - pk.SX @ pk.SZ, 1j * pk.SY)
    assert np.array_equal(pk.J6 @ pk.J6, -np.eye(6))


def test_basis_at_cardinal_directions():
    # values from direct substitution into the closed form
    b = pk.transverse_basis((1.0, 0.0, 0.0))
    assert np.allclose(b.f_plus, np.array([0, -1j, 1]) / SQRT2, atol=1e-15)
    b = pk.transverse_basis((0.0, 1.0, 0.0))
    assert np.allclose(b.f_plus, np.array([1j, 0, 1]) / SQRT2, atol=1e-15)
    # on-axis limit along kx -> 0+, ky = 0
    b = pk.transverse_basis((0.0, 0.0, 1.0))
    assert np.allclose(b.f_plus, np.array([-1, -1j, 0]) / SQRT2, atol=1e-15)
    assert np.allclose(b.f_minus, np.array([-1, 1j, 0]) / SQRT2, atol=1e-15)
    b = pk.transverse_basis((0.0, 0.0, -2.0))
    assert np.allclose(b.f_plus, np.array([1, -1j, 0]) / SQRT2, atol=1e-15)


def test_basis_rejects_dc():
    with pytest.raises(ValueError):
        pk.transverse_basis((0.0, 0.0, 0.0))


def _basis_residuals(k):
    b = pk.transverse_basis(k)
    khat = np.asarray(k, dtype=float)
    khat = khat / np.linalg.norm(khat)
    eig = pk.helicity_eigencheck(k, b)
    return max(
        abs(np.linalg.norm(b.f_plus) - 1.0),
        abs(np.linalg.norm(b.f_minus) - 1.0),
        abs(np.vdot(b.f_plus, b.f_minus)),
        abs(khat @ b.f_plus),
        abs(khat @ b.f_minus),
        # +/- i f = -k x f / |k|, the identity stated with the closed form
        np.abs(1j * b.f_plus + np.cross(khat, b.f_plus)).max(),
        np.abs(-1j * b.f_minus + np.cross(khat, b.f_minus)).max(),
        # psi = (f, -/+ i f) with psi^dag psi = 2
        np.abs(b.psi_plus[3:] + 1j * b.f_plus).max(),
        np.abs(b.psi_minus[3:] - 1j * b.f_minus).max(),
        abs(np.vdot(b.psi_plus, b.psi_plus) - 2.0),
        abs(np.vdot(b.psi_minus, b.psi_minus) - 2.0),
        abs(np.vdot(b.psi_plus, b.psi_minus)),
        *eig,
    )


def test_basis_identities_over_random_k():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for i in range(1200):
        if i % 4 == 3:
            # near-axis rays down to k_perp^2 = 1e-12 |k|^2
            tilt = 10.0 ** rng.uniform(-6, -1)
            phi = rng.uniform(0.0, 2.0 * np.pi)
            direction = np.array([tilt * np.cos(phi), tilt * np.sin(phi),
                                  rng.choice([-1.0, 1.0])])
        else:
            direction = rng.normal(size=3)
        k = direction / np.linalg.norm(direction) * 10.0 ** rng.uniform(-3, 3)
        worst = max(worst, _basis_residuals(k))
    assert worst <= 1e-12


def test_eigencheck_examples():
    k = (1.0, 0.0, 0.0)
    res = pk.helicity_eigencheck(k, pk.transverse_basis(k))
    assert max(res) <= 1e-14
    k = np.array([3.0, -2.0, 5.0])
    k = k / np.linalg.norm(k)
    res = pk.helicity_eigencheck(k, pk.transverse_basis(k))
    assert max(res) <= 1e-12


def test_eigencheck_flags_corrupted_basis():
    k = (1.0, 0.0, 0.0)
    good = pk.transverse_basis(k)
    corrupted = pk.HelicityVectors(k=good.k, f_plus=good.f_minus,
                                   f_minus=good.f_minus,
                                   psi_plus=good.psi_minus,
                                   psi_minus=good.psi_minus)
    res_plus, res_minus = pk.helicity_eigencheck(k, corrupted)
    assert res_plus == pytest.approx(2.0, abs=1e-12)
    assert res_minus <= 1e-14


def test_on_axis_continuity_along_limit_path():
    for kz in (1.0, -1.0):
        reference = pk.transverse_basis((0.0, 0.0, kz))
        previous = np.inf
        for eps in (1e-2, 1e-4, 1e-6, 1e-8):
            k = (eps * abs(kz), 0.0, kz)
            b = pk.transverse_basis(k)
            gap = max(np.abs(b.f_plus - reference.f_plus).max(),
                      np.abs(b.f_minus - reference.f_minus).max())
            assert gap < previous or gap <= 1e-12
            previous = gap
        assert previous <= 1e-7


def test_near_axis_guard_switches_to_axis_convention():
    k = (1e-13, 0.0, 1.0)  # k_perp^2 = 1e-26 < 1e-24 |k|^2
    b = pk.transverse_basis(k)
    assert np.array_equal(b.f_plus, np.array([-1.0, -1j, 0.0]) / SQRT2)


def test_grid_basis_matches_pointwise_basis():
    grid = pk.make_grid((8, 4, 4), (0.5, 1.0, 1.0))
    psi_p, psi_m = pk.grid_basis(grid)
    rng = np.random.default_rng(5)
    for _ in range(20):
        idx = tuple(rng.integers(0, n) for n in grid.n)
        k = grid.k_vectors[idx]
        if np.linalg.norm(k) == 0.0:
            assert not psi_p[idx].any() and not psi_m[idx].any()
            continue
        b = pk.transverse_basis(k)
        assert np.abs(psi_p[idx] - b.psi_plus).max() <= 1e-15
        assert np.abs(psi_m[idx] - b.psi_minus).max() <= 1e-15


def test_project_recovers_single_mode():
    grid = pk.make_grid(8, 1.0)
    alpha = 0.8 - 0.6j
    coeffs = single_mode_coeffs(grid, (1, 2, 0), c_plus=alpha)
    recovered, residual = pk.project(pk.synthesize(coeffs))
    idx = grid.bin_index((1, 2, 0))
    assert abs(recovered.c_plus[idx] - alpha) <= 1e-12
    assert np.abs(recovered.c_minus).max() <= 1e-12
    assert residual <= 1e-12


def test_project_recovers_mixture():
    grid = pk.make_grid(8, 1.0)
    alpha, beta = 0.3 + 0.1j, -0.7 + 0.2j
    coeffs = single_mode_coeffs(grid, (0, 1, 3), c_plus=alpha, c_minus=beta)
    recovered, residual = pk.project(pk.synthesize(coeffs))
    idx = grid.bin_index((0, 1, 3))
    assert abs(recovered.c_plus[idx] - alpha) <= 1e-12
    assert abs(recovered.c_minus[idx] - beta) <= 1e-12
    assert residual <= 1e-12


def test_counterpropagating_conjugate_is_flagged():
    # The complex conjugate of a forward plane wave carries exp(-ik.r):
    # its spectral content sits at -k, where it is orthogonal to the
    # forward helicity span, so the projection residual is the full
    # amplitude rather than a rounding artifact.
    grid = pk.make_grid(8, 1.0)
    coeffs = single_mode_coeffs(grid, (2, 1, 0), c_plus=1.0)
    forward = pk.to_spatial(pk.synthesize(coeffs))
    conjugate = pk.FieldState(grid, forward.values.conj())
    spec = pk.to_spectral(conjugate)
    projected, residual = pk.project(spec)
    peak = np.abs(spec.values).max()
    assert residual >= 0.9 * peak
    # and nothing survives in the forward coefficients
    assert max(np.abs(projected.c_plus).max(),
               np.abs(projected.c_minus).max()) <= 1e-12 * peak


def test_project_synthesize_round_trip():
    grid = pk.make_grid(16, 1.0)
    rng = np.random.default_rng(12)
    coeffs = random_transversal_coeffs(grid, rng)
    spec = pk.synthesize(coeffs)
    back, residual = pk.project(spec)
    assert np.abs(back.c_plus - coeffs.c_plus).max() <= 1e-12
    assert np.abs(back.c_minus - coeffs.c_minus).max() <= 1e-12
    assert residual <= 1e-12 * np.abs(spec.values).max()
    again = pk.synthesize(back)
    assert np.abs(again.values - spec.values).max() <= 1e-12


def test_synthesize_zero_and_indicator():
    grid = pk.make_grid(4, 1.0)
    zero = pk.SpectralCoefficients(grid, np.zeros(grid.shape, complex),
                                   np.zeros(grid.shape, complex))
    assert not pk.synthesize(zero).values.any()
    one = single_mode_coeffs(grid, (1, 0, 0), c_plus=1.0)
    spec = pk.synthesize(one)
    idx = grid.bin_index((1, 0, 0))
    b = pk.transverse_basis(grid.k_vectors[idx])
    assert np.abs(spec.values[idx] - b.psi_plus).max() <= 1e-15


def test_coefficients_dc_is_forced_to_zero():
    grid = pk.make_grid(4, 1.0)
    cp = np.ones(grid.shape, complex)
    coeffs = pk.SpectralCoefficients(grid, cp, np.zeros(grid.shape, complex))
    assert coeffs.c_plus[0, 0, 0] == 0.0
