"""Spin-1 operator constants and the transverse circular (helicity) basis.

For every wavevector k != 0 the two unit vectors f+(k), f-(k) span the
plane transverse to k and satisfy (S.k/|k|) f_pm = +/- f_pm.  The
six-component plane-wave polarizations are psi_pm = (f_pm, -/+ i f_pm),
with psi^dag psi = 2 kept explicit rather than renormalized away.

The closed form is singular on the kz axis (0/0); there the basis is
fixed by the limit along kx -> 0+, ky = 0, which gives a deterministic
gauge:  f_pm = (-1, -/+ i, 0)/sqrt(2) for kz > 0 and (+1, -/+ i, 0)/sqrt(2)
for kz < 0.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .lattice import Grid3D, SpectralField

# Spin-1 matrices, (S_a)_{lm} = -i eps_{alm}, so (S.a) v = i a x v.
SX = np.array([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]], dtype=complex)
SY = np.array([[0, 0, 1j], [0, 0, 0], [-1j, 0, 0]], dtype=complex)
SZ = np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]], dtype=complex)
SPIN = np.stack([SX, SY, SZ])

# Block matrix acting on 6-vectors: (upper, lower) -> (lower, -upper).
J6 = np.block([[np.zeros((3, 3)), np.eye(3)],
               [-np.eye(3), np.zeros((3, 3))]]).astype(complex)

for _m in (SX, SY, SZ, SPIN, J6):
    _m.setflags(write=False)

# Below this transverse fraction of |k|^2 the closed form is abandoned
# for the on-axis limit (guards the 0/0 quotient).
AXIS_EPS = 1e-24


@dataclass(frozen=True)
class HelicityVectors:
    """Helicity basis at a single wavevector."""

    k: np.ndarray
    f_plus: np.ndarray
    f_minus: np.ndarray
    psi_plus: np.ndarray
    psi_minus: np.ndarray


def _axis_limit(kz_positive: bool) -> tuple:
    s = -1.0 if kz_positive else 1.0
    f_plus = np.array([s, -1j, 0.0]) / np.sqrt(2.0)
    f_minus = np.array([s, +1j, 0.0]) / np.sqrt(2.0)
    return f_plus, f_minus


def transverse_basis(k) -> HelicityVectors:
    """Helicity basis vectors at wavevector k (|k| > 0 required)."""
    k = np.asarray(k, dtype=float)
    knorm = float(np.linalg.norm(k))
    if knorm == 0.0:
        raise ValueError("no transverse basis at k = 0 (no photon at DC)")
    kx, ky, kz = k
    kperp2 = kx * kx + ky * ky
    if kperp2 < AXIS_EPS * knorm * knorm:
        f_plus, f_minus = _axis_limit(kz > 0.0)
    else:
        denom = np.sqrt(2.0 * knorm * knorm * kperp2)
        f_plus = np.array([-kx * kz + 1j * ky * knorm,
                           -ky * kz - 1j * kx * knorm,
                           kperp2]) / denom
        f_minus = np.array([-kx * kz - 1j * ky * knorm,
                            -ky * kz + 1j * kx * knorm,
                            kperp2]) / denom
    psi_plus = np.concatenate([f_plus, -1j * f_plus])
    psi_minus = np.concatenate([f_minus, +1j * f_minus])
    return HelicityVectors(k=k, f_plus=f_plus, f_minus=f_minus,
                           psi_plus=psi_plus, psi_minus=psi_minus)


def helicity_eigencheck(k, h: HelicityVectors) -> tuple:
    """Residuals |(S.k/|k|) f_pm -/+ f_pm| for the two helicity slots."""
    k = np.asarray(k, dtype=float)
    khat = k / np.linalg.norm(k)
    s_dot_k = np.tensordot(khat, SPIN, axes=(0, 0))
    res_plus = np.linalg.norm(s_dot_k @ h.f_plus - h.f_plus)
    res_minus = np.linalg.norm(s_dot_k @ h.f_minus + h.f_minus)
    return float(res_plus), float(res_minus)


@lru_cache(maxsize=8)
def grid_basis(grid: Grid3D) -> tuple:
    """(psi_plus, psi_minus) arrays of shape grid + (6,); zero at the DC bin."""
    kv = grid.k_vectors
    kx, ky, kz = kv[..., 0], kv[..., 1], kv[..., 2]
    knorm = grid.k_norm
    kperp2 = kx * kx + ky * ky

    on_axis = kperp2 <= AXIS_EPS * knorm * knorm  # <= also catches the DC bin
    denom = np.sqrt(2.0 * knorm * knorm * kperp2)
    denom[on_axis] = 1.0  # placeholder, rows rewritten below

    f_plus = np.stack([-kx * kz + 1j * ky * knorm,
                       -ky * kz - 1j * kx * knorm,
                       kperp2 + 0j], axis=-1) / denom[..., None]
    f_minus = np.stack([-kx * kz - 1j * ky * knorm,
                        -ky * kz + 1j * kx * knorm,
                        kperp2 + 0j], axis=-1) / denom[..., None]

    ax_pos = on_axis & (kz > 0.0)
    ax_neg = on_axis & (kz < 0.0)
    fp_pos, fm_pos = _axis_limit(True)
    fp_neg, fm_neg = _axis_limit(False)
    f_plus[ax_pos] = fp_pos
    f_minus[ax_pos] = fm_pos
    f_plus[ax_neg] = fp_neg
    f_minus[ax_neg] = fm_neg
    f_plus[on_axis & (kz == 0.0)] = 0.0  # DC bin
    f_minus[on_axis & (kz == 0.0)] = 0.0

    psi_plus = np.concatenate([f_plus, -1j * f_plus], axis=-1)
    psi_minus = np.concatenate([f_minus, +1j * f_minus], axis=-1)
    psi_plus.setflags(write=False)
    psi_minus.setflags(write=False)
    return psi_plus, psi_minus


@dataclass
class SpectralCoefficients:
    """Helicity amplitudes c_pm(k) of a forward-propagating field."""

    grid: Grid3D
    c_plus: np.ndarray
    c_minus: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        for name in ("c_plus", "c_minus"):
            arr = np.asarray(getattr(self, name), dtype=complex)
            if arr.shape != self.grid.shape:
                raise ValueError(f"{name} shape {arr.shape} does not match "
                                 f"grid {self.grid.shape}")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} contains non-finite entries")
            if arr[0, 0, 0] != 0.0:
                arr = arr.copy()
                arr[0, 0, 0] = 0.0
            arr.setflags(write=False)
            setattr(self, name, arr)

    def norm_squared(self) -> float:
        """sum (|c+|^2 + |c-|^2) * dV_k."""
        return float((np.abs(self.c_plus) ** 2 + np.abs(self.c_minus) ** 2).sum()
                     * self.grid.k_cell_volume)


def project(g: SpectralField) -> tuple:
    """Project a spectral field onto the helicity basis.

    Returns (SpectralCoefficients, residual).  c_pm = psi_pm^dag Phi / 2 at
    every k != 0; the residual is the largest per-bin norm of
    Phi - c+ psi+ - c- psi-, i.e. content outside the forward-propagating
    subspace (counterpropagating conjugates, longitudinal pollution).
    A large residual is data, not an error.
    """
    psi_p, psi_m = grid_basis(g.grid)
    c_plus = np.einsum("...i,...i->...", psi_p.conj(), g.values) / 2.0
    c_minus = np.einsum("...i,...i->...", psi_m.conj(), g.values) / 2.0
    recon = c_plus[..., None] * psi_p + c_minus[..., None] * psi_m
    residual = float(np.linalg.norm(g.values - recon, axis=-1).max())
    coeffs = SpectralCoefficients(grid=g.grid, c_plus=c_plus,
                                  c_minus=c_minus, time=g.time)
    return coeffs, residual


def synthesize(coeffs: SpectralCoefficients) -> SpectralField:
    """Assemble Phi(k) = c+(k) psi+(k) + c-(k) psi-(k)."""
    psi_p, psi_m = grid_basis(coeffs.grid)
    values = (coeffs.c_plus[..., None] * psi_p
              + coeffs.c_minus[..., None] * psi_m)
    return SpectralField(grid=coeffs.grid, values=values, time=coeffs.time)
