"""Physical constants, 3D periodic grids and the discrete Fourier pair.

The transform pair is pinned to the symmetric continuum convention

    Phi[k] = (2*pi)^(-3/2) * dV_r * sum_r Psi[r] * exp(-i k.r)
    Psi[r] = (2*pi)^(-3/2) * dV_k * sum_k Phi[k] * exp(+i k.r)

so that round trips are exact and Parseval reads
sum |Psi|^2 dV_r = sum |Phi|^2 dV_k with no stray factors.  Everything
downstream (helicity projections, photon normalization, Fock overlaps)
leans on these two identities holding to machine precision.

The k = 0 (DC) bin carries no propagating mode; spectral constructors
zero it and record the discarded amplitude.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True)
class PhysicalConstants:
    """Vacuum constants. Natural units (all 1) are the default everywhere."""

    hbar: float = 1.0
    c: float = 1.0
    eps0: float = 1.0
    mu0: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "c", "eps0", "mu0"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")
        rel = abs(self.eps0 * self.mu0 * self.c**2 - 1.0)
        if rel > 1e-12:
            raise ValueError(
                f"eps0*mu0*c^2 = {self.eps0 * self.mu0 * self.c**2!r} "
                "violates the vacuum relation (tol 1e-12 relative)"
            )


NATURAL = PhysicalConstants()


def si_constants() -> PhysicalConstants:
    """CODATA-flavoured SI values; mu0 is derived so eps0*mu0*c^2 = 1 exactly."""
    c = 299792458.0
    eps0 = 8.8541878128e-12
    return PhysicalConstants(hbar=1.054571817e-34, c=c, eps0=eps0,
                             mu0=1.0 / (eps0 * c * c))


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Grid3D:
    """Uniform periodic lattice and its conjugate k-grid.

    n       points per axis, each a power of two >= 4
    dr      grid spacing per axis
    origin  physical coordinate of the [0,0,0] sample
    """

    n: tuple
    dr: tuple
    origin: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if len(self.n) != 3 or len(self.dr) != 3 or len(self.origin) != 3:
            raise ValueError("n, dr and origin must have three components")
        for na in self.n:
            if not (isinstance(na, (int, np.integer)) and _is_power_of_two(int(na)) and na >= 4):
                raise ValueError(f"grid size {na} is not a power of two >= 4")
        for da in self.dr:
            if not da > 0.0:
                raise ValueError(f"grid spacing {da} must be positive")

    @property
    def shape(self) -> tuple:
        return tuple(int(na) for na in self.n)

    @cached_property
    def lengths(self) -> np.ndarray:
        """Box length per axis, L_a = n_a * dr_a."""
        return np.array([na * da for na, da in zip(self.n, self.dr)])

    @cached_property
    def dk(self) -> np.ndarray:
        """k-grid spacing per axis, 2*pi / L_a."""
        return 2.0 * np.pi / self.lengths

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.dr))

    @property
    def k_cell_volume(self) -> float:
        return float(np.prod(self.dk))

    @property
    def volume(self) -> float:
        return float(np.prod(self.lengths))

    @cached_property
    def r_axes(self) -> tuple:
        """Per-axis sample coordinates origin_a + i*dr_a."""
        return tuple(self.origin[a] + self.dr[a] * np.arange(self.n[a])
                     for a in range(3))

    @cached_property
    def k_axes(self) -> tuple:
        """Per-axis angular wavenumbers in DFT layout (0, dk, ..., +Nyquist, ..., -dk).

        The Nyquist bin is labelled +pi/dr (not numpy's -pi/dr); both label the
        same lattice mode, and the positive choice keeps omega = c|k| and the
        helicity basis consistent with forward propagation.
        """
        axes = []
        for a in range(3):
            k = 2.0 * np.pi * np.fft.fftfreq(self.n[a], d=self.dr[a])
            k[self.n[a] // 2] = abs(k[self.n[a] // 2])
            k.setflags(write=False)
            axes.append(k)
        return tuple(axes)

    @cached_property
    def k_vectors(self) -> np.ndarray:
        """(nx, ny, nz, 3) array of k-vectors; read-only."""
        kx, ky, kz = np.meshgrid(*self.k_axes, indexing="ij")
        kv = np.stack([kx, ky, kz], axis=-1)
        kv.setflags(write=False)
        return kv

    @cached_property
    def k_norm(self) -> np.ndarray:
        kn = np.linalg.norm(self.k_vectors, axis=-1)
        kn.setflags(write=False)
        return kn

    def bin_index(self, bins) -> tuple:
        """Array index of the bin with integer coordinates (multiples of dk)."""
        idx = []
        for a, b in enumerate(bins):
            b = int(b)
            if not -self.n[a] // 2 < b <= self.n[a] // 2:
                raise ValueError(f"bin {b} outside axis of size {self.n[a]}")
            idx.append(b % self.n[a])
        return tuple(idx)


def make_grid(n, dr, origin=(0.0, 0.0, 0.0)) -> Grid3D:
    """Build a Grid3D; scalar n/dr are broadcast to all three axes."""
    if np.isscalar(n):
        n = (n, n, n)
    if np.isscalar(dr):
        dr = (dr, dr, dr)
    return Grid3D(n=tuple(int(x) for x in n),
                  dr=tuple(float(x) for x in dr),
                  origin=tuple(float(x) for x in origin))


def _check_values(grid: Grid3D, values: np.ndarray, what: str) -> np.ndarray:
    values = np.asarray(values, dtype=complex)
    if values.shape != grid.shape + (6,):
        raise ValueError(f"{what} shape {values.shape} does not match "
                         f"grid {grid.shape} + (6,)")
    if not np.all(np.isfinite(values)):
        raise ValueError(f"{what} contains non-finite entries")
    return values


@dataclass
class FieldState:
    """Six-component field on the spatial grid.

    Components 0..2 hold sqrt(eps0)*E, components 3..5 hold sqrt(mu0)*H.
    Treated as immutable after construction.
    """

    grid: Grid3D
    values: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.values = _check_values(self.grid, self.values, "field values")
        self.values.setflags(write=False)


@dataclass
class SpectralField:
    """Fourier image of a FieldState on the conjugate k-grid.

    The DC bin is identically zero; ``dc_discarded`` records the norm of
    whatever amplitude a constructor had to drop there.
    """

    grid: Grid3D
    values: np.ndarray
    time: float = 0.0
    dc_discarded: float = 0.0

    def __post_init__(self):
        values = _check_values(self.grid, self.values, "spectral values")
        dc = float(np.linalg.norm(values[0, 0, 0]))
        if dc != 0.0:
            values = values.copy()
            values[0, 0, 0] = 0.0
            self.dc_discarded = self.dc_discarded + dc
        self.values = values
        self.values.setflags(write=False)


def _origin_phase(grid: Grid3D, sign: float) -> np.ndarray | None:
    if all(o == 0.0 for o in grid.origin):
        return None
    k_dot_o = sum(grid.k_axes[a].reshape([-1 if x == a else 1 for x in range(3)])
                  * grid.origin[a] for a in range(3))
    return np.exp(sign * 1j * k_dot_o)


def to_spectral(f: FieldState) -> SpectralField:
    """Forward transform, component by component; time is carried through."""
    phi = np.fft.fftn(f.values, axes=(0, 1, 2))
    phi *= (2.0 * np.pi) ** (-1.5) * f.grid.cell_volume
    phase = _origin_phase(f.grid, -1.0)
    if phase is not None:
        phi *= phase[..., None]
    return SpectralField(grid=f.grid, values=phi, time=f.time)


def to_spatial(g: SpectralField) -> FieldState:
    """Inverse transform; exact inverse of :func:`to_spectral`."""
    work = g.values
    phase = _origin_phase(g.grid, +1.0)
    if phase is not None:
        work = work * phase[..., None]
    psi = np.fft.ifftn(work, axes=(0, 1, 2))
    psi *= (2.0 * np.pi) ** 1.5 / g.grid.cell_volume
    return FieldState(grid=g.grid, values=psi, time=g.time)
