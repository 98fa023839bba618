"""Finite-mode bosonic Fock layer over declared (k, helicity) modes.

States are sparse maps from occupation vectors to complex amplitudes, with
an explicit per-mode occupation cap; branches that would exceed the cap are
dropped and their squared norm accumulated as ``truncation_loss``.  The
energy of a state is a plain sum of hbar*c*|k| per occupied quantum, with
no vacuum offset: the vacuum expectation is exactly zero because only
forward-propagating modes are declared, never cavity-like standing pairs.

The coarse-grained counters N_V (photons inside a volume) and N_Sigma
(photons crossing a plane in a time window) are expectations over
box-normalized plane-wave mode functions u_m(r) = psi_m exp(ik.r)/sqrt(2V);
whole-box N_V then equals the total occupation identically, which is what
fixes the discrete normalization.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .lattice import NATURAL, Grid3D, PhysicalConstants
from .helicity import SPIN, transverse_basis


class Mode(NamedTuple):
    k: tuple
    helicity: int


@dataclass(frozen=True)
class ModeSet:
    """Ordered declaration of the (k, helicity) modes in play."""

    modes: tuple
    max_occupation: int = 3

    def __post_init__(self):
        if self.max_occupation < 1:
            raise ValueError("max_occupation must be >= 1")
        seen = set()
        norm_modes = []
        for m in self.modes:
            k = tuple(float(x) for x in m[0])
            hel = int(m[1])
            if hel not in (+1, -1):
                raise ValueError(f"helicity must be +1 or -1, got {hel}")
            if not np.linalg.norm(k) > 0.0:
                raise ValueError("modes at k = 0 carry no photon")
            key = (k, hel)
            if key in seen:
                raise ValueError(f"duplicate mode {key}")
            seen.add(key)
            norm_modes.append(Mode(k, hel))
        object.__setattr__(self, "modes", tuple(norm_modes))

    def __len__(self) -> int:
        return len(self.modes)

    def omegas(self, consts: PhysicalConstants = NATURAL) -> np.ndarray:
        return np.array([consts.c * np.linalg.norm(m.k) for m in self.modes])

    def polarization_vectors(self) -> list:
        """Six-component psi_lambda(k) for each mode."""
        vecs = []
        for m in self.modes:
            basis = transverse_basis(m.k)
            vecs.append(basis.psi_plus if m.helicity > 0 else basis.psi_minus)
        return vecs


@dataclass
class FockState:
    """Sparse amplitude map over occupation vectors."""

    modeset: ModeSet
    amplitudes: dict
    truncation_loss: float = 0.0

    @classmethod
    def vacuum(cls, modeset: ModeSet) -> "FockState":
        return cls(modeset, {(0,) * len(modeset): 1.0 + 0.0j})

    @property
    def is_zero(self) -> bool:
        return not self.amplitudes

    def norm_squared(self) -> float:
        return float(sum(abs(a) ** 2 for a in self.amplitudes.values()))

    def normalized(self) -> "FockState":
        n = math.sqrt(self.norm_squared())
        if n == 0.0:
            raise ValueError("cannot normalize the zero state")
        return FockState(self.modeset,
                         {occ: a / n for occ, a in self.amplitudes.items()},
                         self.truncation_loss)

    def inner(self, other: "FockState") -> complex:
        """<self|other> over shared occupation vectors."""
        small, big = self.amplitudes, other.amplitudes
        if len(big) < len(small):
            return complex(np.conj(other.inner(self)))
        return sum(a.conjugate() * big[occ]
                   for occ, a in small.items() if occ in big)


def _check_mode(state: FockState, mode: int) -> None:
    if not 0 <= mode < len(state.modeset):
        raise IndexError(f"mode index {mode} out of range "
                         f"(have {len(state.modeset)} modes)")


def create(state: FockState, mode: int) -> FockState:
    """Apply a^dag with amplitude sqrt(n+1); overfull branches are dropped."""
    _check_mode(state, mode)
    cap = state.modeset.max_occupation
    out = {}
    loss = state.truncation_loss
    for occ, amp in state.amplitudes.items():
        n = occ[mode]
        if n + 1 > cap:
            loss += abs(amp) ** 2 * (n + 1)
            continue
        new = occ[:mode] + (n + 1,) + occ[mode + 1:]
        out[new] = out.get(new, 0.0) + amp * math.sqrt(n + 1)
    return FockState(state.modeset, out, loss)


def annihilate(state: FockState, mode: int) -> FockState:
    """Apply a with amplitude sqrt(n); a|0> is the (flagged) zero state."""
    _check_mode(state, mode)
    out = {}
    for occ, amp in state.amplitudes.items():
        n = occ[mode]
        if n == 0:
            continue
        new = occ[:mode] + (n - 1,) + occ[mode + 1:]
        out[new] = out.get(new, 0.0) + amp * math.sqrt(n)
    return FockState(state.modeset, out, state.truncation_loss)


def _require_normalized(state: FockState) -> None:
    if abs(state.norm_squared() - 1.0) > 1e-9:
        raise ValueError("expectation values require a normalized state")


def number_expectation(state: FockState, mode: int) -> float:
    """<a^dag a> for one mode."""
    _check_mode(state, mode)
    _require_normalized(state)
    return float(sum(abs(a) ** 2 * occ[mode]
                     for occ, a in state.amplitudes.items()))


def hamiltonian_expectation(state: FockState,
                            consts: PhysicalConstants = NATURAL) -> float:
    """<H> = sum over modes of hbar c |k| <a^dag a>; exactly 0 on vacuum."""
    _require_normalized(state)
    omegas = state.modeset.omegas(consts)
    total = 0.0
    for occ, amp in state.amplitudes.items():
        weight = abs(amp) ** 2
        for m, n in enumerate(occ):
            if n:
                total += weight * n * consts.hbar * omegas[m]
    return float(total)


def transition_matrix(state: FockState) -> np.ndarray:
    """G[m, m'] = <a^dag_m a_m'>, computed as <a_m psi | a_m' psi>."""
    nmodes = len(state.modeset)
    lowered = [annihilate(state, m) for m in range(nmodes)]
    g = np.empty((nmodes, nmodes), dtype=complex)
    for m in range(nmodes):
        for mp in range(nmodes):
            g[m, mp] = lowered[m].inner(lowered[mp])
    return g


@dataclass(frozen=True)
class RegionSpec:
    """Axis-aligned counting region: a box volume or a plane with a time window."""

    kind: str
    lo: tuple = None
    hi: tuple = None
    normal_axis: int = None
    normal_sign: int = None
    position: float = None
    t_start: float = None
    t_stop: float = None

    @classmethod
    def box(cls, lo, hi) -> "RegionSpec":
        lo = tuple(float(x) for x in lo)
        hi = tuple(float(x) for x in hi)
        if any(h <= l for l, h in zip(lo, hi)):
            raise ValueError("box must have positive extent on every axis")
        return cls(kind="volume", lo=lo, hi=hi)

    @classmethod
    def plane(cls, normal_axis: int, position: float,
              t_start: float, t_stop: float, normal_sign: int = +1) -> "RegionSpec":
        if normal_axis not in (0, 1, 2):
            raise ValueError("normal_axis must be 0, 1 or 2")
        if normal_sign not in (+1, -1):
            raise ValueError("normal_sign must be +1 or -1")
        if not t_stop > t_start:
            raise ValueError("surface time window requires t_stop > t_start")
        return cls(kind="surface", normal_axis=normal_axis,
                   normal_sign=normal_sign, position=float(position),
                   t_start=float(t_start), t_stop=float(t_stop))


def _check_modes_on_grid(modeset: ModeSet, grid: Grid3D) -> None:
    for m in modeset.modes:
        for a in range(3):
            ratio = m.k[a] / grid.dk[a]
            if abs(ratio - round(ratio)) > 1e-9:
                raise ValueError(f"mode k = {m.k} is not on the grid "
                                 f"(axis {a}: {ratio} bins)")
            if abs(round(ratio)) > grid.n[a] // 2:
                raise ValueError(f"mode k = {m.k} is beyond the Nyquist bin")


def _segment_integral(dk: float, lo: float, hi: float) -> complex:
    """Closed form of the line integral of exp(i dk x) over [lo, hi]."""
    if abs(dk) * (hi - lo) < 1e-14:
        return complex(hi - lo)
    return (np.exp(1j * dk * hi) - np.exp(1j * dk * lo)) / (1j * dk)


def coarse_number_in_volume(state: FockState, region: RegionSpec,
                            grid: Grid3D) -> float:
    """Expected photon count inside an axis-aligned sub-box.

    <N_V> = sum_{m,m'} <a^dag_m a_m'> O_V(m, m') with O_V the overlap of the
    box-normalized mode functions over the region; the diagonal reduces to
    occupation * vol(V)/vol(box).
    """
    if region.kind != "volume":
        raise ValueError("coarse_number_in_volume needs a volume region")
    _require_normalized(state)
    _check_modes_on_grid(state.modeset, grid)
    box_lo = np.array(grid.origin)
    box_hi = box_lo + grid.lengths
    if any(region.lo[a] < box_lo[a] - 1e-12 or region.hi[a] > box_hi[a] + 1e-12
           for a in range(3)):
        raise ValueError("volume region extends outside the grid box")

    g = transition_matrix(state)
    vecs = state.modeset.polarization_vectors()
    modes = state.modeset.modes
    two_v = 2.0 * grid.volume

    total = 0.0 + 0.0j
    for m in range(len(modes)):
        for mp in range(len(modes)):
            if g[m, mp] == 0.0:
                continue
            pol = np.vdot(vecs[m], vecs[mp]) / two_v
            if pol == 0.0:
                continue
            geom = 1.0 + 0.0j
            for a in range(3):
                dk = modes[mp].k[a] - modes[m].k[a]
                geom *= _segment_integral(dk, region.lo[a], region.hi[a])
            total += g[m, mp] * pol * geom
    return float(total.real)


def coarse_fields(state: FockState, grid: Grid3D,
                  consts: PhysicalConstants = NATURAL,
                  t: float = 0.0) -> tuple:
    """Coarse photon density, energy density and current on the grid.

    rho(r) = sum_{m,m'} <a^dag_m a_m'> u_m(r)^dag u_m'(r) at time t, and the
    matching current; the energy density weights each mode function by
    sqrt(hbar omega), so its box integral is <H>.
    """
    _require_normalized(state)
    _check_modes_on_grid(state.modeset, grid)
    g = transition_matrix(state)
    vecs = state.modeset.polarization_vectors()
    modes = state.modeset.modes
    omegas = state.modeset.omegas(consts)
    two_v = 2.0 * grid.volume

    xs = [grid.r_axes[a].reshape([-1 if i == a else 1 for i in range(3)])
          for a in range(3)]
    rho = np.zeros(grid.shape, dtype=complex)
    u = np.zeros(grid.shape, dtype=complex)
    j = np.zeros(grid.shape + (3,), dtype=complex)
    for m in range(len(modes)):
        for mp in range(len(modes)):
            if g[m, mp] == 0.0:
                continue
            phase = np.exp(1j * ((omegas[m] - omegas[mp]) * t + sum(
                (modes[mp].k[a] - modes[m].k[a]) * xs[a] for a in range(3))))
            weight = g[m, mp] * phase
            pol = np.vdot(vecs[m], vecs[mp]) / two_v
            rho += weight * pol
            u += weight * pol * consts.hbar * np.sqrt(omegas[m] * omegas[mp])
            jw = np.concatenate([vecs[mp][3:], -vecs[mp][:3]])
            for a in range(3):
                cur = 1j * consts.c * (
                    np.vdot(vecs[m][:3], SPIN[a] @ jw[:3])
                    + np.vdot(vecs[m][3:], SPIN[a] @ jw[3:])) / two_v
                j[..., a] += weight * cur
    return rho.real, u.real, j.real


def coarse_flux_through_surface(state: FockState, region: RegionSpec,
                                grid: Grid3D,
                                consts: PhysicalConstants = NATURAL,
                                time_samples: int = 512) -> float:
    """Expected photon count crossing an axis-aligned plane in a time window.

    Integrates n.<j(r, t)> over the full cross-section and the window; the
    cross-section integral is closed-form (on-grid modes are orthogonal over
    it), the time integral is a composite trapezoid over the per-mode-pair
    beat phases.
    """
    if region.kind != "surface":
        raise ValueError("coarse_flux_through_surface needs a surface region")
    _require_normalized(state)
    _check_modes_on_grid(state.modeset, grid)
    axis = region.normal_axis
    box_lo = grid.origin[axis]
    box_hi = box_lo + float(grid.lengths[axis])
    if not (box_lo - 1e-12 <= region.position <= box_hi + 1e-12):
        raise ValueError("surface position lies outside the grid box")

    g = transition_matrix(state)
    vecs = state.modeset.polarization_vectors()
    modes = state.modeset.modes
    omegas = state.modeset.omegas(consts)
    two_v = 2.0 * grid.volume
    transverse = [a for a in range(3) if a != axis]

    times = np.linspace(region.t_start, region.t_stop, time_samples + 1)
    integrand = np.zeros_like(times, dtype=complex)
    for m in range(len(modes)):
        for mp in range(len(modes)):
            if g[m, mp] == 0.0:
                continue
            jw = np.concatenate([vecs[mp][3:], -vecs[mp][:3]])
            pol = 1j * consts.c * (
                np.vdot(vecs[m][:3], SPIN[axis] @ jw[:3])
                + np.vdot(vecs[m][3:], SPIN[axis] @ jw[3:])) / two_v
            if pol == 0.0:
                continue
            area = 1.0 + 0.0j
            for a in transverse:
                dk = modes[mp].k[a] - modes[m].k[a]
                area *= _segment_integral(dk, grid.origin[a],
                                          grid.origin[a] + float(grid.lengths[a]))
            dk_n = modes[mp].k[axis] - modes[m].k[axis]
            phase = np.exp(1j * dk_n * region.position)
            beat = np.exp(1j * (omegas[m] - omegas[mp]) * times)
            integrand += g[m, mp] * pol * phase * area * beat
    flux = np.trapezoid(integrand, times)
    return float(region.normal_sign * flux.real)
