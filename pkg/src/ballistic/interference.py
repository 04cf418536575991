"""Two-slit superposition built from two dispersing Gaussian packets.

The total intensity follows the familiar interference law
P = P1 + P2 + 2 sqrt(P1 P2) cos(phi12); the relative phase phi12 collects
the drift, spreading and shifter contributions of both slits.  A cross
term sqrt(P1 P2)(u1 - u2) sin(phi12) feeds the current even where the
packet velocities cancel, and is exposed separately as the entangling
current.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Grid, ParameterError, PhysicalParams, ScalarField, SlitSource
from .analytic import gaussian_density, osmotic_velocity, sigma_at, total_velocity

__all__ = [
    "PhaseShifterSchedule",
    "DoubleSlitSystem",
    "InterferenceGrid",
    "phase_difference",
    "total_density",
    "total_current",
    "entangling_current",
    "field_velocity",
    "intensity_grid",
]

# Densities at or below this floor yield an undefined field velocity (NaN).
VELOCITY_FLOOR = 1e-300


@dataclass(frozen=True)
class PhaseShifterSchedule:
    """Time profile of an external phase shift applied to slit 1.

    Zero until t_start, then a linear ramp reaching total_shift at t_end,
    constant afterwards.  A degenerate schedule (t_start == t_end) acts as a
    step that switches on just after t_start, matching the ramp limit.
    """

    total_shift: float
    t_start: float
    t_end: float

    def __post_init__(self) -> None:
        if self.t_start < 0:
            raise ParameterError(f"t_start must be >= 0, got {self.t_start}")
        if self.t_end < self.t_start:
            raise ParameterError(
                f"t_end must be >= t_start, got t_start={self.t_start}, t_end={self.t_end}"
            )

    def value_at(self, t):
        t = np.asarray(t, dtype=float)
        if self.t_end > self.t_start:
            frac = np.clip((t - self.t_start) / (self.t_end - self.t_start), 0.0, 1.0)
        else:
            frac = (t > self.t_start).astype(float)
        out = self.total_shift * frac
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class DoubleSlitSystem:
    """Two Gaussian sources sharing one parameter set.

    blocked_slit zeroes that slit's density in every field expression,
    reducing the system to single-slit behavior.  include_energy_term adds
    the drift kinetic-energy difference to the relative phase; it is off by
    default so that equal-energy configurations stay unaffected.
    """

    slit1: SlitSource
    slit2: SlitSource
    params: PhysicalParams
    shifter: PhaseShifterSchedule | None = None
    include_energy_term: bool = False
    blocked_slit: int | None = None

    def __post_init__(self) -> None:
        if self.slit1.center == self.slit2.center:
            raise ParameterError("slit centers must be distinct")
        if self.blocked_slit not in (None, 1, 2):
            raise ParameterError(f"blocked_slit must be None, 1 or 2, got {self.blocked_slit}")

    def shift_at(self, t):
        if self.shifter is None:
            return np.multiply(t, 0.0)
        return self.shifter.value_at(t)


def phase_difference(system: DoubleSlitSystem, x, t):
    """Relative phase phi2 - phi1 with the shifter value subtracted."""
    p = system.params
    s1, s2 = system.slit1, system.slit2
    u01, u02 = s1.u0(p), s2.u0(p)
    sig1sq = sigma_at(s1, p, t) ** 2
    sig2sq = sigma_at(s2, p, t) ** 2
    xi1 = x - s1.center - s1.drift * t
    xi2 = x - s2.center - s2.drift * t
    drift_part = (p.mass / p.hbar) * (s2.drift * (x - s2.center) - s1.drift * (x - s1.center))
    spread_part = (p.mass * t / (2.0 * p.hbar)) * (
        u02**2 * xi2**2 / sig2sq - u01**2 * xi1**2 / sig1sq
    )
    out = drift_part + spread_part - system.shift_at(t)
    if system.include_energy_term:
        out = out - 0.5 * p.mass * (s2.drift**2 - s1.drift**2) * t / p.hbar
    return out


def _slit_density(system: DoubleSlitSystem, index: int, x, t):
    if system.blocked_slit == index:
        return np.zeros(np.broadcast_shapes(np.shape(x), np.shape(t)))
    slit = system.slit1 if index == 1 else system.slit2
    return gaussian_density(slit, system.params, x, t)


def total_density(system: DoubleSlitSystem, x, t):
    """Interference intensity P1 + P2 + 2 sqrt(P1 P2) cos(phi12).

    Evaluated as (sqrt(P1) - sqrt(P2))^2 + 2 sqrt(P1 P2) (1 + cos phi12),
    which is identical algebraically but cannot round below zero.
    """
    p1 = _slit_density(system, 1, x, t)
    p2 = _slit_density(system, 2, x, t)
    root1, root2 = np.sqrt(p1), np.sqrt(p2)
    cos_phi = np.cos(phase_difference(system, x, t))
    return (root1 - root2) ** 2 + 2.0 * root1 * root2 * (1.0 + cos_phi)


def _slit_velocities(system: DoubleSlitSystem, x, t):
    p = system.params
    v1 = total_velocity(system.slit1, p, x, t)
    v2 = total_velocity(system.slit2, p, x, t)
    u1 = osmotic_velocity(system.slit1, p, x, t)
    u2 = osmotic_velocity(system.slit2, p, x, t)
    return v1, v2, u1, u2


def total_current(system: DoubleSlitSystem, x, t):
    """Probability current of the superposed field."""
    p1 = _slit_density(system, 1, x, t)
    p2 = _slit_density(system, 2, x, t)
    v1, v2, u1, u2 = _slit_velocities(system, x, t)
    phi = phase_difference(system, x, t)
    cross = np.sqrt(p1 * p2)
    return p1 * v1 + p2 * v2 + cross * (v1 + v2) * np.cos(phi) + cross * (u1 - u2) * np.sin(phi)


def entangling_current(system: DoubleSlitSystem, x, t):
    """Cross-slit current sqrt(P1 P2)(u1 - u2) sin(phi12); the only term of
    the total current that survives where both packet contributions cancel."""
    p1 = _slit_density(system, 1, x, t)
    p2 = _slit_density(system, 2, x, t)
    _, _, u1, u2 = _slit_velocities(system, x, t)
    phi = phase_difference(system, x, t)
    return np.sqrt(p1 * p2) * (u1 - u2) * np.sin(phi)


def field_velocity(system: DoubleSlitSystem, x, t, *, floor: float = VELOCITY_FLOOR):
    """Emergent velocity J / P, NaN where the density is at or below floor.

    Callers that integrate trajectories must treat NaN as an undefined
    velocity sample, not as an error.
    """
    dens = total_density(system, x, t)
    cur = total_current(system, x, t)
    safe = np.where(dens > floor, dens, 1.0)
    return np.where(dens > floor, cur / safe, np.nan)


@dataclass(frozen=True)
class InterferenceGrid:
    """Density plus its companion diagnostics sampled on one grid."""

    density: ScalarField
    phase_difference: ScalarField
    entangling_current: ScalarField


def intensity_grid(system: DoubleSlitSystem, grid: Grid) -> InterferenceGrid:
    """Evaluate density, relative phase and entangling current on a grid."""
    x = grid.x()[None, :]
    t = grid.times()[:, None]
    return InterferenceGrid(
        density=ScalarField(grid, total_density(system, x, t)),
        phase_difference=ScalarField(grid, phase_difference(system, x, t)),
        entangling_current=ScalarField(grid, entangling_current(system, x, t)),
    )
