"""Bohm-type trajectories integrated through analytic or gridded velocity
fields with a fixed-step classical RK4 scheme.

Velocity callbacks may return NaN where the field is undefined (density
nulls of a two-slit system); the integrator then reuses the trajectory's
last finite velocity for that stage.  Leaving an explicit spatial domain
freezes a path and flags it rather than aborting the run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import ParameterError, PhysicalParams, ScalarField, SlitSource
from .analytic import total_velocity
from .interference import DoubleSlitSystem, field_velocity

__all__ = [
    "Seed",
    "TrajectorySet",
    "seed_positions",
    "analytic_velocity",
    "emergent_velocity",
    "gridded_velocity",
    "integrate",
    "single_slit_trajectories",
    "double_slit_trajectories",
]

VelocityField = Callable[[np.ndarray, float], np.ndarray]


@dataclass(frozen=True)
class Seed:
    """Starting offset xi0 relative to the center of one slit."""

    slit: int
    offset: float


@dataclass(frozen=True)
class TrajectorySet:
    seeds: tuple[Seed, ...]
    times: np.ndarray
    positions: np.ndarray  # (len(times), len(seeds))
    exited: np.ndarray     # bool per seed: frozen after leaving the domain

    def __post_init__(self) -> None:
        for name in ("times", "positions", "exited"):
            arr = np.array(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.positions.shape != (self.times.size, len(self.seeds)):
            raise ParameterError("positions shape does not match times and seeds")
        if not np.all(np.isfinite(self.positions)):
            raise ParameterError("trajectory positions must stay finite")


def seed_positions(source: SlitSource, count: int, span: float) -> np.ndarray:
    """Uniform seed offsets over [-span sigma0, +span sigma0]; a single
    seed sits on the center."""
    if count < 1:
        raise ParameterError(f"count must be >= 1, got {count}")
    if not span > 0:
        raise ParameterError(f"span must be > 0, got {span}")
    if count == 1:
        return np.zeros(1)
    half = span * source.sigma0
    return np.linspace(-half, half, count)


def analytic_velocity(source: SlitSource, params: PhysicalParams) -> VelocityField:
    return lambda x, t: total_velocity(source, params, x, t)


def emergent_velocity(system: DoubleSlitSystem) -> VelocityField:
    return lambda x, t: field_velocity(system, x, t)


def gridded_velocity(field: ScalarField) -> VelocityField:
    """Bilinear interpolation of a sampled velocity field in (x, t).

    Queries outside the time range clamp to the first or last row; queries
    outside the spatial range return NaN.
    """
    grid = field.grid
    xs = grid.x()
    values = field.values

    def sample(x, t):
        x = np.asarray(x, dtype=float)
        pos = np.clip(t / grid.dt, 0.0, grid.nt)
        j = min(int(pos), grid.nt - 1)
        frac = pos - j
        row = (1.0 - frac) * values[j] + frac * values[j + 1]
        out = np.interp(x, xs, row)
        return np.where((x < grid.x_min) | (x > grid.x_max), np.nan, out)

    return sample


def _stage(velocity: VelocityField, x: np.ndarray, t: float, fallback: np.ndarray) -> np.ndarray:
    v = np.asarray(velocity(x, t), dtype=float)
    return np.where(np.isfinite(v), v, fallback)


def integrate(velocity: VelocityField, starts, t_max: float, dt: float,
              domain: tuple[float, float] | None = None):
    """RK4-integrate dx/dt = v(x, t) for a batch of starting points.

    Returns (times, positions, exited).  dt is a target step; the actual
    step is t_max / ceil(t_max / dt) so the horizon is hit exactly.
    """
    if not t_max > 0:
        raise ParameterError(f"t_max must be > 0, got {t_max}")
    if not dt > 0:
        raise ParameterError(f"dt must be > 0, got {dt}")
    x = np.array(starts, dtype=float).ravel()
    steps = max(1, math.ceil(t_max / dt - 1e-12))
    h = t_max / steps
    times = np.arange(steps + 1) * h
    positions = np.empty((steps + 1, x.size))
    positions[0] = x
    held = np.zeros(x.size)
    alive = np.ones(x.size, dtype=bool)
    for k in range(steps):
        t = times[k]
        raw = np.asarray(velocity(x, t), dtype=float)
        k1 = np.where(np.isfinite(raw), raw, held)
        held = k1
        k2 = _stage(velocity, x + 0.5 * h * k1, t + 0.5 * h, held)
        k3 = _stage(velocity, x + 0.5 * h * k2, t + 0.5 * h, held)
        k4 = _stage(velocity, x + h * k3, t + h, held)
        proposed = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if domain is not None:
            lo, hi = domain
            alive &= (proposed >= lo) & (proposed <= hi)
        x = np.where(alive, proposed, x)
        positions[k + 1] = x
    return times, positions, ~alive


def single_slit_trajectories(source: SlitSource, params: PhysicalParams,
                             count: int, span: float, t_max: float, dt: float,
                             domain: tuple[float, float] | None = None) -> TrajectorySet:
    offsets = seed_positions(source, count, span)
    times, positions, exited = integrate(
        analytic_velocity(source, params), source.center + offsets, t_max, dt, domain
    )
    seeds = tuple(Seed(1, float(o)) for o in offsets)
    return TrajectorySet(seeds=seeds, times=times, positions=positions, exited=exited)


def double_slit_trajectories(system: DoubleSlitSystem, count: int, span: float,
                             t_max: float, dt: float,
                             domain: tuple[float, float] | None = None) -> TrajectorySet:
    """Seed both slits symmetrically and integrate through the emergent
    two-slit velocity field."""
    off1 = seed_positions(system.slit1, count, span)
    off2 = seed_positions(system.slit2, count, span)
    starts = np.concatenate([system.slit1.center + off1, system.slit2.center + off2])
    times, positions, exited = integrate(emergent_velocity(system), starts, t_max, dt, domain)
    seeds = tuple(Seed(1, float(o)) for o in off1) + tuple(Seed(2, float(o)) for o in off2)
    return TrajectorySet(seeds=seeds, times=times, positions=positions, exited=exited)
