import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import brentq

from ballistic import (
    DoubleSlitSystem,
    Grid,
    ParameterError,
    PhaseShifterSchedule,
    PhysicalParams,
    SlitSource,
    entangling_current,
    field_velocity,
    gaussian_density,
    intensity_grid,
    phase_difference,
    total_current,
    total_density,
    total_velocity,
)

# frozen reference: mirrored slits at -/+2, sigma01=1, sigma02=0.5, v=0,
# x=0, t=2 gives 1 * (1*4/4.25 - 0.25*4/2) = 15/34, evaluated independently
PHI_MIXED_WIDTHS = 0.4411764705882353


def mirrored(params, shifter=None, **kw):
    return DoubleSlitSystem(
        slit1=SlitSource(center=-4.0),
        slit2=SlitSource(center=4.0),
        params=params,
        shifter=shifter,
        **kw,
    )


# --- shifter schedule ------------------------------------------------------

def test_shifter_ramp():
    sched = PhaseShifterSchedule(total_shift=3.0, t_start=2.0, t_end=4.0)
    assert sched.value_at(0.0) == 0.0
    assert sched.value_at(2.0) == 0.0
    assert sched.value_at(3.0) == pytest.approx(1.5)
    assert sched.value_at(4.0) == 3.0
    assert sched.value_at(10.0) == 3.0
    arr = sched.value_at(np.array([0.0, 3.0, 9.0]))
    assert arr.tolist() == [0.0, 1.5, 3.0]


def test_shifter_degenerate_step():
    sched = PhaseShifterSchedule(total_shift=2.0, t_start=1.0, t_end=1.0)
    assert sched.value_at(1.0) == 0.0           # switches just after t_start
    assert sched.value_at(1.0 + 1e-12) == 2.0
    assert sched.value_at(0.5) == 0.0


def test_shifter_validation():
    with pytest.raises(ParameterError):
        PhaseShifterSchedule(total_shift=1.0, t_start=-0.1, t_end=1.0)
    with pytest.raises(ParameterError):
        PhaseShifterSchedule(total_shift=1.0, t_start=2.0, t_end=1.0)


# --- system construction ---------------------------------------------------

def test_system_rejects_coincident_centers(params):
    with pytest.raises(ParameterError):
        DoubleSlitSystem(slit1=SlitSource(center=1.0), slit2=SlitSource(center=1.0), params=params)


def test_system_rejects_bad_blocked_index(params):
    with pytest.raises(ParameterError):
        mirrored(params, blocked_slit=3)


# --- phase difference ------------------------------------------------------

def test_phase_difference_symmetry_point(params):
    sys = mirrored(params)
    for t in (0.0, 1.0, 6.0):
        assert phase_difference(sys, 0.0, t) == 0.0


def test_phase_difference_with_completed_shift(params):
    sched = PhaseShifterSchedule(total_shift=math.pi, t_start=0.5, t_end=1.0)
    sys = mirrored(params, shifter=sched)
    assert phase_difference(sys, 0.0, 2.0) == -math.pi


def test_phase_difference_mixed_widths(params):
    sys = DoubleSlitSystem(
        slit1=SlitSource(center=-2.0, sigma0=1.0),
        slit2=SlitSource(center=2.0, sigma0=0.5),
        params=params,
    )
    assert phase_difference(sys, 0.0, 2.0) == pytest.approx(PHI_MIXED_WIDTHS, rel=1e-15)


def test_phase_difference_energy_flag(params):
    v1, v2, t = 0.3, 0.9, 2.0
    plain = DoubleSlitSystem(
        slit1=SlitSource(center=-4.0, drift=v1),
        slit2=SlitSource(center=4.0, drift=v2),
        params=params,
    )
    flagged = DoubleSlitSystem(
        slit1=SlitSource(center=-4.0, drift=v1),
        slit2=SlitSource(center=4.0, drift=v2),
        params=params,
        include_energy_term=True,
    )
    delta_e = 0.5 * params.mass * (v2 ** 2 - v1 ** 2)
    got = phase_difference(plain, 1.0, t) - phase_difference(flagged, 1.0, t)
    assert got == pytest.approx(delta_e * t / params.hbar, rel=1e-12)


# --- densities and currents ------------------------------------------------

def test_total_density_blocked_slit(params):
    sys = mirrored(params, blocked_slit=2)
    xs = np.linspace(-8.0, 8.0, 41)
    expected = gaussian_density(SlitSource(center=-4.0), params, xs, 1.5)
    assert total_density(sys, xs, 1.5) == pytest.approx(expected, rel=1e-12)


def test_total_density_constructive_midpoint(params):
    sys = mirrored(params)
    p1 = gaussian_density(SlitSource(center=-4.0), params, 0.0, 6.0)
    assert total_density(sys, 0.0, 6.0) == pytest.approx(4.0 * p1, rel=1e-14)


def test_total_density_destructive_null(params):
    sched = PhaseShifterSchedule(total_shift=math.pi, t_start=0.0, t_end=1.0)
    sys = mirrored(params, shifter=sched)
    # phi12(0, t>1) = -pi and P1 == P2 there, so the null is exact
    assert total_density(sys, 0.0, 6.0) == pytest.approx(0.0, abs=1e-18)


@given(x=st.floats(min_value=-12.0, max_value=12.0),
       t=st.floats(min_value=0.0, max_value=20.0),
       shift=st.floats(min_value=-10.0, max_value=10.0))
def test_total_density_bounds(x, t, shift):
    p = PhysicalParams()
    sched = PhaseShifterSchedule(total_shift=shift, t_start=1.0, t_end=2.0)
    sys = DoubleSlitSystem(slit1=SlitSource(center=-4.0, sigma0=1.3),
                           slit2=SlitSource(center=4.0, sigma0=0.6),
                           params=p, shifter=sched)
    p1 = gaussian_density(sys.slit1, p, x, t)
    p2 = gaussian_density(sys.slit2, p, x, t)
    p_tot = total_density(sys, x, t)
    envelope = (math.sqrt(p1) + math.sqrt(p2)) ** 2
    assert p_tot >= 0.0
    assert p_tot <= envelope * (1 + 1e-12) + 1e-300


def test_total_current_blocked_slit(params):
    sys = mirrored(params, blocked_slit=2)
    xs = np.linspace(-8.0, 8.0, 41)
    s1 = SlitSource(center=-4.0)
    expected = (gaussian_density(s1, params, xs, 2.0)
                * total_velocity(s1, params, xs, 2.0))
    assert total_current(sys, xs, 2.0) == pytest.approx(expected, rel=1e-12)


def test_total_current_vanishes_at_midpoint(params):
    sys = mirrored(params)
    for t in (0.5, 3.0, 9.0):
        assert total_current(sys, 0.0, t) == pytest.approx(0.0, abs=1e-16)


def test_current_equals_density_times_velocity(params):
    sys = mirrored(params)
    xs = np.linspace(-6.0, 6.0, 25)
    t = 4.0
    v = field_velocity(sys, xs, t)
    p_tot = total_density(sys, xs, t)
    j = total_current(sys, xs, t)
    ok = np.isfinite(v)
    assert ok.all()
    assert j == pytest.approx(p_tot * v, rel=1e-12, abs=1e-300)


def test_mirror_symmetry(params):
    sys = mirrored(params)
    xs = np.linspace(-10.0, 10.0, 801)
    for t in (0.0, 1.0, 3.7, 12.0):
        p_tot = total_density(sys, xs, t)
        j_tot = total_current(sys, xs, t)
        assert np.abs(p_tot - p_tot[::-1]).max() < 1e-14
        assert np.abs(j_tot + j_tot[::-1]).max() < 1e-14


def test_entangling_current_midpoint_exact_zero(params):
    sys = mirrored(params)
    # equal widths make the spreading terms cancel exactly at x=0
    assert entangling_current(sys, 0.0, 5.0) == 0.0


def test_entangling_current_vanishes_at_phase_roots(params):
    sys = mirrored(params)
    t = 6.0
    xs = np.linspace(-10.0, 10.0, 801)
    for n in (-2, -1, 1, 2):
        f = lambda x: phase_difference(sys, x, t) - n * math.pi
        vals = f(xs)
        brackets = np.where(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]
        assert brackets.size > 0
        root = brentq(f, xs[brackets[0]], xs[brackets[0] + 1], xtol=1e-14)
        assert abs(entangling_current(sys, root, t)) < 1e-12


def test_field_velocity_blocked_reduction(params):
    sys = mirrored(params, blocked_slit=2)
    xs = np.linspace(-9.0, 1.0, 201)
    v = field_velocity(sys, xs, 6.0)
    expected = total_velocity(SlitSource(center=-4.0), params, xs, 6.0)
    assert np.isfinite(v).all()
    assert v == pytest.approx(expected, rel=1e-12)


def test_field_velocity_undefined_below_floor(params):
    sys = mirrored(params)
    # at x = 1e4 both Gaussians underflow to zero density
    assert math.isnan(field_velocity(sys, 1e4, 1.0))
    sched = PhaseShifterSchedule(total_shift=math.pi, t_start=0.0, t_end=0.5)
    nulled = mirrored(params, shifter=sched)
    assert math.isnan(field_velocity(nulled, 0.0, 6.0))


# --- grid evaluation -------------------------------------------------------

def test_intensity_grid_shapes_and_t0(params):
    sys = mirrored(params)
    grid = Grid(x_min=-10.0, x_max=10.0, nx=201, t_max=12.0, nt=100)
    bundle = intensity_grid(sys, grid)
    for field in (bundle.density, bundle.phase_difference, bundle.entangling_current):
        assert field.values.shape == (101, 201)
        assert field.grid is grid
    xs = grid.x()
    assert bundle.density.values[0] == pytest.approx(total_density(sys, xs, 0.0), rel=1e-15)


def test_intensity_grid_density_nonnegative(params):
    sched = PhaseShifterSchedule(total_shift=3 * math.pi, t_start=2.0, t_end=4.0)
    sys = mirrored(params, shifter=sched)
    grid = Grid(x_min=-10.0, x_max=10.0, nx=201, t_max=12.0, nt=100)
    assert intensity_grid(sys, grid).density.values.min() >= 0.0


@given(k=st.integers(min_value=-3, max_value=3))
def test_shift_equivalence_mod_two_pi(k):
    # schedules whose totals differ by 2 pi k give the same late pattern
    p = PhysicalParams()
    base = PhaseShifterSchedule(total_shift=1.1, t_start=1.0, t_end=2.0)
    alt = PhaseShifterSchedule(total_shift=1.1 + 2 * math.pi * k, t_start=0.5, t_end=1.5)
    a = mirrored(p, shifter=base)
    b = mirrored(p, shifter=alt)
    xs = np.linspace(-10.0, 10.0, 101)
    for t in (2.0, 5.0):
        assert np.abs(total_density(a, xs, t) - total_density(b, xs, t)).max() < 1e-12
