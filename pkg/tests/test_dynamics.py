import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powertower.analysis import ConvergenceClass, classify
from powertower.core import E, E_TO_INV_E, E_TO_MINUS_E, INV_E, tower_step
from powertower.dynamics import (
    IterationConfig,
    Outcome,
    StabilityClass,
    aitken_limit,
    cobweb_trace,
    double_step_derivative,
    in_double_region,
    iterate_double_step,
    iterate_tower,
    stability_of,
)
from powertower.errors import DomainError, PreconditionError
from powertower.lambertw import tower_fixed_point

SQRT2 = math.sqrt(2.0)


def test_config_validation():
    with pytest.raises(DomainError):
        IterationConfig(tolerance=0.0)
    with pytest.raises(DomainError):
        IterationConfig(max_iterations=0)
    with pytest.raises(DomainError):
        IterationConfig(divergence_threshold=2.0)
    assert IterationConfig().effective_cycle_gap == 1e-6
    assert IterationConfig(tolerance=1e-2).effective_cycle_gap == pytest.approx(0.1)
    assert IterationConfig(cycle_gap=0.5).effective_cycle_gap == 0.5


def test_sqrt2_converges(backend):
    trace = iterate_tower(SQRT2)
    assert trace.outcome.kind is Outcome.CONVERGED
    assert trace.outcome.limit == pytest.approx(2.0, abs=1e-12)
    assert trace.steps <= 200
    assert trace.values[0] == SQRT2


def test_sixteenth_is_two_cycle(backend):
    out = iterate_tower(0.0625).outcome
    assert out.kind is Outcome.TWO_CYCLE
    assert out.y_low == pytest.approx(0.25, abs=1e-9)
    assert out.y_high == pytest.approx(0.5, abs=1e-9)


def test_unit_base_converges_immediately(backend):
    trace = iterate_tower(1.0)
    assert trace.outcome.kind is Outcome.CONVERGED
    assert trace.outcome.limit == 1.0
    assert trace.steps == 1


def test_divergence(backend):
    trace = iterate_tower(1.5)
    assert trace.outcome.kind is Outcome.DIVERGED
    assert trace.values[-1] > 1e15
    assert iterate_tower(10.0).outcome.kind is Outcome.DIVERGED


def test_undecided_when_budget_runs_out(backend):
    trace = iterate_tower(E_TO_INV_E - 1e-9, IterationConfig(max_iterations=50))
    assert trace.outcome.kind is Outcome.UNDECIDED
    assert trace.steps == 50


def test_outcome_accessors():
    out = iterate_tower(1.5).outcome
    with pytest.raises(AttributeError):
        out.limit
    with pytest.raises(AttributeError):
        iterate_tower(SQRT2).outcome.y_low


def test_domain():
    with pytest.raises(DomainError):
        iterate_tower(0.0)
    with pytest.raises(DomainError):
        iterate_double_step(0.5, -1.0)


@pytest.mark.parametrize("x", [0.01, 0.0625, 0.3, 0.9, 1.0, 1.2, 1.44, 1.5, 3.0])
def test_orbit_recurrence_is_exact(backend, x):
    trace = iterate_tower(x)
    v = trace.values
    for k in range(len(v) - 1):
        assert v[k + 1] == tower_step(x, v[k])


def test_aitken_limit():
    # geometric sequence 2 - 0.5**n has limit 2 exactly
    assert aitken_limit(2 - 0.5**3, 2 - 0.5**4, 2 - 0.5**5) == 2.0
    assert aitken_limit(1.0, 1.0, 1.0) == 1.0
    assert aitken_limit(1.0, 2.0, 4.0) == 4.0


def _expected(x):
    c = classify(x)
    if c is ConvergenceClass.DivergesToInfinity:
        return Outcome.DIVERGED
    if c is ConvergenceClass.TwoCycleRegime:
        return Outcome.TWO_CYCLE
    return Outcome.CONVERGED


def test_outcome_agrees_with_classification(backend):
    # the sample closest to e**-e is 2.9e-4 away, where the multiplier is about
    # -0.9992; it needs ~3e4 steps, beyond the default budget
    config = IterationConfig(max_iterations=100_000)
    for x in np.geomspace(0.01, 1.6, 400):
        assert iterate_tower(float(x), config).outcome.kind is _expected(x), x


def test_default_budget_agrees_away_from_boundaries(backend):
    for x in np.geomspace(0.01, 1.6, 400):
        if abs(x - E_TO_MINUS_E) < 1e-3 or abs(x - E_TO_INV_E) < 1e-3:
            continue
        assert iterate_tower(float(x)).outcome.kind is _expected(x), x


def test_converged_limit_matches_closed_form(backend):
    for x in np.linspace(E_TO_MINUS_E + 0.01, E_TO_INV_E - 0.01, 60):
        out = iterate_tower(float(x)).outcome
        assert out.kind is Outcome.CONVERGED
        assert out.limit == pytest.approx(tower_fixed_point(x), abs=1e-11)


def test_double_step_branches(backend):
    x = 0.0625
    assert iterate_double_step(x, x).outcome.limit == pytest.approx(0.25, abs=1e-10)
    # oracle: plain double-step loop
    y = x**x
    for _ in range(5000):
        y = x ** (x**y)
    out = iterate_double_step(x, x**x).outcome
    assert out.kind is Outcome.CONVERGED
    assert out.limit == pytest.approx(y, abs=1e-10)
    assert out.limit == pytest.approx(0.5, abs=1e-10)
    assert iterate_double_step(SQRT2, SQRT2).outcome.limit == pytest.approx(2.0, abs=1e-12)


def test_double_step_trace_recurrence(backend):
    trace = iterate_double_step(0.03, 0.5)
    v = trace.values
    for k in range(len(v) - 1):
        assert v[k + 1] == tower_step(0.03, tower_step(0.03, v[k]))


@settings(max_examples=50, deadline=None)
@given(x=st.floats(min_value=0.005, max_value=1.4), y0=st.floats(min_value=0.01, max_value=2.0))
def test_double_step_limits_are_fixed_points(x, y0):
    config = IterationConfig()
    out = iterate_double_step(x, y0, config).outcome
    if out.kind is Outcome.CONVERGED:
        y = out.limit
        assert abs(tower_step(x, tower_step(x, y)) - y) < 10 * config.tolerance


def test_stability():
    assert stability_of(SQRT2, 2.0) is StabilityClass.ATTRACTIVE
    assert stability_of(SQRT2, 4.0) is StabilityClass.REPULSIVE
    assert stability_of(E_TO_INV_E, E) is StabilityClass.NEUTRAL
    assert stability_of(0.5, tower_fixed_point(0.5)) is StabilityClass.ATTRACTIVE
    assert stability_of(0.01, tower_fixed_point(0.01)) is StabilityClass.REPULSIVE
    with pytest.raises(PreconditionError):
        stability_of(SQRT2, 3.0)


def test_double_step_derivative_values(backend):
    assert double_step_derivative(E_TO_MINUS_E, INV_E) == pytest.approx(1.0, abs=1e-12)
    assert double_step_derivative(1.0, 0.7) == 0.0
    x, y, h = 0.05, 0.3, 1e-6
    fd = (x ** (x ** (y + h)) - x ** (x ** (y - h))) / (2 * h)
    assert double_step_derivative(x, y) == pytest.approx(fd, rel=1e-6)
    with pytest.raises(DomainError):
        double_step_derivative(0.0, 1.0)


def test_double_step_derivative_grid(backend):
    h = 1e-6
    for x in np.linspace(0.02, 1.4, 20):
        for y in np.linspace(0.05, 2.5, 20):
            fd = (tower_step(x, tower_step(x, y + h)) - tower_step(x, tower_step(x, y - h))) / (2 * h)
            assert double_step_derivative(x, y) == pytest.approx(fd, rel=1e-6, abs=1e-9)


def test_in_double_region(backend):
    assert in_double_region(0.5, 0.5)
    assert double_step_derivative(0.5, 0.5) == pytest.approx(0.21, abs=0.01)
    assert not in_double_region(E_TO_MINUS_E, INV_E)
    assert not in_double_region(1.6, 2.0)


def test_cobweb_fixed_point():
    pts = cobweb_trace(1.0, 1.0, 3)
    assert pts == [(1.0, 0.0)] + [(1.0, 1.0)] * 6


def test_cobweb_converges():
    pts = cobweb_trace(SQRT2, SQRT2, 50)
    assert len(pts) == 101
    assert pts[-1][0] == pytest.approx(2.0, abs=1e-6)
    assert pts[-1][1] == pytest.approx(2.0, abs=1e-6)


def test_cobweb_divergence_truncates():
    pts = cobweb_trace(1.5, 1.5, 20)
    assert len(pts) < 41
    assert pts[-1][1] > 1e10
    assert iterate_tower(1.5).outcome.kind is Outcome.DIVERGED


@given(x=st.floats(min_value=0.01, max_value=2.0), y0=st.floats(min_value=0.01, max_value=3.0),
       steps=st.integers(min_value=1, max_value=30))
def test_cobweb_alternation(x, y0, steps):
    pts = cobweb_trace(x, y0, steps)
    assert pts[0] == (y0, 0.0)
    for k in range(1, len(pts)):
        prev, cur = pts[k - 1], pts[k]
        if k % 2 == 1:
            assert cur[0] == prev[0]
            assert cur[1] == tower_step(x, cur[0])
        else:
            assert cur[1] == prev[1]
            assert cur[0] == cur[1]


def test_cobweb_domain():
    with pytest.raises(DomainError):
        cobweb_trace(0.5, 0.5, 0)
    with pytest.raises(DomainError):
        cobweb_trace(-0.5, 0.5, 3)
