import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from internality.decision import SystemSpec, check_general_system, check_log_system, check_single_equation
from internality.errors import DomainError, PreconditionError
from internality.numeric import (
    Drift,
    Trajectory,
    cross_ratio,
    cross_ratio_drift,
    float_evaluator,
    rk4_integrate,
    rk4_order_ratio,
    rk4_system,
    witness_drift,
)
from internality.parsing import parse_ratfunc as P


class TestRk4:
    def test_zero_field_is_constant(self):
        traj = rk4_integrate(P("0"), 1.0, 1.0, 0.01)
        assert all(v == 1.0 for v in traj.values)

    def test_unit_field_is_translation(self):
        traj = rk4_integrate(P("1"), 0.0, 1.0, 0.01)
        assert max(abs(v - t) for t, v in zip(traj.times, traj.values)) <= 1e-14

    def test_x_squared_closed_form(self):
        traj = rk4_integrate(P("x^2"), 1.0, 0.5, 1e-4)
        assert traj.t_reached == pytest.approx(0.5)
        assert abs(traj.final - 2.0) <= 1e-8

    def test_partial_last_step(self):
        traj = rk4_integrate(P("1"), 0.0, 0.105, 0.01)
        assert traj.t_reached == pytest.approx(0.105)
        assert traj.final == pytest.approx(0.105, abs=1e-14)

    def test_order_ratio(self):
        assert 12 <= rk4_order_ratio() <= 20

    def test_blow_up_is_flagged(self):
        traj = rk4_integrate(P("x^2"), 1.0, 2.0, 1e-3)
        assert traj.blew_up
        assert traj.t_reached < 1.1  # true pole at t = 1; RK4 lags slightly
        assert all(math.isfinite(v) and abs(v) <= 1e9 for v in traj.values)

    def test_pole_at_start(self):
        with pytest.raises(DomainError):
            rk4_integrate(P("1/x"), 0.0, 1.0, 0.1)

    def test_bad_step(self):
        with pytest.raises(PreconditionError):
            rk4_integrate(P("x"), 1.0, 1.0, 0.0)

    @given(st.floats(-2, 2), st.floats(0.01, 1.0))
    @settings(max_examples=30)
    def test_linear_flow_matches_exponential(self, x0, t_end):
        traj = rk4_integrate(P("x"), x0, t_end, 1e-3)
        assert traj.final == pytest.approx(x0 * math.exp(t_end), rel=1e-10, abs=1e-12)

    @given(st.floats(0.001, 1.0), st.integers(1, 50))
    @settings(max_examples=30)
    def test_trajectory_invariants(self, step, n):
        traj = rk4_system(lambda y: -y, [1.0, 2.0], n * step * 1.3, step, sample_every=3)
        assert len(traj.times) == len(traj.values)
        assert all(b > a for a, b in zip(traj.times, traj.times[1:]))


def test_trajectory_rejects_bad_times():
    with pytest.raises(ValueError):
        Trajectory([0.0, 0.0], [1.0, 1.0], 0.1)
    with pytest.raises(ValueError):
        Trajectory([0.0], [1.0, 2.0], 0.1)


def test_float_evaluator_matches_exact():
    h = P("(x^2 + 1)/(x - 2)")
    ev = float_evaluator(h)
    xs = np.array([0.0, 1.0, 3.0])
    assert np.allclose(ev(xs), (xs**2 + 1) / (xs - 2))


class TestCrossRatio:
    def test_quadratic(self):
        d = cross_ratio_drift(P("x^2"), (1, 2, 3, 4), 0.2, 1e-4)
        assert d <= 1e-8 and not d.blew_up

    def test_translation(self):
        assert cross_ratio_drift(P("1"), (1, 2, 3, 4), 0.2, 1e-4) <= 1e-12

    def test_cubic_control(self):
        d = cross_ratio_drift(P("x^3"), (1, 2, 3, 4), 0.2, 1e-4)
        assert d > 1e-3

    def test_cubic_control_before_blow_up(self):
        d = cross_ratio_drift(P("x^3"), (0.1, 0.2, 0.3, 0.4), 0.2, 1e-4)
        assert not d.blew_up and d > 1e-3

    def test_closed_form_cross_ratio_is_constant(self):
        xs = [1 / (1 / x0 - 0.1) for x0 in (1, 2, 3, 4)]
        assert cross_ratio(*xs) == pytest.approx(cross_ratio(1, 2, 3, 4), rel=1e-13)

    def test_requires_distinct_inits(self):
        with pytest.raises(PreconditionError):
            cross_ratio_drift(P("x^2"), (1, 1, 2, 3), 0.1, 1e-3)

    @given(
        st.fractions(-2, 2, max_denominator=4),
        st.fractions(-2, 2, max_denominator=4),
        st.fractions(-2, 2, max_denominator=4),
    )
    @settings(max_examples=20, deadline=None)
    def test_quadratics_stay_below_threshold(self, a2, a1, a0):
        f = P(f"({a2})*x^2 + ({a1})*x + ({a0})")
        d = cross_ratio_drift(f, (0.1, 0.2, 0.3, 0.4), 0.1, 1e-3)
        if not d.blew_up:
            assert d <= 1e-6


class TestWitnessDrift:
    def test_riccati(self):
        f = P("x^2 - 1")
        d = witness_drift(SystemSpec(f), check_single_equation(f))
        assert d <= 1e-8

    def test_log_system(self):
        f = P("1/2*x^2 + x")
        d = witness_drift(SystemSpec.log_system(f), check_log_system(f))
        assert d <= 1e-8

    @pytest.mark.parametrize("f,g", [("x^2", "x"), ("x^2 - x", "x"), ("x^2", "x + 1")])
    def test_general(self, f, g):
        spec = SystemSpec(P(f), P(g))
        d = witness_drift(spec, check_general_system(spec.f, spec.g), x0=0.5)
        assert d <= 1e-8 and not d.skipped

    def test_algebraic_condition_i_is_skipped(self):
        spec = SystemSpec(P("x^2 + 1"), P("x"))
        v = check_general_system(spec.f, spec.g)
        d = witness_drift(spec, v)
        assert d <= 1e-8
        d1 = witness_drift(SystemSpec(spec.f), v.certificate.condition_i)
        assert d1.skipped

    def test_non_yes(self):
        with pytest.raises(PreconditionError):
            witness_drift(SystemSpec(P("x^3")), check_single_equation(P("x^3")))


def test_drift_is_a_float():
    d = Drift(0.5, blew_up=True, t_reached=0.1)
    assert d == 0.5 and d.blew_up and "blew_up" in repr(d)
