"""Floating-point shadow of the exact engine.

Fixed-step RK4 trajectories of ``x' = f(x)`` (and of ``y' = g(x) y``) are
used to watch first integrals stay put.  Nothing here feeds back into a
verdict; it is an independent sanity layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .algebra import RatFunc, to_fraction
from .errors import DomainError, PreconditionError

__all__ = [
    "DEFAULT_CEILING",
    "DRIFT_SAMPLE_EVERY",
    "Trajectory",
    "Drift",
    "float_evaluator",
    "rk4_integrate",
    "rk4_system",
    "cross_ratio",
    "cross_ratio_drift",
    "witness_drift",
    "rk4_order_ratio",
]

DEFAULT_CEILING = 1e9
DRIFT_SAMPLE_EVERY = 100


@dataclass
class Trajectory:
    """Sampled states; ``values[i]`` is a float (scalar runs) or a tuple."""

    times: list
    values: list
    step: float
    method: str = "rk4"
    blew_up: bool = False

    def __post_init__(self):
        if len(self.times) != len(self.values):
            raise ValueError("times and values differ in length")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("times must be strictly increasing")

    @property
    def t_reached(self) -> float:
        return self.times[-1]

    @property
    def final(self):
        return self.values[-1]


class Drift(float):
    """A drift value that remembers whether the run was cut short."""

    blew_up: bool
    t_reached: float
    skipped: str | None

    def __new__(cls, value: float, blew_up: bool = False, t_reached: float = 0.0, skipped: str | None = None):
        obj = super().__new__(cls, value)
        obj.blew_up = blew_up
        obj.t_reached = t_reached
        obj.skipped = skipped
        return obj

    def __repr__(self):
        flag = ", blew_up" if self.blew_up else ""
        if self.skipped:
            flag += f", skipped={self.skipped!r}"
        return f"Drift({float(self)!r}, t_reached={self.t_reached!r}{flag})"


def float_evaluator(h: RatFunc) -> Callable:
    """Vectorised float evaluation of a parameter-free rational function."""
    h = h.as_rational()
    num = np.array([float(to_fraction(c)) for c in h.num.coeffs] or [0.0])
    den = np.array([float(to_fraction(c)) for c in h.den.coeffs])
    polyval = np.polynomial.polynomial.polyval

    def ev(x):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            return polyval(x, num) / polyval(x, den)

    return ev


def _step_sizes(t_end: float, step: float) -> list[float]:
    if step <= 0 or t_end < 0:
        raise PreconditionError("need step > 0 and t_end >= 0")
    n = int(math.floor(t_end / step + 1e-9))
    sizes = [step] * n
    rest = t_end - n * step
    if rest > 1e-12 * max(1.0, t_end):
        sizes.append(rest)
    return sizes


def rk4_system(
    rhs: Callable[[np.ndarray], np.ndarray],
    y0: Sequence[float],
    t_end: float,
    step: float,
    ceiling: float = DEFAULT_CEILING,
    sample_every: int = 1,
) -> Trajectory:
    """Classic RK4 for an autonomous system ``y' = rhs(y)``.

    Integration stops before any state (or right-hand side) whose magnitude
    exceeds ``ceiling`` or is not finite; the trajectory is then flagged.
    """
    y = np.asarray(y0, dtype=float)
    if not np.all(np.isfinite(rhs(y))):
        raise DomainError("right-hand side is not finite at the initial state")
    t = 0.0
    times, values = [0.0], [tuple(y)]
    blew_up = False
    sizes = _step_sizes(t_end, step)
    for i, h in enumerate(sizes, 1):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y_new = y + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        ks = np.concatenate([k1, k2, k3, k4, y_new, rhs(y_new)])
        if not np.all(np.isfinite(ks)) or np.max(np.abs(ks)) > ceiling:
            blew_up = True
            break
        y, t = y_new, t + h
        if i % sample_every == 0 or i == len(sizes):
            times.append(t)
            values.append(tuple(y))
    if blew_up and times[-1] != t:
        times.append(t)
        values.append(tuple(y))
    return Trajectory(times, values, step, "rk4", blew_up)


def rk4_integrate(
    f: RatFunc, x0: float, t_end: float, step: float, ceiling: float = DEFAULT_CEILING
) -> Trajectory:
    """Integrate ``x' = f(x)`` from ``x(0) = x0`` to ``t_end``."""
    ev = float_evaluator(f)
    traj = rk4_system(lambda y: ev(y), [x0], t_end, step, ceiling)
    traj.values = [v[0] for v in traj.values]
    return traj


def cross_ratio(x, x1, x2, x3):
    return (x - x2) * (x3 - x1) / ((x - x1) * (x3 - x2))


def cross_ratio_drift(
    f: RatFunc,
    inits: Sequence[float],
    t_end: float,
    step: float,
    ceiling: float = DEFAULT_CEILING,
) -> Drift:
    """``max |c(t) - c(0)| / |c(0)|`` along four simultaneous solutions.

    ``c`` is sampled every ``DRIFT_SAMPLE_EVERY`` steps.  After a blow-up the
    drift covers the valid prefix and the result is flagged.
    """
    if len(inits) != 4 or len(set(inits)) != 4:
        raise PreconditionError("need four pairwise distinct initial values")
    ev = float_evaluator(f)
    traj = rk4_system(ev, inits, t_end, step, ceiling, DRIFT_SAMPLE_EVERY)
    cs = np.array([cross_ratio(*v) for v in traj.values])
    drift = float(np.max(np.abs(cs - cs[0])) / abs(cs[0]))
    return Drift(drift, traj.blew_up, traj.t_reached)


def _log_abs(factors) -> Callable:
    """``log|prod(V**n)|`` as a sum, so large exponents do not overflow."""
    parts = [(float_evaluator(RatFunc.from_poly(V)), n) for V, n in factors]
    return lambda x: sum(n * math.log(abs(ev(x))) for ev, n in parts)


def _relative_spread(values: Sequence[float]) -> float:
    arr = np.asarray(values, dtype=float)
    return float(np.max(np.abs(arr - arr[0])) / max(1.0, abs(arr[0])))


def _integral_drift(invariant, rhs, y0, t_end, step, ceiling) -> Drift:
    traj = rk4_system(rhs, y0, t_end, step, ceiling, DRIFT_SAMPLE_EVERY)
    vals = [invariant(t, np.array(v)) for t, v in zip(traj.times, traj.values)]
    return Drift(_relative_spread(vals), traj.blew_up, traj.t_reached)


def witness_drift(
    spec,
    verdict,
    x0: float = 0.5,
    t_end: float = 0.2,
    step: float = 1e-4,
    y0: float = 1.0,
    ceiling: float = DEFAULT_CEILING,
) -> Drift:
    """Numeric drift of the first integral a Yes certificate asserts.

    * Riccati / log-system: the cross-ratio of solutions started at
      ``x0, x0 + 1/4, x0 + 1/2, x0 + 3/4``.
    * condition (i): ``u(x(t)) - t`` or ``c log|u(x(t))| - t``.
    * condition (ii): ``log|v(x(t))| - m log|y(t)| - b t``.

    Witnesses over a number field are skipped (``Drift.skipped`` says so).
    """
    from .decision import (
        Answer,
        CondIIWitness,
        ConditionIWitness,
        GeneralWitness,
        LogSystemWitness,
        RiccatiWitness,
    )

    if verdict.answer is not Answer.YES:
        raise PreconditionError("only Yes verdicts carry witnesses")
    w = verdict.certificate
    fev = float_evaluator(spec.f)
    if isinstance(w, (RiccatiWitness, LogSystemWitness)):
        inits = [x0 + k / 4 for k in range(4)]
        return cross_ratio_drift(spec.f, inits, t_end, step, ceiling)
    if isinstance(w, ConditionIWitness):
        if w.form == "exact":
            u = float_evaluator(w.u)
            inv = lambda t, s: u(s[0]) - t  # noqa: E731
        elif w.log.materialized:
            log_u, c = _log_abs(w.log.factors), float(w.log.scale)
            inv = lambda t, s: c * log_u(s[0]) - t  # noqa: E731
        else:
            return Drift(0.0, skipped="witness has algebraic coefficients")
        return _integral_drift(inv, fev, [x0], t_end, step, ceiling)
    if isinstance(w, CondIIWitness):
        gev = float_evaluator(spec.g)
        log_v = _log_abs(w.v.factors)
        m, b = w.m, float(w.b)

        def rhs(s):
            return np.array([fev(s[0]), gev(s[0]) * s[1]])

        inv = lambda t, s: log_v(s[0]) - m * math.log(abs(s[1])) - b * t  # noqa: E731
        return _integral_drift(inv, rhs, [x0, y0], t_end, step, ceiling)
    if isinstance(w, GeneralWitness):
        from .decision import SystemSpec

        d1 = witness_drift(SystemSpec(spec.f), w.condition_i, x0, t_end, step, y0, ceiling)
        d2 = witness_drift(spec, w.condition_ii, x0, t_end, step, y0, ceiling)
        run = [d for d in (d1, d2) if not d.skipped]
        if not run:
            return d1
        return Drift(max(run), any(d.blew_up for d in run), min(d.t_reached for d in run))
    raise TypeError(f"unknown witness type {type(w).__name__}")


def rk4_order_ratio(step: float = 0.01, t_end: float = 0.5) -> float:
    """Error ratio under step halving for ``x' = x^2, x(0) = 1`` (exact ``1/(1-t)``)."""
    f = RatFunc.x() * RatFunc.x()
    exact = 1.0 / (1.0 - t_end)
    e1 = abs(rk4_integrate(f, 1.0, t_end, step).final - exact)
    e2 = abs(rk4_integrate(f, 1.0, t_end, step / 2).final - exact)
    return e1 / e2
