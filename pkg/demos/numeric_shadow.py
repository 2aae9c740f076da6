"""The floating-point shadow: RK4 trajectories and first-integral drift.

Run with ``python demos/numeric_shadow.py``.
"""

import numpy as np

from internality import decision
from internality.decision import SystemSpec
from internality.numeric import rk4_integrate, rk4_order_ratio, witness_drift
from internality.parsing import parse_ratfunc

# x' = x^2 from x(0) = 1 has the closed form 1/(1 - t).
f = parse_ratfunc("x^2")
for step in (1e-2, 1e-3, 1e-4):
    traj = rk4_integrate(f, 1.0, 0.5, step)
    print(f"step {step:g}: x(0.5) = {traj.final:.15f}, error {abs(traj.final - 2.0):.2e}")
print(f"error ratio under step halving: {rk4_order_ratio():.2f} (fourth order gives 16)")

# Past the pole at t = 1 the integrator stops and says so.
traj = rk4_integrate(f, 1.0, 2.0, 1e-3)
print(f"blew up: {traj.blew_up}, last time {traj.t_reached:.4f}, last value {traj.final:.3g}")

# Every Yes certificate names a first integral; along a numerical trajectory
# it should be flat up to rounding.
for fs, gs in (("x^2", "x"), ("x^2 - x", "x"), ("x^2", "x + 1")):
    spec = SystemSpec(parse_ratfunc(fs), parse_ratfunc(gs))
    v = decision.check_general_system(spec.f, spec.g)
    d = witness_drift(spec, v, x0=0.5, t_end=0.2, step=1e-4)
    print(f"f = {fs:<8} g = {gs:<6} witness drift {float(d):.2e}")

# Sampled values for a quick look, without plotting.
traj = rk4_integrate(parse_ratfunc("x^2 - 1"), 0.0, 2.0, 1e-3)
ts = np.array(traj.times)
print("x' = x^2 - 1 from 0, compared with -tanh(t):", np.max(np.abs(np.array(traj.values) + np.tanh(ts))))
