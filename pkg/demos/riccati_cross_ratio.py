"""Riccati equations and the cross-ratio first integral.

Run with ``python demos/riccati_cross_ratio.py``.
"""

from internality import decision
from internality.diffengine import riccati_context, second_order_relation, verify_cross_ratio, verify_footnote_factor
from internality.numeric import cross_ratio_drift
from internality.parsing import parse_ratfunc
from internality.report import pretty_witness

# A scalar equation x' = f(x) is internal exactly when f is a polynomial of
# degree at most two.  The certificate is the coefficient triple.
for src in ("x^2 - 1", "3*x + 2", "x^3", "1/(x - 1)"):
    f = parse_ratfunc(src)
    v = decision.check_single_equation(f)
    detail = pretty_witness(v.certificate) if v.answer.value == "yes" else v.certificate
    print(f"{src:>12}: {v.answer.value:>3}  {detail}")

# Four solutions x, x1, x2, x3 of the same Riccati equation have a constant
# cross-ratio.  The check works with fully symbolic coefficients.
print("\ncross-ratio is a first integral:", verify_cross_ratio())

# Both products in the cross-ratio share one logarithmic derivative.
h = verify_footnote_factor()
print("shared log-derivative:", h)

# With v' = -a2 x v the function v satisfies a linear second-order equation.
lhs, rhs = second_order_relation()
print("v'' =", rhs, "| holds:", lhs == rhs)

ctx, (a0, a1, a2) = riccati_context(solutions=("x",), extra={"v": "-a2*x*v"})
v = ctx["v"]
print("with a1 in place of a0 instead:", ctx.derive(ctx.derive(v)) == a1 * ctx.derive(v) - a2 * a1 * v)

# Numerically the cross-ratio stays put for quadratic f and wanders for cubic f.
for src in ("x^2", "x^2 - x + 1/4", "x^3"):
    d = cross_ratio_drift(parse_ratfunc(src), (1, 2, 3, 4), 0.2, 1e-4)
    note = f" (stopped at t = {d.t_reached:.3f})" if d.blew_up else ""
    print(f"drift for f = {src}: {float(d):.2e}{note}")
