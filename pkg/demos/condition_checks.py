"""Deciding the planar systems x' = f(x), y' = g(x) y.

Run with ``python demos/condition_checks.py``.
"""

from internality import decision
from internality.decision import SystemSpec
from internality.parsing import parse_ratfunc
from internality.report import pretty_witness

P = parse_ratfunc

# y' = x y on top of a Riccati equation: fine iff the leading coefficient is
# a nonzero rational number.
for src, params in (("1/2*x^2 + x", ()), ("-3*x^2 + 1", ()), ("t*x^2", ("t",)), ("x + 1", ())):
    v = decision.check_log_system(P(src, params))
    extra = pretty_witness(v.certificate) if v.answer.value == "yes" else v.certificate
    print(f"x' = {src:<12} y' = x y   -> {v.answer.value}: {extra}")

# Condition (i) looks at 1/f alone: an exact derivative or a constant
# multiple of a logarithmic derivative.
print()
for src in ("x^2", "x^2 - x", "x^2 + 1", "x^2*(x - 1)"):
    v = decision.check_condition_i(P(src))
    print(f"1/f with f = {src:<12} -> {v.answer.value}: "
          f"{pretty_witness(v.certificate) if v.answer.value == 'yes' else v.certificate}")

# Condition (ii) asks for (b + m g)/f = v'/v with an integer m != 0.  The
# residues are affine in (b, m), so the search is an integer kernel problem.
print()
for f, g in (("x^2", "x"), ("x^2", "x + 1"), ("x^2 + 1", "x"), ("x^3", "x"), ("x^2", "1/x")):
    v = decision.check_general_system(P(f), P(g))
    print(f"f = {f:<8} g = {g:<6} -> {v.answer.value}")
    if v.answer.value == "yes":
        print("   ", pretty_witness(v.certificate.condition_ii.certificate))
        print("    re-verified:", decision.verify_witness(SystemSpec(P(f), P(g)), v))
    else:
        print("   ", v.certificate)

# The leading-degree lemma pins down the slope a2 from a putative solution P/Q.
print()
x = P("x").num
print("lemma with P = x, Q = 1, n = 1 gives a2 =", decision.leading_degree_lemma(x, x**0, 1))
