"""Exact rational-root extraction for parameter-free polynomials."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple

import sympy
from sympy import QQ, divisors

from ..errors import DomainError, UnsupportedInputError
from .coef import coef_is_rational, coef_to_fraction, to_fraction
from .poly import Poly, squarefree_part

# Above this size the divisor enumeration needs integer factorisations that
# dominate the run time; linear factors of an exact factorisation are used instead.
DIVISOR_LIMIT = 10**12

__all__ = ["RationalRoots", "rational_roots_with_multiplicity", "integer_coefficients", "as_rational_poly"]


class RationalRoots(NamedTuple):
    roots: dict[Fraction, int]
    all_roots_rational: bool


def as_rational_poly(p: Poly) -> Poly:
    """View ``p`` over QQ, or raise if some coefficient involves a parameter."""
    K = p.domain
    if K == QQ:
        return p
    if not all(coef_is_rational(c, K) for c in p.coeffs):
        raise UnsupportedInputError(f"{p} has parameter-dependent coefficients")
    return Poly([coef_to_fraction(c, K) for c in p.coeffs], QQ)


def integer_coefficients(p: Poly) -> list[int]:
    """Primitive integer coefficient vector proportional to ``p`` (over QQ)."""
    fr = [to_fraction(c) for c in p.coeffs]
    L = lcm(*(c.denominator for c in fr)) if fr else 1
    ints = [int(c * L) for c in fr]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints] if g > 1 else ints


def _eval_scaled(cs: list[int], p: int, q: int) -> int:
    """``q**n * P(p/q)`` for integer coefficients ``cs``."""
    n = len(cs) - 1
    acc = 0
    qpow = 1
    ppows = [1]
    for _ in range(n):
        ppows.append(ppows[-1] * p)
    for i in range(n, -1, -1):
        acc += cs[i] * ppows[i] * qpow
        qpow *= q
    return acc


def _root_bound(cs: list[int]) -> Fraction:
    lead = abs(cs[-1])
    return 1 + Fraction(max(abs(c) for c in cs[:-1]), lead) if len(cs) > 1 else Fraction(0)


def _simple_rational_roots(cs: list[int]) -> list[Fraction]:
    """Rational roots of a squarefree integer polynomial with nonzero constant term."""
    if len(cs) <= 1:
        return []
    tc, lc_ = abs(cs[0]), abs(cs[-1])
    p1 = sum(cs)
    m1 = sum(c if i % 2 == 0 else -c for i, c in enumerate(cs))
    bound = _root_bound(cs)
    found = []
    deg = len(cs) - 1
    for q in divisors(lc_):
        for p in divisors(tc):
            if gcd(p, q) != 1 or Fraction(p, q) > bound:
                continue
            for sp in (p, -p):
                # candidate p/q: (q - p) | P(1) and (q + p) | P(-1) are cheap filters
                if q - sp != 0 and p1 % (q - sp) != 0:
                    continue
                if q + sp != 0 and m1 % (q + sp) != 0:
                    continue
                if _eval_scaled(cs, sp, q) == 0:
                    found.append(Fraction(sp, q))
                    if len(found) == deg:
                        return found
    return found


def _factor_rational_roots(cs: list[int]) -> list[Fraction]:
    """Rational roots read off the linear factors of an exact factorisation over ZZ."""
    z = sympy.Symbol("z")
    poly = sympy.Poly([int(c) for c in reversed(cs)], z, domain="ZZ")
    _, factors = poly.factor_list()
    out = []
    for fac, _ in factors:
        if fac.degree() == 1:
            q, p = (int(c) for c in fac.all_coeffs())
            r = Fraction(-p, q)
            if _eval_scaled(cs, r.numerator, r.denominator) == 0:
                out.append(r)
    return out


def rational_roots_with_multiplicity(a: Poly, method: str = "auto") -> RationalRoots:
    """Rational roots of ``a`` with multiplicities.

    Candidates for the squarefree part come from the rational root theorem
    (``method="divisors"``) or from the linear factors of an exact
    factorisation (``method="factor"``); ``"auto"`` picks the divisor search
    unless the extreme coefficients exceed ``DIVISOR_LIMIT``.  Either way every
    root is checked by exact evaluation and every multiplicity is confirmed by
    repeated exact division of ``a``.
    """
    if method not in ("auto", "divisors", "factor"):
        raise ValueError(f"unknown method {method!r}")
    if not a:
        raise DomainError("rational roots of the zero polynomial")
    a = as_rational_poly(a)
    roots: dict[Fraction, int] = {}
    k = 0
    while k < len(a.coeffs) and a.coeffs[k] == 0:
        k += 1
    if k:
        roots[Fraction(0)] = k
    rest = Poly(a.coeffs[k:], QQ)
    if rest.degree > 0:
        sqf = squarefree_part(rest)
        cs = integer_coefficients(sqf)
        if method == "auto":
            method = "divisors" if max(abs(cs[0]), abs(cs[-1])) <= DIVISOR_LIMIT else "factor"
        finder = _simple_rational_roots if method == "divisors" else _factor_rational_roots
        for r in finder(cs):
            lin = Poly([-r, 1], QQ)
            m, q = 0, rest
            while True:
                quo, rem = divmod(q, lin)
                if rem:
                    break
                q, m = quo, m + 1
            roots[r] = m
    total = sum(roots.values())
    return RationalRoots(dict(sorted(roots.items())), total == a.degree)
