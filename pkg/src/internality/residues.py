"""Poles and residues of rational functions over the algebraic closure of QQ.

Everything here is exact: residues are located through Rothstein-Trager
resultants and rational-root extraction, never by numerical root isolation.
Inputs must be parameter-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

import sympy
from sympy import QQ, Symbol

from .algebra import (
    NumberField,
    Poly,
    RatFunc,
    poly_gcd,
    poly_part_and_proper,
    rational_roots_with_multiplicity,
    resultant,
    solve_diophantine,
    squarefree_part,
    to_fraction,
)
from .errors import PreconditionError, UnsupportedInputError, VerificationError

__all__ = [
    "HermiteResult",
    "ResidueProfile",
    "LogDerivWitness",
    "hermite_reduce",
    "rothstein_trager_resultant",
    "residue_profile",
    "is_exact_derivative",
    "scaled_logderivative",
    "integer_residue_logderivative",
    "ratio_polynomial",
    "factor_rational",
]

_Z = QQ[Symbol("z")]
_W = QQ[Symbol("w")]


@dataclass(frozen=True)
class HermiteResult:
    """``h == rational_part.diff() + remainder``; the remainder is proper with a squarefree denominator."""

    rational_part: RatFunc
    remainder: RatFunc


@dataclass(frozen=True)
class ResidueProfile:
    rt_resultant: Poly
    rational_pole_residues: Optional[dict[Fraction, Fraction]]
    has_higher_order_poles: bool
    polypart: Poly
    remainder: RatFunc


@dataclass(frozen=True)
class LogDerivWitness:
    """``h == scale * sum(n * V'/V for V, n in factors)``.

    With ``field`` unset the scale is a rational and every factor is a monic
    polynomial over QQ, so ``u = prod(V**n)`` is an honest element of QQ(x).
    Otherwise ``scale`` is the generator ``c`` of ``field`` (a root of
    ``field.minpoly``) and the factors have coefficients in QQ(c).
    """

    scale: object
    factors: tuple[tuple[Poly, int], ...]
    field: Optional[NumberField] = None

    @property
    def materialized(self) -> bool:
        return self.field is None

    def u(self) -> RatFunc:
        if not self.materialized:
            raise UnsupportedInputError("witness has algebraic coefficients; u is not in QQ(x)")
        acc = RatFunc.const(1)
        for V, n in self.factors:
            acc = acc * RatFunc.from_poly(V) ** n
        return acc

    def log_derivative(self) -> RatFunc:
        """``scale * u'/u`` (materialized witnesses only)."""
        acc = RatFunc.const(0)
        for V, n in self.factors:
            acc = acc + RatFunc(V.diff() * n, V)
        return acc * self.scale

    def reproduces(self, h: RatFunc) -> bool:
        """Exact check of ``scale * sum(n V'/V) == h`` (works over QQ(c) too)."""
        if self.materialized:
            return self.log_derivative() == h.as_rational()
        K = self.field
        h = h.as_rational()
        num, den = h.num.to_domain(K), h.den.to_domain(K)
        prod = Poly.one(K)
        for V, _ in self.factors:
            prod = prod * V
        acc = Poly.zero(K)
        for V, n in self.factors:
            acc = acc + V.diff() * prod.exquo(V) * K.convert(n)
        # scale * acc / prod == num / den
        return acc * self.scale * den == num * prod


def _require_rational(h: RatFunc) -> RatFunc:
    try:
        return h.as_rational()
    except UnsupportedInputError as exc:
        raise UnsupportedInputError(f"residue analysis needs parameter-free input: {exc}") from None


def _hermite_parts(A: Poly, D: Poly):
    """Quadratic Hermite reduction of a proper ``A/D`` (D monic).

    Returns ``(g, C, Ds)`` with ``A/D == g' + C/Ds``, ``Ds`` the squarefree
    part of ``D`` and ``deg C < deg Ds``.  ``Ds`` depends only on ``D`` and
    the map ``A -> (g, C)`` is linear.
    """
    g = RatFunc.const(0)
    Dm = poly_gcd(D, D.diff())
    Ds = D.exquo(Dm)
    while Dm.degree > 0:
        Dm2 = poly_gcd(Dm, Dm.diff())
        Dms = Dm.exquo(Dm2)
        B, C = solve_diophantine(-(Ds * Dm.diff()).exquo(Dm), Dms, A)
        A = C - B.diff() * Ds.exquo(Dms)
        g = g + RatFunc(B, Dm)
        Dm = Dm2
    return g, A, Ds


def hermite_reduce(h: RatFunc) -> HermiteResult:
    """Split ``h`` into an exact derivative plus a simple-pole remainder.

    The polynomial part of ``h`` is integrated into ``rational_part`` so that
    ``rational_part.diff() + remainder == h`` holds for improper input too.
    """
    h = _require_rational(h)
    poly, proper = poly_part_and_proper(h)
    g, C, Ds = _hermite_parts(proper.num, proper.den)
    return HermiteResult(g + RatFunc.from_poly(poly.integrate()), RatFunc(C, Ds))


def rothstein_trager_resultant(h: RatFunc) -> Poly:
    """``res_x(D, N - z*D')`` for proper ``h = N/D`` with squarefree ``D``.

    The result is a polynomial in ``z`` (returned as a :class:`Poly`); its
    roots are exactly the residues of ``h``.
    """
    h = _require_rational(h)
    N, D = h.num, h.den
    if not N:
        return Poly.one(QQ)
    if N.degree >= D.degree:
        raise PreconditionError("Rothstein-Trager needs a proper rational function")
    if poly_gcd(D, D.diff()).degree > 0:
        raise PreconditionError("Rothstein-Trager needs a squarefree denominator; Hermite-reduce first")
    z = _Z.gens[0]
    Dz = D.map_coeffs(_Z.convert, _Z)
    Nz = N.map_coeffs(_Z.convert, _Z)
    rhs = Nz - Dz.diff() * z
    r = resultant(Dz, rhs)
    return _from_sparse_univariate(r)


def _from_sparse_univariate(p) -> Poly:
    cs = [QQ.zero] * (p.degree() + 1 if p else 0)
    for (k,), c in p.terms():
        cs[k] = c
    return Poly(cs, QQ)


def residue_profile(h: RatFunc) -> ResidueProfile:
    h = _require_rational(h)
    polypart, proper = poly_part_and_proper(h)
    g, C, Ds = _hermite_parts(proper.num, proper.den)
    remainder = RatFunc(C, Ds)
    rt = rothstein_trager_resultant(remainder)
    residues = None
    poles = rational_roots_with_multiplicity(h.den) if h.den.degree > 0 else None
    if poles is None or poles.all_roots_rational:
        N, D = remainder.num, remainder.den
        dD = D.diff()
        residues = {}
        for alpha in (poles.roots if poles else {}):
            a = QQ(alpha.numerator, alpha.denominator)
            if D.degree > 0 and QQ.is_zero(D(a)):
                r = to_fraction(N(a) / dD(a))
            else:
                r = Fraction(0)
            residues[alpha] = r
            if r and rt(QQ(r.numerator, r.denominator)) != 0:
                raise VerificationError(f"residue {r} at {alpha} is not a root of the Rothstein-Trager resultant")
    return ResidueProfile(rt, residues, not g.is_zero(), polypart, remainder)


def is_exact_derivative(h: RatFunc) -> Optional[RatFunc]:
    """Return ``u`` in QQ(x) with ``du/dx == h``, or None when no such ``u`` exists."""
    hr = hermite_reduce(h)
    if hr.remainder:
        return None
    if hr.rational_part.diff() != h.as_rational():
        raise VerificationError("Hermite reduction failed to reproduce its input")
    return hr.rational_part


def _simple_pole_data(h: RatFunc):
    """``(N, D)`` if ``h`` is proper with only simple poles, else None."""
    h = _require_rational(h)
    polypart, proper = poly_part_and_proper(h)
    if polypart:
        return None
    g, C, Ds = _hermite_parts(proper.num, proper.den)
    if g:
        return None
    return proper.num, proper.den


def _residue_groups(N: Poly, D: Poly, residues, K=None):
    """``[(gcd(D, N - r D'), r)]`` over the field ``K`` (QQ by default)."""
    if K is not None:
        N, D = N.to_domain(K), D.to_domain(K)
    dD = D.diff()
    out = []
    for r in residues:
        V = poly_gcd(D, N - dD * r)
        if V.degree <= 0:
            raise VerificationError(f"residue {r} has no poles")
        out.append((V, r))
    return out


def _rational_gcd(values: Sequence[Fraction]) -> Fraction:
    den = lcm(*(v.denominator for v in values))
    g = 0
    for v in values:
        g = gcd(g, int(v * den))
    return Fraction(g, den)


def integer_residue_logderivative(h: RatFunc) -> Optional[LogDerivWitness]:
    """Find ``v`` with ``v'/v == h``; needs simple poles with integer residues."""
    data = _simple_pole_data(h)
    if data is None:
        return None
    N, D = data
    if not N:
        return LogDerivWitness(Fraction(1), ())
    R = rothstein_trager_resultant(RatFunc(N, D))
    roots = rational_roots_with_multiplicity(R)
    if not roots.all_roots_rational or any(r.denominator != 1 for r in roots.roots):
        return None
    groups = _residue_groups(N, D, [QQ(r.numerator) for r in roots.roots])
    factors = tuple((V, int(to_fraction(r))) for V, r in groups)
    w = LogDerivWitness(Fraction(1), factors)
    if not w.reproduces(RatFunc(N, D)):
        raise VerificationError("integer-residue witness does not reproduce its input")
    return w


def ratio_polynomial(R: Poly) -> Poly:
    """``S(w) = res_z(R(z), R(w z))``; its roots are all ratios of roots of ``R``.

    For squarefree ``R`` of degree ``n`` with nonzero roots, ``w = 1`` is a
    root of multiplicity at least ``n`` (the diagonal ratios).
    """
    w = _W.gens[0]
    Rw = Poly([_W.convert(c) for c in R.coeffs], _W)
    Rwz = Poly([_W.convert(c) * w**k for k, c in enumerate(R.coeffs)], _W)
    return _from_sparse_univariate(resultant(Rw, Rwz))


def factor_rational(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors over QQ, lowest degree first (sympy backend)."""
    z = Symbol("z")
    sp = sympy.Poly([sympy.Rational(int(to_fraction(c).numerator), int(to_fraction(c).denominator))
                     for c in reversed(p.coeffs)], z, domain="QQ")
    _, facs = sp.factor_list()
    out = []
    for fac, m in facs:
        cs = [QQ.convert(c) for c in reversed(fac.all_coeffs())]
        out.append((Poly(cs, QQ).monic(), int(m)))
    out.sort(key=lambda t: (t[0].degree, [str(c) for c in t[0].coeffs]))
    return out


def scaled_logderivative(h: RatFunc) -> Optional[LogDerivWitness]:
    """Find ``c != 0`` and ``u`` with ``c * u'/u == h``.

    Possible exactly when ``h`` is proper with simple poles and all residues
    are rational multiples of one another.  When the common scale is
    irrational the witness lives over QQ(c) (see :class:`LogDerivWitness`).
    """
    data = _simple_pole_data(h)
    if data is None:
        return None
    N, D = data
    if not N:
        return None
    R = squarefree_part(rothstein_trager_resultant(RatFunc(N, D)))
    roots = rational_roots_with_multiplicity(R)
    if roots.all_roots_rational:
        residues = list(roots.roots)
        c = _rational_gcd(residues)
        groups = _residue_groups(N, D, [QQ(r.numerator, r.denominator) for r in residues])
        factors = tuple((V, int(to_fraction(r) / c)) for V, r in groups)
        w = LogDerivWitness(c, factors)
    else:
        ratios = rational_roots_with_multiplicity(ratio_polynomial(R))
        if not ratios.all_roots_rational:
            return None
        w = _trager_witness(N, D, R, list(ratios.roots))
    if not w.reproduces(RatFunc(N, D)):
        raise VerificationError("scaled logarithmic-derivative witness does not reproduce its input")
    return w


def _trager_witness(N: Poly, D: Poly, R: Poly, ratios: list[Fraction]) -> LogDerivWitness:
    """Witness over QQ(c) when all residues are rational multiples of an irrational ``c``."""
    m, _ = factor_rational(R)[0]
    # rho is a root of m; the residues are rho*q for the ratios q with m | R(q z)
    qs = [q for q in ratios if not (R.scale_variable(QQ(q.numerator, q.denominator)) % m)]
    if len(qs) != R.degree:
        raise VerificationError("ratio set does not account for every residue")
    g = _rational_gcd(qs)
    minpoly = m.scale_variable(QQ(g.denominator, g.numerator)).monic()
    K = NumberField(minpoly, "c")
    c = K.gen
    residues = [c * QQ(int(q / g)) for q in qs]
    groups = _residue_groups(N, D, residues, K)
    factors = tuple((V, int(q / g)) for (V, _), q in zip(groups, qs))
    return LogDerivWitness(c, factors, K)
