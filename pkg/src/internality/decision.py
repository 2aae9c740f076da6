"""Internality decision procedures with witness synthesis.

Three families of systems are handled:

* ``x' = f(x)``: internal to constants iff ``f`` is a polynomial of degree
  at most two (a Riccati equation); the witness is the cross-ratio first
  integral of four solutions.
* ``x' = f(x), y' = x y``: additionally needs the leading coefficient of
  ``f`` to be a nonzero rational number.
* ``x' = f(x), y' = g(x) y``: conditions (i) and (ii) below, each decided by
  exact residue analysis.

Every Yes carries a certificate that :func:`verify_witness` re-checks with
the differential engine.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from sympy import QQ

from . import lattice
from .algebra import Poly, RatFunc, coef_str, coef_to_fraction, poly_gcd, to_fraction
from .algebra.coef import coef_is_rational
from .diffengine import DiffContext, verify_cross_ratio, verify_log_system_witness
from .errors import HypothesisViolation, PreconditionError, UnsupportedInputError, VerificationError
from .residues import (
    LogDerivWitness,
    _hermite_parts,
    factor_rational,
    is_exact_derivative,
    scaled_logderivative,
)

__all__ = [
    "Answer",
    "Verdict",
    "Obstruction",
    "SystemSpec",
    "RiccatiCoeffs",
    "RiccatiWitness",
    "LogSystemWitness",
    "ConditionIWitness",
    "CondIIWitness",
    "GeneralWitness",
    "riccati_coeffs",
    "check_single_equation",
    "check_log_system",
    "leading_degree_lemma",
    "check_condition_i",
    "check_condition_ii",
    "check_general_system",
    "verify_witness",
    "DEFAULT_M_BOUND",
]

DEFAULT_M_BOUND = 64
CROSS_RATIO = "(x - x2)*(x3 - x1)/((x - x1)*(x3 - x2))"


class Answer(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @property
    def exit_code(self) -> int:
        return {Answer.YES: 0, Answer.NO: 1, Answer.UNKNOWN: 2}[self]


@dataclass(frozen=True)
class Obstruction:
    clause: str
    detail: str

    def __str__(self):
        return f"{self.clause}: {self.detail}"


@dataclass(frozen=True)
class Verdict:
    answer: Answer
    certificate: object = None
    reason: Optional[str] = None

    def __post_init__(self):
        if self.answer is Answer.YES and self.certificate is None:
            raise ValueError("a Yes verdict needs a certificate")
        if self.answer is Answer.UNKNOWN and not self.reason:
            raise ValueError("an Unknown verdict needs a reason")

    @classmethod
    def yes(cls, witness):
        return cls(Answer.YES, witness)

    @classmethod
    def no(cls, clause: str, detail: str):
        return cls(Answer.NO, Obstruction(clause, detail))

    @classmethod
    def unknown(cls, reason: str):
        return cls(Answer.UNKNOWN, None, reason)


@dataclass(frozen=True)
class SystemSpec:
    """``x' = f(x)`` and, when ``g`` is given, ``y' = g(x) y``."""

    f: RatFunc
    g: Optional[RatFunc] = None

    def __post_init__(self):
        if not self.f:
            raise HypothesisViolation("f must be a nonzero rational function")
        if self.g is not None and not self.g:
            raise HypothesisViolation("g must be a nonzero rational function")

    @classmethod
    def log_system(cls, f: RatFunc) -> "SystemSpec":
        return cls(f, RatFunc.x(f.domain))


@dataclass(frozen=True)
class RiccatiCoeffs:
    a0: object
    a1: object
    a2: object
    domain: object = QQ

    def as_strings(self) -> tuple[str, str, str]:
        return tuple(coef_str(a, self.domain) for a in (self.a0, self.a1, self.a2))

    def poly(self) -> Poly:
        return Poly([self.a0, self.a1, self.a2], self.domain)


@dataclass(frozen=True)
class RiccatiWitness:
    coeffs: RiccatiCoeffs
    first_integral: str = CROSS_RATIO
    cross_ratio_verified: bool = True


@dataclass(frozen=True)
class LogSystemWitness:
    """Both clauses: ``x' = f(x)`` internal, and the system almost internal."""

    coeffs: RiccatiCoeffs
    m1: int
    m2: int
    internal: RiccatiWitness
    relations: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ConditionIWitness:
    """``1/f == du/dx`` (form ``"exact"``) or ``1/f == c u'/u`` (form ``"logarithmic"``)."""

    form: str
    u: Optional[RatFunc] = None
    log: Optional[LogDerivWitness] = None


@dataclass(frozen=True)
class CondIIWitness:
    """``(b + m g)/f == v'/v`` with ``v = prod(V**n)``."""

    m: int
    b: Fraction
    v: LogDerivWitness


@dataclass(frozen=True)
class GeneralWitness:
    condition_i: Verdict
    condition_ii: Verdict


def riccati_coeffs(f: RatFunc) -> Optional[RiccatiCoeffs]:
    """``(a0, a1, a2)`` when ``f`` is a polynomial of degree at most two."""
    if not f.is_polynomial() or f.num.degree > 2:
        return None
    p = f.num
    return RiccatiCoeffs(p[0], p[1], p[2], f.domain)


def _riccati_values(c: RiccatiCoeffs):
    """Coefficients as values the differential engine accepts."""
    if c.domain == QQ:
        return tuple(to_fraction(a) for a in (c.a0, c.a1, c.a2))
    return c.a0, c.a1, c.a2


def check_single_equation(f: RatFunc) -> Verdict:
    """Is ``x' = f(x)`` internal to constants?"""
    SystemSpec(f)
    coeffs = riccati_coeffs(f)
    if coeffs is None:
        if not f.is_polynomial():
            return Verdict.no("riccati form", f"denominator {f.den} is not constant")
        return Verdict.no("riccati form", f"degree {f.num.degree} > 2")
    params = _params_of(f.domain)
    if not verify_cross_ratio(*_riccati_values(coeffs), params=params):
        raise VerificationError("cross-ratio is not a first integral")
    return Verdict.yes(RiccatiWitness(coeffs))


def _params_of(K) -> tuple[str, ...]:
    return () if K == QQ else tuple(str(s) for s in K.symbols)


def check_log_system(f: RatFunc) -> Verdict:
    """Is ``x' = f(x), y' = x y`` almost internal with ``x' = f(x)`` internal?"""
    single = check_single_equation(f)
    if single.answer is not Answer.YES:
        ob = single.certificate
        return Verdict.no("x' = f(x) internal", ob.detail)
    coeffs = single.certificate.coeffs
    K = coeffs.domain
    if K.is_zero(coeffs.a2):
        return Verdict.no("a2 nonzero rational", "a2 is zero")
    if not coef_is_rational(coeffs.a2, K):
        return Verdict.no("a2 nonzero rational", f"a2 not a rational number ({coef_str(coeffs.a2, K)})")
    a2 = coef_to_fraction(coeffs.a2, K)
    a0, a1, _ = _riccati_values(coeffs)
    relations = verify_log_system_witness(a0, a1, a2, params=_params_of(K))
    if not all(relations.values()):
        failed = [k for k, ok in relations.items() if not ok]
        raise VerificationError(f"log-system construction failed: {failed}")
    return Verdict.yes(LogSystemWitness(coeffs, a2.numerator, a2.denominator, single.certificate, relations))


def leading_degree_lemma(P: Poly, Q: Poly, n: int) -> Optional[Fraction]:
    """Value of ``a2`` forced by ``P'Q - Q'P = n x P Q`` at leading order.

    Here ``x' = a2 x^2 + a1 x + a0``.  Derivatives of the coefficients of
    ``P`` and ``Q`` only reach degree ``deg P + deg Q``, so the top-degree
    coefficient of the identity is linear in ``a2``; it is solved for ``a2``.
    Returns None when that coefficient does not involve ``a2`` (``deg P ==
    deg Q``).
    """
    if not P or not Q:
        raise PreconditionError("P and Q must be nonzero")
    if poly_gcd(P, Q).degree > 0:
        raise PreconditionError("P and Q must be coprime")
    if Q.lc != Q.domain.one:
        raise PreconditionError("Q must be monic")
    K = P.domain
    x = Poly.x(K)
    top = P.degree + Q.degree + 1
    wronsk = P.diff() * Q - Q.diff() * P
    slope = (wronsk * x * x)[top]  # coefficient of a2
    offset = (-(x * P * Q) * n)[top]  # a0, a1 terms cannot reach degree `top`
    if K.is_zero(slope):
        return None
    value = -offset / slope
    return coef_to_fraction(value, K)


def _rational_input(*hs: RatFunc):
    try:
        return tuple(h.as_rational() for h in hs)
    except UnsupportedInputError:
        return None


def check_condition_i(f: RatFunc) -> Verdict:
    """``1/f = du/dx`` or ``1/f = (c/u) du/dx`` for some ``u`` in C(x), ``c != 0``."""
    SystemSpec(f)
    rat = _rational_input(f)
    if rat is None:
        return Verdict.unknown("condition (i): parameterized coefficients are not supported")
    (f,) = rat
    h = 1 / f
    u = is_exact_derivative(h)
    if u is not None:
        return Verdict.yes(ConditionIWitness("exact", u=u))
    w = scaled_logderivative(h)
    if w is not None:
        return Verdict.yes(ConditionIWitness("logarithmic", u=w.u() if w.materialized else None, log=w))
    return Verdict.no("condition (i)", "1/f is neither a derivative nor a scaled logarithmic derivative")


def _coeff_rows(p: Poly, q: Poly, ncols: int) -> list[list[Fraction]]:
    """Rows ``[p_k, q_k, 0, ...]`` for every coefficient index ``k``."""
    rows = []
    for k in range(max(len(p.coeffs), len(q.coeffs))):
        row = [to_fraction(p[k]), to_fraction(q[k])] + [Fraction(0)] * (ncols - 2)
        rows.append(row)
    return rows


def _condition_ii_system(f: RatFunc, g: RatFunc):
    """Linear constraints on ``(b, m, k_1, ..., k_r)``.

    ``h = (b + m g)/f`` must have no polynomial part, no higher-order poles
    and residue ``k_j`` (an integer) at every root of the ``j``-th irreducible
    factor ``P_j`` of the squarefree part of its denominator.
    """
    H1, H2 = 1 / f, g / f
    L = H1.den * H2.den.exquo(poly_gcd(H1.den, H2.den))
    A1 = H1.num * L.exquo(H1.den)
    A2 = H2.num * L.exquo(H2.den)
    P1, R1 = divmod(A1, L)
    P2, R2 = divmod(A2, L)
    g1, C1, Ds = _hermite_parts(R1, L)
    g2, C2, _ = _hermite_parts(R2, L)
    factors = [p for p, _ in factor_rational(Ds)] if Ds.degree > 0 else []
    ncols = 2 + len(factors)
    rows = _coeff_rows(P1, P2, ncols)
    G = g1.den * g2.den.exquo(poly_gcd(g1.den, g2.den))
    rows += _coeff_rows(g1.num * G.exquo(g1.den), g2.num * G.exquo(g2.den), ncols)
    dDs = Ds.diff()
    for j, P in enumerate(factors):
        r1, r2, rd = C1 % P, C2 % P, dDs % P
        for k in range(P.degree):
            row = [to_fraction(r1[k]), to_fraction(r2[k])] + [Fraction(0)] * len(factors)
            row[2 + j] = -to_fraction(rd[k])
            rows.append(row)
    return rows, factors


def _solve_integral(rows, ncols: int, with_b: bool):
    """Smallest positive ``m`` with integer ``m, k`` and rational ``b``.

    Returns ``(m, b, ks)`` or None.  With ``with_b`` false, ``b`` is pinned to 0.
    """
    if with_b:
        prow, rest = lattice.rational_solve_pivot(rows, 0)
    else:
        prow, rest = None, rows
    reduced = [r[1:] for r in rest]
    ints = lattice.integer_rows(reduced)
    basis = lattice.integer_kernel(ints, ncols - 1)
    vec = lattice.minimal_positive_coordinate(basis, 0)
    if vec is None:
        return None
    m, ks = vec[0], vec[1:]
    b = Fraction(0)
    if prow is not None:
        b = -sum(Fraction(c) * y for c, y in zip(prow[1:], vec)) / prow[0]
    return m, b, ks


def check_condition_ii(
    f: RatFunc, g: RatFunc, m_bound: int = DEFAULT_M_BOUND, allow_trivial_m: bool = False
) -> Verdict:
    """``(b + m g)/f = v'/v`` for an integer ``m``, a constant ``b`` and ``v`` in C(x).

    By default ``m != 0`` is required (``m = b = 0, v = 1`` always works).
    The constraints are linear in ``(b, m)`` and in the residues ``k_j``;
    integrality is solved exactly with an integer kernel, so the answer is
    never Unknown for parameter-free input.  A constant ``b`` outside QQ is
    never needed for existence: averaging a solution over the conjugates of
    ``b`` gives one with rational ``b``.  ``m_bound`` is accepted for
    compatibility with search-based callers and is not needed by the exact
    solve.
    """
    SystemSpec(f, g)
    rat = _rational_input(f, g)
    if rat is None:
        return Verdict.unknown("condition (ii): parameterized coefficients are not supported")
    f, g = rat
    if allow_trivial_m:
        return Verdict.yes(CondIIWitness(0, Fraction(0), LogDerivWitness(Fraction(1), ())))
    rows, factors = _condition_ii_system(f, g)
    ncols = 2 + len(factors)
    general = _solve_integral(rows, ncols, with_b=True)
    if general is None:
        return Verdict.no("condition (ii)", "only trivial (b,m) = (0,0)")
    pinned = _solve_integral(rows, ncols, with_b=False)
    m, b, ks = pinned if pinned is not None and pinned[0] == general[0] else general
    v = LogDerivWitness(Fraction(1), tuple((P, k) for P, k in zip(factors, ks) if k))
    witness = CondIIWitness(m, b, v)
    if not v.reproduces((g * m + b) / f):
        raise VerificationError("condition (ii) witness does not reproduce (b + m g)/f")
    return Verdict.yes(witness)


def check_general_system(
    f: RatFunc, g: RatFunc, m_bound: int = DEFAULT_M_BOUND, allow_trivial_m: bool = False
) -> Verdict:
    """Is ``x' = f(x), y' = g(x) y`` almost internal to constants?"""
    SystemSpec(f, g)
    ci = check_condition_i(f)
    cii = check_condition_ii(f, g, m_bound, allow_trivial_m)
    for v, name in ((ci, "condition (i)"), (cii, "condition (ii)")):
        if v.answer is Answer.NO:
            return Verdict(Answer.NO, v.certificate)
    for v in (ci, cii):
        if v.answer is Answer.UNKNOWN:
            return Verdict.unknown(v.reason)
    return Verdict.yes(GeneralWitness(ci, cii))


Witness = Union[RiccatiWitness, LogSystemWitness, ConditionIWitness, CondIIWitness, GeneralWitness]


def _verify_condition_i(f: RatFunc, w: ConditionIWitness) -> bool:
    f = f.as_rational()
    if w.form == "exact":
        if w.u is None:
            return False
        ctx = DiffContext({"x": str(f)})
        return ctx.derive(str(w.u)) == ctx.const(1)
    if w.form != "logarithmic" or w.log is None:
        return False
    if not w.log.materialized:
        return w.log.reproduces(1 / f)
    ctx = DiffContext({"x": str(f)})
    u = ctx.expr(str(w.log.u()))
    return ctx.derive(u) * ctx.const(w.log.scale) / u == ctx.const(1)


def _verify_condition_ii(f: RatFunc, g: RatFunc, w: CondIIWitness) -> bool:
    """``z = v(x) / y^m`` must solve ``z' = b z`` in the system's differential field.

    Checked as ``z'/z = sum(n V'/V) - m y'/y == b`` so that large exponents
    never get expanded.
    """
    if w.v.field is not None or w.v.scale != 1:
        return False
    f, g = f.as_rational(), g.as_rational()
    ctx = DiffContext({"x": str(f), "y": f"({g})*y"})
    y = ctx["y"]
    acc = ctx.const(-w.m) * ctx.derive(y) / y
    for V, n in w.v.factors:
        e = ctx.expr(str(V))
        acc = acc + ctx.const(n) * ctx.derive(e) / e
    return acc == ctx.const(w.b)


def _verify_riccati(f: RatFunc, w: RiccatiWitness) -> bool:
    c = w.coeffs
    if RatFunc.from_poly(c.poly()) != f:
        return False
    return verify_cross_ratio(*_riccati_values(c), params=_params_of(c.domain))


def verify_witness(spec: SystemSpec, verdict: Verdict) -> bool:
    """Re-derive every identity a Yes certificate claims, exactly."""
    if verdict.answer is not Answer.YES:
        raise PreconditionError("only Yes verdicts carry witnesses")
    w = verdict.certificate
    if isinstance(w, RiccatiWitness):
        return _verify_riccati(spec.f, w)
    if isinstance(w, LogSystemWitness):
        c = w.coeffs
        if not coef_is_rational(c.a2, c.domain) or coef_to_fraction(c.a2, c.domain) != Fraction(w.m1, w.m2):
            return False
        if not _verify_riccati(spec.f, w.internal):
            return False
        a0, a1, _ = _riccati_values(c)
        relations = verify_log_system_witness(a0, a1, Fraction(w.m1, w.m2), params=_params_of(c.domain))
        return all(relations.values())
    if isinstance(w, ConditionIWitness):
        return _verify_condition_i(spec.f, w)
    if isinstance(w, CondIIWitness):
        if spec.g is None:
            raise PreconditionError("condition (ii) witness needs g")
        if w.m == 0 and w.b == 0 and not w.v.factors:
            return True
        return _verify_condition_ii(spec.f, spec.g, w)
    if isinstance(w, GeneralWitness):
        return verify_witness(SystemSpec(spec.f), w.condition_i) and verify_witness(spec, w.condition_ii)
    raise TypeError(f"unknown witness type {type(w).__name__}")
