"""Constant fields: QQ and QQ(t1, ..., tk) with named parameters.

Parameter fractions are sympy sparse ``FracElement`` values; sympy keeps them
reduced with a canonical sign, which is the invariant the coefficient type
needs.  Plain rationals are represented by the ``QQ`` ground type (gmpy2
``mpq`` when available) and exchanged with callers as :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from sympy import QQ, Symbol

from ..errors import UnsupportedInputError

__all__ = [
    "QQ",
    "coef_field",
    "param_names",
    "is_parameter_free_field",
    "to_fraction",
    "coef_is_rational",
    "coef_to_fraction",
    "coef_str",
    "mpoly_str",
]


@lru_cache(maxsize=None)
def _frac_field(params: tuple[str, ...]):
    return QQ.frac_field(*[Symbol(p) for p in params])


def coef_field(params: Sequence[str] = ()):
    """Return the constant field for the declared parameter names."""
    params = tuple(params)
    if not params:
        return QQ
    if len(set(params)) != len(params):
        raise ValueError(f"duplicate parameter names in {params}")
    if "x" in params:
        raise ValueError("'x' is the polynomial variable and cannot be a parameter")
    return _frac_field(params)


def param_names(K) -> tuple[str, ...]:
    if K == QQ:
        return ()
    return tuple(str(s) for s in K.symbols)


def is_parameter_free_field(K) -> bool:
    return K == QQ


def to_fraction(a) -> Fraction:
    """Convert a QQ ground element (mpq / PythonMPQ) or int to Fraction."""
    if isinstance(a, Fraction):
        return a
    if isinstance(a, int):
        return Fraction(a)
    return Fraction(int(a.numerator), int(a.denominator))


def coef_is_rational(a, K) -> bool:
    if K == QQ:
        return True
    return K.numer(a).is_ground and K.denom(a).is_ground


def coef_to_fraction(a, K) -> Fraction:
    if K == QQ:
        return to_fraction(a)
    num, den = K.numer(a), K.denom(a)
    if not (num.is_ground and den.is_ground):
        raise UnsupportedInputError(f"coefficient {coef_str(a, K)} depends on parameters")
    return to_fraction(num.LC if num else 0) / to_fraction(den.LC)


def _monomial_str(monom, names) -> str:
    parts = []
    for name, e in zip(names, monom):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def mpoly_str(p, names) -> str:
    """Render a sympy ``PolyElement`` with ``^`` powers (parser-compatible)."""
    if not p:
        return "0"
    out = []
    for monom, c in sorted(p.terms(), key=lambda t: (-sum(t[0]), [-e for e in t[0]])):
        c = to_fraction(c)
        m = _monomial_str(monom, names)
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if not m:
            body = str(c)
        elif c == 1:
            body = m
        else:
            body = f"{c}*{m}"
        out.append((sign, body))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


def _is_single_term(p) -> bool:
    return len(p.terms()) == 1


def coef_str(a, K) -> str:
    """Render a constant as a string the expression parser reads back."""
    if K == QQ:
        return str(to_fraction(a))
    names = param_names(K)
    num, den = K.numer(a), K.denom(a)
    den_is_one = den.is_ground and to_fraction(den.LC) == 1
    if num.is_ground and den.is_ground:
        return str(coef_to_fraction(a, K))
    n = mpoly_str(num, names)
    if den_is_one:
        return n
    d = mpoly_str(den, names)
    if not _is_single_term(num):
        n = f"({n})"
    if not (den.is_ground or (_is_single_term(den) and to_fraction(den.LC) == 1 and "^" not in d)):
        d = f"({d})"
    return f"{n}/{d}"
