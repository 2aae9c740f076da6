"""Simple algebraic extensions QQ[c]/(m(c)) used for Trager-form witnesses."""

from __future__ import annotations

from fractions import Fraction

from sympy import QQ

from ..errors import DivisionByZeroError, DomainError
from .coef import to_fraction
from .poly import Poly, poly_gcdex


class NumberField:
    """``QQ(c)`` for a root ``c`` of the monic irreducible polynomial ``minpoly``.

    Irreducibility is the caller's responsibility; inversion raises if an
    element turns out to be a zero divisor.
    """

    is_Field = True
    is_Exact = True

    def __init__(self, minpoly: Poly, name: str = "c"):
        if minpoly.domain != QQ or minpoly.degree < 1:
            raise DomainError("number field needs a nonconstant rational minimal polynomial")
        self.minpoly = minpoly.monic()
        self.name = name
        self.degree = self.minpoly.degree
        self.zero = NFElement(self, Poly.zero(QQ))
        self.one = NFElement(self, Poly.one(QQ))
        self.gen = NFElement(self, Poly.x(QQ))

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        from ..parsing import poly_to_str

        return f"QQ[{self.name}]/({poly_to_str(self.minpoly, var=self.name)})"

    def of_type(self, a) -> bool:
        return isinstance(a, NFElement) and a.field == self

    def is_zero(self, a) -> bool:
        return not a.rep

    def convert(self, a):
        if isinstance(a, NFElement):
            return a
        if isinstance(a, Poly):
            return NFElement(self, a % self.minpoly)
        return NFElement(self, Poly.const(to_fraction(a) if not isinstance(a, Fraction) else a, QQ))

    def convert_from(self, a, K):
        return self.convert(a)

    def exquo(self, a, b):
        return a / b


class NFElement:
    __slots__ = ("field", "rep")

    def __init__(self, field: NumberField, rep: Poly):
        self.field = field
        self.rep = rep

    def _other(self, o):
        return o if isinstance(o, NFElement) else self.field.convert(o)

    def __add__(self, o):
        return NFElement(self.field, self.rep + self._other(o).rep)

    __radd__ = __add__

    def __sub__(self, o):
        return NFElement(self.field, self.rep - self._other(o).rep)

    def __rsub__(self, o):
        return self._other(o) - self

    def __neg__(self):
        return NFElement(self.field, -self.rep)

    def __mul__(self, o):
        return NFElement(self.field, (self.rep * self._other(o).rep) % self.field.minpoly)

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        if not self.rep:
            raise DivisionByZeroError("inverse of zero in a number field")
        s, _, g = poly_gcdex(self.rep, self.field.minpoly)
        if g.degree != 0:
            raise DomainError("zero divisor: minimal polynomial is reducible")
        return NFElement(self.field, s % self.field.minpoly)

    def __truediv__(self, o):
        return self * self._other(o).inverse()

    def __rtruediv__(self, o):
        return self._other(o) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, o):
        try:
            return self.rep == self._other(o).rep
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.rep)

    def rational_coeffs(self) -> list[Fraction]:
        """Coefficients in the power basis ``1, c, c^2, ...``."""
        return [to_fraction(a) for a in self.rep.coeffs]

    def __repr__(self):
        from ..parsing import poly_to_str

        return poly_to_str(self.rep, var=self.field.name)
