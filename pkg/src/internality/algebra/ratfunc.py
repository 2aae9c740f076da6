"""Reduced rational functions in ``x``."""

from __future__ import annotations

from fractions import Fraction

from sympy import QQ

from ..errors import DivisionByZeroError, DomainError
from .poly import Poly, poly_gcd
from .roots import as_rational_poly

__all__ = ["RatFunc", "ratfunc_normalize", "poly_part_and_proper"]


class RatFunc:
    """``num / den`` with ``gcd(num, den) = 1`` and ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, _reduced: bool = False):
        if den is None:
            den = Poly.one(num.domain)
        if num.domain != den.domain:
            raise DomainError("numerator and denominator over different domains")
        if not den:
            raise DivisionByZeroError("rational function with zero denominator")
        if not _reduced:
            if not num:
                num, den = num, Poly.one(num.domain)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num.exquo(g), den.exquo(g)
                lc = den.lc
                if lc != num.domain.one:
                    inv = num.domain.one / lc
                    num, den = num * inv, den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, Poly.one(p.domain), _reduced=True)

    @classmethod
    def x(cls, domain=QQ) -> "RatFunc":
        return cls.from_poly(Poly.x(domain))

    @classmethod
    def const(cls, c, domain=QQ) -> "RatFunc":
        return cls.from_poly(Poly.const(c, domain))

    @property
    def domain(self):
        return self.num.domain

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc.from_poly(other)
        return RatFunc.const(other, self.domain)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if not o:
            raise DivisionByZeroError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n >= 0:
            return RatFunc(self.num**n, self.den**n, _reduced=True) if n else RatFunc.const(1, self.domain)
        if not self:
            raise DivisionByZeroError("negative power of zero")
        return RatFunc(self.den ** (-n), self.num ** (-n))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = self._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        from ..parsing import ratfunc_to_str

        return ratfunc_to_str(self)

    def diff(self) -> "RatFunc":
        """Derivative with respect to ``x``."""
        n, d = self.num, self.den
        return RatFunc(n.diff() * d - n * d.diff(), d * d)

    def __call__(self, a):
        den = self.den(a)
        if self.domain.is_zero(den):
            raise DivisionByZeroError("evaluation at a pole")
        return self.num(a) / den

    def to_domain(self, domain) -> "RatFunc":
        return RatFunc(self.num.to_domain(domain), self.den.to_domain(domain))

    def as_rational(self) -> "RatFunc":
        """Same function over QQ; raises UnsupportedInputError if parameters occur."""
        if self.domain == QQ:
            return self
        return RatFunc(as_rational_poly(self.num), as_rational_poly(self.den), _reduced=True)

    def is_parameter_free(self) -> bool:
        try:
            self.as_rational()
        except ValueError:
            return False
        return True


def ratfunc_normalize(num: Poly, den: Poly) -> RatFunc:
    """Reduce ``num/den`` to lowest terms with a monic denominator."""
    return RatFunc(num, den)


def poly_part_and_proper(h: RatFunc) -> tuple[Poly, RatFunc]:
    """Split ``h`` into polynomial part and proper part (``deg num < deg den``)."""
    q, r = divmod(h.num, h.den)
    return q, RatFunc(r, h.den, _reduced=True) if r else RatFunc.from_poly(r)
