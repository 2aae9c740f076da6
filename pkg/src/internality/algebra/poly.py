"""Dense univariate polynomials in ``x`` over an exact coefficient domain.

The coefficient domain ``K`` is anything exposing the small sympy domain
protocol used here: ``zero``, ``one``, ``is_zero``, ``convert``, ``exquo`` and
``is_Field``.  In practice that is ``QQ``, ``QQ(t1, ..., tk)``, ``QQ[z]``
(for resultants with a free variable) or :class:`~.numberfield.NumberField`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple

from sympy import QQ

from ..errors import DivisionByZeroError, DomainError

__all__ = [
    "Poly",
    "SquarefreeDecomposition",
    "poly_gcd",
    "poly_gcdex",
    "squarefree_decompose",
    "resultant",
    "determinant",
]


class Poly:
    """Polynomial with dense coefficients, ``coeffs[i]`` multiplying ``x**i``.

    The zero polynomial has an empty coefficient tuple and degree -1.
    Instances are immutable.
    """

    __slots__ = ("coeffs", "domain")

    def __init__(self, coeffs: Iterable = (), domain=QQ):
        cs = [c if _is_native(c, domain) else domain.convert(c) for c in coeffs]
        while cs and domain.is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "domain", domain)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, coeffs, domain):
        cs = list(coeffs)
        while cs and domain.is_zero(cs[-1]):
            cs.pop()
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", tuple(cs))
        object.__setattr__(p, "domain", domain)
        return p

    @classmethod
    def x(cls, domain=QQ):
        return cls._raw((domain.zero, domain.one), domain)

    @classmethod
    def const(cls, c, domain=QQ):
        return cls((c,), domain)

    @classmethod
    def zero(cls, domain=QQ):
        return cls._raw((), domain)

    @classmethod
    def one(cls, domain=QQ):
        return cls._raw((domain.one,), domain)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.domain.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.domain.zero

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other, self.domain)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        from ..parsing import poly_to_str

        return poly_to_str(self)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.domain != self.domain:
                raise DomainError(f"coefficient domains differ: {self.domain} vs {other.domain}")
            return other
        return Poly.const(other, self.domain)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(out, self.domain)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs], self.domain)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = other if _is_native(other, self.domain) else self.domain.convert(other)
            return Poly._raw([a * c for a in self.coeffs], self.domain)
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.domain)
        out = [self.domain.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if self.domain.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return Poly._raw(out, self.domain)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative power of a polynomial")
        result, base = Poly.one(self.domain), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        """Euclidean division; the domain must be a field."""
        other = self._coerce(other)
        if not other:
            raise DivisionByZeroError("polynomial division by zero")
        K = self.domain
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = K.one / other.lc
        quo = [K.zero] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if K.is_zero(c):
                continue
            q = c * inv_lc
            quo[k] = q
            for j, bj in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - q * bj
        return Poly._raw(quo, K), Poly._raw(rem[:db] if db > 0 else [], K)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exquo(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise DomainError(f"{other} does not divide {self}")
        return q

    def divides(self, other) -> bool:
        return not (other % self)

    def diff(self) -> "Poly":
        K = self.domain
        return Poly._raw([K.convert(i) * c for i, c in enumerate(self.coeffs)][1:], K)

    def integrate(self) -> "Poly":
        """Antiderivative with zero constant term (field domains)."""
        K = self.domain
        return Poly._raw([K.zero] + [c / K.convert(i + 1) for i, c in enumerate(self.coeffs)], K)

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        inv = self.domain.one / self.lc
        return Poly._raw([c * inv for c in self.coeffs], self.domain)

    def __call__(self, a):
        K = self.domain
        acc = K.zero
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly.zero(self.domain)
        for c in reversed(self.coeffs):
            acc = acc * other + Poly.const(c, self.domain)
        return acc

    def scale_variable(self, s) -> "Poly":
        """Return ``p(s * x)``."""
        K = self.domain
        s = s if _is_native(s, K) else K.convert(s)
        out, power = [], K.one
        for c in self.coeffs:
            out.append(c * power)
            power = power * s
        return Poly._raw(out, K)

    def map_coeffs(self, fn, domain) -> "Poly":
        return Poly._raw([fn(c) for c in self.coeffs], domain)

    def to_domain(self, domain) -> "Poly":
        if domain == self.domain:
            return self
        return Poly._raw([domain.convert_from(c, self.domain) for c in self.coeffs], domain)


def _is_native(c, domain) -> bool:
    try:
        return domain.of_type(c)
    except AttributeError:
        return False


class SquarefreeDecomposition(NamedTuple):
    """Monic pairwise-coprime squarefree factors with multiplicities.

    ``unit * prod(f**m)`` reconstructs the decomposed polynomial.
    """

    factors: tuple[tuple[Poly, int], ...]
    unit: object
    domain: object = QQ

    def expand(self) -> Poly:
        acc = Poly.const(self.unit, self.domain)
        for f, m in self.factors:
            acc = acc * f**m
        return acc


def _supports_prs(K) -> bool:
    return K == QQ or getattr(K, "is_FractionField", False)


def _primitive_ring_coeffs(p: Poly):
    """Clear denominators and content; return coefficients in the ground ring."""
    K = p.domain
    R = K.get_ring()
    dens = [K.denom(c) for c in p.coeffs]
    L = dens[0]
    for d in dens[1:]:
        L = R.lcm(L, d)
    cs = [K.numer(c) * R.exquo(L, d) for c, d in zip(p.coeffs, dens)]
    return _primitive(cs, R)


def _primitive(cs, R):
    g = R.zero
    for c in cs:
        g = R.gcd(g, c)
        if g == R.one:
            return cs
    return [R.exquo(c, g) for c in cs]


def _prem(a, b, R):
    """Pseudo-remainder of coefficient lists over the ring ``R``."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        la = a[-1]
        a = [c * lb for c in a]
        for j, bj in enumerate(b):
            a[k + j] = a[k + j] - la * bj
        a.pop()
        while a and R.is_zero(a[-1]):
            a.pop()
    return a


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; ``gcd(0, 0) = 0``.

    Over QQ and QQ(params) this runs a primitive pseudo-remainder sequence in
    the ground ring (ZZ or QQ[params]) so coefficients stay small; other
    fields use the monic Euclidean algorithm.
    """
    if a.domain != b.domain:
        raise DomainError("gcd of polynomials over different domains")
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    K = a.domain
    if a.degree == 0 or b.degree == 0:
        return Poly.one(K)
    if not _supports_prs(K):
        while b:
            a, b = b, a % b
        return a.monic()
    R = K.get_ring()
    A, B = _primitive_ring_coeffs(a), _primitive_ring_coeffs(b)
    if len(A) < len(B):
        A, B = B, A
    while len(B) > 1:
        rem = _prem(A, B, R)
        if not rem:
            A = B
            break
        A, B = B, _primitive(rem, R)
    else:
        return Poly.one(K)
    return Poly([K.convert_from(c, R) for c in A], K).monic()


def poly_gcdex(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(s, t, g)`` with ``s*a + t*b = g = gcd(a, b)`` (field domains)."""
    K = a.domain
    r0, r1 = a, b
    s0, s1 = Poly.one(K), Poly.zero(K)
    t0, t1 = Poly.zero(K), Poly.one(K)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return s0, t0, r0
    inv = K.one / r0.lc
    return s0 * inv, t0 * inv, r0 * inv


def solve_diophantine(a: Poly, b: Poly, c: Poly) -> tuple[Poly, Poly]:
    """Solve ``s*a + t*b = c`` with ``deg s < deg b`` for coprime ``a, b``."""
    s, t, g = poly_gcdex(a, b)
    if g.degree != 0:
        raise DomainError("solve_diophantine needs coprime polynomials")
    s, t = s * c, t * c
    if b.degree > 0:
        q, s = divmod(s, b)
        t = t + q * a
    return s, t


def squarefree_decompose(a: Poly) -> SquarefreeDecomposition:
    """Yun's algorithm (characteristic zero)."""
    if not a:
        raise DomainError("squarefree decomposition of the zero polynomial")
    K = a.domain
    unit = a.lc
    if a.degree == 0:
        return SquarefreeDecomposition((), unit, K)
    a = a.monic()
    d = a.diff()
    c = poly_gcd(a, d)
    w = a.exquo(c)
    y = d.exquo(c)
    z = y - w.diff()
    factors = []
    i = 1
    while w.degree > 0:
        g = poly_gcd(w, z)
        if g.degree > 0:
            factors.append((g, i))
        w = w.exquo(g)
        y = z.exquo(g)
        z = y - w.diff()
        i += 1
    return SquarefreeDecomposition(tuple(factors), unit, K)


def squarefree_part(a: Poly) -> Poly:
    if a.degree <= 0:
        return Poly.one(a.domain) if a else a
    return a.exquo(poly_gcd(a, a.diff())).monic()


def determinant(rows, K):
    """Fraction-free Bareiss determinant over an integral domain ``K``."""
    n = len(rows)
    if n == 0:
        return K.one
    m = [list(r) for r in rows]
    sign = 1
    prev = K.one
    for k in range(n - 1):
        if K.is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not K.is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return K.zero
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = K.exquo(m[i][j] * pivot - m[i][k] * m[k][j], prev)
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(a: Poly, b: Poly):
    """Rows of ``a`` first (``deg b`` of them), then rows of ``b``."""
    K = a.domain
    m, n = a.degree, b.degree
    size = m + n
    rows = []
    for i in range(n):
        row = [K.zero] * size
        for j, c in enumerate(reversed(a.coeffs)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [K.zero] * size
        for j, c in enumerate(reversed(b.coeffs)):
            row[i + j] = c
        rows.append(row)
    return rows


def resultant(a: Poly, b: Poly):
    """Resultant with respect to ``x`` as the Sylvester determinant.

    Sign convention: the rows built from ``a`` come first, so
    ``resultant(a, b) == lc(a)**deg(b) * prod(b(r) for r in roots(a))``;
    e.g. ``resultant(x - c, x - d) == c - d``.  Coefficients may live in any
    integral domain, which is how ``QQ[z]``-valued resultants are formed.
    """
    if a.domain != b.domain:
        raise DomainError("resultant of polynomials over different domains")
    if not a or not b:
        raise DomainError("resultant with the zero polynomial")
    return determinant(sylvester_matrix(a, b), a.domain)
