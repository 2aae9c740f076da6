"""Derivations on finitely generated differential fields.

A :class:`DiffContext` is a purely transcendental field ``QQ(params)(g1, ..., gn)``
together with a derivation given on each generator; parameters are constants.
Elements are kept as reduced multivariate fractions (sympy sparse
``FracElement``), so an identity holds exactly when the difference of its two
sides normalizes to zero.

Second-order relations are expressed first-order: introduce ``w`` with
``v' = w`` and give ``w'`` by the relation.

    >>> ctx = DiffContext({"x": "x^2"})
    >>> ctx.derive("-1/x") == ctx.expr("1")
    True
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from sympy import QQ
from sympy.polys.fields import field as _sparse_field

from .errors import ContextError, UndeclaredIdentifierError, VerificationError
from .parsing import Algebra, parse_expression

__all__ = [
    "DiffContext",
    "DiffExpr",
    "derive",
    "verify_identity",
    "wronskian",
    "riccati_context",
    "verify_cross_ratio",
    "verify_footnote_factor",
    "second_order_relation",
    "verify_log_system_witness",
]


class DiffExpr:
    """An element of a :class:`DiffContext`'s field."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: "DiffContext", value):
        self.ctx = ctx
        self.value = value

    def _other(self, o) -> "DiffExpr":
        if isinstance(o, DiffExpr):
            if o.ctx is not self.ctx:
                raise ContextError("expressions belong to different differential contexts")
            return o
        return self.ctx.coerce(o)

    def __add__(self, o):
        return DiffExpr(self.ctx, self.value + self._other(o).value)

    __radd__ = __add__

    def __sub__(self, o):
        return DiffExpr(self.ctx, self.value - self._other(o).value)

    def __rsub__(self, o):
        return DiffExpr(self.ctx, self._other(o).value - self.value)

    def __mul__(self, o):
        return DiffExpr(self.ctx, self.value * self._other(o).value)

    __rmul__ = __mul__

    def __truediv__(self, o):
        d = self._other(o).value
        if not d:
            raise ZeroDivisionError("division by zero expression")
        return DiffExpr(self.ctx, self.value / d)

    def __rtruediv__(self, o):
        return self._other(o) / self

    def __neg__(self):
        return DiffExpr(self.ctx, -self.value)

    def __pow__(self, n: int):
        return DiffExpr(self.ctx, self.value**n)

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, o):
        try:
            return self.value == self._other(o).value
        except (ContextError, TypeError):
            return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def is_zero(self) -> bool:
        return not self.value

    def numerator(self) -> "DiffExpr":
        return DiffExpr(self.ctx, self.ctx.field(self.value.numer))

    def denominator(self) -> "DiffExpr":
        return DiffExpr(self.ctx, self.ctx.field(self.value.denom))

    def __str__(self):
        return str(self.value.as_expr()).replace("**", "^")

    __repr__ = __str__


class DiffContext:
    """Generators with a total derivation table, over ``QQ(params)``.

    ``derivations`` maps each generator name to its derivative, given as an
    expression string, a number, or a :class:`DiffExpr` of this context.
    ``bindings`` names constants (numbers, or expressions in the parameters)
    that may appear in any parsed expression, e.g. ``{"a2": Fraction(1, 2)}``.
    """

    def __init__(self, derivations: Mapping[str, object], params: Sequence[str] = (), bindings=None):
        self.generators = tuple(derivations)
        self.params = tuple(params)
        names = self.generators + self.params
        if len(set(names)) != len(names):
            raise ContextError(f"generator and parameter names must be distinct: {names}")
        if not self.generators:
            raise ContextError("a differential context needs at least one generator")
        F, *syms = _sparse_field(",".join(names), QQ)
        self.field = F
        self._symbols = dict(zip(names, syms))
        self._bindings = {}
        for nm, val in (bindings or {}).items():
            if nm in self._symbols:
                raise ContextError(f"binding {nm!r} shadows a generator or parameter")
            e = self.coerce(val)
            if any(e.value.numer.diff(i) or e.value.denom.diff(i) for i in range(len(self.generators))):
                raise ContextError(f"binding {nm!r} must be a constant")
            self._bindings[nm] = e.value
        self._table = tuple(self.coerce(derivations[g]).value for g in self.generators)

    def __repr__(self):
        table = ", ".join(f"{g}'={self.derivation_of(g)}" for g in self.generators)
        return f"DiffContext({table}; params={list(self.params)})"

    def __getitem__(self, name: str) -> DiffExpr:
        if name in self._symbols:
            return DiffExpr(self, self._symbols[name])
        if name in self._bindings:
            return DiffExpr(self, self._bindings[name])
        raise ContextError(f"undeclared name {name!r}")

    def derivation_of(self, name: str) -> DiffExpr:
        try:
            return DiffExpr(self, self._table[self.generators.index(name)])
        except ValueError:
            raise ContextError(f"{name!r} is not a generator") from None

    def const(self, q) -> DiffExpr:
        q = Fraction(q)
        return DiffExpr(self, self.field(QQ(q.numerator, q.denominator)))

    def expr(self, src: str) -> DiffExpr:
        def name(ident: str, pos: int):
            if ident not in self._symbols and ident not in self._bindings:
                raise ContextError(str(UndeclaredIdentifierError(f"undeclared name {ident!r}", pos)))
            return self[ident]

        return parse_expression(src, Algebra(const=self.const, name=name))

    def coerce(self, value) -> DiffExpr:
        """Accept a DiffExpr, expression string, number, or sympy constant-field element."""
        if isinstance(value, DiffExpr):
            if value.ctx is not self:
                raise ContextError("expression belongs to a different context")
            return value
        if isinstance(value, str):
            return self.expr(value)
        if isinstance(value, (int, Fraction)):
            return self.const(value)
        if hasattr(value, "numer") and hasattr(value, "denom") and hasattr(value, "field"):
            return self._from_sparse(value.numer) / self._from_sparse(value.denom)
        try:
            return self.const(Fraction(int(value.numerator), int(value.denominator)))
        except AttributeError:
            raise TypeError(f"cannot use {value!r} in a differential context") from None

    def _from_sparse(self, p) -> DiffExpr:
        names = [str(s) for s in p.ring.symbols]
        acc = self.field.zero
        for monom, c in p.terms():
            term = self.field(c)
            for nm, e in zip(names, monom):
                if e:
                    if nm not in self._symbols:
                        raise ContextError(f"undeclared name {nm!r}")
                    term *= self._symbols[nm] ** e
            acc += term
        return DiffExpr(self, acc)

    def _derive_poly(self, p):
        acc = self.field.zero
        for i, d in enumerate(self._table):
            dp = p.diff(i)
            if dp:
                acc += d * self.field(dp)
        return acc

    def derive(self, e) -> DiffExpr:
        e = self.coerce(e)
        v = e.value
        if not v:
            return e
        n, d = v.numer, v.denom
        dn = self._derive_poly(n)
        if d.is_ground:
            return DiffExpr(self, dn / self.field(d))
        dd = self._derive_poly(d)
        return DiffExpr(self, (dn * self.field(d) - self.field(n) * dd) / self.field(d * d))


def derive(ctx: DiffContext, e) -> DiffExpr:
    """Apply the context's derivation (chain rule through the table)."""
    return ctx.derive(e)


def verify_identity(ctx: DiffContext, lhs, rhs) -> bool:
    return (ctx.coerce(lhs) - ctx.coerce(rhs)).is_zero()


def _field_det(rows):
    """Gaussian elimination over a field of sparse fractions."""
    m = [list(r) for r in rows]
    n = len(m)
    det = None
    sign = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return m[0][0] * 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        det = m[k][k] if det is None else det * m[k][k]
        for i in range(k + 1, n):
            if m[i][k]:
                r = m[i][k] / m[k][k]
                for j in range(k, n):
                    m[i][j] = m[i][j] - r * m[k][j]
    return det if sign > 0 else -det


def wronskian(ctx: DiffContext, elems: Sequence) -> DiffExpr:
    """Determinant whose row ``i`` holds the ``i``-th derivatives of ``elems``."""
    elems = [ctx.coerce(e) for e in elems]
    if not elems:
        raise ValueError("wronskian of an empty list")
    rows = [elems]
    for _ in range(len(elems) - 1):
        rows.append([ctx.derive(e) for e in rows[-1]])
    return DiffExpr(ctx, _field_det([[e.value for e in row] for row in rows]))


def _riccati_bindings(a0, a1, a2, params):
    """Coefficients left as ``None`` become parameters ``a0``, ``a1``, ``a2``."""
    params = list(params)
    bindings = {}
    for name, a in (("a0", a0), ("a1", a1), ("a2", a2)):
        if a is None:
            if name not in params:
                params.append(name)
            continue
        if hasattr(a, "field") and hasattr(a, "numer"):
            params.extend(str(s) for s in a.field.symbols if str(s) not in params)
        if name in params:
            raise ContextError(f"{name!r} is declared as a parameter and also given a value")
        bindings[name] = a
    return bindings, params


def riccati_context(a0=None, a1=None, a2=None, *, solutions=("x", "x1", "x2", "x3"), params=(), extra=None):
    """Context where every name in ``solutions`` solves ``x' = a2 x^2 + a1 x + a0``.

    ``extra`` adds further generators; their derivations may mention ``a0``,
    ``a1``, ``a2``.
    """
    bindings, params = _riccati_bindings(a0, a1, a2, params)
    table = {s: f"a2*{s}^2 + a1*{s} + a0" for s in solutions}
    table.update(extra or {})
    ctx = DiffContext(table, params, bindings)
    return ctx, (ctx["a0"], ctx["a1"], ctx["a2"])


def cross_ratio(ctx: DiffContext, x="x", x1="x1", x2="x2", x3="x3") -> DiffExpr:
    X, X1, X2, X3 = (ctx[n] for n in (x, x1, x2, x3))
    return (X - X2) * (X3 - X1) / ((X - X1) * (X3 - X2))


def verify_cross_ratio(a0=None, a1=None, a2=None, params=()) -> bool:
    """Exact check that the cross-ratio of four Riccati solutions is a first integral.

    Also checks that ``x`` is recovered from ``x1, x2, x3`` and the constant.
    """
    ctx, _ = riccati_context(a0, a1, a2, params=params)
    c = cross_ratio(ctx)
    if not ctx.derive(c).is_zero():
        return False
    X, X1, X2, X3 = (ctx[n] for n in ("x", "x1", "x2", "x3"))
    rebuilt = (X2 * (X3 - X1) + c * X1 * (X2 - X3)) / ((X3 - X1) + c * (X2 - X3))
    return verify_identity(ctx, X, rebuilt)


def verify_footnote_factor(a0=None, a1=None, a2=None, params=()) -> DiffExpr:
    """Common logarithmic derivative of ``(x-x2)(x3-x1)`` and ``(x-x1)(x3-x2)``.

    Both products solve ``y' = h y`` for the same ``h`` (symbolically
    ``a2*(x + x1 + x2 + x3) + 2*a1``); raises :class:`VerificationError` if
    the second product does not share it.
    """
    ctx, _ = riccati_context(a0, a1, a2, params=params)
    X, X1, X2, X3 = (ctx[n] for n in ("x", "x1", "x2", "x3"))
    first = (X - X2) * (X3 - X1)
    second = (X - X1) * (X3 - X2)
    h = ctx.derive(first) / first
    if not verify_identity(ctx, ctx.derive(second), h * second):
        raise VerificationError("the two products do not share a logarithmic derivative")
    return h


def second_order_relation(a0=None, a1=None, a2=None, params=()) -> tuple[DiffExpr, DiffExpr]:
    """Return ``(v'', a1*v' - a2*a0*v)`` in the context ``v' = -a2 x v``."""
    ctx, (A0, A1, A2) = riccati_context(a0, a1, a2, solutions=("x",), params=params, extra={"v": "-a2*x*v"})
    v = ctx["v"]
    dv = ctx.derive(v)
    return ctx.derive(dv), A1 * dv - A2 * A0 * v


def verify_log_system_witness(a0, a1, a2, params=()) -> dict[str, bool]:
    """Exact checks behind the converse construction for ``x' = f(x), y' = x y``.

    ``a2`` must be a nonzero rational ``m1/m2``.  Returns one boolean per
    relation: the algebraic relation ``v^m2 = y^(-m1)`` is compatible with the
    derivation, ``a2 x`` solves the transformed Riccati equation, ``v`` obeys
    the second-order relation, three solutions of that relation have zero
    Wronskian, and ``x = -v'/(a2 v)``.
    """
    q = Fraction(a2)
    if q == 0:
        raise ValueError("a2 must be nonzero")
    m1, m2 = q.numerator, q.denominator
    ctx, (A0, A1, A2) = riccati_context(
        a0, a1, q, solutions=("x",), params=params, extra={"y": "x*y", "v": "-a2*x*v"}
    )
    X, Y, V = ctx["x"], ctx["y"], ctx["v"]
    checks = {}
    checks["v^m2*y^m1 is constant"] = ctx.derive(V**m2 * Y**m1).is_zero()
    checks["(a2 x)' = (a2 x)^2 + a1 (a2 x) + a2 a0"] = verify_identity(
        ctx, ctx.derive(A2 * X), (A2 * X) ** 2 + A1 * (A2 * X) + A2 * A0
    )
    dv = ctx.derive(V)
    checks["v'' = a1 v' - a2 a0 v"] = verify_identity(ctx, ctx.derive(dv), A1 * dv - A2 * A0 * V)
    checks["x = -v'/(a2 v)"] = verify_identity(ctx, X, -dv / (A2 * V))

    rel = {}
    for s in ("", "1", "2"):
        rel[f"v{s}"] = f"w{s}"
        rel[f"w{s}"] = f"a1*w{s} - a2*a0*v{s}"
    bindings, lin_params = _riccati_bindings(a0, a1, q, params)
    lin = DiffContext(rel, lin_params, bindings)
    checks["wronskian(v, v1, v2) = 0"] = wronskian(lin, [lin["v"], lin["v1"], lin["v2"]]).is_zero()
    return checks
