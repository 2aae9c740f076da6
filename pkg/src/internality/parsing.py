"""Expression parser and printers.

Grammar (``^`` binds tighter than unary minus, so ``-x^2`` is ``-(x^2)``)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := atom ('^' exponent)?
    exponent:= ['-' | '+'] INTEGER | '(' ['-' | '+'] INTEGER ')'
    atom    := INTEGER | NAME | '(' expr ')'

Exponents are integer literals; ``x^2^3`` is rejected rather than guessed.
Evaluation is delegated to an :class:`Algebra` so the same grammar feeds
rational functions in ``x`` and multivariate differential expressions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .algebra.coef import coef_field, coef_str, to_fraction
from .algebra.poly import Poly
from .algebra.ratfunc import RatFunc
from .errors import DivisionByZeroError, ParseError, UndeclaredIdentifierError

__all__ = ["Algebra", "parse_expression", "parse_ratfunc", "poly_to_str", "ratfunc_to_str"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            break
        if m.group(1):
            toks.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), src)
            toks.append(_Tok("op", ch, m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(src)))
    return toks


@dataclass
class Algebra:
    """Callbacks that give meaning to parsed syntax."""

    const: Callable[[Fraction], object]
    name: Callable[[str, int], object]


class _Parser:
    def __init__(self, src: str, algebra: Algebra):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0
        self.alg = algebra

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        if self.tok.text != text or self.tok.kind != "op":
            raise ParseError(f"expected {text!r}, found {self.tok.text or 'end of input'!r}", self.tok.pos, self.src)
        return self.advance()

    def parse(self):
        if self.tok.kind == "end":
            raise ParseError("empty expression", 0, self.src)
        value = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos, self.src)
        return value

    def expr(self):
        left = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            right = self.term()
            left = left + right if op == "+" else left - right
        return left

    def term(self):
        left = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance()
            right = self.unary()
            if op.text == "*":
                left = left * right
            else:
                if not right:
                    raise DivisionByZeroError(f"division by zero at position {op.pos}")
                left = left / right
        return left

    def unary(self):
        if self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            value = self.unary()
            return -value if op == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            caret = self.advance()
            n = self.exponent()
            if n < 0 and not base:
                raise DivisionByZeroError(f"negative power of zero at position {caret.pos}")
            base = base**n
            if self.tok.kind == "op" and self.tok.text == "^":
                raise ParseError("chained '^' is ambiguous; use parentheses", self.tok.pos, self.src)
        return base

    def exponent(self) -> int:
        paren = self.tok.kind == "op" and self.tok.text == "("
        if paren:
            self.advance()
        sign = 1
        if self.tok.kind == "op" and self.tok.text in "+-":
            sign = -1 if self.advance().text == "-" else 1
        if self.tok.kind != "int":
            raise ParseError("exponent must be an integer literal", self.tok.pos, self.src)
        n = sign * int(self.advance().text)
        if paren:
            self.expect(")")
        return n

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return self.alg.const(Fraction(int(t.text)))
        if t.kind == "name":
            self.advance()
            return self.alg.name(t.text, t.pos)
        if t.kind == "op" and t.text == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos, self.src)


def parse_expression(src: str, algebra: Algebra):
    return _Parser(src, algebra).parse()


def parse_ratfunc(src: str, params: Sequence[str] = ()) -> RatFunc:
    """Parse a rational function of ``x`` with the given declared parameters."""
    K = coef_field(params)
    gens = {p: K.convert(g) for p, g in zip(params, getattr(K, "gens", ()))}

    def name(ident: str, pos: int):
        if ident == "x":
            return RatFunc.x(K)
        if ident in gens:
            return RatFunc.const(gens[ident], K)
        raise UndeclaredIdentifierError(f"undeclared identifier {ident!r}", pos, src)

    return parse_expression(src, Algebra(const=lambda c: RatFunc.const(c, K), name=name))


def poly_to_str(p: Poly, var: str = "x") -> str:
    if not p:
        return "0"
    K = p.domain
    terms = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if K.is_zero(c):
            continue
        cs = _coef_text(c, K)
        neg = cs.startswith("-") and not _is_compound(cs[1:])
        if neg:
            cs = cs[1:]
        if i == 0:
            body = cs
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if cs == "1":
                body = mono
            elif _is_compound(cs):
                body = f"({cs})*{mono}"
            else:
                body = f"{cs}*{mono}"
        terms.append(("-" if neg else "+", body))
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _coef_text(c, K) -> str:
    if hasattr(K, "minpoly"):
        text = repr(c)
        return f"({text})" if _is_compound(text.lstrip("-")) else text
    if hasattr(K, "symbols") or K == coef_field(()):
        return coef_str(c, K)
    return str(c)


def _is_compound(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and i > 0 and ch in "+-":
            return True
        elif depth == 0 and ch == "/" and ("*" in s or "^" in s):
            return True
    return False


def ratfunc_to_str(h: RatFunc) -> str:
    n = poly_to_str(h.num)
    if h.den.degree == 0:
        return n
    d = poly_to_str(h.den)
    return f"({n})/({d})"


def fraction_str(q: Fraction) -> str:
    return str(to_fraction(q))
