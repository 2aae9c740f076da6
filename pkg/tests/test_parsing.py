import pytest
from hypothesis import given

from internality.algebra import Poly, RatFunc, coef_field
from internality.algebra.coef import coef_str
from internality.errors import DivisionByZeroError, ParseError, UndeclaredIdentifierError
from internality.parsing import parse_ratfunc, ratfunc_to_str

from .strategies import q, ratfuncs

x = Poly.x()


def test_quotient():
    h = parse_ratfunc("(x^2+1)/(x-2)")
    assert h.num == x**2 + 1 and h.den == x - 2


def test_rational_coefficient():
    assert parse_ratfunc("1/2*x^2 + x") == RatFunc.from_poly(x**2 * q("1/2") + x)


def test_parameter_declared():
    K = coef_field(("t",))
    h = parse_ratfunc("t*x^2", ("t",))
    assert h.domain == K and h.num == Poly([K.zero, K.zero, K.gens[0]], K)


def test_parameter_undeclared():
    with pytest.raises(UndeclaredIdentifierError) as info:
        parse_ratfunc("t*x^2")
    assert info.value.position == 0
    assert info.value.code == "undeclared-identifier"


def test_unary_minus_binds_looser_than_power():
    assert parse_ratfunc("-x^2") == RatFunc.from_poly(-(x**2))
    assert parse_ratfunc("(-x)^2") == RatFunc.from_poly(x**2)


def test_negative_exponent():
    assert parse_ratfunc("x^-2") == parse_ratfunc("1/x^2") == parse_ratfunc("x^(-2)")


@pytest.mark.parametrize("src, pos", [("x^2+", 4), ("x**2", 2), ("(x+1", 4), ("x^2^3", 3), ("x $ 1", 2)])
def test_syntax_errors_carry_position(src, pos):
    with pytest.raises(ParseError) as info:
        parse_ratfunc(src)
    assert info.value.position == pos
    assert f"position {pos}" in str(info.value)


@pytest.mark.parametrize("src", ["1/0", "x/(x-x)", "1/(2-2)^3"])
def test_division_by_zero(src):
    with pytest.raises(DivisionByZeroError):
        parse_ratfunc(src)


def test_x_cannot_be_a_parameter():
    with pytest.raises(ValueError):
        parse_ratfunc("x", ("x",))


@given(ratfuncs(max_degree=5))
def test_print_parse_roundtrip(h):
    assert parse_ratfunc(str(h)) == h
    assert parse_ratfunc(ratfunc_to_str(h)) == h


@pytest.mark.parametrize(
    "src",
    ["t*x^2 + x", "(t^2 - s)/(2*t)*x + 1", "x/(t*x + s)", "-t*x^3 + (1/3)*s*x - t*s", "(t + 1)/(t - 1)"],
)
def test_parametric_roundtrip(src):
    params = ("t", "s")
    h = parse_ratfunc(src, params)
    assert parse_ratfunc(str(h), params) == h
    for c in h.num.coeffs:
        assert parse_ratfunc(coef_str(c, h.domain), params) == RatFunc.const(c, h.domain)
