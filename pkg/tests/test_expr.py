import math
from fractions import Fraction

import pytest

from webcheck.errors import ParseError, UnsupportedExpression
from webcheck.expr import Num, parse, parse_profile
from webcheck.polycore import Jet1


def test_exp_square_value_at_zero():
    node = parse_profile("exp(t^2)")
    assert node.evaluate({"t": 0}) == 1


def test_constant_profile():
    node = parse_profile("2")
    assert isinstance(node, Num)
    assert node.evaluate({"t": Fraction(7, 3)}) == 2


def test_syntax_error_offset():
    with pytest.raises(ParseError) as info:
        parse_profile("t*(1+")
    assert info.value.offset == 5


@pytest.mark.parametrize("text", ["sin(t)", "x", "1 +* 2", "(t", "t)"])
def test_rejects_malformed(text):
    with pytest.raises(ParseError):
        parse_profile(text)


def test_non_constant_exponent():
    with pytest.raises(UnsupportedExpression):
        parse_profile("t^t")


def test_precedence_and_unary_minus():
    assert parse_profile("-t^2").evaluate({"t": 3}) == -9
    assert parse_profile("2^-1").evaluate({"t": 0}) == Fraction(1, 2)
    assert parse_profile("1+2*t/4").evaluate({"t": 2}) == 2
    assert parse_profile("2^3^2").evaluate({"t": 0}) == 512


def test_exact_rational_evaluation():
    assert parse_profile("(t+1)/(t-1)").evaluate({"t": Fraction(1, 3)}) == -2


def test_jet_evaluation_to_order_five():
    j = parse_profile("exp(t^2)").evaluate({"t": Jet1.variable(1.0, 5)})
    # derivatives of e^{t^2}: e(1), 2te, (2+4t^2)e, (12t+8t^3)e at t = 1
    e = math.e
    for n, ref in enumerate([e, 2 * e, 6 * e, 20 * e]):
        assert abs(j.derivative(n) - ref) < 1e-12 * ref


def test_log_and_decimal_literals():
    v = parse_profile("log(t) + 0.5").evaluate({"t": 1.0})
    assert v == 0.5


def test_multivariate_parse():
    node = parse("x*y - 1", ("x", "y"))
    assert node.evaluate({"x": 2, "y": 3}) == 5
