import pytest
from hypothesis import given

from test_diffpoly import dpolys
from tropdiff.coefficients import RationalFunction, T
from tropdiff.diffpoly import DiffPolynomial, monomial
from tropdiff.textio import (ArityMismatch, IndexOutOfRange, ParseError, ZeroDenominator,
                             ZeroPeriod, parse_coefficient, parse_polynomial, parse_support,
                             parse_support_set, read_basis_lines)
from tropdiff.tropical import SupportSet


# -- polynomials --------------------------------------------------------------------

def test_running_example():
    f = parse_polynomial("D4(y) + D2(y) + D1(y)")
    assert f == DiffPolynomial.linear({(1, 4): 1, (1, 2): 1, (1, 1): 1}, 1)


def test_variable_coefficient():
    g = parse_polynomial("y + t*D1(y)")
    assert g.terms == {monomial((1, 0)): RationalFunction.constant(1), monomial((1, 1)): T}


def test_indexed_variables():
    assert parse_polynomial("y1*D2(y1) + D1(y1)") == parse_polynomial("y*y'' + y'")


@pytest.mark.parametrize("a, b", [
    ("D2(y)", "y''"),
    ("  D 2 ( y ) ", "D2(y)"),
    ("-y + 2*y", "y"),
    ("(t^2-1)/(t+2)*y", "(t-1)*(t+1)/(t+2)*y"),
    ("y^2*y'", "y*y*y'"),
    ("3/6*y", "1/2*y"),
    ("y/t", "1/t*y"),
    ("(y + y')*(y - y')", "y^2 - y'^2"),
    ("t^0*y", "y"),
])
def test_equivalent_spellings(a, b):
    assert parse_polynomial(a) == parse_polynomial(b)


def test_two_variables():
    p = parse_polynomial("y1*D3(y2) - t*y2", 2)
    assert p.n == 2
    assert monomial((1, 0), (2, 3)) in p.terms


def test_bare_y_needs_one_variable():
    with pytest.raises(ParseError):
        parse_polynomial("y + y1", 2)
    with pytest.raises(ParseError):
        parse_polynomial("y1'", 2)


def test_index_out_of_range_has_span():
    with pytest.raises(IndexOutOfRange) as err:
        parse_polynomial("y1 + D2(y3)", 2)
    e = err.value
    assert e.code == "IndexOutOfRange"
    start, end = e.span
    assert "y3" in "y1 + D2(y3)"[start:end]
    assert "^" in e.pretty()


def test_zero_denominator():
    with pytest.raises(ZeroDenominator):
        parse_polynomial("y/(t-t)")


@pytest.mark.parametrize("bad", ["", "y +", "D(y)", "y**2", "3 y", "y/y'", "(y", "y^-1", "x"])
def test_syntax_errors(bad):
    with pytest.raises(ParseError) as err:
        parse_polynomial(bad)
    lo, hi = err.value.span
    # an error at end of input points one column past the text
    assert 0 <= lo <= hi <= len(bad) + 1


def test_parse_error_is_a_syntax_error():
    assert issubclass(ParseError, SyntaxError)


def test_coefficients():
    assert parse_coefficient("(t^2-1)/(t+2)") == RationalFunction([-1, 0, 1], [2, 1])
    with pytest.raises(ParseError):
        parse_coefficient("y*t")


@given(dpolys())
def test_round_trip(p):
    assert parse_polynomial(str(p), 2) == p


@pytest.mark.parametrize("text", [
    "D4(y1) + D2(y1) + D1(y1)", "t*D1(y1) + y1", "y1*D2(y1) + D1(y1)",
    "(t^2 - 1)/(t + 2)*D1(y1)", "-1/3*D13(y1) + 2/3*D9(y1)", "3/2",
])
def test_fixture_round_trip(text):
    p = parse_polynomial(text)
    assert str(p) == text
    assert parse_polynomial(str(p)) == p


# -- supports ------------------------------------------------------------------------

@pytest.mark.parametrize("text, expected", [
    ("4N", SupportSet.progression(0, 4)),
    ("1+2N", SupportSet.progression(1, 2)),
    ("{0,2,4}", SupportSet.of([0, 2, 4])),
    ("N", SupportSet.progression(0, 1)),
    ("{0, 1} u 3+5N", SupportSet((0, 1), 3, 5)),
    ("{}", SupportSet.of([])),
])
def test_support_sets(text, expected):
    assert parse_support_set(text) == expected


def test_support_profile():
    prof = parse_support("4N, 1+2N", 2)
    assert prof.sets == (SupportSet.progression(0, 4), SupportSet.progression(1, 2))
    assert str(prof) == "4N, 1+2N"


def test_support_errors():
    with pytest.raises(ZeroPeriod):
        parse_support("2+0N")
    with pytest.raises(ArityMismatch):
        parse_support("N, N", 1)
    with pytest.raises(ArityMismatch):
        parse_support("N", 2)
    with pytest.raises(ParseError):
        parse_support("{0,2")
    with pytest.raises(ParseError):
        parse_support("M")


# -- basis files -------------------------------------------------------------------------

def test_basis_lines_strip_comments():
    content = "# running example\nD4(y) + D2(y) + D1(y)\n\n  D9(y) + 3*D2(y) # b2\n"
    lines = read_basis_lines(content, "basis.txt")
    assert [ln.text.strip() for ln in lines] == ["D4(y) + D2(y) + D1(y)", "D9(y) + 3*D2(y)"]
    assert "basis.txt" in lines[1].origin and "4" in lines[1].origin
