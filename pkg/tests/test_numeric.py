import decimal
from decimal import Decimal
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import ln
from pythec.numeric import (GUARD_DIGITS, Real, ZeroDenominatorError, decimal_context, format_rational,
                            is_integral, log_real, rational_reduce, to_rational, working_digits)

ints = st.integers(min_value=-10**30, max_value=10**30)
nonzero = ints.filter(bool)
rationals = st.fractions(max_denominator=10**12).filter(lambda q: abs(q) < 10**15)


@pytest.mark.parametrize("num,den,expected", [
    (8, 64, Fraction(1, 8)),
    (-55, -64, Fraction(55, 64)),
    (73, 64, Fraction(73, 64)),
    (5, -10, Fraction(-1, 2)),
])
def test_rational_reduce_examples(num, den, expected):
    q = rational_reduce(num, den)
    assert q == expected and q.denominator > 0


def test_rational_reduce_zero_denominator():
    with pytest.raises(ZeroDenominatorError):
        rational_reduce(1, 0)


@given(ints, nonzero)
def test_reduce_is_idempotent_and_canonical(n, d):
    q = rational_reduce(n, d)
    assert rational_reduce(q.numerator, q.denominator) == q
    assert q.denominator > 0
    assert Fraction(n) / d == q


@given(rationals, rationals, rationals)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * (1 / a) == 1


@pytest.mark.parametrize("q,expected", [(Fraction(25, 9), False), (Fraction(15), True), (Fraction(0), True)])
def test_is_integral(q, expected):
    assert is_integral(q) is expected


@pytest.mark.parametrize("text,value", [
    ("-49/10", Fraction(-49, 10)),
    ("7/29", Fraction(7, 29)),
    ("0.25", Fraction(1, 4)),
    ("-1.5", Fraction(-3, 2)),
    ("−49/10", Fraction(-49, 10)),
    (3, Fraction(3)),
])
def test_to_rational(text, value):
    assert to_rational(text) == value


@pytest.mark.parametrize("bad", ["1/0", "abc", "", "1/2/3"])
def test_to_rational_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        to_rational(bad)


def test_format_rational():
    assert format_rational(Fraction(-49, 10)) == "-49/10"
    assert format_rational(Fraction(15)) == "15"


@given(rationals)
def test_format_roundtrip(q):
    assert to_rational(format_rational(q)) == q


def test_log_real_examples():
    assert log_real(1).value == 0
    two, four = log_real(2), log_real(4)
    with decimal.localcontext(decimal_context(100)):
        assert abs(2 * two.value - four.value) <= 2 * two.error + four.error
    val = log_real(225)
    assert str(val.value).startswith("5.4161004022")


@given(st.fractions(min_value=Fraction(1, 10**20), max_value=10**20, max_denominator=10**20))
def test_log_real_against_mpmath(q):
    if q <= 0:
        return
    r = log_real(q, 40)
    assert r.error <= Decimal(10) ** (-40)
    with mpmath.workdps(90):
        assert abs(mpmath.mpf(str(r.value)) - ln(q, 90)) <= mpmath.mpf(str(r.error))


def test_log_real_rejects_nonpositive():
    with pytest.raises(ValueError):
        log_real(0)
    with pytest.raises(ValueError):
        log_real(Fraction(-1, 2))


@given(rationals, rationals)
def test_real_bounds_compose(x, y):
    # computed at precision 15, checked against exact rational results
    a, b = Real.exact(x, 15), Real.exact(y, 15)
    assert (a + b).contains(x + y)
    assert (a - b).contains(x - y)
    assert (a * b).contains(x * y)
    if y:
        assert (a / b).contains(x / y)
    s = a + b
    assert s.error <= a.error + b.error + Decimal(10) ** (-15 - GUARD_DIGITS + 1) * max(1, abs(s.value))


@given(rationals)
def test_negation_keeps_all_digits(x):
    a = Real.exact(x, 60)
    assert (-a).value == a.value.copy_negate()
    assert (-(-a)).value == a.value
    assert abs(a).value == a.value.copy_abs()


def test_working_digits_and_default_precision():
    assert working_digits(50) == 50 + GUARD_DIGITS
    assert Real.exact(1).precision >= 50
