"""Exact rationals and decimal reals with error radii.

Rationals are :class:`fractions.Fraction`, which already keeps values in
lowest terms with a positive denominator.  Reals are :class:`Real`, a
:class:`decimal.Decimal` value carried together with an absolute error
radius and the decimal precision it was requested at.
"""
from __future__ import annotations

import decimal
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Union

Rational = Fraction

#: Extra decimal digits used on every composite computation.
GUARD_DIGITS = 10
DEFAULT_PRECISION = 50

RationalLike = Union[Fraction, int, str]


class ZeroDenominatorError(ZeroDivisionError, ValueError):
    pass


def rational_reduce(num: int, den: int) -> Fraction:
    """Return ``num/den`` in lowest terms with a positive denominator."""
    if den == 0:
        raise ZeroDenominatorError(f"zero denominator in {num}/{den}")
    return Fraction(int(num), int(den))


def is_integral(q: Fraction) -> bool:
    return Fraction(q).denominator == 1


def to_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-49/10"`` or ``"0.25"``.

    Decimal strings are converted exactly, never through a float.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip().replace("−", "-")
        try:
            return Fraction(text)
        except ZeroDivisionError as exc:
            raise ZeroDenominatorError(f"zero denominator in {value!r}") from exc
        except ValueError as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def format_rational(q: Fraction) -> str:
    """Serialize as ``"num/den"``, or ``"n"`` when integral."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def working_digits(precision: int) -> int:
    return precision + GUARD_DIGITS


def decimal_context(digits: int) -> decimal.Context:
    return decimal.Context(prec=digits, Emax=decimal.MAX_EMAX, Emin=decimal.MIN_EMIN)


def fraction_to_decimal(q: Fraction, digits: int) -> Decimal:
    ctx = decimal_context(digits)
    return ctx.divide(Decimal(q.numerator), Decimal(q.denominator))


@dataclass(frozen=True)
class Real:
    """A decimal approximation ``value`` with ``|true - value| <= error``.

    ``precision`` is the number of decimal digits the caller asked for;
    values are computed with :data:`GUARD_DIGITS` more.
    """

    value: Decimal
    error: Decimal
    precision: int = DEFAULT_PRECISION

    @classmethod
    def exact(cls, q: RationalLike, precision: int = DEFAULT_PRECISION) -> "Real":
        q = to_rational(q)
        digits = working_digits(precision)
        value = fraction_to_decimal(q, digits)
        err = Decimal(0) if Fraction(value) == q else ulp(value, digits)
        return cls(value, err, precision)

    @property
    def _digits(self) -> int:
        return working_digits(self.precision)

    def _coerce(self, other) -> "Real":
        if isinstance(other, Real):
            return other
        return Real.exact(to_rational(other) if not isinstance(other, Decimal) else Fraction(other), self.precision)

    def __add__(self, other) -> "Real":
        other = self._coerce(other)
        prec = min(self.precision, other.precision)
        ctx = decimal_context(working_digits(prec))
        value = ctx.add(self.value, other.value)
        return Real(value, self.error + other.error + ulp(value, ctx.prec), prec)

    __radd__ = __add__

    def __neg__(self) -> "Real":
        return Real(self.value.copy_negate(), self.error, self.precision)

    def __sub__(self, other) -> "Real":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Real":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Real":
        other = self._coerce(other)
        prec = min(self.precision, other.precision)
        ctx = decimal_context(working_digits(prec))
        value = ctx.multiply(self.value, other.value)
        err = (abs(self.value) * other.error + abs(other.value) * self.error
               + self.error * other.error)
        return Real(value, round_up(err) + ulp(value, ctx.prec), prec)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Real":
        other = self._coerce(other)
        prec = min(self.precision, other.precision)
        ctx = decimal_context(working_digits(prec))
        if other.value.copy_abs() <= other.error:
            raise ZeroDivisionError("divisor interval contains zero")
        value = ctx.divide(self.value, other.value)
        denom = abs(other.value) - other.error
        err = (self.error + abs(value) * other.error) / denom
        return Real(value, round_up(err) + ulp(value, ctx.prec), prec)

    def __abs__(self) -> "Real":
        return Real(self.value.copy_abs(), self.error, self.precision)

    def __float__(self) -> float:
        return float(self.value)

    def contains(self, q: RationalLike) -> bool:
        return abs(Fraction(self.value) - to_rational(q)) <= Fraction(self.error)

    def is_certainly_nonzero(self) -> bool:
        return self.value.copy_abs() > self.error

    def to_string(self, digits: int | None = None) -> str:
        """Round to ``digits`` significant digits (default: ``precision``)."""
        digits = digits or self.precision
        ctx = decimal_context(digits)
        out = ctx.plus(self.value)
        if out == 0:
            return "0"
        return format(out, "f") if -30 < out.adjusted() < 60 else str(out)

    def __str__(self) -> str:
        return self.to_string()


def ulp(value: Decimal, digits: int) -> Decimal:
    if value == 0:
        return Decimal(0)
    return Decimal(1).scaleb(value.adjusted() - digits + 1)


def round_up(err: Decimal) -> Decimal:
    # error radii only ever need a few significant digits
    ctx = decimal_context(6)
    ctx.rounding = decimal.ROUND_CEILING
    return ctx.plus(err)


def log_real(q: RationalLike, precision: int = DEFAULT_PRECISION) -> Real:
    """Natural logarithm of a positive rational with error below ``10**-precision``."""
    q = to_rational(q)
    if q <= 0:
        raise ValueError(f"logarithm of non-positive value {format_rational(q)}")
    if q == 1:
        return Real(Decimal(0), Decimal(0), precision)
    digits = working_digits(precision)
    ctx = decimal_context(digits)
    # ln is correctly rounded, so each term is off by at most half an ulp
    ln_num = ctx.ln(Decimal(q.numerator))
    ln_den = ctx.ln(Decimal(q.denominator))
    value = ctx.subtract(ln_num, ln_den)
    err = ulp(ln_num, digits) + ulp(ln_den, digits) + ulp(value, digits)
    return Real(value, err, precision)
