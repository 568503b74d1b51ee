"""Naive and canonical heights and the height pairing."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache

from ..curve import INFINITY, Curve, CurvePoint, add, integralize, scalar_mul
from ..factor import FactorizationTimeout
from ..numeric import (DEFAULT_PRECISION, Real, round_up, ulp, decimal_context, log_real,
                       working_digits)
from .local import archimedean_height, nonarchimedean_coefficient, singular_reduction_primes
from .minimal import global_minimal_model


class HeightError(ArithmeticError):
    pass


class Normalization(str, enum.Enum):
    """``BSD``: h(P) ~ log max(|num x|, |den x|).  ``HALF``: half of that."""

    BSD = "bsd"
    HALF = "half"

    @property
    def factor(self) -> Fraction:
        return Fraction(1) if self is Normalization.BSD else Fraction(1, 2)


@dataclass(frozen=True)
class HeightValue:
    value: Real
    curve: Curve
    point: CurvePoint
    normalization: Normalization = Normalization.BSD

    @property
    def precision(self) -> int:
        return self.value.precision

    def __float__(self) -> float:
        return float(self.value)


def naive_height(P: CurvePoint, precision: int = DEFAULT_PRECISION) -> Real:
    """``log max(|num x|, |den x|)`` of the x-coordinate."""
    if P is INFINITY:
        raise ValueError("naive height of the point at infinity")
    return log_real(max(abs(P.x.numerator), P.x.denominator), precision)


def _is_torsion(E: Curve, P: CurvePoint) -> bool:
    # torsion points are integral on an integral model, so test that first
    M = integralize(E)
    Q = M.map_point(P)
    if not Q.is_integral():
        return False
    R = P
    for _ in range(12):
        if R is INFINITY:
            return True
        R = add(E, R, P)
    return R is INFINITY


@lru_cache(maxsize=4096)
def _height_bsd(E: Curve, P: CurvePoint, precision: int, budget: float | None) -> Real:
    digits = working_digits(precision)
    if _is_torsion(E, P):
        return Real(Decimal(0), Decimal(0), precision)
    M = integralize(E)
    Q = M.map_point(P)
    try:
        mm = global_minimal_model(M.curve)
        x, y = mm.iso.apply(Q)
        W = mm.model
        arch, arch_err = archimedean_height(W, x, digits)
        bad = singular_reduction_primes(W, x, y, budget)
    except FactorizationTimeout as exc:
        raise HeightError(f"discriminant factorization budget exceeded: {exc}") from exc
    ctx = decimal_context(digits + 5)
    total = ctx.add(arch, ctx.ln(Decimal(x.denominator)))
    err = arch_err
    for p in bad:
        # log den(x) already counts max(0, -v_p(x)) = 0 here
        coeff = nonarchimedean_coefficient(W, x, y, p)
        if coeff:
            term = ctx.divide(ctx.multiply(Decimal(coeff.numerator), ctx.ln(Decimal(p))),
                              Decimal(coeff.denominator))
            total = ctx.add(total, term)
    err += Decimal(10) ** (-(digits + 2)) * (len(bad) + 2)
    if total < -err:
        raise HeightError(f"negative canonical height {total} for {P!r}")
    value = decimal_context(digits).plus(total)
    return Real(value, round_up(err) + ulp(value, digits), precision)


def canonical_height(E: Curve, P: CurvePoint, precision: int = DEFAULT_PRECISION, *,
                     normalization: Normalization | str = Normalization.BSD,
                     budget: float | None = None) -> HeightValue:
    """Canonical height of ``P`` to about ``precision`` decimal digits.

    Computed on a global minimal model as an archimedean Tate series plus
    closed-form contributions at primes where ``P`` reduces to the singular
    point.  Torsion points (order at most 12) get exactly zero.
    """
    if P is INFINITY:
        raise ValueError("canonical height of the point at infinity")
    if not E.contains(P):
        raise ValueError(f"{P!r} is not on {E}")
    norm = Normalization(normalization)
    value = _height_bsd(E, P, precision, budget)
    if norm is not Normalization.BSD:
        value = value * Real.exact(norm.factor, precision)
    return HeightValue(value, E, P, norm)


def height_pairing(E: Curve, P: CurvePoint, Q: CurvePoint, precision: int = DEFAULT_PRECISION,
                   **kwargs) -> Real:
    """``<P, Q> = (h(P + Q) - h(P) - h(Q)) / 2``; ``<P, P> = h(P)``."""

    def h(R: CurvePoint) -> Real:
        if R is INFINITY:
            return Real(Decimal(0), Decimal(0), precision)
        return canonical_height(E, R, precision, **kwargs).value

    if P == Q:
        return h(P)
    return (h(add(E, P, Q)) - h(P) - h(Q)) / 2


def height_of_multiple(E: Curve, n: int, P: CurvePoint, precision: int = DEFAULT_PRECISION) -> Real:
    return canonical_height(E, scalar_mul(E, n, P), precision).value
