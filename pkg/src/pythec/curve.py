"""Curves ``y^2 = x^3 + a2*x^2 + a4*x + a6`` over the rationals and their group law."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Union

from .numeric import RationalLike, format_rational, to_rational


class SingularCurveError(ValueError):
    pass


class NotOnCurveError(ValueError):
    pass


class _Infinity:
    """The identity of the group; a singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())

    is_infinity = True


INFINITY = _Infinity()


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    is_infinity = False

    def __repr__(self) -> str:
        return f"({format_rational(self.x)}, {format_rational(self.y)})"

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1


CurvePoint = Union[Point, _Infinity]


@dataclass(frozen=True)
class Curve:
    a2: Fraction
    a4: Fraction
    a6: Fraction

    def __init__(self, a2: RationalLike = 0, a4: RationalLike = 0, a6: RationalLike = 0):
        object.__setattr__(self, "a2", to_rational(a2))
        object.__setattr__(self, "a4", to_rational(a4))
        object.__setattr__(self, "a6", to_rational(a6))
        if self.discriminant() == 0:
            raise SingularCurveError(f"singular curve {self}")

    def __str__(self) -> str:
        terms = ["y^2 = x^3"]
        for coeff, mono in ((self.a2, "x^2"), (self.a4, "x"), (self.a6, "")):
            if coeff:
                sign = "-" if coeff < 0 else "+"
                body = format_rational(abs(coeff))
                if mono and abs(coeff) == 1:
                    body = ""
                elif mono and coeff.denominator != 1:
                    body = f"({body})"
                terms.append(f"{sign} {body}{mono}")
        return " ".join(terms)

    def discriminant(self) -> Fraction:
        """Discriminant of the cubic: -4a^3c + a^2b^2 + 18abc - 4b^3 - 27c^2."""
        a, b, c = self.a2, self.a4, self.a6
        return -4 * a**3 * c + a**2 * b**2 + 18 * a * b * c - 4 * b**3 - 27 * c**2

    def rhs(self, x: Fraction) -> Fraction:
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def contains(self, P: CurvePoint) -> bool:
        return P is INFINITY or P.y * P.y == self.rhs(P.x)

    def point(self, x: RationalLike, y: RationalLike) -> Point:
        P = Point(to_rational(x), to_rational(y))
        if not self.contains(P):
            raise NotOnCurveError(f"{P!r} is not on {self}")
        return P

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in (self.a2, self.a4, self.a6))


def discriminant(E: Curve) -> Fraction:
    return E.discriminant()


def negate(E: Curve, P: CurvePoint) -> CurvePoint:
    if P is INFINITY:
        return P
    return Point(P.x, -P.y)


def add(E: Curve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P is INFINITY:
        return Q
    if Q is INFINITY:
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return INFINITY
        slope = (3 * P.x * P.x + 2 * E.a2 * P.x + E.a4) / (2 * P.y)
    else:
        slope = (Q.y - P.y) / (Q.x - P.x)
    x3 = slope * slope - E.a2 - P.x - Q.x
    return Point(x3, slope * (P.x - x3) - P.y)


def subtract(E: Curve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    return add(E, P, negate(E, Q))


def double(E: Curve, P: CurvePoint) -> CurvePoint:
    return add(E, P, P)


def scalar_mul(E: Curve, n: int, P: CurvePoint) -> CurvePoint:
    if n < 0:
        return negate(E, scalar_mul(E, -n, P))
    result: CurvePoint = INFINITY
    addend = P
    while n:
        if n & 1:
            result = add(E, result, addend)
        n >>= 1
        if n:
            addend = add(E, addend, addend)
    return result


@dataclass(frozen=True)
class IntegralModel:
    """``curve`` is ``source`` rescaled by ``(x, y) -> (u^2 x, u^3 y)``."""

    source: Curve
    curve: Curve
    u: int

    def map_point(self, P: CurvePoint) -> CurvePoint:
        if not self.source.contains(P):
            raise NotOnCurveError(f"{P!r} is not on {self.source}")
        if P is INFINITY:
            return P
        return Point(self.u**2 * P.x, self.u**3 * P.y)

    def unmap_point(self, P: CurvePoint) -> CurvePoint:
        if not self.curve.contains(P):
            raise NotOnCurveError(f"{P!r} is not on {self.curve}")
        if P is INFINITY:
            return P
        return Point(P.x / self.u**2, P.y / self.u**3)


def map_point(M: IntegralModel, P: CurvePoint) -> CurvePoint:
    return M.map_point(P)


def _min_root_exponent(den: int, k: int) -> int:
    """Smallest u > 0 with den | u**k."""
    from .factor import factorint

    u = 1
    for p, e in factorint(den).items():
        u *= p ** (-(-e // k))
    return u


def integralize(E: Curve) -> IntegralModel:
    """Rescale to integer coefficients with the smallest positive scale ``u``."""
    u = 1
    for coeff, weight in ((E.a2, 2), (E.a4, 4), (E.a6, 6)):
        if coeff.denominator != 1:
            u = lcm(u, _min_root_exponent(coeff.denominator, weight))
    if u == 1:
        return IntegralModel(E, E, 1)
    # per prime, the lcm keeps the largest exponent any coefficient needs
    scaled = Curve(E.a2 * u**2, E.a4 * u**4, E.a6 * u**6)
    return IntegralModel(E, scaled, u)


def curve_to_json(E: Curve) -> dict:
    return {"a2": format_rational(E.a2), "a4": format_rational(E.a4), "a6": format_rational(E.a6)}


def curve_from_json(data: dict) -> Curve:
    return Curve(data["a2"], data["a4"], data["a6"])


def point_to_json(P: CurvePoint):
    if P is INFINITY:
        return "infinity"
    return {"x": format_rational(P.x), "y": format_rational(P.y)}


def point_from_json(data) -> CurvePoint:
    if data == "infinity":
        return INFINITY
    return Point(to_rational(data["x"]), to_rational(data["y"]))
