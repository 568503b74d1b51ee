"""Pythagorean triples and the seven curve families built from them.

Families F1-F5 have the shape ``y^2 = x^3 - A^2 x + B^2`` with ``A, B`` two
distinct entries of a triple ``(a, b, c)``; F6 and F7 are the Frey-like
curves ``y^2 = x(x - a^2)(x + c^2)`` and ``y^2 = x(x - b^2)(x + c^2)``.

F1-F5 take either a rational parameter ``t`` (via ``a = t^2 - 1``,
``b = 2t``, ``c = t^2 + 1``) or an integer triple.  The substitution
front-ends (``alpha``, ``T``, ``m``, ``u``) pick ``t`` so that one more
rational point exists and attach it to the instance.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

from .curve import Curve, Point, curve_to_json, point_to_json
from .numeric import RationalLike, format_rational, to_rational


class DegenerateParameterError(ValueError):
    pass


class ParameterKindError(TypeError):
    pass


class Family(str, enum.Enum):
    F1_a2c2 = "F1_a2c2"
    F2_a2b2 = "F2_a2b2"
    F3_b2a2 = "F3_b2a2"
    F4_c2b2 = "F4_c2b2"
    F5_b2c2 = "F5_b2c2"
    F6_frey_ac = "F6_frey_ac"
    F7_frey_bc = "F7_frey_bc"

    @classmethod
    def parse(cls, name: Union[str, "Family"]) -> "Family":
        if isinstance(name, Family):
            return name
        for fam in cls:
            if name in (fam.value, fam.name, fam.value.split("_")[0]):
                return fam
        raise ValueError(f"unknown family {name!r}; choose from {[f.value for f in cls]}")

    @property
    def is_short(self) -> bool:
        return self not in (Family.F6_frey_ac, Family.F7_frey_bc)


# (A, B) for y^2 = x^3 - A^2 x + B^2, as names of triple entries
_SHORT_SHAPE = {
    Family.F1_a2c2: ("a", "c"),
    Family.F2_a2b2: ("a", "b"),
    Family.F3_b2a2: ("b", "a"),
    Family.F4_c2b2: ("c", "b"),
    Family.F5_b2c2: ("b", "c"),
}

# substitution front-end -> the only family it applies to
SUBSTITUTION_FAMILY = {
    "alpha": Family.F1_a2c2,
    "T": Family.F2_a2b2,
    "m": Family.F3_b2a2,
    "u": Family.F4_c2b2,
}


@dataclass(frozen=True)
class PythTriple:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if min(self.a, self.b, self.c) <= 0:
            raise ValueError(f"triple entries must be positive: {self.as_tuple()}")
        if self.a**2 + self.b**2 != self.c**2:
            raise ValueError(f"not a Pythagorean triple: {self.as_tuple()}")

    @property
    def primitive(self) -> bool:
        return gcd(self.a, self.b, self.c) == 1

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __str__(self) -> str:
        return f"{self.a},{self.b},{self.c}"


@dataclass(frozen=True)
class RationalTriple:
    a: Fraction
    b: Fraction
    c: Fraction
    t: Fraction


@dataclass
class FamilyInstance:
    family: Family
    param: dict
    curve: Curve
    points: dict[str, Point] = field(default_factory=dict)

    def to_json(self) -> dict:
        params = {}
        for key, val in self.param.items():
            params[key] = str(val) if isinstance(val, PythTriple) else format_rational(val)
        return {
            "family": self.family.value,
            "param": params,
            "curve": curve_to_json(self.curve),
            "points": {name: point_to_json(P) for name, P in self.points.items()},
        }


def ppt_from_mn(m: int, n: int) -> PythTriple:
    """``(m^2 - n^2, 2mn, m^2 + n^2)`` for coprime ``m > n > 0`` of opposite parity."""
    if not m > n > 0:
        raise ValueError(f"need m > n > 0, got m={m}, n={n}")
    if gcd(m, n) != 1:
        raise ValueError(f"m={m} and n={n} are not coprime")
    if m % 2 == 1 and n % 2 == 1:
        raise ValueError(f"m={m} and n={n} are both odd")
    return PythTriple(m * m - n * n, 2 * m * n, m * m + n * n)


def enumerate_ppts(limit: int) -> list[PythTriple]:
    """All primitive triples with hypotenuse at most ``limit``, ordered by (c, a).

    Legs follow the ``(m^2 - n^2, 2mn)`` orientation, so ``a`` is the odd leg.
    """
    if limit < 5:
        raise ValueError("limit must be at least 5")
    out = []
    for m in range(2, isqrt(limit) + 1):
        for n in range(1 + m % 2, m, 2):
            if m * m + n * n > limit:
                break
            if gcd(m, n) == 1:
                out.append(ppt_from_mn(m, n))
    out.sort(key=lambda T: (T.c, T.a))
    return out


def triple_from_t(t: RationalLike) -> RationalTriple:
    t = to_rational(t)
    if t in (0, 1, -1):
        raise DegenerateParameterError(f"t={format_rational(t)} gives a zero leg")
    return RationalTriple(t * t - 1, 2 * t, t * t + 1, t)


def substitute_alpha(alpha: RationalLike) -> tuple[Fraction, Fraction]:
    """``t = (alpha^2 - 1)/(4 alpha)`` so that ``1 + 4t^2 = v^2``; returns ``(t, v)``."""
    alpha = to_rational(alpha)
    if alpha in (0, 1, -1):
        raise DegenerateParameterError(f"alpha={format_rational(alpha)} is degenerate")
    t = (alpha * alpha - 1) / (4 * alpha)
    v = (alpha * alpha + 1) / (2 * alpha)
    return t, v


def substitute_T(T: RationalLike) -> tuple[Fraction, Point]:
    """``t = 4T^3``; the extra point is ``(-4T^2, 2T(16T^6 - 1))``."""
    T = to_rational(T)
    if T == 0:
        raise DegenerateParameterError("T=0 gives t=0")
    t = 4 * T**3
    if t in (1, -1):
        raise DegenerateParameterError(f"T={format_rational(T)} gives t={format_rational(t)}")
    return t, Point(-4 * T**2, 2 * T * (16 * T**6 - 1))


def substitute_m(m: RationalLike) -> tuple[Fraction, Point]:
    """``t = 1/m - m/2`` so that ``t^2 + 2`` is a square; extra point ``(-1, 1/m^2 - m^2/4)``."""
    m = to_rational(m)
    if m == 0:
        raise DegenerateParameterError("m=0 is degenerate")
    t = 1 / m - m / 2
    if t in (0, 1, -1):
        raise DegenerateParameterError(f"m={format_rational(m)} gives t={format_rational(t)}")
    return t, Point(Fraction(-1), 1 / (m * m) - m * m / 4)


def substitute_u(u: RationalLike) -> tuple[Fraction, Point]:
    """``t = (u^2 - 2u - 1)/(u^2 + 1)`` so that ``2 - t^2`` is a square; extra point at x = 1."""
    u = to_rational(u)
    t = (u * u - 2 * u - 1) / (u * u + 1)
    if t in (0, 1, -1):
        raise DegenerateParameterError(f"u={format_rational(u)} gives t={format_rational(t)}")
    root = (-u * u - 2 * u + 1) / (u * u + 1)
    return t, Point(Fraction(1), root * t)


def _short_instance(fam: Family, values: dict, param: dict) -> FamilyInstance:
    A, B = (values[k] for k in _SHORT_SHAPE[fam])
    if A == 0 or B == 0:
        raise DegenerateParameterError(f"{fam.value}: A={A}, B={B}")
    curve = _make_curve(fam, 0, -A * A, B * B)
    ratio = Fraction(B) / A
    pts = {
        "P1": Point(Fraction(0), Fraction(B)),
        "P2": Point(Fraction(A), Fraction(B)),
        "P3": Point(ratio**2, ratio**3),
    }
    if fam is Family.F1_a2c2:
        pts = {"P": pts["P1"], "Q": pts["P2"], "L": pts["P3"]}
    return FamilyInstance(fam, param, curve, pts)


def _frey_instance(fam: Family, T: PythTriple) -> FamilyInstance:
    a, b, c = T.as_tuple()
    if fam is Family.F6_frey_ac:
        lead, other, neck = b, a, c  # y^2 = x^3 + b^2 x^2 - a^2 c^2 x
    else:
        lead, other, neck = a, b, c  # y^2 = x^3 + a^2 x^2 - b^2 c^2 x
    curve = _make_curve(fam, lead**2, -(other * neck) ** 2, 0)
    ratio = Fraction(other * neck, lead)
    abc = a * b * c
    pts = {
        "P1": Point(ratio**2, ratio**3),
        "P2": Point(Fraction(-(lead**2)), Fraction(abc)),
        "P3": Point(Fraction(other * neck), Fraction(abc)),
        "P4": Point(Fraction(-other * neck), Fraction(abc)),
    }
    return FamilyInstance(fam, {"triple": T}, curve, pts)


def _make_curve(fam: Family, a2, a4, a6) -> Curve:
    from .curve import SingularCurveError

    try:
        return Curve(a2, a4, a6)
    except SingularCurveError as exc:
        raise DegenerateParameterError(f"{fam.value}: {exc}") from None


def construct(family: Union[Family, str], param, kind: str = "t") -> FamilyInstance:
    """Build a family member together with its catalogued points.

    ``kind`` names how ``param`` is read: ``"t"``, ``"alpha"``, ``"T"``,
    ``"m"``, ``"u"`` (rationals) or ``"triple"`` (a :class:`PythTriple` or
    3-tuple).  A :class:`PythTriple` passed as ``param`` implies ``"triple"``.
    """
    fam = Family.parse(family)
    if isinstance(param, PythTriple) or (isinstance(param, tuple) and len(param) == 3):
        kind = "triple"
    if kind == "triple":
        T = param if isinstance(param, PythTriple) else PythTriple(*map(int, param))
        if not fam.is_short:
            inst = _frey_instance(fam, T)
        else:
            values = {"a": T.a, "b": T.b, "c": T.c}
            inst = _short_instance(fam, values, {"triple": T})
        _check_points(inst)
        return inst
    if not fam.is_short:
        raise ParameterKindError(f"{fam.value} takes a Pythagorean triple, not {kind}")
    value = to_rational(param)
    extra: dict[str, Point] = {}
    if kind == "t":
        t = value
    elif kind in SUBSTITUTION_FAMILY:
        if SUBSTITUTION_FAMILY[kind] is not fam:
            raise ParameterKindError(f"substitution {kind!r} belongs to {SUBSTITUTION_FAMILY[kind].value}")
        if kind == "alpha":
            t, v = substitute_alpha(value)
            extra["R"] = Point(Fraction(1), v)
        else:
            t, P4 = {"T": substitute_T, "m": substitute_m, "u": substitute_u}[kind](value)
            extra["P4"] = P4
    else:
        raise ParameterKindError(f"unknown parameter kind {kind!r}")
    trip = triple_from_t(t)
    inst = _short_instance(fam, {"a": trip.a, "b": trip.b, "c": trip.c}, {kind: value})
    if kind != "t":
        inst.param["t"] = t
    inst.points.update(extra)
    if fam is Family.F5_b2c2:
        inst.points["P4"] = Point(Fraction(2), t * t - 3)
    _check_points(inst)
    return inst


def _check_points(inst: FamilyInstance) -> None:
    for name, P in inst.points.items():
        if not inst.curve.contains(P):
            raise AssertionError(f"{inst.family.value}: catalogued point {name}={P!r} is off the curve")
