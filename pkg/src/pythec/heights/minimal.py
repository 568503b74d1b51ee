"""Global minimal models over the rationals (Laska's algorithm with Kraus's conditions).

Local height formulas at a prime need a model that is minimal there; a
minimal model may need nonzero ``a1``/``a3``, so this module works with the
full set of Weierstrass coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from ..curve import Curve, Point
from ..factor import factorint, valuation


@dataclass(frozen=True)
class Weierstrass:
    """``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`` with integer coefficients."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    @property
    def b2(self) -> int:
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self) -> int:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> int:
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self) -> int:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def c4(self) -> int:
        return self.b2 * self.b2 - 24 * self.b4

    @property
    def c6(self) -> int:
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def contains(self, x: Fraction, y: Fraction) -> bool:
        lhs = y * y + self.a1 * x * y + self.a3 * y
        return lhs == ((x + self.a2) * x + self.a4) * x + self.a6

    @classmethod
    def from_curve(cls, E: Curve) -> "Weierstrass":
        if not E.is_integral():
            raise ValueError("model must have integer coefficients")
        return cls(0, int(E.a2), 0, int(E.a4), int(E.a6))


@dataclass(frozen=True)
class Isomorphism:
    """``x = u^2 x' + r``, ``y = u^3 y' + s u^2 x' + t``."""

    u: int
    r: Fraction
    s: Fraction
    t: Fraction

    def apply(self, P: Point) -> tuple[Fraction, Fraction]:
        """Coordinates of ``P`` on the target model."""
        u2 = self.u * self.u
        x = (P.x - self.r) / u2
        y = (P.y - self.s * u2 * x - self.t) / (u2 * self.u)
        return x, y


def kraus_ok(c4: int, c6: int, p: int) -> bool:
    """Kraus's local condition: do (c4, c6) come from a model integral at p?"""
    if p == 3:
        return c6 % 27 not in (9, 18)
    if p == 2:
        return c6 % 4 == 3 or (c4 % 16 == 0 and c6 % 32 in (0, 8))
    return True


def minimise_c4c6(c4: int, c6: int) -> tuple[int, int, int]:
    """Return ``(c4', c6', u)`` for a globally minimal model."""
    disc = (c4**3 - c6**2) // 1728
    support = gcd(c4, c6)
    u = 1
    for p in factorint(support) if abs(support) > 1 else ():
        caps = [valuation(disc, p) // 12]
        if c4:
            caps.append(valuation(c4, p) // 4)
        if c6:
            caps.append(valuation(c6, p) // 6)
        d = min(caps)
        while d > 0 and not kraus_ok(c4 // p ** (4 * d), c6 // p ** (6 * d), p):
            d -= 1
        if d > 0:
            c4 //= p ** (4 * d)
            c6 //= p ** (6 * d)
            u *= p**d
    return c4, c6, u


def c4c6_to_model(c4: int, c6: int) -> Weierstrass:
    b2 = -c6 % 12
    if b2 > 6:
        b2 -= 12
    b4, rem4 = divmod(b2 * b2 - c4, 24)
    b6, rem6 = divmod(-b2**3 + 36 * b2 * b4 - c6, 216)
    if rem4 or rem6:
        raise ArithmeticError(f"invariants ({c4}, {c6}) do not come from an integral model")
    a1 = b2 % 2
    a3 = b6 % 2
    model = Weierstrass(a1, (b2 - a1) // 4, a3, (b4 - a1 * a3) // 2, (b6 - a3) // 4)
    assert (model.c4, model.c6) == (c4, c6)
    return model


@dataclass(frozen=True)
class MinimalModel:
    model: Weierstrass
    iso: Isomorphism  # from the integral input model onto ``model``


@lru_cache(maxsize=512)
def global_minimal_model(E: Curve) -> MinimalModel:
    """Global minimal model of an integral curve plus the isomorphism onto it."""
    src = Weierstrass.from_curve(E)
    c4, c6, u = minimise_c4c6(src.c4, src.c6)
    target = c4c6_to_model(c4, c6)
    # solve the coefficient transformation rules for s, r, t
    s = Fraction(u * target.a1 - src.a1, 2)
    r = (u**2 * target.a2 - src.a2 + s * src.a1 + s * s) / 3
    t = (u**3 * target.a3 - src.a3 - r * src.a1) / 2
    a4 = src.a4 - s * src.a3 + 2 * r * src.a2 - (t + r * s) * src.a1 + 3 * r * r - 2 * s * t
    a6 = src.a6 + r * src.a4 + r * r * src.a2 + r**3 - t * src.a3 - t * t - r * t * src.a1
    if a4 != u**4 * target.a4 or a6 != u**6 * target.a6:
        raise ArithmeticError("failed to match the minimal model")
    return MinimalModel(target, Isomorphism(u, r, s, t))
