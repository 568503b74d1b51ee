"""Order of rational points: Mazur-bound order tests, Nagell-Lutz torsion
enumeration, and cheap infinite-order certificates for the family curves."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Union

from .curve import (INFINITY, Curve, CurvePoint, IntegralModel, NotOnCurveError, Point, add,
                    integralize, point_to_json)
from .factor import divisors
from .families import Family, PythTriple, construct

MAZUR_BOUND = 12


class CertificateKind(str, enum.Enum):
    NON_INTEGRAL_COORDINATES = "non_integral_coordinates"
    Y_NOT_DIVIDING_D = "y_not_dividing_d"
    MAZUR_EXHAUSTION = "mazur_exhaustion"


@dataclass(frozen=True)
class OrderVerdict:
    """Either ``FiniteOrder(n)`` or ``InfiniteOrder(kind)``."""

    order: Optional[int] = None
    certificate: Optional[CertificateKind] = None

    @classmethod
    def finite(cls, n: int) -> "OrderVerdict":
        if not 1 <= n <= MAZUR_BOUND:
            raise ValueError(f"torsion order {n} outside 1..{MAZUR_BOUND}")
        return cls(order=n)

    @classmethod
    def infinite(cls, kind: Union[CertificateKind, str]) -> "OrderVerdict":
        return cls(certificate=CertificateKind(kind))

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    @property
    def is_infinite(self) -> bool:
        return self.order is None

    def __str__(self) -> str:
        if self.is_finite:
            return f"FiniteOrder({self.order})"
        return f"InfiniteOrder({self.certificate.value})"

    def to_json(self) -> dict:
        if self.is_finite:
            return {"verdict": "finite", "order": self.order}
        return {"verdict": "infinite", "certificate": self.certificate.value}


class NonPrimitiveTripleError(ValueError):
    pass


def _require_on_curve(E: Curve, P: CurvePoint) -> None:
    if not E.contains(P):
        raise NotOnCurveError(f"{P!r} is not on {E}")


def point_order(E: Curve, P: CurvePoint) -> OrderVerdict:
    """Order of ``P`` if it is at most 12, otherwise infinite by Mazur's bound."""
    _require_on_curve(E, P)
    Q = P
    for n in range(1, MAZUR_BOUND + 1):
        if Q is INFINITY:
            return OrderVerdict.finite(n)
        Q = add(E, Q, P)
    return OrderVerdict.infinite(CertificateKind.MAZUR_EXHAUSTION)


def lemma2_nonintegrality_certificate(M: Union[IntegralModel, Curve],
                                      P: CurvePoint) -> Optional[OrderVerdict]:
    """Infinite order from a non-integral coordinate on an integral model.

    ``M`` is either a curve with integer coefficients (``P`` lies on it) or an
    :class:`IntegralModel` (``P`` lies on its source curve and is mapped
    first).  Returns ``None`` when the test is inconclusive.
    """
    if isinstance(M, IntegralModel):
        _require_on_curve(M.source, P)
        P = M.map_point(P)
        E = M.curve
    else:
        E = M
        if not E.is_integral():
            raise ValueError(f"{E} does not have integer coefficients")
        _require_on_curve(E, P)
    if P is INFINITY or P.is_integral():
        return None
    return OrderVerdict.infinite(CertificateKind.NON_INTEGRAL_COORDINATES)


def _integer_roots_monic_cubic(a: int, b: int, c: int) -> list[int]:
    """Integer roots of ``x^3 + a x^2 + b x + c``, ascending."""

    def g(x):
        return ((x + a) * x + b) * x + c

    bound = 1 + max(abs(a), abs(b), abs(c))
    # g' = 3x^2 + 2ax + b vanishes at (-a +- sqrt(a^2 - 3b)) / 3
    windows = []
    disc = a * a - 3 * b
    if disc >= 0:
        r = isqrt(disc)
        for k in ((-a - r) // 3, (-a + r) // 3):
            windows.append((max(k - 2, -bound), min(k + 2, bound)))
    roots = set()
    for lo, hi in windows:
        roots.update(x for x in range(lo, hi + 1) if g(x) == 0)
    # g is monotone between consecutive windows
    edges = [-bound] + [v for w in windows for v in w] + [bound]
    for lo, hi in zip(edges[::2], edges[1::2]):
        if lo >= hi:
            continue
        glo, ghi = g(lo), g(hi)
        if glo == 0:
            roots.add(lo)
        if ghi == 0:
            roots.add(hi)
        if glo * ghi >= 0:
            continue
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if (g(mid) > 0) == (ghi > 0):
                hi = mid
            else:
                lo = mid
        roots.update(x for x in (lo, hi) if g(x) == 0)
    return sorted(roots)


def nagell_lutz_candidates(E: Curve, **factor_kwargs) -> list[Point]:
    """Integral points with ``y = 0`` or ``y | D`` on an integral curve."""
    if not E.is_integral():
        raise ValueError(f"{E} does not have integer coefficients")
    a2, a4, a6 = int(E.a2), int(E.a4), int(E.a6)
    D = int(E.discriminant())
    ys = [0] + divisors(abs(D), **factor_kwargs)
    out = []
    for y in ys:
        for x in _integer_roots_monic_cubic(a2, a4, a6 - y * y):
            out.append(Point(Fraction(x), Fraction(y)))
            if y:
                out.append(Point(Fraction(x), Fraction(-y)))
    return out


def nagell_lutz_torsion(M: Union[IntegralModel, Curve], **factor_kwargs) -> list[CurvePoint]:
    """All rational torsion points of an integral curve, infinity first.

    Points are on the integral curve (``M.curve`` for an :class:`IntegralModel`).
    Raises :class:`~pythec.factor.FactorizationTimeout` if ``|D|`` cannot be
    factored within the budget.
    """
    E = M.curve if isinstance(M, IntegralModel) else M
    pts = [P for P in nagell_lutz_candidates(E, **factor_kwargs) if point_order(E, P).is_finite]
    pts.sort(key=lambda P: (P.x, P.y))
    return [INFINITY] + pts


def torsion_points(E: Curve, **factor_kwargs) -> list[CurvePoint]:
    """Torsion points of any curve, via an integral model and back."""
    M = integralize(E)
    return [M.unmap_point(P) for P in nagell_lutz_torsion(M, **factor_kwargs)]


def frey_discriminant(fam: Family, T: PythTriple) -> int:
    """Closed-form discriminant of the F6 / F7 curve for the triple ``T``."""
    a, b, c = T.as_tuple()
    if fam is Family.F6_frey_ac:
        return a**4 * c**4 * (b**4 + 4 * a * a * c * c)
    if fam is Family.F7_frey_bc:
        return b**4 * c**4 * (a**4 + 4 * b * b * c * c)
    raise ValueError(f"{fam.value} is not a Frey-type family")


def remark_divisibility_certificate(fam: Union[Family, str], T: PythTriple) -> Optional[OrderVerdict]:
    """Infinite order of ``P2`` when ``abc`` does not divide the discriminant.

    F6 is gated on ``b`` odd and F7 on ``a`` odd, taking the triple as given.
    Returns ``None`` when the gate fails or ``abc | D``.
    """
    fam = Family.parse(fam)
    if not T.primitive:
        raise NonPrimitiveTripleError(f"({T}) is not primitive")
    if fam.is_short:
        raise ValueError(f"{fam.value} is not a Frey-type family")
    gate = T.b if fam is Family.F6_frey_ac else T.a
    if gate % 2 == 0:
        return None
    D = frey_discriminant(fam, T)
    if D % (T.a * T.b * T.c) == 0:
        return None
    return OrderVerdict.infinite(CertificateKind.Y_NOT_DIVIDING_D)


@dataclass(frozen=True)
class PositiveRankCertificate:
    family: Family
    triple: PythTriple
    witness: Point
    verdict: OrderVerdict

    def to_json(self) -> dict:
        out = {
            "family": self.family.value,
            "triple": list(self.triple.as_tuple()),
            "witness": point_to_json(self.witness),
        }
        out.update(self.verdict.to_json())
        return out


def designated_witness(fam: Family, T: PythTriple) -> Point:
    a, b, c = (Fraction(v) for v in T.as_tuple())
    num, den = {
        Family.F1_a2c2: (c, a),
        Family.F2_a2b2: (b, a),
        Family.F3_b2a2: (a, b),
        Family.F4_c2b2: (b, c),
        Family.F5_b2c2: (c, b),
        Family.F6_frey_ac: (a * c, b),
        Family.F7_frey_bc: (b * c, a),
    }[fam]
    r = num / den
    return Point(r * r, r**3)


def certify_positive_rank(fam: Union[Family, str], T: Union[PythTriple, tuple]) -> PositiveRankCertificate:
    """Infinite-order witness on the family curve of a primitive triple."""
    fam = Family.parse(fam)
    if not isinstance(T, PythTriple):
        T = PythTriple(*map(int, T))
    if not T.primitive:
        raise NonPrimitiveTripleError(f"({T}) is not primitive")
    E = construct(fam, T).curve
    P = designated_witness(fam, T)
    verdict = lemma2_nonintegrality_certificate(E, P) or point_order(E, P)
    return PositiveRankCertificate(fam, T, P, verdict)

