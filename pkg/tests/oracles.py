"""Independent reference implementations used only by the tests."""
from fractions import Fraction
from math import gcd, isqrt

import mpmath

from pythec.curve import INFINITY, Point


def brute_force_ppts(limit):
    """``(smaller leg, larger leg, c)`` for every primitive triple with ``c <= limit``."""
    out = set()
    for c in range(5, limit + 1):
        for a in range(1, c):
            b = isqrt(c * c - a * a)
            if b > a and a * a + b * b == c * c and gcd(a, gcd(b, c)) == 1:
                out.add((a, b, c))
    return out


def ln(q, digits=80):
    with mpmath.workdps(digits):
        return mpmath.log(mpmath.mpf(q.numerator) / q.denominator)


def naive_add(a2, a4, a6, P, Q):
    """Textbook chord-tangent addition on y^2 = x^3 + a2 x^2 + a4 x + a6."""
    if P is INFINITY:
        return Q
    if Q is INFINITY:
        return P
    if P.x == Q.x and P.y == -Q.y:
        return INFINITY
    if P == Q:
        lam = (3 * P.x**2 + 2 * a2 * P.x + a4) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - a2 - P.x - Q.x
    return Point(x3, lam * (P.x - x3) - P.y)


def brute_force_torsion(a2, a4, a6, xrange=100):
    """Integral points with ``|x| <= xrange`` killed by some ``n <= 12``."""
    pts = []
    for x in range(-xrange, xrange + 1):
        v = x**3 + a2 * x * x + a4 * x + a6
        if v < 0 or isqrt(v) ** 2 != v:
            continue
        for y in sorted({isqrt(v), -isqrt(v)}):
            P = Point(Fraction(x), Fraction(y))
            R = P
            for _ in range(12):
                if R is INFINITY:
                    pts.append(P)
                    break
                R = naive_add(a2, a4, a6, R, P)
    return pts


def exact_det(M):
    """Fraction determinant by Gaussian elimination."""
    M = [[Fraction(v) for v in row] for row in M]
    n = len(M)
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if M[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            M[i], M[piv] = M[piv], M[i]
            det = -det
        det *= M[i][i]
        for r in range(i + 1, n):
            f = M[r][i] / M[i][i]
            M[r] = [a - f * b for a, b in zip(M[r], M[i])]
    return det
