"""Local height contributions on a global minimal model.

Both pieces omit the ``log|Delta|`` term: on a single model those terms
cancel over all places, so the canonical height is the archimedean series
plus the sum of the non-archimedean terms.  Normalization is the one where
the canonical height is asymptotic to ``log max(|num x|, |den x|)``.
"""
from __future__ import annotations

import decimal
from decimal import Decimal
from fractions import Fraction
from math import gcd, isqrt

from ..factor import factorint
from ..numeric import decimal_context
from .minimal import Weierstrass

_INF = 10**9


def vp(q: Fraction, p: int) -> int:
    """p-adic valuation of a rational; a large sentinel for zero."""
    if q == 0:
        return _INF
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def nonarchimedean_coefficient(W: Weierstrass, x: Fraction, y: Fraction, p: int) -> Fraction:
    """Rational ``L`` with local height ``L * log p`` at p (W minimal at p)."""
    dx = 3 * x * x + 2 * W.a2 * x + W.a4 - W.a1 * y
    dy = 2 * y + W.a1 * x + W.a3
    A, B = vp(dx, p), vp(dy, p)
    if A <= 0 or B <= 0:
        # nonsingular reduction
        return Fraction(max(0, -vp(x, p)))
    N = vp(Fraction(W.discriminant), p)
    if W.c4 % p:
        # multiplicative reduction
        M = min(Fraction(B), Fraction(N, 2))
        return M * (M - N) / N
    psi3 = 3 * x**4 + W.b2 * x**3 + 3 * W.b4 * x * x + 3 * W.b6 * x + W.b8
    C = vp(psi3, p)
    if C >= 3 * B:
        return Fraction(-2 * B, 3)
    return Fraction(-C, 4)


def singular_reduction_primes(W: Weierstrass, x: Fraction, y: Fraction,
                              budget: float | None = None) -> list[int]:
    """Primes where the point is integral and reduces to the singular point."""
    dx = 3 * x * x + 2 * W.a2 * x + W.a4 - W.a1 * y
    dy = 2 * y + W.a1 * x + W.a3
    g = gcd(W.discriminant, dx.numerator, dy.numerator)
    if g in (0, 1, -1):
        return []
    # primes of the point's denominators have nonsingular reduction
    kwargs = {} if budget is None else {"budget": budget}
    return [p for p in factorint(g, **kwargs) if x.denominator % p]


def _smallest_root_shift(W: Weierstrass) -> int:
    """An integer r with x - r > 1 at every real point of the curve."""
    b2, b4, b6 = W.b2, W.b4, W.b6

    def f(x):
        return ((4 * x + b2) * x + 2 * b4) * x + b6

    bound = 1 + (max(abs(b2), abs(2 * b4), abs(b6)) + 3) // 4
    lo, hi = -bound - 1, bound + 1
    disc = 4 * b2 * b2 - 96 * b4  # of f'(x) = 12x^2 + 2 b2 x + 2 b4
    if disc > 0:
        left = (-2 * b2 - isqrt(disc) - 1) // 24
        right = (-2 * b2 + isqrt(disc) + 1) // 24 + 1
        if f(left) >= 0:
            hi = left
        elif f(right) < 0:
            lo = right
        else:
            # f < 0 up to left, and every root lies beyond it
            return left - 1
    # f increasing on [lo, hi] with f(lo) < 0 <= f(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return lo - 1


def _real_roots(coeffs: list[Decimal], lo: Decimal, hi: Decimal, iters: int) -> list[Decimal]:
    """Real roots of the cubic ``coeffs`` (leading first, positive lead) in ``[lo, hi]``."""
    c3, c2, c1, c0 = coeffs

    def f(x):
        return ((c3 * x + c2) * x + c1) * x + c0

    cuts = [lo, hi]
    qa, qb, qc = 3 * c3, 2 * c2, c1
    disc = qb * qb - 4 * qa * qc
    if disc > 0:
        s = disc.sqrt()
        cuts += [(-qb - s) / (2 * qa), (-qb + s) / (2 * qa)]
    cuts = sorted(v for v in cuts if lo <= v <= hi)
    roots = []
    for a, b in zip(cuts, cuts[1:]):
        fa, fb = f(a), f(b)
        if fa == 0:
            roots.append(a)
        if fa * fb >= 0:
            continue
        for _ in range(iters):
            m = (a + b) / 2
            if (f(m) > 0) == (fb > 0):
                b = m
            else:
                a = m
        roots.append((a + b) / 2)
    return roots


def _series_term_bound(b2, b4, b6, b8, top: int) -> Decimal:
    """Bound on ``|log z(t)|`` over ``t = 1/x`` for every real point.

    Real points have ``4x^3 + b2 x^2 + 2 b4 x + b6 >= 0`` and ``x > 1``; ``z``
    is a quartic in ``t``, so it suffices to look at the interval ends and
    at the critical points of ``z``.
    """
    D = Decimal
    with decimal.localcontext(decimal_context(40)):
        roots = _real_roots([D(4), D(b2), D(2 * b4), D(b6)], D(1), D(top), 140)
        # x-intervals of the real locus, mapped to t = 1/x
        if len(roots) == 3:
            spans = [(1 / roots[1], 1 / roots[0]), (D(0), 1 / roots[2])]
        else:
            spans = [(D(0), 1 / roots[0])]

        def z(t):
            return 1 - t * t * (b4 + t * (2 * b6 + t * b8))

        values = []
        # z'(t) = -2t (b4 + 3 b6 t + 2 b8 t^2)
        crit = []
        if b8:
            disc = D(9 * b6 * b6 - 8 * b4 * b8)
            if disc >= 0:
                s = disc.sqrt()
                crit = [(-3 * b6 - s) / (4 * b8), (-3 * b6 + s) / (4 * b8)]
        elif b6:
            crit = [D(-b4) / (3 * b6)]
        for lo, hi in spans:
            values += [z(lo), z(hi)]
            values += [z(t) for t in crit if lo < t < hi]
        zmin, zmax = min(values), max(values)
        if zmin <= 0:
            raise ArithmeticError("Tate series is not defined on this model")
        # slack for the 40-digit root isolation
        return max(abs(zmin.ln()), abs(zmax.ln())) * D("1.001") + D("1e-20")


def archimedean_height(W: Weierstrass, x: Fraction, digits: int) -> tuple[Decimal, Decimal]:
    """Archimedean local height via Tate's series; returns ``(value, error)``.

    The x-coordinate is shifted so every real point has ``x > 1``.  Every
    series term is then bounded by the range of ``log z`` over the real
    locus, which gives the truncation bound.
    """
    r = _smallest_root_shift(W)
    b2 = W.b2 + 12 * r
    b4 = W.b4 + r * W.b2 + 6 * r * r
    b6 = W.b6 + 2 * r * W.b4 + r * r * W.b2 + 4 * r**3
    b8 = W.b8 + 3 * r * W.b6 + 3 * r * r * W.b4 + r**3 * W.b2 + 3 * r**4
    xs = x - r
    if xs <= 0:
        raise ArithmeticError("shifted x-coordinate is not positive")
    top = 2 + (abs(b2) + abs(2 * b4) + abs(b6)) // 4
    bound = _series_term_bound(b2, b4, b6, b8, top)
    wp = digits + 10
    with decimal.localcontext(decimal_context(wp)):
        D = Decimal
        b2d, b4d, b6d, b8d = D(b2), D(b4), D(b6), D(b8)
        lead = D(xs.numerator).ln() - D(xs.denominator).ln()
        t = D(xs.denominator) / D(xs.numerator)
        total = D(0)
        weight = D(1)
        target = D(10) ** (-(digits + 2))
        n = 0
        while True:
            t2 = t * t
            z = 1 - t2 * (b4d + t * (2 * b6d + t * b8d))
            if z <= 0:
                raise ArithmeticError("Tate series left its domain; increase precision")
            total += weight * z.ln()
            t = t * (4 + t * (b2d + t * (2 * b4d + t * b6d))) / z
            weight /= 4
            n += 1
            # the remaining terms add at most bound * weight / 3 to the value
            if t == 0 or bound * weight < target:
                break
        value = lead + total / 4
        tail = D(0) if t == 0 else bound * weight / 3
        error = +(tail + D(10) ** (-(wp - 4)) * (n + 1))
    return value, error
