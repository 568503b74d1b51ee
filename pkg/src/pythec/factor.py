"""Integer factorization: trial division to a bound, then Pollard-Brent rho."""
from __future__ import annotations

import math
import random
import time

from .kernels import trial_divide

TRIAL_BOUND = 10**6
DEFAULT_BUDGET = 10.0  # seconds

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class FactorizationTimeout(RuntimeError):
    def __init__(self, n: int, budget: float):
        super().__init__(f"could not factor {n} within {budget:g}s")
        self.n = n
        self.budget = budget


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, overwhelmingly likely above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = list(_MR_BASES)
    if n >= 3317044064679887385961981:
        rng = random.Random(n)
        bases += [rng.randrange(2, n - 1) for _ in range(16)]
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, deadline: float, rng: random.Random) -> int:
    """A nontrivial divisor of the odd composite n (Brent's cycle variant)."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                if time.monotonic() > deadline:
                    raise TimeoutError
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorint(n: int, *, trial_bound: int = TRIAL_BOUND,
              budget: float = DEFAULT_BUDGET) -> dict[int, int]:
    """Prime factorization of |n| as ``{p: e}``; raises FactorizationTimeout."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    small, rest = trial_divide(n, trial_bound + 1)
    result = dict(small)
    if rest == 1:
        return result
    deadline = time.monotonic() + budget
    rng = random.Random(rest)
    stack = [rest]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m <= trial_bound * trial_bound or is_probable_prime(m):
            result[m] = result.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack += [root, root]
            continue
        try:
            d = _brent(m, deadline, rng)
        except TimeoutError:
            raise FactorizationTimeout(n, budget) from None
        stack += [d, m // d]
    return dict(sorted(result.items()))


def prime_divisors(n: int, **kwargs) -> list[int]:
    return list(factorint(n, **kwargs))


def divisors(n: int, **kwargs) -> list[int]:
    """Positive divisors of |n|, sorted."""
    divs = [1]
    for p, e in factorint(n, **kwargs).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
