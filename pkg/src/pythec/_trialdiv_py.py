"""Pure-Python twin of the compiled ``_trialdiv`` kernel (same API)."""
from __future__ import annotations

from array import array
from bisect import bisect_left

_cache = array("I")
_cache_bound = 0


def primes_below(bound: int) -> array:
    global _cache, _cache_bound
    if bound <= _cache_bound:
        return _cache[: bisect_left(_cache, bound)]
    sieve = bytearray([1]) * max(bound, 0)
    sieve[:2] = b"\x00\x00"[: min(bound, 2)]
    i = 2
    while i * i < bound:
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, bound, i)))
        i += 1
    _cache = array("I", (i for i, flag in enumerate(sieve) if flag))
    _cache_bound = bound
    return _cache


def trial_divide(n: int, bound: int) -> tuple[list[tuple[int, int]], int]:
    n = abs(int(n))
    factors: list[tuple[int, int]] = []
    if n < 2:
        return factors, n
    for p in primes_below(bound):
        if p * p > n:
            break
        if n % p:
            continue
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        factors.append((p, e))
        if n == 1:
            break
    return factors, n
