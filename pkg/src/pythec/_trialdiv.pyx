# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled trial division: sieve plus multi-limb remainders by small primes."""
from cpython cimport array
from libc.stdint cimport uint32_t, uint64_t
import array

cdef array.array _cache = array.array("I")
cdef unsigned long _cache_bound = 0


def primes_below(unsigned long bound):
    """All primes p < bound as an ``array('I')``."""
    global _cache, _cache_bound
    if bound <= _cache_bound:
        return _cache[: _bisect(_cache, bound)]
    cdef bytearray sieve = bytearray(b"\x01") * bound if bound > 0 else bytearray()
    cdef unsigned char* s = sieve
    cdef unsigned long i, j
    if bound > 0:
        s[0] = 0
    if bound > 1:
        s[1] = 0
    i = 2
    while i * i < bound:
        if s[i]:
            j = i * i
            while j < bound:
                s[j] = 0
                j += i
        i += 1
    cdef array.array out = array.array("I")
    for i in range(bound):
        if s[i]:
            out.append(i)
    _cache = out
    _cache_bound = bound
    return out


cdef Py_ssize_t _bisect(array.array a, unsigned long bound):
    cdef Py_ssize_t lo = 0, hi = len(a), mid
    cdef uint32_t* d = a.data.as_uints
    while lo < hi:
        mid = (lo + hi) // 2
        if d[mid] < bound:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef array.array _limbs(object n):
    cdef Py_ssize_t nbytes = (n.bit_length() + 31) // 32 * 4
    raw = n.to_bytes(nbytes, "big")
    cdef array.array out = array.array("I", [0]) * (nbytes // 4)
    cdef Py_ssize_t i
    for i in range(nbytes // 4):
        out.data.as_uints[i] = int.from_bytes(raw[4 * i: 4 * i + 4], "big")
    return out


cdef inline uint64_t _mod(const uint32_t* limbs, Py_ssize_t count, uint64_t p) nogil:
    cdef uint64_t r = 0
    cdef Py_ssize_t i
    # p < 2**32 keeps (r << 32) | limb below 2**64
    for i in range(count):
        r = ((r << 32) | limbs[i]) % p
    return r


def trial_divide(n, unsigned long bound):
    """Strip every prime factor p < bound from |n|.

    Returns ``(factors, cofactor)`` with ``factors`` a list of ``(p, e)``.
    """
    n = abs(int(n))
    factors = []
    if n < 2:
        return factors, n
    cdef array.array primes = primes_below(bound)
    cdef uint32_t* pp = primes.data.as_uints
    cdef Py_ssize_t k, nprimes = len(primes)
    cdef uint64_t p, small
    cdef array.array limbs = _limbs(n)
    cdef int e
    for k in range(nprimes):
        p = pp[k]
        if n < 18446744073709551616:
            small = n
            if p * p > small:
                break
            if small % p:
                continue
        elif _mod(limbs.data.as_uints, len(limbs), p):
            continue
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        factors.append((int(p), e))
        if n == 1:
            break
        limbs = _limbs(n)
    return factors, n
