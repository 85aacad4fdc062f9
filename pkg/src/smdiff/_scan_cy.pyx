# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernel; semantics identical to smdiff._scan_py.scan_range."""

import numpy as np


cdef inline long _gcd(long x, long y) noexcept nogil:
    cdef long t
    while y:
        t = x % y
        x = y
        y = t
    return x


cdef inline long _isqrt(long n) noexcept nogil:
    cdef long r = <long> (n ** 0.5)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


def scan_range(long bound, long a_lo, long a_hi):
    """Count reduced forms for every |delta| <= bound, a in [a_lo, a_hi)."""
    h_arr = np.zeros(bound + 1, dtype=np.int64)
    amb_arr = np.zeros(bound + 1, dtype=np.int64)
    cdef long[::1] h = h_arr
    cdef long[::1] amb = amb_arr
    cdef long a, b, c, a4, cmax, g0, base, n, a_top
    a_top = _isqrt(bound // 3) + 1
    if a_hi < a_top:
        a_top = a_hi
    if a_lo < 1:
        a_lo = 1
    with nogil:
        for a in range(a_lo, a_top):
            a4 = 4 * a
            for b in range(0, a + 1):
                cmax = (bound + b * b) // a4
                if cmax < a:
                    continue
                g0 = _gcd(a, b)
                base = -(b * b)
                for c in range(a, cmax + 1):
                    if g0 != 1 and _gcd(g0, c) != 1:
                        continue
                    n = base + a4 * c
                    if b == 0 or b == a or a == c:
                        h[n] += 1
                        amb[n] += 1
                    else:
                        h[n] += 2
    return h_arr, amb_arr
