"""Pure Python scan kernel: bulk class numbers via one sweep over reduced forms.

Rather than enumerating forms per discriminant, sweep all reduced triples
(a, b, c) with 0 <= b <= a <= c and 4ac - b^2 <= bound and increment the
counters of the discriminant each triple lands on.  Multiplicities follow the
reduced domain: triples with 0 < b < a < c stand for the conjugate pair
(a, +-b, c); every other reduced triple is its own conjugate (ambiguous).

This is the hot loop of the whole artifact; smdiff._scan_cy is the compiled
twin with identical semantics.
"""

from math import gcd, isqrt


def scan_range(bound, a_lo, a_hi):
    """Count reduced forms for every |delta| <= bound, using a in [a_lo, a_hi).

    Returns (h, ambiguous) lists indexed by |delta|; summing the results of a
    partition of the full a range 1 <= a <= isqrt(bound // 3) reproduces the
    single-range result exactly.
    """
    h = [0] * (bound + 1)
    amb = [0] * (bound + 1)
    a_top = min(a_hi, isqrt(bound // 3) + 1)
    for a in range(max(a_lo, 1), a_top):
        a4 = 4 * a
        for b in range(0, a + 1):
            cmax = (bound + b * b) // a4
            if cmax < a:
                continue
            g0 = gcd(a, b)
            base = -(b * b)
            if g0 == 1:
                for c in range(a, cmax + 1):
                    n = base + a4 * c
                    if b == 0 or b == a or a == c:
                        h[n] += 1
                        amb[n] += 1
                    else:
                        h[n] += 2
            else:
                for c in range(a, cmax + 1):
                    if gcd(g0, c) != 1:
                        continue
                    n = base + a4 * c
                    if b == 0 or b == a or a == c:
                        h[n] += 1
                        amb[n] += 1
                    else:
                        h[n] += 2
    return h, amb
