"""Exact integer-side objects: discriminants, reduced forms, class profiles.

Everything here is integer arithmetic; no rounding is involved, so results
are certificates by construction.  Bulk queries go through ScanTable, which
is filled by a single sweep over all reduced forms up to a bound (compiled
kernel when available) and is shared process-wide.

Group-theoretic flags are computed through ambiguous forms:

* A form class has order <= 2 exactly when its reduced representative is
  ambiguous (b = 0, a = b, or a = c), because the inverse class of
  [(a, b, c)] is [(a, -b, c)] and reduction identifies the two precisely in
  those cases.  Hence the class group has exponent <= 2 (is "2-elementary")
  iff every reduced form is ambiguous.
* The order <= 2 classes form the 2-torsion subgroup, which is the unique
  maximal 2-elementary subgroup.  A 2-elementary subgroup of index 2 exists
  iff the 2-torsion subgroup has index 1 or 2, i.e. iff the ambiguous count
  is h or h/2.  That is the "almost 2-elementary" test used below; it is a
  derived characterisation, proved here rather than assumed.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Callable, Iterable, Optional

import numpy as np

from . import _kernel
from .errors import InvalidDiscriminant, UnsupportedTarget
from .reports import CheckReport

# Completeness bound: every discriminant with h <= 32 has |delta| below this,
# so class-number listings up to h = 32 can be certified by one finite scan.
CLASS_NUMBER_32_BOUND = 166147

# Scope of the star-discriminant checks.
STAR_DISCRIMINANT = -8399
STAR_CLASS_NUMBER_FLOOR = 128
TWO_ELEMENTARY_ABS_BOUND = 7392


@dataclass(frozen=True, slots=True)
class Discriminant:
    """A negative discriminant delta = f^2 * D with D fundamental."""

    value: int
    fundamental: int
    conductor: int

    def __post_init__(self):
        if self.value >= 0 or self.value % 4 not in (0, 1):
            raise InvalidDiscriminant(f"{self.value} is not a discriminant")
        if self.conductor ** 2 * self.fundamental != self.value:
            raise InvalidDiscriminant(
                f"{self.value} != {self.conductor}^2 * {self.fundamental}"
            )

    @property
    def abs_value(self) -> int:
        return -self.value

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True, slots=True)
class ReducedForm:
    """A primitive reduced positive definite form (a, b, c)."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def ambiguous(self) -> bool:
        return self.b == 0 or self.a == self.b or self.a == self.c

    @property
    def principal(self) -> bool:
        return self.a == 1

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


@dataclass(frozen=True, slots=True)
class ClassProfile:
    """Class number and 2-torsion summary for one discriminant."""

    delta: Discriminant
    h: int
    ambiguous_count: int
    two_elementary: bool
    almost_two_elementary: bool


# ---------------------------------------------------------------------------
# factorisation helpers


def _squarefree_decomposition(n: int) -> tuple[int, int]:
    """n = s^2 * m with m squarefree; returns (s, m).  Trial division."""
    s, m = 1, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                m *= p
        p += 1 if p == 2 else 2
    return s, m * n


def factor_discriminant(n) -> Discriminant:
    """Split a discriminant into conductor and fundamental part."""
    if isinstance(n, Discriminant):
        return n
    n = int(n)
    if n >= 0 or n % 4 not in (0, 1):
        raise InvalidDiscriminant(
            f"{n} is not a discriminant (need n < 0 and n = 0, 1 mod 4)"
        )
    s, m = _squarefree_decomposition(-n)
    if (-m) % 4 == 1:
        return Discriminant(n, -m, s)
    # -m = 2, 3 mod 4: the fundamental part is -4m and s must be even.
    return Discriminant(n, -4 * m, s // 2)


def is_fundamental(n: int) -> bool:
    try:
        return factor_discriminant(n).conductor == 1
    except InvalidDiscriminant:
        return False


# ---------------------------------------------------------------------------
# per-discriminant form enumeration


def reduced_forms(delta) -> list[ReducedForm]:
    """All primitive reduced forms of delta, sorted by (a, b).

    Enumerates b >= 0 with matching parity, splits b^2 + |delta| = 4ac over
    divisors a <= sqrt(ac), and emits the conjugate (a, -b, c) exactly when
    the class is not ambiguous.
    """
    d = factor_discriminant(delta)
    n = d.abs_value
    out = []
    for b in range(n & 1, isqrt(n // 3) + 1, 2):
        m4 = b * b + n
        # b and delta share parity, so 4 | b^2 + n.
        m = m4 // 4
        for a in range(max(b, 1), isqrt(m) + 1):
            if m % a:
                continue
            c = m // a
            if gcd(gcd(a, b), c) != 1:
                continue
            out.append(ReducedForm(a, b, c))
            if 0 < b < a < c:
                out.append(ReducedForm(a, -b, c))
    out.sort(key=lambda f: (f.a, f.b))
    return out


def class_profile(delta) -> ClassProfile:
    d = factor_discriminant(delta)
    forms = reduced_forms(d)
    h = len(forms)
    amb = sum(1 for f in forms if f.ambiguous)
    return ClassProfile(
        delta=d,
        h=h,
        ambiguous_count=amb,
        two_elementary=amb == h,
        almost_two_elementary=amb == h or 2 * amb == h,
    )


def principal_form(delta) -> ReducedForm:
    d = factor_discriminant(delta)
    k = d.abs_value & 1
    return ReducedForm(1, k, (k + d.abs_value) // 4)


# ---------------------------------------------------------------------------
# bulk scan


def _scan_chunk(args):
    bound, a_lo, a_hi = args
    h, amb = _kernel.scan_range(bound, a_lo, a_hi)
    return np.asarray(h, dtype=np.int64), np.asarray(amb, dtype=np.int64)


class ScanTable:
    """Class numbers and ambiguous counts for every |delta| <= bound."""

    def __init__(self, bound: int, h: np.ndarray, ambiguous: np.ndarray):
        self.bound = bound
        self.h = h
        self.ambiguous = ambiguous

    @classmethod
    def build(cls, bound: int, jobs: int = 1) -> "ScanTable":
        a_top = isqrt(bound // 3) + 1
        if jobs <= 1 or a_top <= 8:
            h, amb = _scan_chunk((bound, 1, a_top))
            return cls(bound, h, amb)
        # Work per value of a is roughly constant (about bound / 4 inner
        # iterations), so contiguous equal-width chunks are balanced.
        edges = np.linspace(1, a_top, jobs + 1, dtype=np.int64)
        tasks = [
            (bound, int(edges[i]), int(edges[i + 1]))
            for i in range(jobs)
            if edges[i] < edges[i + 1]
        ]
        h = np.zeros(bound + 1, dtype=np.int64)
        amb = np.zeros(bound + 1, dtype=np.int64)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part_h, part_amb in pool.map(_scan_chunk, tasks):
                h += part_h
                amb += part_amb
        return cls(bound, h, amb)

    # -- point queries -----------------------------------------------------

    def class_number(self, delta: int) -> int:
        return int(self.h[-int(delta)])

    def ambiguous_count(self, delta: int) -> int:
        return int(self.ambiguous[-int(delta)])

    def is_two_elementary(self, delta: int) -> bool:
        n = -int(delta)
        return self.h[n] > 0 and self.h[n] == self.ambiguous[n]

    def is_almost_two_elementary(self, delta: int) -> bool:
        n = -int(delta)
        return self.h[n] > 0 and (
            self.h[n] == self.ambiguous[n] or self.h[n] == 2 * self.ambiguous[n]
        )

    # -- bulk queries --------------------------------------------------------

    def valid_abs(self, lo: int = 3, hi: Optional[int] = None) -> np.ndarray:
        """Ascending |delta| of the valid discriminants in [lo, hi]."""
        hi = self.bound if hi is None else min(hi, self.bound)
        ns = np.arange(lo, hi + 1)
        return ns[(ns % 4 == 0) | (ns % 4 == 3)]

    def abs_with(self, mask_fn, lo: int = 3, hi: Optional[int] = None) -> list[int]:
        return [int(n) for n in self.valid_abs(lo, hi) if mask_fn(int(n))]

    def two_elementary_abs(self, lo: int = 3, hi: Optional[int] = None) -> list[int]:
        return self.abs_with(lambda n: self.is_two_elementary(-n), lo, hi)

    def almost_two_elementary_abs(self, lo: int = 3, hi=None) -> list[int]:
        return self.abs_with(lambda n: self.is_almost_two_elementary(-n), lo, hi)


_TABLE: Optional[ScanTable] = None


def scan_table(bound: int, jobs: int = 1) -> ScanTable:
    """Process-wide cached table covering at least |delta| <= bound."""
    global _TABLE
    if _TABLE is None or _TABLE.bound < bound:
        _TABLE = ScanTable.build(bound, jobs=jobs)
    return _TABLE


def scan(
    abs_bound: int,
    predicate: Callable[[ClassProfile], bool],
    jobs: int = 1,
) -> list[Discriminant]:
    """All delta with |delta| <= abs_bound whose profile satisfies predicate.

    Results ascend in |delta| and are independent of the parallel
    partitioning (worker results are merged by exact array addition).
    """
    if abs_bound < 3:
        return []
    table = scan_table(abs_bound, jobs=jobs)
    spf = _spf_sieve(abs_bound)
    out = []
    for n in table.valid_abs(3, abs_bound):
        n = int(n)
        h = int(table.h[n])
        amb = int(table.ambiguous[n])
        d = _factor_with_spf(-n, spf)
        profile = ClassProfile(
            delta=d,
            h=h,
            ambiguous_count=amb,
            two_elementary=amb == h,
            almost_two_elementary=amb == h or h == 2 * amb,
        )
        if predicate(profile):
            out.append(d)
    return out


_SPF: Optional[np.ndarray] = None


def _spf_sieve(bound: int) -> np.ndarray:
    """Smallest-prime-factor sieve, cached and grown monotonically."""
    global _SPF
    if _SPF is None or len(_SPF) <= bound:
        spf = np.arange(bound + 1, dtype=np.int64)
        for p in range(2, isqrt(bound) + 1):
            if spf[p] == p:
                sl = spf[p * p :: p]
                np.minimum(sl, p, out=sl)
        _SPF = spf
    return _SPF


def _factor_with_spf(value: int, spf: np.ndarray) -> Discriminant:
    n = -value
    s, m = 1, 1
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            m *= p
    if (-m) % 4 == 1:
        return Discriminant(value, -m, s)
    return Discriminant(value, -4 * m, s // 2)


def class_number_list(h_target: int, jobs: int = 1) -> list[Discriminant]:
    """The complete list of delta with h(delta) = h_target.

    Completeness is certified only for h_target <= 32, where every such
    discriminant is known to satisfy |delta| <= 166147; larger targets are
    refused rather than silently truncated.
    """
    if not 1 <= h_target <= 32:
        raise UnsupportedTarget(
            f"h = {h_target}: completeness is only certified for h <= 32"
        )
    return scan(CLASS_NUMBER_32_BOUND, lambda p: p.h == h_target, jobs=jobs)


def rational_j_discriminants(jobs: int = 1) -> list[Discriminant]:
    """Discriminants whose singular moduli are rational (h = 1)."""
    return class_number_list(1, jobs=jobs)


def verify_star_discriminant(
    threshold: int = STAR_CLASS_NUMBER_FLOOR, jobs: int = 1
) -> CheckReport:
    """Check that -8399 is the least fundamental D with h(D) >= threshold.

    Also re-checks the coarser inventory fact that every fundamental
    |D| <= 8000 has h(D) <= 120.  Witnesses record, in order: the star
    discriminant, its class number, and the max class number below it.
    """
    t0 = time.monotonic()
    star_abs = -STAR_DISCRIMINANT
    table = scan_table(max(star_abs, 8000), jobs=jobs)
    spf = _spf_sieve(table.bound)

    ok = is_fundamental(STAR_DISCRIMINANT)
    h_star = table.class_number(STAR_DISCRIMINANT)
    ok = ok and h_star >= threshold

    max_below = 0
    max_below_at = 0
    max_8000 = 0
    offenders: list[tuple[int, ...]] = []
    for n in table.valid_abs(3, star_abs - 1):
        n = int(n)
        if _factor_with_spf(-n, spf).conductor != 1:
            continue
        h = int(table.h[n])
        if h > max_below:
            max_below, max_below_at = h, -n
        if n <= 8000 and h > max_8000:
            max_8000 = h
        if h >= threshold:
            offenders.append((-n, h))
    ok = ok and not offenders and max_8000 <= 120

    witnesses = [(STAR_DISCRIMINANT, h_star), (max_below_at, max_below)]
    witnesses.extend(offenders)
    return CheckReport(
        check_id="star_discriminant",
        status="pass" if ok else "fail",
        candidate_count=len(offenders),
        witnesses=witnesses,
        precision_bits=0,
        elapsed_ms=int((time.monotonic() - t0) * 1000),
    )
