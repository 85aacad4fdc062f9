"""Directed-rounding interval arithmetic on top of gmpy2 / MPFR.

Every quantity is carried as a closed interval [lo, hi] of mpfr values that
is guaranteed to contain the exact real number.  Lower endpoints are computed
in a RoundDown context and upper endpoints in a RoundUp context; MPFR's
transcendental functions are correctly rounded, so directed rounding of a
monotone function applied to the endpoints yields a rigorous enclosure.

Complex enclosures are rectangles (an interval per component).  This trades a
sqrt(2) factor in tightness for exact containment, which is all the verifier
needs.

Nothing in this module ever rounds toward the exact value: when in doubt the
interval widens.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import gmpy2
from gmpy2 import mpfr, mpz

from .errors import IntervalDomainError

_CTX_CACHE: dict[int, tuple] = {}


def _ctxs(prec: int):
    """Return (round-down, round-up, round-nearest) contexts at prec bits."""
    got = _CTX_CACHE.get(prec)
    if got is None:
        got = (
            gmpy2.context(precision=prec, round=gmpy2.RoundDown),
            gmpy2.context(precision=prec, round=gmpy2.RoundUp),
            gmpy2.context(precision=prec, round=gmpy2.RoundToNearest),
        )
        _CTX_CACHE[prec] = got
    return got


_NEG_CTX: dict[int, object] = {}


def neg_exact(x: mpfr) -> mpfr:
    """Sign flip at the operand's own precision: always exact.

    Python-operator arithmetic on mpfr values (including unary minus) rounds
    through the thread's default context, so it must never touch endpoint
    values; this helper is the one sanctioned negation.
    """
    ctx = _NEG_CTX.get(x.precision)
    if ctx is None:
        ctx = gmpy2.context(precision=x.precision)
        _NEG_CTX[x.precision] = ctx
    return ctx.minus(x)


Number = Union[int, mpz, mpfr]


@dataclass(frozen=True, slots=True)
class RInt:
    """Closed real interval [lo, hi]; immutable."""

    lo: mpfr
    hi: mpfr

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise IntervalDomainError(f"empty interval [{self.lo}, {self.hi}]")

    def __repr__(self):
        return f"RInt({self.lo!r}, {self.hi!r})"

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def contains_int(self, n: int) -> bool:
        return self.lo <= n <= self.hi

    def is_positive(self) -> bool:
        """Certified: every point of the interval is > 0."""
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0


@dataclass(frozen=True, slots=True)
class CInt:
    """Rectangular complex enclosure."""

    re: RInt
    im: RInt

    def excludes_zero(self) -> bool:
        return not (self.re.contains_zero() and self.im.contains_zero())


class IntervalContext:
    """Interval operations at a fixed working precision."""

    def __init__(self, prec: int):
        if prec < 8:
            raise ValueError("precision must be at least 8 bits")
        self.prec = prec
        self._d, self._u, self._n = _ctxs(prec)

    # -- constructors ------------------------------------------------------

    def exact(self, n: Number) -> RInt:
        d, u = self._d, self._u
        return RInt(d.add(n, mpfr(0)), u.add(n, mpfr(0)))

    def fraction(self, p: int, q: int) -> RInt:
        if q < 0:
            p, q = -p, -q
        d, u = self._d, self._u
        return RInt(d.div(mpz(p), mpz(q)), u.div(mpz(p), mpz(q)))

    def hull(self, *vals: RInt) -> RInt:
        return RInt(min(v.lo for v in vals), max(v.hi for v in vals))

    def intersect(self, a: RInt, b: RInt) -> RInt:
        lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
        if lo > hi:
            raise IntervalDomainError("intersection of disjoint enclosures")
        return RInt(lo, hi)

    def pi(self) -> RInt:
        return RInt(self._d.const_pi(), self._u.const_pi())

    # -- arithmetic --------------------------------------------------------

    def add(self, a: RInt, b: RInt) -> RInt:
        return RInt(self._d.add(a.lo, b.lo), self._u.add(a.hi, b.hi))

    def sub(self, a: RInt, b: RInt) -> RInt:
        return RInt(self._d.sub(a.lo, b.hi), self._u.sub(a.hi, b.lo))

    def neg(self, a: RInt) -> RInt:
        return RInt(neg_exact(a.hi), neg_exact(a.lo))

    def mul(self, a: RInt, b: RInt) -> RInt:
        d, u = self._d, self._u
        pairs = ((a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi))
        return RInt(
            min(d.mul(x, y) for x, y in pairs),
            max(u.mul(x, y) for x, y in pairs),
        )

    def mul_int(self, a: RInt, n: int) -> RInt:
        if n >= 0:
            return RInt(self._d.mul(a.lo, mpz(n)), self._u.mul(a.hi, mpz(n)))
        return RInt(self._d.mul(a.hi, mpz(n)), self._u.mul(a.lo, mpz(n)))

    def div(self, a: RInt, b: RInt) -> RInt:
        if b.contains_zero():
            raise IntervalDomainError("division by interval containing zero")
        d, u = self._d, self._u
        pairs = ((a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi))
        return RInt(
            min(d.div(x, y) for x, y in pairs),
            max(u.div(x, y) for x, y in pairs),
        )

    def inv(self, a: RInt) -> RInt:
        return self.div(self.exact(1), a)

    def sqr(self, a: RInt) -> RInt:
        d, u = self._d, self._u
        if a.lo >= 0:
            return RInt(d.mul(a.lo, a.lo), u.mul(a.hi, a.hi))
        if a.hi <= 0:
            return RInt(d.mul(a.hi, a.hi), u.mul(a.lo, a.lo))
        return RInt(mpfr(0), max(u.mul(a.lo, a.lo), u.mul(a.hi, a.hi)))

    def abs(self, a: RInt) -> RInt:
        if a.lo >= 0:
            return a
        if a.hi <= 0:
            return RInt(neg_exact(a.hi), neg_exact(a.lo))
        return RInt(mpfr(0), max(neg_exact(a.lo), a.hi))

    def sqrt(self, a: RInt) -> RInt:
        if a.lo < 0:
            raise IntervalDomainError(f"sqrt of interval with lo = {a.lo}")
        return RInt(self._d.sqrt(a.lo), self._u.sqrt(a.hi))

    def sqrt_int(self, n: int) -> RInt:
        return self.sqrt(self.exact(n))

    def exp(self, a: RInt) -> RInt:
        return RInt(self._d.exp(a.lo), self._u.exp(a.hi))

    def log(self, a: RInt) -> RInt:
        if a.lo <= 0:
            raise IntervalDomainError("log of interval reaching 0")
        return RInt(self._d.log(a.lo), self._u.log(a.hi))

    def pow_int(self, a: RInt, n: int) -> RInt:
        if n < 0:
            return self.inv(self.pow_int(a, -n))
        result = self.exact(1)
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    # -- trigonometric -----------------------------------------------------

    def _cos_like(self, a: RInt, fn_name: str, crit_offset) -> RInt:
        """Enclose cos or sin over [a.lo, a.hi].

        Endpoint images are hulled; the hull is widened to +-1 whenever a
        critical point (where the derivative vanishes) may lie inside the
        argument interval.  Critical points of cos are k*pi, of sin are
        (k + 1/2)*pi; crit_offset is 0 or 1/2 accordingly.
        """
        d, u = self._d, self._u
        fd, fu = getattr(d, fn_name), getattr(u, fn_name)
        lo = min(fd(a.lo), fd(a.hi))
        hi = max(fu(a.lo), fu(a.hi))
        pi = self.pi()
        # Conservative k range from low-precision float quotients.
        k_lo = int(float(a.lo) / 3.14159) - 2
        k_hi = int(float(a.hi) / 3.14159) + 2
        for k in range(k_lo, k_hi + 1):
            kk = self.add(self.exact(k), self.fraction(int(crit_offset * 2), 2))
            crit = self.mul(pi, kk)
            if crit.hi < a.lo or crit.lo > a.hi:
                continue
            # max at even k for cos (odd k -> min); sin: even k -> max.
            if k % 2 == 0:
                hi = mpfr(1)
            else:
                lo = mpfr(-1)
        return RInt(lo, max(hi, lo))

    def cos(self, a: RInt) -> RInt:
        return self._cos_like(a, "cos", 0)

    def sin(self, a: RInt) -> RInt:
        return self._cos_like(a, "sin", 0.5)

    # -- midpoint / radius ------------------------------------------------

    def midpoint(self, a: RInt) -> mpfr:
        return self._n.div(self._n.add(a.lo, a.hi), mpfr(2))

    def radius(self, a: RInt) -> mpfr:
        mid = self.midpoint(a)
        return max(self._u.sub(a.hi, mid), self._u.sub(mid, a.lo), mpfr(0))

    # -- complex rectangles --------------------------------------------------

    def c_exact(self, re: Number = 0, im: Number = 0) -> CInt:
        return CInt(self.exact(re), self.exact(im))

    def c_add(self, a: CInt, b: CInt) -> CInt:
        return CInt(self.add(a.re, b.re), self.add(a.im, b.im))

    def c_sub(self, a: CInt, b: CInt) -> CInt:
        return CInt(self.sub(a.re, b.re), self.sub(a.im, b.im))

    def c_neg(self, a: CInt) -> CInt:
        return CInt(self.neg(a.re), self.neg(a.im))

    def c_mul(self, a: CInt, b: CInt) -> CInt:
        return CInt(
            self.sub(self.mul(a.re, b.re), self.mul(a.im, b.im)),
            self.add(self.mul(a.re, b.im), self.mul(a.im, b.re)),
        )

    def c_mul_int(self, a: CInt, n: int) -> CInt:
        return CInt(self.mul_int(a.re, n), self.mul_int(a.im, n))

    def c_mul_real(self, a: CInt, r: RInt) -> CInt:
        return CInt(self.mul(a.re, r), self.mul(a.im, r))

    def c_div(self, a: CInt, b: CInt) -> CInt:
        den = self.c_abs_sq(b)
        num = self.c_mul(a, CInt(b.re, self.neg(b.im)))
        return CInt(self.div(num.re, den), self.div(num.im, den))

    def c_abs_sq(self, a: CInt) -> RInt:
        return self.add(self.sqr(a.re), self.sqr(a.im))

    def c_abs(self, a: CInt) -> RInt:
        return self.sqrt(self.c_abs_sq(a))

    def c_conj(self, a: CInt) -> CInt:
        return CInt(a.re, self.neg(a.im))

    def c_intersect(self, a: CInt, b: CInt) -> CInt:
        return CInt(self.intersect(a.re, b.re), self.intersect(a.im, b.im))


def distance_from_zero(cx: IntervalContext, box: CInt) -> mpfr:
    """Certified lower bound for |z| over all z in the rectangle.

    Zero unless at least one component excludes 0; the component distances
    are themselves certified lower bounds, so their max is one too.
    """
    re_d = max(box.re.lo, neg_exact(box.re.hi), mpfr(0))
    im_d = max(box.im.lo, neg_exact(box.im.hi), mpfr(0))
    return max(re_d, im_d)
