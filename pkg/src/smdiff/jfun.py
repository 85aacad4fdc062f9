"""Certified values of singular moduli and exact class polynomials.

A singular modulus attached to a reduced form (a, b, c) of discriminant
delta is j evaluated at (-b + i sqrt(|delta|)) / (2a).  With
q = exp(2 pi i tau) this point gives |q| = exp(-pi sqrt(|delta|)/a) and
argument -pi b / a, so j is summed as

    j = 1/q + 744 + sum_{n=1..N} c(n) q^n + tail,

entirely in directed-rounding interval arithmetic.  The truncation tail is
bounded through the classical coefficient estimate

    |c(n)| <= exp(4 pi sqrt(n)),

which follows from the effective bounds of Brisebarre and Philibert
("Effective lower and upper bounds for the Fourier coefficients of powers of
the modular invariant j", J. Ramanujan Math. Soc. 20, 2005); see also
Mahler, J. Austral. Math. Soc. 17 (1974) 65-67.  Successive bound ratios
exp(4 pi / (sqrt(n+1) + sqrt(n))) * |q| decrease in n, so once the ratio at
N+1 is at most 1/2 the whole tail is at most twice its first term.  For any
reduced form |q| <= exp(-pi sqrt(3)) < 0.0044, so the ratio condition is met
already for tiny N.

Enclosures are nested under precision doubling by construction: the value
returned at p bits is the intersection of raw evaluations at p, p/2, p/4, ...
down to a fixed floor, and the chain at 2p extends the chain at p.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Optional

import gmpy2
import sympy

from .discriminants import (
    Discriminant,
    ReducedForm,
    class_profile,
    factor_discriminant,
    reduced_forms,
)
from .errors import (
    InvalidDiscriminant,
    PrecisionExhausted,
    WrongClassNumber,
)
from .intervals import CInt, IntervalContext, RInt, neg_exact
from .jcoefficients import j_coefficients

DEFAULT_PRECISION = 768
PRECISION_CAP = 8192
MAX_SERIES_TERMS = 4096
_CHAIN_FLOOR = 64


class CertifiedValue:
    """Midpoint-radius view of a rectangular complex enclosure.

    The underlying interval box is kept so that arithmetic on certified
    values stays an enclosure of the exact result.
    """

    __slots__ = ("box", "precision_bits")

    def __init__(self, box: CInt, precision_bits: int):
        self.box = box
        self.precision_bits = precision_bits

    # -- surface -------------------------------------------------------------

    def _cx(self) -> IntervalContext:
        return IntervalContext(self.precision_bits)

    @property
    def re_mid(self):
        return self._cx().midpoint(self.box.re)

    @property
    def re_rad(self):
        return self._cx().radius(self.box.re)

    @property
    def im_mid(self):
        return self._cx().midpoint(self.box.im)

    @property
    def im_rad(self):
        return self._cx().radius(self.box.im)

    @property
    def radius(self):
        return max(self.re_rad, self.im_rad)

    def is_real_enclosure(self) -> bool:
        return self.box.im.contains_zero()

    def contains_int(self, n: int) -> bool:
        return self.box.re.contains_int(n) and self.box.im.contains_zero()

    def contained_in(self, other: "CertifiedValue") -> bool:
        return (
            other.box.re.lo <= self.box.re.lo
            and self.box.re.hi <= other.box.re.hi
            and other.box.im.lo <= self.box.im.lo
            and self.box.im.hi <= other.box.im.hi
        )

    def __repr__(self):
        return (
            f"CertifiedValue(re={float(self.re_mid):.6g}+-{float(self.re_rad):.2g}, "
            f"im={float(self.im_mid):.6g}+-{float(self.im_rad):.2g}, "
            f"prec={self.precision_bits})"
        )

    # -- enclosure arithmetic ------------------------------------------------

    @classmethod
    def from_int(cls, n: int, precision_bits: int = DEFAULT_PRECISION):
        cx = IntervalContext(precision_bits)
        return cls(cx.c_exact(n), precision_bits)

    def _pair(self, other):
        prec = max(self.precision_bits, getattr(other, "precision_bits", 0))
        cx = IntervalContext(prec)
        if isinstance(other, CertifiedValue):
            return cx, other.box, prec
        if isinstance(other, int):
            return cx, cx.c_exact(other), prec
        return cx, None, prec

    def __add__(self, other):
        cx, box, prec = self._pair(other)
        if box is None:
            return NotImplemented
        return CertifiedValue(cx.c_add(self.box, box), prec)

    __radd__ = __add__

    def __sub__(self, other):
        cx, box, prec = self._pair(other)
        if box is None:
            return NotImplemented
        return CertifiedValue(cx.c_sub(self.box, box), prec)

    def __rsub__(self, other):
        cx, box, prec = self._pair(other)
        if box is None:
            return NotImplemented
        return CertifiedValue(cx.c_sub(box, self.box), prec)

    def __mul__(self, other):
        cx, box, prec = self._pair(other)
        if box is None:
            return NotImplemented
        return CertifiedValue(cx.c_mul(self.box, box), prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        cx, box, prec = self._pair(other)
        if box is None:
            return NotImplemented
        return CertifiedValue(cx.c_div(self.box, box), prec)

    def __neg__(self):
        cx = self._cx()
        return CertifiedValue(cx.c_neg(self.box), self.precision_bits)

    def __abs__(self):
        cx = self._cx()
        return CertifiedValue(CInt(cx.c_abs(self.box), cx.exact(0)), self.precision_bits)

    def exp(self):
        """Enclosure of exp(z); provided for exactly real enclosures only."""
        cx = self._cx()
        if self.box.im.lo != 0 or self.box.im.hi != 0:
            raise ValueError("exp requires an exactly real enclosure")
        return CertifiedValue(CInt(cx.exp(self.box.re), cx.exact(0)), self.precision_bits)


@dataclass(frozen=True)
class SingularModulusValue:
    """One singular modulus: its form, discriminant, and certified value."""

    form: ReducedForm
    delta: Discriminant
    value: CertifiedValue
    dominant: bool
    real_class: bool


@dataclass(frozen=True)
class IntegerPolynomial:
    """Monic integer polynomial, coefficients ascending (constant first)."""

    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, x: CertifiedValue) -> CertifiedValue:
        acc = CertifiedValue.from_int(0, x.precision_bits)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            if k == self.degree:
                term = ""
            else:
                term = " + " if c > 0 else " - "
                c = abs(c)
            if k == 0:
                term += str(c)
            else:
                xk = "X" if k == 1 else f"X^{k}"
                term += xk if c == 1 and k == self.degree else (f"{c}*{xk}" if c != 1 else xk)
            parts.append(term)
        return "".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# series evaluation


def _terms_needed(r_hi: float, prec: int) -> int:
    """Series length so the certified tail is below the working resolution."""
    import math

    if r_hi <= 0:
        return 1
    logr = math.log(r_hi)
    # Aim the tail at 2^-(prec+8) relative to the value scale max(1, 1/|q|).
    target = -(prec + 8) * math.log(2) + max(0.0, -logr)
    n = 1
    while n < MAX_SERIES_TERMS:
        if math.log(2) + 4 * math.pi * math.sqrt(n + 1) + (n + 1) * logr <= target:
            break
        n += 1
    return n


def _raw_box(a: int, b: int, n_abs: int, prec: int) -> CInt:
    """One uncombined interval evaluation of j at the point of (a, b, *)."""
    cx = IntervalContext(prec)
    pi = cx.pi()
    sq = cx.sqrt_int(n_abs)
    t = cx.div(cx.mul(pi, sq), cx.exact(a))
    r = cx.exp(cx.neg(t))
    r_inv = cx.exp(t)

    if b == 0:
        u_re, u_im = cx.exact(1), cx.exact(0)
    elif abs(b) == a:
        u_re, u_im = cx.exact(-1), cx.exact(0)
    else:
        theta = cx.div(cx.mul(pi, cx.exact(b)), cx.exact(a))
        u_re = cx.cos(theta)
        u_im = cx.neg(cx.sin(theta))
    # q = r * e^{-i pi b / a}; 1/q = r_inv * conj(unit).
    q = CInt(cx.mul(r, u_re), cx.mul(r, u_im))
    acc = CInt(
        cx.add(cx.mul(r_inv, u_re), cx.exact(744)),
        cx.neg(cx.mul(r_inv, u_im)),
    )

    n_terms = _terms_needed(float(r.hi), prec)
    coeffs = j_coefficients(n_terms)
    q_pow = cx.c_exact(1)
    for n in range(1, n_terms + 1):
        q_pow = cx.c_mul(q_pow, q)
        acc = cx.c_add(acc, cx.c_mul_int(q_pow, coeffs[n - 1]))

    # Tail certificate: geometric ratio at N+1 must be <= 1/2.
    ratio = cx.mul(
        cx.exp(cx.div(cx.mul_int(pi, 4), cx.add(cx.sqrt_int(n_terms + 1), cx.sqrt_int(n_terms)))),
        r,
    )
    if not ratio.hi <= 0.5:
        raise PrecisionExhausted(
            f"tail ratio {float(ratio.hi)} > 1/2 at N = {n_terms}; "
            "raise the series term cap"
        )
    tail_hi = cx.mul_int(
        cx.mul(
            cx.exp(cx.mul(cx.mul_int(pi, 4), cx.sqrt_int(n_terms + 1))),
            cx.pow_int(r, n_terms + 1),
        ),
        2,
    ).hi
    tail = RInt(neg_exact(tail_hi), tail_hi)
    return CInt(cx.add(acc.re, tail), cx.add(acc.im, tail))


@lru_cache(maxsize=None)
def _chain_box(a: int, b: int, n_abs: int, prec: int) -> CInt:
    """Nested enclosure: intersection of raw boxes at prec, prec/2, ..."""
    cx = IntervalContext(prec)
    box = _raw_box(a, b, n_abs, prec)
    p = prec // 2
    while p >= _CHAIN_FLOOR:
        box = cx.c_intersect(box, _raw_box(a, b, n_abs, p))
        p //= 2
    return box


def evaluate_singular_modulus(
    form: ReducedForm,
    delta,
    precision_bits: int = DEFAULT_PRECISION,
    *,
    max_radius=None,
    precision_cap: int = PRECISION_CAP,
) -> CertifiedValue:
    """Certified enclosure of the singular modulus attached to form.

    If max_radius is given, precision is doubled until the enclosure radius
    is below it; PrecisionExhausted is raised when the cap cannot meet it.
    """
    d = factor_discriminant(delta)
    if form.discriminant != d.value:
        raise InvalidDiscriminant(
            f"form {form.as_tuple()} has discriminant {form.discriminant}, not {d.value}"
        )
    prec = precision_bits
    while True:
        value = CertifiedValue(_chain_box(form.a, form.b, d.abs_value, prec), prec)
        if max_radius is None or value.radius <= max_radius:
            return value
        if prec >= precision_cap:
            raise PrecisionExhausted(
                f"radius {float(value.radius):.3g} above target at cap {precision_cap}"
            )
        prec = min(2 * prec, precision_cap)


def all_singular_moduli(
    delta, precision_bits: int = DEFAULT_PRECISION, **kw
) -> list[SingularModulusValue]:
    """One certified value per reduced form, in (a, b) order."""
    d = factor_discriminant(delta)
    out = []
    for form in reduced_forms(d):
        value = evaluate_singular_modulus(form, d, precision_bits, **kw)
        if form.ambiguous and not value.is_real_enclosure():
            raise AssertionError(
                f"ambiguous form {form.as_tuple()} produced a non-real enclosure"
            )
        out.append(
            SingularModulusValue(
                form=form,
                delta=d,
                value=value,
                dominant=form.principal,
                real_class=form.ambiguous,
            )
        )
    return out


def dominant_singular_modulus(
    delta, precision_bits: int = DEFAULT_PRECISION, **kw
) -> SingularModulusValue:
    """The unique denominator-1 modulus; positive exactly when delta = 0 mod 4."""
    d = factor_discriminant(delta)
    k = d.abs_value & 1
    form = ReducedForm(1, k, (k + d.abs_value) // 4)
    value = evaluate_singular_modulus(form, d, precision_bits, **kw)
    if d.value % 4 == 0:
        if not value.box.re.hi > 0:
            raise AssertionError(f"dominant value of {d.value} should be positive")
    else:
        if not value.box.re.lo <= 0:
            raise AssertionError(f"dominant value of {d.value} should not be positive")
    return SingularModulusValue(form, d, value, dominant=True, real_class=True)


def real_nondominant_singular_moduli(
    delta, precision_bits: int = DEFAULT_PRECISION, **kw
) -> list[SingularModulusValue]:
    """Values of the ambiguous, non-principal forms (real but not dominant)."""
    d = factor_discriminant(delta)
    return [
        v
        for v in all_singular_moduli(d, precision_bits, **kw)
        if v.real_class and not v.dominant
    ]


# ---------------------------------------------------------------------------
# class polynomials


def _floor_exact(x) -> int:
    """Floor of an mpfr as an exact big integer (no context rounding)."""
    t = int(x)  # truncation toward zero; exact conversion
    if x < 0 and x != t:
        t -= 1
    return t


def _double_exact(x):
    """2*x at the operand's own precision: exponent bump, always exact."""
    return gmpy2.context(precision=x.precision).mul_2exp(x, 1)


def _certified_int(r: RInt) -> Optional[int]:
    """The unique integer n with r inside (n - 1/2, n + 1/2), if certified.

    Comparisons are done on 2*r against odd integers; the doubling and the
    comparisons are exact, so this cannot round its way to a wrong
    certificate.  Radius exactly 1/2 fails, as it must.
    """
    lo2 = _double_exact(r.lo)
    hi2 = _double_exact(r.hi)
    f = _floor_exact(r.lo)
    for n in (f, f + 1):
        if lo2 > 2 * n - 1 and hi2 < 2 * n + 1:
            return n
    return None


def _poly_mul(cx: IntervalContext, f: list[RInt], g: list[RInt]) -> list[RInt]:
    out = [cx.exact(0)] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        for j, gj in enumerate(g):
            out[i + j] = cx.add(out[i + j], cx.mul(fi, gj))
    return out


def class_polynomial(
    delta,
    precision_bits: int = DEFAULT_PRECISION,
    *,
    precision_cap: int = PRECISION_CAP,
) -> IntegerPolynomial:
    """Monic integer polynomial whose roots are the singular moduli of delta.

    Built as a certified product of one linear factor per real modulus and
    one quadratic factor per conjugate pair, then rounded; every coefficient
    must be pinned by an enclosure of radius strictly below 1/2, and the
    precision doubles automatically until that certification succeeds.
    """
    d = factor_discriminant(delta)
    forms = reduced_forms(d)
    prec = precision_bits
    while True:
        cx = IntervalContext(prec)
        poly = [cx.exact(1)]
        ok = True
        for form in forms:
            if form.b < 0:
                continue  # conjugate handled together with its b > 0 partner
            value = CertifiedValue(_chain_box(form.a, form.b, d.abs_value, prec), prec)
            if form.ambiguous:
                factor = [cx.neg(value.box.re), cx.exact(1)]
            else:
                # (X - x)(X - conj x) = X^2 - 2 Re(x) X + |x|^2
                factor = [
                    cx.c_abs_sq(value.box),
                    cx.mul_int(value.box.re, -2),
                    cx.exact(1),
                ]
            poly = _poly_mul(cx, poly, factor)
        coeffs = []
        for r in poly:
            n = _certified_int(r)
            if n is None:
                ok = False
                break
            coeffs.append(n)
        if ok:
            if coeffs[-1] != 1 or len(coeffs) != len(forms) + 1:
                raise AssertionError("class polynomial must be monic of degree h")
            return IntegerPolynomial(tuple(coeffs))
        if prec >= precision_cap:
            raise PrecisionExhausted(
                f"coefficients of H_{d.value} not certified at cap {precision_cap}"
            )
        prec = min(2 * prec, precision_cap)


def _signed_squarefree_part(n: int) -> int:
    if n == 0:
        return 0
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in sympy.factorint(abs(n)).items():
        if e % 2:
            out *= p
    return out


def quadratic_field_kernel(delta, precision_bits: int = DEFAULT_PRECISION) -> int:
    """Squarefree integer generating the field of the h = 2 moduli of delta.

    Two class-number-2 discriminants generate the same quadratic field if and
    only if their kernels coincide.
    """
    d = factor_discriminant(delta)
    profile = class_profile(d)
    if profile.h != 2:
        raise WrongClassNumber(f"h({d.value}) = {profile.h}, need 2")
    poly = class_polynomial(d, precision_bits)
    c0, c1, _ = poly.coefficients
    disc = c1 * c1 - 4 * c0
    return _signed_squarefree_part(disc)
