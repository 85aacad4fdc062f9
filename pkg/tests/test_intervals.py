"""Containment and directed-rounding behaviour of the interval core."""

from fractions import Fraction

import gmpy2
import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smdiff.errors import IntervalDomainError
from smdiff.intervals import IntervalContext, RInt, distance_from_zero, neg_exact

CX = IntervalContext(96)


def contains_fraction(r: RInt, f: Fraction) -> bool:
    # Exact comparison: mpfr endpoints against a rational via mpq.
    q = gmpy2.mpq(f.numerator, f.denominator)
    return r.lo <= q <= r.hi


def test_exact_integer_roundtrip():
    for n in (0, 1, -1, 744, -(10**40), 10**40 + 7):
        r = CX.exact(n)
        assert r.lo <= n <= r.hi


def test_fraction_contains():
    r = CX.fraction(1, 3)
    assert contains_fraction(r, Fraction(1, 3))
    assert r.lo < r.hi  # 1/3 is not dyadic, so rounding must widen


small_fractions = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=64
)


@settings(max_examples=150, deadline=None)
@given(small_fractions, small_fractions)
def test_field_ops_contain_exact(a, b):
    ra, rb = CX.fraction(a.numerator, a.denominator), CX.fraction(b.numerator, b.denominator)
    assert contains_fraction(CX.add(ra, rb), a + b)
    assert contains_fraction(CX.sub(ra, rb), a - b)
    assert contains_fraction(CX.mul(ra, rb), a * b)
    assert contains_fraction(CX.sqr(ra), a * a)
    assert contains_fraction(CX.neg(ra), -a)
    assert contains_fraction(CX.abs(ra), abs(a))
    if b != 0 and (b > 0 or b < 0):
        rb_safe = CX.fraction(b.numerator, b.denominator)
        if not rb_safe.contains_zero():
            assert contains_fraction(CX.div(ra, rb_safe), a / b)


def test_division_by_zero_interval_raises():
    z = CX.hull(CX.exact(-1), CX.exact(1))
    with pytest.raises(IntervalDomainError):
        CX.div(CX.exact(1), z)


def test_intersect_disjoint_raises():
    with pytest.raises(IntervalDomainError):
        CX.intersect(CX.exact(0), CX.exact(1))


def _mp_ref(fn, x, prec=200):
    with mp.workprec(prec):
        return fn(mp.mpf(x))


@pytest.mark.parametrize("x", [1, 2, 3, 10, 97])
def test_transcendental_containment(x):
    r = CX.exact(x)
    for name, mp_fn in (("exp", mp.exp), ("sqrt", mp.sqrt), ("log", mp.log)):
        got = getattr(CX, name)(r)
        ref = _mp_ref(mp_fn, x)
        assert float(got.lo) <= ref <= float(got.hi)
        assert got.lo < got.hi or float(got.lo) == ref


def test_pi_contains_reference():
    r = CX.pi()
    assert float(r.lo) < mp.pi < float(r.hi)


@pytest.mark.parametrize("num,den", [(0, 1), (1, 2), (1, 1), (-1, 3), (3, 2), (-7, 4)])
def test_cos_sin_contain_reference(num, den):
    theta = CX.div(CX.mul(CX.pi(), CX.exact(num)), CX.exact(den))
    ref_c = _mp_ref(lambda t: mp.cos(t * mp.pi), Fraction(num, den))
    ref_s = _mp_ref(lambda t: mp.sin(t * mp.pi), Fraction(num, den))
    c, s = CX.cos(theta), CX.sin(theta)
    assert float(c.lo) - 1e-20 <= ref_c <= float(c.hi) + 1e-20
    assert float(s.lo) - 1e-20 <= ref_s <= float(s.hi) + 1e-20


def test_cos_over_extremum_reaches_one():
    # The interval [-0.1, 0.1] contains the maximum of cos at 0.
    wide = CX.hull(CX.fraction(-1, 10), CX.fraction(1, 10))
    c = CX.cos(wide)
    assert c.hi >= 1


def test_neg_exact_is_involutive_at_high_precision():
    x = IntervalContext(512).exp(IntervalContext(512).exact(1)).hi
    assert neg_exact(neg_exact(x)) == x
    assert neg_exact(x) + x == 0  # comparison after exact cancellation


def test_pow_int_matches_repeated_multiplication():
    r = CX.fraction(3, 7)
    direct = CX.exact(1)
    for _ in range(5):
        direct = CX.mul(direct, r)
    via_pow = CX.pow_int(r, 5)
    assert contains_fraction(via_pow, Fraction(3, 7) ** 5)
    assert via_pow.lo <= direct.hi and direct.lo <= via_pow.hi


def test_midpoint_radius_cover_endpoints():
    r = CX.fraction(1, 3)
    mid, rad = CX.midpoint(r), CX.radius(r)
    assert mid - rad <= r.lo and r.hi <= mid + rad


def test_distance_from_zero():
    box_pos = CX.c_exact(5, 0)
    assert distance_from_zero(CX, box_pos) == 5
    box_neg = CX.c_exact(0, -3)
    assert distance_from_zero(CX, box_neg) == 3
    box_zero = CX.c_exact(0, 0)
    assert distance_from_zero(CX, box_zero) == 0


def test_complex_multiplication_contains_exact():
    # (1 + 2i)(3 - 5i) = 13 + i
    a = CX.c_exact(1, 2)
    b = CX.c_exact(3, -5)
    prod = CX.c_mul(a, b)
    assert prod.re.contains_int(13) and prod.im.contains_int(1)
    quot = CX.c_div(prod, b)
    assert quot.re.contains_int(1) and quot.im.contains_int(2)
