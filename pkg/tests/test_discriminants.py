"""Exact integer layer: factorisation, reduced forms, profiles, scans."""

from math import gcd, isqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import smdiff
from smdiff import _scan_py
from smdiff.discriminants import (
    CLASS_NUMBER_32_BOUND,
    ScanTable,
    class_number_list,
    class_profile,
    factor_discriminant,
    principal_form,
    reduced_forms,
    scan,
    scan_table,
    verify_star_discriminant,
)
from smdiff.errors import InvalidDiscriminant, UnsupportedTarget

H1_DELTAS = [-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163]


def brute_force_forms(delta: int):
    """Independent oracle: raw loop over all (a, b, c) in the reduced domain."""
    n = -delta
    out = []
    for a in range(1, isqrt(n // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b + n) % (4 * a):
                continue
            c = (b * b + n) // (4 * a)
            if c < a:
                continue
            if gcd(gcd(a, abs(b)), c) != 1:
                continue
            if (-a < b <= a < c) or (0 <= b <= a == c):
                out.append((a, b, c))
    return sorted(out)


# -- factorisation ------------------------------------------------------------


@pytest.mark.parametrize(
    "value,fund,cond",
    [(-12, -3, 2), (-15, -15, 1), (-32, -8, 2), (-7392, -1848, 2), (-192, -3, 8)],
)
def test_factor_discriminant_examples(value, fund, cond):
    d = factor_discriminant(value)
    assert (d.fundamental, d.conductor) == (fund, cond)
    assert d.conductor**2 * d.fundamental == value


@pytest.mark.parametrize("bad", [0, 5, -1, -2, -5, -6, -14, -101])
def test_factor_discriminant_rejects(bad):
    with pytest.raises(InvalidDiscriminant):
        factor_discriminant(bad)


FUNDAMENTALS = [-3, -4, -7, -8, -11, -15, -19, -20, -23, -24, -31, -35, -39, -40]


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(FUNDAMENTALS), st.integers(min_value=1, max_value=40))
def test_factor_discriminant_roundtrip(fund, cond):
    value = cond * cond * fund
    d = factor_discriminant(value)
    assert d.fundamental == fund and d.conductor == cond


# -- reduced forms ------------------------------------------------------------


def test_reduced_forms_examples():
    assert [f.as_tuple() for f in reduced_forms(-3)] == [(1, 1, 1)]
    assert [f.as_tuple() for f in reduced_forms(-15)] == [(1, 1, 4), (2, 1, 2)]
    assert [f.as_tuple() for f in reduced_forms(-23)] == [(1, 1, 6), (2, -1, 3), (2, 1, 3)]


def test_reduced_forms_match_oracle_small():
    for n in range(3, 2001):
        if n % 4 not in (0, 3):
            continue
        got = sorted(f.as_tuple() for f in reduced_forms(-n))
        assert got == brute_force_forms(-n), f"mismatch at delta={-n}"


def test_every_discriminant_has_one_principal_form():
    for n in range(3, 1000):
        if n % 4 not in (0, 3):
            continue
        forms = reduced_forms(-n)
        principal = [f for f in forms if f.principal]
        assert len(principal) == 1
        assert principal[0] == principal_form(-n)


def test_form_invariants():
    for n in (15, 23, 47, 84, 480, 7392):
        for f in reduced_forms(-n):
            assert f.discriminant == -n
            assert gcd(gcd(f.a, abs(f.b)), f.c) == 1
            assert (-f.a < f.b <= f.a < f.c) or (0 <= f.b <= f.a == f.c)


# -- profiles -----------------------------------------------------------------


def test_class_profile_examples():
    p3 = class_profile(-3)
    assert (p3.h, p3.ambiguous_count, p3.two_elementary) == (1, 1, True)
    p15 = class_profile(-15)
    assert (p15.h, p15.ambiguous_count, p15.two_elementary) == (2, 2, True)
    p23 = class_profile(-23)
    assert (p23.h, p23.ambiguous_count) == (3, 1)
    assert not p23.two_elementary and not p23.almost_two_elementary


def test_almost_two_elementary_example():
    # h(-39) = 4 with two ambiguous classes: index-2 torsion subgroup.
    p = class_profile(-39)
    assert (p.h, p.ambiguous_count) == (4, 2)
    assert p.almost_two_elementary and not p.two_elementary


# -- scan ---------------------------------------------------------------------


def test_scan_h1_up_to_20():
    got = [d.value for d in scan(20, lambda p: p.h == 1)]
    assert got == [-3, -4, -7, -8, -11, -12, -16, -19]


def test_scan_small_bound_empty():
    assert scan(3, lambda p: p.h == 2) == []


def test_scan_parallel_matches_serial():
    serial = [d.value for d in scan(3000, lambda p: p.two_elementary)]
    import smdiff.discriminants as disc

    disc._TABLE = None  # force a rebuild with jobs=2
    parallel = [d.value for d in scan(3000, lambda p: p.two_elementary, jobs=2)]
    assert serial == parallel


def test_scan_table_partition_sums():
    bound = 5000
    whole_h, whole_amb = _scan_py.scan_range(bound, 1, isqrt(bound // 3) + 1)
    mid = isqrt(bound // 3) // 2
    h1, a1 = _scan_py.scan_range(bound, 1, mid)
    h2, a2 = _scan_py.scan_range(bound, mid, isqrt(bound // 3) + 1)
    assert [x + y for x, y in zip(h1, h2)] == whole_h
    assert [x + y for x, y in zip(a1, a2)] == whole_amb


def test_compiled_kernel_matches_pure():
    from smdiff import _kernel

    if _kernel.BACKEND != "cython":
        pytest.skip("compiled kernel not available")
    from smdiff import _scan_cy

    bound = 4000
    h_c, a_c = _scan_cy.scan_range(bound, 1, isqrt(bound // 3) + 1)
    h_p, a_p = _scan_py.scan_range(bound, 1, isqrt(bound // 3) + 1)
    assert list(h_c) == h_p and list(a_c) == a_p


def test_table_agrees_with_per_delta_enumeration(full_table):
    for n in (3, 15, 23, 427, 7392, 8399):
        profile = class_profile(-n)
        assert full_table.class_number(-n) == profile.h
        assert full_table.ambiguous_count(-n) == profile.ambiguous_count


# -- class number lists -------------------------------------------------------


def test_class_number_one_list(full_table):
    got = [d.value for d in class_number_list(1)]
    assert got == H1_DELTAS


def test_class_number_two_list(full_table):
    got = [d.value for d in class_number_list(2)]
    assert len(got) == 29
    assert max(-v for v in got) == 427


def test_class_number_list_rejects_large_target():
    with pytest.raises(UnsupportedTarget):
        class_number_list(33)
    with pytest.raises(UnsupportedTarget):
        class_number_list(0)


# -- bulk invariants ----------------------------------------------------------


def test_two_elementary_inventory(full_table):
    two = full_table.two_elementary_abs(3, CLASS_NUMBER_32_BOUND)
    assert len(two) == 101
    assert max(two) == 7392
    # every 2-elementary class number is a power of two
    for n in two:
        h = full_table.class_number(-n)
        assert h & (h - 1) == 0


def test_scan_two_elementary_h16_example(full_table):
    values = [
        int(n)
        for n in full_table.valid_abs(3, CLASS_NUMBER_32_BOUND)
        if full_table.is_two_elementary(-int(n)) and full_table.h[int(n)] <= 16
    ]
    assert max(values) == 7392


def test_ambiguous_counts_power_of_two(full_table):
    ns = full_table.valid_abs(3, CLASS_NUMBER_32_BOUND)
    amb = full_table.ambiguous[ns]
    assert (amb >= 1).all()
    assert ((amb & (amb - 1)) == 0).all()


# -- star discriminant --------------------------------------------------------


def test_verify_star_discriminant(full_table):
    report = verify_star_discriminant()
    assert report.status == "pass"
    assert report.witnesses[0] == (-8399, 134)
    # the largest class number below the star discriminant
    assert report.witnesses[1] == (-8279, 126)


def test_verify_star_mutations(full_table):
    # Lowering the threshold to the max class number below -8399 must
    # surface a smaller witness and fail minimality.
    lowered = verify_star_discriminant(threshold=126)
    assert lowered.status == "fail"
    assert (-8279, 126) in lowered.witnesses
    # Raising it beyond h(-8399) = 134 must fail the floor condition.
    raised = verify_star_discriminant(threshold=135)
    assert raised.status == "fail"
