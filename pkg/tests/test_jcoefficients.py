"""Exact q-expansion coefficients and their disk cache."""

import math
import os

from smdiff.jcoefficients import _compute, _read_cache, j_coefficients


def naive_coefficients(count: int) -> list[int]:
    """Independent oracle: direct product expansion, no pentagonal shortcut."""
    length = count + 2
    sigma3 = [sum(d**3 for d in range(1, n + 1) if n % d == 0) for n in range(length)]
    e4 = [1] + [240 * sigma3[n] for n in range(1, length)]

    euler = [1] + [0] * (length - 1)
    for n in range(1, length):
        factor = [0] * length
        factor[0] = 1
        if n < length:
            factor[n] = -1
        out = [0] * length
        for i, x in enumerate(euler):
            if x:
                for j, y in enumerate(factor):
                    if y and i + j < length:
                        out[i + j] += x * y
        euler = out

    def mul(f, g):
        out = [0] * length
        for i, x in enumerate(f):
            if x:
                for j, y in enumerate(g):
                    if y and i + j < length:
                        out[i + j] += x * y
        return out

    eta24 = [1] + [0] * (length - 1)
    for _ in range(24):
        eta24 = mul(eta24, euler)

    num = mul(mul(e4, e4), e4)
    # long division: num = jq * eta24
    jq = [0] * length
    rem = list(num)
    for n in range(length):
        jq[n] = rem[n]
        for j in range(1, length - n):
            rem[n + j] -= jq[n] * eta24[j]
    assert jq[0] == 1 and jq[1] == 744
    return jq[2 : count + 2]


def test_known_values():
    c = j_coefficients(2)
    assert c[0] == 196884
    assert c[1] == 21493760


def test_against_independent_oracle():
    assert _compute(10) == naive_coefficients(10)


def test_zero_count():
    assert j_coefficients(0) == []


def test_coefficient_growth_bound():
    # |c(n)| <= e^{4 pi sqrt(n)}: the tail certificate relies on this.
    coeffs = j_coefficients(200)
    for n, c in enumerate(coeffs, start=1):
        assert math.log(abs(c)) <= 4 * math.pi * math.sqrt(n)


def test_cache_file_format_and_reuse(tmp_path, monkeypatch):
    import smdiff.jcoefficients as jc

    monkeypatch.setattr(jc, "_coeffs", [])  # bypass the in-memory cache
    vals = j_coefficients(5, cache_dir=tmp_path)
    cache_file = tmp_path / "jcoef_v1.txt"
    assert cache_file.exists()
    lines = cache_file.read_text().splitlines()
    head = lines[0].split()
    assert head[0] == "jcoef" and head[1] == "v1" and int(head[2]) == len(lines) - 1
    n, v = lines[1].split()
    assert (int(n), int(v)) == (1, 196884)
    assert _read_cache(cache_file)[:5] == vals


def test_cache_growth_preserves_prefix(tmp_path, monkeypatch):
    import smdiff.jcoefficients as jc

    monkeypatch.setattr(jc, "_coeffs", [])
    small = j_coefficients(3, cache_dir=tmp_path)
    monkeypatch.setattr(jc, "_coeffs", [])
    big = j_coefficients(50, cache_dir=tmp_path)
    assert big[:3] == small
