"""Exact integer q-expansion coefficients of the modular j-function.

j(q) = 1/q + 744 + sum_{n>=1} c(n) q^n.  The coefficients are computed once
by exact integer power-series arithmetic as E4(q)^3 divided by the
discriminant cusp form q * prod (1 - q^n)^24, with the Euler product expanded
through the pentagonal number theorem.  Everything is plain Python integers,
so the values are exact by construction; they are cached to a text file and
re-read on subsequent runs.

Cache format (one file per directory):

    jcoef v1 <count>
    1 196884
    2 21493760
    ...
"""

from __future__ import annotations

import os
import threading
from pathlib import Path

from filelock import FileLock

_CACHE_FILE = "jcoef_v1.txt"
_ENV_VAR = "SMDIFF_CACHE_DIR"

_lock = threading.Lock()
_coeffs: list[int] = []  # _coeffs[n-1] = c(n)


def default_cache_dir() -> Path:
    env = os.environ.get(_ENV_VAR)
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CACHE_HOME")
    base = Path(xdg) if xdg else Path.home() / ".cache"
    return base / "smdiff"


def _series_mul(f: list[int], g: list[int], length: int) -> list[int]:
    out = [0] * length
    for i, fi in enumerate(f):
        if fi == 0 or i >= length:
            continue
        top = min(len(g), length - i)
        for j in range(top):
            gj = g[j]
            if gj:
                out[i + j] += fi * gj
    return out


def _series_inverse(f: list[int], length: int) -> list[int]:
    assert f[0] == 1
    inv = [0] * length
    inv[0] = 1
    for n in range(1, length):
        acc = 0
        for k in range(1, min(n, len(f) - 1) + 1):
            fk = f[k]
            if fk:
                acc += fk * inv[n - k]
        inv[n] = -acc
    return inv


def _compute(count: int) -> list[int]:
    """c(1..count) from E4^3 / (q eta^24), all exact integers."""
    length = count + 2  # coefficients of q^0 .. q^{count+1} of j * q

    sigma3 = [0] * length
    for d in range(1, length):
        d3 = d * d * d
        for m in range(d, length, d):
            sigma3[m] += d3
    e4 = [240 * s for s in sigma3]
    e4[0] = 1

    # Euler function prod (1 - q^n) via pentagonal numbers: sparse.
    euler = [0] * length
    k = 0
    while True:
        done = True
        for kk in (k, -k) if k else (0,):
            e = kk * (3 * kk - 1) // 2
            if e < length:
                euler[e] += -1 if kk % 2 else 1
                done = False
        if done:
            break
        k += 1

    e2 = _series_mul(euler, euler, length)
    e4p = _series_mul(e2, e2, length)
    e8 = _series_mul(e4p, e4p, length)
    e16 = _series_mul(e8, e8, length)
    eta24 = _series_mul(e16, e8, length)

    num = _series_mul(_series_mul(e4, e4, length), e4, length)
    jq = _series_mul(num, _series_inverse(eta24, length), length)

    assert jq[0] == 1 and jq[1] == 744, "q-expansion head must be 1/q + 744"
    return jq[2 : count + 2]


def _cache_path(cache_dir=None) -> Path:
    d = Path(cache_dir) if cache_dir else default_cache_dir()
    d.mkdir(parents=True, exist_ok=True)
    return d / _CACHE_FILE


def _read_cache(path: Path) -> list[int]:
    try:
        with open(path) as fh:
            header = fh.readline().split()
            if len(header) != 3 or header[0] != "jcoef" or header[1] != "v1":
                return []
            count = int(header[2])
            vals = []
            for line in fh:
                n_str, v_str = line.split()
                if int(n_str) != len(vals) + 1:
                    return []
                vals.append(int(v_str))
            return vals if len(vals) == count else []
    except (OSError, ValueError):
        return []


def _write_cache(path: Path, vals: list[int]) -> None:
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w") as fh:
        fh.write(f"jcoef v1 {len(vals)}\n")
        for i, v in enumerate(vals, start=1):
            fh.write(f"{i} {v}\n")
    os.replace(tmp, path)


def j_coefficients(count: int, cache_dir=None) -> list[int]:
    """c(1..count); cached in memory and on disk after first computation."""
    if count <= 0:
        return []
    global _coeffs
    with _lock:
        if len(_coeffs) >= count:
            return _coeffs[:count]
        path = _cache_path(cache_dir)
        with FileLock(str(path) + ".lock"):
            disk = _read_cache(path)
            if len(disk) >= count:
                _coeffs = disk
                return _coeffs[:count]
            # Grow geometrically so repeated small bumps do not recompute.
            target = max(count, 2 * len(disk), 128)
            _coeffs = _compute(target)
            if disk and _coeffs[: len(disk)] != disk:
                raise AssertionError("coefficient cache disagrees with recomputation")
            _write_cache(path, _coeffs)
        return _coeffs[:count]
