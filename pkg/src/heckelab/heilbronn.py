"""Determinant-n integer matrix families that drive the Hecke action.

Two families: the quadratic-size enumeration (all (a, b; c, d) with det n,
a > b >= 0, d > c >= 0), which is trivially correct and serves as the oracle,
and the continued-fraction family for primes, whose size grows like p log p
and is the one used in production. The two induce the same operators; the
test suite checks that on real symbol spaces.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .arith import is_prime


def merel_family(n: int) -> list[tuple[int, int, int, int]]:
    """All integer (a, b; c, d), det n, a > b >= 0, d > c >= 0."""
    out = []
    for a in range(1, n + 1):
        for b in range(a):
            step = a - b
            for c in range(n // step + 1):
                num = n + b * c
                if num % a == 0:
                    d = num // a
                    if d > c:
                        out.append((a, b, c, d))
    assert all(a * d - b * c == n for a, b, c, d in out)
    return out


def _round_nearest(a: int, b: int) -> int:
    """Nearest integer to a/b; any tie direction keeps the family valid."""
    q, r = divmod(a, b)
    if (2 * r >= b) if b > 0 else (2 * r <= b):
        q += 1
    return q


def cremona_family(p: int) -> list[tuple[int, int, int, int]]:
    """Continued-fraction family of determinant p, for p prime.

    Each r gives a chain started at (p, -r; 0, 1) and driven by the
    nearest-integer continued fraction of p/r; successive states share a
    column, so every determinant stays p.
    """
    assert is_prime(p)
    if p == 2:
        return [(1, 0, 0, 2), (2, 0, 0, 1), (1, 0, 1, 2), (2, 1, 0, 1)]
    out = [(1, 0, 0, p)]
    for r in range(-(p - 1) // 2, (p - 1) // 2 + 1):
        x1, x2, y1, y2 = p, -r, 0, 1
        a, b = -p, r
        out.append((x1, x2, y1, y2))
        while b:
            q = _round_nearest(a, b)
            a, b = -b, a - b * q
            x1, x2 = x2, q * x2 - x1
            y1, y2 = y2, q * y2 - y1
            out.append((x1, x2, y1, y2))
    assert all(a * d - b * c == p for a, b, c, d in out)
    return out


# The family for p holds ~p matrices, so an unbounded cache would grow
# linearly in the census bound; a census visits each prime once, and one
# prime needs its family for only a handful of modular images, so a small
# window is enough even with a thread pool in flight.
@lru_cache(maxsize=8)
def family_arrays(p: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """The production family for prime p as four aligned int64 arrays."""
    mats = cremona_family(p)
    a = np.array([m[0] for m in mats], dtype=np.int64)
    b = np.array([m[1] for m in mats], dtype=np.int64)
    c = np.array([m[2] for m in mats], dtype=np.int64)
    d = np.array([m[3] for m in mats], dtype=np.int64)
    return a, b, c, d
