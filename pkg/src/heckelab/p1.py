"""The projective line over Z/N with canonical representatives and fast lookup.

A point is an orbit of pairs (u, v), gcd(u, v, N) = 1, under unit scaling.
The canonical representative has first coordinate g = gcd(u, N) (or (0, 1)
when u = 0 mod N) and the smallest second coordinate reachable by the
stabilizer, so normalization is well defined and idempotent. The lookup table
is a dense N x N int32 array mapping any pair to its representative index,
-1 on pairs that are not projective points; the Hecke engine indexes into it
with whole numpy arrays at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np

from .arith import lift_coprime, prime_divisors, xgcd


def p1_normalize(n: int, u: int, v: int) -> tuple[int, int] | None:
    """Canonical representative of (u:v) in P^1(Z/n), or None off the line."""
    if n == 1:
        return (0, 0)
    u, v = u % n, v % n
    g = gcd(u, n)
    if gcd(g, v) != 1:
        return None
    if g == n:
        return (0, 1)
    s = _scaling_unit(n, u, g)
    v2 = s * v % n
    return (g, _stabilizer_min(n, g, v2))


def _scaling_unit(n: int, u: int, g: int) -> int:
    """A unit s mod n with s*u = g mod n, where g = gcd(u, n)."""
    _, s, _ = xgcd(u, n)
    s %= n
    w = n // g
    while gcd(s, n) != 1:
        s = (s + w) % n
    return s


def _stabilizer_min(n: int, g: int, v2: int) -> int:
    """Least value of v2*lam mod n over units lam = 1 mod n/g."""
    w = n // g
    best = v2
    for t in range(1, g):
        lam = (1 + t * w) % n
        if gcd(lam, n) == 1:
            cand = v2 * lam % n
            if cand < best:
                best = cand
    return best


def psi_index(n: int) -> int:
    """|P^1(Z/n)| = n * prod(1 + 1/p) over primes p | n."""
    out = n
    for p in prime_divisors(n):
        out = out // p * (p + 1)
    return out


@dataclass(frozen=True)
class P1Table:
    n: int
    reps: tuple[tuple[int, int], ...]
    table: np.ndarray = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.reps)

    def index(self, u: int, v: int) -> int:
        """Index of the point (u:v); -1 when gcd(u, v, n) > 1."""
        return int(self.table[u % self.n, v % self.n])

    def lookup(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Vectorized index; inputs must already be reduced mod n."""
        return self.table[u, v]


@lru_cache(maxsize=None)
def p1_table(n: int) -> P1Table:
    if n == 1:
        table = np.zeros((1, 1), dtype=np.int32)
        return P1Table(1, ((0, 0),), table)
    # memoized canonicalization shared across the n^2 pairs
    scaling: dict[int, tuple[int, int]] = {}
    stab: dict[tuple[int, int], int] = {}
    canon: dict[tuple[int, int], tuple[int, int]] = {}
    for u in range(n):
        g = gcd(u, n)
        if g == n:
            for v in range(n):
                if gcd(v, n) == 1:
                    canon[(u, v)] = (0, 1)
            continue
        if u not in scaling:
            scaling[u] = (g, _scaling_unit(n, u, g))
        g, s = scaling[u]
        for v in range(n):
            if gcd(g, gcd(v, n)) != 1:
                continue
            v2 = s * v % n
            key = (g, v2)
            if key not in stab:
                stab[key] = _stabilizer_min(n, g, v2)
            canon[(u, v)] = (g, stab[key])
    reps = tuple(sorted(set(canon.values())))
    pos = {r: i for i, r in enumerate(reps)}
    table = np.full((n, n), -1, dtype=np.int32)
    for (u, v), c in canon.items():
        table[u, v] = pos[c]
    assert len(reps) == psi_index(n)
    return P1Table(n, reps, table)


def lift_to_sl2(c: int, d: int, n: int) -> tuple[int, int, int, int]:
    """Matrix (a, b; c', d') in SL2(Z) with (c', d') = (c, d) mod n."""
    c1, d1 = lift_coprime(c, d, n)
    _, x, y = xgcd(d1, c1)
    # x*d1 + y*c1 = 1, so a = x, b = -y gives a*d1 - b*c1 = 1
    return (x, -y, c1, d1)
