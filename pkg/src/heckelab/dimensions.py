"""Dimension formulas for cusp forms on Gamma0(N), used as hard oracles.

Everything is the classical genus computation: index, elliptic point counts,
cusp count, then dim S_k from Riemann-Roch. The new-subspace dimension comes
from Moebius-style inversion of the old/new decomposition.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .arith import divisors, euler_phi, factorize, kronecker, prime_divisors
from math import gcd


def index_mu(n: int) -> int:
    """Index of Gamma0(n) in SL2(Z): n * prod(1 + 1/p)."""
    out = n
    for p in prime_divisors(n):
        out = out // p * (p + 1)
    return out


def nu2(n: int) -> int:
    """Number of elliptic points of order 2."""
    if n % 4 == 0:
        return 0
    out = 1
    for p in prime_divisors(n):
        if p != 2:
            out *= 1 + kronecker(-1, p)
    return out


def nu3(n: int) -> int:
    """Number of elliptic points of order 3."""
    if n % 9 == 0:
        return 0
    out = 1
    for p in prime_divisors(n):
        if p != 3:
            out *= 1 + kronecker(-3, p)
    return out


def num_cusps(n: int) -> int:
    return sum(euler_phi(gcd(d, n // d)) for d in divisors(n))


def genus_x0(n: int) -> int:
    g = (
        1
        + Fraction(index_mu(n), 12)
        - Fraction(nu2(n), 4)
        - Fraction(nu3(n), 3)
        - Fraction(num_cusps(n), 2)
    )
    assert g.denominator == 1
    return int(g)


def dim_cusp_forms(n: int, k: int) -> int:
    """dim S_k(Gamma0(n)) for even k >= 2."""
    if k < 2 or k % 2:
        raise ValueError("weight must be an even integer >= 2")
    g = genus_x0(n)
    if k == 2:
        return g
    c = num_cusps(n)
    return (
        (k - 1) * (g - 1)
        + (k // 2 - 1) * c
        + nu2(n) * (k // 4)
        + nu3(n) * (k // 3)
    )


@lru_cache(maxsize=None)
def _beta(n: int) -> int:
    """Multiplicative inverse of the divisor-count function under Dirichlet convolution."""
    out = 1
    for _, e in factorize(n):
        if e == 1:
            out *= -2
        elif e == 2:
            out *= 1
        else:
            return 0
    return out


def dim_new_cusp_forms(n: int, k: int) -> int:
    """dim of the new subspace of S_k(Gamma0(n))."""
    out = sum(_beta(n // m) * dim_cusp_forms(m, k) for m in divisors(n))
    assert out >= 0
    return out
