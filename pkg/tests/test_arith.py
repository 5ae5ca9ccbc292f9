from math import gcd, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heckelab.arith import (
    crt_list,
    crt_pair,
    divisors,
    euler_phi,
    factorize,
    invmod,
    is_prime,
    is_square,
    kronecker,
    lift_coprime,
    next_prime,
    prime_divisors,
    primes_up_to,
    symmetric_lift,
    valuation,
    xgcd,
)


def test_primes_small():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(1) == []
    assert primes_up_to(2) == [2]


def test_prime_count_pin():
    # pi(10^4) = 1229: the denominator of every census density at that bound
    assert len(primes_up_to(10000)) == 1229
    assert len(primes_up_to(1000)) == 168


def test_is_prime_agrees_with_sieve():
    sieve = set(primes_up_to(2000))
    for n in range(2000):
        assert is_prime(n) == (n in sieve)


def test_is_prime_carmichael():
    # Fermat pseudoprimes to many bases
    for n in (561, 1105, 1729, 2465, 2821, 6601, 8911, 10585):
        assert not is_prime(n)


def test_next_prime():
    assert next_prime(2) == 3
    assert next_prime(13) == 17
    assert next_prime(2 ** 25) == 33554467


@given(st.integers(-10 ** 9, 10 ** 9), st.integers(-10 ** 9, 10 ** 9))
def test_xgcd_bezout(a, b):
    g, x, y = xgcd(a, b)
    assert g == gcd(a, b)
    assert a * x + b * y == g


@given(st.integers(2, 10 ** 6), st.integers(1, 10 ** 6))
def test_invmod(n, a):
    if gcd(a, n) != 1:
        return
    assert a * invmod(a, n) % n == 1


@given(st.integers(2, 10 ** 12))
def test_factorize_round_trip(n):
    fac = factorize(n)
    assert prod(p ** e for p, e in fac) == n
    assert all(is_prime(p) and e >= 1 for p, e in fac)
    assert list(fac) == sorted(fac)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]
    assert prime_divisors(63) == [3, 7]


@given(st.integers(1, 10 ** 5))
def test_phi_by_count(n):
    if n > 3000:
        return
    assert euler_phi(n) == sum(1 for a in range(1, n + 1) if gcd(a, n) == 1)


@given(st.integers(1, 10 ** 4), st.integers(1, 10 ** 4))
def test_phi_multiplicative(a, b):
    if gcd(a, b) == 1:
        assert euler_phi(a * b) == euler_phi(a) * euler_phi(b)


def test_kronecker_legendre():
    # against Euler's criterion at odd primes
    for p in (3, 5, 7, 11, 13, 97):
        for a in range(1, 40):
            want = pow(a, (p - 1) // 2, p)
            want = -1 if want == p - 1 else want
            assert kronecker(a, p) == (0 if a % p == 0 else want)


def test_kronecker_quadratic_character():
    # kronecker(d, .) is the quadratic character of discriminant d
    assert [kronecker(-4, n) for n in (1, 3, 5, 7, 9)] == [1, -1, 1, -1, 1]
    assert [kronecker(8, n) for n in (1, 3, 5, 7)] == [1, -1, -1, 1]
    assert [kronecker(-3, n) for n in (1, 2, 4, 5)] == [1, -1, 1, -1]
    assert kronecker(-3, 3) == 0


@given(st.integers(0, 10 ** 12))
def test_is_square(n):
    r = is_square(n)
    assert r == (round(n ** 0.5) ** 2 == n or (round(n ** 0.5) + 1) ** 2 == n
                 or (round(n ** 0.5) - 1) ** 2 == n)


@given(st.integers(0, 10 ** 6), st.integers(2, 10 ** 4), st.integers(0, 10 ** 6), st.integers(2, 10 ** 4))
def test_crt_pair(r1, m1, r2, m2):
    if gcd(m1, m2) != 1:
        return
    x, m = crt_pair(r1 % m1, m1, r2 % m2, m2)
    assert m == m1 * m2
    assert x % m1 == r1 % m1 and x % m2 == r2 % m2


def test_crt_list():
    x, m = crt_list([1, 2, 3], [5, 7, 11])
    assert m == 385
    assert x % 5 == 1 and x % 7 == 2 and x % 11 == 3


@given(st.integers(2, 10 ** 9), st.integers(0, 10 ** 9))
def test_symmetric_lift(m, r):
    v = symmetric_lift(r % m, m)
    assert v % m == r % m
    assert -m < 2 * v <= m


@given(st.integers(2, 10 ** 5), st.integers(0, 10 ** 5), st.integers(0, 10 ** 5))
def test_lift_coprime(n, c, d):
    if gcd(gcd(c, d), n) != 1:
        return
    c2, d2 = lift_coprime(c % n, d % n, n)
    assert gcd(c2, d2) == 1
    assert c2 % n == c % n and d2 % n == d % n


def test_valuation():
    assert valuation(48, 2) == 4
    assert valuation(48, 3) == 1
    assert valuation(49, 7) == 2
    assert valuation(5, 2) == 0
