import pytest
from hypothesis import given
from hypothesis import strategies as st

from heckelab.arith import divisors
from heckelab.dimensions import (
    dim_cusp_forms,
    dim_new_cusp_forms,
    genus_x0,
    index_mu,
    nu2,
    nu3,
    num_cusps,
)
from oracles import DIM_LEVEL_ONE, GENUS_ONE, GENUS_TWO, GENUS_ZERO, trace_hecke_level_one


def test_genus_against_classification():
    # the complete genus 0/1/2 lists for X_0(N)
    for n in range(1, 51):
        if n in GENUS_ZERO:
            assert genus_x0(n) == 0, n
        elif n in GENUS_ONE:
            assert genus_x0(n) == 1, n
        elif n in GENUS_TWO:
            assert genus_x0(n) == 2, n
        else:
            assert genus_x0(n) >= 3, n
    assert all(genus_x0(n) > 2 for n in range(51, 72))


def test_genus_known_larger():
    assert genus_x0(389) == 32
    assert genus_x0(97) == 7


def test_weight_two_is_genus():
    for n in range(1, 200):
        assert dim_cusp_forms(n, 2) == genus_x0(n)


def test_level_one_dimensions():
    for k, d in DIM_LEVEL_ONE.items():
        assert dim_cusp_forms(1, k) == d
        assert dim_new_cusp_forms(1, k) == d


def test_level_one_dim_vs_trace_formula():
    # T_1 trace = dimension, an independent route through class numbers
    for k in range(4, 40, 2):
        assert dim_cusp_forms(1, k) == trace_hecke_level_one(1, k)


@given(st.integers(1, 400))
def test_index_multiplicative_bound(n):
    mu = index_mu(n)
    assert mu >= n
    # psi(n) = [SL2(Z) : Gamma_0(n)]
    expect = n
    for p in {p for p in range(2, n + 1) if n % p == 0 and all(p % d for d in range(2, p))}:
        expect = expect // p * (p + 1)
    assert mu == expect


def test_elliptic_point_counts():
    # nu2(n) = 0 iff 4 | n or some p = 3 mod 4 divides n
    assert [nu2(n) for n in (1, 2, 3, 4, 5, 10, 13, 25)] == [1, 1, 0, 0, 2, 2, 2, 2]
    assert [nu3(n) for n in (1, 2, 3, 7, 9, 13, 21)] == [1, 0, 1, 2, 0, 2, 2]


def test_cusp_count():
    # eps_infinity for small levels
    assert [num_cusps(n) for n in (1, 2, 3, 4, 6, 8, 12)] == [1, 2, 2, 3, 4, 4, 6]
    assert num_cusps(11) == 2
    assert num_cusps(63) == 8


@given(st.integers(1, 120), st.sampled_from([2, 4, 6]))
def test_new_dim_consistency(n, k):
    # dim S_k(N) = sum over M | N of sigma_0(N/M) * dim S_k^new(M)
    total = 0
    for m in divisors(n):
        total += len(divisors(n // m)) * dim_new_cusp_forms(m, k)
    assert total == dim_cusp_forms(n, k)


def test_new_dims_spot():
    assert dim_new_cusp_forms(11, 2) == 1
    assert dim_new_cusp_forms(22, 2) == 0
    assert dim_new_cusp_forms(23, 2) == 2
    assert dim_new_cusp_forms(63, 2) == 3
    assert dim_new_cusp_forms(512, 2) == 16
    assert dim_new_cusp_forms(389, 2) == 32
    assert dim_new_cusp_forms(11, 4) == 2
    assert dim_new_cusp_forms(27, 4) == 4


def test_nonnegative_everywhere():
    for n in range(1, 150):
        for k in (2, 4, 6, 8):
            assert dim_cusp_forms(n, k) >= 0
            assert dim_new_cusp_forms(n, k) >= 0
