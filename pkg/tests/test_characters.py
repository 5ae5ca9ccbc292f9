from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heckelab.arith import euler_phi, kronecker
from heckelab.characters import (
    DirichletCharacter,
    condition_density,
    is_fundamental_discriminant,
    joint_kernel_degree,
    quadratic_characters,
    unit_group,
)

moduli = st.integers(2, 400)


@given(moduli)
def test_unit_group_bijection(n):
    g = unit_group(n)
    seen = set()
    count = 0
    for a in range(1, n + 1):
        if gcd(a, n) == 1:
            count += 1
            seen.add(g.decompose(a))
    assert count == euler_phi(n)
    assert len(seen) == count
    total = 1
    for d in g.orders:
        total *= d
    assert total == count


@given(moduli)
def test_decompose_is_hom(n):
    g = unit_group(n)
    units = [a for a in range(1, min(n, 60)) if gcd(a, n) == 1]
    for a in units[:8]:
        for b in units[:8]:
            da, db = g.decompose(a), g.decompose(b)
            dab = g.decompose(a * b % n)
            assert dab == tuple((x + y) % o for x, y, o in zip(da, db, g.orders))


def test_trivial_character():
    chi = DirichletCharacter.trivial(12)
    assert chi.is_trivial()
    assert chi.conductor == 1
    assert chi.order == 1
    for a in (1, 5, 7, 11):
        assert chi.value_exponent(a) == 0
    assert chi.value_exponent(4) is None


@pytest.mark.parametrize("disc", [-3, -4, -7, -8, 5, 8, 12, -11, 13, -15, 21])
def test_kronecker_character_matches(disc):
    chi = DirichletCharacter.from_kronecker(disc)
    assert chi.is_quadratic()
    assert chi.conductor == abs(disc)
    for a in range(1, 3 * abs(disc)):
        if gcd(a, chi.modulus) == 1:
            assert chi.sign(a) == kronecker(disc, a)


def test_character_multiplication():
    a = DirichletCharacter.from_kronecker(-4)
    b = DirichletCharacter.from_kronecker(8)
    ab = a * b
    assert ab.conductor == 8  # chi_{-4} * chi_8 = chi_{-8}
    for n in (1, 3, 5, 7, 9, 11):
        if n % 2:
            assert ab.sign(n) == kronecker(-8, n)


def test_label_round_trip():
    chi = DirichletCharacter.from_kronecker(-8)
    again = DirichletCharacter.from_label(chi.label)
    assert again.is_equivalent(chi)
    assert again.modulus == chi.modulus


@pytest.mark.parametrize(
    "n,count", [(3, 2), (4, 2), (5, 2), (8, 4), (12, 4), (15, 4), (24, 8), (35, 4)]
)
def test_quadratic_character_count(n, count):
    # order dividing 2, trivial included: 2^(number of even cyclic factors)
    chars = quadratic_characters(n)
    assert len(chars) == count
    assert sum(1 for c in chars if c.is_trivial()) == 1
    for chi in chars:
        assert chi.is_quadratic()
        assert chi.modulus == n
    assert len({c.exponents for c in chars}) == count


def test_conductor_vs_reduction():
    chi = DirichletCharacter.from_kronecker(-3).extend_to(36)
    assert chi.modulus == 36
    assert chi.conductor == 3
    red = chi.reduce_to_conductor()
    assert red.modulus == 3
    for a in range(1, 36):
        if gcd(a, 36) == 1:
            assert chi.sign(a) == red.sign(a)


def test_fundamental_discriminants():
    fund = [d for d in range(-30, 31) if is_fundamental_discriminant(d)]
    assert fund == [-24, -23, -20, -19, -15, -11, -8, -7, -4, -3, 1, 5, 8,
                    12, 13, 17, 21, 24, 28, 29]


def test_condition_density_unconditional():
    assert condition_density([], []) == 1


def test_condition_density_single_quadratic():
    chi = DirichletCharacter.from_kronecker(-3)
    assert condition_density([], [chi]) == Fraction(1, 2)
    assert condition_density([chi], []) == Fraction(1, 2)


def test_condition_density_dependent_triple():
    # eps1*eps2 = eps3 forces some eps_i(p) = 1: the all-nontrivial locus is
    # empty, so the density is exactly zero
    e1 = DirichletCharacter.from_kronecker(-4)
    e2 = DirichletCharacter.from_kronecker(8)
    e3 = (e1 * e2).reduce_to_conductor()
    assert condition_density([], [e1, e2, e3]) == 0


def test_condition_density_independent_pair():
    e1 = DirichletCharacter.from_kronecker(-4)
    e2 = DirichletCharacter.from_kronecker(8)
    assert condition_density([e1], [e2]) == Fraction(1, 4)
    assert condition_density([e1, e2], []) == Fraction(1, 4)
    assert condition_density([], [e1, e2]) == Fraction(1, 4)


def test_condition_density_partition():
    # over all 1/-1 patterns of independent quadratics the densities sum to 1
    chars = [DirichletCharacter.from_kronecker(d) for d in (-4, 8, 5)]
    total = Fraction(0)
    for mask in range(8):
        eq = [c for i, c in enumerate(chars) if mask >> i & 1]
        ne = [c for i, c in enumerate(chars) if not mask >> i & 1]
        total += condition_density(eq, ne)
    assert total == 1


def test_joint_kernel_degree():
    e1 = DirichletCharacter.from_kronecker(-4)
    e2 = DirichletCharacter.from_kronecker(8)
    assert joint_kernel_degree([e1]) == 2
    assert joint_kernel_degree([e1, e2]) == 4
    assert joint_kernel_degree([]) == 1
