from fractions import Fraction

import numpy as np
import pytest

from heckelab.dimensions import dim_cusp_forms, dim_new_cusp_forms
from heckelab.linalg import charpoly_mod
from heckelab.modsym import engine_primes, modular_symbol_space, transport_poly
from oracles import (
    TAU,
    eta_product,
    hecke_qexp,
    qexp_hecke_matrix,
    trace_hecke_level_one,
)


def _trace(mat):
    return sum(mat[i, i] for i in range(mat.nrows))


def test_engine_primes_avoid():
    gen = engine_primes(30)
    ps = [next(gen) for _ in range(5)]
    assert all(p < 2 ** 25 for p in ps)
    assert all(p % 2 and p % 3 and p % 5 for p in ps)
    assert sorted(ps, reverse=True) == ps


def test_transport_poly_degree_zero():
    assert transport_poly([1], (2, 3, 5, 7)) == [1]


def test_transport_poly_is_right_action():
    # transporting by g then h equals transporting by g*h
    coeffs = [1, -2, 3]
    g = (1, 2, 0, 1)
    h = (2, 0, 1, 1)
    gh = (g[0] * h[0] + g[1] * h[2], g[0] * h[1] + g[1] * h[3],
          g[2] * h[0] + g[3] * h[2], g[2] * h[1] + g[3] * h[3])
    one_step = transport_poly(coeffs, gh)
    two_step = transport_poly(transport_poly(coeffs, g), h)
    assert one_step == two_step


@pytest.mark.parametrize(
    "level,weight",
    [(1, 12), (11, 2), (14, 2), (15, 2), (23, 2), (37, 2), (63, 2), (11, 4),
     (13, 4), (27, 4), (1, 16), (5, 6)],
)
def test_cuspidal_and_new_dimensions(level, weight):
    space = modular_symbol_space(level, weight)
    assert space.cuspidal_basis.ncols == dim_cusp_forms(level, weight)
    assert space.new_basis.ncols == dim_new_cusp_forms(level, weight)


def test_hecke_operators_commute():
    for level, weight in ((14, 2), (11, 4)):
        space = modular_symbol_space(level, weight)
        t2 = space.hecke_matrix(2)
        t3 = space.hecke_matrix(3)
        assert t2 @ t3 == t3 @ t2


def test_level_one_weight_12_traces():
    # the discriminant form: trace on the 1-dimensional new space is tau(p),
    # checked against the class number formula and the eta expansion
    space = modular_symbol_space(1, 12)
    assert space.new_basis.ncols == 1
    delta = eta_product([(1, 24)], 12)
    for p in (2, 3, 5, 7, 11):
        t = _trace(space.hecke_on_new(p))
        assert t == trace_hecke_level_one(p, 12) == TAU[p] == delta[p]


@pytest.mark.parametrize("weight", [16, 18, 20, 22])
def test_level_one_higher_weight_traces(weight):
    space = modular_symbol_space(1, weight)
    for p in (2, 3, 5):
        t = _trace(space.hecke_on_new(p))
        assert t == trace_hecke_level_one(p, weight)


def test_level_one_weight_24_trace():
    # first weight with a 2-dimensional space; only the trace is rational
    space = modular_symbol_space(1, 24)
    assert space.new_basis.ncols == 2
    for p in (2, 3):
        assert _trace(space.hecke_on_new(p)) == trace_hecke_level_one(p, 24)


def test_eta_eigenvalues_level_11():
    # S_2(11) is 1-dimensional, spanned by eta(z)^2 eta(11z)^2
    space = modular_symbol_space(11, 2)
    f = eta_product([(1, 2), (11, 2)], 60)
    for p in (2, 3, 5, 7, 13, 11):
        mat = space.hecke_on_new(p)
        assert mat.nrows == 1
        assert mat[0, 0] == f[p]


def test_qexp_matrix_level_23():
    # S_2(23): basis {T_2 g, g} with g = eta(z)^2 eta(23z)^2
    space = modular_symbol_space(23, 2)
    g = [Fraction(c) for c in eta_product([(1, 2), (23, 2)], 400)]
    basis = [hecke_qexp(g, 2, 2, 23, 200), g[:200]]
    for p in (2, 3, 5, 7, 11, 13):
        ours = space.hecke_on_new(p).charpoly_fractions()
        mat = qexp_hecke_matrix(basis, p, 2, 23)
        want_const = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
        want_lin = -(mat[0][0] + mat[1][1])
        assert ours == [want_const, want_lin, Fraction(1)]


def test_boundary_kernel_is_cuspidal():
    # the cuspidal subspace is exactly the kernel of the boundary map
    space = modular_symbol_space(14, 2)
    assert space.cuspidal_basis.ncols == 1
    from heckelab.linalg import QMat

    boundary = QMat.from_sparse_rows(space.boundary_rows, space.dimension)
    assert (boundary @ space.cuspidal_basis).is_zero()


def test_mod_engine_matches_exact():
    for level, weight in ((23, 2), (11, 4)):
        space = modular_symbol_space(level, weight)
        gen = engine_primes(space.denominator * level)
        q = next(gen)
        for p in (2, 3, 5):
            exact = space.hecke_matrix(p)
            modq = space.hecke_matrix_mod(p, q)
            assert modq.shape == (space.dimension, space.dimension)
            for i in range(space.dimension):
                for j in range(space.dimension):
                    x = exact[i, j]
                    assert (x.numerator * pow(x.denominator, -1, q)) % q == modq[i, j] % q


def test_subspace_restriction_mod_matches_exact():
    space = modular_symbol_space(23, 2)
    gen = engine_primes(space.denominator * 23)
    q = next(gen)
    basis = space.new_basis
    pivots = list(space.new_pivots)
    for p in (2, 3, 7):
        exact = space.hecke_matrix(p).restrict(basis, pivot_rows=pivots, check=True)
        t_mod = space.hecke_matrix_mod(p, q)
        small = space.subspace_restriction_mod(t_mod, basis, pivots, q)
        cp_exact = [c % q for c in map(int, exact.charpoly_fractions())]
        cp_mod = charpoly_mod(small, q)
        assert cp_exact == [c % q for c in cp_mod]


def test_space_validation():
    with pytest.raises(ValueError):
        modular_symbol_space(0, 2)
    with pytest.raises(ValueError):
        modular_symbol_space(11, 3)
    with pytest.raises(ValueError):
        modular_symbol_space(11, 0)
