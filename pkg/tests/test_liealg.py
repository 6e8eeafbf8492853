import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from geoquant.fixtures import example_cbcst
from geoquant.liealg import (GroupLog, LieAction, LieAlgebra, LieCocycle, bch, check_cocycle,
                             check_jacobi, cocycle_exponentiate, cocycle_invert, group_act,
                             semidirect)
from geoquant.polycore import EPS, MPoly, coeff, expand_expr
from geoquant.samples import diagonal_tuple, small_lie_algebras
from oracles import bch_matrix_oracle, log_of


def heisenberg(e=1):
    return LieAlgebra(3, {(0, 1): [0, 0, e]}, ["X", "Y", "C"])


def cvec(v):
    return [coeff(x) for x in v]


# -- Jacobi ----------------------------------------------------------------------

def test_heisenberg_passes_jacobi():
    assert check_jacobi(heisenberg()).passed
    assert check_jacobi(heisenberg(EPS)).passed


@pytest.mark.parametrize("name", sorted(small_lie_algebras()))
def test_sample_algebras_pass_jacobi(name):
    assert check_jacobi(small_lie_algebras()[name]).passed


def test_abelian_passes_jacobi():
    assert check_jacobi(LieAlgebra.abelian(5)).passed


def test_broken_jacobi_reports_triple():
    L = LieAlgebra(3, {(0, 1): [1, 0, 0], (0, 2): [0, 1, 0]})
    rep = check_jacobi(L)
    assert not rep.passed
    bad = rep.failures()[0].witness
    assert bad[0]["triple"] == [1, 2, 3]


def test_serialization_round_trip():
    L = heisenberg(EPS)
    assert LieAlgebra.from_dict(L.to_dict()) == L


# -- semidirect products --------------------------------------------------------------

def test_semidirect_of_abelian_with_zero_action_is_abelian():
    a, g = LieAlgebra.abelian(2), LieAlgebra.abelian(2)
    assert semidirect(a, g, LieAction.trivial(g, a)).is_abelian()


def test_semidirect_one_dimensional_derivation():
    a = heisenberg()
    g = LieAlgebra.abelian(1)
    D = [[1, 0, 0], [0, 2, 0], [0, 0, 3]]
    S = semidirect(a, g, LieAction(g, [[cvec(r) for r in D]], a, derivation=True))
    b = cvec([2, -1, 5])
    t = coeff(3)
    got = S.bracket([0, 0, 0, t], b + [coeff(0)])
    assert got == [t * x for x in cvec([2, -2, 15])] + [coeff(0)]
    assert check_jacobi(S).passed


def test_semidirect_adjoint_matrix_matches_closed_form():
    S = example_cbcst(1).semidirect
    a, b, c, p, q, r = (Fraction(x) for x in (2, 3, 5, 7, 11, 13))
    want = [
        [p, q, 0, -a, -b, 0],
        [0, r, 0, 0, 0, -b],
        [-b, a, p + r, -c, 0, -c],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, -q, p - r, q],
        [0, 0, 0, 0, 0, 0],
    ]
    got = S.ad(cvec([a, b, c, p, q, r]))
    assert [[x.rational_value() for x in row] for row in got] == want


def test_derivation_action_is_checked():
    c = example_cbcst()
    assert c.rho_ga.check().passed
    mats = [[row[:] for row in m] for m in c.rho_ga.matrices]
    mats[0][2][2] = coeff(0)  # E11 no longer scales C
    assert not LieAction(c.g, mats, c.a, derivation=True).check().passed


# -- cocycles ----------------------------------------------------------------------

def test_cocycle_examples():
    c = example_cbcst()
    assert check_cocycle(c.pi).passed
    a = LieAlgebra.abelian(2)
    assert check_cocycle(LieCocycle([cvec([1, 0]), cvec([0, 1])], LieAction.trivial(a, a))).passed


def test_wrong_cocycle_fails():
    c = example_cbcst(1)
    M = [row[:] for row in c.pi.matrix]
    M[2] = cvec([1, 1, 1])
    rep = check_cocycle(LieCocycle(M, c.rho_ga))
    assert not rep.passed


# -- BCH ------------------------------------------------------------------------------

def test_bch_identity_element():
    L = heisenberg()
    u = log_of(L, [[1, 2, 3], [0, -1, 4]], 4)
    assert bch(u, GroupLog.zero(L, 4)) == u
    assert bch(GroupLog.zero(L, 4), u) == u


def test_bch_leading_terms():
    L = heisenberg()
    got = bch(log_of(L, [[1, 0, 0]], 2), log_of(L, [[0, 1, 0]], 2))
    assert got == log_of(L, [[1, 1, 0], [0, 0, Fraction(1, 2)]], 2)


vec3 = st.lists(st.integers(-3, 3), min_size=3, max_size=3)


@given(st.sampled_from(["sl2", "r3b", "heis"]), vec3, vec3, vec3, vec3)
def test_bch_associative_and_inverse(name, u1, u2, v1, w1):
    L = small_lie_algebras()[name]
    N = 4
    u, v, w = log_of(L, [u1, u2], N), log_of(L, [v1], N), log_of(L, [w1, u1], N)
    assert bch(bch(u, v), w) == bch(u, bch(v, w))
    assert bch(u, -u).is_zero()


@pytest.mark.parametrize("seed", range(3))
def test_bch_against_matrix_oracle(seed):
    N = 6
    S = example_cbcst(1).semidirect
    rng = random.Random(seed)

    def rand():
        return [[rng.randint(-2, 2) for _ in range(6)] for _ in range(2)]

    u, v = log_of(S, rand(), N), log_of(S, rand(), N)
    assert bch_matrix_oracle(S, u, v, N)
    assert not bch_matrix_oracle(S, u, v, N, use=u + v)


# -- group cocycles ----------------------------------------------------------------------

def test_group_cocycle_law():
    c = example_cbcst(1)
    N = 4
    rng = random.Random(7)
    for _ in range(3):
        g = log_of(c.g, [[rng.randint(-2, 2) for _ in range(3)]], N)
        h = log_of(c.g, [[rng.randint(-2, 2) for _ in range(3)] for _ in range(2)], N)
        lhs = cocycle_exponentiate(c.pi, bch(g, h))
        rhs = bch(cocycle_exponentiate(c.pi, g), group_act(c.rho_ga, g, cocycle_exponentiate(c.pi, h)))
        assert lhs == rhs


def test_cocycle_invert_round_trip():
    c = example_cbcst()
    N = 4
    a = GroupLog.hbar_times(c.a, [MPoly.var(i, 3) for i in range(3)], N, 3)
    g = cocycle_invert(c.pi, a)
    assert cocycle_exponentiate(c.pi, g) == a
    g2 = log_of(c.g, [[1, -2, 3], [0, 1, 1]], N)
    assert cocycle_invert(c.pi, cocycle_exponentiate(c.pi, g2)) == g2


def test_one_dimensional_trivial_cocycle():
    L = LieAlgebra.abelian(1)
    pi = LieCocycle([cvec([1])], LieAction.trivial(L, L))
    t = GroupLog.hbar_times(L, [MPoly.var(0, 1)], 5, 1)
    assert cocycle_exponentiate(pi, t) == t
    assert cocycle_invert(pi, t) == t


def test_abelian_cocycle_closed_form():
    mu, lam = (Fraction(2), Fraction(-1, 3)), (Fraction(3), Fraction(1, 2))
    c = diagonal_tuple([coeff(str(m)) for m in mu], [coeff(str(l)) for l in lam])
    N = 5
    g = GroupLog.hbar_times(c.g, [MPoly.var(0, 2), MPoly.var(1, 2)], N, 2)
    got = cocycle_exponentiate(c.pi, g)
    for k in range(2):
        want = expand_expr(f"({lam[k]})*(exp(h*({mu[k]})*x{k + 1}) - 1)/({mu[k]})", N, 2)
        assert got.comps[k] == want
