import random

import pytest
from hypothesis import given, settings, strategies as st

from geoquant.cbcst import (CBCST, ConstructionError, builder_from_rmatrix, cbcst_from_builder,
                            check_equivariance, circ_action, derived_is_central_line,
                            find_isomorphism, from_rmatrix, star_action, to_rmatrix, validate)
from geoquant.cybe import GeomRMatrix, check_cybe, minimize
from geoquant.example import corrupted_rmatrix
from geoquant.fixtures import example_cbcst, example_rmatrix, rack_rmatrix
from geoquant.geomx import VectorField
from geoquant.liealg import LieAction, LieAlgebra, LieCocycle
from geoquant.linalg import inverse, matmul
from geoquant.polycore import MPoly, coeff
from geoquant.samples import FAMILIES, random_cbcst, trivial_action_tuple

EPS_VALUES = [None, 1, 0]


def failed(rep):
    return [it.name for it in rep.failures()]


# -- construction from the example r-matrix ----------------------------------------------

@pytest.mark.parametrize("eps", EPS_VALUES)
def test_example_structure(eps):
    c = from_rmatrix(example_rmatrix(eps))
    assert c.a.dim == 3 and c.g.dim == 3
    if eps == 0:
        assert c.a.is_abelian()
    else:
        assert derived_is_central_line(c.a)
    assert validate(c).passed


@pytest.mark.parametrize("eps", EPS_VALUES)
def test_example_matches_reference_tuple(eps):
    c, ref = from_rmatrix(example_rmatrix(eps)), example_cbcst(eps)
    iso = find_isomorphism(c, ref)
    assert iso.passed, iso.report.format()
    # pi_ref = Ta pi Tg^{-1}
    got = matmul(matmul(iso.Ta, c.pi.matrix), inverse(iso.Tg))
    assert got == ref.pi.matrix


def test_reference_tuple_validates():
    for eps in EPS_VALUES:
        assert validate(example_cbcst(eps)).passed


def test_builder_identities_on_example():
    b = builder_from_rmatrix(example_rmatrix())
    rep = b.check()
    assert rep.passed, rep.format()
    names = [it.name for it in rep.items]
    assert "[x, y] = x o y + y * x" in names
    assert "eight-term identity" in names


def test_star_and_circ_recover_bracket():
    b = builder_from_rmatrix(example_rmatrix(1))
    c = cbcst_from_builder(b)
    for i in range(3):
        for j in range(3):
            x, y = c.a.basis(i), c.a.basis(j)
            s = [p + q for p, q in zip(circ_action(b, x, y), star_action(b, y, x))]
            assert s == c.a.bracket(x, y)
            t = [p + q for p, q in zip(circ_action(c, x, y), star_action(c, y, x))]
            assert t == c.a.bracket(x, y)


def test_zero_r_has_zero_maps_but_no_tuple():
    b = builder_from_rmatrix(GeomRMatrix(2))
    assert b.dim == 0
    assert star_action(b, [], []) == [] and circ_action(b, [], []) == []
    with pytest.raises(ConstructionError):
        cbcst_from_builder(b)
    with pytest.raises(ConstructionError):
        from_rmatrix(GeomRMatrix(2))


def test_non_solution_is_rejected():
    with pytest.raises(ConstructionError) as info:
        from_rmatrix(corrupted_rmatrix(1))
    assert info.value.witness


def test_rack_tuple():
    c = from_rmatrix(rack_rmatrix())
    assert validate(c).passed
    assert minimize(to_rmatrix(c)) == minimize(rack_rmatrix())


# -- round trips ------------------------------------------------------------------------------

@pytest.mark.parametrize("eps", EPS_VALUES)
def test_round_trips(eps):
    r = example_rmatrix(eps)
    assert minimize(to_rmatrix(from_rmatrix(r))) == minimize(r)
    ref = example_cbcst(eps)
    assert find_isomorphism(from_rmatrix(to_rmatrix(ref)), ref).passed


def test_non_isomorphic_tuples_are_told_apart():
    assert not find_isomorphism(example_cbcst(1), example_cbcst(0)).passed


# -- validation ----------------------------------------------------------------------------------

def test_perturbed_structure_constant_is_caught():
    c = example_cbcst(1)
    a = LieAlgebra(3, {(0, 1): [0, 0, 1], (0, 2): [0, 0, 1]}, ["X", "Y", "C"])
    rho = LieAction(c.g, c.rho_ga.matrices, a, derivation=True)
    bad = CBCST(c.g, a, c.n, rho, c.rho_gax, LieCocycle(c.pi.matrix, rho), c.psi)
    rep = validate(bad)
    assert not rep.passed
    assert all(it.witness is not None or it.detail for it in rep.failures())


def test_abelian_tuple_with_zero_actions_is_not_faithful():
    c = trivial_action_tuple(LieAlgebra.abelian(2))
    rep = validate(c)
    assert failed(rep) == ["faithful"]
    assert rep.failures()[0].witness["kernel_vector"]


def test_translation_on_the_line_breaks_equivariance():
    L = LieAlgebra.abelian(1)
    rho = LieAction.trivial(L, L)
    x = MPoly.var(0, 1)
    c = CBCST(L, L, 1, rho, [VectorField([MPoly.const(1, 1)]), VectorField.zero(1)],
              LieCocycle([[coeff(1)]], rho), [x])
    assert "psi: equivariance" in failed(validate(c))
    with pytest.raises(ConstructionError):
        to_rmatrix(c)
    assert not check_cybe(to_rmatrix(c, check=False)).passed


def test_zero_psi_fails_generation():
    c = example_cbcst(1)
    z = CBCST(c.g, c.a, c.n, c.rho_ga, [VectorField.zero(3)] * 6, c.pi, [MPoly.zero(3)] * 3)
    assert "psi: generation" in failed(validate(z))
    with pytest.raises(ConstructionError):
        to_rmatrix(z)


def test_opposite_sign_is_diagnosed():
    c = example_cbcst(1)
    flipped = CBCST(c.g, c.a, c.n, c.rho_ga, [-v for v in c.rho_gax], c.pi, c.psi)
    ok, bad, opposite = check_equivariance(flipped)
    assert not ok and bad and opposite


def test_serialization():
    c = example_cbcst()
    assert CBCST.loads(c.dumps()).to_dict() == c.to_dict()
    back = CBCST.from_dict(c.to_dict())
    assert find_isomorphism(back, c).passed


# -- random tuples ------------------------------------------------------------------------------

@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_identities_on_random_tuples(seed):
    rng = random.Random(seed)
    c = random_cbcst(rng)
    r = to_rmatrix(c)
    assert check_cybe(r).passed
    b = builder_from_rmatrix(r)
    assert b.check().passed, b.check().format()
    c2 = cbcst_from_builder(b)
    assert validate(c2).passed
    assert find_isomorphism(c2, c).passed
    assert minimize(to_rmatrix(c2)) == minimize(r)


@pytest.mark.parametrize("family", sorted(FAMILIES))
def test_every_family_validates_without_disguise(family):
    c = random_cbcst(random.Random(1), family, disguise=False)
    assert validate(c).passed
