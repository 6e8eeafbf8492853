import random

import pytest
from hypothesis import given, settings, strategies as st

from geoquant.cbcst import from_rmatrix, to_rmatrix
from geoquant.cybe import GeomRMatrix, check_unitarity
from geoquant.fixtures import (CIRC_E0, CIRC_E1, STAR_E0, STAR_E1, example_cbcst,
                               example_rmatrix, rack_rmatrix)
from geoquant.geomx import VectorField
from geoquant.polycore import HSeries, MPoly, parse_poly
from geoquant.quantize import (QuantumTuple, RMatrixQ, check_braid, check_classical_limit,
                               check_first_order, check_inverse_flows, check_quantum_unitarity,
                               check_rack_case, classical_part, compare_closed_form, quantize)
from geoquant.samples import diagonal_tuple, random_cbcst


@pytest.fixture(scope="module")
def R1():
    return quantize(example_cbcst(1), 4)


@pytest.fixture(scope="module")
def R0():
    return quantize(example_cbcst(0), 4)


def test_order_must_be_at_least_two():
    with pytest.raises(ValueError):
        quantize(example_cbcst(1), 1)


def test_identity_passes_every_check():
    R = RMatrixQ.identity(2, 4)
    assert check_braid(R).passed
    assert classical_part(R).is_zero()
    assert check_quantum_unitarity(R).passed


def test_closed_forms(R1, R0):
    assert compare_closed_form(R1, STAR_E1, CIRC_E1, eps=1).passed
    assert compare_closed_form(R0, STAR_E0, CIRC_E0, eps=0).passed
    assert not compare_closed_form(R1, STAR_E0, CIRC_E0).passed


def test_symbolic_family_specializes_to_both_closed_forms():
    R = quantize(example_cbcst(), 3)
    assert compare_closed_form(R.specialize_eps(1), STAR_E1, CIRC_E1, eps=1).passed
    assert compare_closed_form(R.specialize_eps(0), STAR_E0, CIRC_E0, eps=0).passed


def test_first_order_and_classical_limit(R1, R0):
    assert check_first_order(R1, example_cbcst(1)).passed
    assert check_classical_limit(R1, example_rmatrix(1)).passed
    assert check_classical_limit(R0, example_rmatrix(0)).passed


def test_braid(R1, R0):
    assert check_braid(R1).passed
    assert check_braid(R0).passed


def test_flip_form_of_braid(R1):
    assert check_braid(R1, 3, flip=True).passed


def test_perturbed_second_order_breaks_braid(R1):
    n = R1.n
    star = list(R1.star)
    bump = HSeries.monomial(MPoly.var(0, 2 * n) * MPoly.var(n, 2 * n), 2, R1.order)
    star[0] = star[0] + bump
    rep = check_braid(RMatrixQ(n, star, R1.circ), 3)
    assert not rep.passed
    w = rep.items[0].witness
    assert w["hbar_order"] <= 3 and 1 <= w["coordinate"] <= 3 * n


def test_unitarity_dichotomy(R1, R0):
    assert check_quantum_unitarity(R0).passed
    rep = check_quantum_unitarity(R1)
    assert not rep.passed
    assert rep.items[0].witness["hbar_order"] == 1


def test_abelian_diagonal_tuple_gives_unitary_r_and_R():
    c = diagonal_tuple([MPoly.const(2), MPoly.const(-1)], [MPoly.const(3), MPoly.const("1/2")])
    assert check_unitarity(to_rmatrix(c))
    R = quantize(c, 4)
    assert check_quantum_unitarity(R).passed
    assert check_braid(R).passed


def test_rack_case():
    rep = check_rack_case(rack_rmatrix(), 4)
    assert rep.passed, rep.format()


def test_rack_case_with_one_dimensional_field():
    x = MPoly.var(0, 2)
    r = GeomRMatrix(2, [], [(x, VectorField([MPoly.zero(2), parse_poly("x2", 2)]))])
    assert check_rack_case(r, 3).passed


def test_rack_case_rejects_field_terms():
    with pytest.raises(ValueError):
        check_rack_case(example_rmatrix(1), 3)


def test_inverse_flows():
    assert check_inverse_flows(example_cbcst(), 4).passed


@pytest.mark.parametrize("eps", [None, 1, 0])
def test_psi_tilde_equivariance(eps):
    assert QuantumTuple(example_cbcst(eps), 4).check_equivariance().passed


def test_series_dump_round_trip(R1):
    assert RMatrixQ.from_dict(R1.to_dict()) == R1


def test_result_does_not_depend_on_tuple_basis():
    c = from_rmatrix(example_rmatrix(1))
    assert quantize(c, 3).diffeo == quantize(example_cbcst(1), 3).diffeo


@settings(max_examples=12)
@given(st.integers(0, 10**6))
def test_random_tuples(seed):
    c = random_cbcst(random.Random(seed))
    R = quantize(c, 2)
    assert check_braid(R).passed
    assert check_classical_limit(R, to_rmatrix(c)).passed
    assert check_first_order(R, c).passed
    assert QuantumTuple(c, 2).check_equivariance().passed
