import json

import pytest
import sympy

from geoquant.cybe import (GeomRMatrix, as_field_on_square, check_cybe, check_cybe_split,
                           check_unitarity, minimize)
from geoquant.example import corrupted_rmatrix
from geoquant.fixtures import a_fields, b_fields, example_rmatrix, rack_rmatrix
from geoquant.geomx import VectorField
from geoquant.polycore import MPoly, expand_expr, parse_poly
from conftest import EPS, to_sympy

EPS_VALUES = [None, 1, 0]


def field(*comps):
    return VectorField([parse_poly(c, len(comps)) for c in comps])


# independent oracle: the CYBE residual computed with sympy from the raw term lists

def _sym_square(r, blocks, k):
    """r placed on blocks (i, j) of X^k, as a list of sympy components."""
    n = r.n
    syms = sympy.symbols(f"z1:{n * k + 1}")
    comps = [sympy.Integer(0)] * (n * k)
    bi, bj = blocks
    xi = syms[(bi - 1) * n:bi * n]
    xj = syms[(bj - 1) * n:bj * n]
    local = sympy.symbols(f"x1:{n + 1}")

    def on(p, target):
        return to_sympy(p).subs(dict(zip(local, target)), simultaneous=True)

    for v, f in r.a_terms:
        for t, c in enumerate(v.comps):
            comps[(bi - 1) * n + t] += on(c, xi) * on(f, xj)
    for f, v in r.b_terms:
        for t, c in enumerate(v.comps):
            comps[(bj - 1) * n + t] += on(f, xi) * on(c, xj)
    return comps, syms


def _sym_bracket(u, v, syms):
    return [sympy.expand(sum(u[j] * sympy.diff(v[i], syms[j]) - v[j] * sympy.diff(u[i], syms[j])
                             for j in range(len(syms)))) for i in range(len(syms))]


def sympy_cybe_residual(r):
    r12, syms = _sym_square(r, (1, 2), 3)
    r13, _ = _sym_square(r, (1, 3), 3)
    r23, _ = _sym_square(r, (2, 3), 3)
    parts = [_sym_bracket(r12, r13, syms), _sym_bracket(r12, r23, syms),
             _sym_bracket(r13, r23, syms)]
    return [sympy.expand(sum(p[i] for p in parts)) for i in range(len(syms))]


@pytest.mark.parametrize("eps", EPS_VALUES)
def test_example_satisfies_cybe(eps):
    r = example_rmatrix(eps)
    assert check_cybe(r).passed
    assert all(c == 0 for c in sympy_cybe_residual(r))


@pytest.mark.parametrize("eps", EPS_VALUES)
def test_corrupted_example_fails_both_ways(eps):
    r = corrupted_rmatrix(eps)
    rep = check_cybe(r)
    assert not rep.passed and rep.items[0].witness["residual"]
    assert any(c != 0 for c in sympy_cybe_residual(r))


def test_trivial_solutions():
    assert check_cybe(GeomRMatrix(3)).passed
    one = MPoly.const(1, 2)
    r = GeomRMatrix(2, [(field("1", "0"), one)], [])
    assert check_cybe(r).passed
    assert all(c == 0 for c in sympy_cybe_residual(r))


def test_rack_fixture_satisfies_cybe_and_b3_alone_does_not():
    assert check_cybe(rack_rmatrix()).passed
    x3 = MPoly.var(2, 3)
    lone_b3 = GeomRMatrix(3, [], [(x3, b_fields(0)[2])])
    assert not check_cybe(lone_b3).passed
    assert any(c != 0 for c in sympy_cybe_residual(lone_b3))


def test_split_components():
    reports = check_cybe_split(minimize(example_rmatrix()))
    assert all(rep.passed for rep in reports)
    only_b = minimize(rack_rmatrix())
    reports = check_cybe_split(only_b)
    assert all(rep.passed for rep in reports)


def test_split_locates_perturbation():
    reports = check_cybe_split(minimize(corrupted_rmatrix(1)))
    assert all(rep.items[1].passed for rep in reports)
    failing = [k for k, rep in enumerate(reports) if not rep.items[0].passed]
    assert failing


def test_field_on_square_examples():
    assert as_field_on_square(GeomRMatrix(2)).is_zero()
    y1 = MPoly.var(0, 2)
    f = as_field_on_square(GeomRMatrix(2, [(field("1", "0"), y1)], []))
    assert f == VectorField([parse_poly("x3", 4)] + [MPoly.zero(4)] * 3)


@pytest.mark.parametrize("eps", [1, 0])
def test_field_on_square_matches_linear_part_of_closed_form(eps):
    from geoquant.fixtures import STAR_E0, STAR_E1
    star = STAR_E1 if eps == 1 else STAR_E0
    f = as_field_on_square(example_rmatrix(eps))
    for i, text in enumerate(star):
        assert -expand_expr(text, 1, 6, 3)[1] == f.comps[i]


def test_unitarity_examples():
    assert not check_unitarity(example_rmatrix(1))
    assert check_unitarity(example_rmatrix(0))
    v, f = field("x2^2", "x1"), parse_poly("x1 - 3*x2", 2)
    assert check_unitarity(GeomRMatrix(2, [(v, f)], [(f, -v)]))


def test_minimize():
    r = example_rmatrix()
    m = minimize(r)
    assert len(m.a_terms) == 3 and len(m.b_terms) == 3
    assert minimize(m) == m
    v, f = field("x2", "x1"), parse_poly("x1", 2)
    doubled = minimize(GeomRMatrix(2, [(v, f), (v, f)], []))
    assert len(doubled.a_terms) == 1
    assert as_field_on_square(doubled) == as_field_on_square(GeomRMatrix(2, [(v * 2, f)], []))
    zero = minimize(GeomRMatrix(2, [(VectorField.zero(2), f), (v, f)], []))
    assert len(zero.a_terms) == 1


def test_serialization_round_trip():
    r = example_rmatrix()
    assert GeomRMatrix.loads(r.dumps()) == r
    data = json.loads(r.dumps())
    assert data["dimension"] == 3 and data["parameters"] == ["eps"]


def test_specialize_commutes_with_field_on_square():
    r = example_rmatrix()
    for v in (0, 1, "2/3"):
        assert as_field_on_square(r.specialize_eps(v)) == as_field_on_square(r).specialize_eps(v)


def test_example_fields_match_parameter_family():
    # at eps = 0 A1 and B1 reduce to x2 d1
    assert a_fields(0)[0] == field("x2", "0", "0")
    assert b_fields(0)[0] == field("x2", "0", "0")
    assert to_sympy(b_fields()[1].comps[2]) == -EPS * sympy.Symbol("x1")


@pytest.mark.parametrize("eps", [None, 1])
def test_literal_sign_arrangement_is_not_a_solution(eps):
    xs = [MPoly.var(i, 3) for i in range(3)]
    literal = GeomRMatrix(3, list(zip(b_fields(eps), xs)), list(zip(xs, a_fields(eps))))
    assert not check_cybe(literal).passed
    assert any(c != 0 for c in sympy_cybe_residual(literal))
