"""Acceptance criteria 1-10, each printed as one PASS/FAIL line."""

import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from geoquant.cbcst import (builder_from_rmatrix, cbcst_from_builder, derived_is_central_line,
                            find_isomorphism, from_rmatrix, to_rmatrix, validate)
from geoquant.cybe import check_cybe, check_unitarity, cybe_residual, minimize
from geoquant.example import check_pi_tilde_inverse
from geoquant.fixtures import (CIRC_E0, CIRC_E1, STAR_E0, STAR_E1, example_cbcst,
                               example_rmatrix, rack_rmatrix)
from geoquant.geomx import HVectorField, VectorField, compose, flow, hvf_bch
from geoquant.linalg import inverse, matmul
from geoquant.polycore import EPS, coeff
from geoquant.quantize import (check_braid, check_classical_limit, check_quantum_unitarity,
                               compare_closed_form, quantize)
from geoquant.samples import random_cbcst
from conftest import polys
from oracles import bch_matrix_oracle, log_of

EPS_VALUES = [None, 1, 0]
RANDOM_SEEDS = range(24)


@pytest.fixture
def verdict(capsys):
    """Print one line per criterion, outside pytest's capture."""
    def report(number, title, ok, detail=""):
        with capsys.disabled():
            line = f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}"
            print(line + (f"  ({detail})" if detail else ""))
        assert ok, f"criterion {number} failed: {detail}"
    return report


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def label(eps):
    return "eps" if eps is None else f"eps={eps}"


def test_criterion_01_cybe(verdict):
    def run():
        return {label(e): check_cybe(example_rmatrix(e)).passed
                and cybe_residual(example_rmatrix(e)).is_zero() for e in EPS_VALUES}
    res, dt = timed(run)
    verdict(1, "example r solves the CYBE exactly at symbolic eps, eps=1, eps=0",
            all(res.values()) and dt < 5, f"{res}, {dt:.2f}s of 5s")


def _reference_pi(e):
    # columns E11, E12, E22; rows X, Y, C: pi(p, q, r) = q X + r Y + (p + e q/2 + r) C
    return [[coeff(0), coeff(1), coeff(0)], [coeff(0), coeff(0), coeff(1)],
            [coeff(1), e * coeff("1/2"), coeff(1)]]


def test_criterion_02_structure_recovery(verdict):
    bad = []
    for e in EPS_VALUES:
        c = from_rmatrix(example_rmatrix(e))
        pattern = c.a.is_abelian() if e == 0 else derived_is_central_line(c.a)
        iso = find_isomorphism(c, example_cbcst(e))
        ref = _reference_pi(EPS if e is None else coeff(e))
        pi_ok = iso.passed and matmul(matmul(iso.Ta, c.pi.matrix), inverse(iso.Tg)) == ref
        if not (c.a.dim == 3 and c.g.dim == 3 and pattern and pi_ok):
            bad.append(label(e))
    verdict(2, "dim a = dim g = 3, central derived line (abelian at eps=0), pi after basis change",
            not bad, f"failing: {bad}" if bad else "all three parameter values")


def test_criterion_03_inverse_group_cocycle(verdict):
    rep = check_pi_tilde_inverse(4)
    verdict(3, "pi~^-1 matches the closed forms for p, q, r through hbar^4", rep.passed,
            ", ".join(it.name for it in rep.failures()) or "p, q, r exact")


def test_criterion_04_closed_forms(verdict):
    def run():
        out = {}
        for e, (star, circ) in ((1, (STAR_E1, CIRC_E1)), (0, (STAR_E0, CIRC_E0))):
            out[label(e)] = compare_closed_form(quantize(example_cbcst(e), 4), star, circ, eps=e)
        return out
    res, dt = timed(run)
    ok = all(r.passed for r in res.values()) and dt < 60
    fails = [f"{k}: {it.name} {it.witness}" for k, r in res.items() for it in r.failures()]
    verdict(4, "quantize at N=4 equals the closed forms of both R-matrices", ok,
            "; ".join(fails) or f"6 + 6 coordinates exact, {dt:.1f}s of 60s")


def test_criterion_05_braid(verdict):
    def run():
        return {label(e): check_braid(quantize(example_cbcst(e), 5)) for e in (1, 0)}
    res, dt = timed(run)
    ok = all(r.passed for r in res.values()) and dt < 300
    fails = [f"{k}: {r.items[0].witness}" for k, r in res.items() if not r.passed]
    verdict(5, "R12 R13 R23 = R23 R13 R12 through hbar^5 at eps=1 and eps=0", ok,
            "; ".join(fails) or f"{dt:.1f}s of 300s")


def test_criterion_06_classical_limit(verdict):
    fixtures = {label(e): example_rmatrix(e) for e in EPS_VALUES}
    fixtures["rack"] = rack_rmatrix()
    bad = [k for k, r in fixtures.items()
           if not check_classical_limit(quantize(from_rmatrix(r), 2), r).passed]
    verdict(6, "hbar^1 coefficient of R equals r for every fixture", not bad,
            f"failing: {bad}" if bad else ", ".join(fixtures))


def test_criterion_07_unitarity(verdict):
    u0 = check_quantum_unitarity(quantize(example_cbcst(0), 4))
    u1 = check_quantum_unitarity(quantize(example_cbcst(1), 4))
    classical = {label(e): check_unitarity(example_rmatrix(e))
                 == from_rmatrix(example_rmatrix(e)).a.is_abelian() for e in EPS_VALUES}
    ok = u0.passed and not u1.passed and all(classical.values())
    first = u1.items[0].witness if not u1.passed else None
    verdict(7, "R21 R = 1 at eps=0 and not at eps=1 (mod hbar^5); r unitary iff a abelian", ok,
            f"eps=1 first differs at {first}; classical {classical}")


def _identity_failures(c):
    bad = []
    r = to_rmatrix(c)
    if not check_cybe(r).passed:
        bad.append("cybe of to_rmatrix")
    b = builder_from_rmatrix(r)
    bad += [it.name for it in b.check().failures()]
    c2 = cbcst_from_builder(b)
    bad += [it.name for it in validate(c2).failures()]
    names = {it.name for it in validate(c2).items}
    if not any(n.startswith("rho_ga: ") for n in names) or "a: jacobi" not in names:
        bad.append("validator items missing from the report")
    return bad


def test_criterion_08_identity_suite(verdict):
    failures = {}
    for e in EPS_VALUES:
        bad = _identity_failures(from_rmatrix(example_rmatrix(e)))
        if bad:
            failures[label(e)] = bad
    for seed in RANDOM_SEEDS:
        bad = _identity_failures(random_cbcst(random.Random(seed)))
        if bad:
            failures[f"seed {seed}"] = bad
    verdict(8, f"Jacobi, derivations, homomorphism, CYBE and the three identities on the example "
               f"and {len(RANDOM_SEEDS)} random tuples", not failures, str(failures or ""))


def test_criterion_09_round_trips(verdict):
    bad = []
    fixtures = [(label(e), example_rmatrix(e)) for e in EPS_VALUES] + [("rack", rack_rmatrix())]
    for name, r in fixtures:
        c = from_rmatrix(r)
        if minimize(to_rmatrix(c)) != minimize(r):
            bad.append(f"{name}: r -> tuple -> r")
        if not find_isomorphism(from_rmatrix(to_rmatrix(c)), c).passed:
            bad.append(f"{name}: tuple -> r -> tuple")
    for e in EPS_VALUES:
        ref = example_cbcst(e)
        if not find_isomorphism(from_rmatrix(to_rmatrix(ref)), ref).passed:
            bad.append(f"reference {label(e)}")
    for seed in RANDOM_SEEDS:
        c = random_cbcst(random.Random(seed))
        if not find_isomorphism(from_rmatrix(to_rmatrix(c)), c).passed:
            bad.append(f"seed {seed}")
    verdict(9, "round trips r -> tuple -> r and tuple -> r -> tuple with verified isomorphisms",
            not bad, ", ".join(bad))


_flow_failures = []


@settings(max_examples=20)
@given(st.lists(polys(n=2, max_terms=3, max_deg=2, with_eps=False), min_size=4, max_size=4))
def _flow_identity(comps):
    N = 4
    v = HVectorField.from_field(VectorField(comps[:2]), N)
    w = HVectorField.from_field(VectorField(comps[2:]), N)
    if compose(flow(v), flow(w)) != flow(hvf_bch(v, w)):
        _flow_failures.append(comps)
    if compose(flow(v), flow(-v)) != flow(v * 0):
        _flow_failures.append(comps)


def test_criterion_10_oracles(verdict):
    S = example_cbcst(1).semidirect
    rng = random.Random(10)
    bch_bad = []
    for k in range(5):
        u = log_of(S, [[rng.randint(-2, 2) for _ in range(6)] for _ in range(2)], 6)
        v = log_of(S, [[rng.randint(-2, 2) for _ in range(6)] for _ in range(3)], 6)
        if not bch_matrix_oracle(S, u, v, 6):
            bch_bad.append(k)
    _flow_failures.clear()
    _flow_identity()
    ok = not bch_bad and not _flow_failures
    verdict(10, "BCH against matrix exp/log in the 6-dim adjoint representation through hbar^6; "
                "flow compositions on random fields", ok,
            f"bch failures {bch_bad}, flow failures {len(_flow_failures)}")
