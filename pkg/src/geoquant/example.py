"""End-to-end verification of the built-in three-dimensional example."""

from __future__ import annotations

from .cbcst import derived_is_central_line, find_isomorphism, from_rmatrix, to_rmatrix, validate
from .cybe import GeomRMatrix, check_cybe, check_unitarity, minimize
from .fixtures import (CIRC_E0, CIRC_E1, PQR, STAR_E0, STAR_E1, example_cbcst, example_rmatrix)
from .liealg import GroupLog, cocycle_invert
from .polycore import MPoly, expand_expr
from .quantize import (check_braid, check_classical_limit, check_quantum_unitarity,
                       compare_closed_form, quantize)
from .report import Report

CLOSED_FORMS = {1: (STAR_E1, CIRC_E1), 0: (STAR_E0, CIRC_E0)}


def eps_label(eps) -> str:
    return "eps" if eps is None else f"eps={eps}"


def corrupted_rmatrix(eps=None) -> GeomRMatrix:
    """The example with one coefficient changed; it no longer solves the CYBE."""
    r = example_rmatrix(eps)
    v, f = r.a_terms[0]
    bumped = type(v)([v.comps[0] + MPoly.var(1, r.n)] + v.comps[1:])
    return GeomRMatrix(r.n, [(bumped, f)] + r.a_terms[1:], r.b_terms)


def check_pi_tilde_inverse(order: int) -> Report:
    """``pi~^{-1}(exp(hbar(x1 X + x2 Y + x3 C)))`` against its closed form, at eps = 1."""
    rep = Report("inverse group cocycle")
    c = example_cbcst(1)
    xs = [MPoly.var(i, 3) for i in range(3)]
    g = cocycle_invert(c.pi, GroupLog.hbar_times(c.a, xs, order, 3))
    for label, got, text in zip(c.g.labels, g.comps, PQR):
        want = expand_expr(text, order, 3)
        d = got.first_difference(want)
        rep.add(f"{label} coordinate", d is None, None if d is None else {"hbar_order": d})
    return rep


def check_structure(r: GeomRMatrix, eps) -> Report:
    rep = Report("structure")
    c = from_rmatrix(r)
    rep.add("dim a = 3, dim g = 3", c.a.dim == 3 and c.g.dim == 3,
            None if c.a.dim == 3 and c.g.dim == 3 else {"a": c.a.dim, "g": c.g.dim})
    if eps == 0:
        rep.add("a is abelian", c.a.is_abelian())
    else:
        rep.add("derived algebra of a is a central line", derived_is_central_line(c.a))
    rep.extend(validate(c), "constructed: ")
    iso = find_isomorphism(c, example_cbcst(eps))
    rep.extend(iso.report, "matches reference: ")
    rep.add("round trip r -> tuple -> r", minimize(to_rmatrix(c)) == minimize(r))
    ref = example_cbcst(eps)
    back = find_isomorphism(from_rmatrix(to_rmatrix(ref)), ref)
    rep.extend(back.report, "round trip tuple -> r -> tuple: ")
    rep.add("r unitary iff a abelian",
            check_unitarity(r) == c.a.is_abelian())
    return rep


def verify_example(order: int = 4, eps_values=(None, 1, 0), corrupt: bool = False) -> Report:
    """Run every check on the example family at the given parameter values."""
    rep = Report(f"example, order {order}")
    for eps in eps_values:
        tag = eps_label(eps) + ": "
        r = corrupted_rmatrix(eps) if corrupt else example_rmatrix(eps)
        cy = check_cybe(r)
        rep.extend(cy, tag)
        if not cy.passed:
            continue
        rep.extend(check_structure(r, eps), tag)
        R = quantize(from_rmatrix(r), order)
        rep.extend(check_classical_limit(R, r), tag)
        rep.extend(check_braid(R), tag)
        ref_R = quantize(example_cbcst(eps), order)
        rep.add(tag + "R independent of the basis of the tuple", R.diffeo == ref_R.diffeo)
        for value, (star, circ) in CLOSED_FORMS.items():
            if eps == value:
                rep.extend(compare_closed_form(R, star, circ, eps=value), tag)
            elif eps is None:
                rep.extend(compare_closed_form(R.specialize_eps(value), star, circ, eps=value),
                           f"{tag}at eps={value}: ")
        if eps is not None:
            u = check_quantum_unitarity(R)
            expect = eps == 0
            item = u.items[0]
            rep.add(f"{tag}R^21 R = 1 is {expect}", u.passed == expect,
                    None if u.passed == expect else item.witness, item.detail)
    if not corrupt and (1 in eps_values or None in eps_values):
        rep.extend(check_pi_tilde_inverse(order))
    return rep


__all__ = ["check_pi_tilde_inverse", "check_structure", "corrupted_rmatrix", "verify_example"]
