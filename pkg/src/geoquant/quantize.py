"""Formal exponentiation of a 7-tuple and the resulting quantum R-matrix.

Group elements are stored by their logarithms.  An element ``e^s`` of the
group of ``a x| g`` acts on points of X by the map whose pullback on
functions is ``e^{-rho(s)}``; this is a left action because rho is a Lie
algebra homomorphism into derivations.  Coefficients of the logs may depend on
other points (e.g. on y when acting on x), and are treated as scalars.

With ``Psi~(x) = e^{hbar Psi(x)}`` the R-matrix is ``R(x, y) = (x *~ y, x o~ y)``
where

    x *~ y = pi~^{-1}(Psi~(y)^{-1}) . x
    x o~ y = pi~^{-1}(Psi~(x *~ y)^{-1})^{-1} . (Psi~(x *~ y) . y)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .cbcst import CBCST, validate
from .cybe import GeomRMatrix, as_field_on_square
from .geomx import (FormalDiffeo, HVectorField, VectorField, compose_all, conjugate_swap, flow,
                    invert, place)
from .liealg import GroupLog, bch, cocycle_exponentiate, cocycle_invert, group_act
from .polycore import HSeries, MPoly, dump_series, expand_expr, substitute_series
from .report import Report


def _lift(s: HSeries, nvars: int) -> HSeries:
    return s if s.nvars == nvars else s.place(nvars, 0)


def act_on_points(fields: Sequence[VectorField], logs: Sequence[HSeries],
                  points: Sequence[HSeries], sign: int = -1) -> list[HSeries]:
    """Image of ``points`` under the map with pullback ``exp(sign * sum_k logs[k] fields[k])``.

    ``logs`` and ``points`` are series in the same ambient variables; the
    fields act on a separate copy of X, which is then evaluated at ``points``.
    """
    if not points:
        return []
    m, order = points[0].nvars, points[0].order
    n = len(points)
    total = m + n
    coeffs = [_lift(c, total) * sign for c in logs]
    comps = [HSeries.zero(order, total) for _ in range(m)]
    for j in range(n):
        acc = HSeries.zero(order, total)
        for c, v in zip(coeffs, fields):
            p = v.comps[j]
            if p and not c.is_zero():
                acc = acc + c * HSeries.embed(p.place(total, m), order)
        comps.append(acc)
    V = HVectorField(comps)
    ambient = [HSeries.embed(MPoly.var(i, m), order) for i in range(m)] + list(points)
    out = []
    for j in range(n):
        term = HSeries.embed(MPoly.var(m + j, total), order)
        acc = term
        k = 0
        while True:
            k += 1
            term = V.apply(term) * mpq(1, k)
            if term.is_zero() or k > order:
                break
            acc = acc + term
        out.append(substitute_series(acc, ambient))
    return out


@dataclass
class QuantumTuple:
    """Exponentiated 7-tuple truncated at hbar^order."""

    c: CBCST
    order: int

    @property
    def n(self) -> int:
        return self.c.n

    def psi_log(self, points: Sequence[HSeries]) -> GroupLog:
        """``log Psi~(p) = hbar Psi(p)`` at a point given by series."""
        comps = [substitute_series(HSeries.embed(p, self.order), list(points)).shift(1)
                 for p in self.c.psi]
        return GroupLog(self.c.a, comps)

    def pi_tilde(self, g: GroupLog) -> GroupLog:
        return cocycle_exponentiate(self.c.pi, g)

    def pi_tilde_inv(self, a: GroupLog) -> GroupLog:
        return cocycle_invert(self.c.pi, a)

    def act_g(self, g: GroupLog, points, sign: int = -1) -> list[HSeries]:
        da = self.c.a.dim
        return act_on_points(self.c.rho_gax[da:], g.comps, points, sign)

    def act_a(self, a: GroupLog, points, sign: int = -1) -> list[HSeries]:
        da = self.c.a.dim
        return act_on_points(self.c.rho_gax[:da], a.comps, points, sign)

    def check_equivariance(self) -> Report:
        """``Psi~(s . x) = s . Psi~(x)`` for ``s = e^{hbar b}`` with b a basis element.

        a acts on A by conjugation and g through ``e^{rho_ga}``.
        """
        rep = Report("Psi~ equivariance")
        n, N = self.n, self.order
        x = [HSeries.embed(MPoly.var(i, n), N) for i in range(n)]
        psi_x = self.psi_log(x)
        a, g = self.c.a, self.c.g
        bad = []
        for k in range(a.dim):
            s = GroupLog.hbar_times(a, a.basis(k), N, n)
            lhs = self.psi_log(self.act_a(s, x))
            rhs = bch(bch(s, psi_x), -s)
            if lhs != rhs:
                bad.append(a.labels[k])
        for k in range(g.dim):
            s = GroupLog.hbar_times(g, g.basis(k), N, n)
            lhs = self.psi_log(self.act_g(s, x))
            rhs = group_act(self.c.rho_ga, s, psi_x)
            if lhs != rhs:
                bad.append(g.labels[k])
        rep.add("all basis elements", not bad, bad or None)
        return rep


@dataclass
class RMatrixQ:
    """Formal diffeomorphism of X^2 split as ``(star, circ)``."""

    n: int
    star: list  # images of the x-block
    circ: list  # images of the y-block

    @property
    def order(self) -> int:
        return self.star[0].order

    @property
    def diffeo(self) -> FormalDiffeo:
        return FormalDiffeo(list(self.star) + list(self.circ))

    @classmethod
    def from_diffeo(cls, F: FormalDiffeo) -> "RMatrixQ":
        n = F.arity // 2
        return cls(n, F.images[:n], F.images[n:])

    @classmethod
    def identity(cls, n: int, order: int) -> "RMatrixQ":
        return cls.from_diffeo(FormalDiffeo.identity(2 * n, order))

    def specialize_eps(self, value) -> "RMatrixQ":
        return RMatrixQ(self.n, [s.specialize_eps(value) for s in self.star],
                        [s.specialize_eps(value) for s in self.circ])

    def to_dict(self) -> dict:
        return {
            "format": "geoquant.rseries/1",
            "n": self.n,
            "order": self.order,
            "star": [dump_series(s, self.n) for s in self.star],
            "circ": [dump_series(s, self.n) for s in self.circ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RMatrixQ":
        from .polycore import parse_series_dump
        n, N = int(data["n"]), int(data["order"])
        load = lambda rows: [parse_series_dump([(int(p), t) for p, t in row], N, 2 * n, n)
                             for row in rows]
        return cls(n, load(data["star"]), load(data["circ"]))


def quantize(c: CBCST, order: int, check: bool = True) -> RMatrixQ:
    if order < 2:
        raise ValueError("truncation order must be at least 2")
    if check:
        rep = validate(c)
        if not rep.passed:
            from .cbcst import ConstructionError
            raise ConstructionError("7-tuple fails validation", rep.to_dict())
    q = QuantumTuple(c, order)
    n, m, N = c.n, 2 * c.n, order
    x = [HSeries.embed(MPoly.var(i, m), N) for i in range(n)]
    y = [HSeries.embed(MPoly.var(n + i, m), N) for i in range(n)]
    g = q.pi_tilde_inv(-q.psi_log(y))
    star = q.act_g(g, x)
    w = q.psi_log(star)
    moved = q.act_a(w, y)
    g2 = q.pi_tilde_inv(-w)
    circ = q.act_g(g2, moved, sign=1)
    return RMatrixQ(n, star, circ)


def check_inverse_flows(c: CBCST, order: int) -> Report:
    """The inverse action realized as the flow of the negated log agrees with map inversion."""
    rep = Report("inverse flows")
    n = c.n
    x = [HSeries.embed(MPoly.var(i, n), order) for i in range(n)]
    bad = []
    for k, v in enumerate(c.rho_gax):
        hv = HVectorField.from_field(v, order)
        F = flow(hv)
        G = flow(-hv)
        if invert(F) != G:
            bad.append(k + 1)
        one = [HSeries.embed(MPoly.const(1, n), order).shift(1)]
        if FormalDiffeo(act_on_points([v], one, x, sign=1)) != F:
            bad.append(k + 1)
    rep.add("flow(-v) = flow(v)^-1", not bad, bad or None)
    return rep


def _first_diff_item(rep: Report, name: str, F: FormalDiffeo, G: FormalDiffeo) -> None:
    d = F.first_difference(G)
    if d is None:
        rep.add(name, True)
    else:
        rep.add(name, False, {"hbar_order": d[0], "coordinate": d[1] + 1})


def check_braid(R: RMatrixQ, order: int | None = None, flip: bool = False) -> Report:
    """``R12 R13 R23 = R23 R13 R12`` on X^3 as point maps, mod hbar^(order+1).

    Reading a product of operators on functions as pullbacks, the left side
    is the point map R23, then R13, then R12.  With ``flip`` the check uses
    the braid-group form ``(sR)_12 (sR)_23 (sR)_12 = (sR)_23 (sR)_12 (sR)_23``
    where s swaps the factors.
    """
    F = R.diffeo
    N = order if order is not None else F.order
    if N < F.order:
        F = FormalDiffeo([s.truncate(N) for s in F.images])
    n = R.n
    rep = Report("braid")
    if flip:
        sR = _swap_after(F, n)
        a, b = place(sR, (1, 2), 3, n), place(sR, (2, 3), 3, n)
        _first_diff_item(rep, "flip form", compose_all(a, b, a), compose_all(b, a, b))
        return rep
    r12, r13, r23 = (place(F, ij, 3, n) for ij in ((1, 2), (1, 3), (2, 3)))
    _first_diff_item(rep, "R12 R13 R23 = R23 R13 R12", compose_all(r23, r13, r12),
                     compose_all(r12, r13, r23))
    return rep


def _swap_after(F: FormalDiffeo, n: int) -> FormalDiffeo:
    """Point map ``(x, y) -> (F_y, F_x)``; not the identity mod hbar, so the
    constructor check is bypassed."""
    return FormalDiffeo(F.images[n:] + F.images[:n], check=False)


def classical_part(R: RMatrixQ) -> VectorField:
    """``-(hbar^1 coefficient)`` of the point map, a vector field on X^2."""
    return VectorField([-s[1] for s in R.diffeo.images])


def check_classical_limit(R: RMatrixQ, r: GeomRMatrix) -> Report:
    rep = Report("classical limit")
    got, want = classical_part(R), as_field_on_square(r)
    diff = [i + 1 for i, (a, b) in enumerate(zip(got.comps, want.comps)) if a != b]
    rep.add("hbar^1 coefficient equals r", not diff, {"coordinates": diff} if diff else None)
    return rep


def check_first_order(R: RMatrixQ, c: CBCST) -> Report:
    """hbar^1 coefficients against ``-(y * x)`` and ``-(y o x)`` on the a-side.

    With Psi the coordinate map, the hbar^1 term of ``Psi(x *~ y)`` must be
    ``-Psi(y) * Psi(x)`` contracted through the action on X; here it is
    compared on the fields, which is what the star/circ maps encode.
    """
    rep = Report("first order")
    n = c.n
    m = 2 * n
    da = c.a.dim
    psi_y = [p.place(m, n) for p in c.psi]
    psi_x = [p.place(m, 0) for p in c.psi]
    # star: x - hbar rho(0, pi^{-1} Psi(y))^- ... expressed through the fields
    want_star = [MPoly.zero(m)] * n
    want_circ = [MPoly.zero(m)] * n
    for k in range(da):
        ek = c.a.basis(k)
        gk = c.pi.inv(ek)
        vg = c.g_field(gk)
        vb = c.field(ek, gk)
        for i in range(n):
            want_star[i] = want_star[i] + psi_y[k] * vg.comps[i].place(m, 0)
            want_circ[i] = want_circ[i] - psi_x[k] * vb.comps[i].place(m, n)
    bad = [i + 1 for i in range(n) if R.star[i][1] != want_star[i]]
    rep.add("star hbar^1", not bad, bad or None)
    bad = [i + 1 for i in range(n) if R.circ[i][1] != want_circ[i]]
    rep.add("circ hbar^1", not bad, bad or None)
    return rep


def check_quantum_unitarity(R: RMatrixQ, order: int | None = None) -> Report:
    """``R^21 R = 1``: the point map R followed by R^21 is the identity."""
    F = R.diffeo
    rep = Report("quantum unitarity")
    G = compose_all(F, conjugate_swap(F))
    _first_diff_item(rep, "R^21 R = 1", G, FormalDiffeo.identity(F.arity, F.order))
    return rep


def check_rack_case(r: GeomRMatrix, order: int) -> Report:
    from .cbcst import from_rmatrix
    if r.a_terms:
        raise ValueError("rack case needs an r-matrix without function-after-field terms")
    R = quantize(from_rmatrix(r), order)
    rep = Report("rack case")
    x = [HSeries.embed(MPoly.var(i, 2 * r.n), order) for i in range(r.n)]
    diff = [i + 1 for i in range(r.n) if R.star[i] != x[i]]
    rep.add("star part is the identity", not diff, diff or None)
    rep.extend(check_braid(R))
    rep.extend(check_classical_limit(R, r))
    return rep


def compare_closed_form(R: RMatrixQ, star: Sequence[str], circ: Sequence[str],
                        eps=None) -> Report:
    """Coefficientwise comparison with closed forms in x1.., y1.., h (and eps)."""
    rep = Report("closed form")
    n, N = R.n, R.order
    for name, got, exprs in (("star", R.star, star), ("circ", R.circ, circ)):
        for i, (s, text) in enumerate(zip(got, exprs)):
            want = expand_expr(text, N, 2 * n, n)
            if eps is not None:
                want = want.specialize_eps(eps)
            d = s.first_difference(want)
            rep.add(f"{name} {i + 1}", d is None, None if d is None else {"hbar_order": d})
    return rep


__all__ = [
    "QuantumTuple", "RMatrixQ", "act_on_points", "quantize", "check_braid", "classical_part",
    "check_classical_limit", "check_first_order", "check_quantum_unitarity", "check_rack_case",
    "check_inverse_flows", "compare_closed_form",
]
