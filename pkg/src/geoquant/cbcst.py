"""Classical bijective cocycle 7-tuples and their correspondence with r-matrices.

A 7-tuple bundles Lie algebras g and a, an action of g on a by derivations,
an action of the semidirect product ``a x| g`` on X = C^n by polynomial vector
fields, a bijective 1-cocycle ``pi: g -> a`` and an equivariant polynomial
map ``Psi: X -> a``.

Conventions used throughout:

* ``[(a, g), (b, h)] = (g.b - h.a + [a, b], [g, h])`` on ``a x| g``.
* ``pi[g, h] = [pi g, pi h] + g.pi(h) - h.pi(g)``.
* Equivariance: ``Psi_* rho(a, g) = -[a, Psi] - g.Psi``.
* Vector fields bracket as derivations, ``[v, w] = v w - w v``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .cybe import GeomRMatrix, check_cybe, minimize
from .geomx import VectorField, vf_apply, vf_bracket
from .liealg import (LieAction, LieAlgebra, LieCocycle, check_cocycle, check_jacobi,
                     semidirect)
from .linalg import (NonUnitPivot, NotInSpan, Span, field_order_key, field_vector,
                     mono_order_key, poly_vector)
from .polycore import MPoly, coeff, format_poly, parse_poly
from .report import Report


class ConstructionError(ValueError):
    """The input does not define a 7-tuple; ``witness`` explains why."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def _s(x) -> str:
    return x.to_str() if hasattr(x, "to_str") else str(x)


def _vec_str(v) -> list[str]:
    return [_s(x) for x in v]


def _zero_vec(d: int) -> list:
    return [coeff(0)] * d


def _add(u, v):
    return [a + b for a, b in zip(u, v)]


def _sub(u, v):
    return [a - b for a, b in zip(u, v)]


def _scale(u, c):
    return [a * c for a in u]


def _combo_fields(coeffs: Sequence, fields: Sequence[VectorField], n: int) -> VectorField:
    out = VectorField.zero(n)
    for c, v in zip(coeffs, fields):
        if c:
            out = out + v * c
    return out


@dataclass
class CBCST:
    g: LieAlgebra
    a: LieAlgebra
    n: int
    rho_ga: LieAction
    rho_gax: list  # VectorField per basis element of a x| g: a-part first
    pi: LieCocycle
    psi: list  # MPoly per basis element of a

    def __post_init__(self):
        if len(self.rho_gax) != self.a.dim + self.g.dim:
            raise ValueError("need one vector field per basis element of the semidirect product")
        if len(self.psi) != self.a.dim:
            raise ValueError("Psi needs one component per basis element of a")
        self.psi = [p if p.nvars == self.n else MPoly.const(p, self.n) for p in self.psi]
        self._s = None

    @property
    def semidirect(self) -> LieAlgebra:
        if self._s is None:
            self._s = semidirect(self.a, self.g, self.rho_ga)
        return self._s

    # -- actions ----------------------------------------------------------
    def field(self, a_vec: Sequence, g_vec: Sequence) -> VectorField:
        """``rho(a, g)`` as a vector field on X."""
        return _combo_fields(list(a_vec) + list(g_vec), self.rho_gax, self.n)

    def g_field(self, g_vec) -> VectorField:
        return self.field(_zero_vec(self.a.dim), g_vec)

    def a_field(self, a_vec) -> VectorField:
        return self.field(a_vec, _zero_vec(self.g.dim))

    def faithful_pair(self, g_vec) -> tuple[VectorField, VectorField]:
        """The two actions of g on X: through the inclusion and through ``g -> (pi g, g)``."""
        return self.g_field(g_vec), self.field(self.pi(g_vec), g_vec)

    def star(self, x, y) -> list:
        """``x * y = pi^{-1}(x) . y`` (the action of g on a transported to a)."""
        return self.rho_ga.act(self.pi.inv(x), y)

    def circ(self, x, y) -> list:
        """Right-hand map determined by ``[x, y] = x o y + y * x``."""
        return _sub(self.a.bracket(x, y), self.star(y, x))

    def specialize_eps(self, value) -> "CBCST":
        rho = self.rho_ga.specialize_eps(value)
        return CBCST(self.g.specialize_eps(value), rho.target, self.n, rho,
                     [v.specialize_eps(value) for v in self.rho_gax],
                     LieCocycle([[x.specialize_eps(value) for x in row] for row in self.pi.matrix], rho),
                     [p.specialize_eps(value) for p in self.psi])

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "format": "geoquant.cbcst/1",
            "n": self.n,
            "g": self.g.to_dict(),
            "a": self.a.to_dict(),
            "rho_ga": [[_vec_str(row) for row in m] for m in self.rho_ga.matrices],
            "pi": [_vec_str(row) for row in self.pi.matrix],
            "rho_gax": [[format_poly(c) for c in v.comps] for v in self.rho_gax],
            "psi": [format_poly(p) for p in self.psi],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CBCST":
        n = int(data["n"])
        g = LieAlgebra.from_dict(data["g"])
        a = LieAlgebra.from_dict(data["a"])
        if g.dim == 0 or a.dim == 0:
            raise ValueError("zero-dimensional algebras are not allowed")
        mats = [[[parse_poly(str(x), 0) for x in row] for row in m] for m in data["rho_ga"]]
        rho = LieAction(g, mats, a, derivation=True)
        pi = LieCocycle([[parse_poly(str(x), 0) for x in row] for row in data["pi"]], rho)
        fields = [VectorField([parse_poly(str(c), n) for c in v]) for v in data["rho_gax"]]
        psi = [parse_poly(str(p), n) for p in data["psi"]]
        return cls(g, a, n, rho, fields, pi, psi)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def loads(cls, text: str) -> "CBCST":
        return cls.from_dict(json.loads(text))


def equivariant_action(a: LieAlgebra, rho: LieAction, psi: Sequence[MPoly]) -> list[VectorField]:
    """Fields ``u -> -[s, u]`` on X = a for Psi the identity coordinates.

    Only valid when ``psi`` is the list of coordinate functions of X = a.
    """
    d = a.dim
    for i, p in enumerate(psi):
        if p != MPoly.var(i, d):
            raise ValueError("equivariant_action needs Psi to be the identity")
    u = [MPoly.var(i, d) for i in range(d)]
    out = []
    for k in range(d):
        out.append(VectorField([-c for c in a.bracket(a.basis(k), u)]))
    for k in range(rho.source.dim):
        out.append(VectorField([-c for c in rho.act_basis(k, u)]))
    return out


# -- validation -------------------------------------------------------------

def _pushforward(psi: Sequence[MPoly], v: VectorField) -> list[MPoly]:
    return [vf_apply(v, p) for p in psi]


def _field_str(v: VectorField) -> list[str]:
    return [format_poly(c) for c in v.comps]


def check_equivariance(c: CBCST) -> tuple[bool, list, bool]:
    """Return (passes, failures, passes_with_opposite_sign)."""
    S = c.semidirect
    da = c.a.dim
    bad = []
    flipped_ok = True
    for k in range(S.dim):
        basis = S.basis(k)
        av, gv = basis[:da], basis[da:]
        lhs = _pushforward(c.psi, c.rho_gax[k])
        psi = c.psi
        rhs = [-(x + y) for x, y in zip(c.a.bracket(av, psi), c.rho_ga.act(gv, psi))]
        res = [l - r for l, r in zip(lhs, rhs)]
        if any(res):
            bad.append({"element": S.labels[k], "residual": [format_poly(p) for p in res]})
        if any(l + r for l, r in zip(lhs, rhs)):
            flipped_ok = False
    return not bad, bad, flipped_ok and bool(bad)


def _lie_closure_rank(a: LieAlgebra, vectors: list) -> int:
    sp = Span()
    queue = []
    for v in vectors:
        vec = {k: x for k, x in enumerate(v) if x}
        if vec and sp.add(vec):
            queue.append(list(v))
    basis = list(queue)
    i = 0
    while i < len(basis):
        for j in range(len(basis)):
            w = a.bracket(basis[i], basis[j])
            vec = {k: x for k, x in enumerate(w) if x}
            if vec and sp.add(vec):
                basis.append(w)
        i += 1
    return sp.rank


def psi_coefficient_vectors(c: CBCST) -> list:
    """The a-valued coefficients of Psi, one per (monomial, eps power)."""
    table: dict = {}
    for k, p in enumerate(c.psi):
        for mono, cf in p.split_eps().items():
            table.setdefault(mono, [coeff(0)] * c.a.dim)[k] = cf
    return [table[m] for m in sorted(table)]


def check_generation(c: CBCST) -> tuple[bool, int]:
    rank = _lie_closure_rank(c.a, psi_coefficient_vectors(c))
    return rank == c.a.dim, rank


def _pair_vector(pair: tuple[VectorField, VectorField]) -> dict:
    out = {}
    for side, v in enumerate(pair):
        for (mono, i), x in field_vector(v.comps).items():
            out[(side, mono, i)] = x
    return out


def _pair_key(n: int):
    fk = field_order_key(n)
    return lambda col: (col[0], fk((col[1], col[2])))


def check_faithful(c: CBCST) -> tuple[bool, list | None]:
    sp = Span(order_key=_pair_key(c.n))
    for k in range(c.g.dim):
        sp.add(_pair_vector(c.faithful_pair(c.g.basis(k))))
    if sp.rank == c.g.dim:
        return True, None
    kernel = sp.kernel[0]
    return False, [_s(kernel.get(k, coeff(0))) for k in range(c.g.dim)]


def check_field_homomorphism(c: CBCST) -> tuple[bool, list]:
    S = c.semidirect
    bad = []
    for i in range(S.dim):
        for j in range(i + 1, S.dim):
            lhs = _combo_fields(S.c[i][j], c.rho_gax, c.n)
            rhs = vf_bracket(c.rho_gax[i], c.rho_gax[j])
            if lhs != rhs:
                bad.append({"pair": [S.labels[i], S.labels[j]],
                            "residual": _field_str(lhs - rhs)})
    return not bad, bad


def validate(c: CBCST) -> Report:
    """Itemized check of every axiom, with witnesses for failures."""
    rep = Report("cbcst")
    rep.extend(check_jacobi(c.a), "a: ")
    rep.extend(check_jacobi(c.g), "g: ")
    rep.extend(LieAction(c.g, c.rho_ga.matrices, c.a, derivation=True).check(), "rho_ga: ")
    try:
        rep.extend(check_cocycle(c.pi), "pi: ")
    except ValueError as exc:
        rep.add("pi: shape", False, detail=str(exc))
    try:
        ok, bad = check_field_homomorphism(c)
        rep.add("rho_gax: homomorphism", ok, bad or None)
    except Exception as exc:  # derivation failure makes the semidirect product undefined
        rep.add("rho_gax: homomorphism", False, detail=str(exc))
        return rep
    ok, bad, flipped = check_equivariance(c)
    detail = "holds with the opposite global sign (convention diagnostic)" if flipped else ""
    rep.add("psi: equivariance", ok, bad or None, detail)
    ok, rank = check_generation(c)
    rep.add("psi: generation", ok, None if ok else {"closure_rank": rank, "dim": c.a.dim})
    ok, ker = check_faithful(c)
    rep.add("faithful", ok, None if ok else {"kernel_vector": ker})
    return rep


# -- r-matrix -> 7-tuple --------------------------------------------------------

@dataclass
class CBCSTBuilder:
    """Intermediate data of the construction from an r-matrix.

    ``fbasis`` is the reduced echelon basis f_1..f_d of V = V1 + V2 and a is
    its dual; ``Ma[i][k]`` / ``Mb[j][k]`` are the coordinates of a0_i / b0_j.
    ``p[k]`` is the pair of fields ``p(e_k)`` in g1 (+) g2.
    """

    r: GeomRMatrix
    fbasis: list
    Ma: list
    Mb: list
    p: list
    action_matrices: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.r.n

    @property
    def dim(self) -> int:
        return len(self.fbasis)

    def _span(self) -> Span:
        sp = getattr(self, "_fspan", None)
        if sp is None:
            sp = Span((poly_vector(f) for f in self.fbasis), mono_order_key(self.n))
            self._fspan = sp
        return sp

    def coords(self, f: MPoly) -> list:
        return self._span().coordinates(poly_vector(f))

    def eval(self, x: Sequence, f: MPoly):
        """Pair an element of a = V* with a function of V."""
        acc = coeff(0)
        for xi, c in zip(x, self.coords(f)):
            if xi and c:
                acc = acc + xi * c
        return acc

    def dual_action(self, w: VectorField) -> list:
        """Matrix D with ``D[k][l]`` the k-th coordinate of ``w . f_l``."""
        key = id(w)
        hit = self.action_matrices.get(key)
        if hit is not None and hit[0] is w:
            return hit[1]
        cols = [self.coords(vf_apply(w, f)) for f in self.fbasis]
        D = [[cols[l][k] for l in range(self.dim)] for k in range(self.dim)]
        self.action_matrices[key] = (w, D)
        return D

    def transport(self, w: VectorField, x: Sequence) -> list:
        """``f -> x(w . f)`` as an element of a."""
        D = self.dual_action(w)
        out = _zero_vec(self.dim)
        for k, xk in enumerate(x):
            if xk:
                out = [o + xk * D[k][l] for l, o in enumerate(out)]
        return out

    def a_val(self, x, i) -> object:
        return sum((xk * self.Ma[i][k] for k, xk in enumerate(x) if xk), coeff(0))

    def b_val(self, x, j) -> object:
        return sum((xk * self.Mb[j][k] for k, xk in enumerate(x) if xk), coeff(0))

    def star(self, x, y) -> list:
        """``(x * y)(f) = x(a0_i) y(a1_i . f)``."""
        out = _zero_vec(self.dim)
        for i, a1 in enumerate(self.r.a1):
            c = self.a_val(x, i)
            if c:
                out = _add(out, _scale(self.transport(a1, y), c))
        return out

    def circ(self, x, y) -> list:
        """``(x o y)(f) = y(b0_j) x(b1_j . f)``."""
        out = _zero_vec(self.dim)
        for j, b1 in enumerate(self.r.b1):
            c = self.b_val(y, j)
            if c:
                out = _add(out, _scale(self.transport(b1, x), c))
        return out

    def bracket_lsa(self, x, y) -> list:
        return _add(self.circ(x, y), self.star(y, x))

    def bracket_lsa_other(self, x, y) -> list:
        """The second displayed form ``x(a0_i)(a1_i . y) + x(b0_j)(b1_j . y)``
        with fields acting on a by ``(w . y)(f) = -y(w . f)``."""
        out = _zero_vec(self.dim)
        for i, a1 in enumerate(self.r.a1):
            c = self.a_val(x, i)
            if c:
                out = _sub(out, _scale(self.transport(a1, y), c))
        for j, b1 in enumerate(self.r.b1):
            c = self.b_val(x, j)
            if c:
                out = _sub(out, _scale(self.transport(b1, y), c))
        return out

    def p_of(self, x) -> tuple[VectorField, VectorField]:
        v1, v2 = VectorField.zero(self.n), VectorField.zero(self.n)
        for k, xk in enumerate(x):
            if xk:
                v1 = v1 + self.p[k][0] * xk
                v2 = v2 + self.p[k][1] * xk
        return v1, v2

    def p_bracket(self, x, y) -> tuple[VectorField, VectorField]:
        px, py = self.p_of(x), self.p_of(y)
        return vf_bracket(px[0], py[0]), vf_bracket(px[1], py[1])

    def p_span(self) -> Span:
        sp = getattr(self, "_pspan", None)
        if sp is None:
            sp = Span((_pair_vector(pk) for pk in self.p), _pair_key(self.n))
            self._pspan = sp
        return sp

    def pi_of_pair(self, pair) -> list:
        """``pi = p^{-1}`` on the image of p."""
        combo = self.p_span().express(_pair_vector(pair))
        return [combo.get(k, coeff(0)) for k in range(self.dim)]

    def bracket_dba(self, x, y) -> list:
        """``[x, y] = -x * y + y * x + pi[p x, p y]``."""
        return _add(_sub(self.star(y, x), self.star(x, y)), self.pi_of_pair(self.p_bracket(x, y)))

    # -- identities of the construction ----------------------------------
    def check(self) -> Report:
        rep = Report("construction identities")
        d = self.dim
        E = [[coeff(1 if i == k else 0) for i in range(d)] for k in range(d)]
        # subalgebras g1, g2 and invariance of V
        for name, fields in (("g1", self.r.a1), ("g2", self.r.b1)):
            sp = Span((field_vector(v.comps) for v in fields), field_order_key(self.n))
            bad = []
            for i in range(len(fields)):
                for j in range(i + 1, len(fields)):
                    w = vf_bracket(fields[i], fields[j])
                    if not sp.contains(field_vector(w.comps)):
                        bad.append([i + 1, j + 1])
            rep.add(f"{name} is a subalgebra", not bad, bad or None)
        fry, sry, dba, anti, et, four = [], [], [], [], [], []
        for i in range(d):
            for j in range(d):
                x, y = E[i], E[j]
                lhs = self.p_bracket(x, y)
                xs, xc = self.star(x, y), self.circ(x, y)
                ps, pc = self.p_of(xs), self.p_of(xc)
                rhs = (ps[0] + pc[0], ps[1] + pc[1])
                if lhs != rhs:
                    fry.append([i + 1, j + 1])
                b_dba = self.bracket_dba(x, y)
                if b_dba != _add(xc, self.star(y, x)):
                    sry.append([i + 1, j + 1])
                if b_dba != self.bracket_lsa(x, y):
                    dba.append([i + 1, j + 1])
                if self.bracket_lsa_other(x, y) != self.bracket_lsa(x, y):
                    anti.append([i + 1, j + 1])
        rep.add("[p x, p y] = p(x * y) + p(x o y)", not fry, fry or None)
        rep.add("[x, y] = x o y + y * x", not sry, sry or None)
        rep.add("bracket from pi agrees with the direct formula", not dba, dba or None)
        rep.add("both direct bracket formulas agree", not anti, anti or None)
        pb = self.pi_of_pair
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    x, y, z = E[i], E[j], E[k]
                    st = self.star
                    zy, zx, yx = st(z, y), st(z, x), st(y, x)
                    terms = [
                        pb(self.p_bracket(zy, x)),
                        _scale(st(zy, x), -1),
                        _scale(st(z, pb(self.p_bracket(y, x))), -1),
                        st(z, yx),
                        _scale(st(pb(self.p_bracket(z, x)), y), -1),
                        st(zx, y),
                        pb(self.p_bracket(y, zx)),
                        _scale(st(y, zx), -1),
                    ]
                    total = terms[0]
                    for t in terms[1:]:
                        total = _add(total, t)
                    if any(total):
                        et.append({"triple": [i + 1, j + 1, k + 1], "residual": _vec_str(total)})
                    ci = self.circ
                    mixed = _add(_sub(ci(zy, x), st(z, ci(y, x))),
                                 _sub(ci(y, zx), st(ci(z, x), y)))
                    if any(mixed):
                        four.append([i + 1, j + 1, k + 1])
        rep.add("eight-term identity", not et, et or None)
        rep.add("four-term star/circ identity", not four, four or None)
        return rep


def builder_from_rmatrix(r: GeomRMatrix, check: bool = True) -> CBCSTBuilder:
    if check:
        rep = check_cybe(r)
        if not rep.passed:
            raise ConstructionError("r does not satisfy the classical Yang-Baxter equation",
                                    rep.items[0].witness)
    r = minimize(r)
    n = r.n
    sp = Span(order_key=mono_order_key(n))
    for f in r.a0 + r.b0:
        sp.add(poly_vector(f))
    fbasis = [MPoly.join_eps(n, row) for row in sp.basis()]
    fspan = Span((poly_vector(f) for f in fbasis), mono_order_key(n))
    Ma = [fspan.coordinates(poly_vector(f)) for f in r.a0]
    Mb = [fspan.coordinates(poly_vector(f)) for f in r.b0]
    d = len(fbasis)
    p = []
    for k in range(d):
        v1 = _combo_fields([-Ma[i][k] for i in range(len(Ma))], r.a1, n)
        v2 = _combo_fields([Mb[j][k] for j in range(len(Mb))], r.b1, n)
        p.append((v1, v2))
    b = CBCSTBuilder(r, fbasis, Ma, Mb, p)
    b._fspan = fspan
    psp = Span(order_key=_pair_key(n))
    for pk in p:
        psp.add(_pair_vector(pk))
    if psp.rank < d:
        ker = psp.kernel[0]
        raise ConstructionError("p is not injective on a; pi would not be bijective",
                                [_s(ker.get(k, coeff(0))) for k in range(d)])
    b._pspan = psp
    return b


def from_rmatrix(r: GeomRMatrix) -> CBCST:
    """Build the 7-tuple of an r-matrix.

    a is the dual of V = span(a0_i, b0_j) in the basis dual to the reduced
    echelon basis of V; g = Im(p) with basis g_k = p(e_k), so pi is the
    identity matrix.
    """
    b = builder_from_rmatrix(r)
    return cbcst_from_builder(b)


def cbcst_from_builder(b: CBCSTBuilder) -> CBCST:
    d, n = b.dim, b.n
    if d == 0:
        raise ConstructionError("r = 0 has no associated 7-tuple (a would be zero-dimensional)")
    E = [[coeff(1 if i == k else 0) for i in range(d)] for k in range(d)]
    a_br, g_br = {}, {}
    for i in range(d):
        for j in range(i + 1, d):
            a_br[(i, j)] = b.bracket_lsa(E[i], E[j])
            try:
                g_br[(i, j)] = b.pi_of_pair(b.p_bracket(E[i], E[j]))
            except NotInSpan as exc:
                raise ConstructionError("Im(p) is not closed under the bracket",
                                        {"pair": [i + 1, j + 1]}) from exc
    a = LieAlgebra(d, a_br, [f"e{k + 1}" for k in range(d)])
    g = LieAlgebra(d, g_br, [f"g{k + 1}" for k in range(d)])
    mats = []
    for k in range(d):
        cols = [b.star(E[k], E[m]) for m in range(d)]
        mats.append([[cols[m][l] for m in range(d)] for l in range(d)])
    rho = LieAction(g, mats, a, derivation=True)
    pi = LieCocycle([row[:] for row in E], rho)
    fields = []
    for k in range(d):
        v = VectorField.zero(n)
        for i, a1 in enumerate(b.r.a1):
            if b.Ma[i][k]:
                v = v + a1 * b.Ma[i][k]
        for j, b1 in enumerate(b.r.b1):
            if b.Mb[j][k]:
                v = v + b1 * b.Mb[j][k]
        fields.append(v)
    for k in range(d):
        fields.append(b.p[k][0])
    return CBCST(g, a, n, rho, fields, pi, list(b.fbasis))


def star_action(obj, x, y) -> list:
    """``x * y`` for a builder or a 7-tuple."""
    return obj.star(x, y)


def circ_action(obj, x, y) -> list:
    """``x o y`` for a builder or a 7-tuple."""
    return obj.circ(x, y)


# -- 7-tuple -> r-matrix --------------------------------------------------------

def to_rmatrix(c: CBCST, check: bool = True) -> GeomRMatrix:
    """``r = r1 + r2`` with ``r1 = sum_k -rho(0, pi^{-1} e_k) (x) Psi_k`` and
    ``r2 = sum_k Psi_k (x) rho(e_k, pi^{-1} e_k)``."""
    if check:
        rep = validate(c)
        if not rep.passed:
            raise ConstructionError("7-tuple fails validation", rep.to_dict())
    d = c.a.dim
    a_terms, b_terms = [], []
    for k in range(d):
        ek = c.a.basis(k)
        gk = c.pi.inv(ek)
        a_terms.append((-c.g_field(gk), c.psi[k]))
        b_terms.append((c.psi[k], c.field(ek, gk)))
    return minimize(GeomRMatrix(c.n, a_terms, b_terms))


# -- isomorphisms -----------------------------------------------------------------

@dataclass
class Isomorphism:
    """Basis change from ``source`` to ``target``: columns are images of source basis vectors."""

    Ta: list
    Tg: list
    report: Report

    @property
    def passed(self) -> bool:
        return self.report.passed


def _apply(T, v):
    return [sum((T[r][c] * v[c] for c in range(len(v)) if v[c] and T[r][c]), coeff(0))
            for r in range(len(T))]


def find_isomorphism(source: CBCST, target: CBCST) -> Isomorphism:
    """Construct explicit maps a_src -> a_tgt and g_src -> g_tgt and verify them.

    Ta is solved from ``Psi_tgt = Ta Psi_src``; Tg from matching the pairs of
    vector fields by which g acts on X.
    """
    rep = Report("isomorphism")
    if source.n != target.n or source.a.dim != target.a.dim or source.g.dim != target.g.dim:
        rep.add("dimensions", False, {"source": [source.a.dim, source.g.dim],
                                      "target": [target.a.dim, target.g.dim]})
        return Isomorphism([], [], rep)
    da, dg, n = source.a.dim, source.g.dim, source.n
    # Psi_tgt = Ta Psi_src: express each target component through the source ones
    sp = Span((poly_vector(p) for p in source.psi), mono_order_key(n))
    Ta = [[coeff(0)] * da for _ in range(da)]
    try:
        for k, p in enumerate(target.psi):
            combo = sp.express(poly_vector(p))
            for l, x in combo.items():
                Ta[k][l] = x
        rep.add("a: basis change from Psi", True)
    except (NotInSpan, NonUnitPivot) as exc:
        rep.add("a: basis change from Psi", False, detail=str(exc))
        return Isomorphism(Ta, [], rep)
    tsp = Span((_pair_vector(target.faithful_pair(target.g.basis(k))) for k in range(dg)),
               _pair_key(n))
    Tg = [[coeff(0)] * dg for _ in range(dg)]
    try:
        for l in range(dg):
            combo = tsp.express(_pair_vector(source.faithful_pair(source.g.basis(l))))
            for k, x in combo.items():
                Tg[k][l] = x
        rep.add("g: basis change from the faithful actions", True)
    except (NotInSpan, NonUnitPivot) as exc:
        rep.add("g: basis change from the faithful actions", False, detail=str(exc))
        return Isomorphism(Ta, Tg, rep)
    from .linalg import inverse
    for name, T in (("a", Ta), ("g", Tg)):
        try:
            inverse(T)
            rep.add(f"{name}: basis change invertible", True)
        except (NonUnitPivot, ZeroDivisionError) as exc:
            rep.add(f"{name}: basis change invertible", False, detail=str(exc))
    for name, L, M, T in (("a", source.a, target.a, Ta), ("g", source.g, target.g, Tg)):
        bad = []
        for i in range(L.dim):
            for j in range(i + 1, L.dim):
                lhs = _apply(T, L.c[i][j])
                rhs = M.bracket(_apply(T, L.basis(i)), _apply(T, L.basis(j)))
                if lhs != rhs:
                    bad.append([i + 1, j + 1])
        rep.add(f"{name}: brackets preserved", not bad, bad or None)
    bad = []
    for i in range(dg):
        for j in range(da):
            lhs = _apply(Ta, source.rho_ga.act_basis(i, source.a.basis(j)))
            rhs = target.rho_ga.act(_apply(Tg, source.g.basis(i)), _apply(Ta, source.a.basis(j)))
            if lhs != rhs:
                bad.append([i + 1, j + 1])
    rep.add("rho_ga intertwined", not bad, bad or None)
    bad = []
    for i in range(dg):
        gi = source.g.basis(i)
        if _apply(Ta, source.pi(gi)) != target.pi(_apply(Tg, gi)):
            bad.append(i + 1)
    rep.add("pi intertwined", not bad, bad or None)
    bad = []
    for k in range(da + dg):
        v = source.rho_gax[k]
        if k < da:
            w = target.a_field(_apply(Ta, source.a.basis(k)))
        else:
            w = target.g_field(_apply(Tg, source.g.basis(k - da)))
        if v != w:
            bad.append(k + 1)
    rep.add("rho_gax intertwined", not bad, bad or None)
    return Isomorphism(Ta, Tg, rep)


def derived_is_central_line(a: LieAlgebra) -> bool:
    """Derived subalgebra one-dimensional and central (Heisenberg pattern)."""
    if a.derived_span_rank() != 1:
        return False
    vec = next(v for _, _, v in a._pairs)
    return all(not any(a.bracket(a.basis(i), vec)) for i in range(a.dim))


__all__ = [
    "CBCST", "CBCSTBuilder", "ConstructionError", "Isomorphism", "builder_from_rmatrix",
    "cbcst_from_builder", "derived_is_central_line", "equivariant_action", "find_isomorphism",
    "from_rmatrix", "psi_coefficient_vectors", "to_rmatrix", "validate",
]
