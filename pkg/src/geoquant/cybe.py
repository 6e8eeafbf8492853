"""Geometric classical r-matrices and the classical Yang-Baxter equation.

An r-matrix ``sum_i a1_i (x) a0_i + sum_j b0_j (x) b1_j`` is identified with
the vector field on X^2 whose x-block is ``sum_i a1_i(x) a0_i(y)`` and whose
y-block is ``sum_j b0_j(x) b1_j(y)``.  This identification is injective, so
equality of r-matrices is tested on these fields.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .geomx import VectorField, vf_apply, vf_bracket
from .linalg import Span, field_order_key, field_vector, mono_order_key, poly_vector
from .polycore import MPoly, format_poly, parse_poly
from .report import Report


@dataclass
class GeomRMatrix:
    """``a_terms = [(a1_i, a0_i)]`` and ``b_terms = [(b0_j, b1_j)]`` on affine n-space."""

    n: int
    a_terms: list = field(default_factory=list)
    b_terms: list = field(default_factory=list)

    def __post_init__(self):
        self.a_terms = [(v, _fn(f, self.n)) for v, f in self.a_terms]
        self.b_terms = [(_fn(f, self.n), v) for f, v in self.b_terms]
        for v, _ in self.a_terms:
            _check_field(v, self.n)
        for _, v in self.b_terms:
            _check_field(v, self.n)

    @property
    def a1(self) -> list[VectorField]:
        return [v for v, _ in self.a_terms]

    @property
    def a0(self) -> list[MPoly]:
        return [f for _, f in self.a_terms]

    @property
    def b0(self) -> list[MPoly]:
        return [f for f, _ in self.b_terms]

    @property
    def b1(self) -> list[VectorField]:
        return [v for _, v in self.b_terms]

    def __eq__(self, other):
        return (isinstance(other, GeomRMatrix) and self.n == other.n
                and as_field_on_square(self) == as_field_on_square(other))

    def __add__(self, other: "GeomRMatrix") -> "GeomRMatrix":
        return GeomRMatrix(self.n, self.a_terms + other.a_terms, self.b_terms + other.b_terms)

    def __neg__(self) -> "GeomRMatrix":
        return GeomRMatrix(self.n, [(-v, f) for v, f in self.a_terms],
                           [(f, -v) for f, v in self.b_terms])

    def flip(self) -> "GeomRMatrix":
        """``r^21``: swap the tensor legs, exchanging the roles of the two lists."""
        return GeomRMatrix(self.n, [(v, f) for f, v in self.b_terms],
                           [(f, v) for v, f in self.a_terms])

    def specialize_eps(self, value) -> "GeomRMatrix":
        return GeomRMatrix(self.n,
                           [(v.specialize_eps(value), f.specialize_eps(value)) for v, f in self.a_terms],
                           [(f.specialize_eps(value), v.specialize_eps(value)) for f, v in self.b_terms])

    def has_eps(self) -> bool:
        return any(p.has_eps() for p in self._polys())

    def _polys(self):
        for v, f in self.a_terms:
            yield f
            yield from v.comps
        for f, v in self.b_terms:
            yield f
            yield from v.comps

    def is_minimal(self) -> bool:
        return (_independent(self.a1, field_vector_of, self.n)
                and _independent(self.a0, poly_vector, self.n)
                and _independent(self.b1, field_vector_of, self.n)
                and _independent(self.b0, poly_vector, self.n))

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        out = {"dimension": self.n}
        if self.has_eps():
            out["parameters"] = ["eps"]
        out["a_terms"] = [{"vf": [format_poly(c) for c in v.comps], "fn": format_poly(f)}
                          for v, f in self.a_terms]
        out["b_terms"] = [{"fn": format_poly(f), "vf": [format_poly(c) for c in v.comps]}
                          for f, v in self.b_terms]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "GeomRMatrix":
        n = int(data["dimension"])
        if n < 1:
            raise ValueError("dimension must be positive")

        def vf(items):
            if len(items) != n:
                raise ValueError(f"vector field needs {n} components, got {len(items)}")
            return VectorField([parse_poly(str(s), n) for s in items])

        a = [(vf(t["vf"]), parse_poly(str(t["fn"]), n)) for t in data.get("a_terms", [])]
        b = [(parse_poly(str(t["fn"]), n), vf(t["vf"])) for t in data.get("b_terms", [])]
        return cls(n, a, b)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def loads(cls, text: str) -> "GeomRMatrix":
        return cls.from_dict(json.loads(text))


def _fn(f, n: int) -> MPoly:
    if isinstance(f, MPoly):
        return f if f.nvars == n else MPoly.const(f, n)
    return MPoly.const(f, n)


def _check_field(v: VectorField, n: int) -> None:
    if v.arity != n:
        raise ValueError(f"vector field of arity {v.arity} on a space of dimension {n}")


def field_vector_of(v: VectorField):
    return field_vector(v.comps)


def _independent(items, to_vec, n) -> bool:
    key = field_order_key(n) if to_vec is field_vector_of else mono_order_key(n)
    sp = Span(order_key=key)
    for it in items:
        if not sp.add(to_vec(it)):
            return False
    return True


def _field_from_vector(vec: dict, n: int) -> VectorField:
    parts: list[dict] = [{} for _ in range(n)]
    for (mono, i), c in vec.items():
        parts[i][mono] = c
    return VectorField([MPoly.join_eps(n, p) for p in parts])


def _minimal_tensor(pairs: Sequence[tuple[VectorField, MPoly]], n: int):
    """Canonical minimal form of ``sum v_i (x) f_i``.

    The field side is the reduced echelon basis of its span; the function
    side is then uniquely determined.
    """
    pairs = [(v, f) for v, f in pairs if not v.is_zero() and f]
    if not pairs:
        return []
    # first make the function side independent
    fs = Span(order_key=mono_order_key(n))
    for _, f in pairs:
        fs.add(poly_vector(f))
    fbasis = [MPoly.join_eps(n, row) for row in fs.basis()]
    fields = [VectorField.zero(n) for _ in fbasis]
    for v, f in pairs:
        for k, c in enumerate(fs.coordinates(poly_vector(f))):
            if c:
                fields[k] = fields[k] + v * c
    # then rewrite the field side in its reduced basis
    vs = Span(order_key=field_order_key(n))
    for v in fields:
        vs.add(field_vector(v.comps))
    vbasis = [_field_from_vector(row, n) for row in vs.basis()]
    funcs = [MPoly.zero(n) for _ in vbasis]
    for v, f in zip(fields, fbasis):
        for l, c in enumerate(vs.coordinates(field_vector(v.comps))):
            if c:
                funcs[l] = funcs[l] + f * c
    return [(v, f) for v, f in zip(vbasis, funcs) if f]


def minimize(r: GeomRMatrix) -> GeomRMatrix:
    """Equivalent r with both lists of minimal length, in canonical form."""
    a = _minimal_tensor(r.a_terms, r.n)
    b = _minimal_tensor([(v, f) for f, v in r.b_terms], r.n)
    return GeomRMatrix(r.n, a, [(f, v) for v, f in b])


def as_field_on_square(r: GeomRMatrix) -> VectorField:
    n = r.n
    m = 2 * n
    comps = [MPoly.zero(m) for _ in range(m)]
    for v, f in r.a_terms:
        fy = f.place(m, n)
        for i, c in enumerate(v.comps):
            if c:
                comps[i] = comps[i] + c.place(m, 0) * fy
    for f, v in r.b_terms:
        fx = f.place(m, 0)
        for i, c in enumerate(v.comps):
            if c:
                comps[n + i] = comps[n + i] + fx * c.place(m, n)
    return VectorField(comps)


def place_field(v: VectorField, blocks: Sequence[int], k: int, n: int) -> VectorField:
    """Move a field on X^len(blocks) onto the given 1-based blocks of X^k."""
    total = n * k
    targets = [(b - 1) * n + t for b in blocks for t in range(n)]
    comps = [MPoly.zero(total) for _ in range(total)]
    for src, dst in enumerate(targets):
        comps[dst] = v.comps[src].remap(targets, total)
    return VectorField(comps)


def cybe_residual(r: GeomRMatrix) -> VectorField:
    """``[r12, r13] + [r12, r23] + [r13, r23]`` as a vector field on X^3."""
    f = as_field_on_square(r)
    r12 = place_field(f, (1, 2), 3, r.n)
    r13 = place_field(f, (1, 3), 3, r.n)
    r23 = place_field(f, (2, 3), 3, r.n)
    return vf_bracket(r12, r13) + vf_bracket(r12, r23) + vf_bracket(r13, r23)


def _field_witness(v: VectorField, n: int, k: int = 3) -> dict:
    from .polycore import variable_names
    names = variable_names(n * k, n)
    return {names[i]: c.to_str(names) for i, c in enumerate(v.comps) if c}


def check_cybe(r: GeomRMatrix) -> Report:
    rep = Report("cybe")
    res = cybe_residual(r)
    rep.add("classical Yang-Baxter equation", res.is_zero(),
            None if res.is_zero() else {"residual": _field_witness(res, r.n)})
    return rep


def cybe_components(r: GeomRMatrix) -> tuple[VectorField, VectorField, VectorField]:
    """The three homogeneous parts of the CYBE, built term by term.

    The first lives in Vect (x) O (x) O, the second in O (x) Vect (x) O and the
    third in O (x) O (x) Vect.  Each is returned as a field on X^3 supported on
    the block carrying the vector-field factor.
    """
    n, m = r.n, 3 * r.n
    X = [[MPoly.zero(m) for _ in range(n)] for _ in range(3)]

    def add(block: int, v: VectorField, f1: MPoly, b1: int, f2: MPoly, b2: int, sign: int):
        g = f1.place(m, b1 * n) * f2.place(m, b2 * n) * sign
        if not g:
            return
        for i, c in enumerate(v.comps):
            if c:
                X[block][i] = X[block][i] + c.place(m, block * n) * g

    A, B = r.a_terms, r.b_terms
    # Vect (x) O (x) O
    for a1i, a0i in A:
        for a1k, a0k in A:
            add(0, vf_bracket(a1i, a1k), a0i, 1, a0k, 2, 1)
            add(0, a1i, vf_apply(a1k, a0i), 1, a0k, 2, -1)
        for b0l, b1l in B:
            add(0, a1i, b0l, 1, vf_apply(b1l, a0i), 2, -1)
    # O (x) Vect (x) O
    for b0j, b1j in B:
        for a1k, a0k in A:
            add(1, b1j, vf_apply(a1k, b0j), 0, a0k, 2, -1)
            add(1, vf_bracket(b1j, a1k), b0j, 0, a0k, 2, 1)
            add(1, a1k, b0j, 0, vf_apply(b1j, a0k), 2, 1)
    # O (x) O (x) Vect
    for a1i, a0i in A:
        for b0l, b1l in B:
            add(2, b1l, vf_apply(a1i, b0l), 0, a0i, 1, 1)
    for b0j, b1j in B:
        for b0l, b1l in B:
            add(2, b1l, b0j, 0, vf_apply(b1j, b0l), 1, 1)
            add(2, vf_bracket(b1j, b1l), b0j, 0, b0l, 1, 1)
    out = []
    for block in range(3):
        comps = [MPoly.zero(m) for _ in range(m)]
        comps[block * n:(block + 1) * n] = X[block]
        out.append(VectorField(comps))
    return tuple(out)


def check_cybe_split(r: GeomRMatrix) -> list[Report]:
    """Check the three homogeneous components separately, each against its own
    literal expansion and against the matching block of the full residual."""
    if not r.is_minimal():
        raise ValueError("r is not minimal; run minimize first")
    parts = cybe_components(r)
    res = cybe_residual(r)
    n = r.n
    reports = []
    for k, part in enumerate(parts):
        rep = Report(f"cybe component {k + 1}")
        rep.add("vanishes", part.is_zero(),
                None if part.is_zero() else {"residual": _field_witness(part, n)})
        block = res.comps[k * n:(k + 1) * n]
        agrees = block == part.comps[k * n:(k + 1) * n]
        rep.add("agrees with the full residual", agrees)
        reports.append(rep)
    return reports


def check_unitarity(r: GeomRMatrix) -> bool:
    """``r^21 = -r``."""
    f = as_field_on_square(r)
    g = as_field_on_square(r.flip())
    return (f + g).is_zero()


__all__ = [
    "GeomRMatrix", "minimize", "as_field_on_square", "place_field", "cybe_residual",
    "cybe_components", "check_cybe", "check_cybe_split", "check_unitarity",
]
