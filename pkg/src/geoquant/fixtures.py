"""Built-in example data: a three-dimensional r-matrix family and its 7-tuple.

On X = C^3 with coordinates (x1, x2, x3) take the fields

    A1 = (-e*x1/2 + x2) d1 - e*x3/2 d3      B1 = (-e*x1/2 + x2) d1 + e*(x2 - x3/2) d3
    A2 = -x1 d1 + x2 d2                     B2 = -x1 d1 + x2 d2 - e*x1 d3
    A3 = x1 d1 + x3 d3                      B3 = x1 d1 + x3 d3

and ``r = sum_i A_i (x) x_i - sum_i x_i (x) B_i``.  The parameter ``e`` is
either the formal eps or a rational value; at e = 0 the r-matrix is unitary.
The matching 7-tuple has a = Heisenberg-type span{X, Y, C} with [X, Y] = e*C,
g = upper-triangular 2x2 matrices with basis (E11, E12, E22), Psi the
identity and pi(p, q, r) = q X + r Y + (p + e*q/2 + r) C.
"""

from __future__ import annotations

from .geomx import VectorField
from .polycore import EPS, MPoly, coeff, parse_poly

N_DIM = 3

A_FIELDS = [
    ["-eps/2*x1 + x2", "0", "-eps/2*x3"],
    ["-x1", "x2", "0"],
    ["x1", "0", "x3"],
]
B_FIELDS = [
    ["-eps/2*x1 + x2", "0", "eps*(x2 - x3/2)"],
    ["-x1", "x2", "-eps*x1"],
    ["x1", "0", "x3"],
]

# closed forms of the quantized R-matrix, at e = 1 and at e = 0
STAR_E1 = [
    "(1 - h*y3 + h*y1/2)/(1 - h*y2)*x1 - h*y1*x2",
    "(1 - h*y2)*x2",
    "(1 - h*y3 + h*y1/2)*x3",
]
_DEN_E1 = "((1 - h*y2)*(1 - h^2*y1*x2/2) + h*(1 - h*y3 + h*y1/2)*(-x3 + x1/2 + h*x3*y2))"
CIRC_E1 = [
    f"(y1*(1 - h*x2) + h*y2*(x1 - y1 + h*y1*x2 - h*x1*y3 + h*x1*y1/2))/{_DEN_E1}",
    "y2/(1 - h*x2 + h^2*x2*y2)",
    f"((1 - h*y2)*(y3 - h*y1*x2) + h*y2*x1*(1 - h*y3 + h*y1/2))/{_DEN_E1}",
]
STAR_E0 = [
    "(1 - h*y3)/(1 - h*y2)*x1 - h*y1*x2",
    "(1 - h*y2)*x2",
    "(1 - h*y3)*x3",
]
CIRC_E0 = [
    "y1*(1 - h*x2)/(1 - h*x3 + h^2*x3*y3)"
    " + h*y2*x1*(1 - h*y3)/((1 - h*x3 + h^2*x3*y3)*(1 - h*y2))",
    "y2/(1 - h*x2 + h^2*x2*y2)",
    "y3/(1 - h*x3 + h^2*x3*y3)",
]

# inverse group cocycle: pi~^{-1}(exp(h(x1 X + x2 Y + x3 C))) = exp(p E11 + q E12 + r E22)
PQR = [
    "ln((1 + h*x3 - h*x1/2)/(1 + h*x2))",
    "h*x1*(1 + h*x2)*ln((1 + h*x3 - h*x1/2)/(1 + h*x2)^2)/(1 + h*x3 - h*x1/2 - (1 + h*x2)^2)",
    "ln(1 + h*x2)",
]


def _specialize(p: MPoly, eps):
    return p if eps is None else p.specialize_eps(eps)


def _fields(rows, eps) -> list[VectorField]:
    return [VectorField([_specialize(parse_poly(s, N_DIM), eps) for s in row]) for row in rows]


def a_fields(eps=None) -> list[VectorField]:
    return _fields(A_FIELDS, eps)


def b_fields(eps=None) -> list[VectorField]:
    return _fields(B_FIELDS, eps)


def example_rmatrix(eps=None):
    """The r-matrix family; ``eps=None`` keeps the formal parameter."""
    from .cybe import GeomRMatrix

    xs = [MPoly.var(i, N_DIM) for i in range(N_DIM)]
    a = list(zip(a_fields(eps), xs))
    b = [(x, -v) for x, v in zip(xs, b_fields(eps))]
    return GeomRMatrix(N_DIM, a, b)


def rack_rmatrix():
    """Single function-times-field term ``x3 (x) A2``; a rack-type solution."""
    from .cybe import GeomRMatrix

    return GeomRMatrix(N_DIM, [], [(MPoly.var(2, N_DIM), a_fields(0)[1])])


def _eps(eps):
    return EPS if eps is None else coeff(eps)


def example_cbcst(eps=None):
    """The reference 7-tuple in the (X, Y, C) / (E11, E12, E22) bases."""
    from .cbcst import CBCST, equivariant_action
    from .liealg import LieAction, LieAlgebra, LieCocycle

    e = _eps(eps)
    a = LieAlgebra(3, {(0, 1): [0, 0, e]}, ["X", "Y", "C"])
    g = LieAlgebra(3, {(0, 1): [0, 1, 0], (1, 2): [0, 1, 0]}, ["E11", "E12", "E22"])
    rho = LieAction(g, [
        [[1, 0, 0], [0, 0, 0], [0, 0, 1]],
        [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
        [[0, 0, 0], [0, 1, 0], [0, 0, 1]],
    ], a, derivation=True)
    pi = LieCocycle([[0, 1, 0], [0, 0, 1], [1, e * coeff("1/2"), 1]], rho)
    psi = [MPoly.var(i, N_DIM) for i in range(N_DIM)]
    return CBCST(g=g, a=a, n=N_DIM, rho_ga=rho, rho_gax=equivariant_action(a, rho, psi),
                 pi=pi, psi=psi)
