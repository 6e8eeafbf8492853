"""Small 7-tuples for experiments and property tests.

Every generator builds a tuple on X = a with Psi the identity and then
optionally disguises it by a change of basis of a and g and by a polynomial
automorphism of X, so that Psi and the fields become genuinely nonlinear.
"""

from __future__ import annotations

import random
from typing import Callable, Sequence

from .cbcst import CBCST, equivariant_action, validate
from .geomx import VectorField, vf_apply
from .liealg import LieAction, LieAlgebra, LieCocycle
from .linalg import inverse, matmul
from .polycore import MPoly, coeff


def _lie(dim: int, br: dict, name: str) -> LieAlgebra:
    return LieAlgebra(dim, br, [f"{name}{i + 1}" for i in range(dim)])


def small_lie_algebras() -> dict[str, LieAlgebra]:
    """A few Lie algebras of dimension at most 3."""
    return {
        "ab1": _lie(1, {}, "a"),
        "ab2": _lie(2, {}, "a"),
        "ab3": _lie(3, {}, "a"),
        "aff": _lie(2, {(0, 1): [0, 1]}, "a"),
        "heis": _lie(3, {(0, 1): [0, 0, 1]}, "a"),
        "sl2": _lie(3, {(0, 1): [0, 0, 1], (2, 0): [2, 0, 0], (2, 1): [0, -2, 0]}, "a"),
        "r3": _lie(3, {(2, 0): [1, 0, 0], (2, 1): [0, 2, 0]}, "a"),
        "r3b": _lie(3, {(2, 0): [1, 0, 0], (2, 1): [1, 1, 0]}, "a"),
    }


CENTERLESS = ("aff", "sl2", "r3", "r3b")


def opposite(L: LieAlgebra) -> LieAlgebra:
    return LieAlgebra(L.dim, {(i, j): [-x for x in v] for (i, j), v in L.brackets().items()},
                      [f"g{i + 1}" for i in range(L.dim)])


def _tuple_on_a(g, a, mats, pi) -> CBCST:
    rho = LieAction(g, mats, a, derivation=True)
    pi = LieCocycle(pi, rho)
    psi = [MPoly.var(i, a.dim) for i in range(a.dim)]
    return CBCST(g, a, a.dim, rho, equivariant_action(a, rho, psi), pi, psi)


def _identity(d: int) -> list:
    return [[1 if i == j else 0 for j in range(d)] for i in range(d)]


def trivial_action_tuple(a: LieAlgebra) -> CBCST:
    """g = a, rho = 0, pi = id.  Faithful iff a has trivial center."""
    d = a.dim
    g = LieAlgebra(d, a.brackets(), [f"g{i + 1}" for i in range(d)])
    return _tuple_on_a(g, a, [[[0] * d for _ in range(d)] for _ in range(d)], _identity(d))


def adjoint_tuple(a: LieAlgebra) -> CBCST:
    """g = a^op, rho = -ad, pi = id.  Faithful iff a has trivial center."""
    d = a.dim
    mats = [[[-x for x in row] for row in a.ad(a.basis(k))] for k in range(d)]
    return _tuple_on_a(opposite(a), a, mats, _identity(d))


def diagonal_tuple(scales: Sequence, pis: Sequence) -> CBCST:
    """Abelian a = g = C^d with rho(e_k) = scales[k] E_kk and pi = diag(pis)."""
    d = len(scales)
    a = _lie(d, {}, "a")
    g = _lie(d, {}, "g")
    mats = [[[scales[k] if i == j == k else 0 for j in range(d)] for i in range(d)]
            for k in range(d)]
    pi = [[pis[i] if i == j else 0 for j in range(d)] for i in range(d)]
    return _tuple_on_a(g, a, mats, pi)


# -- disguises ---------------------------------------------------------------

def _cm(M) -> list:
    return [[coeff(x) for x in row] for row in M]


def change_basis(c: CBCST, Ta, Tg) -> CBCST:
    """Same tuple in the bases ``e'_l = sum_k Ta[k][l] e_k`` and likewise for g."""
    Ta, Tg = _cm(Ta), _cm(Tg)
    Ia = inverse(Ta)
    da, dg = c.a.dim, c.g.dim

    def col(T, l):
        return [T[k][l] for k in range(len(T))]

    def apply(T, v):
        return [sum((T[r][k] * v[k] for k in range(len(v))), coeff(0)) for r in range(len(T))]

    def rebase(L, T, Tinv, name):
        br = {}
        for i in range(L.dim):
            for j in range(i + 1, L.dim):
                v = apply(Tinv, L.bracket(col(T, i), col(T, j)))
                if any(v):
                    br[(i, j)] = v
        return LieAlgebra(L.dim, br, [f"{name}{i + 1}" for i in range(L.dim)])

    a = rebase(c.a, Ta, Ia, "e")
    g = rebase(c.g, Tg, inverse(Tg), "g")
    mats = []
    for l in range(dg):
        M = c.rho_ga.matrix(col(Tg, l))
        mats.append(matmul(matmul(Ia, M), Ta))
    rho = LieAction(g, mats, a, derivation=True)
    pi = LieCocycle(matmul(matmul(Ia, c.pi.matrix), Tg), rho)
    fields = [c.a_field(col(Ta, l)) for l in range(da)]
    fields += [c.g_field(col(Tg, l)) for l in range(dg)]
    psi = [sum((Ia[l][k] * c.psi[k] for k in range(da)), MPoly.zero(c.n)) for l in range(da)]
    return CBCST(g, a, c.n, rho, fields, pi, psi)


def change_coordinates(c: CBCST, phi: Sequence[MPoly], phi_inv: Sequence[MPoly]) -> CBCST:
    """Pull the tuple back along the automorphism ``x = phi(x')`` of X."""
    n = c.n
    for i, p in enumerate(MPoly.compose(q, list(phi)) for q in phi_inv):
        if p != MPoly.var(i, n):
            raise ValueError("phi_inv is not inverse to phi")

    def pull(v: VectorField) -> VectorField:
        return VectorField([vf_apply(v, q).compose(list(phi)) for q in phi_inv])

    return CBCST(c.g, c.a, n, c.rho_ga, [pull(v) for v in c.rho_gax], c.pi,
                 [p.compose(list(phi)) for p in c.psi])


def random_automorphism(n: int, rng: random.Random, degree: int = 2) -> tuple[list, list]:
    """``(phi, phi_inv)`` for a random linear map followed by a triangular one."""
    while True:
        L = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        try:
            Li = inverse(_cm(L))
            break
        except (ZeroDivisionError, ArithmeticError):
            continue
    xs = [MPoly.var(i, n) for i in range(n)]
    # triangular t_i = x_i + p_i(x_{i+1}, ...), inverse by back substitution
    tri = []
    for i in range(n):
        p = MPoly.zero(n)
        for j in range(i + 1, n):
            for d in range(1, degree + 1):
                c = rng.randint(-1, 1)
                if c:
                    p = p + xs[j] ** d * c
        tri.append(p)
    t = [xs[i] + tri[i] for i in range(n)]
    t_inv = [None] * n
    for i in reversed(range(n)):
        t_inv[i] = xs[i] - tri[i].compose([t_inv[j] if j > i else xs[j] for j in range(n)])
    lin = [sum((xs[k] * L[i][k] for k in range(n)), MPoly.zero(n)) for i in range(n)]
    lin_inv = [sum((xs[k] * Li[i][k] for k in range(n)), MPoly.zero(n)) for i in range(n)]
    # new = t(lin(old)), so old = lin_inv(t_inv(new))
    psi = [q.compose(lin) for q in t]
    phi = [q.compose(t_inv) for q in lin_inv]
    return phi, psi


def _random_matrix(d: int, rng: random.Random) -> list:
    while True:
        M = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)]
        try:
            inverse(_cm(M))
            return M
        except (ZeroDivisionError, ArithmeticError):
            continue


def _nonzero(rng: random.Random) -> object:
    while True:
        x = rng.choice([-3, -2, -1, 1, 2, 3, "1/2", "-1/3", "3/2"])
        return coeff(x)


FAMILIES: dict[str, Callable[[random.Random], CBCST]] = {}


def _family(name):
    def deco(fn):
        FAMILIES[name] = fn
        return fn
    return deco


@_family("example")
def _fam_example(rng):
    from .fixtures import example_cbcst
    return example_cbcst(rng.choice([0, 1, -1, 2, "1/2", "-3/2"]))


@_family("trivial_action")
def _fam_trivial(rng):
    return trivial_action_tuple(small_lie_algebras()[rng.choice(CENTERLESS)])


@_family("adjoint")
def _fam_adjoint(rng):
    return adjoint_tuple(small_lie_algebras()[rng.choice(CENTERLESS)])


@_family("diagonal")
def _fam_diagonal(rng):
    d = rng.randint(1, 3)
    return diagonal_tuple([_nonzero(rng) for _ in range(d)], [_nonzero(rng) for _ in range(d)])


def random_cbcst(rng: random.Random, family: str | None = None, disguise: bool = True) -> CBCST:
    """A validated 7-tuple with dim a, dim g <= 3 and n <= 3."""
    name = family or rng.choice(sorted(FAMILIES))
    c = FAMILIES[name](rng)
    if disguise:
        c = change_basis(c, _random_matrix(c.a.dim, rng), _random_matrix(c.g.dim, rng))
        phi, phi_inv = random_automorphism(c.n, rng)
        c = change_coordinates(c, phi, phi_inv)
    rep = validate(c)
    if not rep.passed:
        raise AssertionError(f"generator {name} produced an invalid tuple:\n{rep.format()}")
    return c


__all__ = [
    "FAMILIES", "adjoint_tuple", "change_basis", "change_coordinates", "diagonal_tuple",
    "random_automorphism", "random_cbcst", "small_lie_algebras", "trivial_action_tuple",
]
