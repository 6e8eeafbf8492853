"""Finite-dimensional Lie algebras over Q[eps] and formal groups as hbar-graded logs.

Elements of an algebra are plain sequences of coordinates.  Coordinates may
be Coeff, MPoly or HSeries; brackets only use ``+``, ``-`` and ``*`` so any
of these rings works as long as the entries of one vector agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from gmpy2 import mpq

from .linalg import Matrix, NonUnitPivot, identity, inverse, matmul, zeros
from .polycore import HSeries, MPoly, coeff
from .report import Report


def _zero_like(x):
    return x - x


def _lin(scalars: Sequence, vectors: Sequence[Sequence], zero):
    """sum_i scalars[i] * vectors[i] (scalars are Coeff)."""
    out = None
    for s, v in zip(scalars, vectors):
        if not s:
            continue
        t = [s * x for x in v]
        out = t if out is None else [a + b for a, b in zip(out, t)]
    return out


def strip_eps_power(vec: dict) -> dict:
    """Divide a vector by the largest power of eps dividing all its entries."""
    from .polycore.mpoly import SLOT_MASK
    low = min((min(k & SLOT_MASK for k in x.terms) for x in vec.values()), default=0)
    if not low:
        return vec
    e = MPoly.eps() ** low
    return {k: x.exact_div(e) for k, x in vec.items()}


class LieAlgebra:
    """Structure constants ``[e_i, e_j] = sum_k c[i][j][k] e_k``."""

    def __init__(self, dim: int, brackets: dict | None = None, labels: Sequence[str] | None = None):
        self.dim = dim
        self.labels = list(labels) if labels else [f"e{i + 1}" for i in range(dim)]
        if len(self.labels) != dim:
            raise ValueError("one label per basis element")
        c = [[[coeff(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), vec in (brackets or {}).items():
            if i == j:
                if any(coeff(x) for x in vec):
                    raise ValueError(f"[e{i + 1}, e{i + 1}] must vanish")
                continue
            vec = [coeff(x) for x in vec]
            if len(vec) != dim:
                raise ValueError("bracket vector has the wrong length")
            c[i][j] = vec
            c[j][i] = [-x for x in vec]
        self.c = c
        # (i, j, [c_ij^k]) for i < j with a nonzero bracket
        self._pairs = [(i, j, c[i][j]) for i in range(dim) for j in range(i + 1, dim)
                       if any(c[i][j])]

    @classmethod
    def abelian(cls, dim: int, labels=None) -> "LieAlgebra":
        return cls(dim, {}, labels)

    @classmethod
    def from_constants(cls, c, labels=None) -> "LieAlgebra":
        d = len(c)
        br = {(i, j): c[i][j] for i in range(d) for j in range(i + 1, d)}
        alg = cls(d, br, labels)
        for i in range(d):
            for j in range(d):
                if [coeff(x) for x in c[i][j]] != alg.c[i][j]:
                    raise ValueError("structure constants are not antisymmetric")
        return alg

    def brackets(self) -> dict:
        return {(i, j): list(vec) for i, j, vec in self._pairs}

    def is_abelian(self) -> bool:
        return not self._pairs

    def basis(self, i: int) -> list:
        return [coeff(1 if k == i else 0) for k in range(self.dim)]

    def zero(self) -> list:
        return [coeff(0)] * self.dim

    def bracket(self, u: Sequence, v: Sequence) -> list:
        zero = _zero_like(u[0]) if self.dim else None
        out = [zero] * self.dim
        for i, j, vec in self._pairs:
            t = u[i] * v[j] - u[j] * v[i]
            if not t:
                continue
            for k, ck in enumerate(vec):
                if ck:
                    out[k] = out[k] + t * ck
        return out

    def ad(self, u: Sequence) -> Matrix:
        """Matrix of ad_u: column j is [u, e_j]."""
        d = self.dim
        m = zeros(d, d)
        for j in range(d):
            col = self.bracket(u, self.basis(j))
            for k in range(d):
                m[k][j] = col[k]
        return m

    def specialize_eps(self, value) -> "LieAlgebra":
        br = {(i, j): [x.specialize_eps(value) for x in vec] for i, j, vec in self._pairs}
        return LieAlgebra(self.dim, br, self.labels)

    def derived_span_rank(self) -> int:
        from .linalg import Span
        sp = Span()
        for _, _, vec in self._pairs:
            sp.add(strip_eps_power({k: x for k, x in enumerate(vec) if x}))
        return sp.rank

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.dim == other.dim and self.c == other.c

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, nonzero_brackets={len(self._pairs)})"

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "labels": list(self.labels),
            "brackets": [{"i": i, "j": j, "coeffs": [str(x) for x in vec]}
                         for i, j, vec in self._pairs],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LieAlgebra":
        from .polycore import parse_poly
        br = {}
        for item in data.get("brackets", []):
            br[(int(item["i"]), int(item["j"]))] = [parse_poly(str(s), 0) for s in item["coeffs"]]
        return cls(int(data["dim"]), br, data.get("labels"))


def check_jacobi(L: LieAlgebra) -> Report:
    """Check antisymmetry and the Jacobi identity on every basis triple."""
    rep = Report("jacobi")
    d = L.dim
    bad_anti = [(i + 1, j + 1) for i in range(d) for j in range(d)
                if any(a != -b for a, b in zip(L.c[i][j], L.c[j][i]))]
    rep.add("antisymmetry", not bad_anti, bad_anti or None)
    E = [L.basis(i) for i in range(d)]
    bad = []
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(j + 1, d):
                s = [a + b + c for a, b, c in zip(
                    L.bracket(E[i], L.bracket(E[j], E[k])),
                    L.bracket(E[j], L.bracket(E[k], E[i])),
                    L.bracket(E[k], L.bracket(E[i], E[j])))]
                if any(s):
                    bad.append({"triple": [i + 1, j + 1, k + 1], "residual": [str(x) for x in s]})
    rep.add("jacobi", not bad, bad or None)
    return rep


class LieAction:
    """A linear action of ``source`` given by one matrix per basis element.

    ``target_dim`` is the dimension of the module.  When ``target`` is a
    LieAlgebra and ``derivation`` is set, the matrices are also required to
    act by derivations.
    """

    def __init__(self, source: LieAlgebra, matrices: Sequence[Matrix], target: LieAlgebra | int,
                 derivation: bool = False):
        self.source = source
        self.target = target if isinstance(target, LieAlgebra) else None
        self.target_dim = target.dim if isinstance(target, LieAlgebra) else int(target)
        if len(matrices) != source.dim:
            raise ValueError("one matrix per source basis element")
        self.matrices = [[[coeff(x) for x in row] for row in m] for m in matrices]
        for m in self.matrices:
            if len(m) != self.target_dim or any(len(r) != self.target_dim for r in m):
                raise ValueError("action matrices must be square of the target dimension")
        self.derivation = derivation

    @classmethod
    def trivial(cls, source: LieAlgebra, target: LieAlgebra | int, derivation: bool = True):
        n = target.dim if isinstance(target, LieAlgebra) else int(target)
        return cls(source, [zeros(n, n) for _ in range(source.dim)], target, derivation)

    def matrix(self, x: Sequence) -> Matrix:
        n = self.target_dim
        out = [[None] * n for _ in range(n)]
        zero = _zero_like(x[0]) if len(x) else coeff(0)
        for r in range(n):
            for c in range(n):
                acc = zero
                for xi, m in zip(x, self.matrices):
                    if m[r][c]:
                        acc = acc + xi * m[r][c]
                out[r][c] = acc
        return out

    def act(self, x: Sequence, v: Sequence) -> list:
        """``x . v`` for a source element x and a module element v."""
        zero = _zero_like(v[0]) if len(v) else coeff(0)
        out = [zero] * self.target_dim
        for xi, m in zip(x, self.matrices):
            if not xi:
                continue
            for r in range(self.target_dim):
                row = m[r]
                acc = None
                for c, mc in enumerate(row):
                    if mc and v[c]:
                        t = v[c] * mc
                        acc = t if acc is None else acc + t
                if acc is not None:
                    out[r] = out[r] + xi * acc
        return out

    def act_basis(self, i: int, v: Sequence) -> list:
        return self.act(self.source.basis(i), v)

    def specialize_eps(self, value) -> "LieAction":
        tgt = self.target.specialize_eps(value) if self.target else self.target_dim
        return LieAction(self.source.specialize_eps(value),
                         [[[x.specialize_eps(value) for x in r] for r in m] for m in self.matrices],
                         tgt, self.derivation)

    def check(self) -> Report:
        """Homomorphism property, plus Leibniz rule when flagged as a derivation action."""
        rep = Report("action")
        S = self.source
        d, n = S.dim, self.target_dim
        bad = []
        for i in range(d):
            for j in range(i + 1, d):
                lhs = self.matrix(S.c[i][j])
                ab = matmul(self.matrices[i], self.matrices[j])
                ba = matmul(self.matrices[j], self.matrices[i])
                diff = [[lhs[r][c] - ab[r][c] + ba[r][c] for c in range(n)] for r in range(n)]
                if any(x for row in diff for x in row):
                    bad.append({"pair": [i + 1, j + 1],
                                "residual": [[str(x) for x in row] for row in diff]})
        rep.add("homomorphism", not bad, bad or None)
        if self.derivation:
            if self.target is None:
                rep.add("derivation", False, detail="target is not a Lie algebra")
                return rep
            A = self.target
            E = [A.basis(k) for k in range(n)]
            bad = []
            for i in range(d):
                for k in range(n):
                    for l in range(k + 1, n):
                        lhs = self.act_basis(i, A.bracket(E[k], E[l]))
                        rhs1 = A.bracket(self.act_basis(i, E[k]), E[l])
                        rhs2 = A.bracket(E[k], self.act_basis(i, E[l]))
                        res = [a - b - c for a, b, c in zip(lhs, rhs1, rhs2)]
                        if any(res):
                            bad.append({"element": i + 1, "pair": [k + 1, l + 1],
                                        "residual": [str(x) for x in res]})
            rep.add("derivation", not bad, bad or None)
        return rep


class NotADerivation(ValueError):
    pass


def semidirect(a: LieAlgebra, g: LieAlgebra, rho: LieAction) -> LieAlgebra:
    """``a x| g`` with basis (a_1..a_m, g_1..g_k) and
    ``[(a,g),(b,h)] = (g.b - h.a + [a,b], [g,h])``."""
    rep = LieAction(rho.source, rho.matrices, a, derivation=True).check()
    if not rep.passed:
        raise NotADerivation(rep.format())
    m, k = a.dim, g.dim
    d = m + k
    br = {}
    for i in range(m):
        for j in range(i + 1, m):
            if any(a.c[i][j]):
                br[(i, j)] = list(a.c[i][j]) + [coeff(0)] * k
    for i in range(k):
        for j in range(m):
            col = [rho.matrices[i][r][j] for r in range(m)]
            if any(col):
                br[(m + i, j)] = col + [coeff(0)] * k
        for j in range(i + 1, k):
            if any(g.c[i][j]):
                br[(m + i, m + j)] = [coeff(0)] * m + list(g.c[i][j])
    # keys with first index > second are stored via antisymmetry
    fixed = {}
    for (i, j), vec in br.items():
        if i < j:
            fixed[(i, j)] = vec
        else:
            fixed[(j, i)] = [-x for x in vec]
    return LieAlgebra(d, fixed, list(a.labels) + list(g.labels))


@dataclass
class LieCocycle:
    """Linear map ``pi: g -> a`` (columns are images of the g basis) twisted by ``rho``."""

    matrix: Matrix
    rho: LieAction
    _inv: Matrix | None = field(default=None, repr=False)

    def __post_init__(self):
        self.matrix = [[coeff(x) for x in row] for row in self.matrix]

    @property
    def g(self) -> LieAlgebra:
        return self.rho.source

    @property
    def a(self) -> LieAlgebra:
        return self.rho.target

    def __call__(self, x: Sequence) -> list:
        zero = _zero_like(x[0]) if len(x) else coeff(0)
        out = []
        for row in self.matrix:
            acc = zero
            for m, xi in zip(row, x):
                if m and xi:
                    acc = acc + xi * m
            out.append(acc)
        return out

    def inverse_matrix(self) -> Matrix:
        if self._inv is None:
            if len(self.matrix) != len(self.matrix[0]):
                raise ValueError("cocycle is not square")
            self._inv = inverse(self.matrix)
        return self._inv

    def inv(self, a: Sequence) -> list:
        inv = self.inverse_matrix()
        zero = _zero_like(a[0]) if len(a) else coeff(0)
        out = []
        for row in inv:
            acc = zero
            for m, ai in zip(row, a):
                if m and ai:
                    acc = acc + ai * m
            out.append(acc)
        return out

    def specialize_eps(self, value) -> "LieCocycle":
        return LieCocycle([[x.specialize_eps(value) for x in r] for r in self.matrix],
                          self.rho.specialize_eps(value))


def check_cocycle(pi: LieCocycle) -> Report:
    """``pi[g,h] = [pi g, pi h] + g.pi(h) - h.pi(g)`` on basis pairs, plus bijectivity."""
    rep = Report("cocycle")
    G, A = pi.g, pi.a
    if A is None or len(pi.matrix) != A.dim or any(len(r) != G.dim for r in pi.matrix):
        raise ValueError("cocycle matrix does not match the algebras")
    if A.dim != G.dim:
        raise ValueError("cocycle is not square")
    try:
        pi.inverse_matrix()
        rep.add("bijective", True)
    except (NonUnitPivot, ZeroDivisionError) as exc:
        rep.add("bijective", False, detail=str(exc))
    P = [pi(G.basis(i)) for i in range(G.dim)]
    bad = []
    for i in range(G.dim):
        for j in range(i + 1, G.dim):
            lhs = pi(G.c[i][j])
            rhs = [x + y - z for x, y, z in zip(A.bracket(P[i], P[j]), pi.rho.act_basis(i, P[j]),
                                                pi.rho.act_basis(j, P[i]))]
            res = [x - y for x, y in zip(lhs, rhs)]
            if any(res):
                bad.append({"pair": [i + 1, j + 1], "residual": [str(x) for x in res]})
    rep.add("cocycle identity", not bad, bad or None)
    return rep


# -- formal groups --------------------------------------------------------

@lru_cache(maxsize=None)
def bch_words(order: int) -> tuple:
    """Dynkin form of ``log(e^X e^Y)`` through total degree ``order``.

    Returns ``(word, coefficient)`` pairs where ``word`` is a tuple over
    {0: X, 1: Y} standing for the right-nested bracket
    ``[w1, [w2, ... [w_{m-1}, w_m]]]``.  Computed in the free associative
    algebra and projected with the Dynkin-Specht-Wever map.
    """
    def mul(p, q):
        out = {}
        for w1, c1 in p.items():
            for w2, c2 in q.items():
                if len(w1) + len(w2) <= order:
                    w = w1 + w2
                    out[w] = out.get(w, 0) + c1 * c2
        return {w: c for w, c in out.items() if c}

    fact = [1]
    for i in range(1, order + 1):
        fact.append(fact[-1] * i)
    # T = e^X e^Y - 1
    T = {}
    for a in range(order + 1):
        for b in range(order + 1 - a):
            if a + b:
                T[(0,) * a + (1,) * b] = Fraction(1, fact[a] * fact[b])
    Z: dict = {}
    power = dict(T)
    for k in range(1, order + 1):
        sign = Fraction((-1) ** (k + 1), k)
        for w, c in power.items():
            Z[w] = Z.get(w, 0) + sign * c
        power = mul(power, T)
    out = []
    for w, c in sorted(Z.items(), key=lambda t: (len(t[0]), t[0])):
        if not c:
            continue
        if len(w) >= 2 and w[-1] == w[-2]:
            continue
        out.append((w, mpq(c.numerator, c.denominator * len(w))))
    return tuple(out)


class GroupLog:
    """Element ``exp(sum_i comps[i] e_i)`` of the formal group of ``algebra``.

    ``comps`` are HSeries of valuation >= 1 sharing order and arity; their
    MPoly coefficients may depend on points of an ambient space.
    """

    __slots__ = ("algebra", "comps")

    def __init__(self, algebra: LieAlgebra, comps: Sequence[HSeries]):
        if len(comps) != algebra.dim:
            raise ValueError("one component per basis element")
        if comps:
            o, n = comps[0].order, comps[0].nvars
            for c in comps:
                if c.order != o or c.nvars != n:
                    raise ValueError("components must share order and arity")
                if c[0]:
                    raise ValueError("group logs need hbar-valuation >= 1")
        self.algebra = algebra
        self.comps = list(comps)

    @classmethod
    def zero(cls, algebra: LieAlgebra, order: int, nvars: int = 0) -> "GroupLog":
        return cls(algebra, [HSeries.zero(order, nvars) for _ in range(algebra.dim)])

    @classmethod
    def hbar_times(cls, algebra: LieAlgebra, vec: Sequence, order: int, nvars: int) -> "GroupLog":
        """``hbar * vec`` for a vector of MPoly/Coeff."""
        return cls(algebra, [HSeries.monomial(MPoly.const(v, nvars) if v.nvars == 0 else v, 1, order)
                             for v in vec])

    @property
    def order(self) -> int:
        return self.comps[0].order

    @property
    def nvars(self) -> int:
        return self.comps[0].nvars

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __neg__(self) -> "GroupLog":
        return GroupLog(self.algebra, [-c for c in self.comps])

    def __add__(self, other: "GroupLog") -> "GroupLog":
        return GroupLog(self.algebra, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: "GroupLog") -> "GroupLog":
        return GroupLog(self.algebra, [a - b for a, b in zip(self.comps, other.comps)])

    def __eq__(self, other):
        return isinstance(other, GroupLog) and self.comps == other.comps

    def __repr__(self):
        return f"GroupLog(dim={self.algebra.dim}, order={self.order})"

    def inverse(self) -> "GroupLog":
        return -self

    def __mul__(self, other: "GroupLog") -> "GroupLog":
        return bch(self, other)


def bch(u: GroupLog, v: GroupLog) -> GroupLog:
    """``log(e^u e^v)`` truncated at the common order, via the Dynkin series."""
    if u.algebra is not v.algebra and u.algebra != v.algebra:
        raise ValueError("group elements live in different algebras")
    if u.order != v.order or u.nvars != v.nvars:
        raise ValueError("group elements have different truncation order or arity")
    L = u.algebra
    if u.is_zero():
        return v
    if v.is_zero():
        return u
    letters = (u.comps, v.comps)
    cache: dict[tuple, list] = {}

    def nested(w: tuple) -> list:
        hit = cache.get(w)
        if hit is not None:
            return hit
        if len(w) == 1:
            out = letters[w[0]]
        else:
            out = L.bracket(letters[w[0]], nested(w[1:]))
        cache[w] = out
        return out

    total = [a + b for a, b in zip(u.comps, v.comps)]
    if not L.is_abelian():
        for w, c in bch_words(u.order):
            if len(w) == 1:
                continue
            t = nested(w)
            for k in range(L.dim):
                if t[k]:
                    total[k] = total[k] + t[k] * coeff(c)
    return GroupLog(L, total)


def group_act(rho: LieAction, g: GroupLog, a: GroupLog) -> GroupLog:
    """``g . a`` for the exponentiated derivation action: ``e^{rho(g)} a``."""
    comps = list(a.comps)
    term = list(a.comps)
    for k in range(1, a.order + 1):
        term = rho.act(g.comps, term)
        if all(t.is_zero() for t in term):
            break
        inv = coeff(mpq(1, _factorial(k)))
        comps = [c + t * inv for c, t in zip(comps, term)]
    return GroupLog(a.algebra, comps)


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


class _CocycleGroup:
    """Cached semidirect algebra used to exponentiate a cocycle."""

    def __init__(self, pi: LieCocycle):
        self.pi = pi
        self.s = semidirect(pi.a, pi.g, pi.rho)
        self.m = pi.a.dim


_GROUPS: dict[int, _CocycleGroup] = {}


def _group_for(pi: LieCocycle) -> _CocycleGroup:
    key = id(pi)
    hit = _GROUPS.get(key)
    if hit is None or hit.pi is not pi:
        hit = _CocycleGroup(pi)
        _GROUPS[key] = hit
    return hit


def cocycle_exponentiate(pi: LieCocycle, g_log: GroupLog) -> GroupLog:
    """Group cocycle: the a-part of ``e^{(pi g, g)} e^{-g}`` in ``e^a x| e^g``."""
    if g_log.algebra != pi.g:
        raise ValueError("log does not live in the cocycle's source algebra")
    cg = _group_for(pi)
    zero = [HSeries.zero(g_log.order, g_log.nvars) for _ in range(cg.m)]
    lifted = GroupLog(cg.s, pi(g_log.comps) + list(g_log.comps))
    back = GroupLog(cg.s, zero + [-c for c in g_log.comps])
    prod = bch(lifted, back)
    if any(not c.is_zero() for c in prod.comps[cg.m:]):
        raise ArithmeticError("group factorization left a nonzero g-part")
    return GroupLog(pi.a, prod.comps[: cg.m])


def cocycle_invert(pi: LieCocycle, a_log: GroupLog, max_iter: int | None = None) -> GroupLog:
    """Solve ``cocycle_exponentiate(pi, g) = a_log`` by hbar-graded fixed-point iteration.

    Each step fixes at least one more order, so ``order`` iterations suffice.
    """
    if a_log.algebra != pi.a:
        raise ValueError("log does not live in the cocycle's target algebra")
    g = GroupLog(pi.g, pi.inv(a_log.comps))
    steps = max_iter if max_iter is not None else a_log.order
    for _ in range(steps):
        diff = a_log - cocycle_exponentiate(pi, g)
        if diff.is_zero():
            break
        g = g + GroupLog(pi.g, pi.inv(diff.comps))
    return g


def adjoint_matrices(L: LieAlgebra) -> list[Matrix]:
    return [L.ad(L.basis(i)) for i in range(L.dim)]


__all__ = [
    "LieAlgebra", "LieAction", "LieCocycle", "GroupLog", "NotADerivation",
    "check_jacobi", "check_cocycle", "semidirect", "bch", "bch_words", "group_act",
    "cocycle_exponentiate", "cocycle_invert", "adjoint_matrices", "identity",
]
