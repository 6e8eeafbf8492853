"""Independent oracles shared by the test modules."""

import sympy

from geoquant.liealg import GroupLog, bch
from geoquant.polycore import HSeries, MPoly


def log_of(L, vecs, order, nvars=0):
    """``sum_k hbar^k vecs[k-1]`` as a group log."""
    comps = [HSeries.zero(order, nvars) for _ in range(L.dim)]
    for k, v in enumerate(vecs, start=1):
        comps = [c + HSeries.monomial(MPoly.const(x, nvars), k, order) for c, x in zip(comps, v)]
    return GroupLog(L, comps)

# truncated power series of rational 6x6 matrices, as lists indexed by the hbar power

def _mul(A, B, N):
    out = [sympy.zeros(6, 6) for _ in range(N + 1)]
    for i in range(N + 1):
        for j in range(N + 1 - i):
            out[i + j] += A[i] * B[j]
    return out


def _exp(X, N):
    out = [sympy.zeros(6, 6) for _ in range(N + 1)]
    out[0] = sympy.eye(6)
    term = list(out)
    for k in range(1, N + 1):
        term = [m / k for m in _mul(term, X, N)]
        out = [a + b for a, b in zip(out, term)]
    return out


def _log(P, N):
    Y = list(P)
    Y[0] = Y[0] - sympy.eye(6)
    out = [sympy.zeros(6, 6) for _ in range(N + 1)]
    term = [sympy.eye(6)] + [sympy.zeros(6, 6)] * N
    for k in range(1, N + 1):
        term = _mul(term, Y, N)
        out = [a + sympy.Rational((-1) ** (k + 1), k) * b for a, b in zip(out, term)]
    return out


def ad_series(S, g: GroupLog, N):
    ad = [sympy.Matrix([[sympy.Rational(str(x.rational_value())) for x in row]
                        for row in S.ad(S.basis(i))]) for i in range(S.dim)]
    out = [sympy.zeros(6, 6) for _ in range(N + 1)]
    for i, c in enumerate(g.comps):
        for k in range(N + 1):
            if not c[k].is_zero():
                out[k] += sympy.Rational(str(c[k].rational_value())) * ad[i]
    return out


def bch_matrix_oracle(S, u: GroupLog, v: GroupLog, N: int, use: GroupLog | None = None) -> bool:
    """``ad(bch(u, v)) = log(exp(ad u) exp(ad v))`` mod hbar^(N+1) in the adjoint representation."""
    got = ad_series(S, bch(u, v) if use is None else use, N)
    want = _log(_mul(_exp(ad_series(S, u, N), N), _exp(ad_series(S, v, N), N), N), N)
    return all((a - b).is_zero_matrix for a, b in zip(got, want))
