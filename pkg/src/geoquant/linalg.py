"""Exact linear algebra over Q[eps] with unit pivots.

Vectors are sparse dicts ``{column: Coeff}``.  Elimination only divides by
units (nonzero rationals), so ranks computed here stay valid under every
specialization of eps.  Running into a nonzero vector without a unit entry
raises :class:`NonUnitPivot`.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Sequence

from .polycore.mpoly import MPoly, SLOT_BITS, SLOT_MASK, coeff, coeff_inverse

Vector = dict


class NonUnitPivot(ArithmeticError):
    """Elimination needs to divide by a non-unit element of Q[eps]."""


class NotInSpan(ValueError):
    def __init__(self, residual: Vector):
        super().__init__("vector is not in the span")
        self.residual = residual


def _axpy(target: Vector, scale: MPoly, source: Vector) -> None:
    """target += scale * source, in place, dropping zeros."""
    for col, c in source.items():
        v = target.get(col)
        nv = scale * c if v is None else v + scale * c
        if nv:
            target[col] = nv
        elif v is not None:
            del target[col]


def scale_vector(v: Vector, s) -> Vector:
    s = coeff(s)
    out = {}
    for k, c in v.items():
        x = c * s
        if x:
            out[k] = x
    return out


def add_vectors(a: Vector, b: Vector, s=1) -> Vector:
    out = dict(a)
    _axpy(out, coeff(s), b)
    return out


def mono_order_key(nvars: int) -> Callable:
    """Graded-lex (leading first) sort key for packed monomials without the eps slot."""

    def key(mono: int):
        exps = tuple((mono >> (SLOT_BITS * i)) & SLOT_MASK for i in range(nvars))
        return (-sum(exps), tuple(-e for e in exps))

    return key


def poly_vector(p: MPoly) -> Vector:
    return p.split_eps()


def vector_poly(v: Vector, nvars: int) -> MPoly:
    return MPoly.join_eps(nvars, v)


def field_vector(components: Sequence[MPoly]) -> Vector:
    out = {}
    for i, p in enumerate(components):
        for mono, c in p.split_eps().items():
            out[(mono, i)] = c
    return out


def field_order_key(nvars: int) -> Callable:
    mk = mono_order_key(nvars)
    return lambda col: (mk(col[0]), col[1])


class Span:
    """Incremental reduced echelon form of a list of vectors.

    Each stored row carries the combination of input vectors it came from, so
    membership queries return coefficients in terms of the original inputs.
    """

    def __init__(self, vectors: Iterable[Vector] = (), order_key: Callable = lambda c: c):
        self.order_key = order_key
        self.rows: list[tuple[Hashable, Vector, Vector]] = []  # (pivot col, row, combo)
        self.kernel: list[Vector] = []
        self.count = 0
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: Vector, combo: Vector) -> None:
        for col, row, rcombo in self.rows:
            c = vec.get(col)
            if c:
                _axpy(vec, -c, row)
                _axpy(combo, -c, rcombo)

    def add(self, v: Vector) -> bool:
        """Insert a vector; return True when it enlarged the span."""
        idx = self.count
        self.count += 1
        vec = dict(v)
        combo = {idx: coeff(1)}
        self._reduce(vec, combo)
        if not vec:
            self.kernel.append(combo)
            return False
        units = [col for col, c in vec.items() if c.is_unit()]
        if not units:
            raise NonUnitPivot(f"no unit pivot among {len(vec)} nonzero entries")
        col = min(units, key=self.order_key)
        inv = coeff_inverse(vec[col])
        vec = scale_vector(vec, inv)
        combo = scale_vector(combo, inv)
        new_rows = []
        for pcol, row, rcombo in self.rows:
            c = row.get(col)
            if c:
                row = dict(row)
                rcombo = dict(rcombo)
                _axpy(row, -c, vec)
                _axpy(rcombo, -c, combo)
            new_rows.append((pcol, row, rcombo))
        new_rows.append((col, vec, combo))
        new_rows.sort(key=lambda t: self.order_key(t[0]))
        self.rows = new_rows
        return True

    def residual(self, v: Vector) -> Vector:
        vec = dict(v)
        self._reduce(vec, {})
        return vec

    def contains(self, v: Vector) -> bool:
        return not self.residual(v)

    def express(self, v: Vector) -> Vector:
        """Coefficients ``{input index: Coeff}`` with ``v = sum c_i * input_i``."""
        vec = dict(v)
        combo: Vector = {}
        for col, row, rcombo in self.rows:
            c = vec.get(col)
            if c:
                _axpy(vec, -c, row)
                _axpy(combo, c, rcombo)
        if vec:
            raise NotInSpan(vec)
        return combo

    def pivots(self) -> list:
        return [col for col, _, _ in self.rows]

    def coordinates(self, v: Vector) -> list:
        """Coordinates of ``v`` in the reduced basis (rows are normalized at their pivots)."""
        res = self.residual(v)
        if res:
            raise NotInSpan(res)
        return [v.get(col, coeff(0)) for col, _, _ in self.rows]

    def basis(self) -> list[Vector]:
        """Reduced rows, sorted by pivot position."""
        return [row for _, row, _ in self.rows]


def rank(vectors: Iterable[Vector], order_key: Callable = lambda c: c) -> int:
    return Span(vectors, order_key).rank


# -- dense matrices -------------------------------------------------------

Matrix = list  # list of rows of Coeff


def identity(n: int) -> Matrix:
    return [[coeff(1 if i == j else 0) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[coeff(0) for _ in range(c)] for _ in range(r)]


def as_matrix(rows) -> Matrix:
    return [[coeff(x) for x in row] for row in rows]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = zeros(n, p)
    for i in range(n):
        for k in range(m):
            aik = a[i][k]
            if aik:
                for j in range(p):
                    if b[k][j]:
                        out[i][j] = out[i][j] + aik * b[k][j]
    return out


def matvec(a: Matrix, v: Sequence[MPoly]) -> list:
    out = []
    for row in a:
        acc = None
        for x, y in zip(row, v):
            if x and y:
                acc = x * y if acc is None else acc + x * y
        out.append(acc if acc is not None else coeff(0) * (v[0] if v else coeff(0)))
    return out


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def mat_equal(a: Matrix, b: Matrix) -> bool:
    return len(a) == len(b) and all(
        len(r1) == len(r2) and all(x == y for x, y in zip(r1, r2)) for r1, r2 in zip(a, b)
    )


def inverse(a: Matrix) -> Matrix:
    """Inverse over Q[eps]; requires a unit pivot at every step (determinant a unit)."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    rows = [[coeff(x) for x in r] + [coeff(1 if i == j else 0) for j in range(n)]
            for i, r in enumerate(a)]
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col].is_unit()), None)
        if piv is None:
            if all(not rows[i][col] for i in range(col, n)):
                raise ZeroDivisionError("matrix is singular")
            raise NonUnitPivot("determinant is not a unit of Q[eps]")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = coeff_inverse(rows[col][col])
        rows[col] = [x * inv for x in rows[col]]
        for i in range(n):
            if i != col and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return [r[n:] for r in rows]


def specialize_matrix(a: Matrix, value) -> Matrix:
    return [[x.specialize_eps(value) for x in r] for r in a]
