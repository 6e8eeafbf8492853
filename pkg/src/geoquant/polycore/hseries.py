"""Power series in hbar truncated at a fixed order, with MPoly coefficients."""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import factorial
from typing import Sequence

from gmpy2 import mpq

from .mpoly import ArityError, MPoly


class OrderMismatch(ValueError):
    """Two series truncated at different orders were combined."""


class HSeries:
    """``sum_m coeffs[m] * hbar**m  mod hbar**(order+1)``.

    Immutable.  ``coeffs`` always has length ``order + 1`` and every entry has
    the same arity ``nvars``.
    """

    __slots__ = ("order", "nvars", "coeffs")

    def __init__(self, order: int, nvars: int, coeffs: Sequence[MPoly] | None = None):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        self.order = order
        self.nvars = nvars
        cs = list(coeffs or [])[: order + 1]
        for c in cs:
            if c.nvars != nvars and c.nvars != 0:
                raise ArityError(f"coefficient arity {c.nvars} != {nvars}")
        cs = [c if c.nvars == nvars else MPoly.const(c, nvars) for c in cs]
        cs += [MPoly.zero(nvars)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, order: int, nvars: int) -> "HSeries":
        return cls(order, nvars)

    @classmethod
    def one(cls, order: int, nvars: int) -> "HSeries":
        return cls(order, nvars, [MPoly.const(1, nvars)])

    @classmethod
    def embed(cls, p: MPoly, order: int) -> "HSeries":
        return cls(order, p.nvars, [p])

    @classmethod
    def hbar(cls, order: int, nvars: int) -> "HSeries":
        return cls(order, nvars, [MPoly.zero(nvars), MPoly.const(1, nvars)])

    @classmethod
    def monomial(cls, p: MPoly, power: int, order: int) -> "HSeries":
        cs = [MPoly.zero(p.nvars)] * (order + 1)
        if power <= order:
            cs[power] = p
        return cls(order, p.nvars, cs)

    # -- inspection -------------------------------------------------------
    def __getitem__(self, m: int) -> MPoly:
        return self.coeffs[m]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def valuation(self) -> int:
        """Lowest hbar power with a nonzero coefficient (``order + 1`` for zero)."""
        for m, c in enumerate(self.coeffs):
            if c:
                return m
        return self.order + 1

    def __eq__(self, other):
        if not isinstance(other, HSeries):
            return NotImplemented
        return self.order == other.order and self.nvars == other.nvars and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.nvars, self.coeffs))

    def first_difference(self, other: "HSeries") -> int | None:
        """Lowest order at which the two series differ, or None."""
        self._check(other)
        for m in range(self.order + 1):
            if self.coeffs[m] != other.coeffs[m]:
                return m
        return None

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "HSeries"):
        if self.order != other.order:
            raise OrderMismatch(f"truncation orders differ: {self.order} vs {other.order}")
        if self.nvars != other.nvars:
            raise ArityError(f"arity mismatch: {self.nvars} vs {other.nvars}")

    def _wrap(self, other):
        if isinstance(other, HSeries):
            self._check(other)
            return other
        if isinstance(other, MPoly):
            if other.nvars not in (0, self.nvars):
                raise ArityError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return HSeries(self.order, self.nvars, [other])
        return HSeries(self.order, self.nvars, [MPoly.const(other, self.nvars)])

    def __add__(self, other):
        other = self._wrap(other)
        return HSeries(self.order, self.nvars, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return HSeries(self.order, self.nvars, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._wrap(other)
        return HSeries(self.order, self.nvars, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, HSeries):
            self._check(other)
            return self._cauchy(other)
        if isinstance(other, MPoly):
            return HSeries(self.order, self.nvars, [a * other for a in self.coeffs])
        return HSeries(self.order, self.nvars, [a * other for a in self.coeffs])

    __rmul__ = __mul__

    def _cauchy(self, other: "HSeries") -> "HSeries":
        n = self.order
        a, b = self.coeffs, other.coeffs
        va, vb = self.valuation(), other.valuation()
        out = [MPoly.zero(self.nvars)] * (n + 1)
        for m in range(va + vb, n + 1):
            acc = MPoly.zero(self.nvars)
            for i in range(va, m - vb + 1):
                if a[i] and b[m - i]:
                    acc = acc + a[i] * b[m - i]
            out[m] = acc
        return HSeries(n, self.nvars, out)

    def __truediv__(self, other):
        if isinstance(other, HSeries):
            return self * other.inverse()
        if isinstance(other, MPoly):
            return HSeries(self.order, self.nvars, [a / other for a in self.coeffs])
        return HSeries(self.order, self.nvars, [a / other for a in self.coeffs])

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only non-negative integer powers")
        result = HSeries.one(self.order, self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k: int) -> "HSeries":
        """Multiply by ``hbar**k``."""
        cs = [MPoly.zero(self.nvars)] * k + list(self.coeffs)
        return HSeries(self.order, self.nvars, cs)

    # -- analytic functions ----------------------------------------------
    def inverse(self) -> "HSeries":
        """Multiplicative inverse; the hbar-constant term must be a nonzero rational."""
        c0 = self.coeffs[0]
        if not c0.is_unit():
            raise ZeroDivisionError(f"series with constant term {c0} is not invertible")
        inv0 = 1 / c0.constant_term()
        # self = c0 (1 - t),  1/self = inv0 * sum t^k
        t = -(self * inv0 - 1)
        acc = HSeries.one(self.order, self.nvars)
        power = HSeries.one(self.order, self.nvars)
        for _ in range(self.order):
            power = power * t
            acc = acc + power
        return acc * inv0

    def exact_div(self, other: "HSeries", upto: int | None = None) -> "HSeries":
        """Series quotient when the divisor's constant term is a nonzero polynomial.

        Each order is solved by exact polynomial division; a remainder means
        the quotient is not a polynomial series and raises ArithmeticError.
        Orders above ``upto`` are left zero.
        """
        self._check(other)
        b0 = other.coeffs[0]
        if not b0:
            raise ZeroDivisionError("divisor has zero constant term")
        q: list[MPoly] = []
        top = self.order if upto is None else min(upto, self.order)
        for m in range(top + 1):
            acc = self.coeffs[m]
            for i in range(m):
                if q[i] and other.coeffs[m - i]:
                    acc = acc - q[i] * other.coeffs[m - i]
            q.append(acc.exact_div(b0) if acc else MPoly.zero(self.nvars))
        return HSeries(self.order, self.nvars, q)

    def log(self) -> "HSeries":
        """Logarithm of a series whose hbar-constant term is exactly 1."""
        if self.coeffs[0] != MPoly.const(1, self.nvars):
            raise ValueError("log needs a series with constant term 1")
        t = self - 1
        acc = HSeries.zero(self.order, self.nvars)
        power = HSeries.one(self.order, self.nvars)
        for k in range(1, self.order + 1):
            power = power * t
            acc = acc + power * mpq((-1) ** (k + 1), k)
        return acc

    def exp(self) -> "HSeries":
        """Exponential of a series with zero hbar-constant term."""
        if self.coeffs[0]:
            raise ValueError("exp needs a series with zero constant term")
        acc = HSeries.one(self.order, self.nvars)
        term = HSeries.one(self.order, self.nvars)
        for k in range(1, self.order + 1):
            term = term * self * mpq(1, k)
            acc = acc + term
        return acc

    # -- polynomial operations --------------------------------------------
    def diff(self, index: int) -> "HSeries":
        return HSeries(self.order, self.nvars, [c.diff(index) for c in self.coeffs])

    def specialize_eps(self, value) -> "HSeries":
        return HSeries(self.order, self.nvars, [c.specialize_eps(value) for c in self.coeffs])

    def truncate(self, order: int) -> "HSeries":
        """Re-truncate at a lower order, or pad with zeros up to a higher one."""
        return HSeries(order, self.nvars, list(self.coeffs))

    def place(self, nvars: int, offset: int) -> "HSeries":
        return HSeries(self.order, nvars, [c.place(nvars, offset) for c in self.coeffs])

    def remap(self, targets: Sequence[int], nvars: int) -> "HSeries":
        return HSeries(self.order, nvars, [c.remap(targets, nvars) for c in self.coeffs])

    def substitute(self, images: Sequence["HSeries"]) -> "HSeries":
        """Substitute series ``images[i]`` for variable ``i`` in every coefficient."""
        return substitute_series(self, images)

    def to_str(self, names=None) -> str:
        parts = []
        for m, c in enumerate(self.coeffs):
            if c:
                s = c.to_str(names)
                parts.append(s if m == 0 else f"h^{m}*({s})" if m > 1 else f"h*({s})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"HSeries(N={self.order}, {self.to_str()})"


def _check_images(nvars: int, images: Sequence[HSeries]) -> tuple[int, int]:
    if len(images) != nvars:
        raise ArityError(f"need {nvars} images, got {len(images)}")
    if not images:
        raise ArityError("no images given")
    order = images[0].order
    target = images[0].nvars
    for im in images:
        if im.order != order:
            raise OrderMismatch("images have mixed truncation orders")
        if im.nvars != target:
            raise ArityError("images have mixed arities")
    return order, target


def _near_identity(images: Sequence[HSeries], nvars: int) -> bool:
    if images[0].nvars != nvars:
        return False
    return all(im.coeffs[0] == MPoly.var(i, nvars) for i, im in enumerate(images))


def mpoly_subst(p: MPoly, images: Sequence[HSeries]) -> HSeries:
    """Evaluate ``p`` at the given series images, truncated at their common order."""
    order, target = _check_images(p.nvars, images)
    return substitute_series(HSeries(order, p.nvars, [p]), images)


def substitute_series(s: HSeries, images: Sequence[HSeries]) -> HSeries:
    order, target = _check_images(s.nvars, images)
    if order != s.order:
        raise OrderMismatch(f"series order {s.order} vs image order {order}")
    if _near_identity(images, s.nvars):
        return _subst_taylor(s, images)
    return _subst_direct(s, images, target)


def _subst_direct(s: HSeries, images: Sequence[HSeries], target: int) -> HSeries:
    order = s.order
    powers: list[list[HSeries]] = [[HSeries.one(order, target)] for _ in images]
    out = HSeries.zero(order, target)
    for m, c in enumerate(s.coeffs):
        if not c:
            continue
        budget = order - m
        acc = HSeries.zero(budget, target)
        for exps, e, coef in c.items():
            term = HSeries(budget, target, [MPoly(target, {e: coef}, _trusted=True)])
            for i, n in enumerate(exps):
                if n:
                    pw = powers[i]
                    while len(pw) <= n:
                        pw.append(pw[-1] * images[i])
                    term = term * pw[n].truncate(budget)
            acc = acc + term
        out = out + acc.truncate(order).shift(m)
    return out


def _subst_taylor(s: HSeries, images: Sequence[HSeries]) -> HSeries:
    """Taylor expansion around the identity: f(u + d) = sum_a d^a/a! * D^a f(u)."""
    order, n = s.order, s.nvars
    deltas = {}
    for i, im in enumerate(images):
        d = im - HSeries.embed(MPoly.var(i, n), order)
        if not d.is_zero():
            deltas[i] = d
    moved = sorted(deltas)
    out = HSeries.zero(order, n)
    # products of deltas per multi-index (as sorted index tuples), built incrementally
    prod_cache: dict[tuple[int, ...], HSeries] = {(): HSeries.one(order, n)}
    for m, c in enumerate(s.coeffs):
        if not c:
            continue
        budget = order - m
        acc = [MPoly.zero(n)] * (budget + 1)
        deriv_cache: dict[tuple[int, ...], MPoly] = {(): c}
        for deg in range(0, budget + 1):
            for idx in combinations_with_replacement(moved, deg):
                if idx:
                    parent = deriv_cache.get(idx[:-1])
                    if parent is None or not parent:
                        deriv_cache[idx] = MPoly.zero(n)
                        continue
                    d = parent.diff(idx[-1])
                    deriv_cache[idx] = d
                else:
                    d = c
                if not d:
                    continue
                prod = _delta_product(idx, prod_cache, deltas)
                weight = mpq(1)
                for i in set(idx):
                    weight *= factorial(idx.count(i))
                dd = d * (1 / weight) if weight != 1 else d
                for k in range(deg, budget + 1):
                    pc = prod.coeffs[k]
                    if pc:
                        acc[k] = acc[k] + dd * pc
        for k in range(budget + 1):
            if acc[k]:
                out_coeffs = list(out.coeffs)
                out_coeffs[k + m] = out_coeffs[k + m] + acc[k]
                out = HSeries(order, n, out_coeffs)
    return out


def _delta_product(idx, cache, deltas):
    prod = cache.get(idx)
    if prod is None:
        prod = _delta_product(idx[:-1], cache, deltas) * deltas[idx[-1]]
        cache[idx] = prod
    return prod
