"""Sparse multivariate polynomials over Q[eps].

Monomials are packed into a single Python int: slot 0 holds the exponent of
the formal parameter ``eps`` and slot ``i + 1`` the exponent of variable ``i``.
Each slot is :data:`SLOT_BITS` wide, so multiplying two monomials is integer
addition.  A polynomial with ``nvars == 0`` is a scalar (an element of Q[eps])
and is what the rest of the package calls a ``Coeff``; scalars broadcast
against polynomials of any arity.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

SLOT_BITS = 16
SLOT_MASK = (1 << SLOT_BITS) - 1
MAX_EXPONENT = SLOT_MASK


class ArityError(ValueError):
    """Operands live in polynomial rings with different numbers of variables."""


def to_rational(value) -> mpq:
    if isinstance(value, mpq):
        return value
    if isinstance(value, str):
        return mpq(value.strip())
    if isinstance(value, (int, Fraction)):
        return mpq(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def pack(exps: Sequence[int], eps: int = 0) -> int:
    key = eps
    for i, e in enumerate(exps):
        if e < 0 or e > MAX_EXPONENT:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (SLOT_BITS * (i + 1))
    return key


def unpack(key: int, nvars: int) -> tuple[tuple[int, ...], int]:
    eps = key & SLOT_MASK
    exps = tuple((key >> (SLOT_BITS * (i + 1))) & SLOT_MASK for i in range(nvars))
    return exps, eps


def _grlex_key(key: int, nvars: int):
    exps, eps = unpack(key, nvars)
    return (sum(exps), exps, eps)


class MPoly:
    """Immutable sparse polynomial in ``nvars`` variables with Q[eps] coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[int, mpq] | None = None, *, _trusted=False):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms
        else:
            self.terms = {k: to_rational(c) for k, c in terms.items() if c != 0}
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int = 0) -> "MPoly":
        return cls(nvars, {}, _trusted=True)

    @classmethod
    def const(cls, value, nvars: int = 0) -> "MPoly":
        if isinstance(value, MPoly):
            if value.nvars != 0:
                raise ArityError("const() expects a scalar")
            return cls(nvars, dict(value.terms), _trusted=True)
        c = to_rational(value)
        return cls(nvars, {0: c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, index: int, nvars: int) -> "MPoly":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for arity {nvars}")
        return cls(nvars, {1 << (SLOT_BITS * (index + 1)): mpq(1)}, _trusted=True)

    @classmethod
    def eps(cls, nvars: int = 0) -> "MPoly":
        return cls(nvars, {1: mpq(1)}, _trusted=True)

    @classmethod
    def from_exponents(cls, nvars: int, items: Mapping[tuple, object]) -> "MPoly":
        """Build from ``{exponent tuple: coefficient}``.

        A tuple of length ``nvars + 1`` carries the eps exponent in its last slot.
        """
        terms: dict[int, mpq] = {}
        for exps, c in items.items():
            if len(exps) == nvars:
                key = pack(exps)
            elif len(exps) == nvars + 1:
                key = pack(exps[:-1], exps[-1])
            else:
                raise ArityError(f"exponent vector {exps} does not match arity {nvars}")
            c = to_rational(c)
            if c:
                terms[key] = terms.get(key, 0) + c
        return cls(nvars, {k: c for k, c in terms.items() if c}, _trusted=True)

    # -- inspection -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        """True when free of the variables (eps is allowed)."""
        return all(k <= SLOT_MASK for k in self.terms)

    def is_rational(self) -> bool:
        """True for a plain rational constant (no variables, no eps)."""
        return all(k == 0 for k in self.terms)

    def is_unit(self) -> bool:
        return len(self.terms) == 1 and 0 in self.terms

    def constant_term(self) -> mpq:
        return self.terms.get(0, mpq(0))

    def rational_value(self) -> mpq:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational constant")
        return self.constant_term()

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(unpack(k, self.nvars)[0]) for k in self.terms)

    def eps_degree(self) -> int:
        if not self.terms:
            return -1
        return max(k & SLOT_MASK for k in self.terms)

    def has_eps(self) -> bool:
        return any(k & SLOT_MASK for k in self.terms)

    def variables(self) -> set[int]:
        used = set()
        for k in self.terms:
            exps, _ = unpack(k, self.nvars)
            used.update(i for i, e in enumerate(exps) if e)
        return used

    def items(self):
        """Terms as ``(exponents, eps_exponent, coefficient)`` in graded-lex order, leading first."""
        for k in sorted(self.terms, key=lambda k: _grlex_key(k, self.nvars), reverse=True):
            exps, e = unpack(k, self.nvars)
            yield exps, e, self.terms[k]

    def monomial_key(self, key: int) -> int:
        """Strip the eps slot; used to group terms by monomial."""
        return key >> SLOT_BITS

    def split_eps(self) -> dict[int, "MPoly"]:
        """Group terms by monomial: ``{packed monomial: scalar Coeff}``."""
        out: dict[int, dict[int, mpq]] = {}
        for k, c in self.terms.items():
            out.setdefault(k >> SLOT_BITS, {})[k & SLOT_MASK] = c
        return {m: MPoly(0, t, _trusted=True) for m, t in out.items()}

    @classmethod
    def join_eps(cls, nvars: int, parts: Mapping[int, "MPoly"]) -> "MPoly":
        terms = {}
        for m, c in parts.items():
            base = m << SLOT_BITS
            for k, v in c.terms.items():
                terms[base | k] = v
        return cls(nvars, terms, _trusted=True)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        return MPoly.const(other, self.nvars)

    def _result_arity(self, other: "MPoly") -> int:
        if self.nvars == other.nvars or other.nvars == 0:
            return self.nvars
        if self.nvars == 0:
            return other.nvars
        raise ArityError(f"arity mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        other = self._coerce(other)
        n = self._result_arity(other)
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        res = dict(a)
        for k, c in b.items():
            v = res.get(k)
            if v is None:
                res[k] = c
            else:
                v = v + c
                if v:
                    res[k] = v
                else:
                    del res[k]
        return MPoly(n, res, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {k: -c for k, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = to_rational(other)
            if not c:
                return MPoly(self.nvars, {}, _trusted=True)
            return MPoly(self.nvars, {k: v * c for k, v in self.terms.items()}, _trusted=True)
        n = self._result_arity(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return MPoly(n, {}, _trusted=True)
        if len(a) < len(b):
            a, b = b, a
        res: dict[int, mpq] = {}
        get = res.get
        for k2, c2 in b.items():
            for k1, c1 in a.items():
                k = k1 + k2
                v = get(k)
                res[k] = c1 * c2 if v is None else v + c1 * c2
        return MPoly(n, {k: v for k, v in res.items() if v}, _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero rational (or a unit scalar) only."""
        if isinstance(other, MPoly):
            if not other.is_unit():
                raise ZeroDivisionError("division only by nonzero rational constants")
            other = other.constant_term()
        c = to_rational(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (1 / c)

    def exact_div(self, other: "MPoly") -> "MPoly":
        """Exact quotient ``self / other`` in Q[eps][x]; raises if ``other`` does not divide."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        n = self._result_arity(other)
        slots = n + 1

        def order(k):
            e = [(k >> (SLOT_BITS * i)) & SLOT_MASK for i in range(slots)]
            return (sum(e), e[1:], e[0])

        lead = max(other.terms, key=order)
        lc = other.terms[lead]
        lead_slots = [(lead >> (SLOT_BITS * i)) & SLOT_MASK for i in range(slots)]
        rem = dict(self.terms)
        quo: dict[int, mpq] = {}
        while rem:
            k = max(rem, key=order)
            if any(((k >> (SLOT_BITS * i)) & SLOT_MASK) < lead_slots[i] for i in range(slots)):
                raise ArithmeticError("polynomial division leaves a remainder")
            qk, qc = k - lead, rem[k] / lc
            quo[qk] = qc
            for k2, c2 in other.terms.items():
                kk = qk + k2
                v = rem.get(kk, 0) - qc * c2
                if v:
                    rem[kk] = v
                else:
                    rem.pop(kk, None)
        return MPoly(n, quo, _trusted=True)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only non-negative integer powers")
        result = MPoly.const(1, self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            if self.nvars != other.nvars and self.nvars and other.nvars:
                return False
            return self.terms == other.terms
        try:
            return self.terms == MPoly.const(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution ---------------------------------------
    def diff(self, index: int) -> "MPoly":
        """Formal partial derivative in variable ``index``."""
        if not 0 <= index < self.nvars:
            raise IndexError(f"variable index {index} out of range for arity {self.nvars}")
        shift = SLOT_BITS * (index + 1)
        one = 1 << shift
        res = {}
        for k, c in self.terms.items():
            e = (k >> shift) & SLOT_MASK
            if e:
                res[k - one] = c * e
        return MPoly(self.nvars, res, _trusted=True)

    def specialize_eps(self, value) -> "MPoly":
        value = to_rational(value)
        res: dict[int, mpq] = {}
        for k, c in self.terms.items():
            e = k & SLOT_MASK
            base = k - e
            v = c * value**e if e else c
            if v:
                res[base] = res.get(base, 0) + v
        return MPoly(self.nvars, {k: v for k, v in res.items() if v}, _trusted=True)

    def evaluate(self, point: Sequence, eps=None) -> "MPoly":
        """Evaluate the variables at rationals; returns a scalar Coeff (eps kept unless given)."""
        if len(point) != self.nvars:
            raise ArityError("point length does not match arity")
        pt = [to_rational(v) for v in point]
        acc: dict[int, mpq] = {}
        for k, c in self.terms.items():
            exps, e = unpack(k, self.nvars)
            v = c
            for x, n in zip(pt, exps):
                if n:
                    v *= x**n
            acc[e] = acc.get(e, 0) + v
        res = MPoly(0, {k: v for k, v in acc.items() if v}, _trusted=True)
        if eps is not None:
            res = res.specialize_eps(eps)
        return res

    def compose(self, images: Sequence["MPoly"]) -> "MPoly":
        """Substitute polynomial ``images[i]`` for variable ``i``."""
        if len(images) != self.nvars:
            raise ArityError(f"need {self.nvars} images, got {len(images)}")
        if not self.terms:
            target = images[0].nvars if images else 0
            return MPoly.zero(target)
        target = max((p.nvars for p in images), default=0)
        powers: list[list[MPoly]] = [[MPoly.const(1, target)] for _ in images]
        out = MPoly.zero(target)
        for k, c in self.terms.items():
            exps, e = unpack(k, self.nvars)
            term = MPoly(target, {e: c}, _trusted=True)
            for i, n in enumerate(exps):
                if n:
                    pw = powers[i]
                    while len(pw) <= n:
                        pw.append(pw[-1] * images[i])
                    term = term * pw[n]
            out = out + term
        return out

    def place(self, nvars: int, offset: int) -> "MPoly":
        """Embed into a ring of ``nvars`` variables, shifting variable ``i`` to ``i + offset``."""
        if offset < 0 or offset + self.nvars > nvars:
            raise ArityError("placement out of range")
        shift = SLOT_BITS * offset
        res = {}
        for k, c in self.terms.items():
            e = k & SLOT_MASK
            res[((k >> SLOT_BITS) << (SLOT_BITS + shift)) | e] = c
        return MPoly(nvars, res, _trusted=True)

    def remap(self, targets: Sequence[int], nvars: int) -> "MPoly":
        """Send variable ``i`` to variable ``targets[i]`` of a ring with ``nvars`` variables."""
        if len(targets) != self.nvars:
            raise ArityError("one target per variable required")
        res: dict[int, mpq] = {}
        for k, c in self.terms.items():
            exps, e = unpack(k, self.nvars)
            new = [0] * nvars
            for i, n in enumerate(exps):
                new[targets[i]] += n
            key = pack(new, e)
            res[key] = res.get(key, 0) + c
        return MPoly(nvars, {k: v for k, v in res.items() if v}, _trusted=True)

    # -- display ----------------------------------------------------------
    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for exps, e, c in self.items():
            factors = []
            if e:
                factors.append("eps" if e == 1 else f"eps^{e}")
            for name, n in zip(names, exps):
                if n:
                    factors.append(name if n == 1 else f"{name}^{n}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MPoly({self.nvars}, {self.to_str()!r})"


Coeff = MPoly
"""Scalars of Q[eps] are arity-0 polynomials."""

EPS = MPoly.eps(0)


def coeff(value) -> MPoly:
    """Coerce an int, Fraction, rational string or scalar MPoly to a ``Coeff``."""
    if isinstance(value, MPoly):
        if value.nvars:
            raise ArityError("expected a scalar")
        return value
    return MPoly.const(value, 0)


def coeff_inverse(c: MPoly) -> MPoly:
    if not c.is_unit():
        raise ZeroDivisionError(f"{c} is not a unit of Q[eps]")
    return MPoly.const(1 / c.constant_term(), 0)


def specialize_epsilon(x, value):
    """Replace eps by ``value`` in a Coeff, MPoly, HSeries or nested list of them."""
    if isinstance(x, (list, tuple)):
        return type(x)(specialize_epsilon(v, value) for v in x)
    return x.specialize_eps(value)


def lin_comb(nvars: int, pairs: Iterable[tuple[object, MPoly]]) -> MPoly:
    out = MPoly.zero(nvars)
    for c, p in pairs:
        out = out + p * c
    return out
