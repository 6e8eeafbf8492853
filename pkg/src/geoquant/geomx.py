"""Polynomial vector fields on affine space and formal diffeomorphisms.

Composition convention: ``compose(F, G)`` is the point map "F, then G"; its
coordinate images are ``G_i(F_1, ..., F_m)``.  Equivalently, as pullbacks on
functions, ``compose(F, G)^* = F^* o G^*`` where ``F^* f = f(F)``.  For flows
this reads ``compose(flow(v), flow(w)) = flow(bch(v, w))`` with the usual
commutator of derivations.
"""

from __future__ import annotations

from math import factorial
from typing import Sequence

from gmpy2 import mpq

from .polycore import HSeries, MPoly, substitute_series
from .polycore.mpoly import ArityError


class VectorField:
    """``sum_i comps[i] d/du_i`` with MPoly components."""

    __slots__ = ("comps",)

    def __init__(self, comps: Sequence[MPoly]):
        comps = list(comps)
        if comps:
            m = len(comps)
            comps = [c if c.nvars == m else _lift(c, m) for c in comps]
        self.comps = comps

    @classmethod
    def zero(cls, m: int) -> "VectorField":
        return cls([MPoly.zero(m)] * m)

    @classmethod
    def partial(cls, i: int, m: int) -> "VectorField":
        return cls([MPoly.const(1 if j == i else 0, m) for j in range(m)])

    @property
    def arity(self) -> int:
        return len(self.comps)

    def __call__(self, f: MPoly) -> MPoly:
        return vf_apply(self, f)

    def is_zero(self) -> bool:
        return not any(self.comps)

    def __add__(self, other: "VectorField") -> "VectorField":
        _same(self, other)
        return VectorField([a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: "VectorField") -> "VectorField":
        _same(self, other)
        return VectorField([a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self) -> "VectorField":
        return VectorField([-a for a in self.comps])

    def __mul__(self, f) -> "VectorField":
        """Multiply every component by a function or scalar."""
        return VectorField([a * f for a in self.comps])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.comps == other.comps

    def __hash__(self):
        return hash(tuple(self.comps))

    def specialize_eps(self, value) -> "VectorField":
        return VectorField([c.specialize_eps(value) for c in self.comps])

    def place(self, nvars: int, offset: int) -> "VectorField":
        """Same field acting on the block of variables starting at ``offset``."""
        out = [MPoly.zero(nvars)] * nvars
        for i, c in enumerate(self.comps):
            out[offset + i] = c.place(nvars, offset)
        return VectorField(out)

    def to_strings(self, names=None) -> list[str]:
        return [c.to_str(names) for c in self.comps]

    def __repr__(self):
        return f"VectorField({self.to_strings()})"


def _lift(c: MPoly, m: int) -> MPoly:
    if c.nvars == 0:
        return MPoly.const(c, m)
    raise ArityError(f"component arity {c.nvars} != {m}")


def _same(a, b) -> None:
    if a.arity != b.arity:
        raise ArityError(f"arity mismatch: {a.arity} vs {b.arity}")


def vf_apply(v: VectorField, f: MPoly) -> MPoly:
    """``v(f) = sum_i v_i df/du_i``."""
    if f.nvars not in (0, v.arity):
        raise ArityError(f"arity mismatch: field {v.arity} vs function {f.nvars}")
    out = MPoly.zero(v.arity)
    if f.nvars == 0:
        return out
    for i, c in enumerate(v.comps):
        if c:
            d = f.diff(i)
            if d:
                out = out + c * d
    return out


def vf_bracket(v: VectorField, w: VectorField) -> VectorField:
    """Commutator of derivations: components ``v(w_i) - w(v_i)``."""
    _same(v, w)
    return VectorField([vf_apply(v, wi) - vf_apply(w, vi) for vi, wi in zip(v.comps, w.comps)])


class HVectorField:
    """Vector field with HSeries components of hbar-valuation >= 1."""

    __slots__ = ("comps",)

    def __init__(self, comps: Sequence[HSeries]):
        comps = list(comps)
        for c in comps:
            if c[0]:
                raise ValueError("hbar vector fields need valuation >= 1")
        self.comps = comps

    @classmethod
    def from_field(cls, v: VectorField, order: int, power: int = 1) -> "HVectorField":
        """``hbar**power * v``."""
        return cls([HSeries.monomial(c, power, order) for c in v.comps])

    @property
    def arity(self) -> int:
        return len(self.comps)

    @property
    def order(self) -> int:
        return self.comps[0].order

    def __add__(self, other: "HVectorField") -> "HVectorField":
        return HVectorField([a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: "HVectorField") -> "HVectorField":
        return HVectorField([a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self) -> "HVectorField":
        return HVectorField([-a for a in self.comps])

    def __mul__(self, s) -> "HVectorField":
        return HVectorField([a * s for a in self.comps])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def apply(self, f: HSeries) -> HSeries:
        out = HSeries.zero(f.order, f.nvars)
        for i, c in enumerate(self.comps):
            if not c.is_zero():
                d = f.diff(i)
                if not d.is_zero():
                    out = out + c * d
        return out

    def __eq__(self, other):
        return isinstance(other, HVectorField) and self.comps == other.comps


def hvf_bracket(v: HVectorField, w: HVectorField) -> HVectorField:
    return HVectorField([v.apply(wi) - w.apply(vi) for vi, wi in zip(v.comps, w.comps)])


def hvf_bch(v: HVectorField, w: HVectorField) -> HVectorField:
    """Dynkin series for ``log(e^v e^w)`` in the Lie algebra of derivations."""
    from .liealg import bch_words

    letters = (v, w)
    cache: dict[tuple, HVectorField] = {}

    def nested(word):
        if word not in cache:
            cache[word] = (letters[word[0]] if len(word) == 1
                           else hvf_bracket(letters[word[0]], nested(word[1:])))
        return cache[word]

    out = v + w
    for word, c in bch_words(v.order):
        if len(word) > 1:
            out = out + nested(word) * c
    return out


class FormalDiffeo:
    """Point map ``u -> (F_1(u), ..., F_m(u))`` with ``F_i = u_i mod hbar``.

    ``check=False`` skips the mod-hbar test; it is used for composites of
    checked maps and for linear coordinate permutations such as block swaps.
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[HSeries], check: bool = True):
        images = list(images)
        m = len(images)
        for i, f in enumerate(images):
            if f.nvars != m:
                raise ArityError("images must be series in the ambient variables")
            if check and f[0] != MPoly.var(i, m):
                raise ValueError(f"image {i + 1} is not the identity mod hbar")
        if images and any(f.order != images[0].order for f in images):
            raise ValueError("images must share one truncation order")
        self.images = images

    @classmethod
    def identity(cls, m: int, order: int) -> "FormalDiffeo":
        return cls([HSeries.embed(MPoly.var(i, m), order) for i in range(m)])

    @property
    def arity(self) -> int:
        return len(self.images)

    @property
    def order(self) -> int:
        return self.images[0].order

    def pullback(self, f) -> HSeries:
        """``f o F`` for an MPoly or HSeries function ``f``."""
        if isinstance(f, MPoly):
            f = HSeries.embed(f if f.nvars else MPoly.const(f, self.arity), self.order)
        return substitute_series(f, self.images)

    def is_identity(self) -> bool:
        return self == FormalDiffeo.identity(self.arity, self.order)

    def first_difference(self, other: "FormalDiffeo"):
        """Lowest ``(order, coordinate)`` where the two maps differ, or None."""
        best = None
        for i, (a, b) in enumerate(zip(self.images, other.images)):
            d = a.first_difference(b)
            if d is not None and (best is None or d < best[0]):
                best = (d, i)
        return best

    def specialize_eps(self, value) -> "FormalDiffeo":
        return FormalDiffeo([f.specialize_eps(value) for f in self.images])

    def __eq__(self, other):
        return isinstance(other, FormalDiffeo) and self.images == other.images

    def __repr__(self):
        return f"FormalDiffeo(arity={self.arity}, order={self.order})"


def flow(v: HVectorField) -> FormalDiffeo:
    """Time-one flow: images ``e^v(u_i) = sum_k v^k(u_i)/k!``."""
    m, n = v.arity, v.order
    images = []
    for i in range(m):
        term = HSeries.embed(MPoly.var(i, m), n)
        acc = term
        for k in range(1, n + 1):
            term = v.apply(term)
            if term.is_zero():
                break
            acc = acc + term * mpq(1, factorial(k))
        images.append(acc)
    return FormalDiffeo(images)


def _check_pair(F: FormalDiffeo, G: FormalDiffeo) -> None:
    if F.arity != G.arity:
        raise ArityError(f"arity mismatch: {F.arity} vs {G.arity}")
    if F.order != G.order:
        raise ValueError(f"truncation orders differ: {F.order} vs {G.order}")


def compose(F: FormalDiffeo, G: FormalDiffeo) -> FormalDiffeo:
    """Point map "F, then G": images ``G_i(F)``."""
    _check_pair(F, G)
    return FormalDiffeo([substitute_series(g, F.images) for g in G.images], check=False)


def compose_all(*maps: FormalDiffeo) -> FormalDiffeo:
    """``compose_all(F, G, H)`` applies F first, then G, then H."""
    out = maps[0]
    for M in maps[1:]:
        out = compose(out, M)
    return out


def invert(F: FormalDiffeo) -> FormalDiffeo:
    """Two-sided inverse, by the fixed point ``G = u - delta(G)`` where ``F = u + delta``."""
    m, n = F.arity, F.order
    ident = FormalDiffeo.identity(m, n)
    delta = [f - u for f, u in zip(F.images, ident.images)]
    G = list(ident.images)
    for _ in range(n):
        new = [u - substitute_series(d, G) for u, d in zip(ident.images, delta)]
        if new == G:
            break
        G = new
    return FormalDiffeo(G)


def place(F: FormalDiffeo, factors: tuple[int, int], k: int, n: int | None = None) -> FormalDiffeo:
    """Put a map on X^2 onto the blocks ``factors = (i, j)`` (1-based) of X^k."""
    i, j = factors
    if not (1 <= i < j <= k):
        raise ValueError("need 1 <= i < j <= k")
    if F.arity % 2:
        raise ValueError("map does not live on a square")
    n = n or F.arity // 2
    return place_blocks(F, (i, j), k, n)


def place_blocks(F: FormalDiffeo, blocks: Sequence[int], k: int, n: int) -> FormalDiffeo:
    """Put a map on X^len(blocks) onto the given 1-based blocks of X^k (any order)."""
    if len(set(blocks)) != len(blocks) or any(not 1 <= b <= k for b in blocks):
        raise ValueError("invalid block indices")
    if F.arity != n * len(blocks):
        raise ArityError("block count does not match the map's arity")
    total = n * k
    targets = [(b - 1) * n + t for b in blocks for t in range(n)]
    images = [HSeries.embed(MPoly.var(i, total), F.order) for i in range(total)]
    for src, dst in enumerate(targets):
        images[dst] = F.images[src].remap(targets, total)
    return FormalDiffeo(images, check=False)


def swap(n: int, order: int) -> list[int]:
    """Variable permutation exchanging the two blocks of X^2."""
    return [n + t for t in range(n)] + list(range(n))


def conjugate_swap(F: FormalDiffeo) -> FormalDiffeo:
    """``sigma o F o sigma`` for the block swap sigma on X^2 (the map F^{21})."""
    n = F.arity // 2
    perm = swap(n, F.order)
    images = [None] * F.arity
    for src in range(F.arity):
        images[perm[src]] = F.images[src].remap(perm, F.arity)
    return FormalDiffeo(images)


__all__ = [
    "VectorField", "HVectorField", "FormalDiffeo", "vf_apply", "vf_bracket", "hvf_bracket",
    "hvf_bch", "flow", "compose", "compose_all", "invert", "place", "place_blocks", "conjugate_swap",
]
