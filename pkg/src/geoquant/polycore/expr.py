"""Text grammar for polynomials and closed-form rational expressions.

Variables are ``x1..xn``, ``y1..yn``, ``z1..zn`` (one block of ``n`` per
factor of X^k), plus ``h`` for hbar and ``eps`` for the formal parameter.
Rationals are written ``p/q``; ``ln(...)`` and ``exp(...)`` are allowed in
closed forms.  ``^`` and ``**`` take non-negative integer exponents.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .hseries import HSeries
from .mpoly import MPoly

BLOCK_LETTERS = "xyz"
_VAR_RE = re.compile(r"^([a-z])(\d+)$")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ExpansionError(ValueError):
    """A divisor or logarithm argument violates the expansion preconditions."""


@dataclass(frozen=True)
class Expr:
    """Expression tree node.

    ``op`` is one of ``num var h eps add sub mul div neg pow ln exp``.  ``value``
    holds the rational for ``num``, the variable index for ``var`` and the
    integer exponent for ``pow``.
    """

    op: str
    args: tuple = ()
    value: object = None

    def __add__(self, other):
        return Expr("add", (self, _lift(other)))

    def __radd__(self, other):
        return Expr("add", (_lift(other), self))

    def __sub__(self, other):
        return Expr("sub", (self, _lift(other)))

    def __rsub__(self, other):
        return Expr("sub", (_lift(other), self))

    def __mul__(self, other):
        return Expr("mul", (self, _lift(other)))

    def __rmul__(self, other):
        return Expr("mul", (_lift(other), self))

    def __truediv__(self, other):
        return Expr("div", (self, _lift(other)))

    def __rtruediv__(self, other):
        return Expr("div", (_lift(other), self))

    def __neg__(self):
        return Expr("neg", (self,))

    def __pow__(self, e: int):
        return Expr("pow", (self,), e)


def _lift(x) -> Expr:
    if isinstance(x, Expr):
        return x
    return Expr("num", value=mpq(x))


def num(x) -> Expr:
    return _lift(x)


def ln(e: Expr) -> Expr:
    return Expr("ln", (_lift(e),))


def exp(e: Expr) -> Expr:
    return Expr("exp", (_lift(e),))


H = Expr("h")
EPS_EXPR = Expr("eps")


def variable_names(nvars: int, block: int | None = None) -> list[str]:
    """Names for a ring with ``nvars`` variables split into blocks of ``block``."""
    block = block or nvars
    if nvars % block:
        raise ValueError("arity must be a multiple of the block size")
    nblocks = nvars // block
    if nblocks > len(BLOCK_LETTERS):
        return [f"u{i + 1}" for i in range(nvars)]
    return [f"{BLOCK_LETTERS[b]}{i + 1}" for b in range(nblocks) for i in range(block)]


def _resolve_var(name: str, nvars: int, block: int) -> int:
    m = _VAR_RE.match(name)
    if m:
        letter, idx = m.group(1), int(m.group(2))
        if letter in BLOCK_LETTERS and 1 <= idx <= block:
            pos = BLOCK_LETTERS.index(letter) * block + idx - 1
            if pos < nvars:
                return pos
        if letter == "u" and 1 <= idx <= nvars:
            return idx - 1
    raise KeyError(name)


def parse_expr(text: str, nvars: int, block: int | None = None) -> Expr:
    """Parse ``text`` into an :class:`Expr`; variables are resolved against the block layout."""
    block = block or nvars or 1
    src = text.replace("^", "**")
    try:
        tree = ast.parse(src.strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(exc.msg, exc.lineno or 1, exc.offset or 0) from None
    return _convert(tree.body, nvars, block)


def _convert(node, nvars: int, block: int) -> Expr:
    where = (getattr(node, "lineno", 1), getattr(node, "col_offset", 0))
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int) and not isinstance(node.value, bool):
            return Expr("num", value=mpq(node.value))
        raise ParseError(f"unsupported literal {node.value!r}", *where)
    if isinstance(node, ast.Name):
        if node.id == "h":
            return H
        if node.id == "eps":
            return EPS_EXPR
        try:
            return Expr("var", value=_resolve_var(node.id, nvars, block))
        except KeyError:
            raise ParseError(f"unknown variable {node.id!r}", *where) from None
    if isinstance(node, ast.UnaryOp):
        inner = _convert(node.operand, nvars, block)
        if isinstance(node.op, ast.USub):
            return Expr("neg", (inner,))
        if isinstance(node.op, ast.UAdd):
            return inner
    if isinstance(node, ast.BinOp):
        left = _convert(node.left, nvars, block)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)
                    and node.right.value >= 0):
                raise ParseError("exponent must be a non-negative integer literal", *where)
            return Expr("pow", (left,), node.right.value)
        right = _convert(node.right, nvars, block)
        ops = {ast.Add: "add", ast.Sub: "sub", ast.Mult: "mul", ast.Div: "div"}
        for cls, name in ops.items():
            if isinstance(node.op, cls):
                return Expr(name, (left, right))
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        if node.func.id in ("ln", "exp") and len(node.args) == 1 and not node.keywords:
            return Expr(node.func.id, (_convert(node.args[0], nvars, block),))
        raise ParseError(f"unknown function {node.func.id!r}", *where)
    raise ParseError(f"unsupported syntax {type(node).__name__}", *where)


def expand_expr(e: Expr | str, order: int, nvars: int, block: int | None = None) -> HSeries:
    """Expand a closed form into a series in hbar truncated at ``order``.

    A divisor whose constant term vanishes is accepted when it is ``hbar**k``
    times a unit and the numerator is divisible by ``hbar**k``; the working
    order is raised until every retained coefficient is exact.
    """
    if isinstance(e, str):
        e = parse_expr(e, nvars, block)
    work = order
    for _ in range(64):
        series, prec = _expand_at(e, work, nvars)
        if prec >= order:
            return series.truncate(order)
        work += order - prec
    raise ExpansionError("could not reach the requested precision")


def _val(s: HSeries, prec: int) -> int:
    return min(s.valuation(), prec + 1)


def _expand_at(e: Expr, work: int, nvars: int) -> tuple[HSeries, int]:
    """Expand at working order ``work``; returns the series and the order up to
    which its coefficients are exact."""
    cache: dict[Expr, tuple[HSeries, int]] = {}

    def mul(a, b):
        (sa, pa), (sb, pb) = a, b
        prec = min(pa + _val(sb, pb), pb + _val(sa, pa), work)
        return sa * sb, prec

    def go(node: Expr) -> tuple[HSeries, int]:
        hit = cache.get(node)
        if hit is not None:
            return hit
        op = node.op
        if op == "num":
            out = HSeries(work, nvars, [MPoly.const(node.value, nvars)]), work
        elif op == "var":
            out = HSeries(work, nvars, [MPoly.var(node.value, nvars)]), work
        elif op == "h":
            out = HSeries.hbar(work, nvars), work
        elif op == "eps":
            out = HSeries(work, nvars, [MPoly.eps(nvars)]), work
        elif op in ("add", "sub"):
            (sa, pa), (sb, pb) = go(node.args[0]), go(node.args[1])
            out = (sa + sb if op == "add" else sa - sb), min(pa, pb)
        elif op == "mul":
            out = mul(go(node.args[0]), go(node.args[1]))
        elif op == "neg":
            s, p = go(node.args[0])
            out = -s, p
        elif op == "pow":
            base = go(node.args[0])
            acc = (HSeries.one(work, nvars), work)
            for _ in range(node.value):
                acc = mul(acc, base)
            out = acc
        elif op == "div":
            (sn, pn), (sd, pd) = go(node.args[0]), go(node.args[1])
            k = sd.valuation()
            if k > pd:
                raise ExpansionError("divisor vanishes to the working precision")
            if k:
                if _val(sn, pn) < k:
                    raise ExpansionError("divisor vanishes at hbar = 0 but the numerator does not")
                sn, pn = _shift_down(sn, k), pn - k
                sd, pd = _shift_down(sd, k), pd - k
            if sd[0].is_unit():
                out = mul((sn, pn), (sd.inverse(), pd))
            else:
                # polynomial leading term: the quotient must be exact order by order
                try:
                    out = sn.exact_div(sd, min(pn, pd)), min(pn, pd)
                except (ArithmeticError, ZeroDivisionError) as exc:
                    raise ExpansionError(f"non-invertible divisor: {exc}") from None
        elif op in ("ln", "exp"):
            s, p = go(node.args[0])
            try:
                out = (s.log() if op == "ln" else s.exp()), p
            except ValueError as exc:
                raise ExpansionError(str(exc)) from None
        else:
            raise ValueError(f"unknown node {op}")
        cache[node] = out
        return out

    return go(e)


def _shift_down(s: HSeries, k: int) -> HSeries:
    return HSeries(s.order, s.nvars, list(s.coeffs[k:]))


def parse_poly(text: str, nvars: int, block: int | None = None) -> MPoly:
    """Parse a polynomial: no ``h``, no ``ln``/``exp``, division only by rationals."""
    e = parse_expr(text, nvars, block)
    return _to_poly(e, nvars)


def _to_poly(node: Expr, nvars: int) -> MPoly:
    op = node.op
    if op == "num":
        return MPoly.const(node.value, nvars)
    if op == "var":
        return MPoly.var(node.value, nvars)
    if op == "eps":
        return MPoly.eps(nvars)
    if op == "add":
        return _to_poly(node.args[0], nvars) + _to_poly(node.args[1], nvars)
    if op == "sub":
        return _to_poly(node.args[0], nvars) - _to_poly(node.args[1], nvars)
    if op == "mul":
        return _to_poly(node.args[0], nvars) * _to_poly(node.args[1], nvars)
    if op == "neg":
        return -_to_poly(node.args[0], nvars)
    if op == "pow":
        return _to_poly(node.args[0], nvars) ** node.value
    if op == "div":
        den = _to_poly(node.args[1], nvars)
        if not den.is_unit():
            raise ParseError("polynomial division only by nonzero rational constants")
        return _to_poly(node.args[0], nvars) / den
    raise ParseError(f"'{op}' is not allowed in a polynomial")


def format_poly(p: MPoly, block: int | None = None) -> str:
    return p.to_str(variable_names(p.nvars, block))


def parse_series_dump(pairs: Sequence[tuple[int, str]], order: int, nvars: int,
                      block: int | None = None) -> HSeries:
    cs = [MPoly.zero(nvars)] * (order + 1)
    for power, text in pairs:
        if power <= order:
            cs[power] = cs[power] + parse_poly(text, nvars, block)
    return HSeries(order, nvars, cs)


def dump_series(s: HSeries, block: int | None = None) -> list[tuple[int, str]]:
    names = variable_names(s.nvars, block)
    return [(m, c.to_str(names)) for m, c in enumerate(s.coeffs) if c]
