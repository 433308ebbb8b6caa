"""Exact real scalars over a declared rationally independent basis.

A :class:`Scalar` is a rational coefficient vector over the basis of a
:class:`ScalarContext`.  The first basis element is always the rational unit
``1``.  Arithmetic is exact and purely coefficientwise; ordering uses the
rational guard intervals attached to each basis symbol and refuses to guess
when the guards cannot separate two distinct values.

Rational independence of the basis is asserted by the user, never checked.
"""

from __future__ import annotations

import hashlib
import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence

from .errors import ContextMismatch, DuplicateSymbol, InvalidGuard, PrecisionError

UNIT = "1"

LESS, EQUAL, GREATER = -1, 0, 1

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text) -> Fraction:
    """Parse an exact ``"p/q"`` string (or an int / Fraction)."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ValueError(f"not an exact rational string: {text!r}")
    q = Fraction(text.strip())
    return q


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


@dataclass(frozen=True)
class Symbol:
    name: str
    lo: Fraction
    hi: Fraction


@dataclass(frozen=True, eq=True)
class ScalarContext:
    """An ordered basis of symbols, each with a rational guard interval."""

    basis: tuple[Symbol, ...]

    def __post_init__(self):
        names = [s.name for s in self.basis]
        if not names or names[0] != UNIT:
            raise InvalidGuard("the first basis element must be the unit '1'")
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise DuplicateSymbol(f"duplicate basis symbol {dup!r}")
        for s in self.basis:
            if s.lo > s.hi:
                raise InvalidGuard(f"guard of {s.name!r} has lo > hi")
        if (self.basis[0].lo, self.basis[0].hi) != (1, 1):
            raise InvalidGuard("the unit guard must be exactly [1, 1]")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.basis)

    @property
    def id(self) -> str:
        """Short content hash used to tag serialized scalars."""
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha1(blob).hexdigest()[:12]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown symbol {name!r}") from None

    def zero(self) -> Scalar:
        return Scalar(self, (Fraction(0),) * self.dim)

    def one(self) -> Scalar:
        return self.rational(1)

    def rational(self, q) -> Scalar:
        q = Fraction(q)
        return Scalar(self, (q,) + (Fraction(0),) * (self.dim - 1))

    def symbol(self, name: str) -> Scalar:
        i = self.index(name)
        coeffs = [Fraction(0)] * self.dim
        coeffs[i] = Fraction(1)
        return Scalar(self, tuple(coeffs))

    def vector(self, coeffs: Sequence) -> Scalar:
        if len(coeffs) != self.dim:
            raise ValueError(f"expected {self.dim} coefficients, got {len(coeffs)}")
        return Scalar(self, tuple(parse_rational(c) for c in coeffs))

    def __getitem__(self, name: str) -> Scalar:
        return self.symbol(name)

    def parse(self, text: str) -> Scalar:
        """Parse a linear expression such as ``"3/2*u - 1 + v"``."""
        return parse_expression(self, text)

    def to_json(self) -> dict:
        return {
            "basis": [
                {"name": s.name, "guard": [format_rational(s.lo), format_rational(s.hi)]}
                for s in self.basis
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> ScalarContext:
        return ctx_new([(b["name"], tuple(b["guard"])) for b in data["basis"]])


def ctx_new(basis: Iterable[tuple[str, Sequence]]) -> ScalarContext:
    """Build a context; the unit ``("1", [1, 1])`` is prepended when absent."""
    symbols = []
    for name, guard in basis:
        lo, hi = (parse_rational(g) for g in guard)
        if lo > hi:
            raise InvalidGuard(f"guard of {name!r} has lo > hi")
        symbols.append(Symbol(str(name), lo, hi))
    if not symbols or symbols[0].name != UNIT:
        if any(s.name == UNIT for s in symbols):
            raise InvalidGuard("the unit '1' must be the first basis element")
        symbols.insert(0, Symbol(UNIT, Fraction(1), Fraction(1)))
    return ScalarContext(tuple(symbols))


@total_ordering
class Scalar:
    """An immutable rational vector over a context basis."""

    __slots__ = ("ctx", "coeffs", "_hash")

    def __init__(self, ctx: ScalarContext, coeffs: tuple[Fraction, ...]):
        if len(coeffs) != ctx.dim:
            raise ValueError("coefficient vector length must equal basis length")
        self.ctx = ctx
        self.coeffs = coeffs
        self._hash = None

    def _check(self, other: Scalar) -> None:
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise ContextMismatch("scalars come from different contexts")

    def _coerce(self, other) -> Scalar:
        if isinstance(other, Scalar):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ctx.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.ctx, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar(self.ctx, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.ctx, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, q):
        if isinstance(q, Scalar):
            if q.is_rational():
                return self.scale(q.coeffs[0])
            if self.is_rational():
                return q.scale(self.coeffs[0])
            raise TypeError("product of two irrational scalars is not representable")
        if isinstance(q, (int, Fraction)) and not isinstance(q, bool):
            return self.scale(q)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, q) -> Scalar:
        q = Fraction(q)
        return Scalar(self.ctx, tuple(q * a for a in self.coeffs))

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.coeffs == other.coeffs and (
                self.ctx is other.ctx or self.ctx == other.ctx
            )
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            # rational scalars hash like the rational so ``x == 0`` stays consistent
            self._hash = hash(self.coeffs[0]) if self.is_rational() else hash(self.coeffs)
        return self._hash

    def __lt__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return scalar_cmp(self, other) == LESS

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def guard(self) -> tuple[Fraction, Fraction]:
        """Interval enclosure of the value from the basis guards."""
        lo = hi = Fraction(0)
        for c, s in zip(self.coeffs, self.ctx.basis):
            if c > 0:
                lo += c * s.lo
                hi += c * s.hi
            elif c < 0:
                lo += c * s.hi
                hi += c * s.lo
        return lo, hi

    def sign(self) -> int:
        if self.is_zero():
            return EQUAL
        lo, hi = self.guard()
        if lo > 0:
            return GREATER
        if hi < 0:
            return LESS
        raise PrecisionError(
            f"guards cannot decide the sign of {self}: enclosure [{lo}, {hi}]"
        )

    def __float__(self) -> float:
        lo, hi = self.guard()
        return float((lo + hi) / 2)

    def __str__(self) -> str:
        parts = []
        for c, name in zip(self.coeffs, self.ctx.names):
            if not c:
                continue
            mag = abs(c)
            if name == UNIT:
                body = str(mag)
            elif mag == 1:
                body = name
            else:
                body = f"{mag}*{name}"
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sgn, body in parts[1:]:
            out += f" {sgn} {body}"
        return out

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def to_json(self) -> dict:
        return {"ctx": self.ctx.id, "coeffs": [format_rational(c) for c in self.coeffs]}


def scalar_from_json(ctx: ScalarContext, data) -> Scalar:
    """Read a scalar: the ``{"ctx", "coeffs"}`` object or an expression string."""
    if isinstance(data, str):
        return ctx.parse(data)
    if isinstance(data, (int,)) and not isinstance(data, bool):
        return ctx.rational(data)
    tag = data.get("ctx")
    if tag is not None and tag != ctx.id:
        raise ContextMismatch(f"scalar tagged with context {tag!r}, expected {ctx.id!r}")
    return ctx.vector(data["coeffs"])


_TERM_RE = re.compile(
    r"""\s*([+-])?\s*
        (?:(\d+(?:/\d+)?)\s*\*?\s*)?
        ([A-Za-z_][A-Za-z0-9_]*)?\s*""",
    re.VERBOSE,
)


def parse_expression(ctx: ScalarContext, text: str) -> Scalar:
    text = text.strip()
    if not text:
        raise ValueError("empty scalar expression")
    total = ctx.zero()
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        sign, num, name = m.group(1), m.group(2), m.group(3)
        if m.end() == pos or (num is None and name is None):
            raise ValueError(f"cannot parse scalar expression {text!r}")
        if sign is None and not first:
            raise ValueError(f"missing operator in {text!r}")
        q = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            q = -q
        term = ctx.symbol(name) if name is not None else ctx.one()
        total = total + term.scale(q)
        pos = m.end()
        first = False
    return total


def scalar_linear(op: str, *args) -> Scalar:
    """Dispatch ``add`` / ``neg`` / ``rational_scale`` by name."""
    if op == "add":
        a, b = args
        return a + b
    if op == "neg":
        (a,) = args
        return -a
    if op == "rational_scale":
        q, a = args
        return a.scale(q)
    raise ValueError(f"unknown linear op {op!r}")


def scalar_cmp(a: Scalar, b: Scalar) -> int:
    """Return LESS, EQUAL or GREATER; raise PrecisionError when undecidable."""
    a._check(b)
    return (a - b).sign()


def scalar_floor_div(t: Scalar, period: Scalar) -> int:
    """The integer ``k`` with ``k*period <= t < (k+1)*period``; period > 0."""
    t._check(period)
    if period.sign() != GREATER:
        raise ValueError("period must be positive")
    tlo, thi = t.guard()
    plo, phi = period.guard()
    if plo <= 0:
        raise PrecisionError("guard of the period does not exclude 0")
    ends = [tlo / plo, tlo / phi, thi / plo, thi / phi]
    for k in range(math.floor(min(ends)), math.floor(max(ends)) + 1):
        if (t - period.scale(k)).sign() >= 0 and (t - period.scale(k + 1)).sign() < 0:
            return k
    raise PrecisionError(f"cannot locate {t} modulo {period}")  # pragma: no cover


def scalar_mod(t: Scalar, period: Scalar) -> Scalar:
    """Reduce ``t`` into ``[0, period)``."""
    return t - period.scale(scalar_floor_div(t, period))


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def q_span_reduce(vs: Sequence[Scalar]) -> tuple[list[Scalar], list[list[Fraction]]]:
    """Row-reduced Q-basis of span(vs) and the coordinates of each input.

    The basis is the nonzero part of the reduced row echelon form of the
    coefficient matrix, so pivots follow the context basis order and the
    result is canonical for a given span.
    """
    if not vs:
        return [], []
    ctx = vs[0].ctx
    for v in vs:
        vs[0]._check(v)
    rows, pivots = rref([list(v.coeffs) for v in vs])
    basis = [Scalar(ctx, tuple(r)) for r in rows]
    coords = [[v.coeffs[c] for c in pivots] for v in vs]
    return basis, coords


def q_rank(vs: Sequence[Scalar]) -> int:
    return len(q_span_reduce(list(vs))[0])
