"""The polytope group of the line and the sequence Pt -> Z[R] -> Z.

Elements of the polytope group are stored as integer step functions with
compact support: a sorted list of ``(breakpoint, jump)`` pairs.  The value on
``[x_i, x_{i+1})`` is the running sum of jumps, so ``[a, b)`` is
``[(a, +1), (b, -1)]``.  Because every interval decomposes into its pieces,
this normal form makes equality structural.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable

from .errors import ContextMismatch, EmptyInterval, NotInKernel
from .scalar import (
    LESS,
    Scalar,
    ScalarContext,
    format_rational,
    parse_rational,
    scalar_cmp,
    scalar_from_json,
)


def _sorted_scalars(xs: Iterable[Scalar]) -> list[Scalar]:
    return sorted(xs, key=cmp_to_key(scalar_cmp))


class PtElement:
    """A compactly supported integer step function on the line."""

    __slots__ = ("ctx", "steps")

    def __init__(self, ctx: ScalarContext, steps: Iterable[tuple[Scalar, int]] = ()):
        totals: dict[Scalar, int] = {}
        for x, jump in steps:
            if x.ctx != ctx:
                raise ContextMismatch("breakpoint from a different context")
            if int(jump) != jump:
                raise ValueError("jumps must be integers")
            totals[x] = totals.get(x, 0) + int(jump)
        keep = [x for x, j in totals.items() if j]
        if sum(totals[x] for x in keep):
            raise ValueError("jumps must sum to zero (compact support)")
        self.ctx = ctx
        self.steps = tuple((x, totals[x]) for x in _sorted_scalars(keep))

    @classmethod
    def zero(cls, ctx: ScalarContext) -> PtElement:
        return cls(ctx)

    def _check(self, other: PtElement) -> None:
        if other.ctx != self.ctx:
            raise ContextMismatch("polytope elements from different contexts")

    def __add__(self, other: PtElement) -> PtElement:
        self._check(other)
        return PtElement(self.ctx, self.steps + other.steps)

    def __neg__(self) -> PtElement:
        return PtElement(self.ctx, [(x, -j) for x, j in self.steps])

    def __sub__(self, other: PtElement) -> PtElement:
        return self + (-other)

    def scale(self, k) -> PtElement:
        if Fraction(k).denominator != 1:
            raise ValueError("the polytope group only admits integer multiples")
        k = int(k)
        return PtElement(self.ctx, [(x, k * j) for x, j in self.steps])

    def translate(self, t: Scalar) -> PtElement:
        return pt_translate(t, self)

    def is_zero(self) -> bool:
        return not self.steps

    def __eq__(self, other) -> bool:
        if not isinstance(other, PtElement):
            return NotImplemented
        return self.ctx == other.ctx and self.steps == other.steps

    def __hash__(self) -> int:
        return hash(self.steps)

    def value_at(self, p: Scalar) -> int:
        """Evaluate the step function at ``p``."""
        total = 0
        for x, j in self.steps:
            if scalar_cmp(x, p) == LESS or x == p:
                total += j
            else:
                break
        return total

    def constancy_intervals(self) -> list[tuple[Scalar, Scalar, int]]:
        out = []
        running = 0
        for (x, j), (y, _) in zip(self.steps, self.steps[1:]):
            running += j
            if running:
                out.append((x, y, running))
        return out

    def __repr__(self) -> str:
        body = ", ".join(f"({x}, {j:+d})" for x, j in self.steps)
        return f"PtElement[{body}]"

    def to_json(self) -> dict:
        return {"steps": [{"x": x.to_json(), "jump": j} for x, j in self.steps]}

    @classmethod
    def from_json(cls, ctx: ScalarContext, data: dict) -> PtElement:
        return cls(ctx, [(scalar_from_json(ctx, s["x"]), int(s["jump"])) for s in data["steps"]])


class ZRElement:
    """A finite rational combination of brackets ``[r]``, r a scalar."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: ScalarContext, terms=()):
        if isinstance(terms, dict):
            terms = terms.items()
        acc: dict[Scalar, Fraction] = {}
        for r, c in terms:
            if r.ctx != ctx:
                raise ContextMismatch("bracket from a different context")
            acc[r] = acc.get(r, Fraction(0)) + Fraction(c)
        self.ctx = ctx
        self.terms = {r: c for r, c in acc.items() if c}

    @classmethod
    def bracket(cls, r: Scalar, c=1) -> ZRElement:
        return cls(r.ctx, [(r, c)])

    @classmethod
    def zero(cls, ctx: ScalarContext) -> ZRElement:
        return cls(ctx)

    def __add__(self, other: ZRElement) -> ZRElement:
        if other.ctx != self.ctx:
            raise ContextMismatch("Z[R] elements from different contexts")
        return ZRElement(self.ctx, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> ZRElement:
        return ZRElement(self.ctx, [(r, -c) for r, c in self.terms.items()])

    def __sub__(self, other: ZRElement) -> ZRElement:
        return self + (-other)

    def scale(self, q) -> ZRElement:
        q = Fraction(q)
        return ZRElement(self.ctx, [(r, q * c) for r, c in self.terms.items()])

    def translate(self, t: Scalar) -> ZRElement:
        """The module action: shift every bracket by ``t``."""
        return ZRElement(self.ctx, [(r + t, c) for r, c in self.terms.items()])

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZRElement):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        body = " + ".join(f"{c}[{r}]" for r, c in self.sorted_terms())
        return f"ZRElement({body or '0'})"

    def sorted_terms(self) -> list[tuple[Scalar, Fraction]]:
        return sorted(self.terms.items(), key=lambda rc: rc[0].coeffs)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"r": r.to_json(), "c": format_rational(c)} for r, c in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json(cls, ctx: ScalarContext, data: dict) -> ZRElement:
        return cls(
            ctx,
            [(scalar_from_json(ctx, t["r"]), parse_rational(t["c"])) for t in data["terms"]],
        )


def pt_interval(a: Scalar, b: Scalar) -> PtElement:
    """Indicator of ``[a, b)``."""
    if scalar_cmp(a, b) != LESS:
        raise EmptyInterval(f"[{a}, {b}) is empty")
    return PtElement(a.ctx, [(a, 1), (b, -1)])


def pt_add(x: PtElement, y: PtElement) -> PtElement:
    return x + y


def pt_translate(t: Scalar, x: PtElement) -> PtElement:
    if t.ctx != x.ctx:
        raise ContextMismatch("translation from a different context")
    return PtElement(x.ctx, [(p + t, j) for p, j in x.steps])


def pt_vol(x: PtElement) -> Scalar:
    # integral of the step function; equals -sum(jump * x) since jumps sum to 0
    vol = x.ctx.zero()
    for p, j in x.steps:
        vol = vol - p.scale(j)
    return vol


def pt_beta(x: PtElement) -> ZRElement:
    """``[a, b) -> [b] - [a]``, extended additively."""
    return ZRElement(x.ctx, [(p, -j) for p, j in x.steps])


def zr_eps(z: ZRElement) -> Fraction:
    return sum(z.terms.values(), Fraction(0))


def zr_debracket(z: ZRElement) -> Scalar:
    """``sum c[r] -> sum c*r``; only defined on the kernel of ``zr_eps``."""
    if zr_eps(z) != 0:
        raise NotInKernel(f"augmentation of {z} is {zr_eps(z)}, not 0")
    out = z.ctx.zero()
    for r, c in z.terms.items():
        out = out + r.scale(c)
    return out
