"""Interval exchange transformations as exact piecewise translations.

An IET of ``[0, L)`` is stored as the left endpoints ``0 = x_0 < ... < x_{k-1}``
of its half-open domain pieces together with one translation offset per
piece.  Adjacent pieces with equal offsets are always merged, so two IETs are
equal exactly when their piece lists are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    ContextMismatch,
    InvalidMorphism,
    LengthMismatch,
    NonpositiveFactor,
    NonpositiveLength,
    OutOfDomain,
    OutOfRange,
)
from .scalar import GREATER, LESS, Scalar, ScalarContext, scalar_cmp, scalar_from_json, scalar_mod


@dataclass(frozen=True)
class Interval:
    """The half-open interval ``[lo, hi)`` with ``lo < hi``."""

    lo: Scalar
    hi: Scalar

    def __post_init__(self):
        if scalar_cmp(self.lo, self.hi) != LESS:
            raise InvalidMorphism(f"degenerate interval [{self.lo}, {self.hi})")

    @property
    def length(self) -> Scalar:
        return self.hi - self.lo

    def shift(self, t: Scalar) -> Interval:
        return Interval(self.lo + t, self.hi + t)

    def contains(self, p: Scalar) -> bool:
        return scalar_cmp(self.lo, p) != GREATER and scalar_cmp(p, self.hi) == LESS

    def contains_interval(self, other: Interval) -> bool:
        return (
            scalar_cmp(self.lo, other.lo) != GREATER
            and scalar_cmp(other.hi, self.hi) != GREATER
        )

    def intersect(self, other: Interval) -> Interval | None:
        lo = other.lo if scalar_cmp(self.lo, other.lo) == LESS else self.lo
        hi = other.hi if scalar_cmp(other.hi, self.hi) == LESS else self.hi
        if scalar_cmp(lo, hi) != LESS:
            return None
        return Interval(lo, hi)

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi})"

    def to_json(self) -> dict:
        return {"lo": self.lo.to_json(), "hi": self.hi.to_json()}

    @classmethod
    def from_json(cls, ctx: ScalarContext, data: dict) -> Interval:
        return cls(scalar_from_json(ctx, data["lo"]), scalar_from_json(ctx, data["hi"]))


def check_partition(intervals: Iterable[Interval], lo: Scalar, hi: Scalar) -> bool:
    """True iff the intervals tile ``[lo, hi)`` without gaps or overlaps."""
    ivs = sorted(intervals, key=lambda iv: _Key(iv.lo))
    cur = lo
    for iv in ivs:
        if iv.lo != cur:
            return False
        cur = iv.hi
    return cur == hi


class _Key:
    """Sort key wrapper ordering scalars by guarded comparison."""

    __slots__ = ("s",)

    def __init__(self, s: Scalar):
        self.s = s

    def __lt__(self, other: _Key) -> bool:
        return scalar_cmp(self.s, other.s) == LESS


class IET:
    """A bijection of ``[0, L)`` that translates each piece of a partition."""

    __slots__ = ("length", "pieces")

    def __init__(self, length: Scalar, pieces: Sequence[tuple[Scalar, Scalar]], *, check=True):
        if length.sign() != GREATER:
            raise NonpositiveLength(f"length {length} is not positive")
        merged: list[tuple[Scalar, Scalar]] = []
        for x, off in pieces:
            if x.ctx != length.ctx or off.ctx != length.ctx:
                raise ContextMismatch("IET data from different contexts")
            if merged and merged[-1][1] == off:
                continue
            merged.append((x, off))
        self.length = length
        self.pieces = tuple(merged)
        if check:
            self._validate()

    def _validate(self) -> None:
        if not self.pieces or not self.pieces[0][0].is_zero():
            raise InvalidMorphism("first piece must start at 0")
        domain = self.domain_intervals()
        if not check_partition((iv.shift(o) for iv, o in zip(domain, self.offsets)), self.ctx.zero(), self.length):
            raise InvalidMorphism("image pieces do not partition [0, L)")

    @property
    def ctx(self) -> ScalarContext:
        return self.length.ctx

    @property
    def breakpoints(self) -> tuple[Scalar, ...]:
        return tuple(x for x, _ in self.pieces)

    @property
    def offsets(self) -> tuple[Scalar, ...]:
        return tuple(o for _, o in self.pieces)

    def domain_intervals(self) -> list[Interval]:
        xs = list(self.breakpoints) + [self.length]
        return [Interval(a, b) for a, b in zip(xs, xs[1:])]

    def image_intervals(self) -> list[Interval]:
        return [iv.shift(o) for iv, o in zip(self.domain_intervals(), self.offsets)]

    def piece_index(self, p: Scalar) -> int:
        if p.sign() == LESS or scalar_cmp(p, self.length) != LESS:
            raise OutOfDomain(f"{p} is outside [0, {self.length})")
        lo, hi = 0, len(self.pieces)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if scalar_cmp(self.pieces[mid][0], p) == GREATER:
                hi = mid
            else:
                lo = mid
        return lo

    def offset_at(self, p: Scalar) -> Scalar:
        return self.pieces[self.piece_index(p)][1]

    def __call__(self, p: Scalar) -> Scalar:
        return p + self.offset_at(p)

    def __mul__(self, other: IET) -> IET:
        return iet_compose(self, other)

    def __invert__(self) -> IET:
        return iet_inverse(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IET):
            return NotImplemented
        return self.length == other.length and self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash((self.length, self.pieces))

    def __repr__(self) -> str:
        body = ", ".join(f"({iv}, {o})" for iv, o in zip(self.domain_intervals(), self.offsets))
        return f"IET(L={self.length}: {body})"

    def to_json(self) -> dict:
        return {
            "L": self.length.to_json(),
            "pieces": [{"x": x.to_json(), "offset": o.to_json()} for x, o in self.pieces],
        }

    @classmethod
    def from_json(cls, ctx: ScalarContext, data: dict) -> IET:
        return cls(
            scalar_from_json(ctx, data["L"]),
            [(scalar_from_json(ctx, p["x"]), scalar_from_json(ctx, p["offset"])) for p in data["pieces"]],
        )


def iet_identity(length: Scalar) -> IET:
    return IET(length, [(length.ctx.zero(), length.ctx.zero())])


def iet_rotation(length: Scalar, t: Scalar) -> IET:
    """Rotate ``[0, L)`` clockwise by ``t``: ``p -> p + t`` reduced mod ``L``."""
    if t.sign() == LESS or scalar_cmp(t, length) != LESS:
        raise OutOfRange(f"rotation amount {t} not in [0, {length})")
    zero = length.ctx.zero()
    if t.is_zero():
        return iet_identity(length)
    return IET(length, [(zero, t), (length - t, t - length)])


def iet_rotation_mod(length: Scalar, t: Scalar) -> IET:
    return iet_rotation(length, scalar_mod(t, length))


def iet_compose(f: IET, g: IET) -> IET:
    """``f o g``: apply ``g`` first."""
    if f.length != g.length:
        raise LengthMismatch(f"cannot compose IETs of lengths {f.length} and {g.length}")
    pieces = []
    for giv, goff in zip(g.domain_intervals(), g.offsets):
        img = giv.shift(goff)
        k = f.piece_index(img.lo)
        start = giv.lo
        while True:
            pieces.append((start, goff + f.pieces[k][1]))
            if k + 1 == len(f.pieces):
                break
            nxt = f.pieces[k + 1][0]
            if scalar_cmp(nxt, img.hi) != LESS:
                break
            start = nxt - goff
            k += 1
    return IET(f.length, pieces, check=False)


def iet_inverse(f: IET) -> IET:
    imgs = sorted(
        ((iv.shift(o), o) for iv, o in zip(f.domain_intervals(), f.offsets)),
        key=lambda io: _Key(io[0].lo),
    )
    return IET(f.length, [(iv.lo, -o) for iv, o in imgs], check=False)


def iet_apply(f: IET, p: Scalar) -> Scalar:
    return f(p)


def iet_stack(f: IET, g: IET) -> IET:
    """Apply ``f`` on ``[0, L1)`` and a translated copy of ``g`` on ``[L1, L1+L2)``."""
    if f.ctx != g.ctx:
        raise ContextMismatch("cannot stack IETs from different contexts")
    shift = f.length
    return IET(
        f.length + g.length,
        list(f.pieces) + [(x + shift, o) for x, o in g.pieces],
        check=False,
    )


def iet_rescale(q, f: IET) -> IET:
    q = Fraction(q)
    if q <= 0:
        raise NonpositiveFactor(f"rescaling factor {q} is not positive")
    return IET(f.length.scale(q), [(x.scale(q), o.scale(q)) for x, o in f.pieces], check=False)


def partition_refinement(length: Scalar, iets: Iterable[IET]) -> list[Scalar]:
    """Sorted union of the breakpoints of several IETs of one length."""
    seen: dict[Scalar, None] = {}
    for f in iets:
        if f.length != length:
            raise LengthMismatch("IETs of different lengths")
        for x in f.breakpoints:
            seen.setdefault(x, None)
    return sorted(seen, key=_Key)


def compose_all(fs: Sequence[IET]) -> IET:
    """``fs[0] o fs[1] o ... o fs[-1]``."""
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = iet_compose(f, out)
    return out

